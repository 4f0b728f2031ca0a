use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use abel_compact::classify::{classify, is_small_tail};
use abel_compact::compare::compare_principals;
use abel_compact::curve::validate;
use abel_compact::generator::random_tree;
use abel_compact::stability::{enumerate_quasistable, enumerate_semistable};
use abel_compact::{AbelMap, CurveTree, GenSpec, Multidegree, Point, RawTree, Tail};
use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

/// Abel maps of stable curves of compact type.
#[derive(Parser, Debug)]
#[command(name = "abelmap", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a tree file and list every violation.
    Validate { file: PathBuf },
    /// Central and semicentral components, the principal component and the g/2 flag.
    Classify { file: PathBuf },
    /// Every tail with its genus and whether it is small for the principal component.
    Tails { file: PathBuf },
    /// Semistable or X-quasistable multidegrees of a given total degree.
    Enumerate {
        file: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        degree: i64,
        #[command(flatten)]
        base: EnumerateBase,
    },
    /// Canonical multidegrees e_1 .. e_D.
    Eseq {
        file: PathBuf,
        #[arg(long)]
        dmax: usize,
        #[command(flatten)]
        base: BaseOverride,
    },
    /// Image of a configuration of points, e.g. `--points C1:p,node:n1`.
    Abel {
        file: PathBuf,
        #[arg(long)]
        points: String,
        #[command(flatten)]
        base: BaseOverride,
    },
    /// Compare the maps based at the two semicentral components.
    Compare {
        file: PathBuf,
        #[arg(long)]
        dmax: usize,
    },
    /// Emit a seeded random tree.
    Gen {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        max_components: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        delta_half: bool,
    },
}

#[derive(Args, Debug)]
#[group(multiple = false)]
struct EnumerateBase {
    /// Component X for X-quasistability.
    #[arg(long, value_name = "ID")]
    quasistable: Option<String>,
    /// Use the principal component as X.
    #[arg(long)]
    principal: bool,
}

#[derive(Args, Debug)]
struct BaseOverride {
    /// Base the construction at this component instead of the principal one.
    #[arg(long, value_name = "ID")]
    principal_override: Option<String>,
    /// Accept an override that is neither central nor semicentral.
    #[arg(long, requires = "principal_override")]
    force: bool,
}

fn read_raw(path: &Path) -> anyhow::Result<RawTree> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    RawTree::from_json(&text).with_context(|| format!("cannot parse {}", path.display()))
}

fn load(path: &Path) -> anyhow::Result<CurveTree> {
    let raw = read_raw(path)?;
    CurveTree::from_raw(&raw).with_context(|| format!("invalid tree in {}", path.display()))
}

fn ids(tree: &CurveTree, comps: &[usize]) -> Vec<String> {
    comps
        .iter()
        .map(|&c| tree.component_id(c).to_owned())
        .collect()
}

fn tail_json(tree: &CurveTree, tail: Tail) -> Value {
    json!({
        "node": tree.node_id(tail.node),
        "side": tree.subcurve_ids(tail.side),
    })
}

fn degrees(md: &Multidegree) -> Value {
    json!(md.degrees())
}

fn base_component(tree: &CurveTree, base: &BaseOverride) -> anyhow::Result<usize> {
    let class = classify(tree);
    let Some(id) = &base.principal_override else {
        return Ok(class.principal);
    };
    let x = tree.component_index(id)?;
    if !base.force && !class.semicentral.contains(&x) {
        bail!("component {id} is neither central nor semicentral; pass --force to use it");
    }
    Ok(x)
}

fn run(command: Command) -> anyhow::Result<(Value, bool)> {
    let out = match command {
        Command::Validate { file } => {
            let report = validate(&read_raw(&file)?);
            let violations: Vec<String> =
                report.violations.iter().map(ToString::to_string).collect();
            return Ok((
                json!({ "ok": report.is_ok(), "violations": violations }),
                report.is_ok(),
            ));
        }
        Command::Classify { file } => {
            let tree = load(&file)?;
            let c = classify(&tree);
            json!({
                "central": ids(&tree, &c.central),
                "semicentral": ids(&tree, &c.semicentral),
                "in_delta_half": c.in_delta_half,
                "principal": tree.component_id(c.principal),
            })
        }
        Command::Tails { file } => {
            let tree = load(&file)?;
            let xpr = classify(&tree).principal;
            let tails: Vec<Value> = tree
                .tails()
                .into_iter()
                .map(|t| {
                    let mut v = tail_json(&tree, t);
                    v["genus"] = json!(tree.subcurve_genus(t.side));
                    v["small"] = json!(is_small_tail(&tree, xpr, t));
                    v
                })
                .collect();
            json!(tails)
        }
        Command::Enumerate { file, degree, base } => {
            let tree = load(&file)?;
            let list = if base.principal {
                enumerate_quasistable(&tree, degree, classify(&tree).principal)?
            } else if let Some(id) = &base.quasistable {
                enumerate_quasistable(&tree, degree, tree.component_index(id)?)?
            } else {
                enumerate_semistable(&tree, degree)?
            };
            json!(list
                .iter()
                .map(|m| tree.multidegree_map(m))
                .collect::<Vec<_>>())
        }
        Command::Eseq { file, dmax, base } => {
            let tree = load(&file)?;
            if dmax == 0 {
                bail!("--dmax must be at least 1");
            }
            let abel = AbelMap::with_base(&tree, base_component(&tree, &base)?);
            json!(abel.sequence(dmax).iter().map(degrees).collect::<Vec<_>>())
        }
        Command::Abel { file, points, base } => {
            let tree = load(&file)?;
            let config = points
                .split(',')
                .map(|tok| {
                    Point::parse(tok.trim()).with_context(|| {
                        format!("bad point token {tok:?}; expected COMP:LABEL or node:ID")
                    })
                })
                .collect::<anyhow::Result<Vec<_>>>()?;
            let abel = AbelMap::with_base(&tree, base_component(&tree, &base)?);
            let rep = abel.abel(&config)?;
            json!({
                "base": tree.component_id(abel.base()),
                "divisor": rep.to_map(&tree),
                "multidegree": tree.multidegree_map(&abel.e(config.len())),
            })
        }
        Command::Compare { file, dmax } => {
            let tree = load(&file)?;
            let r = compare_principals(&tree, dmax)?;
            json!({
                "x1": tree.component_id(r.x1),
                "x2": tree.component_id(r.x2),
                "y1": tail_json(&tree, r.y1),
                "y2": tail_json(&tree, r.y2),
                "eta": r.eta,
                "first": r.first.iter().map(degrees).collect::<Vec<_>>(),
                "second": r.second.iter().map(degrees).collect::<Vec<_>>(),
                "ok": r.ok,
            })
        }
        Command::Gen {
            genus,
            max_components,
            seed,
            delta_half,
        } => {
            let mut spec = GenSpec::new(genus, max_components, seed);
            if delta_half {
                spec = spec.delta_half();
            }
            serde_json::to_value(random_tree(spec)?.to_raw())?
        }
    };
    Ok((out, true))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((value, ok)) => {
            println!(
                "{}",
                serde_json::to_string(&value).expect("json value serializes")
            );
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}
