//! Acceptance suite. One test per criterion; each prints a single
//! `[PASS]`/`[FAIL]` line. Run with `cargo test --test acceptance -- --nocapture`.

mod common;

use std::time::{Duration, Instant};

use abel_compact::abel::{multidegree_of, twist_step};
use abel_compact::classify::{
    central_components, classify, is_in_delta_half, semicentral_components,
};
use abel_compact::compare::compare_principals;
use abel_compact::stability::{
    chi_form_semistable_at, enumerate_quasistable, enumerate_semistable, is_quasistable,
    is_semistable, is_semistable_at, search_box,
};
use abel_compact::{AbelMap, CurveTree, DivisorRep, Multidegree, Point, Subcurve, Symbol};
use common::{corpus, delta_half_corpus, Oracle};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(id: u32, name: &str, failures: &[String], elapsed: Duration, limit: Option<Duration>) {
    let slow = limit.is_some_and(|l| elapsed >= l);
    let ok = failures.is_empty() && !slow;
    let limit_note = limit
        .map(|l| format!(" (limit {:?})", l))
        .unwrap_or_default();
    println!(
        "[{}] criterion {id:>2}: {name}: {} failures, {:.2?}{limit_note}",
        if ok { "PASS" } else { "FAIL" },
        failures.len(),
        elapsed,
    );
    for f in failures.iter().take(5) {
        println!("        {f}");
    }
    assert!(
        failures.is_empty(),
        "criterion {id} failed: {}",
        failures[0]
    );
    assert!(!slow, "criterion {id} exceeded its time limit");
}

fn md(v: &[i64]) -> Multidegree {
    Multidegree::new(v.to_vec())
}

fn two(g1: u32, g2: u32) -> CurveTree {
    CurveTree::build(&[("C1", g1), ("C2", g2)], &[("n", "C1", "C2")]).unwrap()
}

fn ids(t: &CurveTree) -> String {
    t.to_raw()
        .components
        .iter()
        .map(|c| format!("{}:{}", c.id, c.genus))
        .collect::<Vec<_>>()
        .join(",")
}

#[test]
fn criterion_01_degree_one_uniqueness() {
    let trees = corpus(200, 10, 8, 1);
    let start = Instant::now();
    let mut failures = Vec::new();
    for t in &trees {
        let xpr = classify(t).principal;
        let got = enumerate_quasistable(t, 1, xpr).unwrap();
        let e1 = Multidegree::unit(t.num_components(), xpr);
        if got != vec![e1] {
            failures.push(format!("{}: {:?}", ids(t), got));
        }
    }
    report(
        1,
        "degree-1 quasistable set is {e1}",
        &failures,
        start.elapsed(),
        Some(Duration::from_secs(10)),
    );
}

#[test]
fn criterion_02_canonical_quasistability() {
    let trees = corpus(100, 8, 6, 2);
    let start = Instant::now();
    let mut failures = Vec::new();
    for t in &trees {
        let abel = AbelMap::new(t);
        for d in 1..=6 {
            let e = abel.e(d);
            if !enumerate_quasistable(t, d as i64, abel.base())
                .unwrap()
                .contains(&e)
            {
                failures.push(format!("{} d={d}: e_d={e}", ids(t)));
            }
        }
    }
    report(
        2,
        "e_d is X^pr-quasistable for d <= 6",
        &failures,
        start.elapsed(),
        Some(Duration::from_secs(60)),
    );
}

#[test]
fn criterion_03_two_component_dichotomy() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for g1 in 1..=6u32 {
        for g2 in 1..=g1 {
            let t = two(g1, g2);
            let g = g1 + g2;
            let abel = AbelMap::new(&t);
            let expected = if 4 * g2 > g + 1 {
                md(&[1, 1])
            } else {
                md(&[2, 0])
            };
            if abel.base() != 0 || abel.e(2) != expected {
                failures.push(format!(
                    "({g1},{g2}): base {} e2 {}",
                    abel.base(),
                    abel.e(2)
                ));
            }
        }
    }
    report(
        3,
        "two-component e_2 table",
        &failures,
        start.elapsed(),
        None,
    );
}

#[test]
fn criterion_04_first_map_worked_example() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let br = Symbol::Branch(0);
    let lbl = |s: &str| Symbol::Label(s.into());
    for g1 in 1..=6u32 {
        for g2 in 1..=g1 {
            let t = two(g1, g2);
            let abel = AbelMap::new(&t);
            let tag = format!("({g1},{g2})");
            let node = Point::node("n");
            let b1 = abel.abel1(&node).unwrap();
            if b1.on(0) != [(br.clone(), 1)].into() || !b1.on(1).is_empty() {
                failures.push(format!("{tag}: abel1(n) = {}", b1.display(&t)));
            }
            // first-map table: p_i on C_i restricts to p_i - (i-1) n_j on C_i
            // and to (i-1) n_j on the other component
            for (i, comp) in ["C1", "C2"].iter().enumerate() {
                let r = abel.abel1(&Point::smooth(comp, "p")).unwrap();
                let other = 1 - i;
                let ok = r.coefficient(i, &lbl("p")) == 1
                    && r.coefficient(i, &br) == -(i as i64)
                    && r.coefficient(other, &br) == i as i64
                    && multidegree_of(&t, &r) == md(&[1, 0]);
                if !ok {
                    failures.push(format!("{tag}: abel1({comp}:p) = {}", r.display(&t)));
                }
            }
            let g = g1 + g2;
            let nn = abel.abel(&[node.clone(), node.clone()]).unwrap();
            let want_nn = if 4 * g2 > g + 1 {
                [(0usize, 1i64), (1, 1)]
            } else {
                [(0, 2), (1, 0)]
            };
            if want_nn.iter().any(|&(c, k)| nn.coefficient(c, &br) != k) {
                failures.push(format!("{tag}: beta2(n,n) = {}", nn.display(&t)));
            }
            if 4 * g2 <= g + 1 {
                continue;
            }
            // e_2 = (1,1): the four cases of the restriction table
            let comps = ["C1", "C2"];
            for i in 0..2 {
                for j in 0..2 {
                    let r = abel
                        .abel(&[Point::smooth(comps[i], "p"), Point::smooth(comps[j], "q")])
                        .unwrap();
                    for k in 0..2 {
                        let mut want = DivisorRep::new();
                        if i == j && j == k {
                            want.add_term(k, lbl("p"), 1);
                            want.add_term(k, lbl("q"), 1);
                            want.add_term(k, br.clone(), -1);
                        } else if i == j {
                            want.add_term(k, br.clone(), 1);
                        } else if k == i {
                            want.add_term(k, lbl("p"), 1);
                        } else {
                            want.add_term(k, lbl("q"), 1);
                        }
                        if r.on(k) != want.on(k) {
                            failures.push(format!(
                                "{tag}: beta2({}:p,{}:q) on {} = {}",
                                comps[i],
                                comps[j],
                                comps[k],
                                r.display(&t)
                            ));
                        }
                    }
                }
            }
        }
    }
    report(
        4,
        "two-component first and second map restrictions",
        &failures,
        start.elapsed(),
        None,
    );
}

#[test]
fn criterion_05_eta_bound() {
    let trees = delta_half_corpus(50, 5);
    let start = Instant::now();
    let mut failures = Vec::new();
    for t in &trees {
        let r = match compare_principals(t, 8) {
            Ok(r) => r,
            Err(e) => {
                failures.push(format!("{}: {e}", ids(t)));
                continue;
            }
        };
        for d in 0..8 {
            let eta = r.eta[d];
            // the twist O(Y2) has +1 on X1 and -1 on X2
            let mut step = vec![0; t.num_components()];
            step[r.x1] = 1;
            step[r.x2] = -1;
            let diff = &r.first[d] - &r.second[d];
            if !(-1..=1).contains(&eta) || diff != md(&step).scaled(eta) {
                failures.push(format!("{} d={}: eta {eta}, diff {diff}", ids(t), d + 1));
            }
        }
    }
    report(
        5,
        "eta_d in {-1,0,1} and e1 - e2 = eta * twist(Y2)",
        &failures,
        start.elapsed(),
        Some(Duration::from_secs(30)),
    );
}

struct Sample {
    tree: usize,
    md: Multidegree,
    y: Subcurve,
}

fn sample_triples(trees: &[CurveTree], count: usize) -> Vec<Sample> {
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    let connected: Vec<Vec<Subcurve>> = trees.iter().map(|t| t.connected_subcurves()).collect();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let ti = rng.gen_range(0..trees.len());
        let t = &trees[ti];
        if connected[ti].is_empty() {
            continue;
        }
        let g = t.genus() as i64;
        // a quarter of the samples sit exactly at d = g - 1
        let d = if rng.gen_bool(0.25) {
            g - 1
        } else {
            rng.gen_range(0..=2 * g + 2)
        };
        let n = t.num_components();
        let mut v: Vec<i64> = (0..n)
            .map(|x| {
                let (lo, hi) = search_box(t, d, x);
                rng.gen_range(lo - 1..=hi + 1)
            })
            .collect();
        let fix = rng.gen_range(0..n);
        v[fix] += d - v.iter().sum::<i64>();
        let y = *connected[ti].choose(&mut rng).unwrap();
        out.push(Sample {
            tree: ti,
            md: Multidegree::new(v),
            y,
        });
    }
    out
}

#[test]
fn criterion_06_form_equivalence() {
    let trees = corpus(200, 10, 8, 6);
    let samples = sample_triples(&trees, 10_000);
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut at_g_minus_1 = 0;
    let mut both = [0usize; 2];
    for s in &samples {
        let t = &trees[s.tree];
        let a = is_semistable_at(t, &s.md, s.y);
        let b = chi_form_semistable_at(t, &s.md, s.y);
        both[usize::from(a)] += 1;
        if s.md.total() == t.genus() as i64 - 1 {
            at_g_minus_1 += 1;
        }
        if a != b {
            failures.push(format!(
                "{} md={} y={:b}: {a} vs {b}",
                ids(t),
                s.md,
                s.y.bits()
            ));
        }
    }
    assert!(at_g_minus_1 > 1000 && both[0] > 1000 && both[1] > 1000);
    report(
        6,
        "balancing form equals polarization form on 10000 samples",
        &failures,
        start.elapsed(),
        None,
    );
}

#[test]
fn criterion_07_complement_symmetry() {
    let trees = corpus(200, 10, 8, 6);
    let samples = sample_triples(&trees, 10_000);
    let start = Instant::now();
    let mut failures = Vec::new();
    for s in &samples {
        let t = &trees[s.tree];
        if is_semistable_at(t, &s.md, s.y) != is_semistable_at(t, &s.md, t.complement(s.y)) {
            failures.push(format!("{} md={} y={:b}", ids(t), s.md, s.y.bits()));
        }
    }
    report(
        7,
        "semistable at Y iff at Y'",
        &failures,
        start.elapsed(),
        None,
    );
}

#[test]
fn criterion_08_connected_subcurve_sufficiency() {
    let trees: Vec<CurveTree> = corpus(500, 10, 8, 9)
        .into_iter()
        .filter(|t| t.num_components() <= 4)
        .collect();
    assert!(trees.len() >= 50);
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut checked = 0usize;
    for t in &trees {
        let oracle = Oracle::new(t);
        for d in 0..=5i64 {
            let boxes: Vec<(i64, i64)> = (0..t.num_components())
                .map(|x| search_box(t, d, x))
                .collect();
            let lo = boxes.iter().map(|b| b.0).min().unwrap() - 1;
            let hi = boxes.iter().map(|b| b.1).max().unwrap() + 1;
            for v in oracle.box_multidegrees(d, lo, hi) {
                let m = Multidegree::new(v.clone());
                checked += 1;
                if is_semistable(t, &m).semistable != oracle.semistable(&v) {
                    failures.push(format!("{} semistable {m}", ids(t)));
                }
                for x in 0..t.num_components() {
                    if is_quasistable(t, &m, x) != oracle.quasistable(&v, x) {
                        failures.push(format!("{} quasistable {m} at {x}", ids(t)));
                    }
                }
            }
        }
    }
    assert!(checked > 1000);
    report(
        8,
        "connected-subcurve checks equal all-subsets oracle",
        &failures,
        start.elapsed(),
        None,
    );
}

#[test]
fn criterion_09_classification_lemma() {
    let trees = corpus(500, 10, 8, 3);
    let start = Instant::now();
    let mut failures = Vec::new();
    for t in &trees {
        let o = Oracle::new(t);
        let g = o.g();
        // definition check: genus of every piece of the complement
        let pieces_ok = |x: usize, strict: bool| {
            let rest = o.full() & !(1u64 << x);
            (0..o.n()).filter(|&s| Oracle::member(rest, s)).all(|s| {
                // the piece of the complement containing s
                let mut piece = 1u64 << s;
                loop {
                    let grown = o.edges.iter().fold(piece, |acc, &(a, b)| {
                        let (ia, ib) = (Oracle::member(acc, a), Oracle::member(acc, b));
                        let (ra, rb) = (Oracle::member(rest, a), Oracle::member(rest, b));
                        if ia && rb {
                            acc | 1 << b
                        } else if ib && ra {
                            acc | 1 << a
                        } else {
                            acc
                        }
                    });
                    if grown == piece {
                        break;
                    }
                    piece = grown;
                }
                let twice = 2 * o.genus_of(piece);
                if strict {
                    twice < g
                } else {
                    twice <= g
                }
            })
        };
        let central: Vec<usize> = (0..o.n()).filter(|&x| pieces_ok(x, true)).collect();
        let semi: Vec<usize> = (0..o.n()).filter(|&x| pieces_ok(x, false)).collect();
        let node_criterion = g % 2 == 0
            && o.edges.iter().enumerate().any(|(i, _)| {
                let side = t.tails()[2 * i].side.bits();
                2 * o.genus_of(side) == g
            });
        let c = classify(t);
        let mut bad = Vec::new();
        if central != central_components(t) || semi != semicentral_components(t) {
            bad.push("definition mismatch");
        }
        if central.len() > 1 {
            bad.push("more than one central");
        }
        if central.is_empty() != node_criterion || is_in_delta_half(t) != node_criterion {
            bad.push("delta criterion mismatch");
        }
        if central.is_empty() {
            let joined = semi.len() == 2
                && o.edges
                    .iter()
                    .any(|&(a, b)| (a, b) == (semi[0], semi[1]) || (b, a) == (semi[0], semi[1]));
            if !joined {
                bad.push("semicentral pair not adjacent");
            }
        }
        if c.in_delta_half != node_criterion {
            bad.push("classification flag");
        }
        if !bad.is_empty() {
            failures.push(format!("{}: {}", ids(t), bad.join(", ")));
        }
    }
    report(
        9,
        "central/semicentral lemma on 500 trees",
        &failures,
        start.elapsed(),
        None,
    );
}

#[test]
fn criterion_10_first_map_multidegree() {
    let trees = corpus(500, 10, 8, 3);
    let start = Instant::now();
    let mut failures = Vec::new();
    for t in &trees {
        let abel = AbelMap::new(t);
        let e1 = Multidegree::unit(t.num_components(), abel.base());
        let raw = t.to_raw();
        let points = raw
            .nodes
            .iter()
            .map(|n| Point::node(&n.id))
            .chain(raw.components.iter().map(|c| Point::smooth(&c.id, "p")));
        for q in points {
            let got = multidegree_of(t, &abel.abel1(&q).unwrap());
            if got != e1 {
                failures.push(format!("{} {q}: {got}", ids(t)));
            }
        }
    }
    report(
        10,
        "abel1(q) has multidegree e1 for all nodes and components",
        &failures,
        start.elapsed(),
        None,
    );
}

#[test]
fn criterion_11_permutation_symmetry() {
    let trees = corpus(100, 10, 8, 11);
    let mut rng = ChaCha8Rng::seed_from_u64(1111);
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut configs = 0;
    for t in &trees {
        let raw = t.to_raw();
        let abel = AbelMap::new(t);
        for _ in 0..3 {
            let size = rng.gen_range(1..=5);
            let config: Vec<Point> = (0..size)
                .map(|i| {
                    if !raw.nodes.is_empty() && rng.gen_bool(0.5) {
                        Point::node(&raw.nodes[rng.gen_range(0..raw.nodes.len())].id)
                    } else {
                        let c = &raw.components[rng.gen_range(0..raw.components.len())];
                        Point::smooth(&c.id, &format!("p{}", i % 3))
                    }
                })
                .collect();
            configs += 1;
            let base = abel.abel(&config).unwrap();
            if multidegree_of(t, &base) != abel.e(size) {
                failures.push(format!("{}: multidegree of {:?}", ids(t), config));
            }
            for _ in 0..20 {
                let mut perm = config.clone();
                perm.shuffle(&mut rng);
                if abel.abel(&perm).unwrap() != base {
                    failures.push(format!("{}: {:?} vs {:?}", ids(t), config, perm));
                }
            }
        }
    }
    assert!(configs >= 300);
    report(
        11,
        "abel_d invariant under 20 permutations per config",
        &failures,
        start.elapsed(),
        None,
    );
}

#[test]
fn criterion_12_twist_lemma() {
    let trees: Vec<CurveTree> = corpus(300, 10, 4, 12)
        .into_iter()
        .filter(|t| t.num_components() <= 4)
        .collect();
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut checked = 0usize;
    for t in &trees {
        let oracle = Oracle::new(t);
        for x in 0..t.num_components() {
            for d in 0..=4i64 {
                for m in enumerate_quasistable(t, d, x).unwrap() {
                    checked += 1;
                    let next = twist_step(t, &m, x);
                    if !oracle.quasistable(next.degrees(), x) || !is_quasistable(t, &next, x) {
                        failures.push(format!("{} X={x} {m} -> {next}", ids(t)));
                    }
                }
            }
        }
    }
    assert!(checked > 500);
    report(
        12,
        "twisting an X-quasistable multidegree stays X-quasistable",
        &failures,
        start.elapsed(),
        None,
    );
}

#[test]
fn quasistable_sets_are_nonempty_for_every_base() {
    // not an acceptance criterion: observed, then pinned
    let trees = corpus(100, 8, 6, 13);
    let mut empty = Vec::new();
    for t in &trees {
        for x in 0..t.num_components() {
            for d in 0..=6 {
                if enumerate_quasistable(t, d, x).unwrap().is_empty() {
                    empty.push(format!("{} X={x} d={d}", ids(t)));
                }
            }
        }
    }
    println!(
        "[INFO] empty X-quasistable sets over 100 trees: {}",
        empty.len()
    );
    assert!(empty.is_empty(), "{:?}", &empty[..empty.len().min(5)]);
}

#[test]
fn enumeration_matches_brute_force_on_small_trees() {
    let trees: Vec<CurveTree> = corpus(200, 8, 4, 14)
        .into_iter()
        .filter(|t| t.num_components() <= 3)
        .collect();
    for t in &trees {
        let o = Oracle::new(t);
        for d in 0..=3 {
            for x in 0..t.num_components() {
                assert_eq!(
                    enumerate_quasistable(t, d, x).unwrap(),
                    o.quasistable_set(d, x),
                    "{}",
                    ids(t)
                );
            }
            let ss: Vec<Multidegree> = enumerate_semistable(t, d).unwrap();
            assert!(ss.iter().all(|m| o.semistable(m.degrees())));
        }
    }
}
