//! The two Abel maps of a curve with no central component.
//!
//! On such a curve there are two semicentral components `X1`, `X2` joined
//! by a node whose tails both have genus `g/2`. Basing the construction at
//! either one gives two multidegree sequences that differ by an integer
//! multiple `eta_d` of the twist by the genus-`g/2` tail `Y2` avoiding `X1`.

use crate::abel::{twist_delta, AbelMap, Sign};
use crate::classify::{classify, is_in_delta_half};
use crate::curve::{CurveTree, Multidegree, Tail};
use crate::error::{Error, Result};
use crate::stability::is_semistable;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComparisonReport {
    pub x1: usize,
    pub x2: usize,
    /// Genus-`g/2` tail of the complement of `X2` (contains `X1`).
    pub y1: Tail,
    /// Genus-`g/2` tail of the complement of `X1` (contains `X2`).
    pub y2: Tail,
    pub eta: Vec<i64>,
    pub first: Vec<Multidegree>,
    pub second: Vec<Multidegree>,
    pub ok: bool,
}

// The unique connected component of the complement of `x` with genus g/2.
fn half_tail(tree: &CurveTree, x: usize) -> Result<Tail> {
    let g = tree.genus();
    let found: Vec<Tail> = tree
        .incident_nodes(x)
        .iter()
        .map(|&n| tree.tail_at(n, tree.across(n, x)))
        .filter(|z| 2 * tree.subcurve_genus(z.side) == g)
        .collect();
    match found.as_slice() {
        [z] => Ok(*z),
        _ => Err(Error::Invariant {
            d: 0,
            what: format!(
                "complement of {} has {} tails of genus g/2",
                tree.component_id(x),
                found.len()
            ),
        }),
    }
}

pub fn compare_principals(tree: &CurveTree, dmax: usize) -> Result<ComparisonReport> {
    if dmax == 0 {
        return Err(Error::ZeroDmax);
    }
    let class = classify(tree);
    if !is_in_delta_half(tree) {
        return Err(Error::NotInDeltaHalf);
    }
    let (x1, x2) = match class.semicentral.as_slice() {
        [a, b] => (*a, *b),
        other => {
            return Err(Error::Invariant {
                d: 0,
                what: format!("expected two semicentral components, found {}", other.len()),
            })
        }
    };
    let y2 = half_tail(tree, x1)?;
    let y1 = half_tail(tree, x2)?;
    let joined = tree.node_ends(y2.node);
    if y1.node != y2.node
        || y1.side != tree.complement(y2.side)
        || !(joined == (x1, x2) || joined == (x2, x1))
    {
        return Err(Error::Invariant {
            d: 0,
            what: "genus-g/2 tails are not complementary at the node joining X1 and X2".into(),
        });
    }

    let (first_map, second_map) = (AbelMap::with_base(tree, x1), AbelMap::with_base(tree, x2));
    let (first, second) = std::thread::scope(|s| {
        let a = s.spawn(|| first_map.sequence(dmax));
        let b = second_map.sequence(dmax);
        (a.join().expect("sequence thread"), b)
    });

    let step = twist_delta(tree, y2, Sign::Plus).multidegree;
    let mut eta = Vec::with_capacity(dmax);
    let mut current = 1i64;
    for d in 1..=dmax {
        if d > 1 {
            let eps2 = i64::from(second_map.big_tails_at(d - 1).contains(&y1));
            let eps1 = i64::from(first_map.big_tails_at(d - 1).contains(&y2));
            current = current + 1 - eps2 - eps1;
        }
        eta.push(current);
        if !(-1..=1).contains(&current) {
            return Err(Error::Invariant {
                d,
                what: format!("eta = {current} outside [-1, 1]"),
            });
        }
        let (a, b) = (&first[d - 1], &second[d - 1]);
        if (a - b) != step.scaled(current) {
            return Err(Error::Invariant {
                d,
                what: format!("e1 - e2 = {} is not {current} times the Y2 twist", a - b),
            });
        }
        if a != b && !(is_semistable(tree, a).semistable && is_semistable(tree, b).semistable) {
            return Err(Error::Invariant {
                d,
                what: "differing multidegrees are not both semistable".into(),
            });
        }
    }
    Ok(ComparisonReport {
        x1,
        x2,
        y1,
        y2,
        eta,
        first,
        second,
        ok: true,
    })
}

/// Both sequences agree on every component other than `X1` and `X2`.
pub fn multidegree_difference_support(report: &ComparisonReport) -> bool {
    report.first.iter().zip(&report.second).all(|(a, b)| {
        (0..a.len())
            .filter(|&c| c != report.x1 && c != report.x2)
            .all(|c| a.get(c) == b.get(c))
    })
}
