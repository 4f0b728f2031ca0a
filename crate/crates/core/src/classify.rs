//! Central and semicentral components, the principal component, and small
//! tails. All comparisons against `g/2` are done as `2 * g_Z` against `g`.

use std::cmp::Ordering;

use crate::curve::{CurveTree, Tail};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub central: Vec<usize>,
    pub semicentral: Vec<usize>,
    pub in_delta_half: bool,
    pub principal: usize,
}

// Largest genus among connected components of the complement of `x`,
// compared against g/2.
fn worst_complement(tree: &CurveTree, x: usize) -> Ordering {
    let g = tree.genus();
    tree.incident_nodes(x)
        .iter()
        .map(|&n| {
            let far = tree.tail_at(n, tree.across(n, x));
            (2 * tree.subcurve_genus(far.side)).cmp(&g)
        })
        .max()
        .unwrap_or(Ordering::Less)
}

/// Components whose complement has only connected components of genus `< g/2`.
pub fn central_components(tree: &CurveTree) -> Vec<usize> {
    (0..tree.num_components())
        .filter(|&x| worst_complement(tree, x) == Ordering::Less)
        .collect()
}

/// Components whose complement has only connected components of genus `<= g/2`.
pub fn semicentral_components(tree: &CurveTree) -> Vec<usize> {
    (0..tree.num_components())
        .filter(|&x| worst_complement(tree, x) != Ordering::Greater)
        .collect()
}

/// Node criterion: some node has both tails of genus exactly `g/2`.
pub fn is_in_delta_half(tree: &CurveTree) -> bool {
    let g = tree.genus();
    g.is_multiple_of(2)
        && (0..tree.num_nodes()).any(|n| {
            let [a, b] = tree.tails_at(n);
            2 * tree.subcurve_genus(a.side) == g && 2 * tree.subcurve_genus(b.side) == g
        })
}

/// Central-count criterion for the same locus: no central component exists.
pub fn is_in_delta_half_by_center(tree: &CurveTree) -> bool {
    central_components(tree).is_empty()
}

/// The central component, or the smaller-id semicentral one on the boundary.
pub fn principal_component(tree: &CurveTree) -> usize {
    classify(tree).principal
}

pub fn classify(tree: &CurveTree) -> Classification {
    let central = central_components(tree);
    let semicentral = semicentral_components(tree);
    let in_delta_half = is_in_delta_half(tree);
    assert_eq!(
        in_delta_half,
        central.is_empty(),
        "node criterion and central-count criterion disagree"
    );
    assert!(central.len() <= 1, "more than one central component");
    let principal = match central.first() {
        Some(&x) => x,
        None => {
            assert_eq!(
                semicentral.len(),
                2,
                "boundary curve without two semicentral components"
            );
            // canonical order is lexicographic on ids
            semicentral[0]
        }
    };
    Classification {
        central,
        semicentral,
        in_delta_half,
        principal,
    }
}

pub fn is_small_tail(tree: &CurveTree, xpr: usize, tail: Tail) -> bool {
    let g = tree.genus();
    match (2 * tree.subcurve_genus(tail.side)).cmp(&g) {
        Ordering::Less => true,
        Ordering::Equal => !tail.side.contains(xpr),
        Ordering::Greater => false,
    }
}

pub fn small_tails(tree: &CurveTree, xpr: usize) -> Vec<Tail> {
    tree.tails()
        .into_iter()
        .filter(|&z| is_small_tail(tree, xpr, z))
        .collect()
}

/// The unique small tail among the two tails at `node`.
pub fn small_tail_at_node(tree: &CurveTree, xpr: usize, node: usize) -> Result<Tail> {
    let small: Vec<Tail> = tree
        .tails_at(node)
        .into_iter()
        .filter(|&z| is_small_tail(tree, xpr, z))
        .collect();
    match small.as_slice() {
        [z] => Ok(*z),
        _ => Err(Error::SmallTailCount {
            node: tree.node_id(node).to_owned(),
            count: small.len(),
        }),
    }
}
