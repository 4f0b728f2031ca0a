//! Canonical semistability and `X`-quasistability of multidegrees.
//!
//! For a subcurve `Y` of a genus-`g` curve and a multidegree of total degree
//! `d` the balancing quantity is `d_Y - d * w_Y / (2g - 2)`, where `w_Y` is
//! the degree of the dualizing sheaf on `Y`. Semistability at `Y` bounds its
//! absolute value by `k_Y / 2`; quasistability makes the lower bound strict
//! on subcurves containing `X`. Everything is multiplied through by
//! `2 * (2g - 2)` and evaluated in `i64`.
//!
//! The same conditions are also available in Euler-characteristic form
//! against the canonical polarization, see [`PolarizationData`].

use crate::curve::{CurveTree, Multidegree, Subcurve};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Bound {
    /// `d_Y - d w_Y / (2g-2) < -k_Y / 2`
    Lower,
    /// `d_Y - d w_Y / (2g-2) > k_Y / 2`
    Upper,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityVerdict {
    pub semistable: bool,
    pub witnesses: Vec<(Subcurve, Bound)>,
}

/// The canonical polarization of degree `d`: `w^(g-1-d) + O^(2g-3)` of rank
/// `2g - 2`, or the trivial bundle of rank 1 when `d = g - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PolarizationData {
    pub d: i64,
    pub g: i64,
    pub rank: i64,
    twist: i64,
}

impl PolarizationData {
    pub fn canonical(tree: &CurveTree, d: i64) -> PolarizationData {
        let g = tree.genus() as i64;
        if d == g - 1 {
            PolarizationData {
                d,
                g,
                rank: 1,
                twist: 0,
            }
        } else {
            PolarizationData {
                d,
                g,
                rank: 2 * g - 2,
                twist: g - 1 - d,
            }
        }
    }

    /// Degree of the polarization restricted to `y`.
    pub fn subcurve_degree(&self, tree: &CurveTree, y: Subcurve) -> i64 {
        self.twist * tree.omega_degree(y)
    }
}

fn check_len(tree: &CurveTree, md: &Multidegree) {
    assert_eq!(
        md.len(),
        tree.num_components(),
        "multidegree length does not match component count"
    );
}

/// `2(2g-2) d_Y - 2 d w_Y`, i.e. twice the balancing quantity times `2g-2`.
pub fn balance(tree: &CurveTree, md: &Multidegree, y: Subcurve) -> i64 {
    check_len(tree, md);
    let g2 = 2 * tree.genus() as i64 - 2;
    2 * g2 * md.on(y) - 2 * md.total() * tree.omega_degree(y)
}

fn slack(tree: &CurveTree, y: Subcurve) -> i64 {
    (2 * tree.genus() as i64 - 2) * tree.k(y) as i64
}

fn bound_failure(balance: i64, slack: i64) -> Option<Bound> {
    if balance < -slack {
        Some(Bound::Lower)
    } else if balance > slack {
        Some(Bound::Upper)
    } else {
        None
    }
}

pub fn is_semistable_at(tree: &CurveTree, md: &Multidegree, y: Subcurve) -> bool {
    bound_failure(balance(tree, md, y), slack(tree, y)).is_none()
}

/// Strict lower bound at `y`.
pub fn is_quasistable_at(tree: &CurveTree, md: &Multidegree, y: Subcurve) -> bool {
    balance(tree, md, y) > -slack(tree, y)
}

/// Semistability checked over connected proper subcurves, reporting every
/// failing subcurve.
pub fn is_semistable(tree: &CurveTree, md: &Multidegree) -> StabilityVerdict {
    Checker::new(tree).verdict(md)
}

pub fn is_quasistable(tree: &CurveTree, md: &Multidegree, x: usize) -> bool {
    Checker::new(tree).quasistable(md, x)
}

/// The Euler-characteristic inequality `chi(L|_Y) >= -deg E_d|_Y / rank E_d`
/// at a single non-empty proper subcurve. This is one half of the balancing
/// condition; see [`chi_form_semistable_at`].
pub fn chi_lower_at(tree: &CurveTree, md: &Multidegree, y: Subcurve) -> bool {
    check_len(tree, md);
    let pol = PolarizationData::canonical(tree, md.total());
    // chi is additive over connected components, each of compact type
    let chi = md.on(y) + tree.connected_count(y) as i64 - tree.subcurve_genus(y) as i64;
    chi * pol.rank >= -pol.subcurve_degree(tree, y)
}

/// Semistability at `y` in Euler-characteristic form: the polarization
/// inequality must hold on `y` and on its complement.
pub fn chi_form_semistable_at(tree: &CurveTree, md: &Multidegree, y: Subcurve) -> bool {
    chi_lower_at(tree, md, y) && chi_lower_at(tree, md, tree.complement(y))
}

/// Integer range allowed for the degree on component `x` by the balancing
/// condition at `{x}`.
pub fn search_box(tree: &CurveTree, d: i64, x: usize) -> (i64, i64) {
    let g2 = 2 * tree.genus() as i64 - 2;
    let y = Subcurve::singleton(x);
    let center = 2 * d * tree.omega_degree(y);
    let half = g2 * tree.k(y) as i64;
    let denom = 2 * g2;
    let lo = -(-(center - half)).div_euclid(denom);
    let hi = (center + half).div_euclid(denom);
    (lo, hi)
}

pub fn enumerate_semistable(tree: &CurveTree, d: i64) -> Result<Vec<Multidegree>> {
    let checker = Checker::new(tree);
    checker.enumerate(d, |md| checker.semistable(md))
}

pub fn enumerate_quasistable(tree: &CurveTree, d: i64, x: usize) -> Result<Vec<Multidegree>> {
    if x >= tree.num_components() {
        return Err(Error::UnknownComponent(format!("#{x}")));
    }
    let checker = Checker::new(tree);
    checker.enumerate(d, |md| checker.quasistable(md, x))
}

/// Precomputed connected proper subcurves with their `w_Y` and `k_Y`.
pub struct Checker<'a> {
    tree: &'a CurveTree,
    g2: i64,
    subcurves: Vec<(Subcurve, i64, i64)>,
}

impl<'a> Checker<'a> {
    pub fn new(tree: &'a CurveTree) -> Checker<'a> {
        let subcurves = tree
            .connected_subcurves()
            .into_iter()
            .map(|y| (y, tree.omega_degree(y), tree.k(y) as i64))
            .collect();
        Checker {
            tree,
            g2: 2 * tree.genus() as i64 - 2,
            subcurves,
        }
    }

    fn balance(&self, md: &Multidegree, y: Subcurve, omega: i64) -> i64 {
        2 * self.g2 * md.on(y) - 2 * md.total() * omega
    }

    pub fn verdict(&self, md: &Multidegree) -> StabilityVerdict {
        check_len(self.tree, md);
        let witnesses: Vec<(Subcurve, Bound)> = self
            .subcurves
            .iter()
            .filter_map(|&(y, omega, k)| {
                bound_failure(self.balance(md, y, omega), self.g2 * k).map(|b| (y, b))
            })
            .collect();
        StabilityVerdict {
            semistable: witnesses.is_empty(),
            witnesses,
        }
    }

    pub fn semistable(&self, md: &Multidegree) -> bool {
        check_len(self.tree, md);
        self.subcurves
            .iter()
            .all(|&(y, omega, k)| bound_failure(self.balance(md, y, omega), self.g2 * k).is_none())
    }

    pub fn quasistable(&self, md: &Multidegree, x: usize) -> bool {
        self.semistable(md)
            && self
                .subcurves
                .iter()
                .filter(|(y, _, _)| y.contains(x))
                .all(|&(y, omega, k)| self.balance(md, y, omega) > -self.g2 * k)
    }

    fn enumerate<F: Fn(&Multidegree) -> bool>(&self, d: i64, keep: F) -> Result<Vec<Multidegree>> {
        if d < 0 {
            return Err(Error::NegativeDegree(d));
        }
        let n = self.tree.num_components();
        let boxes: Vec<(i64, i64)> = (0..n).map(|x| search_box(self.tree, d, x)).collect();
        // suffix sums of the box bounds prune infeasible prefixes
        let mut min_rest = vec![0i64; n + 1];
        let mut max_rest = vec![0i64; n + 1];
        for i in (0..n).rev() {
            min_rest[i] = min_rest[i + 1] + boxes[i].0;
            max_rest[i] = max_rest[i + 1] + boxes[i].1;
        }
        let mut out = Vec::new();
        let mut current = vec![0i64; n];
        #[allow(clippy::too_many_arguments)]
        fn walk<F: Fn(&Multidegree) -> bool>(
            i: usize,
            left: i64,
            boxes: &[(i64, i64)],
            min_rest: &[i64],
            max_rest: &[i64],
            current: &mut Vec<i64>,
            keep: &F,
            out: &mut Vec<Multidegree>,
        ) {
            if i == boxes.len() {
                if left == 0 {
                    let md = Multidegree::new(current.clone());
                    if keep(&md) {
                        out.push(md);
                    }
                }
                return;
            }
            let (lo, hi) = boxes[i];
            for v in lo..=hi {
                let rest = left - v;
                if rest < min_rest[i + 1] || rest > max_rest[i + 1] {
                    continue;
                }
                current[i] = v;
                walk(i + 1, rest, boxes, min_rest, max_rest, current, keep, out);
            }
        }
        walk(
            0,
            d,
            &boxes,
            &min_rest,
            &max_rest,
            &mut current,
            &keep,
            &mut out,
        );
        out.sort();
        Ok(out)
    }
}
