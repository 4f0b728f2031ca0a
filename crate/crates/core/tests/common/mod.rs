// Shared corpus and brute-force oracles for integration tests. The oracles
// work from the raw tree description and do not call the checked code paths.
#![allow(dead_code)]

use abel_compact::generator::random_tree;
use abel_compact::{CurveTree, GenSpec, Multidegree};

/// Deterministic corpus: seed `i` picks genus in `2..=max_genus` and
/// component cap in `1..=max_components`.
pub fn corpus(count: u64, max_genus: u32, max_components: usize, salt: u64) -> Vec<CurveTree> {
    (0..count)
        .map(|i| {
            let seed = salt.wrapping_mul(1_000_003).wrapping_add(i);
            let genus = 2 + (seed % u64::from(max_genus - 1)) as u32;
            let cap = 1 + (seed / 7 % max_components as u64) as usize;
            random_tree(GenSpec::new(genus, cap.max(max_components / 2 + 1), seed)).unwrap()
        })
        .collect()
}

pub fn delta_half_corpus(count: u64, salt: u64) -> Vec<CurveTree> {
    (0..count)
        .map(|i| {
            let seed = salt.wrapping_mul(1_000_003).wrapping_add(i);
            let genus = [4, 6, 8][(seed % 3) as usize];
            random_tree(GenSpec::new(genus, 2 + (seed / 3 % 6) as usize, seed).delta_half())
                .unwrap()
        })
        .collect()
}

/// Plain adjacency view of a tree built from its JSON description.
pub struct Oracle {
    pub genus: Vec<i64>,
    pub edges: Vec<(usize, usize)>,
}

impl Oracle {
    pub fn new(tree: &CurveTree) -> Oracle {
        let raw = tree.to_raw();
        let ids: Vec<&str> = raw.components.iter().map(|c| c.id.as_str()).collect();
        let pos = |id: &str| ids.iter().position(|&x| x == id).unwrap();
        Oracle {
            genus: raw.components.iter().map(|c| i64::from(c.genus)).collect(),
            edges: raw
                .nodes
                .iter()
                .map(|n| (pos(&n.ends[0]), pos(&n.ends[1])))
                .collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.genus.len()
    }

    pub fn g(&self) -> i64 {
        self.genus.iter().sum()
    }

    pub fn member(mask: u64, i: usize) -> bool {
        mask >> i & 1 == 1
    }

    pub fn k(&self, mask: u64) -> i64 {
        self.edges
            .iter()
            .filter(|&&(a, b)| Self::member(mask, a) != Self::member(mask, b))
            .count() as i64
    }

    /// Number of connected pieces, by repeated search.
    pub fn pieces(&self, mask: u64) -> i64 {
        let mut seen = 0u64;
        let mut count = 0;
        for start in 0..self.n() {
            if !Self::member(mask, start) || Self::member(seen, start) {
                continue;
            }
            count += 1;
            let mut stack = vec![start];
            seen |= 1 << start;
            while let Some(v) = stack.pop() {
                for &(a, b) in &self.edges {
                    for (x, y) in [(a, b), (b, a)] {
                        if x == v && Self::member(mask, y) && !Self::member(seen, y) {
                            seen |= 1 << y;
                            stack.push(y);
                        }
                    }
                }
            }
        }
        count
    }

    pub fn genus_of(&self, mask: u64) -> i64 {
        (0..self.n())
            .filter(|&i| Self::member(mask, i))
            .map(|i| self.genus[i])
            .sum()
    }

    pub fn omega(&self, mask: u64) -> i64 {
        2 * self.genus_of(mask) - 2 * self.pieces(mask) + self.k(mask)
    }

    pub fn full(&self) -> u64 {
        (1u64 << self.n()) - 1
    }

    pub fn degree_on(&self, md: &[i64], mask: u64) -> i64 {
        (0..self.n())
            .filter(|&i| Self::member(mask, i))
            .map(|i| md[i])
            .sum()
    }

    /// `|d_Y - d w_Y/(2g-2)| <= k_Y/2` over every non-empty proper subset.
    pub fn semistable(&self, md: &[i64]) -> bool {
        let d: i64 = md.iter().sum();
        let g2 = 2 * self.g() - 2;
        (1..self.full()).all(|y| {
            let lhs = (2 * g2 * self.degree_on(md, y) - 2 * d * self.omega(y)).abs();
            lhs <= g2 * self.k(y)
        })
    }

    pub fn quasistable(&self, md: &[i64], x: usize) -> bool {
        let d: i64 = md.iter().sum();
        let g2 = 2 * self.g() - 2;
        self.semistable(md)
            && (1..self.full())
                .filter(|&y| Self::member(y, x))
                .all(|y| 2 * g2 * self.degree_on(md, y) - 2 * d * self.omega(y) > -g2 * self.k(y))
    }

    /// Every multidegree of total `d` with entries in `[lo, hi]`.
    pub fn box_multidegrees(&self, d: i64, lo: i64, hi: i64) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        let mut cur = vec![0; self.n()];
        fn rec(i: usize, left: i64, lo: i64, hi: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
            if i == cur.len() {
                if left == 0 {
                    out.push(cur.clone());
                }
                return;
            }
            for v in lo..=hi {
                cur[i] = v;
                rec(i + 1, left - v, lo, hi, cur, out);
            }
        }
        rec(0, d, lo, hi, &mut cur, &mut out);
        out
    }

    /// Brute-force quasistable set from a generous box.
    pub fn quasistable_set(&self, d: i64, x: usize) -> Vec<Multidegree> {
        let reach = d.max(0) + self.n() as i64;
        let mut v: Vec<Multidegree> = self
            .box_multidegrees(d, -reach, reach)
            .into_iter()
            .filter(|m| self.quasistable(m, x))
            .map(Multidegree::new)
            .collect();
        v.sort();
        v
    }
}
