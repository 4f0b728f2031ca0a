//! Seeded generation of stable curves of compact type.
//!
//! A random tree shape is drawn from a Prüfer sequence, every component of
//! degree below 3 gets genus 1, and the remaining genus is scattered at
//! random. If the forced genus exceeds the budget the component count is
//! lowered and the draw repeated.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::curve::{CurveTree, RawComponent, RawNode, RawTree};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenSpec {
    pub genus: u32,
    pub max_components: usize,
    pub seed: u64,
    pub force_delta_half: bool,
}

impl GenSpec {
    pub fn new(genus: u32, max_components: usize, seed: u64) -> GenSpec {
        GenSpec {
            genus,
            max_components,
            seed,
            force_delta_half: false,
        }
    }

    pub fn delta_half(mut self) -> GenSpec {
        self.force_delta_half = true;
        self
    }
}

// Edges of a uniformly random labelled tree on `n` vertices.
fn prufer_tree(n: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    if n < 2 {
        return Vec::new();
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &v in &seq {
        degree[v] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &v in &seq {
        let leaf = (0..n).find(|&u| degree[u] == 1).expect("a leaf exists");
        edges.push((leaf, v));
        degree[leaf] -= 1;
        degree[v] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&u| degree[u] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

// Genera summing to `budget`, with genus >= 1 wherever the degree is below 3.
fn assign_genera(degrees: &[usize], budget: u32, rng: &mut ChaCha8Rng) -> Option<Vec<u32>> {
    let mut genera: Vec<u32> = degrees.iter().map(|&k| u32::from(k < 3)).collect();
    let forced: u32 = genera.iter().sum();
    if forced > budget {
        return None;
    }
    for _ in 0..budget - forced {
        let i = rng.gen_range(0..genera.len());
        genera[i] += 1;
    }
    Some(genera)
}

fn ids(prefix: &str, count: usize) -> Vec<String> {
    let width = count.max(1).to_string().len();
    (1..=count)
        .map(|i| format!("{prefix}{i:0width$}"))
        .collect()
}

fn assemble(genera: &[u32], edges: &[(usize, usize)]) -> Result<CurveTree> {
    let cids = ids("C", genera.len());
    let nids = ids("n", edges.len());
    CurveTree::from_raw(&RawTree {
        components: cids
            .iter()
            .zip(genera)
            .map(|(id, &genus)| RawComponent {
                id: id.clone(),
                genus,
            })
            .collect(),
        nodes: nids
            .iter()
            .zip(edges)
            .map(|(id, &(a, b))| RawNode {
                id: id.clone(),
                ends: [cids[a].clone(), cids[b].clone()],
            })
            .collect(),
    })
}

fn degrees(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut deg = vec![0; n];
    for &(a, b) in edges {
        deg[a] += 1;
        deg[b] += 1;
    }
    deg
}

pub fn random_tree(spec: GenSpec) -> Result<CurveTree> {
    if spec.genus < 2 {
        return Err(Error::Unsatisfiable(format!(
            "genus {} is below 2",
            spec.genus
        )));
    }
    if spec.max_components == 0 {
        return Err(Error::Unsatisfiable(
            "max_components must be at least 1".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    if spec.force_delta_half {
        return delta_half_tree(spec, &mut rng);
    }
    let cap = spec.max_components.min(crate::curve::MAX_COMPONENTS);
    let mut n = rng.gen_range(1..=cap);
    loop {
        let edges = prufer_tree(n, &mut rng);
        let deg = degrees(n, &edges);
        if let Some(genera) = assign_genera(&deg, spec.genus, &mut rng) {
            return assemble(&genera, &edges);
        }
        // every leaf needs genus; shrink until the budget covers them
        n -= 1;
    }
}

fn delta_half_tree(spec: GenSpec, rng: &mut ChaCha8Rng) -> Result<CurveTree> {
    if !spec.genus.is_multiple_of(2) {
        return Err(Error::Unsatisfiable(format!(
            "odd genus {} cannot split into two halves",
            spec.genus
        )));
    }
    if spec.max_components < 2 {
        return Err(Error::Unsatisfiable(
            "a g/2 split needs at least two components".into(),
        ));
    }
    let half = spec.genus / 2;
    let cap = spec.max_components.min(crate::curve::MAX_COMPONENTS);
    let mut total = rng.gen_range(2..=cap);
    loop {
        let left = rng.gen_range(1..total);
        let right = total - left;
        let mut edges = prufer_tree(left, rng);
        edges.extend(
            prufer_tree(right, rng)
                .into_iter()
                .map(|(a, b)| (a + left, b + left)),
        );
        let a = rng.gen_range(0..left);
        let b = left + rng.gen_range(0..right);
        edges.push((a, b));
        edges.shuffle(rng);
        let deg = degrees(total, &edges);
        let lg = assign_genera(&deg[..left], half, rng);
        let rg = assign_genera(&deg[left..], half, rng);
        if let (Some(mut lg), Some(rg)) = (lg, rg) {
            lg.extend(rg);
            return assemble(&lg, &edges);
        }
        total = (total - 1).max(2);
    }
}
