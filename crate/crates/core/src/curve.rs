//! Stable curves of compact type as genus-weighted trees.
//!
//! Components are the vertices of the dual graph and nodes are its edges.
//! Every node of a curve of compact type is separating, so the dual graph is
//! a tree and the arithmetic genus is the sum of the component genera.
//!
//! Components and nodes are stored in lexicographic order of their ids; that
//! order is the canonical component order used by [`Multidegree`] and
//! [`Subcurve`].

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Subcurves are `u64` bitsets, which caps the number of components.
pub const MAX_COMPONENTS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawComponent {
    pub id: String,
    pub genus: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawNode {
    pub id: String,
    pub ends: [String; 2],
}

/// Unchecked tree description, as read from JSON.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawTree {
    pub components: Vec<RawComponent>,
    #[serde(default)]
    pub nodes: Vec<RawNode>,
}

impl RawTree {
    pub fn from_json(text: &str) -> Result<RawTree> {
        Ok(serde_json::from_str(text)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Violation {
    NoComponents,
    TooManyComponents(usize),
    DuplicateComponent(String),
    DuplicateNode(String),
    DanglingEnd { node: String, end: String },
    SelfLoop(String),
    NotATree { node: String },
    Disconnected { component: String },
    Unstable { component: String, nodes: usize },
    GenusTooSmall(u64),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoComponents => write!(f, "tree has no components"),
            Violation::TooManyComponents(n) => {
                write!(
                    f,
                    "tree has {n} components, at most {MAX_COMPONENTS} supported"
                )
            }
            Violation::DuplicateComponent(id) => write!(f, "duplicate component id {id}"),
            Violation::DuplicateNode(id) => write!(f, "duplicate node id {id}"),
            Violation::DanglingEnd { node, end } => {
                write!(f, "node {node} references unknown component {end}")
            }
            Violation::SelfLoop(id) => {
                write!(f, "node {id} is a self-loop (non-separating node)")
            }
            Violation::NotATree { node } => write!(f, "not a tree: node {node} closes a cycle"),
            Violation::Disconnected { component } => {
                write!(f, "not connected: component {component} is unreachable")
            }
            Violation::Unstable { component, nodes } => write!(
                f,
                "stability: genus-0 component {component} needs >=3 nodes, has {nodes}"
            ),
            Violation::GenusTooSmall(g) => write!(f, "total genus {g} is below 2"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checks every structural invariant of a stable curve of compact type and
/// reports all violations found. Nothing is repaired.
pub fn validate(raw: &RawTree) -> ValidationReport {
    let mut violations = Vec::new();
    if raw.components.is_empty() {
        violations.push(Violation::NoComponents);
    }
    if raw.components.len() > MAX_COMPONENTS {
        violations.push(Violation::TooManyComponents(raw.components.len()));
    }

    let mut index: HashMap<&str, usize> = HashMap::new();
    for c in &raw.components {
        if index.contains_key(c.id.as_str()) {
            violations.push(Violation::DuplicateComponent(c.id.clone()));
        } else {
            index.insert(c.id.as_str(), index.len());
        }
    }
    let mut seen_nodes = HashSet::new();
    for n in &raw.nodes {
        if !seen_nodes.insert(n.id.as_str()) {
            violations.push(Violation::DuplicateNode(n.id.clone()));
        }
    }

    // union-find over the first occurrence of each component id
    let mut parent: Vec<usize> = (0..index.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut degree = vec![0usize; index.len()];
    for n in &raw.nodes {
        let mut ends = [None, None];
        for (slot, end) in ends.iter_mut().zip(n.ends.iter()) {
            match index.get(end.as_str()) {
                Some(&i) => *slot = Some(i),
                None => violations.push(Violation::DanglingEnd {
                    node: n.id.clone(),
                    end: end.clone(),
                }),
            }
        }
        let (Some(a), Some(b)) = (ends[0], ends[1]) else {
            continue;
        };
        if a == b {
            violations.push(Violation::SelfLoop(n.id.clone()));
            continue;
        }
        degree[a] += 1;
        degree[b] += 1;
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            violations.push(Violation::NotATree { node: n.id.clone() });
        } else {
            parent[ra] = rb;
        }
    }

    if !index.is_empty() {
        let root = find(&mut parent, 0);
        let mut reported = HashSet::new();
        for c in &raw.components {
            let i = index[c.id.as_str()];
            let r = find(&mut parent, i);
            if r != root && reported.insert(r) {
                violations.push(Violation::Disconnected {
                    component: c.id.clone(),
                });
            }
        }
    }

    let mut stable_checked = HashSet::new();
    for c in &raw.components {
        let i = index[c.id.as_str()];
        if c.genus == 0 && degree[i] < 3 && stable_checked.insert(i) {
            violations.push(Violation::Unstable {
                component: c.id.clone(),
                nodes: degree[i],
            });
        }
    }

    let genus: u64 = raw.components.iter().map(|c| u64::from(c.genus)).sum();
    if !raw.components.is_empty() && genus < 2 {
        violations.push(Violation::GenusTooSmall(genus));
    }
    ValidationReport { violations }
}

/// A set of components, stored as a bitset over the canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Subcurve(u64);

impl Subcurve {
    pub const fn empty() -> Subcurve {
        Subcurve(0)
    }

    pub fn singleton(component: usize) -> Subcurve {
        Subcurve(1 << component)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Subcurve {
        Subcurve(indices.into_iter().fold(0, |acc, i| acc | (1 << i)))
    }

    pub const fn from_bits(bits: u64) -> Subcurve {
        Subcurve(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, component: usize) -> bool {
        component < 64 && self.0 & (1 << component) != 0
    }

    pub fn with(self, component: usize) -> Subcurve {
        Subcurve(self.0 | (1 << component))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Subcurve) -> Subcurve {
        Subcurve(self.0 | other.0)
    }

    pub fn intersection(self, other: Subcurve) -> Subcurve {
        Subcurve(self.0 & other.0)
    }

    pub fn is_subset_of(self, other: Subcurve) -> bool {
        self.0 & !other.0 == 0
    }

    /// Component indices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    /// Canonical order: by size, then lexicographically on the sorted member list.
    pub fn canonical_cmp(&self, other: &Subcurve) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

/// One side of a node. The side is a connected subcurve meeting its
/// complement exactly at `node`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Tail {
    pub node: usize,
    pub side: Subcurve,
}

/// Integer degree per component, in canonical component order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Multidegree(Vec<i64>);

impl Multidegree {
    pub fn new(degrees: Vec<i64>) -> Multidegree {
        Multidegree(degrees)
    }

    pub fn zeros(len: usize) -> Multidegree {
        Multidegree(vec![0; len])
    }

    pub fn unit(len: usize, component: usize) -> Multidegree {
        let mut d = vec![0; len];
        d[component] = 1;
        Multidegree(d)
    }

    pub fn degrees(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn get(&self, component: usize) -> i64 {
        self.0[component]
    }

    /// Degree on a subcurve: the sum over its components.
    pub fn on(&self, y: Subcurve) -> i64 {
        y.iter().map(|i| self.0[i]).sum()
    }

    pub fn scaled(&self, k: i64) -> Multidegree {
        Multidegree(self.0.iter().map(|d| d * k).collect())
    }
}

impl fmt::Display for Multidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ")")
    }
}

impl AddAssign<&Multidegree> for Multidegree {
    fn add_assign(&mut self, rhs: &Multidegree) {
        assert_eq!(self.len(), rhs.len(), "multidegree length mismatch");
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a += b;
        }
    }
}

impl Add<&Multidegree> for &Multidegree {
    type Output = Multidegree;
    fn add(self, rhs: &Multidegree) -> Multidegree {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&Multidegree> for &Multidegree {
    type Output = Multidegree;
    fn sub(self, rhs: &Multidegree) -> Multidegree {
        self + &(-rhs)
    }
}

impl Neg for &Multidegree {
    type Output = Multidegree;
    fn neg(self) -> Multidegree {
        Multidegree(self.0.iter().map(|d| -d).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Component {
    id: String,
    genus: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Node {
    id: String,
    ends: (usize, usize),
}

/// Dual graph of a stable curve of compact type. Always valid once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveTree {
    components: Vec<Component>,
    nodes: Vec<Node>,
    // node indices incident to each component
    incident: Vec<Vec<usize>>,
}

impl CurveTree {
    pub fn from_raw(raw: &RawTree) -> Result<CurveTree> {
        let report = validate(raw);
        if !report.is_ok() {
            return Err(Error::InvalidTree(report));
        }
        let mut components: Vec<Component> = raw
            .components
            .iter()
            .map(|c| Component {
                id: c.id.clone(),
                genus: c.genus,
            })
            .collect();
        components.sort_by(|a, b| a.id.cmp(&b.id));
        let index: HashMap<&str, usize> = components
            .iter()
            .enumerate()
            .map(|(i, c)| (c.id.as_str(), i))
            .collect();
        let mut nodes: Vec<Node> = raw
            .nodes
            .iter()
            .map(|n| Node {
                id: n.id.clone(),
                ends: (index[n.ends[0].as_str()], index[n.ends[1].as_str()]),
            })
            .collect();
        nodes.sort_by(|a, b| a.id.cmp(&b.id));
        let mut incident = vec![Vec::new(); components.len()];
        for (i, n) in nodes.iter().enumerate() {
            incident[n.ends.0].push(i);
            incident[n.ends.1].push(i);
        }
        Ok(CurveTree {
            components,
            nodes,
            incident,
        })
    }

    pub fn from_json(text: &str) -> Result<CurveTree> {
        CurveTree::from_raw(&RawTree::from_json(text)?)
    }

    /// Builds a tree from `(id, genus)` pairs and `(id, end, end)` triples.
    pub fn build(components: &[(&str, u32)], nodes: &[(&str, &str, &str)]) -> Result<CurveTree> {
        CurveTree::from_raw(&RawTree {
            components: components
                .iter()
                .map(|&(id, genus)| RawComponent {
                    id: id.to_owned(),
                    genus,
                })
                .collect(),
            nodes: nodes
                .iter()
                .map(|&(id, a, b)| RawNode {
                    id: id.to_owned(),
                    ends: [a.to_owned(), b.to_owned()],
                })
                .collect(),
        })
    }

    pub fn to_raw(&self) -> RawTree {
        RawTree {
            components: self
                .components
                .iter()
                .map(|c| RawComponent {
                    id: c.id.clone(),
                    genus: c.genus,
                })
                .collect(),
            nodes: self
                .nodes
                .iter()
                .map(|n| RawNode {
                    id: n.id.clone(),
                    ends: [
                        self.components[n.ends.0].id.clone(),
                        self.components[n.ends.1].id.clone(),
                    ],
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_raw()).expect("tree serializes")
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn component_id(&self, component: usize) -> &str {
        &self.components[component].id
    }

    pub fn component_genus(&self, component: usize) -> u32 {
        self.components[component].genus
    }

    pub fn component_index(&self, id: &str) -> Result<usize> {
        self.components
            .binary_search_by(|c| c.id.as_str().cmp(id))
            .map_err(|_| Error::UnknownComponent(id.to_owned()))
    }

    pub fn node_id(&self, node: usize) -> &str {
        &self.nodes[node].id
    }

    pub fn node_index(&self, id: &str) -> Result<usize> {
        self.nodes
            .binary_search_by(|n| n.id.as_str().cmp(id))
            .map_err(|_| Error::UnknownNode(id.to_owned()))
    }

    /// The two components joined by a node, in the order given at input.
    pub fn node_ends(&self, node: usize) -> (usize, usize) {
        self.nodes[node].ends
    }

    pub fn incident_nodes(&self, component: usize) -> &[usize] {
        &self.incident[component]
    }

    /// Component at the other end of `node` from `component`.
    pub fn across(&self, node: usize, component: usize) -> usize {
        let (a, b) = self.nodes[node].ends;
        if a == component {
            b
        } else {
            a
        }
    }

    pub fn whole(&self) -> Subcurve {
        Subcurve::from_indices(0..self.num_components())
    }

    pub fn complement(&self, y: Subcurve) -> Subcurve {
        Subcurve::from_bits(self.whole().bits() & !y.bits())
    }

    pub fn is_proper(&self, y: Subcurve) -> bool {
        !y.is_empty() && y != self.whole()
    }

    pub fn subcurve_of<'a, I: IntoIterator<Item = &'a str>>(&self, ids: I) -> Result<Subcurve> {
        ids.into_iter().try_fold(Subcurve::empty(), |acc, id| {
            Ok(acc.with(self.component_index(id)?))
        })
    }

    pub fn subcurve_ids(&self, y: Subcurve) -> Vec<String> {
        y.iter().map(|i| self.component_id(i).to_owned()).collect()
    }

    pub fn genus(&self) -> u64 {
        self.components.iter().map(|c| u64::from(c.genus)).sum()
    }

    pub fn subcurve_genus(&self, y: Subcurve) -> u64 {
        y.iter().map(|i| u64::from(self.components[i].genus)).sum()
    }

    /// Number of nodes with exactly one end in `y`.
    pub fn k(&self, y: Subcurve) -> usize {
        self.nodes
            .iter()
            .filter(|n| y.contains(n.ends.0) != y.contains(n.ends.1))
            .count()
    }

    fn internal_nodes(&self, y: Subcurve) -> usize {
        self.nodes
            .iter()
            .filter(|n| y.contains(n.ends.0) && y.contains(n.ends.1))
            .count()
    }

    /// Number of connected components of `y` (zero for the empty subcurve).
    /// `y` induces a forest, so this is vertices minus edges.
    pub fn connected_count(&self, y: Subcurve) -> usize {
        y.len() - self.internal_nodes(y)
    }

    pub fn is_connected(&self, y: Subcurve) -> bool {
        self.connected_count(y) == 1
    }

    /// Connected components of `y`, ordered by their smallest member.
    pub fn connected_components(&self, y: Subcurve) -> Vec<Subcurve> {
        let mut out = Vec::new();
        let mut left = y;
        while let Some(start) = left.iter().next() {
            let part = self.flood(start, y, None);
            left = Subcurve::from_bits(left.bits() & !part.bits());
            out.push(part);
        }
        out
    }

    // Components reachable from `start` inside `within`, never crossing `blocked`.
    fn flood(&self, start: usize, within: Subcurve, blocked: Option<usize>) -> Subcurve {
        let mut seen = Subcurve::singleton(start);
        let mut queue = VecDeque::from([start]);
        while let Some(c) = queue.pop_front() {
            for &n in &self.incident[c] {
                if Some(n) == blocked {
                    continue;
                }
                let other = self.across(n, c);
                if within.contains(other) && !seen.contains(other) {
                    seen = seen.with(other);
                    queue.push_back(other);
                }
            }
        }
        seen
    }

    /// Degree of the dualizing sheaf restricted to `y`: the sum of
    /// `2 g_W - 2 + k_W` over the connected components `W` of `y`.
    pub fn omega_degree(&self, y: Subcurve) -> i64 {
        2 * self.subcurve_genus(y) as i64 - 2 * self.connected_count(y) as i64 + self.k(y) as i64
    }

    /// The tail at `node` containing the given end component.
    pub fn tail_at(&self, node: usize, end: usize) -> Tail {
        let (a, b) = self.nodes[node].ends;
        debug_assert!(end == a || end == b);
        Tail {
            node,
            side: self.flood(end, self.whole(), Some(node)),
        }
    }

    /// Both tails at a node, first-end side first.
    pub fn tails_at(&self, node: usize) -> [Tail; 2] {
        let (a, b) = self.nodes[node].ends;
        [self.tail_at(node, a), self.tail_at(node, b)]
    }

    /// All tails, two per node, in node order; the two sides of a node in
    /// canonical subcurve order.
    pub fn tails(&self) -> Vec<Tail> {
        (0..self.num_nodes())
            .flat_map(|n| {
                let mut pair = self.tails_at(n);
                pair.sort_by(|a, b| a.side.canonical_cmp(&b.side));
                pair
            })
            .collect()
    }

    pub fn opposite(&self, tail: Tail) -> Tail {
        Tail {
            node: tail.node,
            side: self.complement(tail.side),
        }
    }

    /// The end of the tail's node lying on the tail.
    pub fn tail_end(&self, tail: Tail) -> usize {
        let (a, b) = self.nodes[tail.node].ends;
        if tail.side.contains(a) {
            a
        } else {
            b
        }
    }

    /// Every non-empty proper connected subcurve, in canonical order.
    pub fn connected_subcurves(&self) -> Vec<Subcurve> {
        let mut seen: HashSet<Subcurve> = HashSet::new();
        let mut frontier: Vec<Subcurve> = (0..self.num_components())
            .map(Subcurve::singleton)
            .collect();
        seen.extend(frontier.iter().copied());
        while let Some(y) = frontier.pop() {
            for c in y.iter() {
                for &n in &self.incident[c] {
                    let grown = y.with(self.across(n, c));
                    if seen.insert(grown) {
                        frontier.push(grown);
                    }
                }
            }
        }
        let whole = self.whole();
        let mut out: Vec<Subcurve> = seen.into_iter().filter(|&y| y != whole).collect();
        out.sort_by(Subcurve::canonical_cmp);
        out
    }

    pub fn multidegree_map(&self, md: &Multidegree) -> BTreeMap<String, i64> {
        md.degrees()
            .iter()
            .enumerate()
            .map(|(i, &d)| (self.component_id(i).to_owned(), d))
            .collect()
    }
}
