//! The canonical multidegrees `e_1, e_2, ...` of the Abel maps and the
//! pointwise Abel images as formal divisors on each component.
//!
//! `e_1` is the unit vector on the principal component. Each further step
//! adds `e_1` and twists by `-Z` for every `e_d`-big tail `Z` avoiding the
//! principal component:
//!
//! ```text
//! e_{d+1} = e_d + e_1 + sum_{Z in T(e_d)} delta(Z, -1)
//! ```
//!
//! where `delta(Z, -1)` is the restriction of `O(-Z)` from a smoothing to the
//! special fibre: `+1` on the component of `Z` at its node and `-1` on the
//! component across the node.
//!
//! Divisors are purely formal. Smooth points are opaque labels, the node
//! `n` joining `A` and `B` has one branch symbol on each of `A` and `B`, and
//! two divisors are equal only when all coefficients agree. Linear
//! equivalence on a component is never decided.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::RwLock;

use crate::classify::{principal_component, small_tail_at_node, small_tails};
use crate::curve::{CurveTree, Multidegree, Tail};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Point {
    Smooth { component: String, label: String },
    Node(String),
}

impl Point {
    pub fn smooth(component: &str, label: &str) -> Point {
        Point::Smooth {
            component: component.to_owned(),
            label: label.to_owned(),
        }
    }

    pub fn node(id: &str) -> Point {
        Point::Node(id.to_owned())
    }

    /// Parses `COMP:LABEL` or `node:ID`.
    pub fn parse(token: &str) -> Option<Point> {
        let (head, tail) = token.split_once(':')?;
        if head.is_empty() || tail.is_empty() || tail.contains('@') {
            return None;
        }
        Some(if head == "node" {
            Point::node(tail)
        } else {
            Point::smooth(head, tail)
        })
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Smooth { component, label } => write!(f, "{component}:{label}"),
            Point::Node(id) => write!(f, "node:{id}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    /// A smooth point.
    Label(String),
    /// The branch of a node on the component the term is attached to.
    Branch(usize),
}

/// Formal divisor per component. Zero coefficients are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DivisorRep {
    terms: BTreeMap<usize, BTreeMap<Symbol, i64>>,
}

impl DivisorRep {
    pub fn new() -> DivisorRep {
        DivisorRep::default()
    }

    pub fn add_term(&mut self, component: usize, symbol: Symbol, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let on = self.terms.entry(component).or_default();
        let c = on.entry(symbol.clone()).or_insert(0);
        *c += coeff;
        if *c == 0 {
            on.remove(&symbol);
            if on.is_empty() {
                self.terms.remove(&component);
            }
        }
    }

    pub fn add(&mut self, other: &DivisorRep) {
        for (&comp, on) in &other.terms {
            for (sym, &c) in on {
                self.add_term(comp, sym.clone(), c);
            }
        }
    }

    pub fn coefficient(&self, component: usize, symbol: &Symbol) -> i64 {
        self.terms
            .get(&component)
            .and_then(|on| on.get(symbol))
            .copied()
            .unwrap_or(0)
    }

    /// Terms on one component; empty when the restriction is trivial.
    pub fn on(&self, component: usize) -> BTreeMap<Symbol, i64> {
        self.terms.get(&component).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Symbol, i64)> {
        self.terms
            .iter()
            .flat_map(|(&comp, on)| on.iter().map(move |(s, &c)| (comp, s, c)))
    }

    /// Per-component map with `label` and `node@component` keys.
    pub fn to_map(&self, tree: &CurveTree) -> BTreeMap<String, BTreeMap<String, i64>> {
        (0..tree.num_components())
            .map(|comp| {
                let on = self
                    .on(comp)
                    .into_iter()
                    .map(|(s, c)| (symbol_name(tree, comp, &s), c))
                    .collect();
                (tree.component_id(comp).to_owned(), on)
            })
            .collect()
    }

    pub fn display<'a>(&'a self, tree: &'a CurveTree) -> impl fmt::Display + 'a {
        DisplayRep { rep: self, tree }
    }
}

fn symbol_name(tree: &CurveTree, component: usize, symbol: &Symbol) -> String {
    match symbol {
        Symbol::Label(l) => l.clone(),
        Symbol::Branch(n) => format!("{}@{}", tree.node_id(*n), tree.component_id(component)),
    }
}

struct DisplayRep<'a> {
    rep: &'a DivisorRep,
    tree: &'a CurveTree,
}

impl fmt::Display for DisplayRep<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for comp in 0..self.tree.num_components() {
            if comp > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{}: ", self.tree.component_id(comp))?;
            let on = self.rep.on(comp);
            if on.is_empty() {
                write!(f, "0")?;
            }
            for (i, (sym, c)) in on.iter().enumerate() {
                let name = symbol_name(self.tree, comp, sym);
                let mag = if c.abs() == 1 {
                    String::new()
                } else {
                    c.abs().to_string()
                };
                match (i, *c < 0) {
                    (0, false) => write!(f, "{mag}{name}")?,
                    (0, true) => write!(f, "-{mag}{name}")?,
                    (_, false) => write!(f, " + {mag}{name}")?,
                    (_, true) => write!(f, " - {mag}{name}")?,
                }
            }
        }
        Ok(())
    }
}

/// Per-component sum of coefficients.
pub fn multidegree_of(tree: &CurveTree, rep: &DivisorRep) -> Multidegree {
    let mut md = vec![0; tree.num_components()];
    for (comp, _, c) in rep.terms() {
        md[comp] += c;
    }
    Multidegree::new(md)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// Effect of twisting by `O(+Z)` or `O(-Z)` on the special fibre.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistDelta {
    pub tail: Tail,
    pub sign: Sign,
    pub multidegree: Multidegree,
    pub divisor: DivisorRep,
}

pub fn twist_delta(tree: &CurveTree, tail: Tail, sign: Sign) -> TwistDelta {
    let inside = tree.tail_end(tail);
    let outside = tree.across(tail.node, inside);
    // O(-Z) has degree k_Z = 1 on Z
    let s = -sign.value();
    let mut md = vec![0; tree.num_components()];
    md[inside] = s;
    md[outside] = -s;
    let mut divisor = DivisorRep::new();
    divisor.add_term(inside, Symbol::Branch(tail.node), s);
    divisor.add_term(outside, Symbol::Branch(tail.node), -s);
    TwistDelta {
        tail,
        sign,
        multidegree: Multidegree::new(md),
        divisor,
    }
}

pub fn e1(tree: &CurveTree, xpr: usize) -> Multidegree {
    Multidegree::unit(tree.num_components(), xpr)
}

/// `d_Z (2g-2) - d w_Z < 2 g_Z - g`.
pub fn is_big_tail(tree: &CurveTree, md: &Multidegree, tail: Tail) -> bool {
    let g = tree.genus() as i64;
    let lhs = md.on(tail.side) * (2 * g - 2) - md.total() * tree.omega_degree(tail.side);
    lhs < 2 * tree.subcurve_genus(tail.side) as i64 - g
}

/// Big tails not containing `x`.
pub fn big_tails(tree: &CurveTree, md: &Multidegree, x: usize) -> Vec<Tail> {
    tree.tails()
        .into_iter()
        .filter(|z| !z.side.contains(x) && is_big_tail(tree, md, *z))
        .collect()
}

/// `md + e_x + sum_{Z in T_md(x)} delta(Z, -1)`.
pub fn twist_step(tree: &CurveTree, md: &Multidegree, x: usize) -> Multidegree {
    let mut next = md + &e1(tree, x);
    for z in big_tails(tree, md, x) {
        next += &twist_delta(tree, z, Sign::Minus).multidegree;
    }
    next
}

fn node_in_tail(tree: &CurveTree, node: usize, tail: Tail) -> bool {
    let (a, b) = tree.node_ends(node);
    tail.node == node || (tail.side.contains(a) && tail.side.contains(b))
}

#[derive(Debug, Clone)]
struct Step {
    degree: Multidegree,
    big: Vec<Tail>,
}

/// Abel maps of one curve with a fixed base component. The multidegree
/// sequence is computed lazily and shared between readers.
#[derive(Debug)]
pub struct AbelMap<'a> {
    tree: &'a CurveTree,
    base: usize,
    small: Vec<Tail>,
    steps: RwLock<Vec<Step>>,
}

impl<'a> AbelMap<'a> {
    /// Abel maps based at the principal component.
    pub fn new(tree: &'a CurveTree) -> AbelMap<'a> {
        AbelMap::with_base(tree, principal_component(tree))
    }

    /// Abel maps based at any component. Only a central or semicentral base
    /// gives the canonical maps.
    pub fn with_base(tree: &'a CurveTree, base: usize) -> AbelMap<'a> {
        let first = e1(tree, base);
        let big = big_tails(tree, &first, base);
        AbelMap {
            tree,
            base,
            small: small_tails(tree, base),
            steps: RwLock::new(vec![Step { degree: first, big }]),
        }
    }

    pub fn tree(&self) -> &'a CurveTree {
        self.tree
    }

    pub fn base(&self) -> usize {
        self.base
    }

    fn ensure(&self, d: usize) {
        if self.steps.read().expect("lock").len() >= d {
            return;
        }
        let mut steps = self.steps.write().expect("lock");
        while steps.len() < d {
            let last = steps.last().expect("e_1 present");
            let mut next = &last.degree + &e1(self.tree, self.base);
            for &z in &last.big {
                next += &twist_delta(self.tree, z, Sign::Minus).multidegree;
            }
            let big = big_tails(self.tree, &next, self.base);
            steps.push(Step { degree: next, big });
        }
    }

    /// `e_d` for `d >= 1`.
    pub fn e(&self, d: usize) -> Multidegree {
        assert!(d >= 1, "e_d is defined for d >= 1");
        self.ensure(d);
        self.steps.read().expect("lock")[d - 1].degree.clone()
    }

    /// The `e_d`-big tails avoiding the base component.
    pub fn big_tails_at(&self, d: usize) -> Vec<Tail> {
        assert!(d >= 1, "e_d is defined for d >= 1");
        self.ensure(d);
        self.steps.read().expect("lock")[d - 1].big.clone()
    }

    pub fn sequence(&self, dmax: usize) -> Vec<Multidegree> {
        self.ensure(dmax);
        self.steps.read().expect("lock")[..dmax]
            .iter()
            .map(|s| s.degree.clone())
            .collect()
    }

    fn resolve(&self, q: &Point) -> Result<Resolved> {
        match q {
            Point::Smooth { component, label } => Ok(Resolved::Smooth(
                self.tree.component_index(component)?,
                label.clone(),
            )),
            Point::Node(id) => Ok(Resolved::Node(self.tree.node_index(id)?)),
        }
    }

    /// Image of a single point under the first Abel map.
    pub fn abel1(&self, q: &Point) -> Result<DivisorRep> {
        let mut rep = DivisorRep::new();
        match self.resolve(q)? {
            Resolved::Smooth(x, label) => {
                rep.add_term(x, Symbol::Label(label), 1);
                for &w in self.small.iter().filter(|w| w.side.contains(x)) {
                    rep.add(&twist_delta(self.tree, w, Sign::Plus).divisor);
                }
            }
            Resolved::Node(n) => {
                let z = small_tail_at_node(self.tree, self.base, n)?;
                rep.add_term(self.tree.tail_end(z), Symbol::Branch(n), 1);
                for &w in self
                    .small
                    .iter()
                    .filter(|&&w| node_in_tail(self.tree, n, w))
                {
                    rep.add(&twist_delta(self.tree, w, Sign::Plus).divisor);
                }
            }
        }
        Ok(rep)
    }

    /// Image of a point configuration: the first-map images of every point
    /// plus the twists by `-Z` for `Z` big at `e_1, ..., e_{d-1}`.
    pub fn abel(&self, config: &[Point]) -> Result<DivisorRep> {
        if config.is_empty() {
            return Err(Error::EmptyConfig);
        }
        let mut rep = DivisorRep::new();
        for q in config {
            rep.add(&self.abel1(q)?);
        }
        for i in 1..config.len() {
            for z in self.big_tails_at(i) {
                rep.add(&twist_delta(self.tree, z, Sign::Minus).divisor);
            }
        }
        Ok(rep)
    }

    /// The same image built one point at a time: the image of the first
    /// `i` points, combined with the next point and twisted by `T(e_i)`.
    pub fn abel_iterated(&self, config: &[Point]) -> Result<DivisorRep> {
        let (first, rest) = config.split_first().ok_or(Error::EmptyConfig)?;
        let mut rep = self.abel1(first)?;
        for (i, q) in rest.iter().enumerate() {
            let mut next = rep;
            next.add(&self.abel1(q)?);
            for z in self.big_tails_at(i + 1) {
                next.add(&twist_delta(self.tree, z, Sign::Minus).divisor);
            }
            rep = next;
        }
        Ok(rep)
    }
}

enum Resolved {
    Smooth(usize, String),
    Node(usize),
}

pub fn e_sequence(tree: &CurveTree, xpr: usize, dmax: usize) -> Result<Vec<Multidegree>> {
    if dmax == 0 {
        return Err(Error::ZeroDmax);
    }
    if xpr >= tree.num_components() {
        return Err(Error::UnknownComponent(format!("#{xpr}")));
    }
    Ok(AbelMap::with_base(tree, xpr).sequence(dmax))
}

pub fn abel1(tree: &CurveTree, xpr: usize, q: &Point) -> Result<DivisorRep> {
    AbelMap::with_base(tree, xpr).abel1(q)
}

pub fn abel_d(tree: &CurveTree, xpr: usize, config: &[Point]) -> Result<DivisorRep> {
    AbelMap::with_base(tree, xpr).abel(config)
}
