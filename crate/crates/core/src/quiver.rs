//! Finite quivers with named arrows.
//!
//! Vertices are addressed by 0-based indices; the printed labels are `1..=n`
//! unless a constructor supplies its own.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::error::{invalid, Error, Result};

pub type Vertex = usize;
pub type ArrowId = u32;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Arrow {
    pub name: String,
    pub source: Vertex,
    pub target: Vertex,
}

impl Arrow {
    pub fn new(name: impl Into<String>, source: Vertex, target: Vertex) -> Self {
        Arrow { name: name.into(), source, target }
    }

    pub fn is_loop(&self) -> bool {
        self.source == self.target
    }
}

/// Problems found by [`validate_quiver`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Defect {
    DanglingSource { arrow: String },
    DanglingTarget { arrow: String },
    DuplicateArrow { arrow: String },
    /// Several loops at one vertex; allowed, but outside the 2-cyclic families.
    MultipleLoops { vertex: Vertex },
}

impl Defect {
    pub fn is_warning(&self) -> bool {
        matches!(self, Defect::MultipleLoops { .. })
    }
}

impl fmt::Display for Defect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Defect::DanglingSource { arrow } => write!(f, "dangling source on arrow {arrow}"),
            Defect::DanglingTarget { arrow } => write!(f, "dangling target on arrow {arrow}"),
            Defect::DuplicateArrow { arrow } => write!(f, "duplicate arrow id {arrow}"),
            Defect::MultipleLoops { vertex } => {
                write!(f, "multiple loops at vertex {} (warning)", vertex + 1)
            }
        }
    }
}

/// Reports every defect of a vertex count plus arrow list; empty means valid.
pub fn validate_quiver(vertices: usize, arrows: &[Arrow]) -> Vec<Defect> {
    let mut out = Vec::new();
    let mut seen = HashMap::new();
    let mut loops = vec![0usize; vertices];
    for a in arrows {
        if a.source >= vertices {
            out.push(Defect::DanglingSource { arrow: a.name.clone() });
        }
        if a.target >= vertices {
            out.push(Defect::DanglingTarget { arrow: a.name.clone() });
        }
        if seen.insert(a.name.as_str(), ()).is_some() {
            out.push(Defect::DuplicateArrow { arrow: a.name.clone() });
        }
        if a.is_loop() && a.source < vertices {
            loops[a.source] += 1;
        }
    }
    for (v, &c) in loops.iter().enumerate() {
        if c > 1 {
            out.push(Defect::MultipleLoops { vertex: v });
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct Quiver {
    labels: Vec<String>,
    arrows: Vec<Arrow>,
    by_name: HashMap<String, ArrowId>,
    outgoing: Vec<Vec<ArrowId>>,
    incoming: Vec<Vec<ArrowId>>,
}

impl PartialEq for Quiver {
    fn eq(&self, other: &Self) -> bool {
        self.labels.len() == other.labels.len() && self.arrows == other.arrows
    }
}
impl Eq for Quiver {}

impl Quiver {
    /// Builds a quiver with vertices labelled `1..=vertices`.
    pub fn new(vertices: usize, arrows: Vec<Arrow>) -> Result<Self> {
        Self::with_labels((1..=vertices).map(|i| i.to_string()).collect(), arrows)
    }

    pub fn with_labels(labels: Vec<String>, arrows: Vec<Arrow>) -> Result<Self> {
        let defects: Vec<_> = validate_quiver(labels.len(), &arrows)
            .into_iter()
            .filter(|d| !d.is_warning())
            .collect();
        if let Some(d) = defects.first() {
            return Err(Error::InvalidParameters(d.to_string()));
        }
        let n = labels.len();
        let mut outgoing = vec![Vec::new(); n];
        let mut incoming = vec![Vec::new(); n];
        let mut by_name = HashMap::new();
        for (i, a) in arrows.iter().enumerate() {
            outgoing[a.source].push(i as ArrowId);
            incoming[a.target].push(i as ArrowId);
            by_name.insert(a.name.clone(), i as ArrowId);
        }
        Ok(Quiver { labels, arrows, by_name, outgoing, incoming })
    }

    pub fn num_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn label(&self, v: Vertex) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, id: ArrowId) -> &Arrow {
        &self.arrows[id as usize]
    }

    pub fn arrow_id(&self, name: &str) -> Option<ArrowId> {
        self.by_name.get(name).copied()
    }

    pub fn source(&self, id: ArrowId) -> Vertex {
        self.arrows[id as usize].source
    }

    pub fn target(&self, id: ArrowId) -> Vertex {
        self.arrows[id as usize].target
    }

    pub fn outgoing(&self, v: Vertex) -> &[ArrowId] {
        &self.outgoing[v]
    }

    pub fn incoming(&self, v: Vertex) -> &[ArrowId] {
        &self.incoming[v]
    }

    pub fn has_loop_at(&self, v: Vertex) -> bool {
        self.outgoing[v].iter().any(|&a| self.target(a) == v)
    }

    /// `true` when some arrow `v -> w` has a partner `w -> v` with `w != v`.
    pub fn has_two_cycle_at(&self, v: Vertex) -> bool {
        self.outgoing[v].iter().any(|&a| {
            let w = self.target(a);
            w != v && self.incoming[v].iter().any(|&b| self.source(b) == w)
        })
    }

    pub fn has_two_cycles(&self) -> bool {
        (0..self.num_vertices()).any(|v| self.has_two_cycle_at(v))
    }

    pub fn has_loops(&self) -> bool {
        self.arrows.iter().any(Arrow::is_loop)
    }

    pub fn vertex(&self, label: &str) -> Option<Vertex> {
        self.labels.iter().position(|l| l == label)
    }
}

/// The quiver with vertices `1..=n`, arrows `a_i: i -> i+1`, `b_i: i+1 -> i`
/// for `i < n` and a loop `E_i` at each of the first `m` vertices.
///
/// Arrows are declared in the order `a_1, …, a_{n-1}, b_1, …, b_{n-1}, E_1, …, E_m`,
/// which is also the order used for canonical forms.
///
/// ```
/// let q = qpcat::quiver::build_anm(3, 1).unwrap();
/// let names: Vec<_> = q.arrows().iter().map(|a| a.name.as_str()).collect();
/// assert_eq!(names, ["a1", "a2", "b1", "b2", "E1"]);
/// ```
pub fn build_anm(n: usize, m: usize) -> Result<Quiver> {
    if n < 1 || m > n {
        return invalid(format!("need 0 <= m <= n and n >= 1, got n={n}, m={m}"));
    }
    let mut arrows = Vec::new();
    for i in 1..n {
        arrows.push(Arrow::new(format!("a{i}"), i - 1, i));
    }
    for i in 1..n {
        arrows.push(Arrow::new(format!("b{i}"), i, i - 1));
    }
    for i in 1..=m {
        arrows.push(Arrow::new(format!("E{i}"), i - 1, i - 1));
    }
    Quiver::new(n, arrows)
}

/// Adds a reversed arrow `x*` for every arrow `x` of a loop-free quiver.
pub fn double_quiver(d: &Quiver) -> Result<Quiver> {
    if d.has_loops() {
        return invalid("double_quiver needs a loop-free quiver");
    }
    let mut arrows = d.arrows().to_vec();
    for a in d.arrows() {
        arrows.push(Arrow::new(format!("{}*", a.name), a.target, a.source));
    }
    Quiver::with_labels(d.labels().to_vec(), arrows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validate_examples() {
        assert!(validate_quiver(2, &[Arrow::new("a", 0, 1)]).is_empty());
        assert_eq!(
            validate_quiver(1, &[Arrow::new("a", 0, 1)]),
            vec![Defect::DanglingTarget { arrow: "a".into() }]
        );
        let q = build_anm(2, 2).unwrap();
        assert!(validate_quiver(2, q.arrows()).is_empty());
        let d = validate_quiver(1, &[Arrow::new("x", 0, 0), Arrow::new("y", 0, 0), Arrow::new("x", 0, 0)]);
        assert!(d.contains(&Defect::DuplicateArrow { arrow: "x".into() }));
        assert!(d.contains(&Defect::MultipleLoops { vertex: 0 }));
    }

    #[test]
    fn anm_shapes() {
        let q = build_anm(2, 0).unwrap();
        assert_eq!(q.num_vertices(), 2);
        assert_eq!(q.num_arrows(), 2);
        assert!(!q.has_loops());
        let q = build_anm(1, 1).unwrap();
        assert_eq!((q.num_vertices(), q.num_arrows()), (1, 1));
        assert!(q.has_loop_at(0));
        assert!(build_anm(2, 3).is_err());
        assert!(build_anm(0, 0).is_err());
    }

    #[test]
    fn doubling() {
        let a2 = Quiver::new(2, vec![Arrow::new("a", 0, 1)]).unwrap();
        let d = double_quiver(&a2).unwrap();
        assert_eq!(d.arrows()[1], Arrow::new("a*", 1, 0));
        assert!(d.has_two_cycle_at(0));
        let pt = Quiver::new(1, vec![]).unwrap();
        assert_eq!(double_quiver(&pt).unwrap(), pt);
        let a3 = Quiver::new(3, vec![Arrow::new("a", 0, 1), Arrow::new("b", 1, 2)]).unwrap();
        assert_eq!(double_quiver(&a3).unwrap().num_arrows(), 4);
        let lp = Quiver::new(1, vec![Arrow::new("l", 0, 0)]).unwrap();
        assert!(double_quiver(&lp).is_err());
    }
}
