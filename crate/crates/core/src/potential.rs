//! Potentials: combinations of cycles up to rotation.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::One;

use crate::coeff::{q, Q};
use crate::element::{same_quiver, AlgebraElement};
use crate::error::{invalid, Result};
use crate::path::{Path, Word};
use crate::quiver::{ArrowId, Quiver};

/// The minimal rotation of a cycle in the path order.
///
/// ```
/// use qpcat::{path::Path, potential::cyclic_canonical, quiver::build_anm};
/// let q = build_anm(2, 1).unwrap();
/// let c = Path::from_names(&q, &["E1", "a1", "b1"]).unwrap();
/// assert_eq!(cyclic_canonical(&q, &c).unwrap().display(&q), "a1*b1*E1");
/// ```
pub fn cyclic_canonical(q: &Quiver, c: &Path) -> Result<Path> {
    if !c.is_cycle() {
        return invalid(format!("{} is not a cycle", c.display(q)));
    }
    Ok(canonical_unchecked(q, c))
}

pub(crate) fn canonical_unchecked(q: &Quiver, c: &Path) -> Path {
    let w = c.arrows();
    let l = w.len();
    if l <= 1 {
        return c.clone();
    }
    let mut best = 0;
    for r in 1..l {
        let better = (0..l).map(|i| w[(r + i) % l]).cmp((0..l).map(|i| w[(best + i) % l]));
        if better == std::cmp::Ordering::Less {
            best = r;
        }
    }
    c.rotate(q, best)
}

/// `∂_a(c)` for a single cycle: `Σ v·u` over each factorisation `c = u a v`.
pub fn cyclic_derivative_of_cycle(q: &Arc<Quiver>, cap: usize, a: ArrowId, c: &Path) -> Result<AlgebraElement> {
    if (a as usize) >= q.num_arrows() {
        return invalid(format!("unknown arrow index {a}"));
    }
    if !c.is_cycle() {
        return invalid(format!("{} is not a cycle", c.display(q)));
    }
    let mut out = AlgebraElement::zero(q.clone(), cap);
    let w = c.arrows();
    for (i, &x) in w.iter().enumerate() {
        if x != a {
            continue;
        }
        let mut vu = Word::new();
        vu.extend_from_slice(&w[i + 1..]);
        vu.extend_from_slice(&w[..i]);
        let p = if vu.is_empty() {
            Path::trivial(q.target(a))
        } else {
            Path::from_word_unchecked(q.target(a), q.source(a), vu)
        };
        out.add_term(p, Q::one());
    }
    Ok(out)
}

/// A potential whose terms are cycles stored in canonical rotation.
#[derive(Clone, PartialEq, Eq)]
pub struct Potential {
    elem: AlgebraElement,
}

impl Potential {
    pub fn zero(quiver: Arc<Quiver>, cap: usize) -> Self {
        Potential { elem: AlgebraElement::zero(quiver, cap) }
    }

    /// Canonicalises and merges the terms of an element made of cycles.
    pub fn new(x: &AlgebraElement) -> Result<Self> {
        let mut p = Self::zero(x.quiver().clone(), x.cap());
        for (c, k) in x.terms() {
            p.add_cycle(c, k.clone())?;
        }
        Ok(p)
    }

    pub fn from_cycles(quiver: Arc<Quiver>, cap: usize, terms: impl IntoIterator<Item = (Q, Path)>) -> Result<Self> {
        let mut p = Self::zero(quiver, cap);
        for (k, c) in terms {
            p.add_cycle(&c, k)?;
        }
        Ok(p)
    }

    pub fn add_cycle(&mut self, c: &Path, k: Q) -> Result<()> {
        let c = cyclic_canonical(self.elem.quiver(), c)?;
        self.elem.add_term(c, k);
        Ok(())
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        self.elem.quiver()
    }

    pub fn cap(&self) -> usize {
        self.elem.cap()
    }

    pub fn terms(&self) -> &BTreeMap<Path, Q> {
        self.elem.terms()
    }

    pub fn as_element(&self) -> &AlgebraElement {
        &self.elem
    }

    pub fn is_zero(&self) -> bool {
        self.elem.is_zero()
    }

    pub fn with_cap(&self, cap: usize) -> Self {
        Potential { elem: self.elem.with_cap(cap) }
    }

    pub fn try_add(&self, other: &Potential) -> Result<Potential> {
        Ok(Potential { elem: self.elem.try_add(&other.elem)? })
    }
}

impl fmt::Display for Potential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.elem.fmt(f)
    }
}

impl fmt::Debug for Potential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Potential({})", self.elem)
    }
}

/// `∂_a(W)` summed over every term and every occurrence of `a`.
///
/// ```
/// use std::sync::Arc;
/// use qpcat::{coeff::q, path::Path, potential::{cyclic_derivative, Potential}, quiver::build_anm};
/// let qv = Arc::new(build_anm(1, 1).unwrap());
/// let e3 = Path::from_names(&qv, &["E1", "E1", "E1"]).unwrap();
/// let w = Potential::from_cycles(qv.clone(), 6, [(q(1), e3)]).unwrap();
/// assert_eq!(cyclic_derivative(0, &w).unwrap().to_string(), "3*E1*E1");
/// ```
pub fn cyclic_derivative(a: ArrowId, w: &Potential) -> Result<AlgebraElement> {
    let q = w.quiver();
    let mut out = AlgebraElement::zero(q.clone(), w.cap());
    for (c, k) in w.terms() {
        let d = cyclic_derivative_of_cycle(q, w.cap(), a, c)?;
        out = out.try_add(&d.scale(k))?;
    }
    if (a as usize) >= q.num_arrows() {
        return invalid(format!("unknown arrow index {a}"));
    }
    Ok(out)
}

/// A quiver together with a potential truncated at the potential's cap.
#[derive(Clone, PartialEq, Eq)]
pub struct QuiverWithPotential {
    pub quiver: Arc<Quiver>,
    pub potential: Potential,
}

impl QuiverWithPotential {
    pub fn new(quiver: Arc<Quiver>, potential: Potential) -> Result<Self> {
        if !same_quiver(&quiver, potential.quiver()) {
            return invalid("potential lives over a different quiver");
        }
        Ok(QuiverWithPotential { quiver, potential })
    }

    pub fn with_zero(quiver: Quiver, cap: usize) -> Self {
        let quiver = Arc::new(quiver);
        QuiverWithPotential { potential: Potential::zero(quiver.clone(), cap), quiver }
    }

    pub fn cap(&self) -> usize {
        self.potential.cap()
    }

    pub fn with_cap(&self, cap: usize) -> Self {
        QuiverWithPotential { quiver: self.quiver.clone(), potential: self.potential.with_cap(cap) }
    }
}

impl fmt::Debug for QuiverWithPotential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::text::emit_qp(self))
    }
}

/// Checks `Σ_a a·∂_a(c) ≡ len(c)·c` up to rotation.
pub fn euler_identity_holds(qv: &Arc<Quiver>, c: &Path) -> Result<bool> {
    if c.is_trivial() {
        return invalid("the Euler identity needs a nontrivial cycle");
    }
    let cap = c.len();
    let mut lhs = Potential::zero(qv.clone(), cap);
    for a in 0..qv.num_arrows() as ArrowId {
        let d = cyclic_derivative_of_cycle(qv, cap, a, c)?;
        let prod = &AlgebraElement::arrow(qv.clone(), cap, a) * &d;
        for (p, k) in prod.terms() {
            lhs.add_cycle(p, k.clone())?;
        }
    }
    let mut rhs = Potential::zero(qv.clone(), cap);
    rhs.add_cycle(c, q(c.len() as i64))?;
    Ok(lhs == rhs)
}
