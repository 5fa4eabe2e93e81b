//! Elements of the truncated path algebra `KQ / 𝔪^{D+1}`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::coeff::{fmt_q, Q};
use crate::error::{invalid, Result};
use crate::path::Path;
use crate::quiver::{ArrowId, Quiver, Vertex};

/// A finite combination of paths of length at most `cap`.
///
/// Terms are kept in path order with no zero coefficients, so equality is
/// structural.
#[derive(Clone)]
pub struct AlgebraElement {
    quiver: Arc<Quiver>,
    cap: usize,
    terms: BTreeMap<Path, Q>,
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        self.cap == other.cap && self.terms == other.terms && same_quiver(&self.quiver, &other.quiver)
    }
}

impl Eq for AlgebraElement {}

pub(crate) fn same_quiver(a: &Arc<Quiver>, b: &Arc<Quiver>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl AlgebraElement {
    pub fn zero(quiver: Arc<Quiver>, cap: usize) -> Self {
        AlgebraElement { quiver, cap, terms: BTreeMap::new() }
    }

    /// `Σ e_i`.
    pub fn one(quiver: Arc<Quiver>, cap: usize) -> Self {
        let mut x = Self::zero(quiver.clone(), cap);
        for v in 0..quiver.num_vertices() {
            x.add_term(Path::trivial(v), Q::one());
        }
        x
    }

    pub fn from_path(quiver: Arc<Quiver>, cap: usize, path: Path, c: Q) -> Self {
        let mut x = Self::zero(quiver, cap);
        x.add_term(path, c);
        x
    }

    pub fn idempotent(quiver: Arc<Quiver>, cap: usize, v: Vertex) -> Self {
        Self::from_path(quiver, cap, Path::trivial(v), Q::one())
    }

    pub fn arrow(quiver: Arc<Quiver>, cap: usize, a: ArrowId) -> Self {
        let p = Path::arrow(&quiver, a);
        Self::from_path(quiver, cap, p, Q::one())
    }

    pub fn from_terms(quiver: Arc<Quiver>, cap: usize, terms: impl IntoIterator<Item = (Path, Q)>) -> Self {
        let mut x = Self::zero(quiver, cap);
        for (p, c) in terms {
            x.add_term(p, c);
        }
        x
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn terms(&self) -> &BTreeMap<Path, Q> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Path, Q> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, p: &Path) -> Q {
        self.terms.get(p).cloned().unwrap_or_else(Q::zero)
    }

    /// Adds `c·p`, dropping it when `p` is longer than the cap.
    pub fn add_term(&mut self, p: Path, c: Q) {
        if c.is_zero() || p.len() > self.cap {
            return;
        }
        match self.terms.entry(p) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Smallest path length present, `None` for zero.
    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().next().map(Path::len)
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Path::len)
    }

    /// Re-truncates to a smaller or larger cap.
    pub fn with_cap(&self, cap: usize) -> Self {
        let terms = self.terms.iter().filter(|(p, _)| p.len() <= cap).map(|(p, c)| (p.clone(), c.clone()));
        AlgebraElement { quiver: self.quiver.clone(), cap, terms: terms.collect() }
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(self.quiver.clone(), self.cap);
        }
        let terms = self.terms.iter().map(|(p, d)| (p.clone(), d * c)).collect();
        AlgebraElement { quiver: self.quiver.clone(), cap: self.cap, terms }
    }

    /// The part of `self` made of paths of length exactly `d`.
    pub fn homogeneous(&self, d: usize) -> Self {
        let terms = self.terms.iter().filter(|(p, _)| p.len() == d).map(|(p, c)| (p.clone(), c.clone()));
        AlgebraElement { quiver: self.quiver.clone(), cap: self.cap, terms: terms.collect() }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.cap != other.cap {
            return invalid(format!("cap mismatch: {} vs {}", self.cap, other.cap));
        }
        if !same_quiver(&self.quiver, &other.quiver) {
            return invalid("elements live over different quivers");
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut x = self.clone();
        for (p, c) in &other.terms {
            x.add_term(p.clone(), c.clone());
        }
        Ok(x)
    }

    pub fn display(&self) -> String {
        format!("{self}")
    }
}

/// The product of two elements with terms longer than the cap discarded.
///
/// ```
/// use std::sync::Arc;
/// use qpcat::{element::{nc_mul, AlgebraElement}, quiver::build_anm};
/// let q = Arc::new(build_anm(2, 0).unwrap());
/// let a = AlgebraElement::arrow(q.clone(), 3, 0);
/// let b = AlgebraElement::arrow(q.clone(), 3, 1);
/// let ab = nc_mul(&a, &b).unwrap();
/// assert_eq!(ab.to_string(), "a1*b1");
/// assert!(nc_mul(&ab, &ab).unwrap().is_zero());
/// ```
pub fn nc_mul(x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
    x.check_compatible(y)?;
    let mut out = AlgebraElement::zero(x.quiver.clone(), x.cap);
    for (p, c) in &x.terms {
        for (r, d) in &y.terms {
            if p.len() + r.len() > x.cap {
                continue;
            }
            if let Some(pr) = p.concat(r) {
                out.add_term(pr, c * d);
            }
        }
    }
    Ok(out)
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (p, c)) in self.terms.iter().enumerate() {
            let neg = c < &Q::zero();
            let abs = if neg { -c } else { c.clone() };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if abs.is_one() {
                write!(f, "{}", p.display(&self.quiver))?;
            } else {
                write!(f, "{}*{}", fmt_q(&abs), p.display(&self.quiver))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraElement[cap {}]({self})", self.cap)
    }
}

/// Panics when the operands live over different quivers or caps.
impl Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.try_add(rhs).expect("incompatible operands")
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.try_add(&-rhs).expect("incompatible operands")
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        self.scale(&-Q::one())
    }
}

/// Panics when the operands live over different quivers or caps.
impl Mul for &AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: &AlgebraElement) -> AlgebraElement {
        nc_mul(self, rhs).expect("incompatible operands")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::q;
    use crate::quiver::build_anm;

    fn setup(cap: usize) -> (Arc<Quiver>, AlgebraElement, AlgebraElement) {
        let qv = Arc::new(build_anm(2, 0).unwrap());
        let a = AlgebraElement::arrow(qv.clone(), cap, 0);
        let b = AlgebraElement::arrow(qv.clone(), cap, 1);
        (qv, a, b)
    }

    #[test]
    fn unit_and_zero_products() {
        let (qv, a, _) = setup(4);
        let e1 = AlgebraElement::idempotent(qv.clone(), 4, 0);
        assert_eq!(&e1 * &a, a);
        assert!((&a * &a).is_zero());
        let one = AlgebraElement::one(qv, 4);
        assert_eq!(&one * &a, a);
        assert_eq!(&a * &one, a);
    }

    #[test]
    fn truncation() {
        let (_, a, b) = setup(4);
        let ab = &a * &b;
        assert_eq!((&ab * &ab).len(), 1);
        let (_, a3, b3) = setup(3);
        let ab3 = &a3 * &b3;
        assert!((&ab3 * &ab3).is_zero());
    }

    #[test]
    fn mismatch_is_error() {
        let (_, a, _) = setup(4);
        let (_, a5, _) = setup(5);
        assert!(nc_mul(&a, &a5).is_err());
    }

    #[test]
    fn display_signs() {
        let (_, a, b) = setup(4);
        let x = &a.scale(&q(2)) - &b;
        assert_eq!(x.to_string(), "2*a1 - b1");
    }
}
