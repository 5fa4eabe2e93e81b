//! Jacobian algebras `KQ / ⟨∂_a W⟩` truncated at a degree cap, with a
//! certificate of finite dimension when the truncation already captures the
//! whole algebra.
//!
//! A model at cap `D` is [`Certificate::Finite`] when no path of some length
//! `d₀` survives reduction and `d₀ + maxdeg ≤ D`, where `maxdeg` is the largest
//! degree occurring in a generator. Then every path of length `d₀` lies in the
//! ideal plus `𝔪^{D+1}`, hence in the closed ideal, and the surviving paths of
//! length `< d₀` form a basis.

mod engine;
mod trie;
pub mod relations;

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;

use crate::coeff::Q;
use crate::element::{same_quiver, AlgebraElement};
use crate::error::{invalid, Error, Result};
use crate::path::{Path, Word};
use crate::potential::{cyclic_derivative, QuiverWithPotential};
use crate::quiver::{ArrowId, Quiver};

use engine::{Engine, Poly};

pub use relations::{verify_lemma_relations, verify_zero_relations, CheckStatus, RelationCheck, RelationReport};

/// `∂_a W` for every arrow `a`, in arrow order.
///
/// ```
/// use qpcat::{families::{build_wnm, FamilyParams}, jacobian::ideal_generators};
/// let qp = build_wnm(&FamilyParams::from_ints(2, 2, &[2, 1], &[1]).unwrap(), 12).unwrap();
/// let gens = ideal_generators(&qp);
/// assert_eq!(gens[2].to_string(), "3*a1*b1 + 6*E1*E1");
/// ```
pub fn ideal_generators(qp: &QuiverWithPotential) -> Vec<AlgebraElement> {
    (0..qp.quiver.num_arrows() as ArrowId)
        .map(|a| cyclic_derivative(a, &qp.potential).expect("arrow of the quiver"))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum Certificate {
    Finite { dim: usize, d0: usize },
    Undetermined { cap: usize },
}

impl Certificate {
    pub fn is_finite(&self) -> bool {
        matches!(self, Certificate::Finite { .. })
    }
}

/// Options for [`truncated_model_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModelOptions {
    /// First cap tried.
    pub cap: usize,
    /// Largest cap tried; the cap grows by 4 until it passes this.
    pub ceiling: usize,
    /// Record how every basis element was produced from the generators.
    pub trace: bool,
    /// Give up enumerating surviving paths past this many.
    pub max_paths: usize,
}

impl ModelOptions {
    pub fn at(cap: usize) -> Self {
        ModelOptions { cap, ceiling: cap, trace: false, max_paths: 2_000_000 }
    }

    pub fn escalating(cap: usize, ceiling: usize) -> Self {
        ModelOptions { cap, ceiling: ceiling.max(cap), trace: false, max_paths: 2_000_000 }
    }
}

/// The truncated Jacobian algebra at one cap.
#[derive(Debug, Clone)]
pub struct JacobianModel {
    qp: QuiverWithPotential,
    cap: usize,
    generators: Vec<AlgebraElement>,
    engine: Engine,
    basis: Vec<Path>,
    basis_index: HashMap<Path, usize>,
    certificate: Certificate,
    max_generator_degree: usize,
    stop: Option<usize>,
    inner: usize,
}

/// Builds the model at the QP's own cap.
pub fn truncated_model(qp: &QuiverWithPotential) -> Result<JacobianModel> {
    truncated_model_with(qp, ModelOptions::at(qp.cap()))
}

/// Builds models at `cap, cap + 4, …` until one is finite or the ceiling is passed.
///
/// Caps that cannot fit the observed `d₀ + maxdeg` are skipped.
pub fn truncated_model_with(qp: &QuiverWithPotential, opts: ModelOptions) -> Result<JacobianModel> {
    let mut cap = opts.cap;
    let mut start = 0;
    loop {
        let model = JacobianModel::build(qp, cap, opts.trace, opts.max_paths, start)?;
        start = model.inner;
        if model.certificate.is_finite() || cap + 4 > opts.ceiling {
            return Ok(model);
        }
        let need = model.stop.map_or(0, |d0| d0 + model.max_generator_degree);
        cap += 4;
        while cap < need && cap + 4 <= opts.ceiling {
            cap += 4;
        }
    }
}

impl JacobianModel {
    /// `start` is a truncation known not to certify, used to skip ahead.
    fn build(qp: &QuiverWithPotential, cap: usize, trace: bool, max_paths: usize, start: usize) -> Result<Self> {
        let qp_cap = QuiverWithPotential::new(qp.quiver.clone(), qp.potential.clone())?;
        let quiver = qp.quiver.clone();
        let generators: Vec<AlgebraElement> = (0..quiver.num_arrows() as ArrowId)
            .map(|a| cyclic_derivative(a, &qp.potential.with_cap(qp.cap().max(cap + 1))).map(|g| g.with_cap(cap)))
            .collect::<Result<_>>()?;
        let max_generator_degree = generators.iter().filter_map(AlgebraElement::max_degree).max().unwrap_or(0);
        if cap < 2 * max_generator_degree {
            return invalid(format!(
                "cap {cap} is below twice the largest generator degree {max_generator_degree}"
            ));
        }
        let polys: Vec<Poly> = generators.iter().map(|g| g.terms().clone()).collect();
        let mut inner = (2 * max_generator_degree).max(start).min(cap);
        let (engine, basis, stop) = if trace {
            inner = cap;
            let engine = Engine::new(quiver.clone(), cap, &polys, true);
            let (basis, stop) = surviving_paths(&engine, max_paths);
            (engine, basis, stop)
        } else {
            // Modulo 𝔪^{L+1}, an empty level L already gives 𝔪^L ⊆ I + 𝔪^{L+1},
            // so the ideal agrees with I + 𝔪^{D+1} and nothing beyond L is needed.
            loop {
                let truncated: Vec<Poly> = polys
                    .iter()
                    .map(|g| g.iter().filter(|(p, _)| p.len() <= inner).map(|(p, c)| (p.clone(), c.clone())).collect())
                    .collect();
                let engine = Engine::new(quiver.clone(), inner, &truncated, false);
                let (basis, stop) = surviving_paths(&engine, max_paths);
                if inner == cap || stop.is_some() {
                    break (engine, basis, stop);
                }
                inner = (inner + 2).min(cap);
            }
        };
        let certificate = match stop {
            Some(d0) if d0 + max_generator_degree <= cap => Certificate::Finite { dim: basis.len(), d0 },
            _ => Certificate::Undetermined { cap },
        };
        let basis_index = basis.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        Ok(JacobianModel {
            qp: qp_cap,
            cap,
            generators,
            engine,
            basis,
            basis_index,
            certificate,
            max_generator_degree,
            stop,
            inner,
        })
    }

    pub fn qp(&self) -> &QuiverWithPotential {
        &self.qp
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.qp.quiver
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn certificate(&self) -> Certificate {
        self.certificate
    }

    pub fn is_finite(&self) -> bool {
        self.certificate.is_finite()
    }

    /// Surviving paths of length `< d₀` for a finite model, or all surviving
    /// paths of length `≤ D` otherwise, in path order.
    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn dim(&self) -> Option<usize> {
        match self.certificate {
            Certificate::Finite { dim, .. } => Some(dim),
            Certificate::Undetermined { .. } => None,
        }
    }

    pub fn basis_position(&self, p: &Path) -> Option<usize> {
        self.basis_index.get(p).copied()
    }

    pub fn generators(&self) -> &[AlgebraElement] {
        &self.generators
    }

    pub fn max_generator_degree(&self) -> usize {
        self.max_generator_degree
    }

    /// Leading paths of the standard basis.
    pub fn leading_paths(&self) -> Vec<Path> {
        let mut v: Vec<Path> = self.engine.leading_words().cloned().collect();
        v.sort();
        v
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement::zero(self.qp.quiver.clone(), self.cap)
    }

    pub fn element(&self, p: &Path) -> AlgebraElement {
        AlgebraElement::from_path(self.qp.quiver.clone(), self.cap, p.clone(), Q::from_integer(1.into()))
    }

    fn check(&self, x: &AlgebraElement) -> Result<()> {
        if !same_quiver(x.quiver(), &self.qp.quiver) {
            return invalid("element lives over a different quiver");
        }
        Ok(())
    }

    /// The normal form; linear, idempotent and zero exactly on the truncated ideal.
    pub fn normal_form(&self, x: &AlgebraElement) -> Result<AlgebraElement> {
        self.check(x)?;
        let (f, _) = self.engine.reduce(x.with_cap(self.cap).into_terms(), None);
        Ok(AlgebraElement::from_terms(self.qp.quiver.clone(), self.cap, f))
    }

    /// Normal form of a single path as basis coordinates.
    pub fn path_coordinates(&self, p: &Path) -> Vec<(usize, Q)> {
        let mut f = Poly::new();
        if p.len() <= self.cap {
            f.insert(p.clone(), Q::from_integer(1.into()));
        }
        let (f, _) = self.engine.reduce(f, None);
        f.into_iter()
            .map(|(w, c)| (self.basis_index.get(&w).copied().expect("normal forms live on the basis"), c))
            .collect()
    }

    /// Coordinates of an element's normal form in the basis.
    pub fn coordinates(&self, x: &AlgebraElement) -> Result<Vec<Q>> {
        let nf = self.normal_form(x)?;
        let mut v = vec![Q::zero(); self.basis.len()];
        for (p, c) in nf.terms() {
            match self.basis_index.get(p) {
                Some(&i) => v[i] = c.clone(),
                None => return Err(Error::Undetermined(format!("{} has no basis coordinate", p.display(self.quiver())))),
            }
        }
        Ok(v)
    }

    /// Normal form of `x·y` for basis paths.
    pub fn multiply_basis(&self, i: usize, j: usize) -> Vec<(usize, Q)> {
        match self.basis[i].concat(&self.basis[j]) {
            Some(p) => self.path_coordinates(&p),
            None => Vec::new(),
        }
    }

    /// An explicit expression `x = Σ c·u ∂_a W v` modulo paths longer than the
    /// cap, when `x` reduces to zero; needs a model built with tracing.
    pub fn zero_certificate(&self, x: &AlgebraElement) -> Result<Option<ZeroCertificate>> {
        self.check(x)?;
        if !self.engine.elems.iter().all(|e| e.trace.is_some()) {
            return invalid("the model was built without tracing");
        }
        let (f, t) = self.engine.reduce(x.with_cap(self.cap).into_terms(), Some(Default::default()));
        if !f.is_empty() {
            return Ok(None);
        }
        let mut terms: Vec<CertificateTerm> = t
            .unwrap_or_default()
            .into_iter()
            .map(|((left, generator, right), coeff)| CertificateTerm { coeff: -coeff, left, generator, right })
            .collect();
        terms.sort_by(|a, b| (&a.left, a.generator, &a.right).cmp(&(&b.left, b.generator, &b.right)));
        Ok(Some(ZeroCertificate { terms }))
    }

    /// Re-expands a certificate to an element at the model's cap.
    pub fn expand_certificate(&self, cert: &ZeroCertificate) -> AlgebraElement {
        let mut out = self.zero();
        for t in &cert.terms {
            let u = self.element(&t.left);
            let v = self.element(&t.right);
            let term = &(&u * &self.generators[t.generator]) * &v;
            out = &out + &term.scale(&t.coeff);
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateTerm {
    pub coeff: Q,
    pub left: Path,
    pub generator: usize,
    pub right: Path,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroCertificate {
    pub terms: Vec<CertificateTerm>,
}

/// Level-by-level enumeration of paths with no leading word; returns the paths
/// and the first empty level, if one occurs within the cap.
fn surviving_paths(engine: &Engine, max_paths: usize) -> (Vec<Path>, Option<usize>) {
    let q = &engine.quiver;
    let mut level: Vec<Path> = (0..q.num_vertices()).filter(|&v| !engine.is_dead(v)).map(Path::trivial).collect();
    let mut all = Vec::new();
    let mut d = 0;
    loop {
        if level.is_empty() {
            all.sort();
            return (all, Some(d));
        }
        all.extend(level.iter().cloned());
        if d == engine.cap || all.len() > max_paths {
            all.sort();
            return (all, None);
        }
        let mut next = Vec::new();
        for p in &level {
            for &a in q.outgoing(p.target()) {
                let mut w: Word = p.arrows().into();
                w.push(a);
                let np = Path::from_word_unchecked(p.source(), q.target(a), w);
                if !engine.has_divisor_suffix(&np) {
                    next.push(np);
                }
            }
        }
        level = next;
        d += 1;
    }
}

/// Longest basis path of a finite model.
pub fn max_basis_length(model: &JacobianModel) -> Result<usize> {
    if !model.is_finite() {
        return Err(Error::Undetermined(format!("no certificate at cap {}", model.cap())));
    }
    Ok(model.basis().iter().map(Path::len).max().unwrap_or(0))
}
