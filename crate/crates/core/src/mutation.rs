//! Premutation, splitting off the trivial part, and mutation of quivers with potentials.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::coeff::Q;
use crate::element::AlgebraElement;
use crate::error::{invalid, Error, Result};
use crate::jacobian::{truncated_model_with, ModelOptions};
use crate::path::{Path, Word};
use crate::potential::{Potential, QuiverWithPotential};
use crate::quiver::{Arrow, ArrowId, Quiver, Vertex};

/// `true` when `k` carries no loop and lies on no 2-cycle.
pub fn is_mutable(qp: &QuiverWithPotential, k: Vertex) -> Result<bool> {
    let q = &qp.quiver;
    if k >= q.num_vertices() {
        return invalid(format!("unknown vertex index {k}"));
    }
    Ok(!q.has_loop_at(k) && !q.has_two_cycle_at(k))
}

fn require_mutable(qp: &QuiverWithPotential, k: Vertex) -> Result<()> {
    if is_mutable(qp, k)? {
        Ok(())
    } else {
        Err(Error::NotMutable(format!("vertex {} has a loop or a 2-cycle", qp.quiver.label(k))))
    }
}

/// The premutation at `k`.
///
/// Arrows away from `k` are kept, arrows at `k` are reversed and renamed `x*`,
/// and each composable pair `a b` through `k` gets a new arrow `[ab]`. The
/// potential is `[W] + Σ a* b* [ba]` over `s(a) = k = t(b)`, where `[W]`
/// replaces every factor `a b` through `k` by `[ab]`.
///
/// ```
/// use std::sync::Arc;
/// use qpcat::{mutation::premutate, potential::QuiverWithPotential, quiver::{Arrow, Quiver}};
/// let q = Quiver::new(3, vec![Arrow::new("a", 0, 1), Arrow::new("b", 1, 2)]).unwrap();
/// let mu = premutate(&QuiverWithPotential::with_zero(q, 6), 1).unwrap();
/// let names: Vec<_> = mu.quiver.arrows().iter().map(|a| a.name.as_str()).collect();
/// assert_eq!(names, ["a*", "b*", "[ab]"]);
/// let (cycle, _) = mu.potential.terms().iter().next().unwrap();
/// assert_eq!(cycle.names(&mu.quiver), ["a*", "[ab]", "b*"]);
/// ```
pub fn premutate(qp: &QuiverWithPotential, k: Vertex) -> Result<QuiverWithPotential> {
    require_mutable(qp, k)?;
    let q = &qp.quiver;
    let cap = qp.cap();
    let mut arrows = Vec::new();
    let mut kept = vec![None; q.num_arrows()];
    let mut star = vec![None; q.num_arrows()];
    for (i, a) in q.arrows().iter().enumerate() {
        if a.source != k && a.target != k {
            kept[i] = Some(arrows.len() as ArrowId);
            arrows.push(a.clone());
        }
    }
    for (i, a) in q.arrows().iter().enumerate() {
        if a.source == k || a.target == k {
            star[i] = Some(arrows.len() as ArrowId);
            arrows.push(Arrow::new(format!("{}*", a.name), a.target, a.source));
        }
    }
    let mut composite = BTreeMap::new();
    for &a in q.incoming(k) {
        for &b in q.outgoing(k) {
            composite.insert((a, b), arrows.len() as ArrowId);
            let (x, y) = (q.arrow(a), q.arrow(b));
            arrows.push(Arrow::new(format!("[{}{}]", x.name, y.name), x.source, y.target));
        }
    }
    let nq = Arc::new(Quiver::with_labels(q.labels().to_vec(), arrows)?);
    let mut w = Potential::zero(nq.clone(), cap);
    for (c, coeff) in qp.potential.terms() {
        let r = c.arrows().iter().position(|&a| q.source(a) != k).unwrap_or(0);
        let c = c.rotate(q, r);
        let word = c.arrows();
        let mut out = Word::new();
        let mut i = 0;
        while i < word.len() {
            let a = word[i];
            if q.target(a) == k {
                out.push(composite[&(a, word[i + 1])]);
                i += 2;
            } else {
                out.push(kept[a as usize].expect("arrow away from k"));
                i += 1;
            }
        }
        w.add_cycle(&Path::from_arrows(&nq, &out)?, coeff.clone())?;
    }
    for &a in q.outgoing(k) {
        for &b in q.incoming(k) {
            let word = [star[a as usize].unwrap(), star[b as usize].unwrap(), composite[&(b, a)]];
            if word.len() <= cap {
                w.add_cycle(&Path::from_arrows(&nq, &word)?, Q::one())?;
            }
        }
    }
    QuiverWithPotential::new(nq, w)
}

/// An algebra endomorphism fixing the idempotents, given by arrow images.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraMap {
    pub images: Vec<AlgebraElement>,
}

impl AlgebraMap {
    pub fn identity(q: &Arc<Quiver>, cap: usize) -> Self {
        AlgebraMap { images: (0..q.num_arrows() as ArrowId).map(|a| AlgebraElement::arrow(q.clone(), cap, a)).collect() }
    }

    /// The image of an element: each arrow replaced by its image, truncated at the cap.
    pub fn apply(&self, x: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero(x.quiver().clone(), x.cap());
        for (p, c) in x.terms() {
            let mut img = AlgebraElement::from_path(x.quiver().clone(), x.cap(), Path::trivial(p.source()), c.clone());
            for &a in p.arrows() {
                img = &img * &self.images[a as usize];
                if img.is_zero() {
                    break;
                }
            }
            out = &out + &img;
        }
        out
    }

    pub fn apply_potential(&self, w: &Potential) -> Result<Potential> {
        Potential::new(&self.apply(w.as_element()))
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &AlgebraMap) -> AlgebraMap {
        AlgebraMap { images: first.images.iter().map(|x| self.apply(x)).collect() }
    }

    /// Each arrow's image has coefficient one on the arrow itself.
    pub fn is_unitriangular(&self) -> bool {
        self.images.iter().enumerate().all(|(a, x)| {
            let q = x.quiver();
            x.coeff(&Path::arrow(q, a as ArrowId)).is_one()
                && x.terms().keys().all(|p| p.len() >= 1 && p.source() == q.source(a as ArrowId) && p.target() == q.target(a as ArrowId))
        })
    }

    /// Arrow images as `name -> element` strings, for reports.
    pub fn describe(&self) -> Vec<(String, String)> {
        self.images
            .iter()
            .enumerate()
            .filter(|(a, x)| **x != AlgebraElement::arrow(x.quiver().clone(), x.cap(), *a as ArrowId))
            .map(|(a, x)| (x.quiver().arrow(a as ArrowId).name.clone(), x.to_string()))
            .collect()
    }
}

/// The trivial and reduced parts of a QP and the right equivalence relating them.
#[derive(Debug, Clone)]
pub struct SplitResult {
    pub trivial: QuiverWithPotential,
    pub reduced: QuiverWithPotential,
    /// A unitriangular map `φ` on the input quiver with `φ(W) = W_triv + W_red` modulo the cap.
    pub substitution: AlgebraMap,
    /// Pairs of input arrows forming the trivial part.
    pub pairs: Vec<(ArrowId, ArrowId)>,
}

/// Splits a QP into trivial and reduced parts.
///
/// The quadratic part is first brought to a sum of disjoint 2-cycles by
/// substitutions `x ↦ x - λy`; then, degree by degree, each paired arrow
/// absorbs the terms through its partner, which pushes them to higher degree.
///
/// ```
/// use std::sync::Arc;
/// use qpcat::{coeff::q, mutation::split_trivial_reduced, path::Path, potential::{Potential, QuiverWithPotential}, quiver::{Arrow, Quiver}};
/// let qv = Arc::new(Quiver::new(2, vec![Arrow::new("a", 0, 1), Arrow::new("b", 1, 0)]).unwrap());
/// let ab = Path::from_names(&qv, &["a", "b"]).unwrap();
/// let qp = QuiverWithPotential::new(qv.clone(), Potential::from_cycles(qv, 6, [(q(1), ab)]).unwrap()).unwrap();
/// let s = split_trivial_reduced(&qp).unwrap();
/// assert_eq!(s.trivial.quiver.num_arrows(), 2);
/// assert_eq!(s.reduced.quiver.num_arrows(), 0);
/// ```
pub fn split_trivial_reduced(qp: &QuiverWithPotential) -> Result<SplitResult> {
    let q = qp.quiver.clone();
    let cap = qp.cap();
    let mut w = qp.potential.clone();
    let mut phi = AlgebraMap::identity(&q, cap);
    if let Some((c, _)) = w.terms().iter().find(|(c, _)| c.len() == 1) {
        return Err(Error::DegeneratePairing(format!("degree-one term {}", c.display(&q))));
    }
    let mut pairs: Vec<(ArrowId, ArrowId, Q)> = Vec::new();
    let mut blocks: BTreeSet<(Vertex, Vertex)> = BTreeSet::new();
    for c in w.terms().keys().filter(|c| c.len() == 2) {
        let a = c.arrows()[0];
        if q.source(a) == q.target(a) {
            return Err(Error::DegeneratePairing(format!("quadratic loop term {}", c.display(&q))));
        }
        let (i, j) = (q.source(a), q.target(a));
        blocks.insert((i.min(j), i.max(j)));
    }
    for (i, j) in blocks {
        let rows: Vec<ArrowId> = q.outgoing(i).iter().copied().filter(|&a| q.target(a) == j).collect();
        let cols: Vec<ArrowId> = q.outgoing(j).iter().copied().filter(|&b| q.target(b) == i).collect();
        loop {
            let coef = |w: &Potential, a: ArrowId, b: ArrowId| -> Q {
                let p = crate::potential::cyclic_canonical(&q, &Path::from_arrows(&q, &[a, b]).unwrap()).unwrap();
                w.terms().get(&p).cloned().unwrap_or_else(Q::zero)
            };
            let used = |x: ArrowId| pairs.iter().any(|&(a, b, _)| a == x || b == x);
            let pivot = rows
                .iter()
                .filter(|&&a| !used(a))
                .flat_map(|&a| cols.iter().filter(|&&b| !used(b)).map(move |&b| (a, b)))
                .find(|&(a, b)| !coef(&w, a, b).is_zero());
            let Some((a, b)) = pivot else { break };
            let c = coef(&w, a, b);
            let mut step = AlgebraMap::identity(&q, cap);
            for &b2 in cols.iter().filter(|&&x| x != b) {
                let l = coef(&w, a, b2);
                if !l.is_zero() {
                    let t = AlgebraElement::arrow(q.clone(), cap, b2).scale(&(&l / &c));
                    step.images[b as usize] = &step.images[b as usize] - &t;
                }
            }
            w = step.apply_potential(&w)?;
            phi = step.after(&phi);
            let mut step = AlgebraMap::identity(&q, cap);
            for &a2 in rows.iter().filter(|&&x| x != a) {
                let l = coef(&w, a2, b);
                if !l.is_zero() {
                    let t = AlgebraElement::arrow(q.clone(), cap, a2).scale(&(&l / &c));
                    step.images[a as usize] = &step.images[a as usize] - &t;
                }
            }
            w = step.apply_potential(&w)?;
            phi = step.after(&phi);
            pairs.push((a, b, c));
        }
    }
    if let Some((c, _)) = w.terms().iter().find(|(c, _)| {
        c.len() == 2 && !pairs.iter().any(|&(a, b, _)| c.arrows().contains(&a) && c.arrows().contains(&b))
    }) {
        return Err(Error::DegeneratePairing(format!("left-over quadratic term {}", c.display(&q))));
    }
    let mut partner: BTreeMap<ArrowId, (ArrowId, Q)> = BTreeMap::new();
    for (a, b, c) in &pairs {
        partner.insert(*a, (*b, c.clone()));
        partner.insert(*b, (*a, c.clone()));
    }
    for d in 3..=cap {
        let mut u: BTreeMap<ArrowId, AlgebraElement> = BTreeMap::new();
        for (c, k) in w.terms().iter().filter(|(c, _)| c.len() == d) {
            if let Some(r) = c.arrows().iter().position(|a| partner.contains_key(a)) {
                let rot = c.rotate(&q, r);
                let x = rot.arrows()[0];
                let rest = rot.slice(&q, 1, d);
                let e = u.entry(x).or_insert_with(|| AlgebraElement::zero(q.clone(), cap));
                e.add_term(rest, k.clone());
            }
        }
        if u.is_empty() {
            continue;
        }
        let mut step = AlgebraMap::identity(&q, cap);
        for (x, ux) in &u {
            let (y, c) = &partner[x];
            step.images[*y as usize] = &step.images[*y as usize] - &ux.scale(&(Q::one() / c));
        }
        w = step.apply_potential(&w)?;
        phi = step.after(&phi);
    }
    let paired: BTreeSet<ArrowId> = partner.keys().copied().collect();
    let (tq, tmap) = restrict(&q, |a| paired.contains(&a))?;
    let (rq, rmap) = restrict(&q, |a| !paired.contains(&a))?;
    let mut wt = Potential::zero(tq.clone(), cap);
    let mut wr = Potential::zero(rq.clone(), cap);
    for (c, k) in w.terms() {
        if c.arrows().iter().all(|a| paired.contains(a)) && c.len() == 2 {
            wt.add_cycle(&map_path(&tq, &tmap, c)?, k.clone())?;
        } else if c.arrows().iter().all(|a| !paired.contains(a)) {
            wr.add_cycle(&map_path(&rq, &rmap, c)?, k.clone())?;
        } else {
            return Err(Error::InternalConsistency(format!("term {} still meets the trivial part", c.display(&q))));
        }
    }
    Ok(SplitResult {
        trivial: QuiverWithPotential::new(tq, wt)?,
        reduced: QuiverWithPotential::new(rq, wr)?,
        substitution: phi,
        pairs: pairs.into_iter().map(|(a, b, _)| (a, b)).collect(),
    })
}

fn restrict(q: &Quiver, keep: impl Fn(ArrowId) -> bool) -> Result<(Arc<Quiver>, Vec<Option<ArrowId>>)> {
    let mut map = vec![None; q.num_arrows()];
    let mut arrows = Vec::new();
    for a in 0..q.num_arrows() as ArrowId {
        if keep(a) {
            map[a as usize] = Some(arrows.len() as ArrowId);
            arrows.push(q.arrow(a).clone());
        }
    }
    Ok((Arc::new(Quiver::with_labels(q.labels().to_vec(), arrows)?), map))
}

fn map_path(q: &Quiver, map: &[Option<ArrowId>], p: &Path) -> Result<Path> {
    if p.is_trivial() {
        return Ok(p.clone());
    }
    let w: Vec<ArrowId> = p.arrows().iter().map(|&a| map[a as usize].expect("arrow kept")).collect();
    Path::from_arrows(q, &w)
}

/// The reduced part of the premutation at `k`.
pub fn mutate(qp: &QuiverWithPotential, k: Vertex) -> Result<QuiverWithPotential> {
    Ok(split_trivial_reduced(&premutate(qp, k)?)?.reduced)
}

/// Mutates at each vertex of `seq` in turn.
pub fn mutate_sequence(qp: &QuiverWithPotential, seq: &[Vertex]) -> Result<QuiverWithPotential> {
    seq.iter().try_fold(qp.clone(), |acc, &k| mutate(&acc, k))
}

/// `(Q', W') ⊕ (Q'', W'')` on a common vertex set.
pub fn direct_sum(x: &QuiverWithPotential, y: &QuiverWithPotential) -> Result<QuiverWithPotential> {
    if x.quiver.labels() != y.quiver.labels() {
        return invalid("direct sums need identical vertex sets");
    }
    let cap = x.cap().max(y.cap());
    let mut arrows = x.quiver.arrows().to_vec();
    arrows.extend(y.quiver.arrows().iter().cloned());
    let q = Arc::new(Quiver::with_labels(x.quiver.labels().to_vec(), arrows)?);
    if q.arrows().iter().map(|a| &a.name).collect::<BTreeSet<_>>().len() != q.num_arrows() {
        return invalid("the summands share an arrow name");
    }
    let shift = x.quiver.num_arrows() as ArrowId;
    let mut w = Potential::zero(q.clone(), cap);
    for (c, k) in x.potential.terms() {
        w.add_cycle(&Path::from_arrows(&q, c.arrows())?, k.clone())?;
    }
    for (c, k) in y.potential.terms() {
        let word: Vec<ArrowId> = c.arrows().iter().map(|&a| a + shift).collect();
        w.add_cycle(&Path::from_arrows(&q, &word)?, k.clone())?;
    }
    QuiverWithPotential::new(q, w)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum InvolutionStatus {
    Pass,
    Fail,
    /// The quivers agree but no arrow bijection matched the potentials.
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct InvolutionReport {
    pub vertex: String,
    pub status: InvolutionStatus,
    /// `(original arrow, arrow of μ_k²)` when a matching bijection was found.
    pub bijection: Vec<(String, String)>,
    pub twice_mutated: String,
    pub detail: String,
}

const MAX_BIJECTIONS: usize = 3_628_800;

/// Finds an arrow bijection fixing vertices under which the potentials agree at `cap`.
pub fn find_isomorphism(x: &QuiverWithPotential, y: &QuiverWithPotential, cap: usize) -> std::result::Result<Option<Vec<ArrowId>>, String> {
    let (qx, qy) = (&x.quiver, &y.quiver);
    if qx.num_vertices() != qy.num_vertices() || qx.num_arrows() != qy.num_arrows() {
        return Ok(None);
    }
    let mut classes: BTreeMap<(Vertex, Vertex), (Vec<ArrowId>, Vec<ArrowId>)> = BTreeMap::new();
    for a in 0..qx.num_arrows() as ArrowId {
        classes.entry((qx.source(a), qx.target(a))).or_default().0.push(a);
    }
    for b in 0..qy.num_arrows() as ArrowId {
        classes.entry((qy.source(b), qy.target(b))).or_default().1.push(b);
    }
    if classes.values().any(|(u, v)| u.len() != v.len()) {
        return Ok(None);
    }
    let total = classes.values().try_fold(1usize, |acc, (u, _)| (1..=u.len()).try_fold(acc, |a, i| a.checked_mul(i)));
    if total.map_or(true, |t| t > MAX_BIJECTIONS) {
        return Err(format!("more than {MAX_BIJECTIONS} candidate bijections"));
    }
    let target: BTreeMap<Path, Q> = y.potential.with_cap(cap).terms().clone();
    let groups: Vec<(Vec<ArrowId>, Vec<ArrowId>)> = classes.into_values().collect();
    let mut perms: Vec<Vec<usize>> = groups.iter().map(|(u, _)| (0..u.len()).collect()).collect();
    let mut map = vec![0 as ArrowId; qx.num_arrows()];
    loop {
        for ((u, v), p) in groups.iter().zip(&perms) {
            for (i, &a) in u.iter().enumerate() {
                map[a as usize] = v[p[i]];
            }
        }
        let mut w = Potential::zero(qy.clone(), cap);
        let mut ok = true;
        for (c, k) in x.potential.with_cap(cap).terms() {
            let word: Vec<ArrowId> = c.arrows().iter().map(|&a| map[a as usize]).collect();
            match Path::from_arrows(qy, &word) {
                Ok(p) => w.add_cycle(&p, k.clone()).map_err(|e| e.to_string())?,
                Err(_) => ok = false,
            }
        }
        if ok && *w.terms() == target {
            return Ok(Some(map));
        }
        let mut advanced = false;
        for p in perms.iter_mut() {
            if next_permutation(p) {
                advanced = true;
                break;
            }
            p.sort();
        }
        if !advanced {
            return Ok(None);
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else { return false };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("a larger element exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Compares `μ_k²(Q, W)` with `(Q, W)` up to an arrow bijection fixing the vertices.
pub fn check_involution(qp: &QuiverWithPotential, k: Vertex, cap: usize) -> Result<InvolutionReport> {
    let twice = mutate(&mutate(qp, k)?, k)?;
    let vertex = qp.quiver.label(k).to_string();
    let twice_mutated = crate::text::emit_qp(&twice);
    let (status, bijection, detail) = match find_isomorphism(qp, &twice, cap) {
        Ok(Some(map)) => {
            let pairs = map
                .iter()
                .enumerate()
                .map(|(a, &b)| (qp.quiver.arrow(a as ArrowId).name.clone(), twice.quiver.arrow(b).name.clone()))
                .collect();
            (InvolutionStatus::Pass, pairs, "isomorphic".to_string())
        }
        Ok(None) if same_shape(&qp.quiver, &twice.quiver) => {
            (InvolutionStatus::Inconclusive, Vec::new(), "quivers agree; potentials matched by no arrow bijection".into())
        }
        Ok(None) => (InvolutionStatus::Fail, Vec::new(), "quivers differ".into()),
        Err(e) => (InvolutionStatus::Inconclusive, Vec::new(), e),
    };
    Ok(InvolutionReport { vertex, status, bijection, twice_mutated, detail })
}

fn same_shape(x: &Quiver, y: &Quiver) -> bool {
    let count = |q: &Quiver| {
        let mut m: BTreeMap<(Vertex, Vertex), usize> = BTreeMap::new();
        for a in q.arrows() {
            *m.entry((a.source, a.target)).or_default() += 1;
        }
        m
    };
    x.num_vertices() == y.num_vertices() && count(x) == count(y)
}

/// Finiteness certificates of a QP and its premutation at `k`, each at `cap` escalating to `ceiling`.
pub fn finiteness_transfer(qp: &QuiverWithPotential, k: Vertex, cap: usize, ceiling: usize) -> Result<(bool, bool)> {
    let opts = ModelOptions::escalating(cap, ceiling);
    let before = truncated_model_with(&qp.with_cap(cap), opts)?.is_finite();
    let after = truncated_model_with(&premutate(qp, k)?.with_cap(cap), opts)?.is_finite();
    Ok((before, after))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::q;
    use crate::jacobian::truncated_model;

    fn linear(n: usize, cap: usize) -> QuiverWithPotential {
        let arrows = (0..n - 1).map(|i| Arrow::new(format!("x{}", i + 1), i, i + 1)).collect();
        QuiverWithPotential::with_zero(Quiver::new(n, arrows).unwrap(), cap)
    }

    fn triangle(cap: usize) -> QuiverWithPotential {
        let qv = Arc::new(Quiver::new(3, vec![Arrow::new("a", 0, 1), Arrow::new("b", 1, 2), Arrow::new("c", 2, 0)]).unwrap());
        let abc = Path::from_names(&qv, &["a", "b", "c"]).unwrap();
        QuiverWithPotential::new(qv.clone(), Potential::from_cycles(qv, cap, [(q(1), abc)]).unwrap()).unwrap()
    }

    #[test]
    fn mutability() {
        let qp = crate::families::build_wnm(&crate::families::FamilyParams::from_ints(2, 0, &[], &[1]).unwrap(), 6).unwrap();
        assert!(!is_mutable(&qp, 0).unwrap());
        assert!(is_mutable(&linear(3, 6), 1).unwrap());
        assert!(is_mutable(&linear(3, 6), 5).is_err());
        assert!(matches!(premutate(&qp, 0), Err(Error::NotMutable(_))));
    }

    #[test]
    fn premutation_arrow_count() {
        let qp = linear(3, 6);
        let mu = premutate(&qp, 1).unwrap();
        assert_eq!(mu.quiver.num_arrows(), 3);
        let names: Vec<_> = mu.quiver.arrows().iter().map(|a| a.name.clone()).collect();
        assert_eq!(names, ["x1*", "x2*", "[x1x2]"]);
        let terms: Vec<_> = mu.potential.terms().iter().map(|(c, k)| (c.names(&mu.quiver), k.clone())).collect();
        assert_eq!(terms, [(vec!["x1*".to_string(), "[x1x2]".into(), "x2*".into()], q(1))]);
    }

    #[test]
    fn isolated_vertex_is_unchanged() {
        let q = Quiver::new(3, vec![Arrow::new("a", 0, 1)]).unwrap();
        let qp = QuiverWithPotential::with_zero(q, 6);
        assert_eq!(premutate(&qp, 2).unwrap(), qp);
    }

    #[test]
    fn double_premutation_splits_back() {
        let qp = linear(2, 6);
        let twice = premutate(&premutate(&qp, 0).unwrap(), 0).unwrap();
        assert_eq!(twice.quiver.num_arrows(), 1);
        let s = split_trivial_reduced(&twice).unwrap();
        assert!(find_isomorphism(&qp, &s.reduced, 6).unwrap().is_some());
        let qp = linear(3, 6);
        let twice = premutate(&premutate(&qp, 1).unwrap(), 1).unwrap();
        assert!(twice.quiver.has_two_cycles());
        let s = split_trivial_reduced(&twice).unwrap();
        assert_eq!(s.trivial.quiver.num_arrows(), 2);
        assert!(find_isomorphism(&qp, &s.reduced, 6).unwrap().is_some());
        assert_eq!(truncated_model(&s.trivial.with_cap(4)).unwrap().dim(), Some(3));
    }

    #[test]
    fn split_reproduces_the_input() {
        let t = triangle(8);
        let p = premutate(&t, 0).unwrap();
        let s = split_trivial_reduced(&p).unwrap();
        assert!(s.substitution.is_unitriangular());
        let lhs = s.substitution.apply_potential(&p.potential).unwrap();
        let rhs = direct_sum(&s.trivial, &s.reduced).unwrap();
        let mut back = Potential::zero(p.quiver.clone(), 8);
        for (c, k) in rhs.potential.terms() {
            let names = c.names(&rhs.quiver);
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            back.add_cycle(&Path::from_names(&p.quiver, &refs).unwrap(), k.clone()).unwrap();
        }
        assert_eq!(lhs, back);
        assert!(s.reduced.potential.terms().keys().all(|c| c.len() >= 3));
    }

    #[test]
    fn pure_cubic_splits_trivially() {
        let t = triangle(8);
        let s = split_trivial_reduced(&t).unwrap();
        assert_eq!(s.trivial.quiver.num_arrows(), 0);
        assert_eq!(s.reduced, t);
    }

    #[test]
    fn linear_change_pairs_a_degenerate_looking_block() {
        let qv = Arc::new(
            Quiver::new(2, vec![Arrow::new("a", 0, 1), Arrow::new("c", 0, 1), Arrow::new("b", 1, 0), Arrow::new("d", 1, 0)]).unwrap(),
        );
        let p = |n: &[&str]| Path::from_names(&qv, n).unwrap();
        let w = Potential::from_cycles(
            qv.clone(),
            6,
            [(q(1), p(&["a", "b"])), (q(2), p(&["a", "d"])), (q(3), p(&["c", "b"])), (q(6), p(&["c", "d"]))],
        )
        .unwrap();
        let s = split_trivial_reduced(&QuiverWithPotential::new(qv, w).unwrap()).unwrap();
        assert_eq!(s.trivial.quiver.num_arrows(), 2);
        assert_eq!(s.reduced.quiver.num_arrows(), 2);
        assert!(s.substitution.is_unitriangular());
    }

    #[test]
    fn loops_in_the_quadratic_part_are_refused() {
        let qv = Arc::new(Quiver::new(1, vec![Arrow::new("E", 0, 0)]).unwrap());
        let ee = Path::from_names(&qv, &["E", "E"]).unwrap();
        let w = Potential::from_cycles(qv.clone(), 6, [(q(1), ee)]).unwrap();
        assert!(matches!(split_trivial_reduced(&QuiverWithPotential::new(qv, w).unwrap()), Err(Error::DegeneratePairing(_))));
    }

    #[test]
    fn triangle_involution() {
        let r = check_involution(&triangle(8), 0, 8).unwrap();
        assert_eq!(r.status, InvolutionStatus::Pass, "{r:?}");
        let mu = mutate(&triangle(8), 0).unwrap();
        assert_eq!(mu.quiver.num_arrows(), 2);
        assert!(mu.potential.is_zero());
    }

    #[test]
    fn direct_sum_rules() {
        let qp = linear(3, 6);
        let empty = QuiverWithPotential::with_zero(Quiver::new(3, vec![]).unwrap(), 6);
        assert_eq!(direct_sum(&qp, &empty).unwrap(), qp);
        assert!(direct_sum(&qp, &qp).is_err());
        assert!(direct_sum(&qp, &linear(2, 6)).is_err());
    }
}
