//! The Z₃-cover `C₃(Ā_n^I)`, lifted potentials and orbit quotients.
//!
//! Every arrow of the cover is the lift of a base arrow together with a shift
//! of the sheet index `j ∈ Z₃` (its voltage):
//!
//! | template | arrow | lift | voltage |
//! |---|---|---|---|
//! | `L⁽¹⁾` | `E_{i,j}` | `i_j → i_{j+1}` | `+1` |
//! | `L⁽²⁾` | `E_{i,j}` | `i_j → i_{j-1}` | `-1` |
//! | `C⁽¹⁾` | `a_{i,j}`, `b_{i,j}` | `i_j → (i+1)_{j-1}`, `(i+1)_{j-1} → i_{j-1}` | `-1`, `0` |
//! | `C⁽²⁾` | `a_{i,j}`, `b_{i,j}` | `i_j → (i+1)_{j+1}`, `(i+1)_j → i_j` | `+1`, `0` |
//!
//! Cover arrows are named `a{i}_{j}`, `b{i}_{j}`, `E{i}_{j}` and vertex `i_j` is labelled `"{i}_{j}"`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;

use crate::coeff::q;
use crate::error::{invalid, Error, Result};
use crate::families::{build_wnm, FamilyParams};
use crate::path::{Path, Word};
use crate::potential::{canonical_unchecked, Potential, QuiverWithPotential};
use crate::quiver::{build_anm, Arrow, ArrowId, Quiver, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CycleType {
    L1,
    L2,
    C1,
    C2,
}

/// `C₃(Ā_n^I)` with the bookkeeping needed to lift base paths.
#[derive(Debug, Clone)]
pub struct C3Cover {
    pub quiver: Arc<Quiver>,
    pub base: Arc<Quiver>,
    /// Cover vertex to base vertex.
    pub fiber: Vec<Vertex>,
    /// `(base arrow, source sheet)` to cover arrow.
    lift: HashMap<(ArrowId, usize), ArrowId>,
    /// Template of `L_i` for each loop level and of `C_{i,i+1}` for each `i < n`.
    pub loop_types: BTreeMap<usize, CycleType>,
    pub link_types: Vec<CycleType>,
}

fn cover_vertex(i: usize, j: usize) -> Vertex {
    3 * (i - 1) + (j - 1)
}

fn sheet(j: i64) -> usize {
    (j - 1).rem_euclid(3) as usize + 1
}

/// Builds `C₃(Ā_n^I)` for a loop set `I ⊆ [1, n]` (1-based).
///
/// `C_{1,2}` is of type `C⁽¹⁾`; a level in `I` keeps the link type and takes the
/// matching loop type, a level outside `I` flips it.
///
/// ```
/// let c = qpcat::cover::build_c3_quiver(3, &[1]).unwrap();
/// assert_eq!((c.quiver.num_vertices(), c.quiver.num_arrows()), (9, 15));
/// ```
pub fn build_c3_quiver(n: usize, loops: &[usize]) -> Result<C3Cover> {
    if n < 1 {
        return invalid("n must be at least 1");
    }
    let set: BTreeSet<usize> = loops.iter().copied().collect();
    if set.iter().any(|&i| i < 1 || i > n) {
        return invalid(format!("loop set {loops:?} is not inside [1, {n}]"));
    }
    let mut link_types = Vec::new();
    let mut loop_types = BTreeMap::new();
    let mut prev = CycleType::C1;
    for i in 1..=n {
        let link = if i == 1 {
            CycleType::C1
        } else if set.contains(&i) {
            prev
        } else if prev == CycleType::C1 {
            CycleType::C2
        } else {
            CycleType::C1
        };
        if set.contains(&i) {
            loop_types.insert(i, if link == CycleType::C1 { CycleType::L1 } else { CycleType::L2 });
        }
        if i < n {
            link_types.push(link);
        }
        prev = link;
    }

    let mut base_arrows = Vec::new();
    for i in 1..n {
        base_arrows.push(Arrow::new(format!("a{i}"), i - 1, i));
    }
    for i in 1..n {
        base_arrows.push(Arrow::new(format!("b{i}"), i, i - 1));
    }
    for &i in &set {
        base_arrows.push(Arrow::new(format!("E{i}"), i - 1, i - 1));
    }
    let base = Arc::new(Quiver::new(n, base_arrows)?);

    let mut arrows = Vec::new();
    let mut lift = HashMap::new();
    let mut push = |name: String, base_id: ArrowId, s: (usize, usize), t: (usize, usize), arrows: &mut Vec<Arrow>| {
        lift.insert((base_id, s.1), arrows.len() as ArrowId);
        arrows.push(Arrow::new(name, cover_vertex(s.0, s.1), cover_vertex(t.0, t.1)));
    };
    for i in 1..n {
        let id = base.arrow_id(&format!("a{i}")).unwrap();
        for j in 1..=3i64 {
            let shift = if link_types[i - 1] == CycleType::C1 { -1 } else { 1 };
            push(format!("a{i}_{j}"), id, (i, j as usize), (i + 1, sheet(j + shift)), &mut arrows);
        }
    }
    for i in 1..n {
        let id = base.arrow_id(&format!("b{i}")).unwrap();
        for j in 1..=3i64 {
            let s = if link_types[i - 1] == CycleType::C1 { sheet(j - 1) } else { sheet(j) };
            push(format!("b{i}_{j}"), id, (i + 1, s), (i, s), &mut arrows);
        }
    }
    for (&i, &ty) in &loop_types {
        let id = base.arrow_id(&format!("E{i}")).unwrap();
        for j in 1..=3i64 {
            let shift = if ty == CycleType::L1 { 1 } else { -1 };
            push(format!("E{i}_{j}"), id, (i, j as usize), (i, sheet(j + shift)), &mut arrows);
        }
    }
    let labels = (1..=n).flat_map(|i| (1..=3).map(move |j| format!("{i}_{j}"))).collect();
    let quiver = Arc::new(Quiver::with_labels(labels, arrows)?);
    let fiber = (0..3 * n).map(|v| v / 3).collect();
    Ok(C3Cover { quiver, base, fiber, lift, loop_types, link_types })
}

impl C3Cover {
    /// The lift of a base path starting on sheet `j` (1-based), `None` if a lifted arrow is missing.
    pub fn lift_path(&self, p: &Path, j: usize) -> Option<Path> {
        if p.is_trivial() {
            return Some(Path::trivial(cover_vertex(p.source() + 1, j)));
        }
        let mut sheet_now = j;
        let mut word = Word::new();
        for &a in p.arrows() {
            let c = *self.lift.get(&(a, sheet_now))?;
            word.push(c);
            sheet_now = self.quiver.target(c) % 3 + 1;
        }
        Path::from_arrows(&self.quiver, &word).ok()
    }

    /// The Z₃ action `i_j ↦ i_{j+1}`, `X_{i,j} ↦ X_{i,j+1}`.
    pub fn z3_action(&self) -> GroupAction {
        let vertex_perm = (0..self.quiver.num_vertices()).map(|v| 3 * (v / 3) + (v % 3 + 1) % 3).collect();
        let arrow_perm = (0..self.quiver.num_arrows() as ArrowId)
            .map(|a| {
                let name = &self.quiver.arrow(a).name;
                let (stem, j) = name.rsplit_once('_').expect("cover arrow names carry a sheet");
                let j: usize = j.parse().expect("sheet index");
                self.quiver.arrow_id(&format!("{stem}_{}", j % 3 + 1)).expect("every sheet is present")
            })
            .collect();
        GroupAction { order: 3, vertex_perm, arrow_perm }
    }
}

/// Lifts every term `λ p` of a base potential to `λ/r` times each of its `r`
/// distinct closed lifts.
pub fn lift_potential(cover: &C3Cover, w: &Potential) -> Result<Potential> {
    let mut out = Potential::zero(cover.quiver.clone(), w.cap());
    for (p, lambda) in w.terms() {
        let mut lifts = BTreeSet::new();
        for j in 1..=3 {
            let Some(l) = cover.lift_path(p, j) else {
                return Err(Error::InternalConsistency(format!(
                    "term {} uses an arrow absent from the cover",
                    p.display(&cover.base)
                )));
            };
            if !l.is_cycle() {
                return Err(Error::InternalConsistency(format!(
                    "term {} does not close up in the cover",
                    p.display(&cover.base)
                )));
            }
            lifts.insert(canonical_unchecked(&cover.quiver, &l));
        }
        let c = lambda / q(lifts.len() as i64);
        for l in lifts {
            out.add_cycle(&l, c.clone())?;
        }
    }
    Ok(out)
}

/// The covered potential `C₃(W_n^{[1,m]})` on `C₃(Ā_n^{[1,m]})`.
pub fn build_c3_potential(p: &FamilyParams, cap: usize) -> Result<(C3Cover, QuiverWithPotential)> {
    let base = build_wnm(p, cap)?;
    let loops: Vec<usize> = (1..=p.m).collect();
    let cover = build_c3_quiver(p.n, &loops)?;
    if *cover.base != *base.quiver {
        return Err(Error::InternalConsistency("cover base differs from the family quiver".into()));
    }
    let rebased = Potential::from_cycles(
        cover.base.clone(),
        cap,
        base.potential.terms().iter().map(|(p, c)| (c.clone(), p.clone())),
    )?;
    let w = lift_potential(&cover, &rebased)?;
    let qp = QuiverWithPotential::new(cover.quiver.clone(), w)?;
    Ok((cover, qp))
}

/// A cyclic group acting through one generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAction {
    pub order: usize,
    pub vertex_perm: Vec<Vertex>,
    pub arrow_perm: Vec<ArrowId>,
}

impl GroupAction {
    pub fn identity(q: &Quiver) -> Self {
        GroupAction {
            order: 1,
            vertex_perm: (0..q.num_vertices()).collect(),
            arrow_perm: (0..q.num_arrows() as ArrowId).collect(),
        }
    }

    pub fn apply_path(&self, q: &Quiver, p: &Path) -> Path {
        if p.is_trivial() {
            return Path::trivial(self.vertex_perm[p.source()]);
        }
        let w: Word = p.arrows().iter().map(|&a| self.arrow_perm[a as usize]).collect();
        Path::from_arrows(q, &w).expect("automorphisms map paths to paths")
    }

    fn power_vertex(&self, v: Vertex, k: usize) -> Vertex {
        (0..k).fold(v, |v, _| self.vertex_perm[v])
    }

    fn power_arrow(&self, a: ArrowId, k: usize) -> ArrowId {
        (0..k).fold(a, |a, _| self.arrow_perm[a as usize])
    }

    /// Checks that the generator is a quiver automorphism of order exactly `order`
    /// that preserves the potential termwise.
    pub fn validate(&self, qp: &QuiverWithPotential) -> Result<()> {
        let q = &qp.quiver;
        let is_perm = |perm: &[usize], n: usize| {
            perm.len() == n && perm.iter().collect::<BTreeSet<_>>().len() == n && perm.iter().all(|&x| x < n)
        };
        let arrows: Vec<usize> = self.arrow_perm.iter().map(|&a| a as usize).collect();
        if self.order == 0 || !is_perm(&self.vertex_perm, q.num_vertices()) || !is_perm(&arrows, q.num_arrows()) {
            return invalid("the action is not a pair of permutations");
        }
        for a in 0..q.num_arrows() as ArrowId {
            let b = self.arrow_perm[a as usize];
            if q.source(b) != self.vertex_perm[q.source(a)] || q.target(b) != self.vertex_perm[q.target(a)] {
                return invalid(format!("the action does not respect the ends of {}", q.arrow(a).name));
            }
        }
        let is_identity = |k: usize| {
            (0..q.num_vertices()).all(|v| self.power_vertex(v, k) == v)
                && (0..q.num_arrows() as ArrowId).all(|a| self.power_arrow(a, k) == a)
        };
        if !is_identity(self.order) || (1..self.order).any(is_identity) {
            return invalid(format!("the generator does not have order {}", self.order));
        }
        for (p, c) in qp.potential.terms() {
            let gp = canonical_unchecked(q, &self.apply_path(q, p));
            if qp.potential.terms().get(&gp) != Some(c) {
                return invalid(format!("the action does not preserve the term {}", p.display(q)));
            }
        }
        Ok(())
    }
}

/// `true` iff no nontrivial group element fixes a vertex.
pub fn check_admissible(qp: &QuiverWithPotential, act: &GroupAction) -> Result<bool> {
    act.validate(qp)?;
    Ok((1..act.order).all(|k| (0..qp.quiver.num_vertices()).all(|v| act.power_vertex(v, k) != v)))
}

/// The orbit QP: vertices and arrows are orbits, each named after its first
/// member, and the potential is pushed forward term by term.
pub fn orbit_quotient(qp: &QuiverWithPotential, act: &GroupAction) -> Result<QuiverWithPotential> {
    if !check_admissible(qp, act)? {
        return invalid("the action is not admissible");
    }
    let q = &qp.quiver;
    let mut vorbit = vec![usize::MAX; q.num_vertices()];
    let mut labels = Vec::new();
    for v in 0..q.num_vertices() {
        if vorbit[v] == usize::MAX {
            for k in 0..act.order {
                vorbit[act.power_vertex(v, k)] = labels.len();
            }
            labels.push(q.label(v).to_string());
        }
    }
    let mut aorbit = vec![ArrowId::MAX; q.num_arrows()];
    let mut arrows = Vec::new();
    for a in 0..q.num_arrows() as ArrowId {
        if aorbit[a as usize] == ArrowId::MAX {
            for k in 0..act.order {
                aorbit[act.power_arrow(a, k) as usize] = arrows.len() as ArrowId;
            }
            let x = q.arrow(a);
            arrows.push(Arrow::new(x.name.clone(), vorbit[x.source], vorbit[x.target]));
        }
    }
    let quotient = Arc::new(Quiver::with_labels(labels, arrows)?);
    let mut w = Potential::zero(quotient.clone(), qp.cap());
    for (p, c) in qp.potential.terms() {
        let word: Word = p.arrows().iter().map(|&a| aorbit[a as usize]).collect();
        let image = if word.is_empty() {
            Path::trivial(vorbit[p.source()])
        } else {
            Path::from_arrows(&quotient, &word)?
        };
        w.add_cycle(&image, c.clone())?;
    }
    QuiverWithPotential::new(quotient, w)
}

/// Renames `X_j` to `X` on arrows and vertex labels.
pub fn collapse_fiber_names(qp: &QuiverWithPotential) -> Result<QuiverWithPotential> {
    let strip = |s: &str| s.rsplit_once('_').map_or(s.to_string(), |(x, _)| x.to_string());
    let q = &qp.quiver;
    let labels = q.labels().iter().map(|l| strip(l)).collect();
    let arrows = q.arrows().iter().map(|a| Arrow::new(strip(&a.name), a.source, a.target)).collect();
    let renamed = Arc::new(Quiver::with_labels(labels, arrows)?);
    let w = Potential::from_cycles(
        renamed.clone(),
        qp.cap(),
        qp.potential.terms().iter().map(|(p, c)| (c.clone(), p.clone())),
    )?;
    QuiverWithPotential::new(renamed, w)
}

/// `true` when the Z₃ quotient of the covered potential equals `W_n^{[1,m]}` after renaming.
pub fn round_trip_holds(p: &FamilyParams, cap: usize) -> Result<bool> {
    let (cover, qp) = build_c3_potential(p, cap)?;
    let quotient = collapse_fiber_names(&orbit_quotient(&qp, &cover.z3_action())?)?;
    let base = build_wnm(p, cap)?;
    let anm = build_anm(p.n, p.m)?;
    Ok(*quotient.quiver == anm && quotient.potential.terms() == base.potential.terms())
}

/// Counts terms of the covered potential per coefficient, for reports.
pub fn coefficient_histogram(w: &Potential) -> BTreeMap<String, usize> {
    let mut h = BTreeMap::new();
    for c in w.terms().values().filter(|c| !c.is_zero()) {
        *h.entry(crate::coeff::fmt_q(c)).or_insert(0) += 1;
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::generic_params;

    #[test]
    fn cover_shapes() {
        let c = build_c3_quiver(3, &[1]).unwrap();
        assert_eq!(c.link_types, vec![CycleType::C1, CycleType::C2]);
        assert_eq!(c.loop_types[&1], CycleType::L1);
        let c = build_c3_quiver(1, &[]).unwrap();
        assert_eq!((c.quiver.num_vertices(), c.quiver.num_arrows()), (3, 0));
        let c = build_c3_quiver(2, &[]).unwrap();
        assert_eq!((c.quiver.num_vertices(), c.quiver.num_arrows()), (6, 6));
        for n in 1..=5 {
            for mask in 0..(1 << n) {
                let set: Vec<usize> = (1..=n).filter(|i| mask & (1 << (i - 1)) != 0).collect();
                let c = build_c3_quiver(n, &set).unwrap();
                assert_eq!(c.quiver.num_vertices(), 3 * n);
                assert_eq!(c.quiver.num_arrows(), 3 * (2 * (n - 1) + set.len()));
            }
        }
    }

    #[test]
    fn hexagon_lift() {
        let p = FamilyParams::from_ints(2, 0, &[], &[1]).unwrap();
        let (_, qp) = build_c3_potential(&p, 12).unwrap();
        assert_eq!(qp.potential.terms().len(), 1);
        let (path, c) = qp.potential.terms().iter().next().unwrap();
        assert_eq!(path.len(), 6);
        assert_eq!(*c, q(1));
    }

    #[test]
    fn loop_terms_lift_with_their_coefficients() {
        let p = FamilyParams::from_ints(2, 2, &[2, 1], &[1]).unwrap();
        let (_, qp) = build_c3_potential(&p, 12).unwrap();
        let shown: Vec<String> = qp.potential.terms().iter().map(|(p, c)| format!("{} {}", c, p.display(&qp.quiver))).collect();
        assert!(shown.contains(&"2 E1_1*E1_2*E1_3".to_string()), "{shown:?}");
        assert!(shown.iter().any(|s| s.starts_with("1 E2_")), "{shown:?}");
        assert_eq!(coefficient_histogram(&qp.potential)["1"], 1 + 1 + 6);
    }

    #[test]
    fn round_trips() {
        for n in 1..=5 {
            for m in 0..=n {
                let p = generic_params(n, m).unwrap();
                assert!(round_trip_holds(&p, 2 * n + 8).unwrap(), "n={n} m={m}");
            }
        }
    }

    #[test]
    fn admissibility() {
        let p = FamilyParams::from_ints(2, 0, &[], &[1]).unwrap();
        let (cover, qp) = build_c3_potential(&p, 12).unwrap();
        assert!(check_admissible(&qp, &cover.z3_action()).unwrap());
        assert!(check_admissible(&qp, &GroupAction::identity(&qp.quiver)).unwrap());
        let same = orbit_quotient(&qp, &GroupAction::identity(&qp.quiver)).unwrap();
        assert_eq!(same, qp);

        let tri = Quiver::new(4, vec![Arrow::new("x", 0, 1), Arrow::new("y", 1, 2), Arrow::new("z", 2, 0)]).unwrap();
        let qp = QuiverWithPotential::with_zero(tri, 6);
        let act = GroupAction { order: 3, vertex_perm: vec![1, 2, 0, 3], arrow_perm: vec![1, 2, 0] };
        assert!(!check_admissible(&qp, &act).unwrap());
        let bad = GroupAction { order: 2, vertex_perm: vec![1, 2, 0, 3], arrow_perm: vec![1, 2, 0] };
        assert!(check_admissible(&qp, &bad).is_err());
    }
}
