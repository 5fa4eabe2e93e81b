//! The τ-rigid modules of the three small case studies.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::families::{build_wnm, build_wnm_groups, FamilyParams, TermGroups};
use crate::jacobian::{truncated_model_with, JacobianModel, ModelOptions};
use crate::potential::QuiverWithPotential;

use super::{projectives, rep_validate, Representation};

/// Which potential is used on `Ā₂^{[1,2]}` with `k = (2, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TwelveVariant {
    /// `2E₁³ + 3E₁a₁b₁ + 3E₂b₁a₁ + E₂³`, without the `(a₁b₁)³` term.
    Displayed,
    /// The family potential with `t₁ = 1`, which adds `(a₁b₁)³`.
    Family,
}

/// A case study: a quiver with potential and a catalog of modules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseId {
    /// `Ā₂^∅` with `W = (a₁b₁)³`.
    A2Empty,
    /// `Ā₂^{[1,2]}` with loop coefficients `(2, 1)`.
    A2Twelve(TwelveVariant),
    /// `Ā₃^∅` with `W = (a₁b₁)³ + (a₂b₂)³ + 3a₁a₂b₂b₁`.
    A3Empty,
}

impl CaseId {
    pub const ALL: [CaseId; 4] =
        [CaseId::A2Empty, CaseId::A2Twelve(TwelveVariant::Displayed), CaseId::A2Twelve(TwelveVariant::Family), CaseId::A3Empty];

    pub fn id(&self) -> &'static str {
        match self {
            CaseId::A2Empty => "A2-empty",
            CaseId::A2Twelve(TwelveVariant::Displayed) => "A2-12",
            CaseId::A2Twelve(TwelveVariant::Family) => "A2-12-family",
            CaseId::A3Empty => "A3-empty",
        }
    }

    pub fn params(&self) -> FamilyParams {
        match self {
            CaseId::A2Empty => FamilyParams::from_ints(2, 0, &[], &[1]),
            CaseId::A2Twelve(_) => FamilyParams::from_ints(2, 2, &[2, 1], &[1]),
            CaseId::A3Empty => FamilyParams::from_ints(3, 0, &[], &[1, 1]),
        }
        .expect("fixed parameters are valid")
    }

    pub fn qp(&self, cap: usize) -> Result<QuiverWithPotential> {
        match self {
            CaseId::A2Twelve(TwelveVariant::Displayed) => {
                build_wnm_groups(&self.params(), cap, TermGroups { two_cycle_cubes: false, ..TermGroups::ALL })
            }
            _ => build_wnm(&self.params(), cap),
        }
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for CaseId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        CaseId::ALL
            .into_iter()
            .find(|c| c.id().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidParameters(format!("unknown case {s:?}; expected one of A2-empty, A2-12, A2-12-family, A3-empty")))
    }
}

/// The certified model of a case, escalating from the family's default cap.
pub fn case_model(case: CaseId) -> Result<Arc<JacobianModel>> {
    let cap = case.params().default_cap();
    let model = truncated_model_with(&case.qp(cap)?, ModelOptions::escalating(cap, cap + 12))?;
    if !model.is_finite() {
        return Err(Error::Undetermined(format!("{case} did not certify below cap {}", cap + 12)));
    }
    Ok(Arc::new(model))
}

/// Module names of a case, in report order.
pub fn catalog_names(case: CaseId) -> &'static [&'static str] {
    match case {
        CaseId::A2Empty => &["S1", "S2", "P1", "P2"],
        CaseId::A2Twelve(_) => &["E1", "E2", "P1", "P2"],
        CaseId::A3Empty => &["S1", "S2", "S3", "M_[0,3,2]", "M_[2,3,0]", "M_[3,2,0]", "M_[0,2,3]", "M_[2,1,2]", "P1", "P2", "P3"],
    }
}

/// A catalog module over the case's model, checked against the relations.
///
/// Uniserial modules are strings of shift matrices; projectives come from the model basis.
///
/// ```
/// use qpcat::repmod::{case_model, catalog_module, CaseId};
/// let model = case_model(CaseId::A3Empty).unwrap();
/// let m = catalog_module(&model, CaseId::A3Empty, "M_[2,1,2]").unwrap();
/// assert_eq!(m.dims(), &[2, 1, 2]);
/// ```
pub fn catalog_module(model: &Arc<JacobianModel>, case: CaseId, name: &str) -> Result<Representation> {
    if !catalog_names(case).contains(&name) {
        return Err(Error::InvalidParameters(format!("{case} has no module {name:?}")));
    }
    let projective = |i: usize| -> Result<Representation> { Ok(projectives(model)?.swap_remove(i)) };
    let simple = |i: usize| Ok(Representation::simple(model, i));
    let r = match (case, name) {
        (_, "S1") => simple(0),
        (_, "S2") => simple(1),
        (_, "S3") => simple(2),
        (_, "P1") => projective(0),
        (_, "P2") => projective(1),
        (_, "P3") => projective(2),
        (_, "E1") => Representation::string(model, &[0, 0]),
        (_, "E2") => Representation::string(model, &[1, 1]),
        (_, "M_[0,3,2]") => Representation::string(model, &[1, 2, 1, 2, 1]),
        (_, "M_[2,3,0]") => Representation::string(model, &[1, 0, 1, 0, 1]),
        (_, "M_[3,2,0]") => Representation::string(model, &[0, 1, 0, 1, 0]),
        (_, "M_[0,2,3]") => Representation::string(model, &[2, 1, 2, 1, 2]),
        (_, "M_[2,1,2]") => {
            let q = model.quiver();
            let arrow = |s: &str| q.arrow_id(s).ok_or_else(|| Error::InternalConsistency(format!("no arrow {s}")));
            Representation::tree(
                model,
                &[0, 1, 0, 2, 2],
                &[(0, 1, arrow("a1")?), (1, 2, arrow("b1")?), (3, 1, arrow("b2")?), (1, 4, arrow("a2")?)],
            )
        }
        _ => unreachable!("name checked against the catalog"),
    }?;
    let v = rep_validate(&r);
    if !v.valid {
        return Err(Error::InternalConsistency(format!("{case} {name} violates {}", v.violated.unwrap_or_default())));
    }
    Ok(r)
}
