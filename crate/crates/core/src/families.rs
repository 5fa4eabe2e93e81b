//! The potentials `W_n^{[1,m]}` on `Ā_n^{[1,m]}` and their finiteness condition.

use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;

use crate::coeff::{q, Q};
use crate::error::{invalid, Result};
use crate::path::Path;
use crate::potential::{Potential, QuiverWithPotential};
use crate::quiver::build_anm;

/// Coefficients `k_1..k_m` of the loop cubes and `t_1..t_{n-1}` of the `(a_i b_i)^3` terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyParams {
    pub n: usize,
    pub m: usize,
    pub k: Vec<Q>,
    pub t: Vec<Q>,
}

impl FamilyParams {
    pub fn new(n: usize, m: usize, k: Vec<Q>, t: Vec<Q>) -> Result<Self> {
        if n < 1 || m > n {
            return invalid(format!("need 0 <= m <= n and n >= 1, got n={n}, m={m}"));
        }
        if k.len() != m || t.len() != n - 1 {
            return invalid(format!("expected {m} k-values and {} t-values, got {} and {}", n - 1, k.len(), t.len()));
        }
        Ok(FamilyParams { n, m, k, t })
    }

    pub fn from_ints(n: usize, m: usize, k: &[i64], t: &[i64]) -> Result<Self> {
        Self::new(n, m, k.iter().map(|&x| q(x)).collect(), t.iter().map(|&x| q(x)).collect())
    }

    /// `k_i` with 1-based index.
    pub fn k(&self, i: usize) -> &Q {
        &self.k[i - 1]
    }

    /// `t_i` with 1-based index.
    pub fn t(&self, i: usize) -> &Q {
        &self.t[i - 1]
    }

    /// Default truncation degree `2n + 8`.
    pub fn default_cap(&self) -> usize {
        2 * self.n + 8
    }
}

/// Which summand groups of `W` to include; terms with out-of-range indices are always dropped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TermGroups {
    pub loop_cubes: bool,
    pub two_cycle_cubes: bool,
    pub mixed: bool,
}

impl TermGroups {
    pub const ALL: TermGroups = TermGroups { loop_cubes: true, two_cycle_cubes: true, mixed: true };
}

/// `W = Σ k_i E_i³ + Σ t_i (a_i b_i)³ + Σ 3E_i a_i b_i + Σ 3E_i b_{i-1} a_{i-1} + Σ_{i≥m} 3a_i a_{i+1} b_{i+1} b_i`.
///
/// ```
/// use qpcat::{families::{build_wnm, FamilyParams}, text::emit_qp};
/// let p = FamilyParams::from_ints(3, 0, &[], &[1, 1]).unwrap();
/// let qp = build_wnm(&p, 12).unwrap();
/// assert_eq!(qp.potential.to_string(), "3*a1*a2*b2*b1 + a1*b1*a1*b1*a1*b1 + a2*b2*a2*b2*a2*b2");
/// ```
pub fn build_wnm(p: &FamilyParams, cap: usize) -> Result<QuiverWithPotential> {
    build_wnm_groups(p, cap, TermGroups::ALL)
}

pub fn build_wnm_groups(p: &FamilyParams, cap: usize, groups: TermGroups) -> Result<QuiverWithPotential> {
    if cap < 6 {
        return invalid(format!("cap must be at least 6, got {cap}"));
    }
    let (n, m) = (p.n, p.m);
    let quiver = Arc::new(build_anm(n, m)?);
    let path = |names: &[String]| {
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        Path::from_names(&quiver, &refs)
    };
    let s = |x: &str, i: usize| format!("{x}{i}");
    let mut terms: Vec<(Q, Path)> = Vec::new();
    if groups.loop_cubes {
        for i in 1..=m {
            terms.push((p.k(i).clone(), path(&[s("E", i), s("E", i), s("E", i)])?));
        }
    }
    if groups.two_cycle_cubes {
        for i in 1..n {
            let ab = [s("a", i), s("b", i)];
            terms.push((p.t(i).clone(), path(&ab.iter().cycle().take(6).cloned().collect::<Vec<_>>())?));
        }
    }
    if groups.mixed {
        for i in 1..=m.min(n - 1) {
            terms.push((q(3), path(&[s("E", i), s("a", i), s("b", i)])?));
        }
        for i in 2..=m {
            terms.push((q(3), path(&[s("E", i), s("b", i - 1), s("a", i - 1)])?));
        }
        for i in m.max(1)..=n.saturating_sub(2) {
            terms.push((q(3), path(&[s("a", i), s("a", i + 1), s("b", i + 1), s("b", i)])?));
        }
    }
    let w = Potential::from_cycles(quiver.clone(), cap, terms)?;
    QuiverWithPotential::new(quiver, w)
}

/// Outcome of [`check_fd_condition`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FdCondition {
    /// Every alternating sum is nonzero.
    pub holds: bool,
    /// `n ≡ m (mod 2)`, reported separately.
    pub parity: bool,
    /// First `(i', s')` with a vanishing sum; `i' = m + 1` or `s' = 0` mark an empty part.
    pub violation: Option<(usize, usize)>,
}

/// The alternating sum `Σ_{i=i'}^m (-1)^i k_i + Σ_{s=1}^{s'} (-1)^s t_{m+2s-1}`.
pub fn alternating_sum(p: &FamilyParams, i0: usize, s0: usize) -> Q {
    let mut sum = Q::zero();
    for i in i0..=p.m {
        if i == 0 {
            continue;
        }
        if i % 2 == 0 {
            sum += p.k(i);
        } else {
            sum -= p.k(i);
        }
    }
    for s in 1..=s0 {
        let t = p.t(p.m + 2 * s - 1);
        if s % 2 == 0 {
            sum += t;
        } else {
            sum -= t;
        }
    }
    sum
}

/// Checks the alternating sums over `1 ≤ i' ≤ m`, `1 ≤ s' ≤ (n-m-2)/2`.
///
/// An empty range contributes only its empty sum, so for `m ≥ 1` and `n - m < 4`
/// the `k`-sums alone are tested, and for `m = 0` the `t`-sums alone.
///
/// ```
/// use qpcat::families::{check_fd_condition, FamilyParams};
/// let ok = FamilyParams::from_ints(2, 2, &[2, 1], &[1]).unwrap();
/// assert!(check_fd_condition(&ok).holds);
/// let bad = FamilyParams::from_ints(2, 2, &[1, 1], &[1]).unwrap();
/// assert_eq!(check_fd_condition(&bad).violation, Some((1, 0)));
/// ```
pub fn check_fd_condition(p: &FamilyParams) -> FdCondition {
    let parity = p.n % 2 == p.m % 2;
    let i_range: Vec<usize> = if p.m >= 1 { (1..=p.m).collect() } else { vec![p.m + 1] };
    let smax = (p.n as i64 - p.m as i64 - 2).div_euclid(2);
    let s_range: Vec<usize> = if smax >= 1 { (1..=smax as usize).collect() } else { vec![0] };
    for &i0 in &i_range {
        for &s0 in &s_range {
            if i0 > p.m && s0 == 0 {
                continue;
            }
            if alternating_sum(p, i0, s0).is_zero() {
                return FdCondition { holds: false, parity, violation: Some((i0, s0)) };
            }
        }
    }
    FdCondition { holds: true, parity, violation: None }
}

/// The `i`-th prime, 1-based.
pub fn nth_prime(i: usize) -> u64 {
    let mut count = 0;
    let mut c = 1;
    while count < i {
        c += 1;
        if crate::linalg::fp::is_prime(c) {
            count += 1;
        }
    }
    c
}

/// `k_i` = the `i`-th prime and `t_i` = the `(m+i)`-th prime, shifted until the
/// condition holds.
pub fn generic_params(n: usize, m: usize) -> Result<FamilyParams> {
    for shift in 0..=100 {
        let k = (1..=m).map(|i| q(nth_prime(i + shift) as i64)).collect();
        let t = (1..n).map(|i| q(nth_prime(m + i + shift) as i64)).collect();
        let p = FamilyParams::new(n, m, k, t)?;
        if check_fd_condition(&p).holds {
            return Ok(p);
        }
    }
    Err(crate::Error::InternalConsistency(format!("no generic parameters found for n={n}, m={m}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn potentials_from_examples() {
        let p = FamilyParams::from_ints(2, 0, &[], &[1]).unwrap();
        assert_eq!(build_wnm(&p, 12).unwrap().potential.to_string(), "a1*b1*a1*b1*a1*b1");
        let p = FamilyParams::from_ints(2, 2, &[2, 1], &[1]).unwrap();
        let w = build_wnm(&p, 12).unwrap().potential.to_string();
        assert_eq!(w, "3*a1*b1*E1 + 3*a1*E2*b1 + 2*E1*E1*E1 + E2*E2*E2 + a1*b1*a1*b1*a1*b1");
        assert!(build_wnm(&p, 5).is_err());
    }

    #[test]
    fn condition_examples() {
        let p = FamilyParams::from_ints(2, 0, &[], &[7]).unwrap();
        assert!(check_fd_condition(&p).holds);
        let p = FamilyParams::from_ints(6, 0, &[], &[1, 4, 1, 9, 9]).unwrap();
        assert_eq!(check_fd_condition(&p).violation, Some((1, 2)));
        let p = FamilyParams::from_ints(6, 2, &[1, 2], &[5, 5, 1, 5, 5]).unwrap();
        assert_eq!(check_fd_condition(&p).violation, Some((1, 1)));
    }

    #[test]
    fn generic_examples() {
        let p = generic_params(2, 2).unwrap();
        assert_eq!((p.k.clone(), p.t.clone()), (vec![q(2), q(3)], vec![q(5)]));
        let p = generic_params(1, 1).unwrap();
        assert_eq!((p.k.clone(), p.t.len()), (vec![q(2)], 0));
        for n in 1..=8 {
            for m in 0..=n {
                assert!(check_fd_condition(&generic_params(n, m).unwrap()).holds);
            }
        }
    }
}
