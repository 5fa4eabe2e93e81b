//! Point counts of quiver Grassmannians over prime fields.
//!
//! Submodules are enumerated level by level: every submodule `N' ⊋ N` contains
//! some `N + ⟨v⟩` with `v` in the socle of `M / N`, so adding one socle point
//! at a time reaches every submodule exactly along its composition series.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use rustc_hash::FxHashSet;
use serde::Serialize;

use crate::coeff::{q, serialize_qs, Q};
use crate::error::{Error, Result};
use crate::linalg::fp::{self, FpEchelon, FpMatrix};
use crate::linalg::Matrix;

use super::{require_valid, Representation};

/// Limits and prime choices for point counting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountOptions {
    /// Largest total dimension accepted.
    pub max_dim: usize,
    /// Explicit sampling primes; chosen automatically when `None`.
    pub primes: Option<Vec<u64>>,
    /// Primes beyond the interpolation minimum used only as checks.
    pub check_primes: usize,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions { max_dim: 14, primes: None, check_primes: 2 }
    }
}

/// Point counts of `Gr_e(M)` and the polynomial through them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GrassCount {
    pub e: Vec<usize>,
    /// `(q, |Gr_e(M)(F_q)|)` for every sampling prime.
    pub counts: Vec<(u64, u64)>,
    /// Coefficients in ascending degree.
    #[serde(serialize_with = "serialize_qs")]
    pub polynomial: Vec<Q>,
    pub euler: i64,
}

/// Number of submodules over `F_p` of each dimension vector.
///
/// ```
/// use std::sync::Arc;
/// use qpcat::families::{build_wnm, FamilyParams};
/// use qpcat::jacobian::truncated_model;
/// use qpcat::repmod::{submodule_counts, Representation};
///
/// let qp = build_wnm(&FamilyParams::from_ints(2, 0, &[], &[1]).unwrap(), 12).unwrap();
/// let model = Arc::new(truncated_model(&qp).unwrap());
/// let counts = submodule_counts(&Representation::simple(&model, 0), 5, 14).unwrap();
/// assert_eq!(counts.len(), 2);
/// assert_eq!(counts[&vec![1, 0]], 1);
/// ```
pub fn submodule_counts(r: &Representation, p: u64, max_dim: usize) -> Result<BTreeMap<Vec<usize>, u64>> {
    if r.total_dim() > max_dim {
        return Err(Error::BoundExceeded(format!("total dimension {} exceeds {max_dim}", r.total_dim())));
    }
    if !fp::is_prime(p) || p >= 1 << 32 {
        return Err(Error::InvalidParameters(format!("{p} is not a usable prime")));
    }
    let maps = r.reduce_mod(p).ok_or_else(|| Error::InvalidParameters(format!("{p} divides a matrix denominator")))?;
    Ok(count_over(r, &maps, p))
}

type State = Vec<FpEchelon>;

fn count_over(r: &Representation, maps: &[FpMatrix], p: u64) -> BTreeMap<Vec<usize>, u64> {
    let qv = r.quiver();
    let dims = r.dims();
    let mut out = BTreeMap::new();
    let mut level: FxHashSet<State> = FxHashSet::default();
    level.insert(vec![FpEchelon::new(); dims.len()]);
    while !level.is_empty() {
        let mut next: FxHashSet<State> = FxHashSet::default();
        for n in &level {
            *out.entry(n.iter().map(FpEchelon::dim).collect()).or_insert(0) += 1;
            for k in 0..dims.len() {
                if n[k].dim() == dims[k] {
                    continue;
                }
                let mut stack = Vec::new();
                for &a in qv.outgoing(k) {
                    let t = qv.target(a);
                    let m = &maps[a as usize];
                    let cols: Vec<Vec<u64>> =
                        (0..dims[k]).map(|j| n[t].reduce((0..m.rows).map(|i| m.get(i, j)).collect(), p)).collect();
                    for i in 0..dims[t] {
                        stack.push(cols.iter().map(|c| c[i]).collect::<Vec<u64>>());
                    }
                }
                let cond = FpMatrix { rows: stack.len(), cols: dims[k], data: stack.concat() };
                let mut fresh = n[k].clone();
                let socle: Vec<Vec<u64>> =
                    fp::kernel(&cond, p).into_iter().filter(|v| fresh.insert(v.clone(), p)).collect();
                for_each_point(&socle, dims[k], p, |v| {
                    let mut m = n.clone();
                    m[k].insert(v, p);
                    next.insert(m);
                });
            }
        }
        level = next;
    }
    out
}

/// Calls `f` on one representative of every line in the span of `basis`.
fn for_each_point(basis: &[Vec<u64>], len: usize, p: u64, mut f: impl FnMut(Vec<u64>)) {
    let s = basis.len();
    for lead in 0..s {
        let free = s - lead - 1;
        let total = (p as u128).pow(free as u32);
        for idx in 0..total {
            let mut v = basis[lead].clone();
            let mut x = idx;
            for b in &basis[lead + 1..] {
                let c = (x % p as u128) as u64;
                x /= p as u128;
                if c != 0 {
                    for (y, z) in v.iter_mut().zip(b) {
                        *y = fp::add(*y, fp::mul(c, *z, p), p);
                    }
                }
            }
            debug_assert_eq!(v.len(), len);
            f(v);
        }
    }
}

/// The first `count` primes `≥ 5` that divide no numerator or denominator of a matrix entry.
pub fn sampling_primes(r: &Representation, count: usize) -> Vec<u64> {
    let entries: Vec<&Q> = r.maps().iter().flat_map(|m| (0..m.rows()).flat_map(move |i| (0..m.cols()).map(move |j| m.get(i, j)))).filter(|c| !c.is_zero()).collect();
    let good = |p: u64| {
        let pb = num_bigint::BigInt::from(p);
        entries.iter().all(|c| !c.numer().is_multiple_of(&pb) && !c.denom().is_multiple_of(&pb))
    };
    (5u64..).filter(|&p| fp::is_prime(p) && good(p)).take(count).collect()
}

fn degree_bound(d: &[usize], e: &[usize]) -> usize {
    d.iter().zip(e).map(|(d, e)| e * (d - e)).sum()
}

/// Point counts and Euler characteristics of every nonempty `Gr_e(M)`.
pub fn grass_counts(r: &Representation, opts: &CountOptions) -> Result<Vec<GrassCount>> {
    require_valid(r)?;
    if r.total_dim() > opts.max_dim {
        return Err(Error::BoundExceeded(format!("total dimension {} exceeds {}", r.total_dim(), opts.max_dim)));
    }
    let d = r.dims();
    let max_bound: usize = d.iter().map(|&x| (x / 2) * (x - x / 2)).sum();
    let primes = match &opts.primes {
        Some(ps) => {
            if ps.len() < max_bound + 1 {
                return Err(Error::InvalidParameters(format!(
                    "{} primes given, interpolation needs {}",
                    ps.len(),
                    max_bound + 1
                )));
            }
            ps.clone()
        }
        None => sampling_primes(r, max_bound + 1 + opts.check_primes),
    };
    let tables: Vec<BTreeMap<Vec<usize>, u64>> =
        primes.par_iter().map(|&p| submodule_counts(r, p, opts.max_dim)).collect::<Result<_>>()?;
    let mut keys: Vec<Vec<usize>> = tables.iter().flat_map(|t| t.keys().cloned()).collect();
    keys.sort();
    keys.dedup();
    keys.into_iter()
        .map(|e| {
            let counts: Vec<(u64, u64)> = primes.iter().zip(&tables).map(|(&p, t)| (p, t.get(&e).copied().unwrap_or(0))).collect();
            let used = degree_bound(d, &e) + 1;
            let polynomial = interpolate(&counts[..used]);
            for &(p, n) in &counts[used..] {
                if evaluate(&polynomial, &q(p as i64)) != q(n as i64) {
                    return Err(Error::Polynomiality(format!("e = {e:?}: {n} points over F_{p} off the interpolant")));
                }
            }
            let at_one: Q = polynomial.iter().fold(Q::zero(), |s, c| s + c);
            if !at_one.is_integer() || at_one.is_negative() {
                return Err(Error::Polynomiality(format!("e = {e:?}: value {at_one} at q = 1")));
            }
            let euler = at_one.to_integer().to_i64().ok_or_else(|| Error::Polynomiality("Euler characteristic overflow".into()))?;
            Ok(GrassCount { e, counts, polynomial, euler })
        })
        .collect()
}

/// `χ(Gr_e(M))`.
pub fn gr_euler(r: &Representation, e: &[usize], opts: &CountOptions) -> Result<i64> {
    if e.len() != r.dims().len() || e.iter().zip(r.dims()).any(|(a, b)| a > b) {
        return Ok(0);
    }
    Ok(grass_counts(r, opts)?.into_iter().find(|g| g.e == e).map_or(0, |g| g.euler))
}

fn interpolate(points: &[(u64, u64)]) -> Vec<Q> {
    let n = points.len();
    let rows: Vec<Vec<Q>> = points
        .iter()
        .map(|&(x, _)| {
            let mut row = Vec::with_capacity(n);
            let mut pw = Q::one();
            for _ in 0..n {
                row.push(pw.clone());
                pw *= q(x as i64);
            }
            row
        })
        .collect();
    let ys: Vec<Q> = points.iter().map(|&(_, y)| q(y as i64)).collect();
    let mut coeffs = Matrix::from_rows(n, n, rows).solve(&ys).expect("distinct nodes");
    while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    coeffs
}

fn evaluate(poly: &[Q], x: &Q) -> Q {
    poly.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
}
