//! Property suites shared by the `properties` tests and the acceptance harness.
#![allow(dead_code)]

use std::sync::{Arc, OnceLock};

use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed, TestCaseError, TestRunner};
use qpcat::coeff::q;
use qpcat::element::{nc_mul, AlgebraElement};
use qpcat::families::{build_wnm, FamilyParams};
use qpcat::jacobian::{truncated_model_with, JacobianModel, ModelOptions};
use qpcat::path::Path;
use qpcat::potential::euler_identity_holds;
use qpcat::quiver::{build_anm, ArrowId, Quiver, Vertex};
use qpcat::repmod::{case_model, g_vector, hom_dim, projectives, rep_validate, CaseId, Representation, TwelveVariant};

pub const SEED: u64 = 0x5eed_2c1c;
pub const CASES: u32 = 128;

pub fn config() -> Config {
    Config { cases: CASES, rng_seed: RngSeed::Fixed(SEED), failure_persistence: None, ..Config::default() }
}

/// Runs `test` over `CASES` instances drawn from `strategy` with the fixed seed.
pub fn run<S: Strategy>(strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String> {
    let mut runner = TestRunner::new(config());
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

fn reverse(q: &Quiver, a: ArrowId) -> ArrowId {
    let arr = q.arrow(a);
    if arr.is_loop() {
        return a;
    }
    q.outgoing(arr.target).iter().copied().find(|&b| q.target(b) == arr.source).expect("double quiver")
}

/// A walk from `start` steered by `choices`, each picking an outgoing arrow.
fn walk(q: &Quiver, start: Vertex, choices: &[usize]) -> Vec<ArrowId> {
    let mut v = start;
    let mut out = Vec::new();
    for &c in choices {
        let outs = q.outgoing(v);
        if outs.is_empty() {
            break;
        }
        let a = outs[c % outs.len()];
        out.push(a);
        v = q.target(a);
    }
    out
}

/// `(n, m)` with `1 ≤ n ≤ 4`, `0 ≤ m ≤ n`.
pub fn shape() -> impl Strategy<Value = (usize, usize)> {
    (1usize..=4).prop_flat_map(|n| (Just(n), 0..=n))
}

/// A closed walk: out along random arrows, back along their partners.
pub fn cycle() -> impl Strategy<Value = (Arc<Quiver>, Path)> {
    let shape = shape().prop_filter("needs an arrow", |&(n, m)| n + m > 1);
    (shape, any::<usize>(), prop::collection::vec(any::<usize>(), 1..6)).prop_map(|((n, m), v, ch)| {
        let q = Arc::new(build_anm(n, m).unwrap());
        let mut w = walk(&q, v % n, &ch);
        if w.is_empty() {
            w.push(q.outgoing(v % n)[0]);
        }
        let back: Vec<ArrowId> = w.iter().rev().map(|&a| reverse(&q, a)).collect();
        w.extend(back);
        let p = Path::from_arrows(&q, &w).unwrap();
        (q, p)
    })
}

pub fn element_in(qv: &Arc<Quiver>, cap: usize, terms: &[(usize, Vec<usize>, i64)]) -> AlgebraElement {
    let n = qv.num_vertices();
    let mut x = AlgebraElement::zero(qv.clone(), cap);
    for (v, ch, c) in terms {
        let w = walk(qv, v % n, ch);
        let p = if w.is_empty() { Path::trivial(v % n) } else { Path::from_arrows(qv, &w).unwrap() };
        if p.len() <= cap {
            x.add_term(p, q(*c));
        }
    }
    x
}

pub fn terms() -> impl Strategy<Value = Vec<(usize, Vec<usize>, i64)>> {
    prop::collection::vec((any::<usize>(), prop::collection::vec(any::<usize>(), 0..5), -3i64..=3), 0..5)
}

pub fn euler_identity() -> Result<(), String> {
    run(cycle(), |(q, p)| {
        prop_assert!(euler_identity_holds(&q, &p).unwrap(), "{}", p.display(&q));
        Ok(())
    })
}

pub fn associativity() -> Result<(), String> {
    run((shape(), terms(), terms(), terms()), |((n, m), a, b, c)| {
        let q = Arc::new(build_anm(n, m).unwrap());
        let (x, y, z) = (element_in(&q, 9, &a), element_in(&q, 9, &b), element_in(&q, 9, &c));
        let left = nc_mul(&nc_mul(&x, &y).unwrap(), &z).unwrap();
        let right = nc_mul(&x, &nc_mul(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        Ok(())
    })
}

fn models() -> &'static [Arc<JacobianModel>] {
    static M: OnceLock<Vec<Arc<JacobianModel>>> = OnceLock::new();
    M.get_or_init(|| {
        [CaseId::A2Empty, CaseId::A2Twelve(TwelveVariant::Displayed), CaseId::A2Twelve(TwelveVariant::Family), CaseId::A3Empty]
            .into_iter()
            .map(|c| case_model(c).unwrap())
            .collect()
    })
}

pub fn normal_form_idempotent() -> Result<(), String> {
    run((0..models().len(), terms(), terms()), |(i, a, b)| {
        let m = &models()[i];
        let x = &element_in(m.quiver(), m.cap(), &a) + &element_in(m.quiver(), m.cap(), &b);
        let nf = m.normal_form(&x).unwrap();
        prop_assert_eq!(m.normal_form(&nf).unwrap(), nf.clone());
        let sum = &m.normal_form(&element_in(m.quiver(), m.cap(), &a)).unwrap() + &m.normal_form(&element_in(m.quiver(), m.cap(), &b)).unwrap();
        prop_assert_eq!(m.normal_form(&sum).unwrap(), nf);
        Ok(())
    })
}

pub fn stabilization() -> Result<(), String> {
    let params = (1usize..=3).prop_flat_map(|n| (Just(n), 0..=n, prop::collection::vec(1i64..=7, 3), prop::collection::vec(1i64..=7, 2)));
    run((params, 10usize..=14, 1usize..=4), |((n, m, k, t), cap, step)| {
        let p = FamilyParams::from_ints(n, m, &k[..m], &t[..n - 1]).unwrap();
        let qp = build_wnm(&p, cap + step).unwrap();
        let lo = truncated_model_with(&qp, ModelOptions::at(cap)).unwrap();
        let hi = truncated_model_with(&qp, ModelOptions::at(cap + step)).unwrap();
        if lo.is_finite() {
            prop_assert!(hi.is_finite());
            prop_assert_eq!(lo.dim(), hi.dim());
        }
        prop_assert!(lo.basis().len() <= hi.basis().len() || lo.is_finite());
        Ok(())
    })
}

/// A valid string module over one of the case models, or `None`.
pub fn random_string(i: usize, start: usize, ch: &[usize]) -> Option<Representation> {
    let m = &models()[i];
    let q = m.quiver();
    let mut vs = vec![start % q.num_vertices()];
    for a in walk(q, vs[0], ch) {
        vs.push(q.target(a));
    }
    let r = Representation::string(m, &vs).ok()?;
    rep_validate(&r).valid.then_some(r)
}

fn string_pair() -> impl Strategy<Value = (usize, usize, Vec<usize>, usize, Vec<usize>)> {
    (
        0..models().len(),
        any::<usize>(),
        prop::collection::vec(any::<usize>(), 0..5),
        any::<usize>(),
        prop::collection::vec(any::<usize>(), 0..5),
    )
}

pub fn g_additivity() -> Result<(), String> {
    run(string_pair(), |(i, s1, c1, s2, c2)| {
        let (Some(x), Some(y)) = (random_string(i, s1, &c1), random_string(i, s2, &c2)) else {
            return Err(TestCaseError::reject("relations fail"));
        };
        let sum = Representation::direct_sum(&[x.clone(), y.clone()]).unwrap();
        prop_assert_eq!(g_vector(&sum).unwrap(), &g_vector(&x).unwrap() + &g_vector(&y).unwrap());
        Ok(())
    })
}

pub fn hom_from_projectives() -> Result<(), String> {
    run(string_pair(), |(i, s1, c1, s2, c2)| {
        let (Some(x), Some(y)) = (random_string(i, s1, &c1), random_string(i, s2, &c2)) else {
            return Err(TestCaseError::reject("relations fail"));
        };
        let sum = Representation::direct_sum(&[x, y]).unwrap();
        for (v, p) in projectives(&models()[i]).unwrap().iter().enumerate() {
            prop_assert_eq!(hom_dim(p, &sum).unwrap(), sum.dims()[v]);
        }
        Ok(())
    })
}

pub const SUITES: [(&str, fn() -> Result<(), String>); 6] = [
    ("Euler path identity", euler_identity),
    ("nc_mul associativity", associativity),
    ("normal_form idempotence", normal_form_idempotent),
    ("stabilization monotonicity", stabilization),
    ("g-vector additivity", g_additivity),
    ("hom_dim(P_i, M) = d_i", hom_from_projectives),
];
