use qpcat::cover::{build_c3_potential, round_trip_holds};
use qpcat::families::{build_wnm, generic_params, FamilyParams};
use qpcat::jacobian::{truncated_model_with, ModelOptions};

fn dim(qp: &qpcat::potential::QuiverWithPotential, cap: usize) -> usize {
    let m = truncated_model_with(&qp.with_cap(cap), ModelOptions::escalating(cap, cap + 16)).unwrap();
    m.dim().expect("finite certificate")
}

#[test]
fn quotient_recovers_the_base() {
    for (n, m) in [(2, 0), (2, 2), (3, 1), (3, 3)] {
        let p = generic_params(n, m).unwrap();
        assert!(round_trip_holds(&p, p.default_cap()).unwrap(), "n={n} m={m}");
    }
}

#[test]
fn cover_triples_the_dimension() {
    for p in [FamilyParams::from_ints(2, 0, &[], &[1]).unwrap(), FamilyParams::from_ints(2, 2, &[2, 1], &[1]).unwrap()] {
        let cap = p.default_cap();
        let base = dim(&build_wnm(&p, cap).unwrap(), cap);
        let (_, cover) = build_c3_potential(&p, cap).unwrap();
        assert_eq!(dim(&cover, cap), 3 * base, "{p:?}");
    }
}
