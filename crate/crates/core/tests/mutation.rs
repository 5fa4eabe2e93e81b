use std::sync::Arc;

use qpcat::coeff::q;
use qpcat::cover::build_c3_potential;
use qpcat::families::FamilyParams;
use qpcat::jacobian::{truncated_model_with, ModelOptions};
use qpcat::mutation::{check_involution, finiteness_transfer, mutate, mutate_sequence, premutate, split_trivial_reduced, InvolutionStatus};
use qpcat::path::Path;
use qpcat::potential::{Potential, QuiverWithPotential};
use qpcat::quiver::{Arrow, Quiver};

fn a3(forward: [bool; 2]) -> QuiverWithPotential {
    let arrows = (0..2)
        .map(|i| if forward[i] { Arrow::new(format!("x{}", i + 1), i, i + 1) } else { Arrow::new(format!("x{}", i + 1), i + 1, i) })
        .collect();
    QuiverWithPotential::with_zero(Quiver::new(3, arrows).unwrap(), 8)
}

fn golden() -> Vec<(String, QuiverWithPotential, Vec<usize>)> {
    let mut v = vec![(
        "A2".to_string(),
        QuiverWithPotential::with_zero(Quiver::new(2, vec![Arrow::new("x1", 0, 1)]).unwrap(), 8),
        vec![0, 1],
    )];
    for o in [[true, true], [true, false], [false, true], [false, false]] {
        v.push((format!("A3{o:?}"), a3(o), vec![0, 1, 2]));
    }
    let qv = Arc::new(Quiver::new(3, vec![Arrow::new("a", 0, 1), Arrow::new("b", 1, 2), Arrow::new("c", 2, 0)]).unwrap());
    let abc = Path::from_names(&qv, &["a", "b", "c"]).unwrap();
    let tri = QuiverWithPotential::new(qv.clone(), Potential::from_cycles(qv, 8, [(q(1), abc)]).unwrap()).unwrap();
    v.push(("triangle".into(), tri, vec![0, 1, 2]));
    v
}

#[test]
fn involution_on_the_golden_set() {
    for (name, qp, ks) in golden() {
        for k in ks {
            let r = check_involution(&qp, k, 8).unwrap();
            assert_eq!(r.status, InvolutionStatus::Pass, "{name} at {k}: {r:?}");
        }
    }
}

#[test]
fn finiteness_transfers_under_premutation() {
    for (name, qp, ks) in golden() {
        for k in ks {
            let (before, after) = finiteness_transfer(&qp, k, 8, 16).unwrap();
            assert!(before, "{name}");
            assert!(after, "{name} premutated at {k}");
        }
    }
}

#[test]
fn linear_a3_mutation_creates_a_triangle() {
    let mu = mutate(&a3([true, true]), 1).unwrap();
    assert_eq!(mu.quiver.num_arrows(), 3);
    assert_eq!(mu.potential.terms().len(), 1);
    assert!(!mu.quiver.has_two_cycles());
}

#[test]
fn hexagon_mutation_is_two_acyclic() {
    let p = FamilyParams::from_ints(2, 0, &[], &[1]).unwrap();
    let (_, hex) = build_c3_potential(&p, 8).unwrap();
    let mu = mutate(&hex, 0).unwrap();
    assert!(!mu.quiver.has_two_cycles());
    assert!(!mu.quiver.has_loops());
    let before = truncated_model_with(&hex, ModelOptions::escalating(12, 16)).unwrap();
    let pre = truncated_model_with(&premutate(&hex, 0).unwrap().with_cap(12), ModelOptions::escalating(12, 16)).unwrap();
    assert!(before.is_finite() && pre.is_finite());
    let back = mutate(&mu, 0).unwrap();
    assert_eq!(back.quiver.num_arrows(), hex.quiver.num_arrows());
}

#[test]
fn trivial_part_is_semisimple() {
    let twice = premutate(&premutate(&a3([true, true]), 1).unwrap(), 1).unwrap();
    let s = split_trivial_reduced(&twice).unwrap();
    let m = truncated_model_with(&s.trivial.with_cap(4), ModelOptions::at(4)).unwrap();
    assert_eq!(m.dim(), Some(3));
}

#[test]
fn sequences_compose() {
    let qp = a3([true, true]);
    let twice = mutate_sequence(&qp, &[1, 1]).unwrap();
    assert_eq!(twice.quiver.num_arrows(), 2);
    assert!(mutate_sequence(&qp, &[1, 0]).is_ok());
}
