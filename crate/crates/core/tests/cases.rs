use std::collections::BTreeMap;
use std::sync::Arc;

use qpcat::ccmap::{cc, verify_case, LaurentPoly};
use qpcat::jacobian::JacobianModel;
use qpcat::linalg::Matrix;
use qpcat::repmod::{
    case_model, catalog_names, gr_euler, grass_counts, hom_dim, is_tau_rigid, min_presentation, catalog_module, projectives, rep_validate, tau,
    CaseId, CountOptions, Representation, TwelveVariant,
};

const DISPLAYED: CaseId = CaseId::A2Twelve(TwelveVariant::Displayed);
const FAMILY: CaseId = CaseId::A2Twelve(TwelveVariant::Family);

fn lp(s: &str, n: usize) -> LaurentPoly {
    LaurentPoly::parse_in(s, n).unwrap()
}

/// Successor-closed node sets of a tree module, by dimension vector.
fn closed_subsets(nodes: &[usize], edges: &[(usize, usize)], n: usize) -> BTreeMap<Vec<usize>, i64> {
    let mut out = BTreeMap::new();
    for mask in 0u32..(1 << nodes.len()) {
        if edges.iter().all(|&(x, y)| mask & (1 << x) == 0 || mask & (1 << y) != 0) {
            let mut e = vec![0; n];
            for (i, &v) in nodes.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    e[v] += 1;
                }
            }
            *out.entry(e).or_insert(0) += 1;
        }
    }
    out
}

fn euler_table(r: &Representation, opts: &CountOptions) -> BTreeMap<Vec<usize>, i64> {
    grass_counts(r, opts).unwrap().into_iter().filter(|g| g.euler != 0).map(|g| (g.e, g.euler)).collect()
}

fn string_edges(len: usize) -> Vec<(usize, usize)> {
    (1..len).map(|i| (i - 1, i)).collect()
}

#[test]
fn catalog_dimensions() {
    let m = case_model(CaseId::A2Empty).unwrap();
    assert_eq!(catalog_module(&m, CaseId::A2Empty, "P1").unwrap().dims(), &[3, 2]);
    let m = case_model(DISPLAYED).unwrap();
    assert_eq!(catalog_module(&m, DISPLAYED, "E1").unwrap().dims(), &[2, 0]);
    assert_eq!(catalog_module(&m, DISPLAYED, "P1").unwrap().dims(), &[4, 2]);
    let m = case_model(CaseId::A3Empty).unwrap();
    let expect: [(&str, [usize; 3]); 5] = [
        ("M_[0,3,2]", [0, 3, 2]),
        ("M_[2,3,0]", [2, 3, 0]),
        ("M_[3,2,0]", [3, 2, 0]),
        ("M_[0,2,3]", [0, 2, 3]),
        ("M_[2,1,2]", [2, 1, 2]),
    ];
    for (name, d) in expect {
        assert_eq!(catalog_module(&m, CaseId::A3Empty, name).unwrap().dims(), &d);
    }
    assert!(catalog_module(&m, CaseId::A3Empty, "Q7").is_err());
}

#[test]
fn projective_of_a2_is_the_displayed_string() {
    let m = case_model(CaseId::A2Empty).unwrap();
    let s = Representation::string(&m, &[0, 1, 0, 1, 0]).unwrap();
    let p = projectives(&m).unwrap().swap_remove(0);
    let opts = CountOptions::default();
    assert_eq!(euler_table(&s, &opts), euler_table(&p, &opts));
    assert_eq!(euler_table(&s, &opts), closed_subsets(&[0, 1, 0, 1, 0], &string_edges(5), 2));
    assert_eq!(hom_dim(&p, &s).unwrap(), 3);
    assert_eq!(hom_dim(&s, &p).unwrap(), hom_dim(&p, &p).unwrap());
}

#[test]
fn string_and_tree_counts_match_closed_subsets() {
    let m = case_model(CaseId::A3Empty).unwrap();
    let opts = CountOptions::default();
    for (name, nodes) in [
        ("M_[0,3,2]", vec![1, 2, 1, 2, 1]),
        ("M_[2,3,0]", vec![1, 0, 1, 0, 1]),
        ("M_[3,2,0]", vec![0, 1, 0, 1, 0]),
        ("M_[0,2,3]", vec![2, 1, 2, 1, 2]),
    ] {
        let r = catalog_module(&m, CaseId::A3Empty, name).unwrap();
        assert_eq!(euler_table(&r, &opts), closed_subsets(&nodes, &string_edges(5), 3), "{name}");
    }
    let r = catalog_module(&m, CaseId::A3Empty, "M_[2,1,2]").unwrap();
    let oracle = closed_subsets(&[0, 1, 0, 2, 2], &[(0, 1), (1, 2), (3, 1), (1, 4)], 3);
    assert_eq!(oracle.values().sum::<i64>(), 8);
    assert_eq!(euler_table(&r, &opts), oracle);
    for d in [DISPLAYED, FAMILY] {
        let m = case_model(d).unwrap();
        let e1 = catalog_module(&m, d, "E1").unwrap();
        assert_eq!(euler_table(&e1, &opts), closed_subsets(&[0, 0], &string_edges(2), 2));
    }
}

#[test]
fn projective_counts_do_not_depend_on_the_primes() {
    let m = case_model(CaseId::A3Empty).unwrap();
    let far = CountOptions { primes: Some((101u64..).filter(|&p| qpcat::linalg::fp::is_prime(p)).take(16).collect()), ..CountOptions::default() };
    for (i, total) in [(0, 12), (1, 36), (2, 12)] {
        let p = projectives(&m).unwrap().swap_remove(i);
        let near = euler_table(&p, &CountOptions::default());
        assert_eq!(near, euler_table(&p, &far), "P{}", i + 1);
        assert_eq!(near.values().sum::<i64>(), total, "P{}", i + 1);
    }
}

#[test]
fn euler_at_extremes() {
    let m = case_model(CaseId::A2Empty).unwrap();
    let p1 = projectives(&m).unwrap().swap_remove(0);
    let opts = CountOptions::default();
    assert_eq!(gr_euler(&p1, &[0, 0], &opts).unwrap(), 1);
    assert_eq!(gr_euler(&p1, &[3, 2], &opts).unwrap(), 1);
    assert_eq!(gr_euler(&p1, &[1, 1], &opts).unwrap(), 1);
    assert_eq!(gr_euler(&p1, &[0, 1], &opts).unwrap(), 0);
    let s1 = Representation::simple(&m, 0);
    assert_eq!(gr_euler(&s1, &[1, 0], &opts).unwrap(), 1);
    let few = CountOptions { primes: Some(vec![5]), ..CountOptions::default() };
    assert!(grass_counts(&p1, &few).is_err());
}

#[test]
fn top_multiplicities_are_homs_to_simples() {
    let m = case_model(CaseId::A3Empty).unwrap();
    for name in catalog_names(CaseId::A3Empty) {
        let r = catalog_module(&m, CaseId::A3Empty, name).unwrap();
        let pres = min_presentation(&r).unwrap();
        for v in 0..3 {
            assert_eq!(pres.a[v], hom_dim(&r, &Representation::simple(&m, v)).unwrap(), "{name}");
        }
    }
}

fn reversed(r: &Representation, model: &Arc<JacobianModel>) -> Representation {
    let perm = |d: usize| {
        let mut p = Matrix::zeros(d, d);
        for i in 0..d {
            p.set(i, d - 1 - i, qpcat::coeff::q(1));
        }
        p
    };
    let q = model.quiver();
    let maps = q.arrows().iter().zip(r.maps()).map(|(a, m)| perm(r.dims()[a.target]).mul(m).mul(&perm(r.dims()[a.source]))).collect();
    Representation::new(model, r.dims().to_vec(), maps).unwrap()
}

#[test]
fn tau_is_basis_independent_and_additive() {
    let m = case_model(CaseId::A3Empty).unwrap();
    for name in ["M_[2,1,2]", "M_[0,3,2]", "S2"] {
        let r = catalog_module(&m, CaseId::A3Empty, name).unwrap();
        let t = tau(&r).unwrap();
        assert!(rep_validate(&t).valid);
        assert_eq!(tau(&reversed(&r, &m)).unwrap().dims(), t.dims(), "{name}");
    }
    let a = catalog_module(&m, CaseId::A3Empty, "S1").unwrap();
    let b = catalog_module(&m, CaseId::A3Empty, "M_[2,3,0]").unwrap();
    let sum = Representation::direct_sum(&[a.clone(), b.clone()]).unwrap();
    let td: Vec<usize> = tau(&a).unwrap().dims().iter().zip(tau(&b).unwrap().dims()).map(|(x, y)| x + y).collect();
    assert_eq!(tau(&sum).unwrap().dims(), td.as_slice());
    for p in projectives(&m).unwrap() {
        assert!(tau(&p).unwrap().is_zero());
    }
}

#[test]
fn non_rigid_modules_are_detected() {
    let m = case_model(CaseId::A3Empty).unwrap();
    let s = Representation::string(&m, &[0, 1, 0]).unwrap();
    assert!(!is_tau_rigid(&s).unwrap());
}

#[test]
fn a2_empty_matches_both_lists() {
    let r = verify_case(CaseId::A2Empty, &CountOptions::default()).unwrap();
    assert!(r.all_matched, "{:?}", r.discrepancies);
    assert_eq!(r.jacobian_dim, 10);
    let got: Vec<String> = r.modules.iter().map(|m| m.cc.to_string()).collect();
    assert_eq!(got, ["2*x2/x1", "2*x1/x2", "6/x1", "6/x2"]);
}

#[test]
fn both_a2_12_potentials_match() {
    for case in [DISPLAYED, FAMILY] {
        let r = verify_case(case, &CountOptions::default()).unwrap();
        assert!(r.all_matched, "{case}: {:?}", r.discrepancies);
        assert_eq!(r.jacobian_dim, 12);
    }
    let r = verify_case(DISPLAYED, &CountOptions::default()).unwrap();
    assert!(!r.potential.contains("a1*b1*a1*b1*a1*b1"));
}

#[test]
fn a3_empty_resolves_the_lists() {
    let r = verify_case(CaseId::A3Empty, &CountOptions::default()).unwrap();
    let cc_of = |name: &str| r.modules.iter().find(|m| m.name == name).unwrap().cc.clone();
    assert_eq!(cc_of("S1"), lp("2*x2/x1", 3));
    assert_eq!(cc_of("S2"), lp("2*x1*x3/x2", 3));
    assert_eq!(cc_of("M_[2,1,2]"), lp("8*x2/(x1*x3)", 3));
    assert_eq!(cc_of("S3"), lp("2*x2/x3", 3));
    assert_eq!(cc_of("M_[0,2,3]"), lp("6*x1/x3", 3));
    assert_eq!(cc_of("P2"), lp("36/x2", 3));
    assert_eq!(cc_of("P3"), lp("12/x3", 3));
    assert!(r.all_tau_rigid && r.distinct);
    assert!(r.modules.iter().all(|m| m.g_matches_list));
    assert_eq!(r.unmatched_generators, vec![lp("2*x1/x2", 3)]);
    assert_eq!(r.discrepancies.len(), 5, "{:?}", r.discrepancies);
    for m in &r.modules {
        let (c, e) = m.cc.as_monomial().unwrap();
        assert!(c.is_integer() && *c >= qpcat::coeff::q(2));
        assert_eq!(e, m.g_vector.0.iter().map(|x| -x).collect::<Vec<_>>().as_slice());
    }
}

#[test]
fn zero_module_has_cc_one() {
    let m = case_model(CaseId::A2Empty).unwrap();
    assert_eq!(cc(&Representation::zero(&m), &CountOptions::default()).unwrap(), LaurentPoly::one(2));
}
