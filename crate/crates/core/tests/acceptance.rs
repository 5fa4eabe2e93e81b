//! Acceptance harness: one PASS/FAIL line per criterion.
//!
//! Exits nonzero when a criterion fails that is not listed in
//! `KNOWN_FAILING`, or when a listed one starts passing.

mod support;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use qpcat::ccmap::{verify_case, CaseReport, LaurentPoly};
use qpcat::coeff::q;
use qpcat::cover::{build_c3_potential, round_trip_holds};
use qpcat::families::{build_wnm, generic_params, FamilyParams};
use qpcat::jacobian::{truncated_model_with, verify_lemma_relations, verify_zero_relations, CheckStatus, ModelOptions};
use qpcat::mutation::{check_involution, finiteness_transfer, InvolutionStatus};
use qpcat::potential::QuiverWithPotential;
use qpcat::quiver::{Arrow, Quiver};
use qpcat::repmod::{CaseId, CountOptions, TwelveVariant};

/// The loop-cube identity fails at `n = m`; see the decisions ledger.
const KNOWN_FAILING: &[usize] = &[5];

const BUDGET_A2: Duration = Duration::from_secs(10);
const BUDGET_A2_12: Duration = Duration::from_secs(30);
const BUDGET_A3: Duration = Duration::from_secs(300);
const BUDGET_JACOBIAN: Duration = Duration::from_secs(120);
const SUBMODULE_BOUND: usize = 14;
const MAX_N: usize = 6;
const LEMMA_MAX_N: usize = 5;
const MUTATION_CAP: usize = 8;
const MUTATION_CEILING: usize = 16;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn opts() -> CountOptions {
    CountOptions { max_dim: SUBMODULE_BOUND, ..CountOptions::default() }
}

fn cc_list(r: &CaseReport) -> Vec<String> {
    r.modules.iter().map(|m| m.cc.to_string()).collect()
}

fn within(t: Instant, budget: Duration) -> (bool, String) {
    let e = t.elapsed();
    (e < budget, format!("{:.2}s of {}s", e.as_secs_f64(), budget.as_secs()))
}

fn criterion_1() -> Outcome {
    let t = Instant::now();
    let r = match verify_case(CaseId::A2Empty, &opts()) {
        Ok(r) => r,
        Err(e) => return outcome(false, e.to_string()),
    };
    let want = ["2*x2/x1", "2*x1/x2", "6/x1", "6/x2"];
    let g_ok = r.modules.iter().all(|m| m.g_matches_list);
    let (fast, time) = within(t, BUDGET_A2);
    outcome(cc_list(&r) == want && g_ok && fast, format!("cc = {:?}, g-vectors match: {g_ok}, {time}", cc_list(&r)))
}

fn criterion_2() -> Outcome {
    let t = Instant::now();
    let want = ["3*x2/x1", "3*x1/x2", "9/x1", "9/x2"];
    let mut matched = Vec::new();
    for case in [CaseId::A2Twelve(TwelveVariant::Displayed), CaseId::A2Twelve(TwelveVariant::Family)] {
        match verify_case(case, &opts()) {
            Ok(r) if cc_list(&r) == want => matched.push(format!("{} (W = {})", r.case, r.potential)),
            Ok(r) => matched.push(format!("{} gave {:?}", r.case, cc_list(&r))),
            Err(e) => return outcome(false, e.to_string()),
        }
    }
    let ok = matched.iter().any(|m| m.contains("(W ="));
    let (fast, time) = within(t, BUDGET_A2_12);
    outcome(ok && fast, format!("matched by {}, {time}", matched.join("; ")))
}

fn criterion_3() -> Outcome {
    let t = Instant::now();
    let r = match verify_case(CaseId::A3Empty, &opts()) {
        Ok(r) => r,
        Err(e) => return outcome(false, e.to_string()),
    };
    let cc = |name: &str| r.modules.iter().find(|m| m.name == name).map(|m| m.cc.clone());
    let exact = [("S1", "2*x2/x1"), ("S2", "2*x1*x3/x2"), ("M_[2,1,2]", "8*x2/(x1*x3)")]
        .iter()
        .all(|(n, v)| cc(n) == LaurentPoly::parse_in(v, 3).ok());
    let monomials = r.modules.iter().all(|m| {
        m.cc.as_monomial().is_some_and(|(c, _)| c.is_integer() && *c > q(0))
    });
    let flagged = r.modules.iter().all(|m| {
        let eq_flag = m.matches_cc_list || r.discrepancies.iter().any(|d| d.starts_with(&format!("CC({}) = {} but", m.name, m.cc)));
        let gen_flag = m.in_generator_list || r.discrepancies.iter().any(|d| d.starts_with(&format!("CC({}) = {} is not", m.name, m.cc)));
        eq_flag && gen_flag
    }) && r.unmatched_generators.iter().all(|g| r.discrepancies.iter().any(|d| d.contains(&g.to_string())));
    let (fast, time) = within(t, BUDGET_A3);
    outcome(
        exact && monomials && r.distinct && flagged && fast,
        format!("{} values, distinct: {}, {} discrepancies flagged, {time}", r.modules.len(), r.distinct, r.discrepancies.len()),
    )
}

fn criterion_4() -> Outcome {
    let t = Instant::now();
    let dim_of = |p: &FamilyParams| {
        let cap = p.default_cap();
        truncated_model_with(&build_wnm(p, cap)?, ModelOptions::escalating(cap, cap + 8)).map(|m| m.dim())
    };
    let a2 = dim_of(&FamilyParams::from_ints(2, 0, &[], &[1]).unwrap());
    let a212 = dim_of(&FamilyParams::from_ints(2, 2, &[2, 1], &[1]).unwrap());
    let mut bad = Vec::new();
    let mut count = 0;
    for n in 1..=MAX_N {
        for m in (0..=n).filter(|m| (n - m) % 2 == 0) {
            count += 1;
            match generic_params(n, m).and_then(|p| dim_of(&p)) {
                Ok(Some(_)) => {}
                other => bad.push(format!("({n},{m}): {other:?}")),
            }
        }
    }
    let (fast, time) = within(t, BUDGET_JACOBIAN);
    outcome(
        a2 == Ok(Some(10)) && a212 == Ok(Some(12)) && bad.is_empty() && fast,
        format!("dims {a2:?} and {a212:?}, {count} families finite except {bad:?}, {time}"),
    )
}

fn criterion_5() -> Outcome {
    let mut failures = Vec::new();
    let mut ran = 0;
    for n in 1..=MAX_N {
        for m in 0..=n {
            let p = match generic_params(n, m) {
                Ok(p) => p,
                Err(e) => return outcome(false, e.to_string()),
            };
            let mut reports = vec![verify_zero_relations(&p, p.default_cap())];
            if n <= LEMMA_MAX_N {
                reports.push(verify_lemma_relations(&p, p.default_cap()));
            }
            for r in reports {
                let r = match r {
                    Ok(r) => r,
                    Err(e) => return outcome(false, format!("({n},{m}): {e}")),
                };
                for c in r.checks.iter().filter(|c| c.status != CheckStatus::Skipped) {
                    ran += 1;
                    if c.status != CheckStatus::Pass {
                        failures.push(format!("{}@({n},{m}) {:?}", c.name, c.status));
                    }
                }
            }
        }
    }
    let detail = if failures.is_empty() {
        format!("{ran} applicable checks pass")
    } else {
        format!("{} of {ran} checks fail: {}", failures.len(), failures.join(", "))
    };
    outcome(failures.is_empty(), detail)
}

fn golden_mutation_set() -> Vec<(String, QuiverWithPotential, Vec<usize>)> {
    let mut v = vec![(
        "A2".to_string(),
        QuiverWithPotential::with_zero(Quiver::new(2, vec![Arrow::new("x1", 0, 1)]).unwrap(), MUTATION_CAP),
        vec![0, 1],
    )];
    for o in [[true, true], [true, false], [false, true], [false, false]] {
        let arrows = (0..2)
            .map(|i| if o[i] { Arrow::new(format!("x{}", i + 1), i, i + 1) } else { Arrow::new(format!("x{}", i + 1), i + 1, i) })
            .collect();
        v.push((format!("A3{o:?}"), QuiverWithPotential::with_zero(Quiver::new(3, arrows).unwrap(), MUTATION_CAP), vec![0, 1, 2]));
    }
    v
}

fn criterion_6() -> Outcome {
    let mut bad = Vec::new();
    let mut count = 0;
    for (name, qp, ks) in golden_mutation_set() {
        for k in ks {
            count += 1;
            match check_involution(&qp, k, MUTATION_CAP) {
                Ok(r) if r.status == InvolutionStatus::Pass => {}
                other => bad.push(format!("{name}@{k} involution {other:?}")),
            }
            match finiteness_transfer(&qp, k, MUTATION_CAP, MUTATION_CEILING) {
                Ok((true, true)) => {}
                other => bad.push(format!("{name}@{k} transfer {other:?}")),
            }
        }
    }
    outcome(bad.is_empty(), format!("{count} vertex checks, failures {bad:?}"))
}

fn criterion_7() -> Outcome {
    let mut bad = Vec::new();
    for (n, m) in [(2, 0), (2, 2), (3, 1), (3, 3)] {
        let p = generic_params(n, m).unwrap();
        if !round_trip_holds(&p, p.default_cap()).unwrap_or(false) {
            bad.push(format!("quotient ({n},{m})"));
        }
    }
    let mut ratios = Vec::new();
    for p in [FamilyParams::from_ints(2, 0, &[], &[1]).unwrap(), FamilyParams::from_ints(2, 2, &[2, 1], &[1]).unwrap()] {
        let cap = p.default_cap();
        let opts = ModelOptions::escalating(cap, cap + 16);
        let base = truncated_model_with(&build_wnm(&p, cap).unwrap(), opts).ok().and_then(|m| m.dim());
        let cover = build_c3_potential(&p, cap).ok().and_then(|(_, qp)| truncated_model_with(&qp, opts).ok()).and_then(|m| m.dim());
        ratios.push(format!("({},{}): {cover:?} / {base:?}", p.n, p.m));
        if base.is_none() || cover != base.map(|b| 3 * b) {
            bad.push(format!("dimension ({},{})", p.n, p.m));
        }
    }
    outcome(bad.is_empty(), format!("dims {}, failures {bad:?}", ratios.join(", ")))
}

fn criterion_8() -> Outcome {
    let mut bad = Vec::new();
    for (name, suite) in support::SUITES {
        if let Err(e) = suite() {
            bad.push(format!("{name}: {e}"));
        }
    }
    outcome(
        bad.is_empty(),
        format!("{} suites x {} instances, seed {:#x}, failures {bad:?}", support::SUITES.len(), support::CASES, support::SEED),
    )
}

fn main() -> ExitCode {
    let criteria: [(usize, &str, fn() -> Outcome); 8] = [
        (1, "A2-empty CC values and g-vectors", criterion_1),
        (2, "A2-12 CC values", criterion_2),
        (3, "A3-empty CC values", criterion_3),
        (4, "Jacobian finiteness", criterion_4),
        (5, "zero-relation and lemma suites", criterion_5),
        (6, "mutation involution and finiteness transfer", criterion_6),
        (7, "Z3 covering", criterion_7),
        (8, "property suites", criterion_8),
    ];
    let mut unexpected = Vec::new();
    for (i, name, f) in criteria {
        let t = Instant::now();
        let o = f();
        let known = KNOWN_FAILING.contains(&i);
        let tag = if o.pass { "PASS" } else { "FAIL" };
        let note = match (o.pass, known) {
            (false, true) => " [known failure, see the decisions ledger]",
            (true, true) => " [listed as known failing but passed]",
            _ => "",
        };
        println!("criterion {i}: {tag} {name} ({:.2}s){note}", t.elapsed().as_secs_f64());
        println!("    {}", o.detail);
        if o.pass == known {
            unexpected.push(i);
        }
    }
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected outcome for criteria {unexpected:?}");
        ExitCode::FAILURE
    }
}
