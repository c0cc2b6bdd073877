//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line. Every tolerance is exact equality of integer coefficients; every
//! order and bound is pinned here.
//!
//! Criterion 4 asserts the modular relations as stated. Its X-family
//! series clause and the even-index/odd-power corner of the Y-family sign
//! rule are false as stated (the companion test
//! `modular_relations_corrected_forms` verifies what is actually true),
//! so that test fails by design and documents the defect.

use std::time::Instant;

use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use qseries::cf::{certify, CfFamily, CfId, NamedCf};
use qseries::dissection::{table_rows, theorem_claims, verify_dissection, verify_row, DissectionSpec};
use qseries::identities::{
    all_cases, corrupted_case, proof_steps, theta_specs_catalog, verify_case, verify_modular,
};
use qseries::partitions::{
    identity_d, identity_k, verify_partition_identity, verify_series_chain,
};
use qseries::report::CheckStatus;
use qseries::series::LatticeSeries;
use qseries::theta::{theta_product, theta_sum};

fn announce(criterion: u32, ok: bool, detail: &str, started: Instant) {
    println!(
        "[criterion {criterion}] {} — {detail} ({} ms)",
        if ok { "PASS" } else { "FAIL" },
        started.elapsed().as_millis()
    );
}

#[test]
fn criterion_1_theta_cross_check() {
    let started = Instant::now();
    let catalog = theta_specs_catalog();
    assert!(catalog.len() >= 40, "catalog has only {} specs", catalog.len());
    let mut failures = Vec::new();
    for spec in &catalog {
        let order = 60 * i64::from(spec.denom());
        let sum = theta_sum(spec, order).expect("sum route");
        let product = theta_product(spec, order).expect("product route");
        if !sum.eq_window(&product).expect("same lattice") {
            failures.push(spec.to_string());
        }
    }
    let ok = failures.is_empty();
    let within_budget = started.elapsed().as_secs() < 10;
    announce(
        1,
        ok && within_budget,
        &format!("{} theta specs, sum route == product route through q^60", catalog.len()),
        started,
    );
    assert!(ok, "route mismatch for: {failures:?}");
    assert!(within_budget, "exceeded the 10 s budget");
}

#[test]
fn criterion_2_cf_certificates() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let mut depths = Vec::new();
    for id in CfId::all() {
        let denom = NamedCf::new(id).denom();
        let cert = certify(id, 60 * i64::from(denom), 80);
        match (cert.status, cert.depth) {
            (CheckStatus::Pass, Some(depth)) => depths.push(format!("{id}:{depth}")),
            _ => failures.push(format!("{id}: {:?} {:?}", cert.status, cert.first_mismatch)),
        }
    }
    let ok = failures.is_empty();
    let within_budget = started.elapsed().as_secs() < 60;
    announce(
        2,
        ok && within_budget,
        &format!("16 certificates through q^60, smallest depths {}", depths.join(" ")),
        started,
    );
    assert!(ok, "uncertified fractions: {failures:?}");
    assert!(within_budget, "exceeded the 60 s budget");
}

#[test]
fn criterion_3_sum_difference_identities() {
    let started = Instant::now();
    let mut failures = Vec::new();
    for case in all_cases() {
        // quarter-lattice cases at 100 units (>= 50 required), integer
        // cases through q^120
        let report = verify_case(&case, None);
        assert!(report.order >= if case.denom == 4 { 50 } else { 120 });
        if report.status != CheckStatus::Pass {
            failures.push(format!("{}: {:?}", report.case, report.first_mismatch));
        }
        let control = corrupted_case(&case.id).expect("control builds");
        let control_report = verify_case(&control, None);
        if control_report.status != CheckStatus::Fail {
            failures.push(format!("negative control {} did not fail", control.id));
        }
    }
    for step in proof_steps(160) {
        if step.status != CheckStatus::Pass {
            failures.push(format!("proof step {}: {:?}", step.case, step.first_mismatch));
        }
    }
    let ok = failures.is_empty();
    let within_budget = started.elapsed().as_secs() < 60;
    announce(
        3,
        ok && within_budget,
        "32 identities verified, 32 corrupted controls failed, proof steps verified",
        started,
    );
    assert!(ok, "{failures:?}");
    assert!(within_budget, "exceeded the 60 s budget");
}

#[test]
fn criterion_4_modular_relations_as_stated() {
    let started = Instant::now();
    let mut failures = Vec::new();
    for i in 1u8..=8 {
        for n in [4u32, 8] {
            let r = verify_modular(CfFamily::X, i, n, 60).expect("valid parameters");
            if r.strict_series != CheckStatus::Pass {
                failures.push(format!(
                    "X{i} n={n}: strict series fails at {:?} (conjugate form: {:?})",
                    r.strict_mismatch.map(|m| m.exp_num),
                    r.conjugate_series
                ));
            }
            if !r.sign_matches_stated {
                failures.push(format!("X{i} n={n}: sign bookkeeping disagrees"));
            }
        }
        for n in [1u32, 2, 3] {
            let r = verify_modular(CfFamily::Y, i, n, 100).expect("valid parameters");
            if r.strict_series != CheckStatus::Pass {
                failures.push(format!("Y{i} n={n}: strict series fails"));
            }
            if !r.sign_matches_stated {
                failures.push(format!(
                    "Y{i} n={n}: computed sign {} vs stated parity-rule sign {}",
                    r.computed_sign, r.stated_sign
                ));
            }
        }
    }
    let ok = failures.is_empty();
    announce(
        4,
        ok,
        "modular relations in their stated form (see modular_relations_corrected_forms)",
        started,
    );
    assert!(
        ok,
        "the stated relations fail for {} of 40 cases:\n{}",
        failures.len(),
        failures.join("\n")
    );
}

/// Companion to criterion 4: the corrected readings hold exactly.
/// X-family: the relation holds with the sign-conjugate companion series
/// in place of the literal q -> -q substitution. Y-family: the literal
/// substitution works and the sign is (-1)^{n·i}, which matches the stated
/// parity rule exactly when i is odd or n is even.
#[test]
fn modular_relations_corrected_forms() {
    let started = Instant::now();
    for i in 1u8..=8 {
        for n in [4u32, 8] {
            let r = verify_modular(CfFamily::X, i, n, 60).expect("valid parameters");
            assert_eq!(r.conjugate_series, CheckStatus::Pass, "X{i} n={n} conjugate");
            assert_eq!(r.computed_sign, if (n / 4) % 2 == 1 { -1 } else { 1 }, "X{i} n={n}");
            assert!(r.sign_matches_stated, "X{i} n={n}");
            assert_eq!(r.status, CheckStatus::RefutedAsPrinted, "X{i} n={n}");
        }
        for n in [1u32, 2, 3] {
            let r = verify_modular(CfFamily::Y, i, n, 100).expect("valid parameters");
            assert_eq!(r.strict_series, CheckStatus::Pass, "Y{i} n={n} strict");
            assert_eq!(r.conjugate_series, CheckStatus::Pass, "Y{i} n={n} conjugate");
            let expect = if (n * u32::from(i)) % 2 == 1 { -1 } else { 1 };
            assert_eq!(r.computed_sign, expect, "Y{i} n={n}");
            assert_eq!(r.empirical_sign, Some(expect), "Y{i} n={n} empirical");
            assert_eq!(
                r.status,
                if expect == (if n % 2 == 1 { -1 } else { 1 }) {
                    CheckStatus::Pass
                } else {
                    CheckStatus::RefutedAsPrinted
                },
                "Y{i} n={n}"
            );
        }
    }
    println!(
        "[criterion 4 companion] PASS — corrected modular relations hold exactly ({} ms)",
        started.elapsed().as_millis()
    );
}

#[test]
fn criterion_5_dissection_instantiations() {
    let started = Instant::now();
    let first = verify_dissection(&DissectionSpec::new(34, 9, 17, 17).unwrap(), 300).unwrap();
    let second = verify_dissection(&DissectionSpec::new(68, 3, 34, 34).unwrap(), 300).unwrap();
    let ok = first.status == CheckStatus::Pass && second.status == CheckStatus::Pass;
    announce(5, ok, "both dissection instantiations exact through q^300", started);
    assert_eq!(first.status, CheckStatus::Pass, "{:?}", first.first_mismatch);
    assert_eq!(second.status, CheckStatus::Pass, "{:?}", second.first_mismatch);
}

#[test]
fn criterion_6_vanishing_scans() {
    let started = Instant::now();
    let bound = 600;
    let mut failures = Vec::new();
    let mut rows = 0;

    for row in theorem_claims().iter().chain(table_rows(CfFamily::X).iter()).chain(table_rows(CfFamily::Y).iter()) {
        rows += 1;
        match verify_row(row, bound) {
            Ok(report) => {
                if report.status != CheckStatus::Pass {
                    failures.push(format!("{}: {}", report.label, report.status));
                    continue;
                }
                // the two routes must both have run and agreed for the
                // vanishing orientation
                if report.dissection_agrees != Some(true) {
                    failures.push(format!("{}: dissection route missing or diverged", report.label));
                }
            }
            Err(e) => failures.push(format!("{}: {e}", row.label)),
        }
    }

    let ok = failures.is_empty();
    let within_budget = started.elapsed().as_secs() < 120;
    announce(
        6,
        ok && within_budget,
        &format!("{rows} progressions scanned to q^600, per-term and raw routes agree"),
        started,
    );
    assert!(ok, "{failures:?}");
    assert!(within_budget, "exceeded the 120 s budget");
}

#[test]
fn criterion_7_partition_counts_and_identities() {
    let started = Instant::now();
    let d = identity_d();
    let k = identity_k();

    // printed worked examples
    let d1 = d.terms[0].spec.count_gf(16).unwrap();
    let d2 = d.terms[1].spec.count_gf(0).unwrap();
    let d3 = d.terms[2].spec.count_gf(16).unwrap();
    assert_eq!(d1[16], BigInt::from(18));
    assert_eq!(d2[0], BigInt::from(1));
    assert_eq!(d3[16], BigInt::from(17));
    let k1 = k.terms[0].spec.count_gf(18).unwrap();
    let k2 = k.terms[1].spec.count_gf(2).unwrap();
    let k3 = k.terms[2].spec.count_gf(18).unwrap();
    assert_eq!(k1[18], BigInt::from(23));
    assert_eq!(k2[2], BigInt::from(0));
    assert_eq!(k3[18], BigInt::from(23));

    // identities through n = 200 (zero everywhere from n = 0, in fact)
    for identity in [&d, &k] {
        let report = verify_partition_identity(identity, 200).unwrap();
        assert_eq!(report.status, CheckStatus::Pass, "{}: {:?}", identity.label, report.violations);
    }

    // generating function vs exhaustive enumeration on 0..40
    for identity in [&d, &k] {
        for term in &identity.terms {
            let gf = term.spec.count_gf(40).unwrap();
            let en = term.spec.count_enumerate(40).unwrap();
            assert_eq!(gf, en, "{}", identity.label);
        }
    }

    // the underlying product-form chain, every step exact
    for report in verify_series_chain(200).unwrap() {
        assert_eq!(report.status, CheckStatus::Pass, "{}: {:?}", report.case, report.first_mismatch);
    }

    announce(7, true, "worked examples, identities to n=200, enumeration oracle to 40", started);
}

fn arb_series(denom: u32) -> impl Strategy<Value = LatticeSeries> {
    (
        -6i64..6,
        proptest::collection::vec(-20i64..20, 0..10),
    )
        .prop_map(move |(floor, cs)| {
            let order = floor + cs.len() as i64 - 1;
            LatticeSeries::from_coeffs(denom, floor, order, cs.into_iter().map(BigInt::from).collect())
                .expect("well-formed window")
        })
}

fn arb_unit_series(denom: u32) -> impl Strategy<Value = LatticeSeries> {
    (
        -4i64..4,
        proptest::bool::ANY,
        proptest::collection::vec(-9i64..9, 0..8),
    )
        .prop_map(move |(floor, neg, mut cs)| {
            cs.insert(0, if neg { -1 } else { 1 });
            let order = floor + cs.len() as i64 - 1;
            LatticeSeries::from_coeffs(denom, floor, order, cs.into_iter().map(BigInt::from).collect())
                .expect("well-formed window")
        })
}

fn runner() -> TestRunner {
    TestRunner::new(Config { cases: 600, ..Config::default() })
}

#[test]
fn criterion_8_kernel_properties() {
    let started = Instant::now();

    // ring laws
    runner()
        .run(&(arb_series(4), arb_series(4), arb_series(4)), |(a, b, c)| {
            let left = a.add(&b).unwrap().add(&c).unwrap();
            let right = a.add(&b.add(&c).unwrap()).unwrap();
            prop_assert!(left.eq_window(&right).unwrap());
            let dist_l = a.mul(&b.add(&c).unwrap()).unwrap();
            let dist_r = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
            prop_assert!(dist_l.eq_window(&dist_r).unwrap());
            let comm_l = a.mul(&b).unwrap();
            let comm_r = b.mul(&a).unwrap();
            prop_assert!(comm_l.eq_window(&comm_r).unwrap());
            Ok(())
        })
        .expect("ring laws hold");

    // reciprocal is a two-sided inverse
    runner()
        .run(&arb_unit_series(1), |s| {
            let r = s.reciprocal().unwrap();
            let one = LatticeSeries::one(1, s.order_num() - s.floor_num());
            prop_assert!(s.mul(&r).unwrap().eq_window(&one).unwrap());
            prop_assert!(r.mul(&s).unwrap().eq_window(&one).unwrap());
            Ok(())
        })
        .expect("reciprocal inverts");

    // substitution is a ring homomorphism (plain and with negation)
    runner()
        .run(&(arb_series(1), arb_series(1), 1i64..4), |(a, b, k)| {
            let lhs = a.mul(&b).unwrap().substitute(k, false).unwrap();
            let rhs = a.substitute(k, false).unwrap().mul(&b.substitute(k, false).unwrap()).unwrap();
            prop_assert!(lhs.eq_window(&rhs).unwrap());
            let lhs = a.mul(&b).unwrap().substitute(1, true).unwrap();
            let rhs = a.substitute(1, true).unwrap().mul(&b.substitute(1, true).unwrap()).unwrap();
            prop_assert!(lhs.eq_window(&rhs).unwrap());
            let lhs = a.add(&b).unwrap().substitute(k, true).unwrap();
            let rhs = a.substitute(k, true).unwrap().add(&b.substitute(k, true).unwrap()).unwrap();
            prop_assert!(lhs.eq_window(&rhs).unwrap());
            Ok(())
        })
        .expect("substitution is a homomorphism");

    // coefficient queries beyond the order are refused
    runner()
        .run(&arb_series(1), |s| {
            prop_assert!(s.coefficient(s.order_num() + 1).is_err());
            prop_assert!(s.coefficient(s.floor_num() - 1).map(|c| c == BigInt::from(0)).unwrap_or(s.floor_num() - 1 > s.order_num()));
            Ok(())
        })
        .expect("window discipline");

    announce(8, true, "ring laws, reciprocal, substitution: 600 cases each, exact", started);
}
