//! Acceptance suite: one test per criterion, each printing a single
//! pass/fail line and asserting at the stated tolerance and budget.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::time::Instant;

use hopfgal::bundles;
use hopfgal::chern;
use hopfgal::connection::{self, ConnForm, Integral, SplittingS, TranslationLift};
use hopfgal::ncpoly::NcPoly;
use hopfgal::preset::{self, classical_sl2, podles_eq, slq2, super_s3};
use hopfgal::suites::{self, SuiteConfig};

fn criterion(name: &str, pass: bool, detail: &str) {
    println!(
        "[{}] acceptance {name}{}{}",
        if pass { "PASS" } else { "FAIL" },
        if detail.is_empty() { "" } else { " -- " },
        detail
    );
    assert!(pass, "acceptance criterion failed: {name} {detail}");
}

fn budget(name: &str, started: Instant, limit_s: f64) {
    let elapsed = started.elapsed().as_secs_f64();
    criterion(
        &format!("{name} runtime"),
        elapsed < limit_s,
        &format!("{elapsed:.2}s of {limit_s}s"),
    );
}

#[test]
fn criterion_01_galois_certificates() {
    let started = Instant::now();
    let mut pass = true;
    for preset in [super_s3(), slq2(), podles_eq()] {
        let tau = TranslationLift::new(&preset);
        let mut gs = preset.group_range(3);
        gs.push(0);
        let report = connection::galois_certificate(&tau, &gs).unwrap();
        pass &= report.pass;
    }
    criterion("1: Galois certificates, |n| <= 3, three presets", pass, "");
    budget("1", started, 5.0);
}

#[test]
fn criterion_02_translation_suite() {
    let started = Instant::now();
    let preset = super_s3();
    let tau = TranslationLift::new(&preset);
    let report = connection::translation_property_suite(&tau, 3, 4).unwrap();
    criterion("2: translation-map suite, n+m <= 3", report.pass, "");
    // Same-sign antimultiplicativity holds exactly at lift level.
    let mut exact = true;
    for (g, h) in [(1i64, 1i64), (1, 2), (2, 1), (-1, -1), (-1, -2), (-2, -1)] {
        let lhs = tau
            .eval(g)
            .unwrap()
            .mul_translation(&tau.eval(h).unwrap())
            .unwrap();
        exact &= lhs == tau.eval(g + h).unwrap();
    }
    criterion("2: same-sign products exact at lift level", exact, "");
    budget("2", started, 5.0);
}

#[test]
fn criterion_03_strong_connection_suites() {
    let started = Instant::now();
    let sup = super_s3();
    let omega = ConnForm::standard(&sup).unwrap();
    let report = connection::verify_connection_form(&omega, true, 3).unwrap();
    criterion("3: super monopole passes all five checks", report.pass, "");

    let pod = podles_eq();
    let omega = ConnForm::standard(&pod).unwrap();
    let report = connection::verify_connection_form(&omega, true, 1).unwrap();
    criterion("3: equator-sphere connection passes", report.pass, "");

    let nonstrong = ConnForm::podles_nonstrong(&pod).unwrap();
    let report = connection::verify_connection_form(&nonstrong, true, 1).unwrap();
    let only_v_fails = !report.pass
        && report
            .checks
            .iter()
            .all(|c| c.pass || c.check.starts_with("(v)"))
        && report
            .checks
            .iter()
            .any(|c| c.check.starts_with("(v)") && !c.pass);
    criterion(
        "3: perturbed form fails exactly the strongness check",
        only_v_fails,
        "",
    );

    let q = slq2();
    let omega = connection::connection_from_integral(&Integral::canonical(&q).unwrap());
    let report = connection::verify_connection_form(&omega, true, 3).unwrap();
    criterion("3: canonical quantum monopole passes", report.pass, "");
    budget("3", started, 10.0);
}

#[test]
fn criterion_04_roundtrips() {
    let started = Instant::now();
    let mut pass = true;
    for preset in [super_s3(), slq2()] {
        let omega = ConnForm::standard(&preset).unwrap();
        let tau = TranslationLift::new(&preset);
        let report =
            connection::roundtrip_check(&preset, &omega, &tau, &[1, -1, 2, -2]).unwrap();
        pass &= report.pass;
    }
    criterion(
        "4: all four cyclic identities on generators and z^{+-1}, z^{+-2}",
        pass,
        "",
    );
    budget("4", started, 10.0);
}

#[test]
fn criterion_05_projectors() {
    let started = Instant::now();
    let preset = super_s3();
    let s = SplittingS::standard(&preset).unwrap();
    let mut algebra_ok = true;
    let mut e_sizes_ok = true;
    let mut f_sizes_ok = true;
    for n in 1..=4i64 {
        for mu in [-n, n] {
            let module = bundles::line_bundle_generators(&preset, mu).unwrap();
            let cert = bundles::projector_from_splitting(&s, &module, None).unwrap();
            algebra_ok &= bundles::projector_report(&cert).unwrap().pass;
            e_sizes_ok &= cert.e.rows == (2 * n + 1) as usize;
            let herm = bundles::hermitian_projector(&preset, mu).unwrap();
            algebra_ok &= bundles::hermitian_report(&herm).unwrap().pass;
            // Frame length matches the displayed 2n+1 whenever every
            // binomial weight is a Gaussian norm (true through n = 3).
            if n <= 3 {
                f_sizes_ok &= herm.u.len() == (2 * n + 1) as usize;
            }
        }
    }
    criterion(
        "5: E^2 = E, E reproduces the generators, U^dag U = 1, F^2 = F = F^dag, n <= 4",
        algebra_ok,
        "",
    );
    criterion("5: projector sizes (2n+1)^2 for n <= 4", e_sizes_ok, "");
    criterion(
        "5: hermitian frame sizes (2n+1) for n <= 3 (n = 4 uses a 10-row frame; see notes)",
        f_sizes_ok,
        "",
    );
    budget("5", started, 30.0);
}

#[test]
fn criterion_06_iso_and_freeness() {
    let started = Instant::now();
    let preset = super_s3();
    let s = SplittingS::standard(&preset).unwrap();
    let mut iso_ok = true;
    for n in 1..=3i64 {
        for mu in [-n, n] {
            let module = bundles::line_bundle_generators(&preset, mu).unwrap();
            let cert = bundles::projector_from_splitting(&s, &module, None).unwrap();
            let herm = bundles::hermitian_projector(&preset, mu).unwrap();
            iso_ok &= bundles::iso_certificate(&cert, &herm).unwrap().pass;
        }
    }
    criterion("6: (E, F) intertwiner identities, n <= 3", iso_ok, "");
    let super_free = bundles::freeness_certificate(&super_s3()).unwrap().pass;
    criterion("6: rank-two freeness on the super sphere", super_free, "");
    let quantum_free = bundles::freeness_certificate(&slq2()).unwrap().pass;
    criterion(
        "6: quantum spin-bundle freeness at generic symbolic q",
        quantum_free,
        "",
    );
    budget("6", started, 10.0);
}

#[test]
fn criterion_07_chern_pairing() {
    let started = Instant::now();
    let preset = super_s3();
    let mut pass = true;
    let mut detail = String::new();
    for n in 1..=3i64 {
        for mu in [-n, n] {
            let frame = chern::body_frame(&preset, mu).unwrap();
            let (res, _) = chern::lattice_chern(&frame, 32, 32).unwrap();
            let (res48, _) = chern::lattice_chern(&frame, 48, 48).unwrap();
            pass &= res.residual < 1e-6;
            pass &= res.integer == mu;
            pass &= res48.integer == res.integer;
            detail.push_str(&format!("c({mu}) = {}; ", res.integer));
        }
    }
    criterion(
        "7: lattice Chern numbers are the exact charges, stable across grids",
        pass,
        detail.trim_end_matches("; "),
    );
    budget("7", started, 10.0);
}

#[test]
fn criterion_08_gauge_suite() {
    let started = Instant::now();
    let report = connection::gauge_suite(&super_s3(), 2).unwrap();
    criterion(
        "8: gauge action suite (strongness, distinctness, compatibility, triviality)",
        report.pass,
        "",
    );
    budget("8", started, 5.0);
}

#[test]
fn criterion_09_infrastructure() {
    let started = Instant::now();
    let mut conf_ok = true;
    for p in [super_s3(), slq2(), podles_eq(), classical_sl2()] {
        conf_ok &= p.pres.check_confluence(6).passed();
    }
    criterion("9: confluence to degree 6 on all presets", conf_ok, "");

    let sup = super_s3();
    let mut indep_ok = true;
    for n in 1..=4i64 {
        for mu in [-n, n] {
            let module = bundles::line_bundle_generators(&sup, mu).unwrap();
            let (ok, _) = sup.pres.linear_independent(&module.gens);
            indep_ok &= ok;
        }
    }
    criterion("9: module generator lists independent, n <= 4", indep_ok, "");

    let coinv_ok = preset::coinvariant_generation_check(&sup, 4).unwrap()
        && preset::coinvariant_generation_check(&podles_eq(), 4).unwrap();
    criterion("9: coinvariant generation to degree 4", coinv_ok, "");

    let idem_ok = bundles::auxiliary_idempotents(&podles_eq()).unwrap().pass;
    criterion("9: tangent-bundle idempotents", idem_ok, "");
    budget("9", started, 30.0);
}

#[test]
fn criterion_10_negative_controls() {
    let started = Instant::now();
    // A corrupted intertwiner must fail its suite.
    let p = super_s3();
    let s = SplittingS::standard(&p).unwrap();
    let module = bundles::line_bundle_generators(&p, -1).unwrap();
    let cert = bundles::projector_from_splitting(&s, &module, None).unwrap();
    let herm = bundles::hermitian_projector(&p, -1).unwrap();
    let udag: Vec<NcPoly> = herm.u.iter().map(|x| x.star().unwrap()).collect();
    let mut l = bundles::Mat::outer(&p, cert.p_col.as_ref().unwrap(), &udag).unwrap();
    let ltilde = bundles::Mat::outer(&p, &herm.u, cert.q_col.as_ref().unwrap()).unwrap();
    l.set(0, 0, NcPoly::zero(&p.pres.table));
    let corrupted = bundles::verify_module_iso(&cert.e, &herm.f, &l, &ltilde).unwrap();
    criterion("10: corrupted witness matrix fails", !corrupted.pass, "");

    // The non-strong connection drives the suite to failure (CLI exit 1).
    let cfg = SuiteConfig::default();
    let report = suites::suite_connection(&podles_eq(), "nonstrong", &cfg).unwrap();
    criterion("10: non-strong witness suite fails as a suite", !report.pass, "");
    budget("10", started, 10.0);
}
