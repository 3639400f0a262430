//! Connection, translation-map, gauge, and integral machinery exercised on
//! the shipped presets.

use hopfgal::connection::*;
use hopfgal::ncpoly::{parse_ncpoly, NcPoly};
use hopfgal::preset::{classical_sl2, podles_eq, slq2, super_s3};
use hopfgal::rewrite::{subspace_membership, SubspaceFamily};
use hopfgal::scalar::Scalar;
use hopfgal::tensor::{parse_tensor, MembershipSpace, Slot, TensorElem};

fn t2(preset: &std::sync::Arc<hopfgal::preset::Preset>, src: &str) -> TensorElem {
    parse_tensor(&preset.pres, &[Slot::P, Slot::P], src).unwrap()
}

#[test]
fn galois_certificates_pass() {
    for preset in [super_s3(), slq2(), podles_eq(), classical_sl2()] {
        let tau = TranslationLift::new(&preset);
        let mut gs = preset.group_range(3);
        gs.push(0);
        let report = galois_certificate(&tau, &gs).unwrap();
        assert!(report.pass, "{}:\n{}", preset.name, report.to_text());
    }
}

#[test]
fn super_translation_values() {
    let p = super_s3();
    let tau = TranslationLift::new(&p);
    // tau'(z) = (1 + l+l-)(d (x) a - b (x) c)
    let expected = t2(&p, "d (x) a + l+*l-*d (x) a - b (x) c - l+*l-*b (x) c");
    assert_eq!(tau.eval(1).unwrap(), expected);
    // m(tau'(z^-1)) telescopes through the super determinant.
    let m = tau.eval(-1).unwrap().contract_m(0).unwrap();
    assert_eq!(
        m,
        parse_tensor(&p.pres, &[Slot::P], "1").unwrap()
    );
}

#[test]
fn slq2_translation_matches_calibration() {
    let p = slq2();
    let tau = TranslationLift::new(&p);
    // tau'(z) = delta (x) alpha - q beta (x) gamma
    let expected = t2(&p, "delta (x) alpha - q * beta (x) gamma");
    assert_eq!(tau.eval(1).unwrap(), expected);
}

#[test]
fn translation_suite_super() {
    let p = super_s3();
    let tau = TranslationLift::new(&p);
    let report = translation_property_suite(&tau, 3, 4).unwrap();
    assert!(report.pass, "{}", report.to_text());
    // Same-sign antimultiplicativity holds exactly at lift level.
    let lhs = tau
        .eval(1)
        .unwrap()
        .mul_translation(&tau.eval(1).unwrap())
        .unwrap();
    assert_eq!(lhs, tau.eval(2).unwrap());
}

#[test]
fn translation_suite_slq2_and_podles() {
    for preset in [slq2(), podles_eq()] {
        let tau = TranslationLift::new(&preset);
        let report = translation_property_suite(&tau, 2, 4).unwrap();
        assert!(report.pass, "{}:\n{}", preset.name, report.to_text());
    }
}

#[test]
fn super_monopole_strong() {
    let p = super_s3();
    let omega = ConnForm::standard(&p).unwrap();
    let report = verify_connection_form(&omega, true, 3).unwrap();
    assert!(report.pass, "{}", report.to_text());
}

#[test]
fn podles_strong_and_nonstrong() {
    let p = podles_eq();
    let omega = ConnForm::standard(&p).unwrap();
    // omega(g) = x dx + y dy + z dz.
    let expected = t2(&p, "x (x) x + y (x) y + z (x) z - 1 (x) 1");
    assert_eq!(omega.eval(1).unwrap(), expected);
    assert!(verify_connection_form(&omega, true, 1).unwrap().pass);

    let nonstrong = ConnForm::podles_nonstrong(&p).unwrap();
    let report = verify_connection_form(&nonstrong, true, 1).unwrap();
    assert!(!report.pass);
    // It fails exactly the strongness point and nothing else.
    for c in &report.checks {
        if c.check.starts_with("(v)") {
            continue;
        }
        assert!(c.pass, "unexpected failure: {}", c.check);
    }
    assert!(report
        .checks
        .iter()
        .any(|c| c.check.starts_with("(v)") && !c.pass));
}

#[test]
fn slq2_canonical_connection_strong() {
    let p = slq2();
    let omega = ConnForm::standard(&p).unwrap();
    // omega(z) = S(alpha) d alpha + S(beta) d gamma = delta (x) alpha
    //            - q beta (x) gamma - 1 (x) 1.
    let expected = t2(&p, "delta (x) alpha - q * beta (x) gamma - 1 (x) 1");
    assert_eq!(omega.eval(1).unwrap(), expected);
    let report = verify_connection_form(&omega, true, 3).unwrap();
    assert!(report.pass, "{}", report.to_text());
}

#[test]
fn splitting_values_match_closed_forms() {
    let p = super_s3();
    let s = SplittingS::standard(&p).unwrap();
    // s(a) = (1 + l+l-)(a*d (x) a - a*b (x) c)
    let expected = t2(
        &p,
        "a*d (x) a + l+*l-*a*d (x) a - a*b (x) c - l+*l-*a*b (x) c",
    );
    assert_eq!(s.eval(&p.gen("a")).unwrap(), expected);
    assert!(expected.membership(MembershipSpace::BotP).unwrap());
    // s(1) = 1 (x) 1.
    assert_eq!(
        s.eval(&NcPoly::one(&p.pres.table)).unwrap(),
        TensorElem::one2(&p.pres)
    );
    // J1(J4(omega))(a) = 1 (x) a - s(a) lies in (Omega^1 B) P.
    let d = j1(&s);
    let da = d.eval(&p.gen("a")).unwrap();
    assert!(da.membership(MembershipSpace::Omega1BP).unwrap());
    assert!(subspace_membership(
        &p.pres,
        &da.to_pair_map().unwrap(),
        SubspaceFamily::KerMOverB,
        6
    )
    .unwrap());
}

#[test]
fn roundtrips_all_presets() {
    for preset in [super_s3(), slq2(), podles_eq(), classical_sl2()] {
        let omega = ConnForm::standard(&preset).unwrap();
        let tau = TranslationLift::new(&preset);
        let gs = match preset.group() {
            hopfgal::ncpoly::GradeGroup::Int => vec![1, -1, 2, -2],
            hopfgal::ncpoly::GradeGroup::Mod2 => vec![1],
        };
        let report = roundtrip_check(&preset, &omega, &tau, &gs).unwrap();
        assert!(report.pass, "{}:\n{}", preset.name, report.to_text());
    }
}

#[test]
fn psi_xi_bijections() {
    let p = super_s3();
    let omega = ConnForm::standard(&p).unwrap();
    let tau = TranslationLift::new(&p);
    let (r, descent) = psi_lift(&omega).unwrap();
    assert!(descent.pass, "{}", descent.to_text());
    // Psi~ . Psi = id on tested group elements.
    let back = psi_tilde(&r, &tau);
    for g in [1i64, -1, 2] {
        assert_eq!(back.eval(g).unwrap(), omega.eval(g).unwrap());
    }
    // Xi(r)(1) = 1 (x) 1 and Xi . Psi = J4.
    let s = xi(&r);
    assert_eq!(
        s.eval(&NcPoly::one(&p.pres.table)).unwrap(),
        TensorElem::one2(&p.pres)
    );
    let s_direct = j4(&omega);
    for gen in p.generators() {
        assert_eq!(s.eval(&gen).unwrap(), s_direct.eval(&gen).unwrap());
    }
    // Xi~(s) evaluates as p s(p').
    let rfs = xi_tilde(&s);
    let a = p.gen("a");
    let c = p.gen("c");
    assert_eq!(
        rfs.eval_pair(&a, &c).unwrap(),
        s.eval(&c).unwrap().act_left(&a).unwrap()
    );
    // Descent on the sampled triple (a, ab, c) explicitly.
    let ab = parse_ncpoly(&p.pres.table, "a*b").unwrap();
    let lhs = r
        .eval_pair(&p.pres.mul_nf(&a, &ab).unwrap(), &c)
        .unwrap();
    let rhs = r
        .eval_pair(&a, &p.pres.mul_nf(&ab, &c).unwrap())
        .unwrap();
    assert_eq!(lhs, rhs);
}

#[test]
fn unitalize_examples() {
    let p = super_s3();
    let s = SplittingS::standard(&p).unwrap();
    // Already unital: T(s) = s.
    let ts = unitalize(&s, 6).unwrap();
    for gen in p.generators() {
        assert_eq!(ts.eval(&gen).unwrap(), s.eval(&gen).unwrap());
    }
    // Shift by w = d(a b) . 1 in P (Omega^1 B) P: T recovers the unital s.
    let ab = parse_ncpoly(&p.pres.table, "a*b").unwrap();
    let w = TensorElem::d_universal(&p.pres, &ab);
    let sbar = SplittingS::shifted(s.clone(), w.clone());
    // s~(1) = 1 (x) 1 + d(ab)
    let one = NcPoly::one(&p.pres.table);
    assert_eq!(
        sbar.eval(&one).unwrap(),
        TensorElem::one2(&p.pres).add(&w)
    );
    let tsbar = unitalize(&sbar, 6).unwrap();
    assert_eq!(tsbar.eval(&one).unwrap(), TensorElem::one2(&p.pres));
    for gen in p.generators() {
        assert_eq!(tsbar.eval(&gen).unwrap(), s.eval(&gen).unwrap());
    }
}

#[test]
fn integral_round_trips() {
    let p = slq2();
    let i0 = Integral::canonical(&p).unwrap();
    let report = integral_report(&i0, 2).unwrap();
    assert!(report.pass, "{}", report.to_text());
    // i0(z) = alpha and the associated form is the canonical one.
    assert_eq!(i0.value(1).unwrap(), p.gen("alpha"));
    let omega0 = connection_from_integral(&i0);
    assert_eq!(
        omega0.eval(1).unwrap(),
        t2(&p, "delta (x) alpha - q * beta (x) gamma - 1 (x) 1")
    );
    // i(e) = 1 gives omega(e) = 0.
    assert!(omega0.eval(0).unwrap().is_zero());

    // i1(z) = (1 + zeta) alpha yields a different connection.
    let i1 = Integral::with_polys(&p, vec![Scalar::one()], vec![]).unwrap();
    let omega1 = connection_from_integral(&i1);
    assert_ne!(omega1.eval(1).unwrap(), omega0.eval(1).unwrap());
    let report = integral_report(&i1, 2).unwrap();
    assert!(report.pass, "{}", report.to_text());
    // Both are strong connections.
    assert!(verify_connection_form(&omega1, true, 2).unwrap().pass);
}

#[test]
fn covariant_derivative_examples() {
    let p = super_s3();
    let s = SplittingS::standard(&p).unwrap();
    // nabla 1 = 0.
    let one = NcPoly::one(&p.pres.table);
    assert!(covariant_derivative(&s, &one).unwrap().is_zero());
    // nabla a lies in ker m, B (x) P, right factors of degree +1.
    let report = covariant_derivative_report(&s, &p.gen("a")).unwrap();
    assert!(report.pass, "{}", report.to_text());
    let report = covariant_derivative_report(&s, &p.gen("l+")).unwrap();
    assert!(report.pass, "{}", report.to_text());
    // Inhomogeneous input is rejected.
    let bad = p.gen("a").add(&p.gen("b"));
    assert!(covariant_derivative(&s, &bad).is_err());
}

#[test]
fn gauge_suite_super() {
    let p = super_s3();
    let report = gauge_suite(&p, 2).unwrap();
    assert!(report.pass, "{}", report.to_text());
}

#[test]
fn gauge_examples() {
    let p = super_s3();
    let omega = ConnForm::standard(&p).unwrap();
    let fval = NcPoly::one(&p.pres.table).add(
        &p.gen("l+").multiply(&p.gen("l-")).unwrap(),
    );
    let f = GaugeTransform::new(&p, &fval).unwrap();
    // f(z) f(z^-1) = 1 exactly.
    assert_eq!(
        p.pres
            .mul_nf(&f.value(1).unwrap(), &f.value(-1).unwrap())
            .unwrap(),
        NcPoly::one(&p.pres.table)
    );
    let gauged = gauge_on_connection(&f, &omega);
    assert!(verify_connection_form(&gauged, true, 2).unwrap().pass);
    assert_ne!(gauged.eval(1).unwrap(), omega.eval(1).unwrap());
    // F(a b) = F(a) F(b) after normal form.
    assert!(gauge_automorphism_report(&f).unwrap().pass);
    // Non-units are rejected.
    assert!(GaugeTransform::new(&p, &p.gen("a")).is_err());
    let not_unit = p.gen("a").multiply(&p.gen("b")).unwrap();
    assert!(GaugeTransform::new(&p, &not_unit).is_err());
}

#[test]
fn gauge_suites_other_presets() {
    for preset in [slq2(), podles_eq()] {
        let report = gauge_suite(&preset, 2).unwrap();
        assert!(report.pass, "{}:\n{}", preset.name, report.to_text());
    }
}

#[test]
fn gauge_with_scalar_times_unipotent_value() {
    // f(z) = 2 (1 + 3 l+l-): the unit recognizer splits off the scalar part
    // and inverts the nilpotent remainder by a finite geometric series.
    let p = super_s3();
    let omega = ConnForm::standard(&p).unwrap();
    let val = NcPoly::one(&p.pres.table)
        .add(&p.gen("l+").multiply(&p.gen("l-")).unwrap().scale(&Scalar::from_int(3)))
        .scale(&Scalar::from_int(2));
    let f = GaugeTransform::new(&p, &val).unwrap();
    assert_eq!(
        p.pres
            .mul_nf(&f.value(2).unwrap(), &f.value(-2).unwrap())
            .unwrap(),
        NcPoly::one(&p.pres.table)
    );
    let gauged = gauge_on_connection(&f, &omega);
    assert!(verify_connection_form(&gauged, true, 2).unwrap().pass);
    assert!(gauge_automorphism_report(&f).unwrap().pass);
}

#[test]
fn roundtrip_at_larger_group_elements() {
    let p = super_s3();
    let omega = ConnForm::standard(&p).unwrap();
    let tau = TranslationLift::new(&p);
    let report = roundtrip_check(&p, &omega, &tau, &[3, -3]).unwrap();
    assert!(report.pass, "{}", report.to_text());
}

#[test]
fn core_types_are_send_and_sync() {
    fn check<T: Send + Sync>() {}
    check::<hopfgal::scalar::Scalar>();
    check::<hopfgal::ncpoly::NcPoly>();
    check::<std::sync::Arc<hopfgal::rewrite::Presentation>>();
    check::<hopfgal::tensor::TensorElem>();
    check::<std::sync::Arc<hopfgal::preset::Preset>>();
}

#[test]
fn integral_with_negative_side_polynomial() {
    // Perturbing the negative-power splittings gives another strong
    // connection with exact round trips.
    let p = slq2();
    let ir = Integral::with_polys(&p, vec![], vec![Scalar::one()]).unwrap();
    assert!(integral_report(&ir, 2).unwrap().pass);
    let omega = connection_from_integral(&ir);
    assert!(verify_connection_form(&omega, true, 2).unwrap().pass);
    let canonical = connection_from_integral(&Integral::canonical(&p).unwrap());
    assert_ne!(omega.eval(-1).unwrap(), canonical.eval(-1).unwrap());
    assert_eq!(omega.eval(1).unwrap(), canonical.eval(1).unwrap());
}

#[test]
fn splitting_closed_form_on_grassmann_generator() {
    // s(l+) = l+ (d (x) a - b (x) c): the Grassmann prefactor of the
    // connection form is absorbed by the square-zero generator.
    let p = super_s3();
    let s = SplittingS::standard(&p).unwrap();
    let expected = t2(&p, "l+*d (x) a - l+*b (x) c");
    assert_eq!(s.eval(&p.gen("l+")).unwrap(), expected);
}
