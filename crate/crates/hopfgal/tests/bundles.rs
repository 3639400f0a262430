//! Projector matrices, hermitian companions, and the certificate machinery
//! on the shipped presets.

use hopfgal::bundles::*;
use hopfgal::connection::SplittingS;
use hopfgal::ncpoly::NcPoly;
use hopfgal::preset::{classical_sl2, podles_eq, slq2, super_s3};
use hopfgal::scalar::Scalar;

#[test]
fn line_bundle_generator_lists() {
    let p = super_s3();
    let m = line_bundle_generators(&p, -1).unwrap();
    let names: Vec<String> = m.gens.iter().map(|g| g.to_string()).collect();
    assert_eq!(names, ["a", "c", "l+"]);
    let m = line_bundle_generators(&p, 1).unwrap();
    let names: Vec<String> = m.gens.iter().map(|g| g.to_string()).collect();
    assert_eq!(names, ["d", "b", "l-"]);
    let m = line_bundle_generators(&p, 0).unwrap();
    assert_eq!(m.gens.len(), 1);
    assert!(line_bundle_generators(&p, 9).is_err());
    // 2n+1 generators for the super modules.
    for n in 1..=4i64 {
        assert_eq!(
            line_bundle_generators(&p, -n).unwrap().gens.len(),
            (2 * n + 1) as usize
        );
    }
}

#[test]
fn super_charge_one_projector_matches_closed_form() {
    let p = super_s3();
    let s = SplittingS::standard(&p).unwrap();
    let m = line_bundle_generators(&p, -1).unwrap();
    let cert = projector_from_splitting(&s, &m, None).unwrap();
    // E_-1 = (1 + l+l-)(a, c, l+)^T (d, -b, 0)
    let w = NcPoly::one(&p.pres.table).add(&p.gen("l+").multiply(&p.gen("l-")).unwrap());
    let col = vec![
        p.pres.mul_nf(&w, &p.gen("a")).unwrap(),
        p.pres.mul_nf(&w, &p.gen("c")).unwrap(),
        p.gen("l+"),
    ];
    let row = vec![
        p.gen("d"),
        p.gen("b").neg(),
        NcPoly::zero(&p.pres.table),
    ];
    let expected = Mat::outer(&p, &col, &row).unwrap();
    assert_eq!(cert.e, expected);
    assert!(projector_report(&cert).unwrap().pass);
}

#[test]
fn super_projectors_up_to_four() {
    let p = super_s3();
    let s = SplittingS::standard(&p).unwrap();
    for n in 1..=4i64 {
        for mu in [-n, n] {
            let m = line_bundle_generators(&p, mu).unwrap();
            let cert = projector_from_splitting(&s, &m, None).unwrap();
            assert_eq!(cert.e.rows, (2 * n + 1) as usize);
            let report = projector_report(&cert).unwrap();
            assert!(report.pass, "mu={mu}:\n{}", report.to_text());
        }
    }
}

#[test]
fn quantum_and_classical_projectors() {
    for preset in [slq2(), classical_sl2()] {
        let s = SplittingS::standard(&preset).unwrap();
        for mu in [-1i64, 1, -2, 2] {
            let m = line_bundle_generators(&preset, mu).unwrap();
            let cert = projector_from_splitting(&s, &m, None).unwrap();
            let report = projector_report(&cert).unwrap();
            assert!(report.pass, "{} mu={mu}:\n{}", preset.name, report.to_text());
        }
    }
}

#[test]
fn zero_charge_projector_is_identity() {
    let p = super_s3();
    let s = SplittingS::standard(&p).unwrap();
    let m = line_bundle_generators(&p, 0).unwrap();
    let cert = projector_from_splitting(&s, &m, None).unwrap();
    assert_eq!(cert.e, Mat::identity(&p, 1));
}

#[test]
fn hermitian_frames_super() {
    let p = super_s3();
    // n = 1: F_-1 = (a, c, l+)^T (d, -b, -l-) in closed form.
    let cert = hermitian_projector(&p, -1).unwrap();
    let col = vec![p.gen("a"), p.gen("c"), p.gen("l+")];
    let row = vec![p.gen("d"), p.gen("b").neg(), p.gen("l-").neg()];
    assert_eq!(cert.f, Mat::outer(&p, &col, &row).unwrap());
    assert!(hermitian_report(&cert).unwrap().pass);
    // n = 2 through 4, both signs.
    for n in 2..=4i64 {
        for mu in [-n, n] {
            let cert = hermitian_projector(&p, mu).unwrap();
            let report = hermitian_report(&cert).unwrap();
            assert!(report.pass, "mu={mu}:\n{}", report.to_text());
            // Sizes: 2n+1 except where a binomial is not a Gaussian norm.
            if n <= 3 {
                assert_eq!(cert.u.len(), (2 * n + 1) as usize, "mu={mu}");
            }
        }
    }
}

#[test]
fn hermitian_frames_quantum_and_classical() {
    let p = slq2();
    let cert = hermitian_projector(&p, -1).unwrap();
    // F_-1 = (alpha, gamma)^T (delta, -q beta)
    let col = vec![p.gen("alpha"), p.gen("gamma")];
    let row = vec![
        p.gen("delta"),
        p.gen("beta").scale(&Scalar::q_pow(1)).neg(),
    ];
    assert_eq!(cert.f, Mat::outer(&p, &col, &row).unwrap());
    assert!(hermitian_report(&cert).unwrap().pass);
    let cert = hermitian_projector(&p, 1).unwrap();
    assert!(hermitian_report(&cert).unwrap().pass);

    let c = classical_sl2();
    for mu in [-1i64, 1, -2, 2, -3, 3] {
        let cert = hermitian_projector(&c, mu).unwrap();
        assert!(hermitian_report(&cert).unwrap().pass, "mu={mu}");
    }
}

#[test]
fn iso_certificates() {
    let p = super_s3();
    let s = SplittingS::standard(&p).unwrap();
    for n in 1..=3i64 {
        for mu in [-n, n] {
            let m = line_bundle_generators(&p, mu).unwrap();
            let cert = projector_from_splitting(&s, &m, None).unwrap();
            let herm = hermitian_projector(&p, mu).unwrap();
            let report = iso_certificate(&cert, &herm).unwrap();
            assert!(report.pass, "mu={mu}:\n{}", report.to_text());
        }
    }
}

#[test]
fn iso_identity_and_negative_control() {
    let p = super_s3();
    let e = Mat::identity(&p, 2);
    let report = verify_module_iso(&e, &e, &e, &e).unwrap();
    assert!(report.pass);
    // Corrupting one witness entry must break a named identity.
    let s = SplittingS::standard(&p).unwrap();
    let m = line_bundle_generators(&p, -1).unwrap();
    let cert = projector_from_splitting(&s, &m, None).unwrap();
    let herm = hermitian_projector(&p, -1).unwrap();
    let udag: Vec<NcPoly> = herm.u.iter().map(|x| x.star().unwrap()).collect();
    let mut l = Mat::outer(&p, cert.p_col.as_ref().unwrap(), &udag).unwrap();
    let ltilde = Mat::outer(&p, &herm.u, cert.q_col.as_ref().unwrap()).unwrap();
    l.set(0, 0, NcPoly::zero(&p.pres.table));
    let report = verify_module_iso(&cert.e, &herm.f, &l, &ltilde).unwrap();
    assert!(!report.pass);
    assert!(report.checks.iter().any(|c| !c.pass));
}

#[test]
fn freeness_certificates() {
    for preset in [super_s3(), slq2(), classical_sl2()] {
        let report = freeness_certificate(&preset).unwrap();
        assert!(report.pass, "{}:\n{}", preset.name, report.to_text());
    }
    assert!(freeness_certificate(&podles_eq()).is_err());
}

#[test]
fn tangent_idempotents() {
    let report = auxiliary_idempotents(&podles_eq()).unwrap();
    assert!(report.pass, "{}", report.to_text());
}

#[test]
fn nonstrong_witness_report() {
    let report = nonstrong_witness(&podles_eq()).unwrap();
    assert!(report.pass, "{}", report.to_text());
}

#[test]
fn podles_parity_projector_is_the_normal_bundle() {
    // The splitting of the odd parity class reproduces the normal-bundle
    // idempotent (x, y, z)^T (x, y, z).
    let p = podles_eq();
    let s = SplittingS::standard(&p).unwrap();
    let m = line_bundle_generators(&p, 1).unwrap();
    let cert = projector_from_splitting(&s, &m, None).unwrap();
    let v = [p.gen("x"), p.gen("y"), p.gen("z")];
    let expected = Mat::outer(&p, &v, &v).unwrap();
    assert_eq!(cert.e, expected);
    assert!(projector_report(&cert).unwrap().pass);
}

#[test]
fn hermitian_frame_sizes_through_charge_six() {
    // All binomial weights through n = 3 are Gaussian norms; at n >= 4 the
    // non-norm weights pair up except for a single 6 at n in {4, 5}, which
    // splits into two rows.
    let p = super_s3();
    let expected = [(1i64, 3usize), (2, 5), (3, 7), (4, 10), (5, 12), (6, 13)];
    for (n, size) in expected {
        let cert = hermitian_projector(&p, -n).unwrap();
        assert_eq!(cert.u.len(), size, "n = {n}");
        // The normalization identity stays exact at every charge.
        let mut utu = hopfgal::ncpoly::NcPoly::zero(&p.pres.table);
        for e in &cert.u {
            utu = utu.add(&p.pres.mul_nf(&e.star().unwrap(), e).unwrap());
        }
        assert_eq!(utu, hopfgal::ncpoly::NcPoly::one(&p.pres.table), "n = {n}");
    }
}

#[test]
fn iso_certificate_with_oversized_frame() {
    // At charge 4 the hermitian frame has 10 rows, so the intertwiners are
    // rectangular (9x10 and 10x9); the four identities still hold.
    let p = super_s3();
    let s = SplittingS::standard(&p).unwrap();
    let m = line_bundle_generators(&p, -4).unwrap();
    let cert = projector_from_splitting(&s, &m, None).unwrap();
    let herm = hermitian_projector(&p, -4).unwrap();
    assert_eq!(cert.e.rows, 9);
    assert_eq!(herm.u.len(), 10);
    let report = iso_certificate(&cert, &herm).unwrap();
    assert!(report.pass, "{}", report.to_text());
}

#[test]
fn charge_plus_one_frame_matches_the_freeness_block() {
    // F_1 = u u^dag with u = ((1+l+l-) d, (1+l+l-) b, l-)^T, and its
    // conjugate by the swap matrix is the block used in the freeness
    // certificate: (1 + 2 l+l-)(b, d, l-)^T (-c, a, -l+).
    let p = super_s3();
    let cert = hermitian_projector(&p, 1).unwrap();
    let w = NcPoly::one(&p.pres.table).add(&p.gen("l+").multiply(&p.gen("l-")).unwrap());
    let col = vec![
        p.pres.mul_nf(&w, &p.gen("d")).unwrap(),
        p.pres.mul_nf(&w, &p.gen("b")).unwrap(),
        p.gen("l-"),
    ];
    let row: Vec<NcPoly> = col.iter().map(|e| e.star().unwrap()).collect();
    assert_eq!(cert.f, Mat::outer(&p, &col, &row).unwrap());

    // Swap the first two rows and columns.
    let mut m = Mat::zero(&p, 3, 3);
    m.set(0, 1, NcPoly::one(&p.pres.table));
    m.set(1, 0, NcPoly::one(&p.pres.table));
    m.set(2, 2, NcPoly::one(&p.pres.table));
    let swapped = m.mul(&cert.f).unwrap().mul(&m).unwrap();
    let two = NcPoly::one(&p.pres.table).add(
        &p.gen("l+")
            .multiply(&p.gen("l-"))
            .unwrap()
            .scale(&hopfgal::scalar::Scalar::from_int(2)),
    );
    let expected = Mat::outer(
        &p,
        &[
            p.pres.mul_nf(&two, &p.gen("b")).unwrap(),
            p.pres.mul_nf(&two, &p.gen("d")).unwrap(),
            p.gen("l-"),
        ],
        &[p.gen("c").neg(), p.gen("a"), p.gen("l+").neg()],
    )
    .unwrap();
    assert_eq!(swapped, expected);
}
