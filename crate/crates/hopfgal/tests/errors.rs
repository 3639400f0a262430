//! Error paths of the public surface.

use hopfgal::bundles;
use hopfgal::connection::{covariant_derivative, GaugeTransform, SplittingS};
use hopfgal::ncpoly::{GenInfo, GeneratorTable, GradeGroup, NcPoly};
use hopfgal::preset::{podles_eq, slq2, super_s3};
use hopfgal::rewrite::{Presentation, Rule};
use hopfgal::scalar::Scalar;
use hopfgal::HgError;

#[test]
fn table_mismatch_is_rejected() {
    let p = super_s3();
    let q = slq2();
    let a = p.gen("a");
    let alpha = q.gen("alpha");
    assert_eq!(a.multiply(&alpha).unwrap_err(), HgError::TableMismatch);
}

#[test]
fn star_requires_a_star_map() {
    let table = GeneratorTable::new(
        GradeGroup::Int,
        vec![GenInfo {
            name: "u".into(),
            degree: 0,
            star: None,
        }],
    );
    let u = NcPoly::generator(&table, 0);
    assert_eq!(u.star().unwrap_err(), HgError::NoStar);
}

#[test]
fn ill_ordered_rules_are_rejected() {
    // Tail strictly larger than the leading word under the order.
    let table = GeneratorTable::new(
        GradeGroup::Int,
        vec![
            GenInfo { name: "u".into(), degree: 0, star: None },
            GenInfo { name: "v".into(), degree: 0, star: None },
        ],
    );
    let bad = Rule {
        lhs: vec![0, 1],
        rhs: NcPoly::monomial(&table, Scalar::one(), vec![1, 0]),
    };
    assert!(Presentation::new(table.clone(), &["u", "v"], vec![bad]).is_err());
    // Grading-inhomogeneous tails are rejected too.
    let table = GeneratorTable::new(
        GradeGroup::Int,
        vec![
            GenInfo { name: "u".into(), degree: 1, star: None },
            GenInfo { name: "v".into(), degree: 0, star: None },
        ],
    );
    let bad = Rule {
        lhs: vec![0, 0],
        rhs: NcPoly::monomial(&table, Scalar::one(), vec![1]),
    };
    assert!(Presentation::new(table, &["u", "v"], vec![bad]).is_err());
}

#[test]
fn unsupported_constructions_error_cleanly() {
    let pod = podles_eq();
    // Quantum hermitian frames ship at charge one only.
    assert!(bundles::hermitian_projector(&slq2(), 2).is_err());
    // No freeness certificate on the sphere quotient.
    assert!(bundles::freeness_certificate(&pod).is_err());
    // Charges outside the shipped range.
    assert!(bundles::line_bundle_generators(&super_s3(), -7).is_err());
    // Gauge values must be recognizable units.
    assert!(GaugeTransform::new(&pod, &pod.gen("x")).is_err());
    // Z/2 gauge scalars must square to one.
    let two = NcPoly::one(&pod.pres.table).scale(&Scalar::from_int(2));
    assert!(GaugeTransform::new(&pod, &two).is_err());
    // Covariant derivatives need homogeneous inputs.
    let s = SplittingS::standard(&pod).unwrap();
    let mixed = pod.gen("x").add(
        &pod.pres
            .mul_nf(&pod.gen("x"), &pod.gen("y"))
            .unwrap(),
    );
    assert!(covariant_derivative(&s, &mixed).is_err());
}
