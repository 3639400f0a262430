//! Property tests for the kernel invariants.

use proptest::prelude::*;

use hopfgal::ncpoly::{parse_ncpoly, NcPoly};
use hopfgal::preset::{podles_eq, super_s3};
use hopfgal::scalar::{GaussRat, QPoly, Scalar};

fn gauss_strategy() -> impl Strategy<Value = GaussRat> {
    (-4i64..5, 1i64..4, -4i64..5, 1i64..4).prop_map(|(an, ad, bn, bd)| {
        GaussRat::new(
            num::BigRational::new(an.into(), ad.into()),
            num::BigRational::new(bn.into(), bd.into()),
        )
    })
}

fn qpoly_strategy() -> impl Strategy<Value = QPoly> {
    prop::collection::vec(gauss_strategy(), 0..4).prop_map(|coeffs| {
        let mut p = QPoly::zero();
        for (k, c) in coeffs.into_iter().enumerate() {
            p = p.add(&QPoly::monomial(c, k));
        }
        p
    })
}

fn scalar_strategy() -> impl Strategy<Value = Scalar> {
    (qpoly_strategy(), qpoly_strategy()).prop_filter_map("nonzero denominator", |(n, d)| {
        if d.is_zero() {
            None
        } else {
            Scalar::from_polys(n, d).ok()
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn scalar_field_axioms(a in scalar_strategy(), b in scalar_strategy(), c in scalar_strategy()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        if !a.is_zero() {
            prop_assert_eq!(a.mul(&a.inv().unwrap()), Scalar::one());
        }
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!(a.mul(&b).conj(), a.conj().mul(&b.conj()));
    }

    #[test]
    fn specialization_is_a_ring_map(a in scalar_strategy(), b in scalar_strategy()) {
        // Only pole-free inputs participate.
        if let (Ok(va), Ok(vb)) = (a.specialize_q1(), b.specialize_q1()) {
            if let Ok(vsum) = a.add(&b).specialize_q1() {
                prop_assert_eq!(vsum, &va + &vb);
            }
            if let Ok(vprod) = a.mul(&b).specialize_q1() {
                prop_assert_eq!(vprod, &va * &vb);
            }
        }
    }

    #[test]
    fn scalar_text_round_trip(a in scalar_strategy()) {
        let shown = a.to_string();
        let back: Scalar = shown.parse().unwrap();
        prop_assert_eq!(back, a);
    }
}

fn super_word_strategy() -> impl Strategy<Value = NcPoly> {
    let table = super_s3().pres.table.clone();
    prop::collection::vec(0u8..6, 0..5).prop_map(move |w| {
        NcPoly::monomial(&table, Scalar::one(), w)
    })
}

fn super_poly_strategy() -> impl Strategy<Value = NcPoly> {
    let table = super_s3().pres.table.clone();
    prop::collection::vec((prop::collection::vec(0u8..6, 0..4), -3i64..4), 1..4).prop_map(
        move |terms| {
            let mut p = NcPoly::zero(&table);
            for (w, c) in terms {
                p.add_term(w, Scalar::from_int(c));
            }
            p
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn star_is_an_antilinear_antihomomorphism(p in super_poly_strategy(), q in super_poly_strategy()) {
        let lhs = p.multiply(&q).unwrap().star().unwrap();
        let rhs = q.star().unwrap().multiply(&p.star().unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(p.star().unwrap().star().unwrap(), p.clone());
    }

    #[test]
    fn degrees_add_on_monomial_products(w1 in super_word_strategy(), w2 in super_word_strategy()) {
        let prod = w1.multiply(&w2).unwrap();
        if let (Some(d1), Some(d2), Some(dp)) = (w1.degree_of(), w2.degree_of(), prod.degree_of()) {
            if !prod.is_zero() {
                prop_assert_eq!(dp, d1 + d2);
            }
        }
    }

    #[test]
    fn normal_form_idempotent_and_degree_preserving(p in super_poly_strategy()) {
        let preset = super_s3();
        let nf = preset.pres.normal_form(&p);
        prop_assert_eq!(preset.pres.normal_form(&nf), nf.clone());
        // Reduction is grading-homogeneous.
        for (deg, part) in p.homogeneous_components() {
            let rnf = preset.pres.normal_form(&part);
            if !rnf.is_zero() {
                prop_assert_eq!(rnf.degree_of(), Some(deg));
            }
        }
    }

    #[test]
    fn normal_form_multiplicative_up_to_reduction(p in super_poly_strategy(), q in super_poly_strategy()) {
        let preset = super_s3();
        let direct = preset.pres.normal_form(&p.multiply(&q).unwrap());
        let nfp = preset.pres.normal_form(&p);
        let nfq = preset.pres.normal_form(&q);
        let via = preset.pres.normal_form(&nfp.multiply(&nfq).unwrap());
        prop_assert_eq!(direct, via);
    }
}

#[test]
fn podles_normal_form_idempotence_on_enumerated_words() {
    // Exhaustive over all length <= 3 words instead of sampling: the rule
    // system has nontrivial scalar coefficients worth hitting squarely.
    let preset = podles_eq();
    let table = &preset.pres.table;
    let mut words = vec![vec![]];
    for _ in 0..3 {
        let mut next = vec![];
        for w in &words {
            for g in 0..3u8 {
                let mut w2 = w.clone();
                w2.push(g);
                next.push(w2);
            }
        }
        words.extend(next.clone());
        words = words.into_iter().collect();
    }
    for w in words {
        let p = NcPoly::monomial(table, Scalar::one(), w);
        let nf = preset.pres.normal_form(&p);
        assert_eq!(preset.pres.normal_form(&nf), nf);
        if !nf.is_zero() {
            assert_eq!(nf.degree_of(), p.degree_of());
        }
    }
}

#[test]
fn report_json_deterministic_modulo_timestamp() {
    let preset = super_s3();
    let cfg = hopfgal::suites::SuiteConfig::default();
    let strip = |s: String| -> String {
        s.lines()
            .filter(|l| !l.contains("timestamp"))
            .collect::<Vec<_>>()
            .join("\n")
    };
    let r1 = hopfgal::suites::suite_galois(&preset, &cfg).unwrap().to_json();
    let r2 = hopfgal::suites::suite_galois(&preset, &cfg).unwrap().to_json();
    assert_eq!(strip(r1), strip(r2));
}

#[test]
fn ncpoly_text_round_trip_on_samples() {
    let preset = super_s3();
    let t = &preset.pres.table;
    for src in [
        "3/2 * a*b*l+ + (1-i)*c",
        "a^3 + (q^2 + 1) * b*d - l-",
        "(a + b)*(c + d)",
    ] {
        let p = parse_ncpoly(t, src).unwrap();
        let shown = p.to_string();
        assert_eq!(parse_ncpoly(t, &shown).unwrap(), p, "via {shown}");
    }
}
