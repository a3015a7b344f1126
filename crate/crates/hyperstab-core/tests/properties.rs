//! Randomized invariants of the exact engine. proptest runs 256 cases per
//! property by default, comfortably above the 100-case floor the
//! acceptance suite requires.

use proptest::prelude::*;

use hyperstab_core::{
    cauchy_root_bound, energy_form, interpolate_m, q4_variational, q4es_form, qhat_form,
    Energy, Hypersphere, LambdaPoly, NormSource, NormalSection, Q4Route, QuadExt, RadiusSpec,
    Rat, Sign,
};

fn rat_strategy() -> impl Strategy<Value = Rat> {
    (-20i64..=20, 1i64..=12).prop_map(|(n, d)| Rat::new(n, d))
}

fn nonneg_rat_strategy() -> impl Strategy<Value = Rat> {
    (0i64..=30, 1i64..=8).prop_map(|(n, d)| Rat::new(n, d))
}

fn quadext_strategy(radicand: i64) -> impl Strategy<Value = QuadExt> {
    (rat_strategy(), rat_strategy()).prop_map(move |(x, y)| {
        QuadExt::new(x, y, Rat::int(radicand)).expect("nonnegative radicand")
    })
}

fn sphere_strategy() -> impl Strategy<Value = Hypersphere> {
    (1u32..=12, nonneg_rat_strategy(), prop::bool::ANY).prop_map(|(m, t, plus)| {
        let sigma = if plus { Sign::Plus } else { Sign::Minus };
        Hypersphere::new(m, RadiusSpec::T(t), sigma).expect("t >= 0")
    })
}

fn section_strategy() -> impl Strategy<Value = NormalSection> {
    let poly = prop::collection::vec(-9i64..=9, 0..4)
        .prop_map(|cs| LambdaPoly::from_ints(&cs));
    (poly.clone(), poly).prop_map(|(nu, grad)| NormalSection::new(nu, grad))
}

proptest! {
    // Field axioms in Q(sqrt 3), exact equality.
    #[test]
    fn quadext_field_axioms(
        a in quadext_strategy(3),
        b in quadext_strategy(3),
        c in quadext_strategy(3),
    ) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        if !b.field_norm().is_zero() {
            let quotient = a.try_div(&b).unwrap();
            prop_assert_eq!(&quotient * &b, a);
        }
    }

    // Tail bound: the sign of p at B, B+1 and 2B is the sign of the
    // leading coefficient.
    #[test]
    fn cauchy_bound_controls_sign(coeffs in prop::collection::vec(-50i64..=50, 1..6), lead in 1i64..=9) {
        let mut cs = coeffs;
        cs.push(lead);
        let p = LambdaPoly::from_ints(&cs);
        let b = cauchy_root_bound(&p).unwrap();
        for lambda in [b.clone(), &b + &Rat::one(), &b + &b] {
            let v = p.eval(&lambda).as_rational().unwrap();
            prop_assert!(v.is_positive(), "p({}) = {} not positive", lambda, v);
        }
    }

    // Evaluating the recovered symbolic-m family at each sample node
    // reproduces the sample exactly.
    #[test]
    fn interpolation_round_trip(c4 in -30i64..=30, c2 in -30i64..=30, c0 in -30i64..=30) {
        let family = |m: i64| -> LambdaPoly {
            LambdaPoly::from_ints(&[c0 * m * m * m * m, c2 * m * m, c4])
        };
        let samples: Vec<(u32, LambdaPoly)> =
            (1..=6).map(|m| (m as u32, family(m))).collect();
        let rec = interpolate_m(&samples, 4).unwrap();
        for (m, expected) in &samples {
            prop_assert_eq!(&rec.eval_at_m(*m), expected);
        }
    }

    // The term-by-term tension evaluator agrees with the closed form
    // m^4 c t^2 (t - 3K) for randomized spheres, exactly.
    #[test]
    fn tau4_matches_closed_form(h in sphere_strategy()) {
        let sf = hyperstab_core::SpaceForm::unit_sphere();
        let tau4 = hyperstab_core::tau4_coefficient(&h, &sf);
        let m4 = Rat::int((h.m as i64).pow(4));
        let t2 = &h.t * &h.t;
        let factor = &h.t - &Rat::int(3);
        let closed = h.c.scale(&(&(&m4 * &t2) * &factor));
        prop_assert_eq!(tau4, closed);

        // sign flip negates the coefficient
        let flipped = h.with_flipped_sign();
        let tau4_flipped = hyperstab_core::tau4_coefficient(&flipped, &sf);
        prop_assert_eq!(tau4_flipped, -&hyperstab_core::tau4_coefficient(&h, &sf));
    }

    // The curvature-correction building blocks vanish identically.
    #[test]
    fn tau_hat_terms_vanish(h in sphere_strategy()) {
        let sf = hyperstab_core::SpaceForm::unit_sphere();
        prop_assert!(hyperstab_core::tau_hat4_terms(&h, &sf).is_zero());
    }

    // Every quadratic form is rational-only: the root terms carried by the
    // principal curvature cancel.
    #[test]
    fn forms_are_rational_only(h in sphere_strategy(), k in rat_strategy()) {
        let q = q4_variational(&h, &k).unwrap();
        prop_assert!(q.poly.is_rational_only());
        let qh = qhat_form(&h).unwrap();
        prop_assert!(qh.poly.is_rational_only());
    }

    // Additivity of the combined form, any radius and curvature.
    #[test]
    fn es_form_is_additive(h in sphere_strategy(), k in rat_strategy()) {
        let q4 = q4_variational(&h, &k).unwrap();
        let qhat = qhat_form(&h).unwrap();
        let qes = q4es_form(&h, &k, Q4Route::Variational).unwrap();
        prop_assert_eq!(&qes.poly - &q4.poly, qhat.poly);
    }

    // Orientation flip leaves every quadratic form unchanged.
    #[test]
    fn sigma_flip_invariance(h in sphere_strategy(), k in rat_strategy()) {
        let flipped = h.with_flipped_sign();
        prop_assert_eq!(
            q4_variational(&h, &k).unwrap().poly,
            q4_variational(&flipped, &k).unwrap().poly
        );
        prop_assert_eq!(
            qhat_form(&h).unwrap().poly,
            qhat_form(&flipped).unwrap().poly
        );
    }

    // The curvature-term form closes to t (m-1)(m-2)^2 lambda.
    #[test]
    fn qhat_closed_form(m in 1u32..=20, t in nonneg_rat_strategy()) {
        let h = Hypersphere::new(m, RadiusSpec::T(t.clone()), Sign::Minus).unwrap();
        let q = qhat_form(&h).unwrap();
        let mm = m as i64;
        let coeff = &t * &Rat::int((mm - 1) * (mm - 2) * (mm - 2));
        prop_assert_eq!(q.poly, LambdaPoly::monomial(1, QuadExt::rational(coeff)));
    }

    // Symbolic self-adjointness of the connection Laplacian under the
    // eigenfunction pairing.
    #[test]
    fn laplacian_self_adjoint(h in sphere_strategy(), s1 in section_strategy(), s2 in section_strategy()) {
        let lhs = s1.bar_laplacian(&h).pairing(&s2);
        let rhs = s1.pairing(&s2.bar_laplacian(&h));
        prop_assert_eq!(lhs, rhs);
    }

    // The norm-recombination identity: with the tabulated bundle norms it
    // reproduces the tabulated quadratic form for every dimension.
    #[test]
    fn fixture_norms_recombine_to_fixture_form(m in 1u32..=10) {
        let h = Hypersphere::critical(m);
        let via_norms = energy_form(
            Energy::E4, &h, &Rat::one(), Q4Route::NormCombination(NormSource::Fixture),
        ).unwrap();
        let fixture = energy_form(Energy::E4, &h, &Rat::one(), Q4Route::Fixture).unwrap();
        prop_assert_eq!(via_norms.poly, fixture.poly);
    }
}
