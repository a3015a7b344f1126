//! The three bundle-norm integrals
//!   int |Lap(f nu)|^2,  int |nabla Lap(f nu)|^2,  int |Lap^2(f nu)|^2
//! as lambda-polynomials, from two sources: direct operator composition in
//! the section algebra, and the tabulated t=3 family shipped as fixtures.
//! The two families disagree in the lambda^2 and lambda^1 coefficients of
//! the third integral; the numeric oracle adjudicates between them.

use serde::Serialize;

use crate::error::Result;
use crate::exact::{LambdaPoly, QuadExt, Rat};
use crate::forms::fixtures;
use crate::forms::section::NormalSection;
use crate::geometry::Hypersphere;

/// Where a set of bundle norms came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum NormSource {
    /// Verbatim tabulated t=3 coefficients.
    Fixture,
    /// Operator composition in the section algebra.
    Composition,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BundleNorms {
    pub first: LambdaPoly,
    pub second: LambdaPoly,
    pub third: LambdaPoly,
    pub source: NormSource,
}

/// Composition route, valid at any radius. The first and third integrals
/// are pairings of iterated Laplacians; the middle one comes from the
/// explicit expansion of nabla Lap(f nu), reduced with
/// int |Hess f|^2 = lambda^2 - ricci lambda.
pub fn composition_bundle_norms(h: &Hypersphere) -> Result<BundleNorms> {
    let s = NormalSection::unit();
    let l1 = s.bar_laplacian(h);
    let l2 = l1.bar_laplacian(h);
    let norms = BundleNorms {
        first: l1.pairing(&l1),
        second: explicit_second_norm(h),
        third: l2.pairing(&l2),
        source: NormSource::Composition,
    };
    debug_assert!(norms.first.is_rational_only());
    debug_assert!(norms.second.is_rational_only());
    debug_assert!(norms.third.is_rational_only());
    Ok(norms)
}

/// int |nabla Lap(f nu)|^2 written out from the covariant-derivative
/// expansion: the normal component contributes (lambda + mt + 2t)^2 lambda
/// and the tangential one t [ m (lambda+mt)^2 + 4 lambda (lambda+mt)
/// + 4 (lambda^2 - ricci lambda) ].
fn explicit_second_norm(h: &Hypersphere) -> LambdaPoly {
    let lam = LambdaPoly::monomial(1, QuadExt::one());
    let mt = &h.norm_a_sq;
    let t = &h.t;
    let r = &h.ricci;
    let two_t = t * &Rat::int(2);

    let lam_plus_mt = &lam + &LambdaPoly::constant(QuadExt::rational(mt.clone()));
    let normal_factor = &lam + &LambdaPoly::constant(QuadExt::rational(mt + &two_t));
    let normal_part = (&normal_factor * &normal_factor).shift_up(1);

    let sq = &lam_plus_mt * &lam_plus_mt;
    let hess = &lam.shift_up(1) - &lam.scale_rat(r); // lambda^2 - r lambda
    let tangential = &(&sq.scale_rat(&h.m_rat()) + &(&lam * &lam_plus_mt).scale_rat(&Rat::int(4)))
        + &hess.scale_rat(&Rat::int(4));
    &normal_part + &tangential.scale_rat(t)
}

/// Same integral through the pairing <<Lap s, Lap^2 s>>; agrees with the
/// explicit expansion identically and is kept as a cross-check.
pub fn second_norm_via_pairing(h: &Hypersphere) -> LambdaPoly {
    let s = NormalSection::unit();
    let l1 = s.bar_laplacian(h);
    let l2 = l1.bar_laplacian(h);
    l1.pairing(&l2)
}

/// Tabulated t=3 bundle norms as functions of the dimension.
pub fn fixture_bundle_norms(m: u32) -> BundleNorms {
    BundleNorms {
        first: fixtures::bundle_first().eval_at_m(m),
        second: fixtures::bundle_second().eval_at_m(m),
        third: fixtures::bundle_third().eval_at_m(m),
        source: NormSource::Fixture,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{RadiusSpec, Sign};

    fn critical(m: u32) -> Hypersphere {
        Hypersphere::new(m, RadiusSpec::T(Rat::int(3)), Sign::Minus).unwrap()
    }

    #[test]
    fn first_norm_matches_tabulated_family() {
        for m in 1..=6u32 {
            let norms = composition_bundle_norms(&critical(m)).unwrap();
            let mm = m as i64;
            assert_eq!(
                norms.first,
                LambdaPoly::from_ints(&[9 * mm * mm, 6 * mm + 12, 1]),
                "m={m}"
            );
        }
    }

    #[test]
    fn second_norm_matches_tabulated_family() {
        for m in 1..=6u32 {
            let norms = composition_bundle_norms(&critical(m)).unwrap();
            let mm = m as i64;
            assert_eq!(
                norms.second,
                LambdaPoly::from_ints(&[
                    27 * mm * mm * mm,
                    27 * mm * mm + 24 * mm + 84,
                    9 * mm + 36,
                    1
                ]),
                "m={m}"
            );
        }
    }

    #[test]
    fn second_norm_routes_agree_off_the_critical_radius() {
        for (m, t) in [(1u32, 1i64), (2, 5), (4, 7), (3, 0)] {
            let h = Hypersphere::new(m, RadiusSpec::T(Rat::int(t)), Sign::Minus).unwrap();
            let norms = composition_bundle_norms(&h).unwrap();
            assert_eq!(norms.second, second_norm_via_pairing(&h), "m={m} t={t}");
        }
    }

    #[test]
    fn third_norm_composition_value() {
        // m=1: lambda^4 + 84 lambda^3 + 630 lambda^2 + 756 lambda + 81
        let norms = composition_bundle_norms(&critical(1)).unwrap();
        assert_eq!(
            norms.third,
            LambdaPoly::from_ints(&[81, 756, 630, 84, 1])
        );
    }

    #[test]
    fn third_norm_fixture_disagrees_in_middle_coefficients() {
        // the tabulated m=1 third norm reads lambda^4 + 84 lambda^3
        // + 916 lambda^2 + 540 lambda + 81
        let fix = fixture_bundle_norms(1);
        assert_eq!(fix.third, LambdaPoly::from_ints(&[81, 540, 916, 84, 1]));
        let comp = composition_bundle_norms(&critical(1)).unwrap();
        assert_eq!(fix.first, comp.first);
        assert_eq!(fix.second, comp.second);
        assert_ne!(fix.third, comp.third);
        // difference is exactly 286 m lambda^2 + (288 m^2 - 504 m) lambda
        let diff = &fix.third - &comp.third;
        assert_eq!(diff, LambdaPoly::from_ints(&[0, -216, 286, 0, 0]));
    }
}
