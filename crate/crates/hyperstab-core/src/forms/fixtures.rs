//! Verbatim transcriptions of the tabulated t=3 coefficient families, kept
//! symbolic in the dimension m. Nothing here is derived; these are the
//! reference values the derivation routes and the numeric oracle are
//! measured against.

use crate::exact::{DimPoly, MCoeffPoly};

fn mcoeff(rows: &[&[i64]]) -> MCoeffPoly {
    MCoeffPoly {
        per_degree: rows.iter().map(|r| DimPoly::from_ints(r)).collect(),
    }
}

/// Quadratic form for the iterated-Laplacian energy on the t=3 hypersphere:
/// lambda^4 + (10m+72) lambda^3 + (25m^2+286m+480) lambda^2
/// + (-36m^3+327m^2-924m+588) lambda - 216 m^4.
pub fn q4_fixture() -> MCoeffPoly {
    mcoeff(&[
        &[0, 0, 0, 0, -216],
        &[588, -924, 327, -36],
        &[480, 286, 25],
        &[72, 10],
        &[1],
    ])
}

/// Quadratic form for the full fourth-order energy with curvature term:
/// identical except in the lambda coefficient,
/// -33m^3 + 312m^2 - 900m + 576.
pub fn q4es_fixture() -> MCoeffPoly {
    mcoeff(&[
        &[0, 0, 0, 0, -216],
        &[576, -900, 312, -33],
        &[480, 286, 25],
        &[72, 10],
        &[1],
    ])
}

/// Curvature-term form 3 (m-1)(m-2)^2 lambda.
pub fn qhat_fixture() -> MCoeffPoly {
    mcoeff(&[&[], &[-12, 24, -15, 3]])
}

/// First bundle norm, t=3: lambda^2 + (6m+12) lambda + 9 m^2.
pub fn bundle_first() -> MCoeffPoly {
    mcoeff(&[&[0, 0, 9], &[12, 6], &[1]])
}

/// Second bundle norm, t=3:
/// lambda^3 + (9m+36) lambda^2 + (27m^2+24m+84) lambda + 27 m^3.
pub fn bundle_second() -> MCoeffPoly {
    mcoeff(&[&[0, 0, 0, 27], &[84, 24, 27], &[36, 9], &[1]])
}

/// Third bundle norm as tabulated, t=3:
/// lambda^4 + (12m+72) lambda^3 + (54m^2+382m+480) lambda^2
/// + (108m^3+516m^2-672m+588) lambda + 81 m^4.
///
/// Operator composition yields 54m^2+96m+480 and
/// 108m^3+228m^2-168m+588 in the two middle slots instead; see the
/// comparison report and the numeric adjudication.
pub fn bundle_third() -> MCoeffPoly {
    mcoeff(&[
        &[0, 0, 0, 0, 81],
        &[588, -672, 516, 108],
        &[480, 382, 54],
        &[72, 12],
        &[1],
    ])
}

/// Tabulated value of the q4 form at the first nonzero eigenvalue
/// lambda_1 = 4m: 936m^4 + 10672m^3 + 3984m^2 + 2352m. Exact evaluation
/// of `q4_fixture` at 4m gives 10492 m^3 in the cubic slot instead; the
/// difference of 180 m^3 is a reproduced discrepancy, not an input.
pub fn q4_lambda1_tabulated() -> DimPoly {
    DimPoly::from_ints(&[0, 2352, 3984, 10672, 936])
}

/// Tabulated value of the q4es form at lambda_1 = 4m:
/// 948m^4 + 10432m^3 + 4080m^2 + 2304m. This one agrees with exact
/// evaluation of `q4es_fixture`.
pub fn q4es_lambda1_tabulated() -> DimPoly {
    DimPoly::from_ints(&[0, 2304, 4080, 10432, 948])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{LambdaPoly, Rat};

    #[test]
    fn q4_fixture_at_m1() {
        assert_eq!(
            q4_fixture().eval_at_m(1),
            LambdaPoly::from_ints(&[-216, -45, 791, 82, 1])
        );
    }

    #[test]
    fn q4es_fixture_matches_q4_at_m1() {
        // the curvature correction vanishes in one dimension
        assert_eq!(q4es_fixture().eval_at_m(1), q4_fixture().eval_at_m(1));
    }

    #[test]
    fn qhat_fixture_at_m3() {
        assert_eq!(qhat_fixture().eval_at_m(3), LambdaPoly::from_ints(&[0, 6]));
        assert!(qhat_fixture().eval_at_m(1).is_zero());
        assert!(qhat_fixture().eval_at_m(2).is_zero());
    }

    #[test]
    fn q4_fixture_constant_term() {
        for m in 1..=5u32 {
            let p = q4_fixture().eval_at_m(m);
            let c = p.coeff(0).as_rational().unwrap();
            assert_eq!(c, Rat::int(-216i64 * (m as i64).pow(4)));
        }
    }

    #[test]
    fn q4es_fixture_evaluation_at_lambda1() {
        // m=2, lambda=8: 119552, matching the tabulated substitution
        let p = q4es_fixture().eval_at_m(2);
        assert_eq!(p.eval(&Rat::int(8)).as_rational().unwrap(), Rat::int(119552));
        assert_eq!(
            Rat::int(q4es_lambda1_tabulated().eval(2)),
            Rat::int(119552)
        );
    }

    #[test]
    fn q4_lambda1_display_differs_by_180_m_cubed() {
        for m in 1..=10u32 {
            let exact = q4_fixture()
                .eval_at_m(m)
                .eval(&Rat::int(4 * m as i64))
                .as_rational()
                .unwrap();
            let tabulated = Rat::int(q4_lambda1_tabulated().eval(m));
            let gap = &tabulated - &exact;
            assert_eq!(gap, Rat::int(180 * (m as i64).pow(3)), "m={m}");
        }
    }
}
