//! Normal-index computation: evaluates a quadratic-form polynomial over
//! the exact sphere spectrum and counts multiplicities of strictly
//! negative levels, with a rigorous positivity cutoff for the tail.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{cauchy_root_bound, Rat, RationalEvaluator};
use crate::forms::{energy_form, Energy, Q4Route, QuadraticFormPoly, Source};
use crate::geometry::Hypersphere;
use crate::spectrum::{spectrum_iter, SpectrumLevel};

/// One spectrum level together with the exact form value there.
#[derive(Clone, Debug, Serialize)]
pub struct LevelValue {
    pub j: u64,
    pub lambda: Rat,
    pub multiplicity: BigInt,
    pub value: Rat,
}

#[derive(Clone, Debug, Serialize)]
pub struct IndexReport {
    pub energy: Energy,
    pub m: u32,
    pub source: Source,
    /// Sum of multiplicities over strictly negative levels.
    pub index: BigInt,
    pub negative_levels: Vec<LevelValue>,
    pub zero_levels: Vec<LevelValue>,
    /// Levels at or above this bound are provably positive.
    pub cutoff: Rat,
    /// True when the form is identically zero (index 0, all levels null).
    pub zero_form: bool,
}

/// Exact form values on every spectrum level below the cap.
pub fn evaluate_on_spectrum(
    qf: &QuadraticFormPoly,
    p: u32,
    r2: &Rat,
    cap: &Rat,
) -> Result<Vec<(SpectrumLevel, Rat)>> {
    let evaluator = RationalEvaluator::new(&qf.poly)?;
    Ok(spectrum_iter(p, r2, cap)
        .into_iter()
        .map(|level| {
            let value = evaluator.eval(&level.lambda);
            (level, value)
        })
        .collect())
}

/// Index with respect to normal variations, on the spectrum of S^p(R).
/// Strict negativity counts toward the index; zero levels are reported
/// separately as a nullity-like list.
pub fn normal_index(qf: &QuadraticFormPoly, p: u32, r2: &Rat) -> Result<IndexReport> {
    if qf.poly.is_zero() {
        return Ok(IndexReport {
            energy: qf.energy,
            m: qf.m,
            source: qf.source,
            index: BigInt::zero(),
            negative_levels: vec![],
            zero_levels: vec![],
            cutoff: Rat::zero(),
            zero_form: true,
        });
    }
    let cutoff = cauchy_root_bound(&qf.poly).map_err(|e| match e {
        Error::BadLeadingCoefficient(_) => Error::UnboundedIndex,
        other => other,
    })?;

    let mut negative_levels = Vec::new();
    let mut zero_levels = Vec::new();
    let mut index = BigInt::zero();
    for (level, value) in evaluate_on_spectrum(qf, p, r2, &cutoff)? {
        if value.is_negative() {
            index += &level.multiplicity;
            negative_levels.push(LevelValue {
                j: level.j,
                lambda: level.lambda,
                multiplicity: level.multiplicity,
                value,
            });
        } else if value.is_zero() {
            zero_levels.push(LevelValue {
                j: level.j,
                lambda: level.lambda,
                multiplicity: level.multiplicity,
                value,
            });
        }
    }

    Ok(IndexReport {
        energy: qf.energy,
        m: qf.m,
        source: qf.source,
        index,
        negative_levels,
        zero_levels,
        cutoff,
        zero_form: false,
    })
}

/// Index of a form on its own hypersphere S^m(1/2).
pub fn normal_index_on_small_sphere(qf: &QuadraticFormPoly) -> Result<IndexReport> {
    normal_index(qf, qf.m, &Rat::new(1, 4))
}

/// One report per (m, route) over the t=3 family, deterministic order.
pub fn index_sweep(
    energy: Energy,
    m_range: std::ops::RangeInclusive<u32>,
    routes: &[Q4Route],
) -> Result<Vec<IndexReport>> {
    let mut out = Vec::new();
    for m in m_range {
        let h = Hypersphere::critical(m);
        for route in routes {
            let qf = energy_form(energy, &h, &Rat::one(), *route)?;
            out.push(normal_index_on_small_sphere(&qf)?);
        }
    }
    Ok(out)
}
