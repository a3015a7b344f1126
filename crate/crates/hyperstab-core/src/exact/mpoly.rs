//! Symbolic-dimension presentation of a lambda-polynomial family: one
//! integer-coefficient polynomial in the domain dimension m per lambda
//! degree, recovered from per-m samples by exact Lagrange interpolation.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::lambda_poly::LambdaPoly;
use crate::exact::rat::Rat;

/// Integer-coefficient polynomial in the symbol m.
#[derive(Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct DimPoly {
    /// Coefficient of m^i at index i; trailing zeros trimmed.
    coeffs: Vec<BigInt>,
}

impl DimPoly {
    pub fn zero() -> Self {
        DimPoly { coeffs: vec![] }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        let mut p = DimPoly {
            coeffs: coeffs.iter().map(|&c| BigInt::from(c)).collect(),
        };
        p.trim();
        p
    }

    fn from_big(coeffs: Vec<BigInt>) -> Self {
        let mut p = DimPoly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn eval(&self, m: u32) -> BigInt {
        let m = BigInt::from(m);
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * &m + c;
        }
        acc
    }
}

impl fmt::Display for DimPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*m")?,
                _ => write!(f, "{c}*m^{i}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for DimPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A lambda-polynomial whose coefficients are integer polynomials in m.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct MCoeffPoly {
    /// Index = lambda degree.
    pub per_degree: Vec<DimPoly>,
}

impl MCoeffPoly {
    pub fn is_zero(&self) -> bool {
        self.per_degree.iter().all(DimPoly::is_zero)
    }

    pub fn eval_at_m(&self, m: u32) -> LambdaPoly {
        let coeffs: Vec<Rat> = self
            .per_degree
            .iter()
            .map(|p| Rat::int(p.eval(m)))
            .collect();
        LambdaPoly::from_rationals(&coeffs)
    }
}

/// Default interpolation degree: every coefficient family here is a
/// polynomial of degree <= 4 in the dimension.
pub const DEFAULT_M_DEGREE: usize = 4;

/// Recovers the symbolic-m coefficients of a lambda-polynomial family from
/// exact samples. Fits the first `max_degree + 1` samples and treats every
/// further sample as a holdout; a holdout mismatch is a structured error.
pub fn interpolate_m(samples: &[(u32, LambdaPoly)], max_degree: usize) -> Result<MCoeffPoly> {
    if samples.is_empty() {
        return Err(Error::EmptySamples);
    }
    for (i, (m, _)) in samples.iter().enumerate() {
        if samples[..i].iter().any(|(m2, _)| m2 == m) {
            return Err(Error::DuplicateSample(*m));
        }
    }
    let width = samples
        .iter()
        .map(|(_, p)| p.coeffs().len())
        .max()
        .unwrap_or(0);

    let fit = samples.len().min(max_degree + 1);
    let nodes = &samples[..fit];

    let mut per_degree = Vec::with_capacity(width);
    for deg in 0..width {
        let points: Vec<(Rat, Rat)> = nodes
            .iter()
            .map(|(m, p)| Ok((Rat::int(*m), p.coeff(deg).as_rational()?)))
            .collect::<Result<_>>()?;
        let coeffs = lagrange(&points);
        let ints = coeffs
            .into_iter()
            .map(|c| {
                if c.is_integer() {
                    Ok(c.numer().clone())
                } else {
                    Err(Error::NonIntegerCoefficient(c.to_string()))
                }
            })
            .collect::<Result<Vec<BigInt>>>()?;
        per_degree.push(DimPoly::from_big(ints));
    }
    while matches!(per_degree.last(), Some(p) if p.is_zero()) {
        per_degree.pop();
    }
    let result = MCoeffPoly { per_degree };

    for (m, expected) in samples {
        if &result.eval_at_m(*m) != expected {
            return Err(Error::InconsistentSamples {
                degree: fit - 1,
                m: *m,
            });
        }
    }
    Ok(result)
}

/// Exact Lagrange interpolation; returns coefficients of the interpolant.
fn lagrange(points: &[(Rat, Rat)]) -> Vec<Rat> {
    let n = points.len();
    let mut acc = vec![Rat::zero(); n];
    for (i, (xi, yi)) in points.iter().enumerate() {
        // basis polynomial prod_{j!=i} (x - x_j) / (x_i - x_j)
        let mut basis = vec![Rat::one()];
        let mut denom = Rat::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if j == i {
                continue;
            }
            basis = mul_linear(&basis, xj);
            denom = denom * (xi - xj);
        }
        let w = yi / &denom;
        for (k, b) in basis.iter().enumerate() {
            acc[k] = &acc[k] + &(b * &w);
        }
    }
    while matches!(acc.last(), Some(c) if c.is_zero()) {
        acc.pop();
    }
    acc
}

/// Multiplies the coefficient vector `p` by the linear factor (x - root).
fn mul_linear(p: &[Rat], root: &Rat) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); p.len() + 1];
    for (k, c) in p.iter().enumerate() {
        out[k + 1] = &out[k + 1] + c;
        out[k] = &out[k] - &(c * root);
    }
    out
}
