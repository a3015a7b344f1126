//! Dense univariate polynomials in the spectral parameter lambda, with
//! coefficients in Q(sqrt(t)). Everything here stays degree <= 4, so a
//! dense representation with trailing-zero trimming is the right tool.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::quadext::QuadExt;
use crate::exact::rat::Rat;

#[derive(Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct LambdaPoly {
    /// Coefficient of lambda^i at index i; trailing zeros trimmed.
    coeffs: Vec<QuadExt>,
}

impl LambdaPoly {
    pub fn zero() -> Self {
        LambdaPoly { coeffs: vec![] }
    }

    pub fn constant(c: impl Into<QuadExt>) -> Self {
        Self::from_coeffs(vec![c.into()])
    }

    /// `c * lambda^degree`.
    pub fn monomial(degree: usize, c: impl Into<QuadExt>) -> Self {
        let mut coeffs = vec![QuadExt::zero(); degree + 1];
        coeffs[degree] = c.into();
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(coeffs: Vec<QuadExt>) -> Self {
        let mut p = LambdaPoly { coeffs };
        p.trim();
        p
    }

    /// Coefficients lambda^0.. as exact rationals.
    pub fn from_rationals(coeffs: &[Rat]) -> Self {
        Self::from_coeffs(coeffs.iter().cloned().map(QuadExt::rational).collect())
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| QuadExt::from(c)).collect())
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[QuadExt] {
        &self.coeffs
    }

    /// Coefficient of lambda^i (zero beyond the stored degree).
    pub fn coeff(&self, i: usize) -> QuadExt {
        self.coeffs.get(i).cloned().unwrap_or_else(QuadExt::zero)
    }

    pub fn leading(&self) -> Option<&QuadExt> {
        self.coeffs.last()
    }

    pub fn is_rational_only(&self) -> bool {
        self.coeffs.iter().all(QuadExt::is_rational)
    }

    pub fn rational_coeffs(&self) -> Result<Vec<Rat>> {
        self.coeffs.iter().map(QuadExt::as_rational).collect()
    }

    /// Exact Horner evaluation at a rational point.
    pub fn eval(&self, lambda: &Rat) -> QuadExt {
        let mut acc = QuadExt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.scale(lambda) + c;
        }
        acc
    }

    pub fn scale(&self, k: &QuadExt) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn scale_rat(&self, k: &Rat) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c.scale(k)).collect())
    }

    /// Multiplication by lambda^k.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![QuadExt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::from_coeffs(coeffs)
    }

    /// Applies the sigma -> -sigma involution to every coefficient.
    pub fn root_flipped(&self) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(QuadExt::root_flipped).collect())
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(QuadExt::to_f64).collect()
    }

    pub fn eval_f64(&self, lambda: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * lambda + c.to_f64())
    }
}

impl Add for &LambdaPoly {
    type Output = LambdaPoly;
    fn add(self, rhs: &LambdaPoly) -> LambdaPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        LambdaPoly::from_coeffs(coeffs)
    }
}

impl Sub for &LambdaPoly {
    type Output = LambdaPoly;
    fn sub(self, rhs: &LambdaPoly) -> LambdaPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        LambdaPoly::from_coeffs(coeffs)
    }
}

impl Mul for &LambdaPoly {
    type Output = LambdaPoly;
    fn mul(self, rhs: &LambdaPoly) -> LambdaPoly {
        if self.is_zero() || rhs.is_zero() {
            return LambdaPoly::zero();
        }
        let mut coeffs = vec![QuadExt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        LambdaPoly::from_coeffs(coeffs)
    }
}

impl Neg for &LambdaPoly {
    type Output = LambdaPoly;
    fn neg(self) -> LambdaPoly {
        LambdaPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for LambdaPoly {
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
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*L")?,
                _ => write!(f, "({c})*L^{i}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for LambdaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Denominator-cleared form of a rational-only polynomial, for fast exact
/// evaluation over many rational points: p(a/b) =
/// (sum_i c_i a^i b^(d-i)) / (D b^d) with integer c_i, needing a single
/// normalization per point instead of one per arithmetic step.
pub struct RationalEvaluator {
    scaled: Vec<num_bigint::BigInt>,
    denom: num_bigint::BigInt,
}

impl RationalEvaluator {
    pub fn new(p: &LambdaPoly) -> Result<Self> {
        use num_bigint::BigInt;
        let coeffs = p.rational_coeffs()?;
        let mut denom = BigInt::from(1);
        for c in &coeffs {
            denom = num_integer::lcm(denom, c.denom().clone());
        }
        let scaled = coeffs
            .iter()
            .map(|c| c.numer() * (&denom / c.denom()))
            .collect();
        Ok(RationalEvaluator { scaled, denom })
    }

    pub fn eval(&self, lambda: &Rat) -> Rat {
        use num_bigint::BigInt;
        use num_traits::Zero;
        if self.scaled.is_empty() {
            return Rat::zero();
        }
        let a = lambda.numer();
        let b = lambda.denom();
        // Horner in the numerator: acc = acc * a + c_i * b^(d-i)
        let mut acc = BigInt::zero();
        let mut b_pow = BigInt::from(1);
        let d = self.scaled.len() - 1;
        let mut powers = Vec::with_capacity(d + 1);
        for _ in 0..=d {
            powers.push(b_pow.clone());
            b_pow *= b;
        }
        for (i, c) in self.scaled.iter().enumerate().rev() {
            acc = acc * a + c * &powers[d - i];
        }
        Rat::new(acc, &self.denom * &powers[d])
    }
}

/// Cauchy-style tail bound: for a polynomial with positive rational leading
/// coefficient returns B = 1 + max_i |a_i / a_d| with p(lambda) > 0 for every
/// lambda >= B.
pub fn cauchy_root_bound(p: &LambdaPoly) -> Result<Rat> {
    let lead = p.leading().ok_or(Error::ZeroPolynomial)?;
    let lead = lead
        .as_rational()
        .map_err(|_| Error::BadLeadingCoefficient(lead.to_string()))?;
    if !lead.is_positive() {
        return Err(Error::BadLeadingCoefficient(lead.to_string()));
    }
    let d = p.degree().expect("nonzero");
    let mut max_ratio = Rat::zero();
    for i in 0..d {
        let c = p.coeff(i).as_rational()?;
        let ratio = (&c / &lead).abs();
        if ratio > max_ratio {
            max_ratio = ratio;
        }
    }
    Ok(Rat::one() + max_ratio)
}
