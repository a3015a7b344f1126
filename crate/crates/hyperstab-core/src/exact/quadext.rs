//! Exact arithmetic in the quadratic extension Q(sqrt(t)).
//!
//! A scalar is stored as `rat + irr * sqrt(radicand)`. The radicand is a
//! runtime tag shared by every scalar taking part in a computation; scalars
//! with `irr == 0` are pure rationals and combine with any radicand. The
//! representation is normalized deterministically: a pure-rational value
//! carries tag 0, and a perfect-square radicand folds into the rational
//! part, so structural equality is value equality.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::rat::Rat;

#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct QuadExt {
    /// Rational part x of x + y sqrt(t).
    pub rat: Rat,
    /// Coefficient y of sqrt(t).
    pub irr: Rat,
    /// The radicand t >= 0; 0 whenever `irr == 0`.
    #[serde(rename = "t")]
    pub radicand: Rat,
}

impl QuadExt {
    pub fn rational(x: impl Into<Rat>) -> Self {
        QuadExt {
            rat: x.into(),
            irr: Rat::zero(),
            radicand: Rat::zero(),
        }
    }

    pub fn zero() -> Self {
        Self::rational(Rat::zero())
    }

    pub fn one() -> Self {
        Self::rational(Rat::one())
    }

    /// `coeff * sqrt(radicand)`; fails on a negative radicand.
    pub fn root_term(coeff: impl Into<Rat>, radicand: impl Into<Rat>) -> Result<Self> {
        Self::new(Rat::zero(), coeff.into(), radicand.into())
    }

    pub fn new(rat: Rat, irr: Rat, radicand: Rat) -> Result<Self> {
        if radicand.is_negative() {
            return Err(Error::NegativeRadicand(radicand.to_string()));
        }
        Ok(Self::make(rat, irr, radicand))
    }

    fn make(rat: Rat, irr: Rat, radicand: Rat) -> Self {
        if irr.is_zero() || radicand.is_zero() {
            return QuadExt {
                rat,
                irr: Rat::zero(),
                radicand: Rat::zero(),
            };
        }
        if let Some(root) = radicand.sqrt_exact() {
            return QuadExt {
                rat: rat + irr * root,
                irr: Rat::zero(),
                radicand: Rat::zero(),
            };
        }
        QuadExt { rat, irr, radicand }
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.irr.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.irr.is_zero()
    }

    /// The rational part, provided the value carries no root term.
    pub fn as_rational(&self) -> Result<Rat> {
        if self.is_rational() {
            Ok(self.rat.clone())
        } else {
            Err(Error::IrrationalCoefficients)
        }
    }

    pub fn conj(&self) -> Self {
        Self::make(self.rat.clone(), -&self.irr, self.radicand.clone())
    }

    /// Flips the sign of the root part (the sigma -> -sigma involution).
    pub fn root_flipped(&self) -> Self {
        self.conj()
    }

    /// Field norm x^2 - t y^2; zero exactly when the value is zero.
    pub fn field_norm(&self) -> Rat {
        &(&self.rat * &self.rat) - &(&(&self.irr * &self.irr) * &self.radicand)
    }

    fn unified_radicand(&self, rhs: &Self) -> Result<Rat> {
        match (self.irr.is_zero(), rhs.irr.is_zero()) {
            (true, true) => Ok(Rat::zero()),
            (false, true) => Ok(self.radicand.clone()),
            (true, false) => Ok(rhs.radicand.clone()),
            (false, false) => {
                if self.radicand == rhs.radicand {
                    Ok(self.radicand.clone())
                } else {
                    Err(Error::RadicandMismatch {
                        lhs: self.radicand.to_string(),
                        rhs: rhs.radicand.to_string(),
                    })
                }
            }
        }
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        let t = self.unified_radicand(rhs)?;
        Ok(Self::make(&self.rat + &rhs.rat, &self.irr + &rhs.irr, t))
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.try_add(&rhs.neg_ref())
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        let t = self.unified_radicand(rhs)?;
        let rat = &(&self.rat * &rhs.rat) + &(&(&self.irr * &rhs.irr) * &t);
        let irr = &(&self.rat * &rhs.irr) + &(&self.irr * &rhs.rat);
        Ok(Self::make(rat, irr, t))
    }

    pub fn try_div(&self, rhs: &Self) -> Result<Self> {
        let norm = rhs.field_norm();
        if norm.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let inv_norm = norm.recip().expect("norm checked nonzero");
        let conj = rhs.conj();
        let prod = self.try_mul(&conj)?;
        Ok(Self::make(
            &prod.rat * &inv_norm,
            &prod.irr * &inv_norm,
            prod.radicand,
        ))
    }

    fn neg_ref(&self) -> Self {
        Self::make(-&self.rat, -&self.irr, self.radicand.clone())
    }

    pub fn scale(&self, k: &Rat) -> Self {
        Self::make(&self.rat * k, &self.irr * k, self.radicand.clone())
    }

    pub fn square(&self) -> Self {
        self.try_mul(self).expect("matching radicand")
    }

    pub fn to_f64(&self) -> f64 {
        self.rat.to_f64() + self.irr.to_f64() * self.radicand.to_f64().sqrt()
    }
}

/// The four field operations, with structured errors on radicand mismatch
/// and division by zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn quadext_arith(a: &QuadExt, b: &QuadExt, op: ArithOp) -> Result<QuadExt> {
    match op {
        ArithOp::Add => a.try_add(b),
        ArithOp::Sub => a.try_sub(b),
        ArithOp::Mul => a.try_mul(b),
        ArithOp::Div => a.try_div(b),
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.irr.is_zero() {
            write!(f, "{}", self.rat)
        } else if self.rat.is_zero() {
            write!(f, "{}*sqrt({})", self.irr, self.radicand)
        } else {
            write!(f, "{} + {}*sqrt({})", self.rat, self.irr, self.radicand)
        }
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl From<Rat> for QuadExt {
    fn from(r: Rat) -> Self {
        QuadExt::rational(r)
    }
}

impl From<i64> for QuadExt {
    fn from(n: i64) -> Self {
        QuadExt::rational(Rat::int(n))
    }
}

// Operator impls panic on radicand mismatch; internal algebra always works
// within a single extension, so a mismatch is a programming error there.
// Fallible call sites use the try_* methods.
macro_rules! quad_binop {
    ($trait:ident, $method:ident, $try_method:ident) => {
        impl $trait for &QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: &QuadExt) -> QuadExt {
                self.$try_method(rhs).expect("radicand mismatch")
            }
        }
        impl $trait for QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: QuadExt) -> QuadExt {
                (&self).$try_method(&rhs).expect("radicand mismatch")
            }
        }
        impl $trait<&QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: &QuadExt) -> QuadExt {
                (&self).$try_method(rhs).expect("radicand mismatch")
            }
        }
    };
}

quad_binop!(Add, add, try_add);
quad_binop!(Sub, sub, try_sub);
quad_binop!(Mul, mul, try_mul);

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        self.neg_ref()
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        self.neg_ref()
    }
}
