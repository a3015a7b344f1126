//! Symbolic sections of the pullback bundle along the hypersphere, spanned
//! by f nu and grad f for an abstract Laplace eigenfunction f with
//! Delta f = lambda f. The connection Laplacian acts inside this span:
//!
//!   Lap(f nu)   = (lambda + m t) f nu + 2 c grad f
//!   Lap(grad f) = 2 c lambda f nu + (lambda - ricci + t) grad f
//!
//! where the grad f rule combines the Gauss formula for the tangential
//! second fundamental form with the Ricci commutation
//! Delta grad f = (lambda - ricci) grad f.

use crate::exact::{LambdaPoly, QuadExt, Rat};
use crate::geometry::Hypersphere;

/// p(lambda) f nu + q(lambda) grad f.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalSection {
    pub nu: LambdaPoly,
    pub grad: LambdaPoly,
}

impl NormalSection {
    /// The section f nu itself.
    pub fn unit() -> Self {
        NormalSection {
            nu: LambdaPoly::constant(QuadExt::one()),
            grad: LambdaPoly::zero(),
        }
    }

    pub fn new(nu: LambdaPoly, grad: LambdaPoly) -> Self {
        NormalSection { nu, grad }
    }

    /// One application of the connection Laplacian.
    pub fn bar_laplacian(&self, h: &Hypersphere) -> Self {
        let mt = QuadExt::rational(h.norm_a_sq.clone());
        let two_c = h.c.scale(&Rat::int(2));
        // lambda + m t
        let lam_plus_mt = &LambdaPoly::monomial(1, QuadExt::one()) + &LambdaPoly::constant(mt);
        // lambda - ricci + t
        let shift = QuadExt::rational(&h.t - &h.ricci);
        let lam_shift = &LambdaPoly::monomial(1, QuadExt::one()) + &LambdaPoly::constant(shift);

        let nu = &(&lam_plus_mt * &self.nu) + &self.grad.scale(&two_c).shift_up(1);
        let grad = &self.nu.scale(&two_c) + &(&lam_shift * &self.grad);
        NormalSection { nu, grad }
    }

    /// L^2 pairing under the normalization `int f^2 = 1`:
    /// int <s1, s2> = p1 p2 + lambda q1 q2.
    pub fn pairing(&self, other: &Self) -> LambdaPoly {
        &(&self.nu * &other.nu) + &(&self.grad * &other.grad).shift_up(1)
    }

    pub fn scale(&self, k: &QuadExt) -> Self {
        NormalSection {
            nu: self.nu.scale(k),
            grad: self.grad.scale(k),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        NormalSection {
            nu: &self.nu - &other.nu,
            grad: &self.grad - &other.grad,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{RadiusSpec, Sign};

    fn sphere(m: u32, t: i64, sigma: Sign) -> Hypersphere {
        Hypersphere::new(m, RadiusSpec::T(Rat::int(t)), sigma).unwrap()
    }

    #[test]
    fn laplacian_of_normal_section() {
        // (1,0) on m=2, t=3: ((lambda + 6), -2 sqrt 3)
        let h = sphere(2, 3, Sign::Minus);
        let l = NormalSection::unit().bar_laplacian(&h);
        assert_eq!(l.nu, LambdaPoly::from_ints(&[6, 1]));
        assert_eq!(
            l.grad,
            LambdaPoly::constant(QuadExt::root_term(Rat::int(-2), Rat::int(3)).unwrap())
        );
    }

    #[test]
    fn laplacian_at_great_sphere() {
        let h = sphere(2, 0, Sign::Minus);
        let l = NormalSection::unit().bar_laplacian(&h);
        assert_eq!(l.nu, LambdaPoly::from_ints(&[0, 1]));
        assert!(l.grad.is_zero());
    }

    #[test]
    fn laplacian_of_gradient_section() {
        // (0,1) on m=1, t=3 (ricci = 0), sigma = +1: (2 sqrt(3) lambda, lambda + 3)
        let h = sphere(1, 3, Sign::Plus);
        let s = NormalSection::new(LambdaPoly::zero(), LambdaPoly::constant(QuadExt::one()));
        let l = s.bar_laplacian(&h);
        assert_eq!(
            l.nu,
            LambdaPoly::monomial(1, QuadExt::root_term(Rat::int(2), Rat::int(3)).unwrap())
        );
        assert_eq!(l.grad, LambdaPoly::from_ints(&[3, 1]));
    }

    #[test]
    fn pairing_is_self_adjoint_for_laplacian() {
        let h = sphere(3, 5, Sign::Minus);
        let s1 = NormalSection::new(
            LambdaPoly::from_ints(&[1, 2]),
            LambdaPoly::from_ints(&[0, 3]),
        );
        let s2 = NormalSection::new(
            LambdaPoly::from_ints(&[-4, 0, 1]),
            LambdaPoly::from_ints(&[7]),
        );
        let lhs = s1.bar_laplacian(&h).pairing(&s2);
        let rhs = s1.pairing(&s2.bar_laplacian(&h));
        assert_eq!(lhs, rhs);
    }
}
