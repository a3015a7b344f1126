//! Exact Laplace spectrum of the round sphere S^p(R): eigenvalues
//! lambda_j = j(j + p - 1)/R^2 and their multiplicities.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::exact::Rat;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumLevel {
    pub j: u64,
    pub lambda: Rat,
    pub multiplicity: BigInt,
}

/// lambda_j = j(j + p - 1) / R^2, keyed by R^2 so rational squared radii
/// stay exact end to end.
pub fn eigenvalue(p: u32, r2: &Rat, j: u64) -> Rat {
    assert!(r2.is_positive(), "R^2 must be positive");
    let num = Rat::int(BigInt::from(j) * (BigInt::from(j) + BigInt::from(p) - BigInt::one()));
    &num / r2
}

fn binomial(n: &BigInt, k: i64) -> BigInt {
    use num_traits::ToPrimitive;
    if k < 0 {
        return BigInt::zero();
    }
    let k = BigInt::from(k);
    if &k > n {
        return BigInt::zero();
    }
    // iterate over the smaller of k and n-k; each partial product is
    // exactly divisible
    let small = std::cmp::min(k.clone(), n - &k);
    if let (Some(n64), Some(s64)) = (n.to_u64(), small.to_u64()) {
        if let Some(r) = binomial_u128(n64, s64) {
            return BigInt::from(r);
        }
    }
    let mut r = BigInt::one();
    let mut i = BigInt::one();
    while i <= small {
        r = r * (n - &small + &i) / &i;
        i += 1;
    }
    r
}

fn binomial_u128(n: u64, k: u64) -> Option<u128> {
    let mut r: u128 = 1;
    for i in 1..=k {
        r = r.checked_mul((n - k + i) as u128)? / i as u128;
    }
    Some(r)
}

/// Multiplicity of the j-th eigenvalue on S^p. The convention
/// C(n, k) = 0 for k < 0 makes the closed formula
/// C(p+j, j) - C(p+j-2, j-2) cover j = 0 and j = 1 as well.
pub fn multiplicity(p: u32, j: u64) -> BigInt {
    let n = BigInt::from(p) + BigInt::from(j);
    let m = binomial(&n, j as i64) - binomial(&(n - 2), j as i64 - 2);
    // base cases kept as redundant checks on the uniform code path
    if j == 0 {
        debug_assert!(m.is_one());
    }
    if j == 1 {
        debug_assert_eq!(m, BigInt::from(p) + 1);
    }
    m
}

/// All levels with lambda_j < lambda_cap, in increasing j. Finite because
/// the eigenvalues are strictly increasing and unbounded.
pub fn spectrum_iter(p: u32, r2: &Rat, lambda_cap: &Rat) -> Vec<SpectrumLevel> {
    let mut out = Vec::new();
    let mut j = 0u64;
    loop {
        let lambda = eigenvalue(p, r2, j);
        if &lambda >= lambda_cap {
            break;
        }
        out.push(SpectrumLevel {
            j,
            lambda,
            multiplicity: multiplicity(p, j),
        });
        j += 1;
    }
    out
}
