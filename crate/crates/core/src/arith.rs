//! Exact integer kernel: per-path pair counts and exact `m`-th root ceilings.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The two values `N({(u,i),(w,j)}, H_k)` can take on one path of a full
/// cover. `aligned` applies when `(u,i)` and `(w,j)` are joined by a path of
/// cross-edges, `split` otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairCount {
    pub length: u32,
    pub fold: u32,
    pub aligned: BigUint,
    pub split: BigUint,
}

impl PairCount {
    pub fn value(&self, aligned: bool) -> &BigUint {
        if aligned {
            &self.aligned
        } else {
            &self.split
        }
    }

    /// Smaller of the two values.
    pub fn min(&self) -> &BigUint {
        std::cmp::min(&self.aligned, &self.split)
    }
}

/// `aligned = ((m-1)^l + (-1)^l (m-1)) / m` and `split = ((m-1)^l - (-1)^l) / m`.
pub fn pair_counts(length: u32, m: u32) -> Result<PairCount> {
    if m < 2 {
        return Err(Error::FoldTooSmall { m, min: 2 });
    }
    if length < 1 {
        return Err(Error::ZeroLength(length as usize));
    }
    let base = BigInt::from(m - 1);
    let power = num_traits::pow(base.clone(), length as usize);
    let sign = if length.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    };
    let divisor = BigInt::from(m);
    let aligned = exact_div(&(&power + &sign * &base), &divisor)?;
    let split = exact_div(&(&power - &sign), &divisor)?;
    Ok(PairCount {
        length,
        fold: m,
        aligned: to_natural(aligned),
        split: to_natural(split),
    })
}

/// Quotient of an exact division; a nonzero remainder is reported as an
/// error because every division in this crate is known to be exact.
pub fn exact_div(numerator: &BigInt, divisor: &BigInt) -> Result<BigInt> {
    if divisor.is_zero() || !(numerator % divisor).is_zero() {
        return Err(Error::InexactDivision {
            numerator: numerator.to_string(),
            divisor: divisor.to_string(),
        });
    }
    Ok(numerator / divisor)
}

pub(crate) fn to_natural(v: BigInt) -> BigUint {
    assert!(!v.is_negative(), "negative count {v}");
    v.to_biguint().expect("nonnegative")
}

/// Least `c` with `c^m >= v`, in exact integer arithmetic.
pub fn ceil_mth_root(m: u32, v: &BigUint) -> BigUint {
    assert!(m >= 1, "root degree must be positive");
    if m == 1 || v.is_zero() {
        return v.clone();
    }
    let floor = v.nth_root(m);
    if &floor.pow(m) == v {
        floor
    } else {
        floor + 1u32
    }
}

/// `(m-1)^e` as a signed integer, used by the closed forms.
pub(crate) fn pow_int(base: i64, exp: u32) -> BigInt {
    num_traits::pow(BigInt::from(base), exp as usize)
}

/// `(-1)^e`.
pub(crate) fn neg_one_pow(exp: u64) -> BigInt {
    if exp.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// Converts a small `BigUint` to `u128` when it fits.
pub(crate) fn to_u128(v: &BigUint) -> Option<u128> {
    v.to_u128()
}
