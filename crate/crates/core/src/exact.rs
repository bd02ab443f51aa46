//! Exact rational scalars. Used as an optional shadow of the floating
//! representation so that equality questions (fixed-point coincidence,
//! exact overlaps) can be decided without tolerances.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

pub type Rat = BigRational;

/// `num / den` as an exact rational. `den` must be nonzero.
pub fn rat(num: i64, den: i64) -> Rat {
    assert!(den != 0, "rational denominator must be nonzero");
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().expect("rational out of f64 range")
}

pub fn rat_zero() -> Rat {
    BigRational::from_integer(BigInt::from(0))
}

pub fn rat_one() -> Rat {
    BigRational::from_integer(BigInt::from(1))
}
