//! Exact rational scalars used throughout the algebraic kernel.
//!
//! Everything algebraic (brackets, kernels, ranks, cohomology) runs over
//! arbitrary-precision rationals; floats are confined to the matrix-group
//! and verification layers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

/// `n/d` as an exact rational. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Integer as an exact rational.
pub fn rint(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rzero() -> Rat {
    Rat::zero()
}

pub fn rone() -> Rat {
    Rat::one()
}

/// Parse `"n"` or `"n/d"` with optional sign.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| format!("invalid numerator `{num}`"))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| format!("invalid denominator `{den}`"))?;
    if d.is_zero() {
        return Err(format!("zero denominator in `{s}`"));
    }
    Ok(Rat::new(n, d))
}

/// Render as `"n"` or `"n/d"`, the form `parse_rat` accepts.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Nearest f64; exact rationals of modest height convert without surprises.
pub fn to_f64(r: &Rat) -> f64 {
    let n = r.numer();
    let d = r.denom();
    // BigInt -> f64 saturates for huge values; fine for reporting.
    bigint_f64(n) / bigint_f64(d)
}

fn bigint_f64(n: &BigInt) -> f64 {
    let (sign, digits) = n.to_u64_digits();
    let mut x = 0.0f64;
    for d in digits.iter().rev() {
        x = x * 1.8446744073709552e19 + *d as f64;
    }
    if sign == num_bigint::Sign::Minus {
        -x
    } else {
        x
    }
}

/// |r| as a rational, for pivot selection diagnostics.
pub fn rabs(r: &Rat) -> Rat {
    r.abs()
}
