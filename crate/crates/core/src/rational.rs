//! Exact rationals and their fixed-point decimal rendering.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always stored reduced with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn from_u64(v: u64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Renders `value` with exactly `places` decimals, rounding half to even.
pub fn to_decimal(value: &Rational, places: u32) -> String {
    let scale = BigInt::from(10u32).pow(places);
    let scaled = value.abs() * Rational::from_integer(scale.clone());
    let floor = scaled.floor().to_integer();
    let frac = scaled - Rational::from_integer(floor.clone());
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let mut q = floor;
    if frac > half || (frac == half && q.is_odd()) {
        q += 1;
    }
    let (int_part, frac_part) = q.div_rem(&scale);
    let sign = if value.is_negative() && !(int_part.is_zero() && frac_part.is_zero()) {
        "-"
    } else {
        ""
    };
    if places == 0 {
        return format!("{sign}{int_part}");
    }
    format!(
        "{sign}{int_part}.{frac:0>width$}",
        frac = frac_part.to_string(),
        width = places as usize
    )
}

/// Four-decimal rendering used throughout reports and tables.
pub fn decimal4(value: &Rational) -> String {
    to_decimal(value, 4)
}

/// True when `value · 10^places` sits exactly halfway between two integers.
pub fn is_rounding_tie(value: &Rational, places: u32) -> bool {
    let scale = BigInt::from(10u32).pow(places);
    let scaled = value.abs() * Rational::from_integer(scale);
    let frac = scaled.fract();
    frac == Rational::new(BigInt::one(), BigInt::from(2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_fixed_point() {
        assert_eq!(decimal4(&ratio(32, 45)), "0.7111");
        assert_eq!(decimal4(&ratio(2, 3)), "0.6667");
        assert_eq!(decimal4(&ratio(3, 4)), "0.7500");
        assert_eq!(decimal4(&ratio(1, 1)), "1.0000");
        assert_eq!(decimal4(&ratio(-1, 3)), "-0.3333");
        assert_eq!(to_decimal(&ratio(7, 2), 0), "4");
    }

    #[test]
    fn ties_round_to_even() {
        // 0.00005 -> 0.0000, 0.00015 -> 0.0002
        assert_eq!(decimal4(&ratio(1, 20000)), "0.0000");
        assert_eq!(decimal4(&ratio(3, 20000)), "0.0002");
        assert!(is_rounding_tie(&ratio(3, 20000), 4));
        assert!(!is_rounding_tie(&ratio(1, 3), 4));
    }
}
