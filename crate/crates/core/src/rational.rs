//! Exact rational scalars.

use alloc::string::{String, ToString};

use num_bigint::BigInt;
use num_traits::One;

/// Arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `p` or `p/q`, matching the coefficient syntax of the expression grammar.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        alloc::format!("{}/{}", r.numer(), r.denom())
    }
}

/// Coefficient prefix for a term: empty for 1, otherwise `p*` or `p/q*`.
/// The sign is not included.
pub(crate) fn coefficient_prefix(abs: &Rational) -> String {
    if abs.is_one() {
        String::new()
    } else {
        alloc::format!("{}*", format_rational(abs))
    }
}
