//! Exact rational coefficients.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// The coefficient field used by algebra elements: exact rationals.
pub type Q = BigRational;

/// Embeds an integer.
pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Builds `num/den`; panics when `den == 0`.
pub fn frac(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `n` or `p/q`.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().ok()?;
            let b: BigInt = b.trim().parse().ok()?;
            if b.is_zero() {
                None
            } else {
                Some(Q::new(a, b))
            }
        }
        None => s.parse::<BigInt>().ok().map(Q::from_integer),
    }
}

/// Formats as `n` for integers and `p/q` otherwise.
pub fn fmt_q(c: &Q) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Reduces a rational modulo the prime `p`; `None` if `p` divides the denominator.
pub fn q_mod(c: &Q, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let den = ((c.denom() % &pb) + &pb) % &pb;
    if den.is_zero() {
        return None;
    }
    let num = ((c.numer() % &pb) + &pb) % &pb;
    let num: u64 = num.try_into().ok()?;
    let den: u64 = den.try_into().ok()?;
    Some(crate::linalg::fp::mul(num, crate::linalg::fp::inv(den, p), p))
}

/// `true` when the rational is a (possibly negative) integer.
pub fn is_integer(c: &Q) -> bool {
    c.denom().is_one()
}


/// Serializes rationals as strings in the [`fmt_q`] form.
pub fn serialize_qs<S: serde::Serializer>(v: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(fmt_q))
}
