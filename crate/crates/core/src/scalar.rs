//! Exact rational scalars.
//!
//! The only scalar type in the crate is [`Scalar`], an arbitrary-precision
//! rational kept in lowest terms with a positive denominator. All published
//! Thom polynomial coefficients are integers, but intermediate Gaussian
//! elimination and the 1/2, 1/3, 1/6 multiplicity factors of the
//! multi-singularity formulas require exact division.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational. `BigRational` normalizes to lowest terms
/// with a positive denominator on construction, which is exactly the
/// invariant we need.
pub type Scalar = BigRational;

/// Integer scalar.
pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

/// Rational scalar `p/q`. Panics if `q == 0`.
pub fn frac(p: i64, q: i64) -> Scalar {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// True when the scalar has denominator 1.
pub fn is_integer(x: &Scalar) -> bool {
    x.denom().is_one()
}

/// Renders `p` or `p/q`, with the sign on the numerator.
pub fn render(x: &Scalar) -> String {
    if is_integer(x) {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses "p" or "p/q".
pub fn parse(s: &str) -> Option<Scalar> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(BigRational::new(p, q))
            }
        }
        None => {
            let p: BigInt = s.parse().ok()?;
            Some(BigRational::from_integer(p))
        }
    }
}

/// Binomial coefficient C(n, k) as a scalar.
pub fn binomial(n: u32, k: u32) -> Scalar {
    if k > n {
        return Scalar::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    BigRational::new(num, den)
}

/// Absolute value.
pub fn abs(x: &Scalar) -> Scalar {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms_and_positive_denominator() {
        let x = frac(4, -6);
        assert_eq!(x.numer(), &BigInt::from(-2));
        assert_eq!(x.denom(), &BigInt::from(3));
    }

    #[test]
    fn exact_reciprocal() {
        let x = frac(355, 113);
        let y = frac(113, 355);
        assert_eq!(x * y, int(1));
    }

    #[test]
    fn render_and_parse_round_trip() {
        for s in ["0", "-3", "1/2", "-7/3", "216"] {
            let x = parse(s).unwrap();
            assert_eq!(render(&x), s);
        }
        assert_eq!(parse("4/6").unwrap(), frac(2, 3));
        assert!(parse("1/0").is_none());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), int(10));
        assert_eq!(binomial(3, 0), int(1));
        assert_eq!(binomial(2, 3), int(0));
    }
}
