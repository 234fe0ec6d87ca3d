//! Exact rational helpers and the small integer functions used throughout.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Renders `p/q` in lowest terms with positive denominator, or just `p` for integers.
pub fn format_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal `{0}`")]
pub struct ParseRationalError(pub String);

pub fn parse_q(s: &str) -> Result<Q, ParseRationalError> {
    let err = || ParseRationalError(s.to_string());
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| err())?;
            let d: BigInt = d.trim().parse().map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            Ok(Q::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| err())?;
            Ok(Q::from_integer(n))
        }
    }
}

/// `(2k-1)!! = 1·3·…·(2k-1)`, with `(-1)!! = 1` for `k = 0`.
pub fn double_factorial_odd(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(2 * i - 1))
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn pow_neg2(e: u32) -> BigInt {
    let p = BigInt::from(2).pow(e);
    if e % 2 == 1 {
        -p
    } else {
        p
    }
}

/// `a_n = (-2)^{n+1}(2n+1)!!`, the leading coefficient of the Witten cycle.
pub fn witten_coefficient(n: u32) -> BigInt {
    pow_neg2(n + 1) * double_factorial_odd(n + 1)
}

pub fn to_i64(x: &Q) -> Option<i64> {
    if x.denom().is_one() {
        x.numer().to_i64()
    } else {
        None
    }
}

/// Exact integer accumulator that stays in `i128` until it overflows.
#[derive(Debug, Clone, Default)]
pub struct ExactSum {
    small: i128,
    big: BigInt,
}

impl ExactSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_i128(&mut self, x: i128) {
        match self.small.checked_add(x) {
            Some(s) => self.small = s,
            None => {
                self.big += BigInt::from(self.small);
                self.small = x;
            }
        }
    }

    pub fn add_big(&mut self, x: &BigInt) {
        self.big += x;
    }

    pub fn merge(&mut self, other: &ExactSum) {
        self.big += &other.big;
        self.add_i128(other.small);
    }

    pub fn value(&self) -> BigInt {
        &self.big + BigInt::from(self.small)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_lowest_terms() {
        assert_eq!(format_q(&q_frac(2, -4)), "-1/2");
        assert_eq!(format_q(&q(7)), "7");
        assert_eq!(format_q(&q_frac(29, 720)), "29/720");
    }

    #[test]
    fn parses_rationals() {
        assert_eq!(parse_q("-1/120").unwrap(), q_frac(-1, 120));
        assert_eq!(parse_q("348").unwrap(), q(348));
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
    }

    #[test]
    fn double_factorials() {
        assert_eq!(double_factorial_odd(0), BigInt::from(1));
        assert_eq!(double_factorial_odd(1), BigInt::from(1));
        assert_eq!(double_factorial_odd(3), BigInt::from(15));
        assert_eq!(double_factorial_odd(5), BigInt::from(945));
    }

    #[test]
    fn witten_coefficients() {
        let expect = [-2i64, 12, -120, 1680, -30240];
        for (n, e) in expect.iter().enumerate() {
            assert_eq!(witten_coefficient(n as u32), BigInt::from(*e));
        }
    }

    #[test]
    fn exact_sum_spills() {
        let mut s = ExactSum::new();
        s.add_i128(i128::MAX);
        s.add_i128(i128::MAX);
        s.add_i128(-1);
        assert_eq!(s.value(), BigInt::from(i128::MAX) * 2 - 1);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, 5), BigInt::from(0));
        assert_eq!(binomial(4, 0), BigInt::from(1));
    }
}
