//! Exponents and their base-p expansions.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::automata::Symbol;
use crate::error::SeriesError;

/// A nonnegative rational exponent in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exponent(BigRational);

impl Exponent {
    pub fn new(num: i64, den: i64) -> Result<Self, SeriesError> {
        if den == 0 {
            return Err(SeriesError::InvalidExpansion("zero denominator"));
        }
        Self::from_rational(BigRational::new(num.into(), den.into()))
    }

    pub fn from_rational(r: BigRational) -> Result<Self, SeriesError> {
        if r.is_negative() {
            return Err(SeriesError::NegativeExponent(r.to_string()));
        }
        Ok(Exponent(r))
    }

    pub fn integer(n: u64) -> Self {
        Exponent(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Exponent(BigRational::zero())
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// The denominator with all factors of p removed.
    pub fn denom_prime_to(&self, p: u32) -> BigInt {
        let mut d = self.denom().clone();
        let pb = BigInt::from(p);
        while d.is_multiple_of(&pb) {
            d /= &pb;
        }
        d
    }

    /// k with den = p^k, if the denominator is a power of p.
    pub fn p_adic_depth(&self, p: u32) -> Option<u32> {
        let mut d = self.denom().clone();
        let pb = BigInt::from(p);
        let mut k = 0;
        while d.is_multiple_of(&pb) {
            d /= &pb;
            k += 1;
        }
        d.is_one().then_some(k)
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        Exponent(&self.0 * factor)
    }

    pub fn add(&self, other: &Exponent) -> Self {
        Exponent(&self.0 + &other.0)
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::INFINITY)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl FromStr for Exponent {
    type Err = SeriesError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || SeriesError::InvalidExpansion("malformed exponent");
        let s = s.trim();
        let r = match s.split_once('/') {
            Some((a, b)) => {
                let a: BigInt = a.trim().parse().map_err(|_| bad())?;
                let b: BigInt = b.trim().parse().map_err(|_| bad())?;
                if b.is_zero() {
                    return Err(bad());
                }
                BigRational::new(a, b)
            }
            None => BigRational::from_integer(s.parse().map_err(|_| bad())?),
        };
        Exponent::from_rational(r)
    }
}

/// Checks the three validity conditions on an expansion.
pub fn validate_expansion(w: &[Symbol], p: u32) -> Result<(), SeriesError> {
    if let Some(&s) = w.iter().find(|&&s| s > p) {
        return Err(SeriesError::Automaton(
            crate::error::AutomatonError::ForeignSymbol { symbol: s, p },
        ));
    }
    if w.iter().filter(|&&s| s == p).count() != 1 {
        return Err(SeriesError::InvalidExpansion("radix count is not 1"));
    }
    if w[0] == 0 {
        return Err(SeriesError::InvalidExpansion("leading zero"));
    }
    if *w.last().unwrap() == 0 {
        return Err(SeriesError::InvalidExpansion("trailing zero"));
    }
    Ok(())
}

/// v(w) for a valid expansion `w`.
pub fn expansion_value(w: &[Symbol], p: u32) -> Result<Exponent, SeriesError> {
    validate_expansion(w, p)?;
    Ok(Exponent(prefix_value(w, p)))
}

/// Value of a prefix, reading digits after the radix as fractional; a
/// prefix without radix is read as if the radix came next.
pub fn prefix_value(w: &[Symbol], p: u32) -> BigRational {
    let pb = BigUint::from(p);
    let mut int = BigUint::zero();
    let mut frac = BigUint::zero();
    let mut den = BigUint::one();
    let mut after = false;
    for &s in w {
        if s == p {
            after = true;
        } else if after {
            frac = frac * &pb + s;
            den *= &pb;
        } else {
            int = int * &pb + s;
        }
    }
    BigRational::new((int * &den + frac).into(), den.into())
}

/// The unique valid expansion of `e`; zero is the lone radix point.
pub fn expansion_of(e: &Exponent, p: u32) -> Result<Vec<Symbol>, SeriesError> {
    let k = e
        .p_adic_depth(p)
        .ok_or_else(|| SeriesError::NotPAdicExponent(e.to_string(), p))?;
    let pb = BigInt::from(p);
    let (mut int, rem) = e.numer().div_rem(e.denom());
    let mut digits = Vec::new();
    while !int.is_zero() {
        let (q, r) = int.div_rem(&pb);
        digits.push(r.to_u32().unwrap());
        int = q;
    }
    digits.reverse();
    digits.push(p);
    let mut num = rem;
    let den = e.denom().clone();
    for _ in 0..k {
        num *= &pb;
        let (d, r) = num.div_rem(&den);
        digits.push(d.to_u32().unwrap());
        num = r;
    }
    Ok(digits)
}

/// Reads `12.1`-style text; digits must be below p (p ≤ 10).
pub fn parse_expansion(s: &str, p: u32) -> Result<Vec<Symbol>, SeriesError> {
    s.chars()
        .map(|c| match c {
            '.' => Ok(p),
            c => c
                .to_digit(10)
                .filter(|&d| d < p)
                .ok_or(SeriesError::InvalidExpansion("digit out of range")),
        })
        .collect()
}

pub fn format_expansion(w: &[Symbol], p: u32) -> String {
    w.iter()
        .map(|&s| {
            if s == p {
                ".".to_string()
            } else if p <= 10 {
                s.to_string()
            } else {
                format!("[{s}]")
            }
        })
        .collect()
}
