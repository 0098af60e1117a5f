use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};

use super::ore::{ore_additive_multiple, AdditivePolynomial};
use crate::algebra::bivariate::XPoly;
use crate::algebra::ratfunc::RationalFunctionField;
use crate::error::NewtonError;

/// γ_i(r) = slope·r + intercept, with slope p^i and intercept v(a_i).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    pub index: u32,
    pub slope: BigInt,
    pub intercept: BigInt,
}

impl Line {
    pub fn at(&self, r: &BigRational) -> BigRational {
        r * BigRational::from_integer(self.slope.clone())
            + BigRational::from_integer(self.intercept.clone())
    }
}

/// A point where at least two lines tie at the minimum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Breakpoint {
    pub r: BigRational,
    /// Indices of all lines attaining the minimum at `r`.
    pub lines: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Envelope {
    pub lines: Vec<Line>,
    /// Indices of the lines on the envelope, from r = -∞ to r = +∞.
    pub active: Vec<u32>,
    pub breakpoints: Vec<Breakpoint>,
}

impl Envelope {
    /// min_i γ_i(r).
    pub fn value_at(&self, r: &BigRational) -> BigRational {
        self.lines
            .iter()
            .map(|l| l.at(r))
            .min()
            .expect("envelope has lines")
    }

    /// The envelope line active at `r`; at a breakpoint, the one active just right of it.
    pub fn active_at(&self, r: &BigRational) -> u32 {
        let k = self.breakpoints.iter().filter(|b| b.r <= *r).count();
        self.active[k]
    }
}

fn intersection(a: &Line, b: &Line) -> BigRational {
    BigRational::new(&b.intercept - &a.intercept, &a.slope - &b.slope)
}

/// Lower envelope of lines with pairwise distinct slopes.
pub fn envelope_of_lines(mut lines: Vec<Line>) -> Result<Envelope, NewtonError> {
    if lines.is_empty() {
        return Err(NewtonError::EmptyEnvelope);
    }
    lines.sort_by(|a, b| b.slope.cmp(&a.slope));
    assert!(
        lines.windows(2).all(|w| w[0].slope != w[1].slope),
        "slopes must be distinct"
    );
    let mut hull: Vec<&Line> = Vec::new();
    for l in &lines {
        while let Some(top) = hull.last() {
            let x = intersection(top, l);
            match hull.len() {
                1 => break,
                n if x <= intersection(hull[n - 2], top) => {
                    hull.pop();
                }
                _ => break,
            }
        }
        hull.push(l);
    }
    let mut breakpoints = Vec::new();
    for w in hull.windows(2) {
        let r = intersection(w[0], w[1]);
        let min = lines.iter().map(|l| l.at(&r)).min().unwrap();
        let mut tied: Vec<u32> = lines
            .iter()
            .filter(|l| l.at(&r) == min)
            .map(|l| l.index)
            .collect();
        tied.sort_unstable();
        breakpoints.push(Breakpoint { r, lines: tied });
    }
    let active = hull.iter().map(|l| l.index).collect();
    lines.sort_by_key(|l| l.index);
    Ok(Envelope {
        lines,
        active,
        breakpoints,
    })
}

pub fn envelope(pa: &AdditivePolynomial) -> Result<Envelope, NewtonError> {
    let k = pa.field();
    let p = BigInt::from(k.base().p());
    let lines = pa
        .support()
        .into_iter()
        .map(|i| Line {
            index: i,
            slope: num_traits::pow(p.clone(), i as usize),
            intercept: BigInt::from(
                k.valuation(&pa.coeffs()[i as usize])
                    .expect("support coefficients are nonzero"),
            ),
        })
        .collect();
    envelope_of_lines(lines)
}

#[derive(Clone, Debug, PartialEq)]
pub struct RamificationBound {
    /// Coprime to p; every root lies in F((t^{1/(m p^∞)})).
    pub m: u64,
    pub additive: AdditivePolynomial,
    pub envelope: Envelope,
}

/// The part of `n` coprime to `p`.
pub fn prime_to(n: &BigInt, p: u32) -> BigInt {
    let pb = BigInt::from(p);
    let mut n = n.abs();
    while n.is_multiple_of(&pb) {
        n /= &pb;
    }
    n
}

/// m = lcm of the coprime-to-p parts of the breakpoint denominators of an
/// additive multiple of f.
pub fn ramification_bound(f: &XPoly) -> Result<RamificationBound, NewtonError> {
    let k = RationalFunctionField::new(f.field().clone());
    let additive = ore_additive_multiple(&k, &f.to_ratfunc(&k))?;
    let envelope = envelope(&additive)?;
    let p = f.field().p();
    let m = envelope
        .breakpoints
        .iter()
        .fold(BigInt::one(), |acc, b| acc.lcm(&prime_to(b.r.denom(), p)));
    let m = u64::try_from(m).map_err(|_| {
        NewtonError::Algebra(crate::error::AlgebraError::Invalid(
            "bound m exceeds 64 bits".into(),
        ))
    })?;
    Ok(RamificationBound {
        m,
        additive,
        envelope,
    })
}
