//! The rational function field F_q(t).

use std::fmt;

use super::field::Field;
use super::fq::{Fq, FqField};
use super::poly::{Poly, PolyRing};

/// num/den with gcd 1 and monic den.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalFunction {
    num: Poly<Fq>,
    den: Poly<Fq>,
}

impl RationalFunction {
    pub fn num(&self) -> &Poly<Fq> {
        &self.num
    }

    pub fn den(&self) -> &Poly<Fq> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RationalFunctionField {
    pub ring: PolyRing<FqField>,
}

fn ord(f: &Poly<Fq>) -> Option<i64> {
    f.coeffs()
        .iter()
        .position(|c| *c != Fq::ZERO)
        .map(|i| i as i64)
}

impl RationalFunctionField {
    pub fn new(base: FqField) -> Self {
        RationalFunctionField {
            ring: PolyRing::new(base),
        }
    }

    pub fn base(&self) -> &FqField {
        &self.ring.base
    }

    /// Reduces num/den to canonical form. Panics on a zero denominator.
    pub fn fraction(&self, num: Poly<Fq>, den: Poly<Fq>) -> RationalFunction {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return self.zero();
        }
        let g = self.ring.gcd(&num, &den);
        let n = self.ring.div_exact(&num, &g).expect("gcd divides");
        let d = self.ring.div_exact(&den, &g).expect("gcd divides");
        let lc = self.base().inv(d.leading().unwrap()).unwrap();
        RationalFunction {
            num: self.ring.scale(&n, &lc),
            den: self.ring.scale(&d, &lc),
        }
    }

    pub fn from_poly(&self, num: Poly<Fq>) -> RationalFunction {
        RationalFunction {
            num,
            den: self.ring.one(),
        }
    }

    pub fn constant(&self, c: Fq) -> RationalFunction {
        self.from_poly(self.ring.constant(c))
    }

    /// c * t^k
    pub fn monomial(&self, c: Fq, k: usize) -> RationalFunction {
        self.from_poly(self.ring.monomial(c, k))
    }

    pub fn t(&self) -> RationalFunction {
        self.monomial(Fq::ONE, 1)
    }

    /// t-adic valuation; `None` for zero.
    pub fn valuation(&self, a: &RationalFunction) -> Option<i64> {
        Some(ord(&a.num)? - ord(&a.den).unwrap())
    }

    /// The p-th root, when `a` is a p-th power.
    pub fn pth_root(&self, a: &RationalFunction) -> Option<RationalFunction> {
        let p = self.base().p() as usize;
        let root = |f: &Poly<Fq>| {
            let g = self.ring.deflate(f, p)?;
            Some(
                self.ring.from_coeffs(
                    g.coeffs()
                        .iter()
                        .map(|&c| self.base().pth_root(c))
                        .collect(),
                ),
            )
        };
        Some(RationalFunction {
            num: root(&a.num)?,
            den: root(&a.den)?,
        })
    }

    /// d/dt.
    pub fn t_derivative(&self, a: &RationalFunction) -> RationalFunction {
        let r = &self.ring;
        let num = r.sub(
            &r.mul(&r.derivative(&a.num), &a.den),
            &r.mul(&a.num, &r.derivative(&a.den)),
        );
        self.fraction(num, r.mul(&a.den, &a.den))
    }

    pub fn format(&self, a: &RationalFunction) -> String {
        let n = format_tpoly(self.base(), &a.num);
        if a.is_polynomial() {
            n
        } else {
            format!("({})/({})", n, format_tpoly(self.base(), &a.den))
        }
    }
}

/// Writes a polynomial in t, highest degree first, e.g. `t^3 + 2*t`.
pub fn format_tpoly(field: &FqField, f: &Poly<Fq>) -> String {
    format_poly_in(field, f, "t")
}

pub fn format_poly_in(field: &FqField, f: &Poly<Fq>, var: &str) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let mut parts = Vec::new();
    for (k, c) in f.coeffs().iter().enumerate().rev() {
        if *c == Fq::ZERO {
            continue;
        }
        let cs = field.format_element(*c);
        let cs = if cs.contains('+') || cs.contains('-') {
            format!("({})", cs)
        } else {
            cs
        };
        let mono = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{}^{}", var, k),
        };
        parts.push(match (k, *c == Fq::ONE) {
            (0, _) => cs,
            (_, true) => mono,
            _ => format!("{}*{}", cs, mono),
        });
    }
    parts.join(" + ")
}

impl Field for RationalFunctionField {
    type Element = RationalFunction;

    fn zero(&self) -> RationalFunction {
        RationalFunction {
            num: self.ring.zero(),
            den: self.ring.one(),
        }
    }

    fn one(&self) -> RationalFunction {
        self.from_poly(self.ring.one())
    }

    fn is_zero(&self, a: &RationalFunction) -> bool {
        a.num.is_zero()
    }

    fn add(&self, a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
        if a.den == b.den {
            return self.fraction(self.ring.add(&a.num, &b.num), a.den.clone());
        }
        let num = self.ring.add(
            &self.ring.mul(&a.num, &b.den),
            &self.ring.mul(&b.num, &a.den),
        );
        self.fraction(num, self.ring.mul(&a.den, &b.den))
    }

    fn neg(&self, a: &RationalFunction) -> RationalFunction {
        RationalFunction {
            num: self.ring.neg(&a.num),
            den: a.den.clone(),
        }
    }

    fn mul(&self, a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
        if a.is_polynomial() && b.is_polynomial() {
            return self.from_poly(self.ring.mul(&a.num, &b.num));
        }
        self.fraction(self.ring.mul(&a.num, &b.num), self.ring.mul(&a.den, &b.den))
    }

    fn inv(&self, a: &RationalFunction) -> Option<RationalFunction> {
        if a.num.is_zero() {
            return None;
        }
        Some(self.fraction(a.den.clone(), a.num.clone()))
    }

    fn characteristic(&self) -> u32 {
        self.base().p()
    }

    fn from_int(&self, n: i64) -> RationalFunction {
        self.constant(self.base().from_int(n))
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}/{:?}", self.num.coeffs(), self.den.coeffs())
    }
}
