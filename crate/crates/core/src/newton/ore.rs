use crate::algebra::bivariate::XPoly;
use crate::algebra::field::Field;
use crate::algebra::fq::Fq;
use crate::algebra::linalg::kernel_vector;
use crate::algebra::poly::{Poly, PolyRing};
use crate::algebra::ratfunc::{RationalFunction, RationalFunctionField};
use crate::algebra::squarefree::RPoly;
use crate::error::NewtonError;

/// P(X) = Σ a_i X^{p^i} over F_q(t).
#[derive(Clone, Debug, PartialEq)]
pub struct AdditivePolynomial {
    field: RationalFunctionField,
    coeffs: Vec<RationalFunction>,
}

impl AdditivePolynomial {
    pub fn new(field: &RationalFunctionField, mut coeffs: Vec<RationalFunction>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        AdditivePolynomial {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn field(&self) -> &RationalFunctionField {
        &self.field
    }

    /// a_i for i = 0, 1, ...
    pub fn coeffs(&self) -> &[RationalFunction] {
        &self.coeffs
    }

    /// Indices with a_i ≠ 0.
    pub fn support(&self) -> Vec<u32> {
        (0..self.coeffs.len())
            .filter(|&i| !self.field.is_zero(&self.coeffs[i]))
            .map(|i| i as u32)
            .collect()
    }

    pub fn to_poly(&self) -> RPoly {
        let ring = PolyRing::new(self.field.clone());
        let p = self.field.characteristic() as usize;
        let mut acc = ring.zero();
        let mut deg = 1usize;
        for a in &self.coeffs {
            acc = ring.add(&acc, &ring.monomial(a.clone(), deg));
            deg *= p;
        }
        acc
    }

    /// The same polynomial as an element of F_q[t][X], if the coefficients
    /// are polynomials in t.
    pub fn to_xpoly(&self) -> Option<XPoly> {
        let base = self.field.base().clone();
        let tring = PolyRing::new(base.clone());
        let poly = self.to_poly();
        let coeffs: Option<Vec<Poly<Fq>>> = poly
            .coeffs()
            .iter()
            .map(|c| {
                c.is_polynomial()
                    .then(|| tring.from_coeffs(c.num().coeffs().to_vec()))
            })
            .collect();
        Some(XPoly::new(&base, coeffs?))
    }
}

impl std::fmt::Display for AdditivePolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let p = self.field.characteristic() as u64;
        let mut parts = Vec::new();
        for i in (0..self.coeffs.len()).rev() {
            let a = &self.coeffs[i];
            if self.field.is_zero(a) {
                continue;
            }
            let e = p.pow(i as u32);
            let xs = if e == 1 {
                "X".to_string()
            } else {
                format!("X^{e}")
            };
            let cs = self.field.format(a);
            parts.push(if cs == "1" {
                xs
            } else if cs.contains(' ') {
                format!("({cs})*{xs}")
            } else {
                format!("{cs}*{xs}")
            });
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", parts.join(" + "))
    }
}

fn lcm(ring: &PolyRing<crate::algebra::fq::FqField>, a: &Poly<Fq>, b: &Poly<Fq>) -> Poly<Fq> {
    let g = ring.gcd(a, b);
    ring.make_monic(&ring.mul(&ring.div_exact(a, &g).expect("gcd divides"), b))
}

/// A nonzero additive multiple of `f`, from a linear relation among the
/// residues X^{p^i} mod f for i = 0..=deg f. Denominators are cleared.
pub fn ore_additive_multiple(
    k: &RationalFunctionField,
    f: &RPoly,
) -> Result<AdditivePolynomial, NewtonError> {
    let ring = PolyRing::new(k.clone());
    let n = match f.degree() {
        Some(n) if n >= 1 => n,
        _ => return Err(NewtonError::NotMonic),
    };
    let f = ring.make_monic(f);
    let p = k.characteristic() as u64;
    let mut residues = vec![ring.rem(&ring.x(), &f)?];
    for _ in 0..n {
        let next = ring.pow_mod(residues.last().unwrap(), p, &f)?;
        residues.push(next);
    }
    let matrix: Vec<Vec<RationalFunction>> = (0..n)
        .map(|j| {
            residues
                .iter()
                .map(|r| r.coeff(j).cloned().unwrap_or_else(|| k.zero()))
                .collect()
        })
        .collect();
    let a = kernel_vector(k, &matrix).ok_or_else(|| {
        NewtonError::Algebra(crate::error::AlgebraError::Invalid(
            "no linear relation".into(),
        ))
    })?;
    let tring = &k.ring;
    let den = a
        .iter()
        .fold(tring.one(), |acc, c| lcm(tring, &acc, c.den()));
    let scale = k.from_poly(den);
    let a: Vec<RationalFunction> = a.iter().map(|c| k.mul(c, &scale)).collect();
    let additive = AdditivePolynomial::new(k, a);
    if ring.div_exact(&additive.to_poly(), &f).is_none() {
        return Err(NewtonError::DivisibilityCheck);
    }
    Ok(additive)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::bivariate::parse_xpoly;
    use crate::algebra::fq::FqField;

    fn ore(s: &str, p: u32) -> AdditivePolynomial {
        let f = FqField::prime(p).unwrap();
        let k = RationalFunctionField::new(f.clone());
        ore_additive_multiple(&k, &parse_xpoly(s, &f).unwrap().to_ratfunc(&k)).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(ore("X^2 - t^3", 3).to_string(), "X^3 + 2*t^3*X");
        assert_eq!(ore("X - t", 2).to_string(), "X^2 + t*X");
        assert_eq!(
            ore("X^3 - X - t", 3).to_string(),
            "X^9 + (2*t^2 + 2)*X^3 + t^2*X"
        );
        assert_eq!(ore("X", 5).to_string(), "X");
    }
}
