//! Dense univariate polynomials over any [`Field`].

use super::field::Field;
use crate::error::AlgebraError;

/// Coefficients lowest degree first; the last coefficient is nonzero unless
/// the polynomial is zero (empty vector). Construct through [`PolyRing`].
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<E> {
    coeffs: Vec<E>,
}

impl<E: Clone> Poly<E> {
    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Option<&E> {
        self.coeffs.get(i)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PolyRing<F: Field> {
    pub base: F,
}

impl<F: Field> PolyRing<F> {
    pub fn new(base: F) -> Self {
        PolyRing { base }
    }

    pub fn from_coeffs(&self, mut coeffs: Vec<F::Element>) -> Poly<F::Element> {
        while coeffs.last().is_some_and(|c| self.base.is_zero(c)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero(&self) -> Poly<F::Element> {
        Poly { coeffs: Vec::new() }
    }

    pub fn one(&self) -> Poly<F::Element> {
        self.constant(self.base.one())
    }

    pub fn constant(&self, c: F::Element) -> Poly<F::Element> {
        self.from_coeffs(vec![c])
    }

    /// c * X^k
    pub fn monomial(&self, c: F::Element, k: usize) -> Poly<F::Element> {
        let mut v = vec![self.base.zero(); k + 1];
        v[k] = c;
        self.from_coeffs(v)
    }

    pub fn x(&self) -> Poly<F::Element> {
        self.monomial(self.base.one(), 1)
    }

    pub fn add(&self, a: &Poly<F::Element>, b: &Poly<F::Element>) -> Poly<F::Element> {
        let n = a.coeffs.len().max(b.coeffs.len());
        let zero = self.base.zero();
        let v = (0..n)
            .map(|i| {
                self.base.add(
                    a.coeffs.get(i).unwrap_or(&zero),
                    b.coeffs.get(i).unwrap_or(&zero),
                )
            })
            .collect();
        self.from_coeffs(v)
    }

    pub fn neg(&self, a: &Poly<F::Element>) -> Poly<F::Element> {
        Poly {
            coeffs: a.coeffs.iter().map(|c| self.base.neg(c)).collect(),
        }
    }

    pub fn sub(&self, a: &Poly<F::Element>, b: &Poly<F::Element>) -> Poly<F::Element> {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &Poly<F::Element>, c: &F::Element) -> Poly<F::Element> {
        self.from_coeffs(a.coeffs.iter().map(|x| self.base.mul(x, c)).collect())
    }

    pub fn mul(&self, a: &Poly<F::Element>, b: &Poly<F::Element>) -> Poly<F::Element> {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let mut v = vec![self.base.zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if self.base.is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                v[i + j] = self.base.add(&v[i + j], &self.base.mul(x, y));
            }
        }
        self.from_coeffs(v)
    }

    pub fn pow(&self, a: &Poly<F::Element>, mut e: u64) -> Poly<F::Element> {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Quotient and remainder with deg r < deg g.
    pub fn divmod(
        &self,
        f: &Poly<F::Element>,
        g: &Poly<F::Element>,
    ) -> Result<(Poly<F::Element>, Poly<F::Element>), AlgebraError> {
        let dg = g.degree().ok_or(AlgebraError::DivisionByZero)?;
        let lead_inv = self
            .base
            .inv(g.leading().unwrap())
            .ok_or(AlgebraError::DivisionByZero)?;
        let mut r = f.coeffs.clone();
        if r.len() <= dg {
            return Ok((self.zero(), f.clone()));
        }
        let mut q = vec![self.base.zero(); r.len() - dg];
        for k in (0..r.len() - dg).rev() {
            let c = self.base.mul(&r[k + dg], &lead_inv);
            if self.base.is_zero(&c) {
                continue;
            }
            for (j, gj) in g.coeffs.iter().enumerate() {
                r[k + j] = self.base.sub(&r[k + j], &self.base.mul(&c, gj));
            }
            q[k] = c;
        }
        r.truncate(dg);
        Ok((self.from_coeffs(q), self.from_coeffs(r)))
    }

    pub fn rem(
        &self,
        f: &Poly<F::Element>,
        g: &Poly<F::Element>,
    ) -> Result<Poly<F::Element>, AlgebraError> {
        Ok(self.divmod(f, g)?.1)
    }

    /// Exact division; `None` if the remainder is nonzero.
    pub fn div_exact(
        &self,
        f: &Poly<F::Element>,
        g: &Poly<F::Element>,
    ) -> Option<Poly<F::Element>> {
        let (q, r) = self.divmod(f, g).ok()?;
        r.is_zero().then_some(q)
    }

    pub fn make_monic(&self, f: &Poly<F::Element>) -> Poly<F::Element> {
        match f.leading() {
            None => f.clone(),
            Some(l) => self.scale(
                f,
                &self.base.inv(l).expect("leading coefficient is nonzero"),
            ),
        }
    }

    pub fn is_monic(&self, f: &Poly<F::Element>) -> bool {
        f.leading().is_some_and(|l| self.base.is_one(l))
    }

    /// Monic gcd by Euclid's algorithm; gcd(0, 0) = 0.
    pub fn gcd(&self, f: &Poly<F::Element>, g: &Poly<F::Element>) -> Poly<F::Element> {
        let mut a = f.clone();
        let mut b = g.clone();
        while !b.is_zero() {
            let r = self.rem(&a, &b).expect("divisor is nonzero");
            a = b;
            b = r;
        }
        self.make_monic(&a)
    }

    pub fn derivative(&self, f: &Poly<F::Element>) -> Poly<F::Element> {
        let v = f
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| self.base.mul(&self.base.from_int(i as i64), c))
            .collect();
        self.from_coeffs(v)
    }

    pub fn eval(&self, f: &Poly<F::Element>, x: &F::Element) -> F::Element {
        f.coeffs.iter().rev().fold(self.base.zero(), |acc, c| {
            self.base.add(&self.base.mul(&acc, x), c)
        })
    }

    /// f^e mod m by square-and-multiply.
    pub fn pow_mod(
        &self,
        f: &Poly<F::Element>,
        mut e: u64,
        m: &Poly<F::Element>,
    ) -> Result<Poly<F::Element>, AlgebraError> {
        let mut base = self.rem(f, m)?;
        let mut acc = self.rem(&self.one(), m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.rem(&self.mul(&acc, &base), m)?;
            }
            base = self.rem(&self.mul(&base, &base), m)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// g(X^k).
    pub fn inflate(&self, g: &Poly<F::Element>, k: usize) -> Poly<F::Element> {
        if g.is_zero() {
            return self.zero();
        }
        let mut v = vec![self.base.zero(); (g.coeffs.len() - 1) * k + 1];
        for (i, c) in g.coeffs.iter().enumerate() {
            v[i * k] = c.clone();
        }
        self.from_coeffs(v)
    }

    /// If f = g(X^k), returns g.
    pub fn deflate(&self, f: &Poly<F::Element>, k: usize) -> Option<Poly<F::Element>> {
        if f.coeffs
            .iter()
            .enumerate()
            .any(|(i, c)| i % k != 0 && !self.base.is_zero(c))
        {
            return None;
        }
        Some(self.from_coeffs(f.coeffs.iter().step_by(k).cloned().collect()))
    }

    pub fn map<G: Field>(
        &self,
        f: &Poly<F::Element>,
        target: &PolyRing<G>,
        h: impl Fn(&F::Element) -> G::Element,
    ) -> Poly<G::Element> {
        target.from_coeffs(f.coeffs.iter().map(h).collect())
    }
}
