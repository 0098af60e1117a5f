//! Squarefree decomposition of polynomials in X over F_q(t).
//!
//! F_q(t) is not perfect, so a polynomial with vanishing derivative need not be
//! a p-th power. Such parts are kept as layers `g(X^{p^k})` with `g` separable.

use super::field::Field;
use super::poly::{Poly, PolyRing};
use super::ratfunc::{RationalFunction, RationalFunctionField};
use crate::error::AlgebraError;

pub type RPoly = Poly<RationalFunction>;

#[derive(Clone, Debug, PartialEq)]
pub struct SquarefreeLayer {
    /// Monic, separable and squarefree.
    pub factor: RPoly,
    /// The layer's roots are those of `factor(X^{p^k})`.
    pub inseparable_exponent: u32,
}

/// Layers with pairwise disjoint root sets whose union is the root set of `f`.
pub fn squarefree_layers(
    ring: &PolyRing<RationalFunctionField>,
    f: &RPoly,
) -> Result<Vec<SquarefreeLayer>, AlgebraError> {
    if f.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let mut out = Vec::new();
    layers(ring, &ring.make_monic(f), 0, &mut out);
    Ok(out)
}

fn layers(
    ring: &PolyRing<RationalFunctionField>,
    f: &RPoly,
    k: u32,
    out: &mut Vec<SquarefreeLayer>,
) {
    if f.degree().unwrap_or(0) == 0 {
        return;
    }
    let k_field = &ring.base;
    let p = k_field.characteristic() as usize;
    let df = ring.derivative(f);
    if df.is_zero() {
        let g = ring
            .deflate(f, p)
            .expect("zero derivative means a polynomial in X^p");
        let roots: Option<Vec<_>> = g.coeffs().iter().map(|c| k_field.pth_root(c)).collect();
        match roots {
            Some(r) => layers(ring, &ring.from_coeffs(r), k, out),
            None => layers(ring, &g, k + 1, out),
        }
        return;
    }
    let u = ring.gcd(f, &df);
    let w = ring.div_exact(f, &u).expect("gcd divides");
    let mut rest = u;
    loop {
        let g = ring.gcd(&rest, &w);
        if g.degree() == Some(0) {
            break;
        }
        rest = ring.div_exact(&rest, &g).expect("gcd divides");
    }
    emit(ring, ring.make_monic(&w), k, out);
    layers(ring, &rest, k, out);
}

/// Factors of `w` with coefficients in F_q(t^p) are exactly those dividing
/// the t-derivative of `w`; for those, `w(X^{p^k})` is a p-th power.
fn emit(ring: &PolyRing<RationalFunctionField>, w: RPoly, k: u32, out: &mut Vec<SquarefreeLayer>) {
    if k > 0 {
        let k_field = &ring.base;
        let dt = ring.from_coeffs(w.coeffs().iter().map(|c| k_field.t_derivative(c)).collect());
        let a = ring.gcd(&w, &dt);
        if a.degree().unwrap_or(0) > 0 {
            let b = ring.div_exact(&w, &a).expect("gcd divides");
            if b.degree().unwrap_or(0) > 0 {
                out.push(SquarefreeLayer {
                    factor: b,
                    inseparable_exponent: k,
                });
            }
            let root = a
                .coeffs()
                .iter()
                .map(|c| k_field.pth_root(c).expect("coefficients in F_q(t^p)"))
                .collect();
            emit(ring, ring.from_coeffs(root), k - 1, out);
            return;
        }
    }
    out.push(SquarefreeLayer {
        factor: w,
        inseparable_exponent: k,
    });
}

/// Product of the distinct irreducible factors of `f`.
pub fn squarefree_part(
    ring: &PolyRing<RationalFunctionField>,
    f: &RPoly,
) -> Result<RPoly, AlgebraError> {
    let p = ring.base.characteristic() as usize;
    let mut acc = ring.one();
    for layer in squarefree_layers(ring, f)? {
        let e = p.pow(layer.inseparable_exponent);
        acc = ring.mul(&acc, &ring.inflate(&layer.factor, e));
    }
    Ok(acc)
}
