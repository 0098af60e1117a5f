//! Counting distinct roots of nonnegative value in F̄_q((t^{1/(m p^∞)})).
//!
//! Each separable squarefree layer is refined along its Newton polygon. A
//! segment with root value γ and a residual root c of multiplicity μ stands
//! for μ roots with leading term c·t^γ. Those with γ outside the value group
//! are discarded, simple residual roots lift uniquely by Hensel's lemma, and
//! multiple ones are refined further after substituting X = t^γ(c + X').

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::envelope::prime_to;
use crate::algebra::bivariate::XPoly;
use crate::algebra::field::Field;
use crate::algebra::fq::{Fq, FqField, MAX_FIELD_SIZE};
use crate::algebra::poly::PolyRing;
use crate::algebra::ratfunc::RationalFunctionField;
use crate::algebra::squarefree::squarefree_layers;
use crate::error::NewtonError;

pub const DEFAULT_MAX_DEPTH: usize = 64;

/// Finite-support series with rational exponents.
type Series = BTreeMap<BigRational, Fq>;

/// Whether γ lies in (1/(m p^∞))ℤ.
pub fn in_value_group(gamma: &BigRational, m: u64, p: u32) -> bool {
    let d = prime_to(gamma.denom(), p);
    (BigInt::from(m) % d).is_zero()
}

/// Degree over F_q of a field holding every root coefficient of a
/// degree-n polynomial: each root has at most n Frobenius conjugates.
pub fn residue_degree(n: usize) -> u32 {
    (1..=n as u32).fold(1, num_integer::lcm)
}

struct Refiner<'a> {
    k: &'a FqField,
    m: u64,
    max_depth: usize,
    /// Every root of f already has its exponents in the group.
    whole: bool,
}

impl Refiner<'_> {
    fn binomial_mod_p(&self, n: usize, r: usize) -> Fq {
        // Lucas
        let p = self.k.p() as usize;
        let (mut n, mut r) = (n, r);
        let mut acc = 1usize;
        while n > 0 || r > 0 {
            let (a, b) = (n % p, r % p);
            if b > a {
                return Fq::ZERO;
            }
            let mut c = 1usize;
            for i in 0..b {
                c = c * (a - i) / (i + 1);
            }
            acc = acc * (c % p) % p;
            n /= p;
            r /= p;
        }
        self.k.from_int(acc as i64)
    }

    /// Roots of φ in K* with multiplicities.
    fn residual_roots(&self, phi: &[Fq]) -> Vec<(Fq, usize)> {
        let ring = PolyRing::new(self.k.clone());
        let mut out = Vec::new();
        for c in self.k.elements().filter(|c| *c != Fq::ZERO) {
            if ring.eval(&ring.from_coeffs(phi.to_vec()), &c) != Fq::ZERO {
                continue;
            }
            let linear = ring.from_coeffs(vec![self.k.neg(&c), Fq::ONE]);
            let mut rest = ring.from_coeffs(phi.to_vec());
            let mut mult = 0;
            while let Some(q) = ring.div_exact(&rest, &linear) {
                rest = q;
                mult += 1;
            }
            out.push((c, mult));
        }
        out
    }

    /// g(t^γ (c + X)).
    fn substitute(&self, g: &[Series], gamma: &BigRational, c: Fq) -> Vec<Series> {
        let k = self.k;
        let mut out: Vec<Series> = vec![Series::new(); g.len()];
        for (j, b) in g.iter().enumerate() {
            if b.is_empty() {
                continue;
            }
            let shift = gamma * BigRational::from_integer(BigInt::from(j));
            for (i, slot) in out.iter_mut().enumerate().take(j + 1) {
                let factor = k.mul(&self.binomial_mod_p(j, i), &k.pow(&c, (j - i) as u64));
                if factor == Fq::ZERO {
                    continue;
                }
                for (e, a) in b {
                    let key = e + &shift;
                    let v = k.add(slot.get(&key).unwrap_or(&Fq::ZERO), &k.mul(a, &factor));
                    if v == Fq::ZERO {
                        slot.remove(&key);
                    } else {
                        slot.insert(key, v);
                    }
                }
            }
        }
        out
    }

    fn lower_hull(points: &[(usize, BigRational, Fq)]) -> Vec<usize> {
        let mut hull: Vec<usize> = Vec::new();
        for i in 0..points.len() {
            while hull.len() >= 2 {
                let (a, b) = (&points[hull[hull.len() - 2]], &points[hull[hull.len() - 1]]);
                let c = &points[i];
                let lhs = (&b.1 - &a.1) * BigRational::from_integer(BigInt::from(c.0 - a.0));
                let rhs = (&c.1 - &a.1) * BigRational::from_integer(BigInt::from(b.0 - a.0));
                if lhs >= rhs {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(i);
        }
        hull
    }

    /// Segments of the Newton polygon with admissible root value γ, each
    /// with the residual roots and multiplicities.
    #[allow(clippy::type_complexity)]
    fn segments(
        &self,
        g: &[Series],
        strict: bool,
    ) -> Result<(bool, Vec<(BigRational, Vec<(Fq, usize)>)>), NewtonError> {
        let points: Vec<(usize, BigRational, Fq)> = g
            .iter()
            .enumerate()
            .filter_map(|(j, b)| b.iter().next().map(|(e, c)| (j, e.clone(), *c)))
            .collect();
        let Some(jmin) = points.first().map(|pt| pt.0) else {
            return Ok((false, vec![]));
        };
        let mut out = Vec::new();
        let hull = Self::lower_hull(&points);
        for w in hull.windows(2) {
            let (a, b) = (&points[w[0]], &points[w[1]]);
            let gamma = (&a.1 - &b.1) / BigRational::from_integer(BigInt::from(b.0 - a.0));
            if gamma < BigRational::zero() || (strict && gamma.is_zero()) {
                continue;
            }
            let mut phi = vec![Fq::ZERO; b.0 - a.0 + 1];
            for pt in &points[w[0]..=w[1]] {
                let on_line = &a.1 - &gamma * BigRational::from_integer(BigInt::from(pt.0 - a.0));
                if pt.1 == on_line {
                    phi[pt.0 - a.0] = pt.2;
                }
            }
            let roots = self.residual_roots(&phi);
            let found: usize = roots.iter().map(|r| r.1).sum();
            if found != b.0 - a.0 {
                return Err(NewtonError::Algebra(crate::error::AlgebraError::Invalid(
                    format!(
                        "residual polynomial does not split over F_{}",
                        self.k.size()
                    ),
                )));
            }
            if in_value_group(&gamma, self.m, self.k.p()) {
                out.push((gamma, roots));
            }
        }
        Ok((jmin > 0, out))
    }

    fn expand(
        &self,
        g: &[Series],
        strict: bool,
        prefix: &mut Vec<(BigRational, Fq)>,
        offset: &BigRational,
        k_terms: usize,
        out: &mut Vec<RootTruncation>,
    ) {
        let Ok((zero_root, segments)) = self.segments(g, strict) else {
            return;
        };
        if zero_root {
            out.push(RootTruncation {
                terms: prefix.clone(),
                exact: true,
                roots: 1,
            });
        }
        for (gamma, roots) in segments {
            let e = offset + &gamma;
            for (c, mult) in roots {
                prefix.push((e.clone(), c));
                if prefix.len() >= k_terms {
                    let roots = if mult == 1 || self.whole {
                        mult
                    } else {
                        self.count(&self.substitute(g, &gamma, c), true, 0)
                            .unwrap_or(mult)
                    };
                    out.push(RootTruncation {
                        terms: prefix.clone(),
                        exact: false,
                        roots,
                    });
                } else {
                    self.expand(
                        &self.substitute(g, &gamma, c),
                        true,
                        prefix,
                        &e,
                        k_terms,
                        out,
                    );
                }
                prefix.pop();
            }
        }
    }

    /// Distinct roots of g with value ≥ 0 (or > 0 when `strict`) in the group.
    fn count(&self, g: &[Series], strict: bool, depth: usize) -> Result<usize, NewtonError> {
        if depth > self.max_depth {
            return Err(NewtonError::DepthExceeded(self.max_depth));
        }
        let (zero_root, segments) = self.segments(g, strict)?;
        let mut total = usize::from(zero_root);
        for (gamma, roots) in segments {
            for (c, mult) in roots {
                // roots of a separable squarefree layer are distinct
                total += if mult == 1 || self.whole {
                    mult
                } else {
                    self.count(&self.substitute(g, &gamma, c), true, depth + 1)?
                };
            }
        }
        Ok(total)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct OracleConfig {
    pub max_depth: usize,
    /// Restrict the group using the ramification bound of f.
    pub use_bound: bool,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            max_depth: DEFAULT_MAX_DEPTH,
            use_bound: true,
        }
    }
}

/// The field F_{q^L}, L = lcm(1..deg f), holding every root coefficient.
pub fn residue_field(f: &XPoly) -> Result<FqField, NewtonError> {
    let base = f.field();
    let degree = base.degree() * residue_degree(f.degree().unwrap_or(0));
    let size = (base.p() as u64).checked_pow(degree).unwrap_or(u64::MAX);
    if size > MAX_FIELD_SIZE {
        return Err(NewtonError::ResidueFieldTooLarge(size));
    }
    Ok(FqField::new(base.p(), degree)?)
}

/// Separable layers of f with denominators cleared and coefficients in `k`,
/// each with its inseparable exponent.
fn layers_over(f: &XPoly, k: &FqField) -> Result<Vec<(u32, Vec<Series>)>, NewtonError> {
    let base = f.field();
    if f.degree().unwrap_or(0) == 0 {
        return Err(NewtonError::NotMonic);
    }
    let kf = RationalFunctionField::new(base.clone());
    let emb = base.embedding_into(k)?;
    let tring = &kf.ring;
    let mut out = Vec::new();
    for layer in squarefree_layers(&PolyRing::new(kf.clone()), &f.to_ratfunc(&kf))? {
        let g = &layer.factor;
        let den = g.coeffs().iter().fold(tring.one(), |acc, c| {
            let gcd = tring.gcd(&acc, c.den());
            tring.mul(&tring.div_exact(&acc, &gcd).unwrap(), c.den())
        });
        let series: Vec<Series> = g
            .coeffs()
            .iter()
            .map(|c| {
                let num = tring
                    .div_exact(&tring.mul(c.num(), &den), c.den())
                    .expect("denominator divides");
                num.coeffs()
                    .iter()
                    .enumerate()
                    .filter(|(_, a)| **a != Fq::ZERO)
                    .map(|(i, a)| (BigRational::from_integer(BigInt::from(i)), emb.apply(*a)))
                    .collect()
            })
            .collect();
        out.push((layer.inseparable_exponent, series));
    }
    Ok(out)
}

/// Every root of f lies in the group for the ramification bound m_f, so
/// membership for Γ_m is membership for Γ_gcd(m, m_f).
fn refiner_for<'a>(
    f: &XPoly,
    k: &'a FqField,
    m: u64,
    max_depth: usize,
    use_bound: bool,
) -> Result<Refiner<'a>, NewtonError> {
    if !use_bound {
        return Ok(Refiner {
            k,
            m,
            max_depth,
            whole: false,
        });
    }
    let bound = super::envelope::ramification_bound(f)?.m;
    let m = num_integer::gcd(m, bound);
    Ok(Refiner {
        k,
        m,
        max_depth,
        whole: m == bound,
    })
}

/// Number of distinct roots x of f with v(x) ≥ 0 in F̄_q((t^{1/(m p^∞)})).
pub fn count_roots_oracle(f: &XPoly, m: u64, cfg: OracleConfig) -> Result<usize, NewtonError> {
    let k = residue_field(f)?;
    let refiner = refiner_for(f, &k, m, cfg.max_depth, cfg.use_bound)?;
    let mut total = 0;
    // Roots of g(X^{p^j}) are the p^j-th roots of roots of g; the value
    // group and F̄ are closed under those.
    for (_, series) in layers_over(f, &k)? {
        total += refiner.count(&series, false, 0)?;
    }
    Ok(total)
}

/// The first terms of a root, with coefficients in the residue field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootTruncation {
    pub terms: Vec<(BigRational, Fq)>,
    /// True when the root equals the finite sum of `terms`.
    pub exact: bool,
    /// Number of distinct roots with these first terms.
    pub roots: usize,
}

/// Truncations to `k_terms` terms of the roots counted by
/// [`count_roots_oracle`]. Roots sharing their first terms share an entry,
/// and the entry counts them.
pub fn root_truncations(
    f: &XPoly,
    m: u64,
    k_terms: usize,
    cfg: OracleConfig,
) -> Result<(FqField, Vec<RootTruncation>), NewtonError> {
    let k = residue_field(f)?;
    let refiner = refiner_for(f, &k, m, cfg.max_depth.max(k_terms), cfg.use_bound)?;
    let p = k.p();
    let mut out: Vec<RootTruncation> = Vec::new();
    for (insep, series) in layers_over(f, &k)? {
        let mut found = Vec::new();
        refiner.expand(
            &series,
            false,
            &mut Vec::new(),
            &BigRational::zero(),
            k_terms,
            &mut found,
        );
        let scale = BigRational::new(
            BigInt::one(),
            num_traits::pow(BigInt::from(p), insep as usize),
        );
        for mut r in found {
            for (e, c) in r.terms.iter_mut() {
                *e = &*e * &scale;
                for _ in 0..insep {
                    *c = k.pth_root(*c);
                }
            }
            match out
                .iter_mut()
                .find(|x| x.terms == r.terms && x.exact == r.exact)
            {
                Some(x) => x.roots += r.roots,
                None => out.push(r),
            }
        }
    }
    Ok((k, out))
}
