//! Ring operations on automatic series.
//!
//! Multiplication works on indicator languages. For support sets A and B,
//! the coefficient of t^γ in (Σ_A t^r)(Σ_B t^s) is the number of pairs
//! (r, s) ∈ A × B with r + s = γ, taken mod p. Reading expansions least
//! significant digit first, an NFA guesses the aligned summand digits and
//! tracks the carry. Its accepting paths are in bijection with such pairs,
//! so counting paths mod p yields the product.

use rayon::prelude::*;

use super::automatic::AutomaticSeries;
use crate::algebra::field::Field;
use crate::algebra::fq::{Fq, FqField};
use crate::automata::{
    count_paths_mod, determinize, reverse, Dfao, Nfa, OutputAlphabet, DEFAULT_STATE_CAP,
};
use crate::error::SeriesError;

/// Bounds for the lazy constructions inside arithmetic.
#[derive(Clone, Copy, Debug)]
pub struct ArithConfig {
    pub state_cap: usize,
    /// Extra leading zeros beyond the count automaton's state count.
    pub extra_padding: usize,
}

impl Default for ArithConfig {
    fn default() -> Self {
        ArithConfig {
            state_cap: DEFAULT_STATE_CAP,
            extra_padding: 1,
        }
    }
}

fn check_same_field(x: &AutomaticSeries, y: &AutomaticSeries) -> Result<(), SeriesError> {
    if !x.field().same_field(y.field()) {
        return Err(crate::error::AlgebraError::FieldMismatch(
            x.field().descriptor(),
            y.field().descriptor(),
        )
        .into());
    }
    Ok(())
}

fn finish(op: &'static str, m: Dfao) -> Result<AutomaticSeries, SeriesError> {
    AutomaticSeries::new(m.minimize()).map_err(|e| SeriesError::Internal {
        op,
        reason: e.to_string(),
    })
}

/// Boolean DFA of valid base-p expansions.
pub fn validity_dfa(p: u32) -> Dfao {
    const S0: u32 = 0;
    const INT: u32 = 1;
    const FRAC_OK: u32 = 2;
    const FRAC_ZERO: u32 = 3;
    const DEAD: u32 = 4;
    let row = |zero: u32, digit: u32, radix: u32| {
        let mut r = vec![digit; p as usize + 1];
        r[0] = zero;
        r[p as usize] = radix;
        r
    };
    Dfao::new(
        p,
        vec![
            row(DEAD, INT, FRAC_OK),
            row(INT, INT, FRAC_OK),
            row(FRAC_ZERO, FRAC_OK, DEAD),
            row(FRAC_ZERO, FRAC_OK, DEAD),
            row(DEAD, DEAD, DEAD),
        ],
        S0,
        vec![0, 0, 1, 0, 0],
        OutputAlphabet::Boolean,
    )
    .unwrap()
}

/// Zeroes the outputs on invalid expansions.
pub fn mask_valid(m: &Dfao, cap: usize) -> Result<Dfao, SeriesError> {
    Ok(m.product(
        &validity_dfa(m.p()),
        |a, v| if v != 0 { a } else { 0 },
        m.outputs().clone(),
        cap,
    )?)
}

pub fn add(x: &AutomaticSeries, y: &AutomaticSeries) -> Result<AutomaticSeries, SeriesError> {
    check_same_field(x, y)?;
    let f = x.field().clone();
    let m = x.automaton().product(
        y.automaton(),
        |a, b| f.add(&Fq(a), &Fq(b)).0,
        OutputAlphabet::Field(f.clone()),
        DEFAULT_STATE_CAP,
    )?;
    finish("add", m)
}

pub fn scalar_mul(c: Fq, x: &AutomaticSeries) -> Result<AutomaticSeries, SeriesError> {
    let f = x.field().clone();
    let m = x
        .automaton()
        .map_outputs(|v| f.mul(&c, &Fq(v)).0, OutputAlphabet::Field(f.clone()));
    finish("scalar multiplication", m)
}

pub fn neg(x: &AutomaticSeries) -> Result<AutomaticSeries, SeriesError> {
    scalar_mul(x.field().neg(&Fq::ONE), x)
}

pub fn sub(x: &AutomaticSeries, y: &AutomaticSeries) -> Result<AutomaticSeries, SeriesError> {
    add(x, &neg(y)?)
}

/// True iff no valid expansion receives a nonzero output.
pub fn is_zero(x: &AutomaticSeries) -> bool {
    match mask_valid(x.automaton(), DEFAULT_STATE_CAP) {
        Ok(m) => m.accepts_nothing(),
        Err(_) => x.automaton().accepts_nothing(),
    }
}

pub fn equals(x: &AutomaticSeries, y: &AutomaticSeries) -> Result<bool, SeriesError> {
    Ok(is_zero(&sub(x, y)?))
}

/// Accepts 0* · L · 0*, where `m` accepts L.
fn zero_padded(m: &Dfao, cap: usize) -> Result<Dfao, SeriesError> {
    let n = m.num_states() as u32;
    let (lead, trail) = (n, n + 1);
    let mut accepting: Vec<bool> = (0..n).map(|q| m.is_accepting(q)).collect();
    accepting.extend([false, true]);
    let mut nfa = Nfa::new(m.p(), n as usize + 2, vec![m.initial(), lead], accepting);
    for q in 0..n {
        for (s, &t) in m.row(q).iter().enumerate() {
            nfa.add_edge(q, s as u32, t);
        }
        if m.is_accepting(q) {
            nfa.add_edge(q, 0, trail);
        }
    }
    nfa.add_edge(lead, 0, lead);
    nfa.add_edge(lead, 0, m.initial());
    nfa.add_edge(trail, 0, trail);
    Ok(determinize(&nfa, cap)?.minimize())
}

/// DFA for the zero-padded reversals of the strings with output `v`.
fn reversed_padded_indicator(m: &Dfao, v: u32, cap: usize) -> Result<Dfao, SeriesError> {
    let rev = determinize(&Nfa::from_dfa(&m.indicator(v)).reversed(), cap)?.minimize();
    zero_padded(&rev, cap)
}

/// Carry NFA over aligned reversed expansions of two padded indicator languages.
fn carry_nfa(a: &Dfao, b: &Dfao, cap: usize) -> Result<Nfa, SeriesError> {
    use std::collections::HashMap;
    let p = a.p();
    let rel_a = a.relevant_states();
    let rel_b = b.relevant_states();
    let mut index: HashMap<(u32, u32, u32), u32> = HashMap::new();
    let mut states: Vec<(u32, u32, u32)> = Vec::new();
    let mut edges: Vec<(u32, u32, u32)> = Vec::new();
    let start = (a.initial(), b.initial(), 0);
    if rel_a[start.0 as usize] && rel_b[start.1 as usize] {
        index.insert(start, 0);
        states.push(start);
    }
    let mut i = 0;
    while i < states.len() {
        let (qa, qb, c) = states[i];
        let mut targets: Vec<(u32, (u32, u32, u32))> = Vec::new();
        for t in 0..p {
            let na = a.next(qa, t);
            if !rel_a[na as usize] {
                continue;
            }
            for u in 0..p {
                let nb = b.next(qb, u);
                if !rel_b[nb as usize] {
                    continue;
                }
                let sum = t + u + c;
                targets.push((sum % p, (na, nb, (sum >= p) as u32)));
            }
        }
        let (na, nb) = (a.next(qa, p), b.next(qb, p));
        if rel_a[na as usize] && rel_b[nb as usize] {
            targets.push((p, (na, nb, c)));
        }
        for (s, key) in targets {
            let id = match index.get(&key) {
                Some(&id) => id,
                None => {
                    if states.len() >= cap {
                        return Err(crate::error::AutomatonError::StateCap {
                            cap,
                            construction: "carry automaton",
                        }
                        .into());
                    }
                    let id = states.len() as u32;
                    index.insert(key, id);
                    states.push(key);
                    id
                }
            };
            edges.push((i as u32, s, id));
        }
        i += 1;
    }
    let accepting = states
        .iter()
        .map(|&(qa, qb, c)| c == 0 && a.is_accepting(qa) && b.is_accepting(qb))
        .collect();
    let initial = if states.is_empty() { vec![] } else { vec![0] };
    let mut nfa = Nfa::new(p, states.len(), initial, accepting);
    for (from, s, to) in edges {
        nfa.add_edge(from, s, to);
    }
    Ok(nfa)
}

/// Z/p-valued DFAO on valid expansions counting representations γ = r + s
/// with r, s accepted by the padded reversed languages `a` and `b`.
fn representation_count(a: &Dfao, b: &Dfao, cfg: ArithConfig) -> Result<Dfao, SeriesError> {
    let p = a.p();
    let nfa = carry_nfa(a, b, cfg.state_cap)?;
    if nfa.num_states() == 0 {
        return Ok(Dfao::constant(p, 0, OutputAlphabet::Modular(p)));
    }
    let count = count_paths_mod(&nfa, p, cfg.state_cap)?.minimize();
    let m = count.num_states() + cfg.extra_padding;
    let root = count.delta_star(count.initial(), &vec![0; m])?;
    let shifted_tau: Vec<u32> = (0..count.num_states() as u32)
        .map(|q| count.output(count.next(q, 0)))
        .collect();
    let reversed_reader = count
        .rerooted(root)
        .with_outputs(shifted_tau, OutputAlphabet::Modular(p));
    let forward = reverse(&reversed_reader, cfg.state_cap)?;
    Ok(mask_valid(&forward, cfg.state_cap)?.minimize())
}

pub fn multiply(x: &AutomaticSeries, y: &AutomaticSeries) -> Result<AutomaticSeries, SeriesError> {
    multiply_with(x, y, ArithConfig::default())
}

pub fn multiply_with(
    x: &AutomaticSeries,
    y: &AutomaticSeries,
    cfg: ArithConfig,
) -> Result<AutomaticSeries, SeriesError> {
    check_same_field(x, y)?;
    let f = x.field().clone();
    let p = f.p();
    let xm = mask_valid(x.automaton(), cfg.state_cap)?.minimize();
    let ym = mask_valid(y.automaton(), cfg.state_cap)?.minimize();
    let xs = xm.reachable_outputs();
    let ys = ym.reachable_outputs();
    let pads_x: Vec<Dfao> = xs
        .iter()
        .map(|&v| reversed_padded_indicator(&xm, v, cfg.state_cap))
        .collect::<Result<_, _>>()?;
    let pads_y: Vec<Dfao> = ys
        .iter()
        .map(|&v| reversed_padded_indicator(&ym, v, cfg.state_cap))
        .collect::<Result<_, _>>()?;
    let pairs: Vec<(usize, usize)> = (0..xs.len())
        .flat_map(|i| (0..ys.len()).map(move |j| (i, j)))
        .collect();
    let counts: Vec<Result<Dfao, SeriesError>> = pairs
        .par_iter()
        .map(|&(i, j)| representation_count(&pads_x[i], &pads_y[j], cfg))
        .collect();
    let mut acc = Dfao::constant(p, 0, OutputAlphabet::Field(f.clone()));
    for (&(i, j), count) in pairs.iter().zip(counts) {
        let count = count?;
        let ab = f.mul(&Fq(xs[i]), &Fq(ys[j]));
        let term = count.map_outputs(
            |c| f.mul(&f.from_int(c as i64), &ab).0,
            OutputAlphabet::Field(f.clone()),
        );
        acc = acc
            .product(
                &term,
                |u, v| f.add(&Fq(u), &Fq(v)).0,
                OutputAlphabet::Field(f.clone()),
                cfg.state_cap,
            )?
            .minimize();
    }
    finish("multiplication", acc)
}

/// Automaton for γ ↦ pγ on exponents: reads an expansion of pγ and runs the
/// input automaton on the expansion of γ, which has the radix one place left.
fn radix_shift(m: &Dfao, cap: usize) -> Result<Dfao, SeriesError> {
    use std::collections::HashMap;
    #[derive(Clone, Copy, PartialEq, Eq, Hash)]
    enum S {
        /// Integer digits fed to `q`, with the last digit read held back.
        Pre(u32, Option<u32>),
        /// Radix just read; `q` has seen neither the radix nor the held digit.
        JustRadix(u32, Option<u32>),
        Post(u32),
        Dead,
    }
    let p = m.p();
    let output = |s: S| match s {
        S::JustRadix(q, None) => m.output(m.next(q, p)),
        S::JustRadix(q, Some(0)) => m.output(m.next(q, p)),
        S::JustRadix(q, Some(d)) => m.output(m.next(m.next(q, p), d)),
        S::Post(q) => m.output(q),
        _ => 0,
    };
    let step = |s: S, sym: u32| -> S {
        match (s, sym == p) {
            (S::Pre(q, None), false) => S::Pre(q, Some(sym)),
            (S::Pre(q, Some(d)), false) => S::Pre(m.next(q, d), Some(sym)),
            (S::Pre(q, held), true) => S::JustRadix(q, held),
            (S::JustRadix(q, held), false) => {
                let after = m.next(m.next(q, p), held.unwrap_or(0));
                S::Post(m.next(after, sym))
            }
            (S::Post(q), false) => S::Post(m.next(q, sym)),
            _ => S::Dead,
        }
    };
    let start = S::Pre(m.initial(), None);
    let mut index: HashMap<S, u32> = HashMap::from([(start, 0)]);
    let mut states = vec![start];
    let mut delta = Vec::new();
    let mut i = 0;
    while i < states.len() {
        for sym in 0..=p {
            let t = step(states[i], sym);
            let id = match index.get(&t) {
                Some(&id) => id,
                None => {
                    if states.len() >= cap {
                        return Err(crate::error::AutomatonError::StateCap {
                            cap,
                            construction: "radix shift",
                        }
                        .into());
                    }
                    let id = states.len() as u32;
                    index.insert(t, id);
                    states.push(t);
                    id
                }
            };
            delta.push(id);
        }
        i += 1;
    }
    let tau = states.iter().map(|&s| output(s)).collect();
    let shifted = Dfao::new(
        p,
        delta.chunks(p as usize + 1).map(|c| c.to_vec()).collect(),
        0,
        tau,
        m.outputs().clone(),
    )?;
    mask_valid(&shifted, cap)
}

/// Σ a_γ t^{pγ}: exponents scaled by p, coefficients unchanged.
pub fn scale_exponents_by_p(x: &AutomaticSeries) -> Result<AutomaticSeries, SeriesError> {
    finish(
        "exponent scaling",
        radix_shift(x.automaton(), DEFAULT_STATE_CAP)?,
    )
}

/// x^p = Σ a_γ^p t^{pγ}.
pub fn frobenius(x: &AutomaticSeries) -> Result<AutomaticSeries, SeriesError> {
    let f = x.field().clone();
    let shifted = radix_shift(x.automaton(), DEFAULT_STATE_CAP)?;
    finish(
        "Frobenius",
        shifted.map_outputs(|v| f.frobenius(Fq(v)).0, OutputAlphabet::Field(f.clone())),
    )
}

/// x^k, using Frobenius for the base-p digits of k.
pub fn pow(x: &AutomaticSeries, k: u64) -> Result<AutomaticSeries, SeriesError> {
    pow_with(x, k, ArithConfig::default())
}

pub fn pow_with(
    x: &AutomaticSeries,
    k: u64,
    cfg: ArithConfig,
) -> Result<AutomaticSeries, SeriesError> {
    let p = x.p() as u64;
    let mut result: Option<AutomaticSeries> = None;
    let mut base = x.clone();
    let mut k = k;
    while k > 0 {
        for _ in 0..k % p {
            result = Some(match result {
                None => base.clone(),
                Some(r) => multiply_with(&r, &base, cfg)?,
            });
        }
        k /= p;
        if k > 0 {
            base = frobenius(&base)?;
        }
    }
    match result {
        Some(r) => Ok(r),
        None => {
            AutomaticSeries::from_finite_series(x.field(), &[(super::Exponent::zero(), Fq::ONE)])
        }
    }
}

/// A polynomial in t as a finite series.
pub fn series_of_tpoly(field: &FqField, coeffs: &[Fq]) -> Result<AutomaticSeries, SeriesError> {
    let terms: Vec<_> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != Fq::ZERO)
        .map(|(i, c)| (super::Exponent::integer(i as u64), *c))
        .collect();
    AutomaticSeries::from_finite_series(field, &terms)
}

/// Σ_i a_i(t) x^i for coefficient polynomials `coeffs[i]` in t.
pub fn evaluate_polynomial(
    coeffs: &[Vec<Fq>],
    x: &AutomaticSeries,
) -> Result<AutomaticSeries, SeriesError> {
    evaluate_polynomial_with(coeffs, x, ArithConfig::default())
}

pub fn evaluate_polynomial_with(
    coeffs: &[Vec<Fq>],
    x: &AutomaticSeries,
    cfg: ArithConfig,
) -> Result<AutomaticSeries, SeriesError> {
    let f = x.field();
    let mut acc = AutomaticSeries::zero(f);
    for (i, a) in coeffs.iter().enumerate() {
        if a.iter().all(|c| *c == Fq::ZERO) {
            continue;
        }
        let term = match (i, a.len()) {
            (0, _) => series_of_tpoly(f, a)?,
            (_, 1) => scalar_mul(a[0], &pow_with(x, i as u64, cfg)?)?,
            _ => multiply_with(&series_of_tpoly(f, a)?, &pow_with(x, i as u64, cfg)?, cfg)?,
        };
        acc = add(&acc, &term)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::checks::increasing_loop;
    use crate::series::Exponent;

    fn ex(n: i64, d: i64) -> Exponent {
        Exponent::new(n, d).unwrap()
    }

    fn finite(f: &FqField, terms: &[(i64, i64, u32)]) -> AutomaticSeries {
        let t: Vec<_> = terms.iter().map(|&(n, d, c)| (ex(n, d), Fq(c))).collect();
        AutomaticSeries::from_finite_series(f, &t).unwrap()
    }

    #[test]
    fn addition_examples() {
        let f2 = FqField::prime(2).unwrap();
        let h = finite(&f2, &[(1, 2, 1)]);
        assert!(is_zero(&add(&h, &h).unwrap()));
        let f3 = FqField::prime(3).unwrap();
        let s = add(
            &finite(&f3, &[(1, 1, 1), (2, 1, 1)]),
            &finite(&f3, &[(1, 1, 2)]),
        )
        .unwrap();
        assert_eq!(s.support_prefix(1).unwrap().terms, vec![(ex(2, 1), Fq(1))]);
        let zero = AutomaticSeries::zero(&f3);
        assert!(equals(&add(&s, &zero).unwrap(), &s).unwrap());
    }

    #[test]
    fn scalar_examples() {
        let f3 = FqField::prime(3).unwrap();
        let x = finite(&f3, &[(1, 1, 1), (2, 1, 2)]);
        let y = scalar_mul(Fq(2), &x).unwrap();
        assert_eq!(
            y.support_prefix(5).unwrap().terms,
            vec![(ex(1, 1), Fq(2)), (ex(2, 1), Fq(1))]
        );
        assert!(is_zero(&scalar_mul(Fq::ZERO, &x).unwrap()));
        assert!(equals(&scalar_mul(Fq::ONE, &x).unwrap(), &x).unwrap());
    }

    #[test]
    fn multiplication_examples() {
        let f2 = FqField::prime(2).unwrap();
        let h = finite(&f2, &[(1, 2, 1)]);
        let t = finite(&f2, &[(1, 1, 1)]);
        assert!(equals(&multiply(&h, &h).unwrap(), &t).unwrap());
        let f3 = FqField::prime(3).unwrap();
        let one_t = finite(&f3, &[(0, 1, 1), (1, 1, 1)]);
        let sq = multiply(&one_t, &one_t).unwrap();
        assert_eq!(
            sq.support_prefix(5).unwrap().terms,
            vec![(ex(0, 1), Fq(1)), (ex(1, 1), Fq(2)), (ex(2, 1), Fq(1))]
        );
        let one = finite(&f3, &[(0, 1, 1)]);
        assert!(equals(&multiply(&sq, &one).unwrap(), &sq).unwrap());
    }

    #[test]
    fn loop_times_loop() {
        // (Σ_{n≥1} t^{1-2^-n})^2 over F_2 is its Frobenius image
        let f2 = FqField::prime(2).unwrap();
        let x =
            AutomaticSeries::new(increasing_loop(2).map_outputs(|v| v, OutputAlphabet::Field(f2)))
                .unwrap();
        let sq = multiply(&x, &x).unwrap();
        assert!(equals(&sq, &frobenius(&x).unwrap()).unwrap());
    }

    #[test]
    fn frobenius_matches_repeated_product() {
        let f3 = FqField::prime(3).unwrap();
        let x = finite(&f3, &[(0, 1, 2), (1, 3, 1), (5, 9, 2), (2, 1, 1)]);
        let cube = multiply(&multiply(&x, &x).unwrap(), &x).unwrap();
        assert!(equals(&cube, &frobenius(&x).unwrap()).unwrap());
        let scaled = scale_exponents_by_p(&x).unwrap();
        assert_eq!(
            scaled.support_prefix(4).unwrap().terms[1],
            (ex(1, 1), Fq(1))
        );
    }

    #[test]
    fn evaluation_examples() {
        let f2 = FqField::prime(2).unwrap();
        let h = finite(&f2, &[(1, 2, 1)]);
        // X^2 - t
        let f = vec![vec![Fq(0), Fq(1)], vec![], vec![Fq(1)]];
        assert!(is_zero(&evaluate_polynomial(&f, &h).unwrap()));
        let id = vec![vec![], vec![Fq(1)]];
        assert!(equals(&evaluate_polynomial(&id, &h).unwrap(), &h).unwrap());
    }

    #[test]
    fn padding_stabilises() {
        let f3 = FqField::prime(3).unwrap();
        let x = finite(&f3, &[(1, 9, 1), (2, 3, 2), (1, 1, 1)]);
        let y = finite(&f3, &[(8, 9, 1), (1, 3, 1)]);
        let a = multiply(&x, &y).unwrap();
        let b = multiply_with(
            &x,
            &y,
            ArithConfig {
                extra_padding: 6,
                ..Default::default()
            },
        )
        .unwrap();
        assert!(equals(&a, &b).unwrap());
    }
}
