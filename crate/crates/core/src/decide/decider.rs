//! Deciding whether a monic f has a root of nonnegative value with
//! coefficients in a given field.
//!
//! The oracle counts the roots over F̄_q and gives their leading terms in a
//! field K holding every root coefficient. The search then runs through
//! subfields F_{p^d} ⊆ K, smallest first, and through automata by state
//! count, keeping only candidates whose leading terms match some pending
//! root. Every candidate is verified by evaluating f, and roots are
//! deduplicated by equality after mapping them into K.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use super::enumerate::{for_each_with_states, EnumConfig, EnumStats, TermFilter};
use crate::algebra::bivariate::XPoly;
use crate::algebra::fq::{Fq, FqField};
use crate::automata::OutputAlphabet;
use crate::error::{DecideError, SeriesError};
use crate::newton::{
    count_roots_oracle, ramification_bound, root_truncations, OracleConfig, RamificationBound,
};
use crate::series::arith::{equals, evaluate_polynomial_with, is_zero, ArithConfig};
use crate::series::{AutomaticSeries, Exponent};

/// The field F that root coefficients must lie in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoefficientField {
    Finite(FqField),
    /// The perfect closure of F_p, which is F_p itself.
    PerfectClosureOfPrime,
    /// All of F̄_p.
    AlgebraicClosure,
    /// The union of F_{p^d} over d in the set.
    DegreeSet(BTreeSet<u32>),
}

impl CoefficientField {
    /// Whether `a` ∈ `field` lies in F.
    pub fn contains(&self, field: &FqField, a: Fq) -> bool {
        match self {
            CoefficientField::Finite(f) => field.is_in_subfield(a, field.degree().gcd(&f.degree())),
            CoefficientField::PerfectClosureOfPrime => field.is_in_subfield(a, 1),
            CoefficientField::AlgebraicClosure => true,
            CoefficientField::DegreeSet(ds) => {
                let e = field.element_degree(a);
                ds.iter().any(|d| d % e == 0)
            }
        }
    }

    /// Whether every output of the series lies in F.
    pub fn contains_series(&self, x: &AutomaticSeries) -> bool {
        x.automaton()
            .tau()
            .iter()
            .all(|&v| self.contains(x.field(), Fq(v)))
    }

    pub fn describe(&self) -> String {
        match self {
            CoefficientField::Finite(f) => f.descriptor(),
            CoefficientField::PerfectClosureOfPrime => "perfect closure of F_p".into(),
            CoefficientField::AlgebraicClosure => "algebraic closure of F_p".into(),
            CoefficientField::DegreeSet(ds) => {
                format!(
                    "degrees {{{}}}",
                    ds.iter()
                        .map(|d| d.to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                )
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct RootQuery {
    pub f: XPoly,
    pub field: CoefficientField,
}

#[derive(Clone, Copy, Debug)]
pub struct DecideConfig {
    /// Largest automaton searched.
    pub max_states: usize,
    /// Candidates evaluated in total.
    pub max_candidates: u64,
    /// Leading terms used to steer the search.
    pub k_terms: usize,
    /// State budget for each construction while evaluating f.
    pub arith_state_cap: usize,
    pub enumeration: EnumConfig,
    pub oracle: OracleConfig,
}

impl Default for DecideConfig {
    fn default() -> Self {
        DecideConfig {
            max_states: 6,
            max_candidates: 10_000,
            k_terms: 4,
            arith_state_cap: 50_000,
            enumeration: EnumConfig::default(),
            oracle: OracleConfig::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "YES")]
    Yes,
    #[serde(rename = "NO")]
    No,
    #[serde(rename = "UNDECIDED-RESOURCE")]
    UndecidedResource,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "YES",
            Verdict::No => "NO",
            Verdict::UndecidedResource => "UNDECIDED-RESOURCE",
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchLog {
    /// Degrees d of the fields F_{p^d} searched, in order.
    pub field_degrees: Vec<u32>,
    pub largest_state_count: usize,
    pub nodes: u64,
    pub complete_automata: u64,
    pub well_ordered_automata: u64,
    pub candidates_evaluated: u64,
}

#[derive(Clone, Debug)]
pub struct RootDecision {
    pub verdict: Verdict,
    /// Verified roots with coefficients in F, in search order; the first is
    /// the reported witness.
    pub witnesses: Vec<AutomaticSeries>,
    /// Every distinct verified root, in search order.
    pub roots: Vec<AutomaticSeries>,
    pub oracle_count: usize,
    pub bound: RamificationBound,
    /// Exponents of the series are multiples of 1/scale of the true ones:
    /// a term t^γ of a witness stands for t^{γ/scale}.
    pub exponent_scale: u64,
    pub caps_hit: Vec<String>,
    pub log: SearchLog,
}

impl RootDecision {
    pub fn witness(&self) -> Option<&AutomaticSeries> {
        self.witnesses.first()
    }

    /// The first `k` terms of a series, with exponents divided by the scale.
    pub fn terms_of(
        &self,
        x: &AutomaticSeries,
        k: usize,
    ) -> Result<(Vec<(Exponent, Fq)>, bool), SeriesError> {
        let sp = x.support_prefix(k)?;
        let scale = BigRational::new(BigInt::from(1), BigInt::from(self.exponent_scale));
        Ok((
            sp.terms
                .iter()
                .map(|(e, c)| (e.scale(&scale), *c))
                .collect(),
            !sp.exhausted,
        ))
    }
}

/// For each element of `g`, its image in `k` under an embedding that agrees
/// with `base → k` on the subfield `base` ⊆ `g`.
fn compatible_table(base: &FqField, g: &FqField, k: &FqField) -> Result<Vec<Fq>, DecideError> {
    let to_k = base.embedding_into(k)?;
    let to_g = base.embedding_into(g)?;
    let mut table: Vec<Fq> = {
        let e = g.embedding_into(k)?;
        g.elements().map(|a| e.apply(a)).collect()
    };
    let gen = base.generator();
    for _ in 0..k.degree() {
        if table[to_g.apply(gen).0 as usize] == to_k.apply(gen) {
            return Ok(table);
        }
        for v in table.iter_mut() {
            *v = k.frobenius(*v);
        }
    }
    Err(DecideError::Algebra(crate::error::AlgebraError::Invalid(
        "no compatible embedding".into(),
    )))
}

fn map_series(
    x: &AutomaticSeries,
    table: &[Fq],
    k: &FqField,
) -> Result<AutomaticSeries, SeriesError> {
    let m = x
        .automaton()
        .map_outputs(|v| table[v as usize].0, OutputAlphabet::Field(k.clone()));
    AutomaticSeries::new(m)
}

/// Canonical position: field degree, state count, transition table, outputs.
type RootKey = (u32, usize, Vec<u32>, Vec<u32>);

struct Found<'a> {
    k: &'a FqField,
    in_k: Vec<AutomaticSeries>,
    roots: Vec<(RootKey, AutomaticSeries)>,
}

impl Found<'_> {
    /// Records a verified root unless it is already known.
    fn add(&mut self, table: &[Fq], d: u32, x: AutomaticSeries) -> Result<bool, DecideError> {
        let y = map_series(&x, table, self.k)?;
        for z in &self.in_k {
            if equals(&y, z)? {
                return Ok(false);
            }
        }
        self.in_k.push(y);
        let a = x.automaton();
        let rows: Vec<u32> = (0..a.num_states() as u32)
            .flat_map(|q| a.row(q).to_vec())
            .collect();
        self.roots
            .push(((d, a.num_states(), rows, a.tau().to_vec()), x));
        Ok(true)
    }

    fn verify_and_add(
        &mut self,
        coeffs: &[Vec<Fq>],
        arith: ArithConfig,
        table: &[Fq],
        d: u32,
        x: AutomaticSeries,
    ) -> Result<bool, DecideError> {
        if !is_zero(&evaluate_polynomial_with(coeffs, &x, arith)?) {
            return Ok(false);
        }
        self.add(table, d, x)
    }
}

struct Target {
    filter_terms: Vec<(BigRational, Fq)>,
    exact: bool,
    roots: usize,
    found: usize,
}

fn check_query(query: &RootQuery) -> Result<(), DecideError> {
    let f = &query.f;
    if f.degree().unwrap_or(0) == 0 || !f.is_monic() {
        return Err(DecideError::BadQuery);
    }
    let p = f.field().p();
    let char_ok = match &query.field {
        CoefficientField::Finite(k) => k.p() == p,
        _ => true,
    };
    if !char_ok {
        return Err(DecideError::BadQuery);
    }
    Ok(())
}

/// Roots in F((t^{1/p^∞})) with v ≥ 0.
pub fn decide_ppf(query: &RootQuery, cfg: &DecideConfig) -> Result<RootDecision, DecideError> {
    check_query(query)?;
    let bound = ramification_bound(&query.f)?;
    search(query, cfg, bound, 1)
}

fn search(
    query: &RootQuery,
    cfg: &DecideConfig,
    bound: RamificationBound,
    scale: u64,
) -> Result<RootDecision, DecideError> {
    let f = &query.f;
    let base = f.field();
    let p = base.p();
    let oracle_count = count_roots_oracle(f, 1, cfg.oracle)?;
    let mut decision = RootDecision {
        verdict: Verdict::No,
        witnesses: vec![],
        roots: vec![],
        oracle_count,
        bound,
        exponent_scale: scale,
        caps_hit: vec![],
        log: SearchLog::default(),
    };
    if oracle_count == 0 {
        return Ok(decision);
    }
    let (k, truncations) = root_truncations(f, 1, cfg.k_terms.max(1), cfg.oracle)?;
    let mut targets: Vec<Target> = truncations
        .into_iter()
        .map(|r| Target {
            filter_terms: r.terms,
            exact: r.exact,
            roots: r.roots,
            found: 0,
        })
        .collect();
    let mut found = Found {
        k: &k,
        in_k: vec![],
        roots: vec![],
    };
    let arith = ArithConfig {
        state_cap: cfg.arith_state_cap,
        ..ArithConfig::default()
    };
    let mut stats = EnumStats::default();
    let e = base.degree();
    let degrees: Vec<u32> = (1..=k.degree())
        .filter(|d| d % e == 0 && k.degree() % d == 0)
        .collect();
    'fields: for d in degrees {
        if found.in_k.len() >= oracle_count {
            break;
        }
        let g = if d == e {
            base.clone()
        } else {
            FqField::new(p, d)?
        };
        let table = compatible_table(base, &g, &k)?;
        let coeffs = f.embed(&base.embedding_into(&g)?).dense();
        // targets whose known coefficients all lie in g
        let filters: Vec<Option<TermFilter>> = targets
            .iter()
            .map(|t| {
                let terms: Option<Vec<(Exponent, Fq)>> = t
                    .filter_terms
                    .iter()
                    .map(|(e, c)| {
                        let pre = table.iter().position(|v| v == c)?;
                        Some((Exponent::from_rational(e.clone()).ok()?, Fq(pre as u32)))
                    })
                    .collect();
                terms.and_then(|terms| TermFilter::new(p, &terms, t.exact))
            })
            .collect();
        if filters.iter().all(Option::is_none) {
            continue;
        }
        decision.log.field_degrees.push(d);
        // A finite root has a unique minimal automaton, which is the only
        // one the enumeration could produce for it; the state cap bounds
        // enumeration only.
        for (ti, filter) in filters.iter().enumerate() {
            let Some(filter) = filter else { continue };
            if !targets[ti].exact || targets[ti].found >= targets[ti].roots {
                continue;
            }
            let x = AutomaticSeries::from_finite_series(&g, filter.terms())?;
            decision.log.candidates_evaluated += 1;
            if found.verify_and_add(&coeffs, arith, &table, d, x)? {
                targets[ti].found += 1;
            }
        }
        for n in 1..=cfg.max_states {
            if found.in_k.len() >= oracle_count {
                break 'fields;
            }
            decision.log.largest_state_count = decision.log.largest_state_count.max(n);
            for (ti, filter) in filters.iter().enumerate() {
                let Some(filter) = filter else { continue };
                if targets[ti].exact || targets[ti].found >= targets[ti].roots {
                    continue;
                }
                let mut batch = Vec::new();
                let flow =
                    for_each_with_states(&g, n, Some(filter), cfg.enumeration, &mut stats, |x| {
                        batch.push(x);
                        ControlFlow::Continue(())
                    });
                if flow.is_break() {
                    decision
                        .caps_hit
                        .push(format!("enumeration nodes ({})", cfg.enumeration.max_nodes));
                    break 'fields;
                }
                let room = cfg
                    .max_candidates
                    .saturating_sub(decision.log.candidates_evaluated)
                    as usize;
                let over = batch.len() > room;
                batch.truncate(room);
                decision.log.candidates_evaluated += batch.len() as u64;
                let results: Vec<Result<bool, SeriesError>> = batch
                    .par_iter()
                    .map(|x| evaluate_polynomial_with(&coeffs, x, arith).map(|v| is_zero(&v)))
                    .collect();
                for (x, ok) in batch.into_iter().zip(results) {
                    match ok {
                        Ok(true) => {
                            if found.add(&table, d, x)? {
                                targets[ti].found += 1;
                            }
                        }
                        Ok(false) => {}
                        Err(err) => decision.caps_hit.push(format!("arithmetic: {err}")),
                    }
                }
                if found.in_k.len() > oracle_count {
                    return Err(DecideError::OracleMismatch {
                        found: found.in_k.len(),
                        oracle: oracle_count,
                    });
                }
                if over {
                    decision
                        .caps_hit
                        .push(format!("candidates ({})", cfg.max_candidates));
                    break 'fields;
                }
                if found.in_k.len() == oracle_count {
                    break 'fields;
                }
            }
        }
    }
    if found.in_k.len() > oracle_count {
        return Err(DecideError::OracleMismatch {
            found: found.in_k.len(),
            oracle: oracle_count,
        });
    }
    let complete = found.in_k.len() == oracle_count;
    found.roots.sort_by(|a, b| a.0.cmp(&b.0));
    for (_, x) in found.roots {
        if query.field.contains_series(&x) {
            decision.witnesses.push(x.clone());
        }
        decision.roots.push(x);
    }
    decision.log.nodes = stats.nodes;
    decision.log.complete_automata = stats.complete;
    decision.log.well_ordered_automata = stats.well_ordered;
    if !complete {
        decision
            .caps_hit
            .push(format!("states ({})", cfg.max_states));
    }
    decision.verdict = if !decision.witnesses.is_empty() {
        Verdict::Yes
    } else if complete {
        Verdict::No
    } else {
        Verdict::UndecidedResource
    };
    Ok(decision)
}

/// Roots in F((t^{Γ_m})), Γ_m = (1/(m p^∞))ℤ, with v ≥ 0. Witnesses are series
/// in s = t^{1/m}.
pub fn decide_gamma_m(
    query: &RootQuery,
    m: u64,
    cfg: &DecideConfig,
) -> Result<RootDecision, DecideError> {
    check_query(query)?;
    let p = query.f.field().p();
    if m == 0 || m.is_multiple_of(p as u64) {
        return Err(DecideError::NotCoprime { m, p });
    }
    let bound = ramification_bound(&query.f)?;
    let sub = RootQuery {
        f: query.f.substitute_t_power(m as usize),
        field: query.field.clone(),
    };
    search(&sub, cfg, bound, m)
}

/// Prime powers exactly dividing n, in increasing order of the prime.
pub fn prime_power_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            let mut pp = 1;
            while n.is_multiple_of(q) {
                n /= q;
                pp *= q;
            }
            out.push(pp);
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct ValueGroupReduction {
    pub bound: RamificationBound,
    /// Prime powers exactly dividing the bound.
    pub u: Vec<u64>,
    /// Those of `u` admitted by V.
    pub admitted: Vec<u64>,
    pub m: u64,
}

/// m′ = Π (U ∩ V) for U the prime-power factors of the ramification bound.
pub fn reduce_value_group(
    f: &XPoly,
    v: impl Fn(u64) -> bool,
) -> Result<ValueGroupReduction, DecideError> {
    let bound = ramification_bound(f)?;
    let u = prime_power_factors(bound.m);
    let admitted: Vec<u64> = u.iter().copied().filter(|&q| v(q)).collect();
    let m = admitted.iter().product();
    Ok(ValueGroupReduction {
        bound,
        u,
        admitted,
        m,
    })
}

/// Decides over the field whose value group admits the prime powers in V.
pub fn decide_with_value_set(
    query: &RootQuery,
    v: impl Fn(u64) -> bool,
    cfg: &DecideConfig,
) -> Result<(ValueGroupReduction, RootDecision), DecideError> {
    check_query(query)?;
    let reduction = reduce_value_group(&query.f, v)?;
    let decision = decide_gamma_m(query, reduction.m, cfg)?;
    Ok((reduction, decision))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::bivariate::parse_xpoly;

    fn query(s: &str, p: u32, field: CoefficientField) -> RootQuery {
        RootQuery {
            f: parse_xpoly(s, &FqField::prime(p).unwrap()).unwrap(),
            field,
        }
    }

    fn fp(p: u32) -> CoefficientField {
        CoefficientField::Finite(FqField::prime(p).unwrap())
    }

    fn terms(d: &RootDecision) -> Vec<(Exponent, Fq)> {
        d.terms_of(d.witness().unwrap(), 4).unwrap().0
    }

    #[test]
    fn polynomial_root() {
        for p in [2, 3, 5] {
            let d = decide_ppf(&query("X - t^2", p, fp(p)), &DecideConfig::default()).unwrap();
            assert_eq!(d.verdict, Verdict::Yes);
            assert_eq!(d.oracle_count, 1);
            assert_eq!(terms(&d), vec![(Exponent::integer(2), Fq::ONE)]);
        }
    }

    #[test]
    fn artin_schreier_p2() {
        let d = decide_ppf(&query("X^2 - X - t", 2, fp(2)), &DecideConfig::default()).unwrap();
        assert_eq!(d.verdict, Verdict::Yes);
        assert_eq!(d.oracle_count, 2);
        assert_eq!(d.roots.len(), 2);
        let exps: Vec<Exponent> = terms(&d).into_iter().map(|t| t.0).collect();
        assert_eq!(exps, [1, 2, 4, 8].map(Exponent::integer));
    }

    #[test]
    fn artin_schreier_p3() {
        let d = decide_ppf(&query("X^3 - X - t", 3, fp(3)), &DecideConfig::default()).unwrap();
        assert_eq!(d.verdict, Verdict::Yes);
        assert_eq!(d.oracle_count, 3);
        assert_eq!(d.roots.len(), 3);
        assert!(d.roots.iter().all(|x| x.automaton().num_states() <= 6));
        let exps: Vec<Exponent> = terms(&d).into_iter().map(|t| t.0).collect();
        assert_eq!(exps, [1, 3, 9, 27].map(Exponent::integer));
    }

    #[test]
    fn square_root_of_t() {
        let d = decide_ppf(&query("X^2 - t", 3, fp(3)), &DecideConfig::default()).unwrap();
        assert_eq!(d.verdict, Verdict::No);
        assert_eq!(d.oracle_count, 0);
        let d = decide_gamma_m(&query("X^2 - t", 3, fp(3)), 2, &DecideConfig::default()).unwrap();
        assert_eq!(d.verdict, Verdict::Yes);
        assert_eq!(terms(&d)[0].0, Exponent::new(1, 2).unwrap());
        let d = decide_ppf(&query("X^2 - t", 2, fp(2)), &DecideConfig::default()).unwrap();
        assert_eq!(d.verdict, Verdict::Yes);
        assert_eq!(terms(&d), vec![(Exponent::new(1, 2).unwrap(), Fq::ONE)]);
    }

    #[test]
    fn constant_roots_need_the_right_field() {
        let d = decide_ppf(&query("X^2 + 1", 3, fp(3)), &DecideConfig::default()).unwrap();
        assert_eq!(d.verdict, Verdict::No);
        assert_eq!(d.roots.len(), 2);
        let f9 = CoefficientField::Finite(FqField::new(3, 2).unwrap());
        let d = decide_ppf(&query("X^2 + 1", 3, f9), &DecideConfig::default()).unwrap();
        assert_eq!(d.verdict, Verdict::Yes);
        assert_eq!(d.witnesses.len(), 2);
        let d = decide_ppf(
            &query("X^2 + 1", 3, CoefficientField::AlgebraicClosure),
            &DecideConfig::default(),
        )
        .unwrap();
        assert_eq!(d.verdict, Verdict::Yes);
        let d = decide_ppf(
            &query("X^2 + 1", 3, CoefficientField::PerfectClosureOfPrime),
            &DecideConfig::default(),
        )
        .unwrap();
        assert_eq!(d.verdict, Verdict::No);
        let ds = CoefficientField::DegreeSet(BTreeSet::from([4]));
        assert_eq!(
            decide_ppf(&query("X^2 + 1", 3, ds), &DecideConfig::default())
                .unwrap()
                .verdict,
            Verdict::Yes
        );
    }

    #[test]
    fn ramified_roots() {
        let d = decide_gamma_m(&query("X^2 - t^3", 3, fp(3)), 2, &DecideConfig::default()).unwrap();
        assert_eq!(d.verdict, Verdict::Yes);
        assert_eq!(terms(&d)[0].0, Exponent::new(3, 2).unwrap());
        let d = decide_gamma_m(&query("X^2 - t^3", 3, fp(3)), 1, &DecideConfig::default()).unwrap();
        assert_eq!(d.verdict, Verdict::No);
        assert!(matches!(
            decide_gamma_m(&query("X^2 - t", 3, fp(3)), 3, &DecideConfig::default()),
            Err(DecideError::NotCoprime { m: 3, p: 3 })
        ));
    }

    #[test]
    fn value_group_reduction() {
        let f = parse_xpoly("X^2 - t^3", &FqField::prime(3).unwrap()).unwrap();
        assert_eq!(reduce_value_group(&f, |q| q == 2).unwrap().m, 2);
        assert_eq!(reduce_value_group(&f, |_| false).unwrap().m, 1);
        assert_eq!(reduce_value_group(&f, |q| q == 4 || q == 5).unwrap().m, 1);
        assert_eq!(prime_power_factors(360), vec![8, 9, 5]);
    }

    #[test]
    fn bad_queries() {
        let f3 = FqField::prime(3).unwrap();
        let q = RootQuery {
            f: parse_xpoly("2X - t", &f3).unwrap(),
            field: fp(3),
        };
        assert!(matches!(
            decide_ppf(&q, &DecideConfig::default()),
            Err(DecideError::BadQuery)
        ));
        let q = RootQuery {
            f: parse_xpoly("X - t", &f3).unwrap(),
            field: fp(2),
        };
        assert!(matches!(
            decide_ppf(&q, &DecideConfig::default()),
            Err(DecideError::BadQuery)
        ));
    }
}
