//! Enumeration of minimal well-formed, well-ordered DFAOs.
//!
//! Automata are built transition by transition in breadth-first order from
//! the initial state, so each canonical automaton is produced exactly once
//! and in lexicographic order of its transition table. A minimal
//! well-formed automaton with at least two states has one dead state,
//! reached from the initial state by 0, and its other states split into
//! those reading the integer part and those reading the fractional part.
//! The search only builds automata of that shape.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::ops::ControlFlow;

use crate::algebra::fq::{Fq, FqField};
use crate::automata::{Dfao, OutputAlphabet, Symbol};
use crate::series::{check_well_ordered, expansion_of, AutomaticSeries, Exponent};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Pre,
    Post,
    Dead,
}

/// Known leading terms that every accepted automaton must reproduce.
#[derive(Clone, Debug)]
pub struct TermFilter {
    /// Expansions and coefficients, in increasing order of exponent.
    terms: Vec<(Vec<Symbol>, Fq)>,
    /// Fixed-point values of the term exponents.
    values: Vec<u128>,
    /// Accepted strings of value at most this must be among `terms`;
    /// `None` means no other terms exist at all.
    horizon: Option<u128>,
    prefix: Vec<(Exponent, Fq)>,
    exact: bool,
}

/// Fixed-point scale p^F with F fractional digits.
fn frac_digits(p: u32) -> u32 {
    60 / (32 - p.leading_zeros())
}

fn fixed_value(w: &[Symbol], p: u32) -> Option<u128> {
    let f = frac_digits(p);
    let scale = (p as u128).pow(f);
    let mut int: u128 = 0;
    let mut frac: u128 = 0;
    let mut len = 0u32;
    let mut after = false;
    for &s in w {
        if s == p {
            after = true;
        } else if after {
            len += 1;
            if len > f {
                return None;
            }
            frac = frac * p as u128 + s as u128;
        } else {
            int = int.checked_mul(p as u128)?.checked_add(s as u128)?;
        }
    }
    int.checked_mul(scale)?
        .checked_add(frac * (p as u128).pow(f - len))
}

impl TermFilter {
    /// `terms` must be increasing in exponent. With `exact`, the series has
    /// no other terms; otherwise nothing is known beyond the last term.
    pub fn new(p: u32, terms: &[(Exponent, Fq)], exact: bool) -> Option<Self> {
        let mut out = Vec::new();
        let mut values = Vec::new();
        for (e, c) in terms {
            let w = expansion_of(e, p).ok()?;
            values.push(fixed_value(&w, p)?);
            out.push((w, *c));
        }
        let horizon = if exact { None } else { Some(*values.last()?) };
        Some(TermFilter {
            terms: out,
            values,
            horizon,
            prefix: terms.to_vec(),
            exact,
        })
    }

    pub fn terms(&self) -> &[(Exponent, Fq)] {
        &self.prefix
    }

    /// Whether a complete series has these leading terms.
    pub fn matches(&self, x: &AutomaticSeries) -> bool {
        let want = self.prefix.len() + usize::from(self.exact);
        match x.support_prefix_capped(want, 100_000) {
            Ok(sp) => {
                sp.terms.len() >= self.prefix.len()
                    && sp.terms[..self.prefix.len()] == self.prefix[..]
                    && (!self.exact || sp.exhausted && sp.terms.len() == self.prefix.len())
            }
            Err(_) => false,
        }
    }
}

/// Limits on the search.
#[derive(Clone, Copy, Debug)]
pub struct EnumConfig {
    /// Abort after this many partial automata.
    pub max_nodes: u64,
    /// Pops per consistency check on partial automata.
    pub check_budget: usize,
}

impl Default for EnumConfig {
    fn default() -> Self {
        EnumConfig {
            max_nodes: 20_000_000,
            check_budget: 64,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EnumStats {
    pub nodes: u64,
    pub complete: u64,
    pub well_ordered: u64,
    pub node_cap_hit: bool,
}

struct Builder<'a, F: FnMut(AutomaticSeries) -> ControlFlow<()>> {
    field: &'a FqField,
    p: u32,
    n: usize,
    delta: Vec<u32>,
    kinds: Vec<Kind>,
    out: Vec<u32>,
    dead: Option<u32>,
    filter: Option<&'a TermFilter>,
    cfg: EnumConfig,
    stats: &'a mut EnumStats,
    visit: F,
}

impl<F: FnMut(AutomaticSeries) -> ControlFlow<()>> Builder<'_, F> {
    fn arity(&self) -> usize {
        self.p as usize + 1
    }

    fn run(&mut self) -> ControlFlow<()> {
        let slot = self.delta.len();
        let k = self.arity();
        if slot == self.n * k {
            return self.leaf();
        }
        let (q, s) = (slot / k, (slot % k) as u32);
        if q >= self.kinds.len() {
            return ControlFlow::Continue(());
        }
        // every missing state needs a fresh slot
        if self.n - self.kinds.len() > self.n * k - slot {
            return ControlFlow::Continue(());
        }
        self.stats.nodes += 1;
        if self.stats.nodes > self.cfg.max_nodes {
            self.stats.node_cap_hit = true;
            return ControlFlow::Break(());
        }
        let kind = self.kinds[q];
        let allowed: &[Kind] = match (kind, s == self.p) {
            (Kind::Dead, _) => &[Kind::Dead],
            (Kind::Pre, true) => &[Kind::Dead, Kind::Post],
            (Kind::Pre, false) if q == 0 && s == 0 => &[Kind::Dead],
            (Kind::Pre, false) => &[Kind::Dead, Kind::Pre],
            (Kind::Post, true) => &[Kind::Dead],
            (Kind::Post, false) => &[Kind::Dead, Kind::Post],
        };
        for r in 0..self.kinds.len() as u32 {
            if !allowed.contains(&self.kinds[r as usize]) || (s == 0 && self.out[r as usize] != 0) {
                continue;
            }
            self.delta.push(r);
            let flow = if self.consistent() {
                self.run()
            } else {
                ControlFlow::Continue(())
            };
            self.delta.pop();
            flow?;
        }
        if self.kinds.len() == self.n {
            return ControlFlow::Continue(());
        }
        let id = self.kinds.len() as u32;
        for &new_kind in allowed {
            if new_kind == Kind::Dead && self.dead.is_some() {
                continue;
            }
            let outputs: u32 = if new_kind == Kind::Post && s != 0 {
                self.field.size()
            } else {
                1
            };
            for v in 0..outputs {
                self.kinds.push(new_kind);
                self.out.push(v);
                if new_kind == Kind::Dead {
                    self.dead = Some(id);
                }
                self.delta.push(id);
                let flow = if self.consistent() {
                    self.run()
                } else {
                    ControlFlow::Continue(())
                };
                self.delta.pop();
                if new_kind == Kind::Dead {
                    self.dead = None;
                }
                self.kinds.pop();
                self.out.pop();
                flow?;
            }
        }
        ControlFlow::Continue(())
    }

    fn next(&self, q: u32, s: Symbol) -> Option<u32> {
        if self.kinds[q as usize] == Kind::Dead {
            return Some(q);
        }
        self.delta
            .get(q as usize * self.arity() + s as usize)
            .copied()
    }

    /// Whether the transitions fixed so far agree with the term filter.
    fn consistent(&self) -> bool {
        let Some(filter) = self.filter else {
            return true;
        };
        for (w, c) in &filter.terms {
            let mut q = Some(0u32);
            for &s in w {
                q = q.and_then(|q| self.next(q, s));
            }
            if let Some(q) = q {
                if self.out[q as usize] != c.0 {
                    return false;
                }
            }
        }
        // Accepted strings below the horizon, smallest value first. A state
        // with nonzero output is never entered by 0, so such strings are
        // canonical expansions and their values identify them.
        let p = self.p as u128;
        let scale = p.pow(frac_digits(self.p));
        let mut heap = BinaryHeap::from([Reverse((0u128, 0u128, 0u128, scale / p, 0u32))]);
        let mut pops = 0;
        while let Some(Reverse((value, int, frac, step, q))) = heap.pop() {
            if filter.horizon.is_some_and(|h| value > h) {
                break;
            }
            pops += 1;
            if pops > self.cfg.check_budget {
                break;
            }
            if self.out[q as usize] != 0 && filter.values.binary_search(&value).is_err() {
                return false;
            }
            let pre = self.kinds[q as usize] == Kind::Pre;
            for s in 0..=self.p {
                let Some(t) = self.next(q, s) else { continue };
                if self.kinds[t as usize] == Kind::Dead {
                    continue;
                }
                let child = if !pre {
                    (step > 0).then(|| (int, frac + s as u128 * step, step / p))
                } else if s == self.p {
                    Some((int, 0, step))
                } else {
                    int.checked_mul(p)
                        .and_then(|v| v.checked_add(s as u128))
                        .map(|i| (i, 0, step))
                };
                let Some((i, f, st)) = child else { continue };
                if let Some(lower) = i.checked_mul(scale).and_then(|v| v.checked_add(f)) {
                    heap.push(Reverse((lower, i, f, st, t)));
                }
            }
        }
        true
    }

    fn leaf(&mut self) -> ControlFlow<()> {
        if self.kinds.len() != self.n {
            return ControlFlow::Continue(());
        }
        self.stats.complete += 1;
        let k = self.arity();
        let rows: Vec<Vec<u32>> = self.delta.chunks(k).map(|r| r.to_vec()).collect();
        let Ok(m) = Dfao::new(
            self.p,
            rows,
            0,
            self.out.clone(),
            OutputAlphabet::Field(self.field.clone()),
        ) else {
            return ControlFlow::Continue(());
        };
        let relevant = m.relevant_states();
        if (0..self.n).any(|q| self.kinds[q] != Kind::Dead && !relevant[q]) {
            return ControlFlow::Continue(());
        }
        if m.minimize().num_states() != self.n || !check_well_ordered(&m).well_ordered() {
            return ControlFlow::Continue(());
        }
        self.stats.well_ordered += 1;
        let Ok(x) = AutomaticSeries::new(m) else {
            return ControlFlow::Continue(());
        };
        if self.filter.is_some_and(|f| !f.matches(&x)) {
            return ControlFlow::Continue(());
        }
        (self.visit)(x)
    }
}

/// Visits every minimal well-formed, well-ordered DFAO with exactly `n`
/// states and outputs in `field`, in lexicographic order of transition
/// tables. With a filter, only series with the filter's leading terms are
/// visited; the pruning never discards such a series.
pub fn for_each_with_states(
    field: &FqField,
    n: usize,
    filter: Option<&TermFilter>,
    cfg: EnumConfig,
    stats: &mut EnumStats,
    mut visit: impl FnMut(AutomaticSeries) -> ControlFlow<()>,
) -> ControlFlow<()> {
    if n == 0 {
        return ControlFlow::Continue(());
    }
    if n == 1 {
        let zero = AutomaticSeries::zero(field);
        stats.complete += 1;
        stats.well_ordered += 1;
        if filter.is_none_or(|f| f.matches(&zero)) {
            return visit(zero);
        }
        return ControlFlow::Continue(());
    }
    let mut b = Builder {
        field,
        p: field.p(),
        n,
        delta: Vec::new(),
        kinds: vec![Kind::Pre],
        out: vec![0],
        dead: None,
        filter,
        cfg,
        stats,
        visit: &mut visit,
    };
    b.run()
}

/// The first `limit` well-ordered DFAOs with at most `max_states` states,
/// ordered by state count and then transition table.
pub fn enumerate_well_ordered_dfaos(
    field: &FqField,
    max_states: usize,
    limit: usize,
) -> Vec<AutomaticSeries> {
    let mut out = Vec::new();
    let mut stats = EnumStats::default();
    for n in 1..=max_states {
        let flow = for_each_with_states(field, n, None, EnumConfig::default(), &mut stats, |x| {
            out.push(x);
            if out.len() >= limit {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        if flow.is_break() {
            break;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::arith::equals;

    #[test]
    fn small_stream() {
        let f2 = FqField::prime(2).unwrap();
        let xs = enumerate_well_ordered_dfaos(&f2, 1, 10);
        assert_eq!(xs.len(), 1);
        assert!(crate::series::arith::is_zero(&xs[0]));
        let xs = enumerate_well_ordered_dfaos(&f2, 4, 10_000);
        let t =
            AutomaticSeries::from_finite_series(&f2, &[(Exponent::integer(1), Fq::ONE)]).unwrap();
        assert!(xs.iter().any(|x| x == &t));
        for (i, x) in xs.iter().take(60).enumerate() {
            for y in xs.iter().take(i) {
                assert!(!equals(x, y).unwrap());
            }
        }
    }

    #[test]
    fn filter_keeps_matching_series() {
        let f2 = FqField::prime(2).unwrap();
        let all = enumerate_well_ordered_dfaos(&f2, 4, usize::MAX);
        let terms = [
            (Exponent::integer(1), Fq::ONE),
            (Exponent::integer(2), Fq::ONE),
        ];
        let filter = TermFilter::new(2, &terms, false).unwrap();
        let mut kept = Vec::new();
        let mut stats = EnumStats::default();
        for n in 1..=4 {
            let _ = for_each_with_states(
                &f2,
                n,
                Some(&filter),
                EnumConfig::default(),
                &mut stats,
                |x| {
                    kept.push(x);
                    ControlFlow::Continue(())
                },
            );
        }
        let expected: Vec<_> = all.into_iter().filter(|x| filter.matches(x)).collect();
        assert!(!expected.is_empty());
        assert_eq!(kept, expected);
    }
}
