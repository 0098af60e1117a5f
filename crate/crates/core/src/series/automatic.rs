use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};

use num_rational::BigRational;

use super::checks::{check_well_formed, check_well_ordered, SaguaroReport};
use super::exponent::{expansion_of, prefix_value, Exponent};
use crate::algebra::fq::{Fq, FqField};
use crate::automata::{Dfao, OutputAlphabet, Symbol};
use crate::error::SeriesError;

/// Default bound on prefix pops in [`AutomaticSeries::support_prefix`].
pub const DEFAULT_SEARCH_CAP: usize = 1_000_000;

/// Σ f_M(w) t^{v(w)} over accepted expansions w, for a validated DFAO M with
/// outputs in F_q.
#[derive(Clone, Debug, PartialEq)]
pub struct AutomaticSeries {
    automaton: Dfao,
    field: FqField,
}

/// The smallest support points of a series, and whether the support ran out.
#[derive(Clone, Debug, PartialEq)]
pub struct SupportPrefix {
    pub terms: Vec<(Exponent, Fq)>,
    /// True when fewer terms than requested exist.
    pub exhausted: bool,
}

impl AutomaticSeries {
    /// Validates well-formedness and well-orderedness.
    pub fn new(automaton: Dfao) -> Result<Self, SeriesError> {
        let field = match automaton.outputs() {
            OutputAlphabet::Field(f) => f.clone(),
            _ => {
                return Err(SeriesError::NotWellFormed(
                    "outputs are not field elements".into(),
                ))
            }
        };
        if field.p() != automaton.p() {
            return Err(SeriesError::NotWellFormed(
                "output field characteristic differs from p".into(),
            ));
        }
        let automaton = automaton.canonical();
        check_well_formed(&automaton).map_err(|v| SeriesError::NotWellFormed(v.to_string()))?;
        let report = check_well_ordered(&automaton);
        if let Some(d) = report.first_defect() {
            return Err(SeriesError::NotWellOrdered(d.to_string()));
        }
        Ok(AutomaticSeries { automaton, field })
    }

    pub fn zero(field: &FqField) -> Self {
        let a = Dfao::constant(field.p(), 0, OutputAlphabet::Field(field.clone()));
        AutomaticSeries {
            automaton: a,
            field: field.clone(),
        }
    }

    pub fn automaton(&self) -> &Dfao {
        &self.automaton
    }

    pub fn field(&self) -> &FqField {
        &self.field
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn saguaro_report(&self) -> SaguaroReport {
        check_well_ordered(&self.automaton)
    }

    /// A trie automaton accepting the expansions of the given exponents.
    pub fn from_finite_series(
        field: &FqField,
        terms: &[(Exponent, Fq)],
    ) -> Result<Self, SeriesError> {
        let p = field.p();
        let k = p as usize + 1;
        let mut words: BTreeMap<Vec<Symbol>, Fq> = BTreeMap::new();
        for (e, c) in terms {
            let w = expansion_of(e, p)?;
            if words.insert(w, *c).is_some() {
                return Err(SeriesError::DuplicateExponent(e.to_string()));
            }
        }
        // state 0 is the root, state 1 the dead state
        let mut delta: Vec<u32> = vec![1; 2 * k];
        let mut tau = vec![0u32, 0];
        for (w, c) in &words {
            let mut q = 0usize;
            for &s in w {
                let t = delta[q * k + s as usize];
                q = if t == 1 {
                    let id = tau.len();
                    tau.push(0);
                    delta.extend(std::iter::repeat_n(1, k));
                    delta[q * k + s as usize] = id as u32;
                    id
                } else {
                    t as usize
                };
            }
            tau[q] = c.0;
        }
        let m = Dfao::from_raw(p, delta, 0, tau, OutputAlphabet::Field(field.clone())).minimize();
        AutomaticSeries::new(m)
    }

    /// The `k` smallest support points with coefficients, by best-first search
    /// over expansion prefixes ordered by the least value they can reach.
    pub fn support_prefix(&self, k: usize) -> Result<SupportPrefix, SeriesError> {
        self.support_prefix_capped(k, DEFAULT_SEARCH_CAP)
    }

    pub fn support_prefix_capped(
        &self,
        k: usize,
        cap: usize,
    ) -> Result<SupportPrefix, SeriesError> {
        let m = &self.automaton;
        let p = m.p();
        let relevant = m.relevant_states();
        let mut terms = Vec::new();
        let mut heap: BinaryHeap<Reverse<(BigRational, usize, Vec<Symbol>, u32)>> =
            BinaryHeap::new();
        if relevant[m.initial() as usize] {
            heap.push(Reverse((
                BigRational::from_integer(0.into()),
                0,
                Vec::new(),
                m.initial(),
            )));
        }
        let mut pops = 0usize;
        while terms.len() < k {
            let Some(Reverse((bound, _, w, q))) = heap.pop() else {
                return Ok(SupportPrefix {
                    terms,
                    exhausted: true,
                });
            };
            pops += 1;
            if pops > cap {
                return Err(SeriesError::SearchCap(cap));
            }
            if m.is_accepting(q) {
                terms.push((Exponent::from_rational(bound)?, Fq(m.output(q))));
            }
            for s in 0..=p {
                let t = m.next(q, s);
                if !relevant[t as usize] {
                    continue;
                }
                let mut child = w.clone();
                child.push(s);
                let b = prefix_value(&child, p);
                let len = child.len();
                heap.push(Reverse((b, len, child, t)));
            }
        }
        Ok(SupportPrefix {
            terms,
            exhausted: false,
        })
    }

    /// Coefficient of t^e.
    pub fn coefficient(&self, e: &Exponent) -> Result<Fq, SeriesError> {
        let w = expansion_of(e, self.p())?;
        Ok(Fq(self.automaton.run(&w)?))
    }

    /// Text such as `t + 2*t^(3/2) + ...`, listing at most `k` terms.
    pub fn format(&self, k: usize) -> Result<String, SeriesError> {
        let sp = self.support_prefix(k)?;
        Ok(format_terms(&self.field, &sp.terms, !sp.exhausted))
    }
}

pub fn format_terms(field: &FqField, terms: &[(Exponent, Fq)], truncated: bool) -> String {
    let mut parts: Vec<String> = terms
        .iter()
        .map(|(e, c)| {
            let cs = field.format_element(*c);
            let cs = if cs.contains('+') {
                format!("({cs})")
            } else {
                cs
            };
            let es = if e.is_integer() {
                e.to_string()
            } else {
                format!("({e})")
            };
            match (
                e.as_rational() == &BigRational::from_integer(0.into()),
                *c == Fq::ONE,
                e.to_string() == "1",
            ) {
                (true, _, _) => cs,
                (false, true, true) => "t".to_string(),
                (false, true, false) => format!("t^{es}"),
                (false, false, true) => format!("{cs}*t"),
                (false, false, false) => format!("{cs}*t^{es}"),
            }
        })
        .collect();
    if parts.is_empty() && !truncated {
        return "0".into();
    }
    if truncated {
        parts.push("...".into());
    }
    parts.join(" + ")
}
