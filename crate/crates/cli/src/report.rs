//! Serializable reports. Field order is the output key order.

use std::fmt::Write;

use hahn_automata::algebra::bivariate::XPoly;
use hahn_automata::decide::{RootDecision, RootQuery, SearchLog, ValueGroupReduction, Verdict};
use hahn_automata::error::SeriesError;
use hahn_automata::newton::{ramification_points, RamificationBound};
use hahn_automata::series::automatic::format_terms;
use hahn_automata::series::checks::Violation;
use hahn_automata::series::{Exponent, SaguaroReport};
use serde::Serialize;

/// Support terms listed for a witness.
pub const WITNESS_TERMS: usize = 8;

#[derive(Debug, Serialize)]
pub struct Term {
    pub exponent: String,
    pub coefficient: String,
}

#[derive(Debug, Serialize)]
pub struct Ramification {
    pub exponent: String,
    pub primes: Vec<u64>,
}

#[derive(Debug, Serialize)]
pub struct ValueSetReport {
    /// Prime-power factors of the bound.
    pub u: Vec<u64>,
    pub admitted: Vec<u64>,
}

#[derive(Debug, Serialize)]
pub struct WitnessReport {
    pub file: Option<String>,
    pub states: usize,
    /// Outputs are elements of this field.
    pub output_field: String,
    /// The automaton reads exponents of s = t^(1/scale).
    pub exponent_scale: u64,
    pub terms: Vec<Term>,
    pub truncated: bool,
    pub series: String,
    /// Primes ramifying at exponents among the listed terms.
    pub ramification: Vec<Ramification>,
}

#[derive(Debug, Serialize)]
pub struct DecideReport {
    pub verdict: Verdict,
    pub polynomial: String,
    pub p: u32,
    pub field: String,
    pub m: u64,
    pub value_set: Option<ValueSetReport>,
    pub bound_m: u64,
    pub oracle_count: usize,
    pub roots_found: usize,
    pub witness: Option<WitnessReport>,
    pub caps_hit: Vec<String>,
    pub search: SearchLog,
}

impl DecideReport {
    pub fn new(
        q: &RootQuery,
        reduction: Option<&ValueGroupReduction>,
        d: &RootDecision,
        file: Option<String>,
    ) -> Result<Self, SeriesError> {
        let witness = match d.witness() {
            None => None,
            Some(w) => {
                let (terms, truncated) = d.terms_of(w, WITNESS_TERMS)?;
                let exps: Vec<Exponent> = terms.iter().map(|t| t.0.clone()).collect();
                Some(WitnessReport {
                    file,
                    states: w.automaton().num_states(),
                    output_field: w.field().descriptor(),
                    exponent_scale: d.exponent_scale,
                    series: format_terms(w.field(), &terms, truncated),
                    terms: terms
                        .iter()
                        .map(|(e, c)| Term {
                            exponent: e.to_string(),
                            coefficient: w.field().format_element(*c),
                        })
                        .collect(),
                    truncated,
                    ramification: ramification_points(&exps, q.f.field().p())
                        .into_iter()
                        .map(|(e, primes)| Ramification {
                            exponent: e.to_string(),
                            primes,
                        })
                        .collect(),
                })
            }
        };
        Ok(DecideReport {
            verdict: d.verdict,
            polynomial: q.f.to_string(),
            p: q.f.field().p(),
            field: q.field.describe(),
            m: d.exponent_scale,
            value_set: reduction.map(|r| ValueSetReport {
                u: r.u.clone(),
                admitted: r.admitted.clone(),
            }),
            bound_m: d.bound.m,
            oracle_count: d.oracle_count,
            roots_found: d.roots.len(),
            witness,
            caps_hit: d.caps_hit.clone(),
            search: d.log.clone(),
        })
    }

    pub fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "verdict: {}", self.verdict);
        let _ = writeln!(s, "polynomial: {} over F_{}", self.polynomial, self.p);
        let _ = writeln!(s, "coefficient field: {}", self.field);
        let _ = writeln!(s, "value group: m = {}", self.m);
        if let Some(v) = &self.value_set {
            let _ = writeln!(s, "U: {:?}, admitted: {:?}", v.u, v.admitted);
        }
        let _ = writeln!(s, "bound: m = {}", self.bound_m);
        let _ = writeln!(s, "oracle count: {}", self.oracle_count);
        let _ = writeln!(s, "roots found: {}", self.roots_found);
        match &self.witness {
            Some(w) => {
                let _ = writeln!(s, "witness: {}", w.series);
                for r in &w.ramification {
                    let _ = writeln!(s, "ramifies at {}: {:?}", r.exponent, r.primes);
                }
                let _ = writeln!(s, "witness states: {}", w.states);
                let _ = writeln!(s, "witness file: {}", w.file.as_deref().unwrap_or("-"));
            }
            None => {
                let _ = writeln!(s, "witness: none");
            }
        }
        let caps = if self.caps_hit.is_empty() {
            "none".to_string()
        } else {
            self.caps_hit.join("; ")
        };
        let _ = writeln!(s, "caps hit: {caps}");
        s
    }
}

#[derive(Debug, Serialize)]
pub struct LineReport {
    pub index: u32,
    pub slope: String,
    pub intercept: String,
}

#[derive(Debug, Serialize)]
pub struct BreakpointReport {
    pub r: String,
    pub lines: Vec<u32>,
}

#[derive(Debug, Serialize)]
pub struct OreReport<'a> {
    pub polynomial: &'a str,
    pub additive: &'a str,
}

#[derive(Debug, Serialize)]
pub struct EnvelopeReport<'a> {
    pub polynomial: &'a str,
    pub additive: &'a str,
    pub lines: &'a [LineReport],
    pub active: &'a [u32],
    pub breakpoints: &'a [BreakpointReport],
}

#[derive(Debug, Serialize)]
pub struct BoundReport {
    pub polynomial: String,
    pub additive: String,
    pub lines: Vec<LineReport>,
    pub active: Vec<u32>,
    pub breakpoints: Vec<BreakpointReport>,
    pub m: u64,
}

impl BoundReport {
    pub fn new(f: &XPoly, b: &RamificationBound) -> Self {
        BoundReport {
            polynomial: f.to_string(),
            additive: b.additive.to_string(),
            lines: b
                .envelope
                .lines
                .iter()
                .map(|l| LineReport {
                    index: l.index,
                    slope: l.slope.to_string(),
                    intercept: l.intercept.to_string(),
                })
                .collect(),
            active: b.envelope.active.clone(),
            breakpoints: b
                .envelope
                .breakpoints
                .iter()
                .map(|bp| BreakpointReport {
                    r: bp.r.to_string(),
                    lines: bp.lines.clone(),
                })
                .collect(),
            m: b.m,
        }
    }

    pub fn ore(&self) -> OreReport<'_> {
        OreReport {
            polynomial: &self.polynomial,
            additive: &self.additive,
        }
    }

    pub fn envelope(&self) -> EnvelopeReport<'_> {
        EnvelopeReport {
            polynomial: &self.polynomial,
            additive: &self.additive,
            lines: &self.lines,
            active: &self.active,
            breakpoints: &self.breakpoints,
        }
    }

    pub fn envelope_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "additive: {}", self.additive);
        for l in &self.lines {
            let _ = writeln!(s, "line {}: {}*r + {}", l.index, l.slope, l.intercept);
        }
        for b in &self.breakpoints {
            let lines: Vec<String> = b.lines.iter().map(u32::to_string).collect();
            let _ = writeln!(s, "breakpoint {} lines {}", b.r, lines.join(","));
        }
        s
    }

    pub fn bound_text(&self) -> String {
        let rs: Vec<&str> = self.breakpoints.iter().map(|b| b.r.as_str()).collect();
        format!(
            "m = {}\nadditive: {}\nbreakpoints: {}\n",
            self.m,
            self.additive,
            if rs.is_empty() {
                "none".to_string()
            } else {
                rs.join(" ")
            }
        )
    }
}

pub fn validation(formed: &Result<(), Violation>, ordered: &SaguaroReport) -> String {
    let mut s = String::new();
    match formed {
        Ok(()) => s.push_str("well-formed: yes\n"),
        Err(v) => {
            let _ = writeln!(s, "well-formed: no ({v})");
        }
    }
    let _ = writeln!(
        s,
        "well-ordered: {}",
        if ordered.well_ordered() { "yes" } else { "no" }
    );
    for e in &ordered.entries {
        let _ = writeln!(
            s,
            "state {}: saguaro {}, labeling {}",
            e.state,
            if e.is_saguaro { "yes" } else { "no" },
            if e.labeling_proper {
                "proper"
            } else {
                "improper"
            }
        );
        for d in &e.defects {
            let _ = writeln!(s, "  {d}");
        }
    }
    s
}
