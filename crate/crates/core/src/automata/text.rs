//! Line-based automaton files and DOT export.
//!
//! ```text
//! dfao p=2 states=2 q0=0 outputs=GF(2)
//! 0 0 -> 1
//! 0 1 -> 0
//! 0 . -> 1
//! 1 0 -> 1
//! 1 1 -> 1
//! 1 . -> 1
//! 0 : 1
//! 1 : 0
//! ```
//!
//! `outputs` is `bool`, `Z/n`, or a field descriptor `GF(q)` / `GF(q,modulus)`.
//! Blank lines and lines starting with `#` are ignored. Missing output lines
//! default to 0; every transition must be present.

use std::collections::BTreeMap;
use std::fmt::Write;

use super::dfao::{Dfao, OutputAlphabet, Symbol};
use crate::algebra::fq::FqField;
use crate::error::AutomatonError;

pub fn format_outputs(o: &OutputAlphabet) -> String {
    match o {
        OutputAlphabet::Boolean => "bool".into(),
        OutputAlphabet::Modular(n) => format!("Z/{n}"),
        OutputAlphabet::Field(f) => f.descriptor(),
    }
}

pub fn parse_outputs(s: &str) -> Result<OutputAlphabet, String> {
    let s = s.trim();
    if s == "bool" {
        return Ok(OutputAlphabet::Boolean);
    }
    if let Some(n) = s.strip_prefix("Z/") {
        let n: u32 = n.parse().map_err(|_| format!("bad modulus in `{s}`"))?;
        if n < 2 {
            return Err("modulus must be at least 2".into());
        }
        return Ok(OutputAlphabet::Modular(n));
    }
    FqField::parse_descriptor(s)
        .map(OutputAlphabet::Field)
        .map_err(|e| e.to_string())
}

pub fn format_value(o: &OutputAlphabet, v: u32) -> String {
    match o {
        OutputAlphabet::Field(f) => f.format_element(crate::algebra::fq::Fq(v)),
        _ => v.to_string(),
    }
}

fn parse_value(o: &OutputAlphabet, s: &str) -> Result<u32, String> {
    match o {
        OutputAlphabet::Field(f) => f.parse_element(s).map(|x| x.0).map_err(|e| e.to_string()),
        _ => {
            let v: u32 = s
                .trim()
                .parse()
                .map_err(|_| format!("bad output value `{}`", s.trim()))?;
            if v >= o.size() {
                return Err(format!("output value {v} out of range"));
            }
            Ok(v)
        }
    }
}

pub fn symbol_name(p: u32, s: Symbol) -> String {
    if s == p {
        ".".into()
    } else {
        s.to_string()
    }
}

pub fn format_dfao(m: &Dfao) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "dfao p={} states={} q0={} outputs={}",
        m.p(),
        m.num_states(),
        m.initial(),
        format_outputs(m.outputs())
    );
    for q in 0..m.num_states() as u32 {
        for (s, &t) in m.row(q).iter().enumerate() {
            let _ = writeln!(out, "{} {} -> {}", q, symbol_name(m.p(), s as Symbol), t);
        }
    }
    for q in 0..m.num_states() as u32 {
        let _ = writeln!(out, "{} : {}", q, format_value(m.outputs(), m.output(q)));
    }
    out
}

pub fn parse_dfao(text: &str) -> Result<Dfao, AutomatonError> {
    let err = |line: usize, message: String| AutomatonError::Parse { line, message };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hl, header) = lines.next().ok_or_else(|| err(1, "empty input".into()))?;
    let body = header
        .strip_prefix("dfao")
        .ok_or_else(|| err(hl, "expected `dfao` header".into()))?;
    let (keys, outputs) = match body.find("outputs=") {
        Some(i) => (&body[..i], &body[i + "outputs=".len()..]),
        None => return Err(err(hl, "missing outputs=".into())),
    };
    let outputs = parse_outputs(outputs).map_err(|m| err(hl, m))?;
    let mut fields: BTreeMap<&str, u32> = BTreeMap::new();
    for kv in keys.split_whitespace() {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| err(hl, format!("bad header field `{kv}`")))?;
        let v: u32 = v
            .parse()
            .map_err(|_| err(hl, format!("bad number in `{kv}`")))?;
        fields.insert(k, v);
    }
    let get = |k: &str| {
        fields
            .get(k)
            .copied()
            .ok_or_else(|| err(hl, format!("missing {k}=")))
    };
    let p = get("p")?;
    let n = get("states")? as usize;
    let q0 = get("q0")?;
    if !crate::algebra::fq::is_prime(p) {
        return Err(err(hl, format!("p={p} is not prime")));
    }
    if let OutputAlphabet::Field(f) = &outputs {
        if f.p() != p {
            return Err(err(hl, "output field characteristic differs from p".into()));
        }
    }
    let k = p as usize + 1;
    let mut delta: Vec<Vec<Option<u32>>> = vec![vec![None; k]; n];
    let mut tau = vec![0u32; n];
    for (ln, line) in lines {
        let state = |s: &str| -> Result<usize, AutomatonError> {
            let q: usize = s
                .trim()
                .parse()
                .map_err(|_| err(ln, format!("bad state `{}`", s.trim())))?;
            if q >= n {
                return Err(err(ln, format!("state {q} out of range")));
            }
            Ok(q)
        };
        if let Some((lhs, rhs)) = line.split_once("->") {
            let mut parts = lhs.split_whitespace();
            let (Some(q), Some(sym), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(err(ln, "expected `state symbol -> state`".into()));
            };
            let q = state(q)?;
            let s = if sym == "." {
                p
            } else {
                let d: u32 = sym
                    .parse()
                    .map_err(|_| err(ln, format!("bad symbol `{sym}`")))?;
                if d >= p {
                    return Err(err(ln, format!("digit {d} not below p={p}")));
                }
                d
            };
            let t = state(rhs)? as u32;
            if delta[q][s as usize].replace(t).is_some() {
                return Err(err(ln, format!("duplicate transition for state {q}")));
            }
        } else if let Some((lhs, rhs)) = line.split_once(':') {
            let q = state(lhs)?;
            tau[q] = parse_value(&outputs, rhs).map_err(|m| err(ln, m))?;
        } else {
            return Err(err(ln, format!("unrecognised line `{line}`")));
        }
    }
    let mut rows = Vec::with_capacity(n);
    for (q, row) in delta.into_iter().enumerate() {
        let row: Option<Vec<u32>> = row.into_iter().collect();
        rows.push(row.ok_or_else(|| err(0, format!("state {q} is missing transitions")))?);
    }
    Dfao::new(p, rows, q0, tau, outputs)
}

/// Graphviz rendering; parallel edges are merged into one labelled edge.
pub fn to_dot(m: &Dfao) -> String {
    let mut out = String::from("digraph dfao {\n  rankdir=LR;\n  start [shape=point];\n");
    for q in 0..m.num_states() as u32 {
        let shape = if m.is_accepting(q) {
            "doublecircle"
        } else {
            "circle"
        };
        let _ = writeln!(
            out,
            "  q{} [shape={}, label=\"{}/{}\"];",
            q,
            shape,
            q,
            format_value(m.outputs(), m.output(q))
        );
    }
    let _ = writeln!(out, "  start -> q{};", m.initial());
    for q in 0..m.num_states() as u32 {
        let mut by_target: BTreeMap<u32, Vec<String>> = BTreeMap::new();
        for (s, &t) in m.row(q).iter().enumerate() {
            by_target
                .entry(t)
                .or_default()
                .push(symbol_name(m.p(), s as Symbol));
        }
        for (t, labels) in by_target {
            let _ = writeln!(out, "  q{} -> q{} [label=\"{}\"];", q, t, labels.join(","));
        }
    }
    out.push_str("}\n");
    out
}
