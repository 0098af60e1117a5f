use std::collections::BTreeSet;

use hahn_automata::algebra::bivariate::{parse_xpoly, XPoly};
use hahn_automata::algebra::fq::{is_prime, prime_power, FqField};
use hahn_automata::decide::CoefficientField;

use crate::Failure;

fn base_field(p: u32) -> Result<FqField, Failure> {
    if !is_prime(p) {
        return Err(Failure::input(format!("p = {p} is not prime")));
    }
    FqField::prime(p).map_err(Failure::input)
}

pub fn parse_poly(s: &str, p: u32) -> Result<XPoly, Failure> {
    let k = base_field(p)?;
    parse_xpoly(s, &k).map_err(|e| Failure::input(format!("in `{s}`: {e}")))
}

pub fn prime_field(p: u32) -> Result<CoefficientField, Failure> {
    Ok(CoefficientField::Finite(base_field(p)?))
}

/// `F9`, `GF(9)`, `GF(9,z^2+1)`, `perfect`, `closure`, `degrees:1,2`.
pub fn parse_coefficient_field(s: &str, p: u32) -> Result<CoefficientField, Failure> {
    base_field(p)?;
    let s = s.trim();
    let field = match s {
        "perfect" => return Ok(CoefficientField::PerfectClosureOfPrime),
        "closure" => return Ok(CoefficientField::AlgebraicClosure),
        _ => {
            if let Some(ds) = s.strip_prefix("degrees:") {
                let mut set = BTreeSet::new();
                for d in ds.split(',') {
                    let d: u32 = d
                        .trim()
                        .parse()
                        .map_err(|_| Failure::input(format!("bad degree `{d}` in `{s}`")))?;
                    if d == 0 {
                        return Err(Failure::input("field degrees must be positive"));
                    }
                    set.insert(d);
                }
                return Ok(CoefficientField::DegreeSet(set));
            }
            let descriptor = match s.strip_prefix('F') {
                Some(q) => format!("GF({q})"),
                None => s.to_string(),
            };
            FqField::parse_descriptor(&descriptor).map_err(Failure::input)?
        }
    };
    if field.p() != p {
        return Err(Failure::input(format!(
            "field {} does not have characteristic {p}",
            field.descriptor()
        )));
    }
    Ok(CoefficientField::Finite(field))
}

/// Comma-separated prime powers; the empty string and `{}` denote the empty set.
pub fn parse_value_set(s: &str) -> Result<BTreeSet<u64>, Failure> {
    let body = s.trim();
    let body = body
        .strip_prefix('{')
        .and_then(|b| b.strip_suffix('}'))
        .unwrap_or(body);
    let mut out = BTreeSet::new();
    for item in body.split(',').map(str::trim).filter(|x| !x.is_empty()) {
        let q: u64 = item
            .parse()
            .map_err(|_| Failure::input(format!("bad prime power `{item}`")))?;
        if prime_power(q).is_none() {
            return Err(Failure::input(format!("{q} is not a prime power")));
        }
        out.insert(q);
    }
    Ok(out)
}
