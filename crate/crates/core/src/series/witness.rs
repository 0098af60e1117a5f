//! Explicit evidence that a support is not well ordered.

use super::checks::RadixClasses;
use super::exponent::prefix_value;
use crate::automata::{Dfao, Symbol};

/// Accepted strings `u·c·s` and `u·s`, where `c` is a nonempty loop at the
/// state reached by `u`, with v(u·c·s) < v(u·s). Pumping `c` then gives an
/// infinite descending chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescendingPair {
    pub pumped: Vec<Symbol>,
    pub base: Vec<Symbol>,
}

/// Shortest pair with the longer string of length at most `max_len`, among
/// pairs built at a postradix state q from digits a < b out of q: c is a
/// returns to q through a, and s is b followed by a shortest accepting tail.
/// Every saguaro defect yields such a pair, since a defect is a cyclic edge
/// whose label is below that of a relevant sibling.
pub fn find_descending_pair(m: &Dfao, max_len: usize) -> Option<DescendingPair> {
    let p = m.p();
    let classes = RadixClasses::of(m);
    let relevant = m.relevant_states();
    let path = |from: u32, goal: &dyn Fn(u32) -> bool| m.rerooted(from).shortest_path_to(goal);
    let mut best: Option<DescendingPair> = None;
    for q in (0..m.num_states() as u32).filter(|&q| classes.is_relevant_post(q)) {
        let Some(u) = m.shortest_path_to(|r| r == q) else {
            continue;
        };
        for a in 0..p {
            let ta = m.next(q, a);
            if !relevant[ta as usize] {
                continue;
            }
            let Some(back) = path(ta, &|r| r == q) else {
                continue;
            };
            for b in a + 1..p {
                let tb = m.next(q, b);
                if !relevant[tb as usize] {
                    continue;
                }
                let Some(tail) = path(tb, &|r| m.is_accepting(r)) else {
                    continue;
                };
                let mut base = u.clone();
                base.push(b);
                base.extend_from_slice(&tail);
                let mut pumped = u.clone();
                pumped.push(a);
                pumped.extend_from_slice(&back);
                pumped.extend_from_slice(&base[u.len()..]);
                debug_assert!(prefix_value(&pumped, p) < prefix_value(&base, p));
                if pumped.len() <= max_len
                    && best.as_ref().is_none_or(|d| pumped.len() < d.pumped.len())
                {
                    best = Some(DescendingPair { pumped, base });
                }
            }
        }
    }
    best
}
