use std::collections::HashMap;

use super::dfao::{Dfao, OutputAlphabet, Symbol};
use crate::error::AutomatonError;

/// Nondeterministic automaton over Σ_p. Transition lists may repeat a target;
/// repeated edges are distinct paths for [`count_paths_mod`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nfa {
    p: u32,
    trans: Vec<Vec<Vec<u32>>>,
    initial: Vec<u32>,
    accepting: Vec<bool>,
}

impl Nfa {
    pub fn new(p: u32, states: usize, initial: Vec<u32>, accepting: Vec<bool>) -> Self {
        assert_eq!(accepting.len(), states);
        Nfa {
            p,
            trans: vec![vec![Vec::new(); p as usize + 1]; states],
            initial,
            accepting,
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn num_states(&self) -> usize {
        self.trans.len()
    }

    pub fn add_edge(&mut self, from: u32, s: Symbol, to: u32) {
        self.trans[from as usize][s as usize].push(to);
    }

    pub fn targets(&self, q: u32, s: Symbol) -> &[u32] {
        &self.trans[q as usize][s as usize]
    }

    pub fn initial(&self) -> &[u32] {
        &self.initial
    }

    pub fn is_accepting(&self, q: u32) -> bool {
        self.accepting[q as usize]
    }

    /// Reads a DFAO's accept indicator as an NFA with the same states.
    pub fn from_dfa(m: &Dfao) -> Self {
        let mut n = Nfa::new(
            m.p(),
            m.num_states(),
            vec![m.initial()],
            (0..m.num_states() as u32)
                .map(|q| m.is_accepting(q))
                .collect(),
        );
        for q in 0..m.num_states() as u32 {
            for (s, &t) in m.row(q).iter().enumerate() {
                n.add_edge(q, s as Symbol, t);
            }
        }
        n
    }

    /// Edge-reversed automaton: starts at the accepting states and accepts at the initial ones.
    pub fn reversed(&self) -> Self {
        let initial = (0..self.num_states() as u32)
            .filter(|&q| self.accepting[q as usize])
            .collect();
        let mut accepting = vec![false; self.num_states()];
        for &q in &self.initial {
            accepting[q as usize] = true;
        }
        let mut r = Nfa::new(self.p, self.num_states(), initial, accepting);
        for (q, row) in self.trans.iter().enumerate() {
            for (s, ts) in row.iter().enumerate() {
                for &t in ts {
                    r.add_edge(t, s as Symbol, q as u32);
                }
            }
        }
        r
    }

    pub fn accepts(&self, w: &[Symbol]) -> bool {
        let mut cur = vec![false; self.num_states()];
        for &q in &self.initial {
            cur[q as usize] = true;
        }
        for &s in w {
            let mut next = vec![false; self.num_states()];
            for (q, &on) in cur.iter().enumerate() {
                if on {
                    for &t in &self.trans[q][s as usize] {
                        next[t as usize] = true;
                    }
                }
            }
            cur = next;
        }
        cur.iter().zip(&self.accepting).any(|(&a, &b)| a && b)
    }
}

/// Subset construction over reachable subsets; output 1 marks acceptance.
pub fn determinize(nfa: &Nfa, cap: usize) -> Result<Dfao, AutomatonError> {
    let k = nfa.p as usize + 1;
    let mut start: Vec<u32> = nfa.initial.clone();
    start.sort_unstable();
    start.dedup();
    let mut index: HashMap<Vec<u32>, u32> = HashMap::new();
    let mut subsets = vec![start.clone()];
    index.insert(start, 0);
    let mut delta = Vec::new();
    let mut mark = vec![false; nfa.num_states()];
    let mut i = 0;
    while i < subsets.len() {
        for s in 0..k {
            let mut next = Vec::new();
            for &q in &subsets[i] {
                for &t in &nfa.trans[q as usize][s] {
                    if !mark[t as usize] {
                        mark[t as usize] = true;
                        next.push(t);
                    }
                }
            }
            for &t in &next {
                mark[t as usize] = false;
            }
            next.sort_unstable();
            let id = match index.get(&next) {
                Some(&id) => id,
                None => {
                    if subsets.len() >= cap {
                        return Err(AutomatonError::StateCap {
                            cap,
                            construction: "determinization",
                        });
                    }
                    let id = subsets.len() as u32;
                    index.insert(next.clone(), id);
                    subsets.push(next);
                    id
                }
            };
            delta.push(id);
        }
        i += 1;
    }
    let tau = subsets
        .iter()
        .map(|set| set.iter().any(|&q| nfa.accepting[q as usize]) as u32)
        .collect();
    Ok(Dfao::from_raw(
        nfa.p,
        delta,
        0,
        tau,
        OutputAlphabet::Boolean,
    ))
}

/// DFAO computing the number of accepting paths mod `n`.
pub fn count_paths_mod(nfa: &Nfa, n: u32, cap: usize) -> Result<Dfao, AutomatonError> {
    assert!(n >= 2, "modulus must be at least 2");
    let k = nfa.p as usize + 1;
    let size = nfa.num_states();
    let mut start = vec![0u32; size];
    for &q in &nfa.initial {
        start[q as usize] = (start[q as usize] + 1) % n;
    }
    let mut index: HashMap<Vec<u32>, u32> = HashMap::new();
    let mut vectors = vec![start.clone()];
    index.insert(start, 0);
    let mut delta = Vec::new();
    let mut i = 0;
    while i < vectors.len() {
        for s in 0..k {
            let mut next = vec![0u32; size];
            for (q, &c) in vectors[i].iter().enumerate() {
                if c != 0 {
                    for &t in &nfa.trans[q][s] {
                        next[t as usize] = (next[t as usize] + c) % n;
                    }
                }
            }
            let id = match index.get(&next) {
                Some(&id) => id,
                None => {
                    if vectors.len() >= cap {
                        return Err(AutomatonError::StateCap {
                            cap,
                            construction: "path counting",
                        });
                    }
                    let id = vectors.len() as u32;
                    index.insert(next.clone(), id);
                    vectors.push(next);
                    id
                }
            };
            delta.push(id);
        }
        i += 1;
    }
    let tau = vectors
        .iter()
        .map(|v| {
            v.iter()
                .zip(&nfa.accepting)
                .filter(|(_, &a)| a)
                .fold(0, |acc, (&c, _)| (acc + c) % n)
        })
        .collect();
    Ok(Dfao::from_raw(
        nfa.p,
        delta,
        0,
        tau,
        OutputAlphabet::Modular(n),
    ))
}

/// DFAO with f(w) = f_M(rev(w)): reverse the indicator of each nonzero
/// output value and recombine.
pub fn reverse(m: &Dfao, cap: usize) -> Result<Dfao, AutomatonError> {
    let values = m.reachable_outputs();
    let mut acc = Dfao::constant(m.p(), 0, m.outputs().clone());
    for v in values {
        let r = determinize(&Nfa::from_dfa(&m.indicator(v)).reversed(), cap)?.minimize();
        acc = acc.product(
            &r,
            |a, b| if b != 0 { v } else { a },
            m.outputs().clone(),
            cap,
        )?;
    }
    Ok(acc.minimize())
}
