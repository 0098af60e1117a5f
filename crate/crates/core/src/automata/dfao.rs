use std::collections::{HashMap, VecDeque};

use crate::algebra::fq::FqField;
use crate::error::AutomatonError;

/// Default bound on states built by any lazy construction.
pub const DEFAULT_STATE_CAP: usize = 1_000_000;

/// Digit symbols are `0..p`; the radix point is the symbol `p`.
pub type Symbol = u32;

pub fn radix(p: u32) -> Symbol {
    p
}

/// The output set Δ. Outputs are stored as `u32` with 0 the distinguished zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OutputAlphabet {
    Boolean,
    Modular(u32),
    /// Elements of F_q in the packed encoding of [`FqField`].
    Field(FqField),
}

impl OutputAlphabet {
    pub fn size(&self) -> u32 {
        match self {
            OutputAlphabet::Boolean => 2,
            OutputAlphabet::Modular(n) => *n,
            OutputAlphabet::Field(f) => f.size(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfao {
    p: u32,
    n: usize,
    /// Row-major, `p + 1` entries per state.
    delta: Vec<u32>,
    q0: u32,
    tau: Vec<u32>,
    outputs: OutputAlphabet,
}

impl Dfao {
    /// Validates totality and ranges.
    pub fn new(
        p: u32,
        delta: Vec<Vec<u32>>,
        q0: u32,
        tau: Vec<u32>,
        outputs: OutputAlphabet,
    ) -> Result<Self, AutomatonError> {
        let n = delta.len();
        let k = (p + 1) as usize;
        if n == 0 {
            return Err(AutomatonError::Malformed("no states".into()));
        }
        if tau.len() != n {
            return Err(AutomatonError::Malformed(format!(
                "{} outputs for {} states",
                tau.len(),
                n
            )));
        }
        if q0 as usize >= n {
            return Err(AutomatonError::Malformed(format!(
                "initial state {q0} out of range"
            )));
        }
        for (q, row) in delta.iter().enumerate() {
            if row.len() != k {
                return Err(AutomatonError::Malformed(format!(
                    "state {q} has {} transitions, expected {k}",
                    row.len()
                )));
            }
            if let Some(t) = row.iter().find(|&&t| t as usize >= n) {
                return Err(AutomatonError::Malformed(format!(
                    "transition from {q} to missing state {t}"
                )));
            }
        }
        if let Some(v) = tau.iter().find(|&&v| v >= outputs.size()) {
            return Err(AutomatonError::Malformed(format!(
                "output {v} outside the output alphabet"
            )));
        }
        Ok(Dfao {
            p,
            n,
            delta: delta.concat(),
            q0,
            tau,
            outputs,
        })
    }

    pub(crate) fn from_raw(
        p: u32,
        delta: Vec<u32>,
        q0: u32,
        tau: Vec<u32>,
        outputs: OutputAlphabet,
    ) -> Self {
        let n = tau.len();
        debug_assert_eq!(delta.len(), n * (p as usize + 1));
        Dfao {
            p,
            n,
            delta,
            q0,
            tau,
            outputs,
        }
    }

    /// One state with output `c` everywhere.
    pub fn constant(p: u32, c: u32, outputs: OutputAlphabet) -> Self {
        Dfao::from_raw(p, vec![0; p as usize + 1], 0, vec![c], outputs)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn num_states(&self) -> usize {
        self.n
    }

    pub fn initial(&self) -> u32 {
        self.q0
    }

    pub fn outputs(&self) -> &OutputAlphabet {
        &self.outputs
    }

    pub fn arity(&self) -> usize {
        self.p as usize + 1
    }

    #[inline]
    pub fn next(&self, q: u32, s: Symbol) -> u32 {
        self.delta[q as usize * self.arity() + s as usize]
    }

    pub fn output(&self, q: u32) -> u32 {
        self.tau[q as usize]
    }

    pub fn tau(&self) -> &[u32] {
        &self.tau
    }

    pub fn row(&self, q: u32) -> &[u32] {
        let k = self.arity();
        &self.delta[q as usize * k..(q as usize + 1) * k]
    }

    pub fn with_outputs(&self, tau: Vec<u32>, outputs: OutputAlphabet) -> Self {
        Dfao {
            tau,
            outputs,
            ..self.clone()
        }
    }

    pub fn map_outputs(&self, f: impl Fn(u32) -> u32, outputs: OutputAlphabet) -> Self {
        self.with_outputs(self.tau.iter().map(|&v| f(v)).collect(), outputs)
    }

    /// Same transitions, started elsewhere.
    pub fn rerooted(&self, q: u32) -> Self {
        Dfao {
            q0: q,
            ..self.clone()
        }
    }

    pub fn delta_star(&self, q: u32, w: &[Symbol]) -> Result<u32, AutomatonError> {
        let mut q = q;
        for &s in w {
            if s > self.p {
                return Err(AutomatonError::ForeignSymbol {
                    symbol: s,
                    p: self.p,
                });
            }
            q = self.next(q, s);
        }
        Ok(q)
    }

    /// f_M(w).
    pub fn run(&self, w: &[Symbol]) -> Result<u32, AutomatonError> {
        Ok(self.output(self.delta_star(self.q0, w)?))
    }

    pub fn is_accepting(&self, q: u32) -> bool {
        self.tau[q as usize] != 0
    }

    /// States in breadth-first order from `q0`, scanning symbols in order.
    pub fn reachable_order(&self) -> Vec<u32> {
        let mut seen = vec![false; self.n];
        let mut order = vec![self.q0];
        seen[self.q0 as usize] = true;
        let mut i = 0;
        while i < order.len() {
            let q = order[i];
            for &t in self.row(q) {
                if !seen[t as usize] {
                    seen[t as usize] = true;
                    order.push(t);
                }
            }
            i += 1;
        }
        order
    }

    /// Restricts to reachable states and renumbers them breadth-first.
    pub fn canonical(&self) -> Self {
        let order = self.reachable_order();
        let mut index = vec![u32::MAX; self.n];
        for (i, &q) in order.iter().enumerate() {
            index[q as usize] = i as u32;
        }
        let mut delta = Vec::with_capacity(order.len() * self.arity());
        let mut tau = Vec::with_capacity(order.len());
        for &q in &order {
            delta.extend(self.row(q).iter().map(|&t| index[t as usize]));
            tau.push(self.tau[q as usize]);
        }
        Dfao::from_raw(self.p, delta, 0, tau, self.outputs.clone())
    }

    pub fn prune_unreachable(&self) -> Self {
        self.canonical()
    }

    /// States from which a state with nonzero output is reachable.
    pub fn relevant_states(&self) -> Vec<bool> {
        let mut preds: Vec<Vec<u32>> = vec![Vec::new(); self.n];
        for q in 0..self.n as u32 {
            for &t in self.row(q) {
                preds[t as usize].push(q);
            }
        }
        let mut rel: Vec<bool> = self.tau.iter().map(|&v| v != 0).collect();
        let mut stack: Vec<u32> = (0..self.n as u32).filter(|&q| rel[q as usize]).collect();
        while let Some(q) = stack.pop() {
            for &r in &preds[q as usize] {
                if !rel[r as usize] {
                    rel[r as usize] = true;
                    stack.push(r);
                }
            }
        }
        rel
    }

    /// Pointwise combination over the reachable part of the product.
    pub fn product(
        &self,
        other: &Dfao,
        combine: impl Fn(u32, u32) -> u32,
        outputs: OutputAlphabet,
        cap: usize,
    ) -> Result<Dfao, AutomatonError> {
        if self.p != other.p {
            return Err(AutomatonError::AlphabetMismatch(self.p, other.p));
        }
        let k = self.arity();
        let mut index: HashMap<(u32, u32), u32> = HashMap::new();
        let mut states = vec![(self.q0, other.q0)];
        index.insert((self.q0, other.q0), 0);
        let mut delta = Vec::new();
        let mut i = 0;
        while i < states.len() {
            let (a, b) = states[i];
            for s in 0..k as u32 {
                let pair = (self.next(a, s), other.next(b, s));
                let id = match index.get(&pair) {
                    Some(&id) => id,
                    None => {
                        if states.len() >= cap {
                            return Err(AutomatonError::StateCap {
                                cap,
                                construction: "product",
                            });
                        }
                        let id = states.len() as u32;
                        index.insert(pair, id);
                        states.push(pair);
                        id
                    }
                };
                delta.push(id);
            }
            i += 1;
        }
        let tau = states
            .iter()
            .map(|&(a, b)| combine(self.output(a), other.output(b)))
            .collect();
        Ok(Dfao::from_raw(self.p, delta, 0, tau, outputs))
    }

    /// True iff no reachable state has nonzero output.
    pub fn accepts_nothing(&self) -> bool {
        self.reachable_order()
            .iter()
            .all(|&q| !self.is_accepting(q))
    }

    /// f-equivalence: the two automata agree on every string.
    pub fn equivalent(&self, other: &Dfao) -> Result<bool, AutomatonError> {
        let diff = self.product(
            other,
            |a, b| (a != b) as u32,
            OutputAlphabet::Boolean,
            DEFAULT_STATE_CAP,
        )?;
        Ok(diff.accepts_nothing())
    }

    /// Merges states with equal behaviour (Moore refinement), then renumbers.
    pub fn minimize(&self) -> Self {
        let m = self.canonical();
        let k = m.arity();
        let mut class: Vec<u32> = {
            let mut ids: HashMap<u32, u32> = HashMap::new();
            m.tau
                .iter()
                .map(|&v| {
                    let next = ids.len() as u32;
                    *ids.entry(v).or_insert(next)
                })
                .collect()
        };
        let mut count = class.iter().max().map_or(0, |&c| c + 1);
        loop {
            let mut ids: HashMap<Vec<u32>, u32> = HashMap::new();
            let mut sig = Vec::with_capacity(k + 1);
            let new_class: Vec<u32> = (0..m.n as u32)
                .map(|q| {
                    sig.clear();
                    sig.push(class[q as usize]);
                    sig.extend(m.row(q).iter().map(|&t| class[t as usize]));
                    let next = ids.len() as u32;
                    *ids.entry(sig.clone()).or_insert(next)
                })
                .collect();
            let new_count = ids.len() as u32;
            class = new_class;
            if new_count == count {
                break;
            }
            count = new_count;
        }
        let c = count as usize;
        let mut delta = vec![0u32; c * k];
        let mut tau = vec![0u32; c];
        for q in 0..m.n as u32 {
            let cq = class[q as usize] as usize;
            tau[cq] = m.tau[q as usize];
            for (s, &t) in m.row(q).iter().enumerate() {
                delta[cq * k + s] = class[t as usize];
            }
        }
        Dfao::from_raw(m.p, delta, class[m.q0 as usize], tau, m.outputs.clone()).canonical()
    }

    /// Indicator DFA of the states with output `v`.
    pub fn indicator(&self, v: u32) -> Dfao {
        self.map_outputs(|x| (x == v) as u32, OutputAlphabet::Boolean)
    }

    /// Distinct nonzero outputs of reachable states, ascending.
    pub fn reachable_outputs(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self
            .reachable_order()
            .iter()
            .map(|&q| self.output(q))
            .filter(|&x| x != 0)
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Breadth-first search for a shortest string reaching a state satisfying `goal`.
    pub fn shortest_path_to(&self, goal: impl Fn(u32) -> bool) -> Option<Vec<Symbol>> {
        let mut parent: Vec<Option<(u32, Symbol)>> = vec![None; self.n];
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([self.q0]);
        seen[self.q0 as usize] = true;
        while let Some(q) = queue.pop_front() {
            if goal(q) {
                let mut w = Vec::new();
                let mut cur = q;
                while let Some((prev, s)) = parent[cur as usize] {
                    w.push(s);
                    cur = prev;
                }
                w.reverse();
                return Some(w);
            }
            for (s, &t) in self.row(q).iter().enumerate() {
                if !seen[t as usize] {
                    seen[t as usize] = true;
                    parent[t as usize] = Some((q, s as Symbol));
                    queue.push_back(t);
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Counts 1s mod 2 over Σ_2; radix and 0 loop.
    pub(crate) fn parity() -> Dfao {
        Dfao::new(
            2,
            vec![vec![0, 1, 0], vec![1, 0, 1]],
            0,
            vec![0, 1],
            OutputAlphabet::Modular(2),
        )
        .unwrap()
    }

    #[test]
    fn run_examples() {
        let m = parity();
        assert_eq!(m.run(&[]).unwrap(), 0);
        assert_eq!(m.run(&[1, 0, 1]).unwrap(), 0);
        assert_eq!(m.run(&[1, 0, 0]).unwrap(), 1);
        assert!(matches!(
            m.run(&[3]),
            Err(AutomatonError::ForeignSymbol { .. })
        ));
        let c = Dfao::constant(3, 2, OutputAlphabet::Modular(3));
        assert_eq!(c.run(&[0, 1, 2, 3]).unwrap(), 2);
    }

    #[test]
    fn prune_drops_unreachable() {
        let m = Dfao::new(
            2,
            vec![
                vec![1, 2, 0],
                vec![1, 1, 1],
                vec![0, 2, 2],
                vec![3, 4, 3],
                vec![4, 4, 4],
            ],
            0,
            vec![0, 1, 0, 1, 1],
            OutputAlphabet::Boolean,
        )
        .unwrap();
        let pr = m.prune_unreachable();
        assert_eq!(pr.num_states(), 3);
        assert!(pr.equivalent(&m).unwrap());
        assert_eq!(pr.prune_unreachable(), pr);
    }

    #[test]
    fn relevant_chain() {
        // 0 -> 1 -> 2 (accepting, absorbing through 3), 3 dead
        let m = Dfao::new(
            2,
            vec![vec![1, 3, 3], vec![2, 3, 3], vec![3, 3, 3], vec![3, 3, 3]],
            0,
            vec![0, 0, 1, 0],
            OutputAlphabet::Boolean,
        )
        .unwrap();
        assert_eq!(m.relevant_states(), vec![true, true, true, false]);
        assert!(Dfao::constant(2, 0, OutputAlphabet::Boolean)
            .relevant_states()
            .iter()
            .all(|&r| !r));
    }

    #[test]
    fn parity_product_is_zero() {
        let m = parity();
        let sum = m
            .product(
                &m,
                |a, b| (a + b) % 2,
                OutputAlphabet::Modular(2),
                DEFAULT_STATE_CAP,
            )
            .unwrap();
        assert!(sum.accepts_nothing());
        let first = m
            .product(
                &parity(),
                |a, _| a,
                OutputAlphabet::Modular(2),
                DEFAULT_STATE_CAP,
            )
            .unwrap();
        assert!(first.equivalent(&m).unwrap());
        let zero = Dfao::constant(2, 0, OutputAlphabet::Modular(2));
        let plus0 = m
            .product(
                &zero,
                |a, b| (a + b) % 2,
                OutputAlphabet::Modular(2),
                DEFAULT_STATE_CAP,
            )
            .unwrap();
        assert!(plus0.equivalent(&m).unwrap());
    }

    #[test]
    fn minimize_merges_duplicates() {
        let m = Dfao::new(
            2,
            vec![vec![1, 2, 0], vec![1, 2, 0], vec![2, 2, 2]],
            0,
            vec![0, 0, 1],
            OutputAlphabet::Boolean,
        )
        .unwrap();
        let min = m.minimize();
        assert_eq!(min.num_states(), 2);
        assert!(min.equivalent(&m).unwrap());
    }

    #[test]
    fn constructor_rejects_bad_input() {
        assert!(Dfao::new(2, vec![vec![0, 0]], 0, vec![0], OutputAlphabet::Boolean).is_err());
        assert!(Dfao::new(2, vec![vec![0, 0, 1]], 0, vec![0], OutputAlphabet::Boolean).is_err());
        assert!(Dfao::new(2, vec![vec![0, 0, 0]], 0, vec![2], OutputAlphabet::Boolean).is_err());
    }
}
