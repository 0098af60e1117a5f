//! Structural well-formedness and well-orderedness checks.

use std::fmt;

use crate::automata::{Dfao, OutputAlphabet, Symbol};

/// First structural reason an automaton accepts an invalid expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    LeadingZero,
    TrailingZero { state: u32 },
    MixedRadixState { state: u32 },
    AcceptsWithoutRadix { state: u32 },
    SecondRadix { state: u32 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::LeadingZero => write!(f, "accepting path begins with 0"),
            Violation::TrailingZero { state } => {
                write!(f, "accepting state {state} is entered by 0")
            }
            Violation::MixedRadixState { state } => {
                write!(
                    f,
                    "state {state} is reached both before and after the radix point"
                )
            }
            Violation::AcceptsWithoutRadix { state } => {
                write!(f, "preradix state {state} is accepting")
            }
            Violation::SecondRadix { state } => {
                write!(
                    f,
                    "postradix state {state} has a radix edge into a relevant state"
                )
            }
        }
    }
}

/// Radix-side classification of the states of a DFAO.
#[derive(Clone, Debug)]
pub struct RadixClasses {
    pub relevant: Vec<bool>,
    /// Reachable from q0 by digits only.
    pub pre: Vec<bool>,
    /// Reachable from q0 by a path containing a radix point.
    pub post: Vec<bool>,
}

impl RadixClasses {
    pub fn of(m: &Dfao) -> Self {
        let n = m.num_states();
        let p = m.p();
        let mut pre = vec![false; n];
        let mut stack = vec![m.initial()];
        pre[m.initial() as usize] = true;
        while let Some(q) = stack.pop() {
            for s in 0..p {
                let t = m.next(q, s);
                if !pre[t as usize] {
                    pre[t as usize] = true;
                    stack.push(t);
                }
            }
        }
        let mut post = vec![false; n];
        let mut stack: Vec<u32> = Vec::new();
        for q in (0..n as u32).filter(|&q| pre[q as usize]) {
            let t = m.next(q, p);
            if !post[t as usize] {
                post[t as usize] = true;
                stack.push(t);
            }
        }
        while let Some(q) = stack.pop() {
            for &t in m.row(q) {
                if !post[t as usize] {
                    post[t as usize] = true;
                    stack.push(t);
                }
            }
        }
        RadixClasses {
            relevant: m.relevant_states(),
            pre,
            post,
        }
    }

    pub fn is_relevant_post(&self, q: u32) -> bool {
        self.relevant[q as usize] && self.post[q as usize]
    }
}

/// `Ok` iff every accepted string is a valid base-p expansion.
pub fn check_well_formed(m: &Dfao) -> Result<(), Violation> {
    let m = m.canonical();
    let p = m.p();
    let c = RadixClasses::of(&m);
    if c.relevant[m.next(0, 0) as usize] {
        return Err(Violation::LeadingZero);
    }
    for q in 0..m.num_states() as u32 {
        let t = m.next(q, 0);
        if m.is_accepting(t) {
            return Err(Violation::TrailingZero { state: t });
        }
    }
    for q in 0..m.num_states() as u32 {
        if !c.relevant[q as usize] {
            continue;
        }
        if c.pre[q as usize] && c.post[q as usize] {
            return Err(Violation::MixedRadixState { state: q });
        }
        if c.pre[q as usize] && m.is_accepting(q) {
            return Err(Violation::AcceptsWithoutRadix { state: q });
        }
        if c.post[q as usize] && c.relevant[m.next(q, p) as usize] {
            return Err(Violation::SecondRadix { state: q });
        }
    }
    Ok(())
}

/// A labelled edge `from --label--> to`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub from: u32,
    pub label: Symbol,
    pub to: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SaguaroDefect {
    /// A strongly connected component that is not a single simple cycle.
    TangledComponent { states: Vec<u32> },
    /// A cyclic edge whose label does not exceed a sibling edge leading to a relevant state.
    ImproperLabel { cyclic: Edge, sibling: Edge },
}

impl fmt::Display for SaguaroDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SaguaroDefect::TangledComponent { states } => {
                write!(f, "states {states:?} lie on more than one minimal cycle")
            }
            SaguaroDefect::ImproperLabel { cyclic, sibling } => write!(
                f,
                "cyclic edge {} -{}-> {} does not exceed sibling edge {} -{}-> {}",
                cyclic.from, cyclic.label, cyclic.to, sibling.from, sibling.label, sibling.to
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaguaroEntry {
    pub state: u32,
    pub is_saguaro: bool,
    pub labeling_proper: bool,
    pub defects: Vec<SaguaroDefect>,
}

/// One entry per relevant postradix state, in state order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaguaroReport {
    pub entries: Vec<SaguaroEntry>,
}

impl SaguaroReport {
    pub fn well_ordered(&self) -> bool {
        self.entries
            .iter()
            .all(|e| e.is_saguaro && e.labeling_proper)
    }

    pub fn first_defect(&self) -> Option<&SaguaroDefect> {
        self.entries.iter().flat_map(|e| e.defects.iter()).next()
    }
}

/// Tarjan's algorithm on the subgraph induced by `keep`.
fn sccs(m: &Dfao, keep: &[bool]) -> Vec<u32> {
    let n = m.num_states();
    let mut comp = vec![u32::MAX; n];
    let mut index = vec![u32::MAX; n];
    let mut low = vec![0u32; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut counter = 0u32;
    let mut ncomp = 0u32;
    let p = m.p();
    for root in 0..n as u32 {
        if !keep[root as usize] || index[root as usize] != u32::MAX {
            continue;
        }
        // (state, next symbol to scan)
        let mut work: Vec<(u32, u32)> = vec![(root, 0)];
        index[root as usize] = counter;
        low[root as usize] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root as usize] = true;
        while let Some(&mut (v, ref mut s)) = work.last_mut() {
            if *s < p {
                let t = m.next(v, *s);
                *s += 1;
                if !keep[t as usize] {
                    continue;
                }
                if index[t as usize] == u32::MAX {
                    index[t as usize] = counter;
                    low[t as usize] = counter;
                    counter += 1;
                    stack.push(t);
                    on_stack[t as usize] = true;
                    work.push((t, 0));
                } else if on_stack[t as usize] {
                    low[v as usize] = low[v as usize].min(index[t as usize]);
                }
            } else {
                work.pop();
                if let Some(&(u, _)) = work.last() {
                    low[u as usize] = low[u as usize].min(low[v as usize]);
                }
                if low[v as usize] == index[v as usize] {
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w as usize] = false;
                        comp[w as usize] = ncomp;
                        if w == v {
                            break;
                        }
                    }
                    ncomp += 1;
                }
            }
        }
    }
    comp
}

/// Checks the relevant postradix graph: every strongly connected component is
/// trivial or a single cycle, and each cyclic edge carries the largest label
/// among the out-edges of its source that lead to relevant states.
/// States in the report are numbered as in `m.canonical()`.
pub fn check_well_ordered(m: &Dfao) -> SaguaroReport {
    let m = m.canonical();
    let p = m.p();
    let n = m.num_states();
    let c = RadixClasses::of(&m);
    let keep: Vec<bool> = (0..n as u32).map(|q| c.is_relevant_post(q)).collect();
    let comp = sccs(&m, &keep);
    let ncomp = comp
        .iter()
        .filter(|&&x| x != u32::MAX)
        .max()
        .map_or(0, |&x| x as usize + 1);
    let mut size = vec![0usize; ncomp];
    let mut internal = vec![0usize; ncomp];
    for q in (0..n as u32).filter(|&q| keep[q as usize]) {
        size[comp[q as usize] as usize] += 1;
        for s in 0..p {
            let t = m.next(q, s);
            if keep[t as usize] && comp[t as usize] == comp[q as usize] {
                internal[comp[q as usize] as usize] += 1;
            }
        }
    }
    // defects attached to the state where they occur
    let mut local: Vec<Vec<SaguaroDefect>> = vec![Vec::new(); n];
    let mut tangled_reported = vec![false; ncomp];
    for q in (0..n as u32).filter(|&q| keep[q as usize]) {
        let cq = comp[q as usize] as usize;
        if internal[cq] == 0 {
            continue;
        }
        if internal[cq] > size[cq] {
            if !tangled_reported[cq] {
                tangled_reported[cq] = true;
                let states = (0..n as u32)
                    .filter(|&r| keep[r as usize] && comp[r as usize] as usize == cq)
                    .collect();
                local[q as usize].push(SaguaroDefect::TangledComponent { states });
            }
            continue;
        }
        let cyclic = (0..p)
            .map(|s| Edge {
                from: q,
                label: s,
                to: m.next(q, s),
            })
            .find(|e| keep[e.to as usize] && comp[e.to as usize] as usize == cq)
            .unwrap();
        for s in (cyclic.label + 1)..p {
            let t = m.next(q, s);
            if c.relevant[t as usize] {
                local[q as usize].push(SaguaroDefect::ImproperLabel {
                    cyclic,
                    sibling: Edge {
                        from: q,
                        label: s,
                        to: t,
                    },
                });
                break;
            }
        }
    }
    let mut entries = Vec::new();
    for q in (0..n as u32).filter(|&q| keep[q as usize]) {
        let mut seen = vec![false; n];
        let mut stack = vec![q];
        seen[q as usize] = true;
        let mut defects = Vec::new();
        while let Some(v) = stack.pop() {
            defects.extend(local[v as usize].iter().cloned());
            for s in 0..p {
                let t = m.next(v, s);
                if keep[t as usize] && !seen[t as usize] {
                    seen[t as usize] = true;
                    stack.push(t);
                }
            }
        }
        let is_saguaro = !defects
            .iter()
            .any(|d| matches!(d, SaguaroDefect::TangledComponent { .. }));
        let labeling_proper = !defects
            .iter()
            .any(|d| matches!(d, SaguaroDefect::ImproperLabel { .. }));
        entries.push(SaguaroEntry {
            state: q,
            is_saguaro,
            labeling_proper,
            defects,
        });
    }
    SaguaroReport { entries }
}

/// Boolean DFAO accepting ".d", ".dd", ... with d = p - 1; support {1 - p^-n}.
pub fn increasing_loop(p: u32) -> Dfao {
    let k = p as usize + 1;
    let dead = 2u32;
    let mut row0 = vec![dead; k];
    row0[p as usize] = 1;
    let mut row1 = vec![dead; k];
    row1[p as usize - 1] = 3;
    let mut row3 = vec![dead; k];
    row3[p as usize - 1] = 3;
    Dfao::new(
        p,
        vec![row0, row1, vec![dead; k], row3],
        0,
        vec![0, 0, 0, 1],
        OutputAlphabet::Boolean,
    )
    .unwrap()
}

/// Boolean DFAO accepting ".0^n 1" for n ≥ 0; support {p^-n}, not well-ordered.
pub fn decreasing_loop(p: u32) -> Dfao {
    let k = p as usize + 1;
    let dead = 2u32;
    let mut row0 = vec![dead; k];
    row0[p as usize] = 1;
    let mut row1 = vec![dead; k];
    row1[0] = 1;
    row1[1] = 3;
    Dfao::new(
        p,
        vec![row0, row1, vec![dead; k], vec![dead; k]],
        0,
        vec![0, 0, 0, 1],
        OutputAlphabet::Boolean,
    )
    .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Accepts exactly "1." over Σ_2.
    fn one_point() -> Dfao {
        Dfao::new(
            2,
            vec![vec![3, 1, 3], vec![3, 3, 2], vec![3, 3, 3], vec![3, 3, 3]],
            0,
            vec![0, 0, 1, 0],
            OutputAlphabet::Boolean,
        )
        .unwrap()
    }

    #[test]
    fn well_formed_examples() {
        assert_eq!(check_well_formed(&one_point()), Ok(()));
        // accepts "01."
        let lead = Dfao::new(
            2,
            vec![
                vec![1, 4, 4],
                vec![4, 2, 4],
                vec![4, 4, 3],
                vec![4, 4, 4],
                vec![4, 4, 4],
            ],
            0,
            vec![0, 0, 0, 1, 0],
            OutputAlphabet::Boolean,
        )
        .unwrap();
        assert_eq!(check_well_formed(&lead), Err(Violation::LeadingZero));
        assert_eq!(
            Violation::LeadingZero.to_string(),
            "accepting path begins with 0"
        );
        // accepts "1.1.1"
        let two = Dfao::new(
            2,
            vec![
                vec![6, 1, 6],
                vec![6, 6, 2],
                vec![6, 3, 6],
                vec![6, 6, 4],
                vec![6, 5, 6],
                vec![6, 6, 6],
                vec![6, 6, 6],
            ],
            0,
            vec![0, 0, 0, 0, 0, 1, 0],
            OutputAlphabet::Boolean,
        )
        .unwrap();
        assert!(matches!(
            check_well_formed(&two),
            Err(Violation::SecondRadix { .. })
        ));
    }

    #[test]
    fn loops() {
        for p in [2, 3, 5] {
            let inc = increasing_loop(p);
            assert_eq!(check_well_formed(&inc), Ok(()));
            assert!(check_well_ordered(&inc).well_ordered());
            let dec = decreasing_loop(p);
            assert_eq!(check_well_formed(&dec), Ok(()));
            let report = check_well_ordered(&dec);
            assert!(!report.well_ordered());
            match report.first_defect() {
                Some(SaguaroDefect::ImproperLabel { cyclic, sibling }) => {
                    assert_eq!(cyclic.label, 0);
                    assert_eq!(sibling.label, 1);
                    assert_eq!(cyclic.from, cyclic.to);
                }
                other => panic!("unexpected defect {other:?}"),
            }
        }
        assert!(check_well_ordered(&one_point()).well_ordered());
    }

    #[test]
    fn two_cycles_through_a_state_are_rejected() {
        // ".(0|1)*1"
        let m = Dfao::new(
            2,
            vec![vec![3, 3, 1], vec![1, 2, 3], vec![1, 2, 3], vec![3, 3, 3]],
            0,
            vec![0, 0, 1, 0],
            OutputAlphabet::Boolean,
        )
        .unwrap();
        assert_eq!(check_well_formed(&m), Ok(()));
        let r = check_well_ordered(&m);
        assert!(r.entries.iter().all(|e| !e.is_saguaro));
    }
}
