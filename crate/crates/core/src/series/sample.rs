//! Random well-formed automata, for testing and exploration.

use rand::Rng;

use crate::algebra::fq::FqField;
use crate::automata::{Dfao, OutputAlphabet};

/// A random DFAO that passes the well-formedness check by construction.
///
/// States `0..pre` read the integer part, the next `post` states read the
/// fractional part, and the last state is dead. Zero edges never enter an
/// accepting state, so about half the samples are also well ordered.
pub fn random_well_formed<R: Rng>(rng: &mut R, field: &FqField, pre: usize, post: usize) -> Dfao {
    let p = field.p();
    let k = p as usize + 1;
    let n = pre + post + 1;
    let dead = (n - 1) as u32;
    let mut delta = vec![vec![dead; k]; n];
    let pick = |rng: &mut R, lo: usize, hi: usize| -> u32 {
        // one slot in four goes to the dead state
        if rng.gen_ratio(1, 4) {
            dead
        } else {
            rng.gen_range(lo..hi) as u32
        }
    };
    for q in 0..pre {
        for s in 0..p as usize {
            delta[q][s] = pick(rng, 0, pre);
        }
        delta[q][p as usize] = pick(rng, pre, pre + post);
    }
    delta[0][0] = dead;
    for q in pre..pre + post {
        for s in 0..p as usize {
            delta[q][s] = pick(rng, pre, pre + post);
        }
    }
    let mut tau = vec![0u32; n];
    for t in tau.iter_mut().skip(pre).take(post) {
        *t = rng.gen_range(0..field.size());
    }
    for row in &delta {
        tau[row[0] as usize] = 0;
    }
    Dfao::new(p, delta, 0, tau, OutputAlphabet::Field(field.clone()))
        .expect("sampled automaton is well typed")
}
