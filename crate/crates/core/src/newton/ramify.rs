//! Primes ramifying along the support of a series.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use super::envelope::prime_to;
use crate::series::Exponent;

/// Prime factorization of the part of `n` coprime to `p`.
fn factor_prime_to(n: &BigInt, p: u32) -> BTreeMap<u64, u32> {
    let mut n = prime_to(n, p);
    let mut out = BTreeMap::new();
    let mut q = BigInt::from(2);
    while &q * &q <= n {
        while n.is_multiple_of(&q) {
            n /= &q;
            *out.entry(q.to_u64().expect("small factor")).or_insert(0) += 1;
        }
        q += 1;
    }
    if !n.is_one() {
        *out.entry(n.to_u64().unwrap_or(u64::MAX)).or_insert(0) += 1;
    }
    out
}

/// For exponents in increasing order, the primes q ≠ p ramifying at each:
/// those whose multiplicity in the denominator exceeds its multiplicity in
/// every earlier denominator. Exponents where nothing ramifies are omitted.
pub fn ramification_points(exponents: &[Exponent], p: u32) -> Vec<(Exponent, Vec<u64>)> {
    let mut seen: BTreeMap<u64, u32> = BTreeMap::new();
    let mut out = Vec::new();
    for e in exponents {
        let mut primes = Vec::new();
        for (q, k) in factor_prime_to(e.denom(), p) {
            let prev = seen.entry(q).or_insert(0);
            if k > *prev {
                primes.push(q);
                *prev = k;
            }
        }
        if !primes.is_empty() {
            out.push((e.clone(), primes));
        }
    }
    out
}
