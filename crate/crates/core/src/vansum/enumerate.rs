use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::arith::{factor, is_prime, pow_mod};
use crate::cyclonum::{CyclotomicInteger, RootOfUnity};
use crate::error::{Error, Result};

use super::{match_row, normal_form_exponents, VanishingClass, MAX_CLASSIFIED_TERMS};

/// Ring map Z[zeta_B] -> F_p sending zeta_B to an element of exact order B.
/// A vanishing sum maps to 0; the converse is only probable, so every hit
/// is confirmed exactly.
struct Fingerprint {
    p: u64,
    powers: Vec<u64>,
}

impl Fingerprint {
    fn new(b: u64) -> Self {
        let mut t = (1u64 << 61) / b;
        let p = loop {
            let p = t * b + 1;
            if is_prime(p) {
                break p;
            }
            t -= 1;
        };
        let primes: Vec<u64> = factor(b).into_iter().map(|(q, _)| q).collect();
        let w = (2..)
            .map(|x| pow_mod(x, (p - 1) / b, p))
            .find(|&w| primes.iter().all(|&q| pow_mod(w, b / q, p) != 1))
            .expect("F_p^x is cyclic of order divisible by b");
        let mut powers = Vec::with_capacity(b as usize);
        let mut cur = 1u64;
        for _ in 0..b {
            powers.push(cur);
            cur = ((cur as u128 * w as u128) % p as u128) as u64;
        }
        Self { p, powers }
    }

    fn add(&self, acc: u64, e: u64) -> u64 {
        let s = acc + self.powers[e as usize];
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
}

fn exact_is_zero(exps: &[u64], b: u64) -> bool {
    CyclotomicInteger::make(b, exps.iter().map(|&e| (e as i64, 1)))
        .expect("positive")
        .is_zero()
}

/// Does some nonempty sub-multiset of `exps` containing the last element vanish?
/// `sums` holds the fingerprints of the subsets of the earlier elements by mask.
fn closes_a_zero(fp: &Fingerprint, b: u64, exps: &[u64], sums: &[u64]) -> bool {
    let last = *exps.last().expect("nonempty");
    sums.iter().enumerate().any(|(mask, &s)| {
        fp.add(s, last) == 0 && {
            let mut sub: Vec<u64> = (0..exps.len() - 1)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| exps[i])
                .collect();
            sub.push(last);
            exact_is_zero(&sub, b)
        }
    })
}

/// All nondecreasing tuples extending `prefix` by `len` exponents (each at
/// least `start`) such that no nonempty sub-multiset of the whole vanishes.
fn zero_free_tuples(
    fp: &Fingerprint,
    b: u64,
    prefix: &mut Vec<u64>,
    sums: &mut Vec<u64>,
    start: u64,
    len: usize,
    out: &mut Vec<Vec<u64>>,
) {
    if len == 0 {
        out.push(prefix.clone());
        return;
    }
    for e in start..b {
        prefix.push(e);
        if !closes_a_zero(fp, b, prefix, sums) {
            let n = sums.len();
            for i in 0..n {
                let s = fp.add(sums[i], e);
                sums.push(s);
            }
            zero_free_tuples(fp, b, prefix, sums, e, len - 1, out);
            sums.truncate(n);
        }
        prefix.pop();
    }
}

fn subset_sums(fp: &Fingerprint, exps: &[u64]) -> Vec<u64> {
    let mut sums = vec![0u64];
    for &e in exps {
        let n = sums.len();
        for i in 0..n {
            let s = fp.add(sums[i], e);
            sums.push(s);
        }
    }
    sums
}

fn is_minimal_vanishing(fp: &Fingerprint, b: u64, exps: &[u64]) -> bool {
    let sums = subset_sums(fp, exps);
    let full = sums.len() - 1;
    if sums[full] != 0 || !exact_is_zero(exps, b) {
        return false;
    }
    !(1..full).any(|mask| {
        sums[mask] == 0 && {
            let sub: Vec<u64> = (0..exps.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| exps[i])
                .collect();
            exact_is_zero(&sub, b)
        }
    })
}

/// Every minimal vanishing sum of `k` roots of unity of order dividing
/// `order_bound`, up to rotation, in normal form and sorted.
///
/// One term is fixed to 1; the remaining `k - 1` sorted exponents are split
/// into a short left half and a right half whose fingerprints are matched
/// through a sorted table.
pub fn enumerate_minimal_vanishing(k: usize, order_bound: u64) -> Result<Vec<VanishingClass>> {
    if !(2..=MAX_CLASSIFIED_TERMS).contains(&k) {
        return Err(Error::TermCountOutOfRange(k));
    }
    if order_bound == 0 {
        return Err(Error::ZeroModulus);
    }
    let b = order_bound;
    let fp = Fingerprint::new(b);
    let left_len = (k - 1) / 2;
    let right_len = k - 1 - left_len;

    let mut rights = Vec::new();
    zero_free_tuples(
        &fp,
        b,
        &mut Vec::new(),
        &mut vec![0],
        0,
        right_len,
        &mut rights,
    );
    let mut table: Vec<(u64, Vec<u64>)> = rights
        .into_iter()
        .map(|t| (t.iter().fold(0, |acc, &e| fp.add(acc, e)), t))
        .collect();
    table.sort_unstable();

    let mut lefts = Vec::new();
    zero_free_tuples(
        &fp,
        b,
        &mut vec![0],
        &mut vec![0, fp.powers[0]],
        0,
        left_len,
        &mut lefts,
    );

    let found: BTreeSet<Vec<u64>> = lefts
        .par_iter()
        .flat_map_iter(|left| {
            let s = left.iter().fold(0, |acc, &e| fp.add(acc, e));
            let target = (fp.p - s) % fp.p;
            let lo = table.partition_point(|(f, _)| *f < target);
            let hi = table.partition_point(|(f, _)| *f <= target);
            let max_left = *left.last().expect("contains 0");
            table[lo..hi]
                .iter()
                .filter(move |(_, right)| right[0] >= max_left)
                .filter_map(|(_, right)| {
                    let mut all = left.clone();
                    all.extend_from_slice(right);
                    is_minimal_vanishing(&fp, b, &all).then(|| normal_form_exponents(&all, b))
                })
                .collect::<Vec<_>>()
        })
        .collect();

    found
        .into_iter()
        .map(|exps| {
            let terms: Vec<RootOfUnity> = exps
                .iter()
                .map(|&e| RootOfUnity::new(b, e as i64).expect("positive").reduced())
                .collect();
            let row = match_row(&terms).ok_or(Error::UnmatchedRow { size: k })?;
            Ok(VanishingClass {
                term_count: k,
                canonical_terms: terms,
                label: row.label,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Direct enumeration of all k-multisets containing 1, for small bounds.
    fn brute(k: usize, b: u64) -> BTreeSet<Vec<u64>> {
        fn rec(b: u64, k: usize, cur: &mut Vec<u64>, out: &mut BTreeSet<Vec<u64>>) {
            if cur.len() == k {
                let minimal = exact_is_zero(cur, b)
                    && (1..(1usize << k) - 1).all(|mask| {
                        let sub: Vec<u64> = (0..k)
                            .filter(|i| mask >> i & 1 == 1)
                            .map(|i| cur[i])
                            .collect();
                        !exact_is_zero(&sub, b)
                    });
                if minimal {
                    out.insert(normal_form_exponents(cur, b));
                }
                return;
            }
            let start = *cur.last().unwrap();
            for e in start..b {
                cur.push(e);
                rec(b, k, cur, out);
                cur.pop();
            }
        }
        let mut out = BTreeSet::new();
        rec(b, k, &mut vec![0], &mut out);
        out
    }

    #[test]
    fn agrees_with_brute_force_at_small_bounds() {
        for (k, b) in [(2, 6), (3, 6), (3, 12), (4, 12), (5, 30), (6, 30)] {
            let fast: BTreeSet<Vec<u64>> = enumerate_minimal_vanishing(k, b)
                .unwrap()
                .into_iter()
                .map(|c| {
                    let exps: Vec<u64> = c
                        .canonical_terms
                        .iter()
                        .map(|t| t.exponent_in(b).unwrap())
                        .collect();
                    exps
                })
                .collect();
            assert_eq!(fast, brute(k, b), "k={k} b={b}");
        }
    }

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_minimal_vanishing(2, 210).unwrap().len(), 1);
        assert_eq!(enumerate_minimal_vanishing(3, 210).unwrap().len(), 1);
        assert!(enumerate_minimal_vanishing(4, 210).unwrap().is_empty());
    }

    #[test]
    fn rejects_bad_term_counts() {
        assert_eq!(
            enumerate_minimal_vanishing(1, 210),
            Err(Error::TermCountOutOfRange(1))
        );
        assert_eq!(
            enumerate_minimal_vanishing(8, 210),
            Err(Error::TermCountOutOfRange(8))
        );
    }
}
