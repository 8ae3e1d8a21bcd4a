//! Sums of roots of unity: shortest representations of cyclotomic integers
//! and minimal vanishing sums up to rotation.

mod enumerate;
mod minrep;

use crate::arith::lcm;
use crate::cyclonum::{CyclotomicInteger, RootOfUnity};
use crate::error::{Error, Result};

pub use enumerate::enumerate_minimal_vanishing;
pub use minrep::{min_rep, MinRepResult, RootSearch};

/// Largest vanishing sum handled by the classification table.
pub const MAX_CLASSIFIED_TERMS: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

/// A minimal vanishing sum, stored in rotation-normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VanishingClass {
    pub term_count: usize,
    pub canonical_terms: Vec<RootOfUnity>,
    pub label: String,
}

/// One minimal vanishing piece of a larger vanishing sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VanishingPart {
    /// Positions in the input list.
    pub indices: Vec<usize>,
    /// The terms with signs folded in.
    pub terms: Vec<RootOfUnity>,
    pub class: VanishingClass,
}

/// Lexicographically least sorted exponent list among the rotations of
/// `exps` (mod `m`) that send one of the terms to 1.
pub(crate) fn normal_form_exponents(exps: &[u64], m: u64) -> Vec<u64> {
    let mut best: Option<Vec<u64>> = None;
    for &t in exps {
        let mut rotated: Vec<u64> = exps.iter().map(|&e| (e + m - t) % m).collect();
        rotated.sort_unstable();
        if best.as_ref().is_none_or(|b| rotated < *b) {
            best = Some(rotated);
        }
    }
    best.unwrap_or_default()
}

/// Canonical representative of `terms` up to multiplying every term by a
/// common root of unity. Terms come back sorted by argument, the first one
/// being 1.
pub fn rotation_normal_form(terms: &[RootOfUnity]) -> Vec<RootOfUnity> {
    let m = terms.iter().fold(1, |acc, t| lcm(acc, t.order()));
    let exps: Vec<u64> = terms
        .iter()
        .map(|t| t.exponent_in(m).expect("m is a multiple of every order"))
        .collect();
    normal_form_exponents(&exps, m)
        .into_iter()
        .map(|e| RootOfUnity::new(m, e as i64).expect("positive").reduced())
        .collect()
}

fn r(n: u64, k: i64) -> RootOfUnity {
    RootOfUnity::new(n, k).expect("positive")
}

/// Rows of the table of minimal vanishing sums with at most seven terms.
/// There is no row with four terms.
pub fn table_rows() -> Vec<VanishingClass> {
    // zeta_5 = z30^6, zeta_6 = z30^5
    let z30 = |k: i64| r(30, k);
    let rows: Vec<(&str, Vec<RootOfUnity>)> = vec![
        ("2", vec![RootOfUnity::one(), RootOfUnity::minus_one()]),
        ("3", (0..3).map(|k| r(3, k)).collect()),
        ("5", (0..5).map(|k| r(5, k)).collect()),
        (
            "6",
            vec![r(6, 1), r(6, 5), r(5, 1), r(5, 2), r(5, 3), r(5, 4)],
        ),
        ("7a", (0..7).map(|k| r(7, k)).collect()),
        (
            // 1 and zeta_5 each replaced by (zeta_6 + zeta_6^5)
            "7b",
            vec![z30(5), z30(25), z30(11), z30(1), z30(12), z30(18), z30(24)],
        ),
        (
            // 1 and zeta_5^2 each replaced
            "7c",
            vec![z30(5), z30(25), z30(6), z30(17), z30(7), z30(18), z30(24)],
        ),
    ];
    rows.into_iter()
        .map(|(label, terms)| VanishingClass {
            term_count: terms.len(),
            canonical_terms: rotation_normal_form(&terms),
            label: label.to_string(),
        })
        .collect()
}

/// Table row matching `terms` up to rotation.
pub fn match_row(terms: &[RootOfUnity]) -> Option<VanishingClass> {
    let nf = rotation_normal_form(terms);
    table_rows()
        .into_iter()
        .find(|row| row.term_count == terms.len() && row.canonical_terms == nf)
}

fn sum_at(values: &[CyclotomicInteger], idx: &[usize], m: u64) -> CyclotomicInteger {
    idx.iter().fold(
        CyclotomicInteger::zero_at(m).expect("positive"),
        |acc, &i| acc.add(&values[i]).expect("common modulus"),
    )
}

/// Advance `comb` to the next `k`-combination of `0..n` in lex order.
pub(crate) fn next_combination(comb: &mut [usize], n: usize) -> bool {
    let k = comb.len();
    for i in (0..k).rev() {
        if comb[i] < n - k + i {
            comb[i] += 1;
            for j in i + 1..k {
                comb[j] = comb[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Split a vanishing signed sum of roots into minimal vanishing parts and
/// name each part by its table row.
///
/// Parts are peeled off greedily: the smallest vanishing subset first,
/// ties broken by the lexicographically least index set.
pub fn classify_vanishing(terms: &[(Sign, RootOfUnity)]) -> Result<Vec<VanishingPart>> {
    let roots: Vec<RootOfUnity> = terms
        .iter()
        .map(|(s, z)| match s {
            Sign::Plus => *z,
            Sign::Minus => z.neg(),
        })
        .collect();
    let m = roots.iter().fold(1, |acc, t| lcm(acc, t.order()));
    let values: Vec<CyclotomicInteger> = roots
        .iter()
        .map(|z| z.to_cyclotomic().embed(m).expect("order divides m"))
        .collect();
    let all: Vec<usize> = (0..roots.len()).collect();
    if !sum_at(&values, &all, m).is_zero() {
        return Err(Error::NotVanishing);
    }

    let mut remaining = all;
    let mut parts = Vec::new();
    while !remaining.is_empty() {
        let n = remaining.len();
        let mut found = None;
        'sizes: for size in 1..=n {
            let mut comb: Vec<usize> = (0..size).collect();
            loop {
                let idx: Vec<usize> = comb.iter().map(|&c| remaining[c]).collect();
                if sum_at(&values, &idx, m).is_zero() {
                    found = Some(idx);
                    break 'sizes;
                }
                if !next_combination(&mut comb, n) {
                    break;
                }
            }
        }
        let idx = found.expect("the remaining terms vanish");
        if idx.len() > MAX_CLASSIFIED_TERMS {
            return Err(Error::Unclassified { size: idx.len() });
        }
        let part_terms: Vec<RootOfUnity> = idx.iter().map(|&i| roots[i]).collect();
        let class = match_row(&part_terms).ok_or(Error::UnmatchedRow { size: idx.len() })?;
        remaining.retain(|i| !idx.contains(i));
        parts.push(VanishingPart {
            indices: idx,
            terms: part_terms,
            class,
        });
    }
    Ok(parts)
}
