//! Seeded property checks over random and tabulated cyclotomic integers.
//!
//! Each check returns a [`PropertyOutcome`] listing every violation it found,
//! so callers can print counterexamples rather than just a boolean.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arith::{lcm, prime_power, units};
use crate::chartab::{enumerate, reduced_values, Family, GroupKind};
use crate::cyclonum::{conductor, conductor_by_oracle, conductor_index, CyclotomicInteger};
use crate::error::Result;
use crate::vansum::{min_rep, RootSearch};
use crate::verify::{classify_case, conductors};

/// Written values longer than this are skipped by the containment check.
pub const CONTAINMENT_MAX_TERMS: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyOutcome {
    pub name: &'static str,
    pub checked: usize,
    pub violations: Vec<String>,
}

impl PropertyOutcome {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A random element of `Z[zeta_n]`. Half of the samples are orbit sums under
/// a random cyclic subgroup of Galois, so proper subfields show up often.
pub fn random_element(rng: &mut impl Rng, n: u64) -> CyclotomicInteger {
    let len = rng.gen_range(1..=5);
    let terms: Vec<(i64, i64)> = (0..len)
        .map(|_| (rng.gen_range(0..n as i64), rng.gen_range(-3..=3)))
        .collect();
    let x = CyclotomicInteger::make(n, terms).expect("positive modulus");
    if n <= 2 || rng.gen_bool(0.5) {
        return x;
    }
    let us = units(n);
    let s = us[rng.gen_range(0..us.len())];
    let mut acc = x.clone();
    let mut t = s;
    while t != 1 {
        acc = acc
            .add(&x.galois_apply(t as i64).expect("unit"))
            .expect("same modulus");
        t = t * s % n;
    }
    acc
}

fn sum_of_roots(roots: &[(u64, u64)]) -> CyclotomicInteger {
    let m = roots.iter().fold(1, |acc, &(n, _)| lcm(acc, n));
    CyclotomicInteger::make(m, roots.iter().map(|&(n, e)| ((e * (m / n)) as i64, 1)))
        .expect("positive modulus")
}

/// The Galois-fixedness conductor agrees with the smallest divisor accepted
/// by the subfield membership oracle.
pub fn conductor_dual_oracle(seed: u64, max_modulus: u64, per_modulus: usize) -> PropertyOutcome {
    let violations: Vec<String> = (1..=max_modulus)
        .into_par_iter()
        .flat_map_iter(|n| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ n.wrapping_mul(0x9e37_79b9_7f4a_7c15));
            (0..per_modulus)
                .filter_map(|_| {
                    let a = random_element(&mut rng, n);
                    let (c, d) = (conductor(&a), conductor_by_oracle(&a));
                    (c != d).then(|| format!("{a}: fixedness {c}, oracle {d}"))
                })
                .collect::<Vec<_>>()
        })
        .collect();
    PropertyOutcome {
        name: "conductor dual oracle",
        checked: max_modulus as usize * per_modulus,
        violations,
    }
}

/// Sums of two roots of order at most `max_order`, neither zero nor a single
/// root, have index at most 2 in their conductor field.
pub fn two_root_index(seed: u64, samples: usize, max_order: u64) -> PropertyOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = Vec::new();
    let mut checked = 0;
    while checked < samples {
        let roots: Vec<(u64, u64)> = (0..2)
            .map(|_| {
                let n = rng.gen_range(1..=max_order);
                (n, rng.gen_range(0..n))
            })
            .collect();
        let a = sum_of_roots(&roots);
        if a.is_zero() || a.as_root_of_unity().is_some() {
            continue;
        }
        checked += 1;
        let idx = conductor_index(&a);
        if idx > 2 {
            violations.push(format!("{a}: index {idx}"));
        }
    }
    PropertyOutcome {
        name: "two-root index",
        checked,
        violations,
    }
}

/// Sums of four roots in `Z[zeta_n]`, `n <= max_modulus`, that are not sums of
/// fewer roots have index at most 6 in their conductor field.
pub fn four_root_index(seed: u64, samples: usize, max_modulus: u64) -> PropertyOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut candidates = Vec::new();
    for _ in 0..samples * 100 {
        if candidates.len() == samples {
            break;
        }
        let n = rng.gen_range(1..=max_modulus);
        let roots: Vec<(u64, u64)> = (0..4).map(|_| (n, rng.gen_range(0..n))).collect();
        let a = sum_of_roots(&roots);
        if min_rep(&a, 3).is_none() {
            candidates.push(a);
        }
    }
    let violations = candidates
        .par_iter()
        .filter_map(|a| {
            let idx = conductor_index(a);
            (idx > 6).then(|| format!("{a}: index {idx}"))
        })
        .collect();
    PropertyOutcome {
        name: "four-root index",
        checked: candidates.len(),
        violations,
    }
}

fn groups_up_to(q_max: u64) -> Vec<(GroupKind, u64)> {
    let mut out = Vec::new();
    for q in 2..=q_max {
        if prime_power(q).is_some() {
            out.push((GroupKind::GL2, q));
            out.push((GroupKind::SL2, q));
        }
    }
    let mut q = 2;
    while q <= q_max {
        out.push((GroupKind::Suzuki, q));
        q *= 4;
    }
    out
}

/// Every character value with `q <= q_max` whose shortest representation has
/// as many terms as the written form uses only roots lying in the conductor
/// field of the value.
pub fn shortest_rep_containment(q_max: u64) -> Result<PropertyOutcome> {
    let mut chars = Vec::new();
    for (g, q) in groups_up_to(q_max) {
        chars.extend(enumerate(g, q)?);
    }
    let per_char: Vec<(usize, Vec<String>)> = chars
        .par_iter()
        .map(|ch| {
            let vs = reduced_values(ch)?;
            let mut checked = 0;
            let mut bad = Vec::new();
            let mut searches: HashMap<(u64, u64), RootSearch> = HashMap::new();
            for e in &vs.entries {
                let len = e.written_terms.len();
                if len > CONTAINMENT_MAX_TERMS {
                    continue;
                }
                let c = conductor(&e.value);
                let bound = lcm(2, c);
                let search = searches
                    .entry((bound, e.value.modulus()))
                    .or_insert_with(|| RootSearch::new(bound, e.value.modulus()));
                let Some(rep) = search.search(&e.value, len) else {
                    bad.push(format!(
                        "{ch}: no representation of {} in {len} roots",
                        e.value
                    ));
                    continue;
                };
                if rep.length != len {
                    continue;
                }
                checked += 1;
                for t in &rep.terms {
                    if !c.is_multiple_of(conductor(&t.to_cyclotomic())) {
                        bad.push(format!("{ch}: term {t} of {} outside Q(zeta_{c})", e.value));
                    }
                }
            }
            Ok((checked, bad))
        })
        .collect::<Result<_>>()?;
    Ok(PropertyOutcome {
        name: "shortest-representation containment",
        checked: per_char.iter().map(|(n, _)| n).sum(),
        violations: per_char.into_iter().flat_map(|(_, v)| v).collect(),
    })
}

/// The case analysis for every `X` and `Y` character of `GL2(q)`,
/// `q <= q_max`, predicts a witness attaining the conductor.
pub fn case_classifier_agreement(q_max: u64) -> Result<PropertyOutcome> {
    let mut chars = Vec::new();
    for q in (2..=q_max).filter(|&q| prime_power(q).is_some()) {
        chars.extend(
            enumerate(GroupKind::GL2, q)?
                .into_iter()
                .filter(|c| matches!(c.family, Family::X | Family::Y)),
        );
    }
    let violations: Vec<Option<String>> = chars
        .par_iter()
        .map(|ch| {
            let vs = reduced_values(ch)?;
            let c = conductors(&vs).into_iter().fold(1, lcm);
            Ok(match classify_case(&vs) {
                None => Some(format!("{ch}: no case")),
                Some(r) if !r.consistent_with(c) => Some(format!(
                    "{ch}: case {} predicts {:?}, conductor {c}",
                    r.label.name(),
                    r.predicted_conductor
                )),
                Some(_) => None,
            })
        })
        .collect::<Result<_>>()?;
    Ok(PropertyOutcome {
        name: "case classifier agreement",
        checked: chars.len(),
        violations: violations.into_iter().flatten().collect(),
    })
}

/// All checks at their default sizes.
pub fn run_all(seed: u64) -> Result<Vec<PropertyOutcome>> {
    Ok(vec![
        conductor_dual_oracle(seed, 60, 200),
        two_root_index(seed, 200, 60),
        four_root_index(seed, 200, 60),
        shortest_rep_containment(31)?,
        case_classifier_agreement(31)?,
    ])
}
