use std::collections::HashMap;

use crate::arith::lcm;
use crate::cyclonum::{conductor, CyclotomicInteger, RootOfUnity};

/// A shortest representation of a cyclotomic integer as a sum of roots of
/// unity, among roots whose order divides `exhausted_bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinRepResult {
    pub length: usize,
    pub terms: Vec<RootOfUnity>,
    pub exhausted_bound: u64,
}

/// Searches for sums of `zeta_L^j` equal to a target, for a fixed `L`.
///
/// Holds the canonical forms of all `L` roots lifted to a common modulus
/// together with a reverse index, so repeated searches with the same bound
/// share the setup. Terms are found in lexicographic order of their
/// exponents, so the first hit at a given length is the lex-least one.
#[derive(Debug, Clone)]
pub struct RootSearch {
    order_bound: u64,
    modulus: u64,
    roots: Vec<CyclotomicInteger>,
    index: HashMap<CyclotomicInteger, u64>,
}

impl RootSearch {
    /// Roots of order dividing `order_bound`, able to represent elements
    /// of modulus dividing `element_modulus`.
    pub fn new(order_bound: u64, element_modulus: u64) -> Self {
        let m = lcm(order_bound, element_modulus);
        let roots: Vec<CyclotomicInteger> = (0..order_bound)
            .map(|j| CyclotomicInteger::root(m, (j * (m / order_bound)) as i64).expect("positive"))
            .collect();
        let modulus = roots[0].modulus();
        let index = roots
            .iter()
            .enumerate()
            .map(|(j, r)| (r.clone(), j as u64))
            .collect();
        Self {
            order_bound,
            modulus,
            roots,
            index,
        }
    }

    pub fn order_bound(&self) -> u64 {
        self.order_bound
    }

    fn lift(&self, a: &CyclotomicInteger) -> Option<CyclotomicInteger> {
        a.embed(self.modulus).ok()
    }

    fn result(&self, exps: &[u64]) -> MinRepResult {
        MinRepResult {
            length: exps.len(),
            terms: exps
                .iter()
                .map(|&j| RootOfUnity::new(self.order_bound, j as i64).expect("positive"))
                .collect(),
            exhausted_bound: self.order_bound,
        }
    }

    /// Shortest representation with at most `k_max` terms, if any.
    pub fn search(&self, a: &CyclotomicInteger, k_max: usize) -> Option<MinRepResult> {
        let a = self.lift(a)?;
        (0..=k_max).find_map(|k| self.search_exact(&a, k).map(|e| self.result(&e)))
    }

    /// Lex-least nondecreasing exponent tuple of length `k` summing to `a`.
    fn search_exact(&self, a: &CyclotomicInteger, k: usize) -> Option<Vec<u64>> {
        match k {
            0 => a.is_zero().then(Vec::new),
            1 => self.index.get(a).map(|&j| vec![j]),
            4 => self.meet_in_the_middle(a),
            _ => {
                let mut prefix = Vec::with_capacity(k);
                self.nested(a, k, 0, &mut prefix)
            }
        }
    }

    /// Plain nested loops over the first `k - 1` terms, index lookup for the last.
    fn nested(
        &self,
        rest: &CyclotomicInteger,
        k: usize,
        start: u64,
        prefix: &mut Vec<u64>,
    ) -> Option<Vec<u64>> {
        if k == 1 {
            return match self.index.get(rest) {
                Some(&j) if j >= start => {
                    let mut out = prefix.clone();
                    out.push(j);
                    Some(out)
                }
                _ => None,
            };
        }
        for j in start..self.order_bound {
            let next = rest.sub(&self.roots[j as usize]).expect("same modulus");
            prefix.push(j);
            let found = self.nested(&next, k - 1, j, prefix);
            prefix.pop();
            if found.is_some() {
                return found;
            }
        }
        None
    }

    /// Four terms: hash all pair sums, then match pairs against pairs.
    fn meet_in_the_middle(&self, a: &CyclotomicInteger) -> Option<Vec<u64>> {
        let n = self.order_bound;
        let mut pairs: HashMap<CyclotomicInteger, Vec<(u64, u64)>> = HashMap::new();
        for j1 in 0..n {
            for j2 in j1..n {
                let s = self.roots[j1 as usize]
                    .add(&self.roots[j2 as usize])
                    .expect("same modulus");
                pairs.entry(s).or_default().push((j1, j2));
            }
        }
        for j1 in 0..n {
            for j2 in j1..n {
                let s = self.roots[j1 as usize]
                    .add(&self.roots[j2 as usize])
                    .expect("same modulus");
                let rest = a.sub(&s).expect("same modulus");
                if let Some(list) = pairs.get(&rest) {
                    // lists are filled in lex order, so the first admissible
                    // entry is the least completion
                    if let Some(&(j3, j4)) = list.iter().find(|(j3, _)| *j3 >= j2) {
                        return Some(vec![j1, j2, j3, j4]);
                    }
                }
            }
        }
        None
    }
}

/// Shortest representation of `a` as a sum of at most `k_max` roots of unity
/// of order dividing `lcm(2, conductor(a))`.
///
/// For a representation of minimal length the terms lie in
/// `Q(zeta_{c(a)})`, hence have order dividing that bound, so a `None`
/// here means no representation with `<= k_max` terms exists at all.
pub fn min_rep(a: &CyclotomicInteger, k_max: usize) -> Option<MinRepResult> {
    let bound = lcm(2, conductor(a));
    RootSearch::new(bound, a.modulus()).search(a, k_max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn z(n: u64, k: i64) -> CyclotomicInteger {
        CyclotomicInteger::root(n, k).unwrap()
    }

    #[test]
    fn zero_and_integers() {
        let r = min_rep(&CyclotomicInteger::zero(), 4).unwrap();
        assert_eq!(r.length, 0);
        let two = min_rep(&CyclotomicInteger::from_integer(2), 4).unwrap();
        assert_eq!(two.length, 2);
        assert_eq!(two.terms, vec![RootOfUnity::one(), RootOfUnity::one()]);
        let minus_three = min_rep(&CyclotomicInteger::from_integer(-3), 4).unwrap();
        assert_eq!(minus_three.length, 3);
        assert!(minus_three
            .terms
            .iter()
            .all(|t| *t == RootOfUnity::minus_one()));
    }

    /// Oracle: enumerate every multiset of <= 2 roots of order dividing 10.
    #[test]
    fn golden_ratio_needs_two_terms() {
        let a = z(5, 1).add(&z(5, 4)).unwrap();
        let brute_len = (0..=2usize)
            .find(|&k| match k {
                0 => a.is_zero(),
                1 => (0..10).any(|j| z(10, j).same_value(&a)),
                _ => (0..10).any(|i| {
                    (i..10).any(|j| {
                        z(10, i)
                            .embed(10)
                            .unwrap()
                            .add(&z(10, j))
                            .unwrap()
                            .same_value(&a)
                    })
                }),
            })
            .unwrap();
        let r = min_rep(&a, 4).unwrap();
        assert_eq!(r.length, brute_len);
        assert_eq!(r.length, 2);
        assert_eq!(r.exhausted_bound, 10);
    }

    #[test]
    fn terms_sum_to_target() {
        let a = CyclotomicInteger::make(13, [(1, 1), (8, 1), (12, 1), (5, 1)]).unwrap();
        let r = min_rep(&a, 4).unwrap();
        assert_eq!(r.length, 4);
        let total = r
            .terms
            .iter()
            .map(|t| t.to_cyclotomic().embed(26).unwrap())
            .reduce(|x, y| x.add(&y).unwrap())
            .unwrap();
        assert!(total.same_value(&a));
    }

    #[test]
    fn collapsing_sums_are_found_short() {
        // 1 + zeta_3 = -zeta_3^2
        let a = z(3, 0).add(&z(3, 1)).unwrap();
        assert_eq!(min_rep(&a, 4).unwrap().length, 1);
        // 3 copies of i minus 3 copies of i is zero
        let b = z(4, 1).scalar_mul(BigInt::from(3));
        assert_eq!(min_rep(&b, 2), None);
        assert_eq!(min_rep(&b, 3).unwrap().length, 3);
    }

    #[test]
    fn four_term_search_agrees_with_nested_loops() {
        let a = CyclotomicInteger::make(7, [(0, 1), (1, 1), (3, 2)]).unwrap();
        let search = RootSearch::new(14, 7);
        let lifted = a.embed(search.modulus).unwrap();
        let mitm = search.meet_in_the_middle(&lifted);
        let mut prefix = Vec::new();
        let nested = search.nested(&lifted, 4, 0, &mut prefix);
        assert_eq!(mitm, nested);
        assert!(mitm.is_some());
    }
}
