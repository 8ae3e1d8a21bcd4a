use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{factor, gcd, inv_mod, lcm, rem};
use crate::error::{Error, Result};

use super::RootOfUnity;

/// One prime-power factor `p^e` of a cyclotomic modulus.
#[derive(Debug, Clone)]
struct LocalFactor {
    p: u64,
    /// `p^(e-1)`
    p_low: u64,
    pe: u64,
    /// `phi(p^e)`, the local basis size
    phi: u64,
    /// `N / p^e`
    cofactor: u64,
    /// `(N / p^e)^-1 mod p^e`
    cofactor_inv: u64,
}

/// The canonical Z-basis of `Z[zeta_N]`.
///
/// For `N = prod p^e` the basis is the tensor product of the local power
/// bases `{zeta_{p^e}^j : 0 <= j < phi(p^e)}`. An exponent `k` of `zeta_N`
/// splits into local exponents `j_p` with `k = sum j_p * N/p^e (mod N)`;
/// `k` is a basis exponent iff every `j_p < phi(p^e)`.
#[derive(Debug, Clone)]
pub(crate) struct Basis {
    modulus: u64,
    factors: Vec<LocalFactor>,
}

impl Basis {
    pub(crate) fn new(modulus: u64) -> Self {
        debug_assert!(modulus > 0 && modulus % 4 != 2);
        let factors = factor(modulus)
            .into_iter()
            .map(|(p, e)| {
                let pe = p.pow(e);
                let p_low = pe / p;
                let cofactor = modulus / pe;
                LocalFactor {
                    p,
                    p_low,
                    pe,
                    phi: p_low * (p - 1),
                    cofactor,
                    cofactor_inv: inv_mod(cofactor % pe, pe).expect("coprime"),
                }
            })
            .collect();
        Self { modulus, factors }
    }

    pub(crate) fn modulus(&self) -> u64 {
        self.modulus
    }

    fn local(&self, k: u64, f: &LocalFactor) -> u64 {
        ((k % f.pe) as u128 * f.cofactor_inv as u128 % f.pe as u128) as u64
    }

    pub(crate) fn is_basis_exponent(&self, k: u64) -> bool {
        self.factors.iter().all(|f| self.local(k, f) < f.phi)
    }

    /// Writes `zeta_N^k` in the canonical basis, calling `emit(exponent, sign)`
    /// once per basis element in its support.
    pub(crate) fn expand(&self, k: u64, emit: &mut impl FnMut(u64, bool)) {
        let k = k % self.modulus;
        if self.is_basis_exponent(k) {
            emit(k, false);
            return;
        }
        self.expand_from(0, 0, false, k, emit);
    }

    fn expand_from(
        &self,
        idx: usize,
        acc: u64,
        negative: bool,
        k: u64,
        emit: &mut impl FnMut(u64, bool),
    ) {
        let Some(f) = self.factors.get(idx) else {
            emit(acc % self.modulus, negative);
            return;
        };
        let j = self.local(k, f);
        if j < f.phi {
            self.expand_from(idx + 1, acc + j * f.cofactor, negative, k, emit);
        } else {
            // zeta_p^(p-1) = -(1 + zeta_p + ... + zeta_p^(p-2)), lifted to p^e
            let r = j - f.phi;
            for i in 0..f.p - 1 {
                let jj = r + i * f.p_low;
                self.expand_from(idx + 1, acc + jj * f.cofactor, !negative, k, emit);
            }
        }
    }

    /// Canonical sorted term list of `sum c * zeta_N^k`.
    pub(crate) fn normalize<I>(&self, terms: I) -> Vec<(u64, BigInt)>
    where
        I: IntoIterator<Item = (u64, BigInt)>,
    {
        let mut raw: Vec<(u64, BigInt)> = Vec::new();
        for (k, c) in terms {
            if c.is_zero() {
                continue;
            }
            self.expand(k, &mut |e, neg| {
                raw.push((e, if neg { -c.clone() } else { c.clone() }));
            });
        }
        merge_sorted(raw)
    }
}

fn merge_sorted(mut raw: Vec<(u64, BigInt)>) -> Vec<(u64, BigInt)> {
    raw.sort_unstable_by_key(|(e, _)| *e);
    let mut out: Vec<(u64, BigInt)> = Vec::with_capacity(raw.len());
    for (e, c) in raw {
        match out.last_mut() {
            Some((le, lc)) if *le == e => *lc += c,
            _ => out.push((e, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

/// Maps `(N, k)` with `N = 2 mod 4` to `(N/2, k', sign)` with
/// `zeta_N^k = sign * zeta_{N/2}^k'`.
fn halve(modulus: u64, k: u64) -> (u64, u64, bool) {
    let half = modulus / 2;
    if k.is_multiple_of(2) {
        (half, k / 2, false)
    } else {
        (half, ((k + half) / 2) % half, true)
    }
}

/// An element of `Z[zeta_N]` in canonical basis form.
///
/// The modulus is part of the representation: two elements compare equal
/// only if they live at the same modulus and have the same coefficients.
/// Use [`CyclotomicInteger::same_value`] to compare across moduli. Moduli
/// `N = 2 mod 4` are replaced by `N/2` on construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicInteger {
    modulus: u64,
    terms: Vec<(u64, BigInt)>,
}

impl CyclotomicInteger {
    /// `sum c_i * zeta_N^{e_i}`, normalized.
    pub fn make<I, C>(modulus: u64, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        if modulus == 0 {
            return Err(Error::ZeroModulus);
        }
        let mut canon = modulus;
        let mut reduced: Vec<(u64, BigInt)> = terms
            .into_iter()
            .map(|(e, c)| (rem(e, modulus), c.into()))
            .collect();
        if modulus % 4 == 2 {
            canon = modulus / 2;
            for (k, c) in reduced.iter_mut() {
                let (_, k2, neg) = halve(modulus, *k);
                *k = k2;
                if neg {
                    *c = -std::mem::take(c);
                }
            }
        }
        let basis = Basis::new(canon);
        Ok(Self::from_basis(&basis, reduced))
    }

    pub(crate) fn from_basis<I>(basis: &Basis, terms: I) -> Self
    where
        I: IntoIterator<Item = (u64, BigInt)>,
    {
        Self {
            modulus: basis.modulus(),
            terms: basis.normalize(terms),
        }
    }

    /// `zeta_N^k`.
    pub fn root(modulus: u64, k: i64) -> Result<Self> {
        Self::make(modulus, [(k, 1)])
    }

    pub fn zero() -> Self {
        Self {
            modulus: 1,
            terms: Vec::new(),
        }
    }

    pub fn zero_at(modulus: u64) -> Result<Self> {
        Self::make(modulus, std::iter::empty::<(i64, i64)>())
    }

    pub fn from_integer(c: impl Into<BigInt>) -> Self {
        Self::make(1, [(0, c.into())]).expect("modulus 1")
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Canonical `(basis exponent, coefficient)` pairs, sorted by exponent.
    pub fn terms(&self) -> &[(u64, BigInt)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The integer value, when the element is rational.
    pub fn as_integer(&self) -> Option<BigInt> {
        match self.terms.as_slice() {
            [] => Some(BigInt::zero()),
            [(0, c)] => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.as_integer().is_some()
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus,
                right: other.modulus,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, true)
    }

    /// Merges the two sorted term lists.
    fn combine(&self, other: &Self, negate_other: bool) -> Result<Self> {
        self.check_same(other)?;
        let rhs = |c: &BigInt| if negate_other { -c } else { c.clone() };
        let (a, b) = (&self.terms, &other.terms);
        let mut terms = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                terms.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                terms.push((b[j].0, rhs(&b[j].1)));
                j += 1;
            } else {
                let c = &a[i].1 + rhs(&b[j].1);
                if !c.is_zero() {
                    terms.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        Ok(Self {
            modulus: self.modulus,
            terms,
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let n = self.modulus;
        let basis = Basis::new(n);
        let products = self.terms.iter().flat_map(|(e1, c1)| {
            other
                .terms
                .iter()
                .map(move |(e2, c2)| ((e1 + e2) % n, c1 * c2))
        });
        Ok(Self::from_basis(&basis, products))
    }

    pub fn negate(&self) -> Self {
        Self {
            modulus: self.modulus,
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn scalar_mul(&self, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self {
                modulus: self.modulus,
                terms: Vec::new(),
            };
        }
        Self {
            modulus: self.modulus,
            terms: self.terms.iter().map(|(e, x)| (*e, x * &c)).collect(),
        }
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::make(self.modulus, [(0, 1)]).expect("positive modulus");
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base).expect("same modulus");
            }
            base = base.mul(&base).expect("same modulus");
            k >>= 1;
        }
        acc
    }

    /// The same value in `Z[zeta_M]`; `zeta_N^k` maps to `zeta_M^{kM/N}`.
    pub fn embed(&self, target: u64) -> Result<Self> {
        if target == 0 {
            return Err(Error::ZeroModulus);
        }
        let canon = if target % 4 == 2 { target / 2 } else { target };
        if canon % self.modulus != 0 {
            return Err(Error::NotDivisible {
                from: self.modulus,
                to: target,
            });
        }
        if canon == self.modulus {
            return Ok(self.clone());
        }
        let scale = canon / self.modulus;
        let basis = Basis::new(canon);
        Ok(Self::from_basis(
            &basis,
            self.terms.iter().map(|(e, c)| (e * scale, c.clone())),
        ))
    }

    /// Lifts both operands to the lcm of their moduli.
    pub fn lift_pair(a: &Self, b: &Self) -> (Self, Self) {
        let m = lcm(a.modulus, b.modulus);
        (
            a.embed(m).expect("lcm is a multiple"),
            b.embed(m).expect("lcm is a multiple"),
        )
    }

    /// Value equality across moduli.
    pub fn same_value(&self, other: &Self) -> bool {
        if self.modulus == other.modulus {
            return self == other;
        }
        let (a, b) = Self::lift_pair(self, other);
        a == b
    }

    /// Applies `sigma_s : zeta_N -> zeta_N^s`.
    pub fn galois_apply(&self, s: i64) -> Result<Self> {
        let n = self.modulus;
        let s_red = rem(s, n);
        if gcd(s_red, n) != 1 {
            return Err(Error::NotAUnit { s, modulus: n });
        }
        Ok(self.galois_apply_with(&Basis::new(n), s_red))
    }

    pub(crate) fn galois_apply_with(&self, basis: &Basis, s: u64) -> Self {
        let n = self.modulus;
        if s % n == 1 % n {
            return self.clone();
        }
        let mapped = self
            .terms
            .iter()
            .map(|(e, c)| (((*e as u128 * s as u128) % n as u128) as u64, c.clone()));
        Self::from_basis(basis, mapped)
    }

    pub(crate) fn is_fixed_by(&self, basis: &Basis, s: u64) -> bool {
        if self.is_rational() {
            return true;
        }
        self.galois_apply_with(basis, s) == *self
    }

    /// Complex conjugate, `sigma_{-1}`.
    pub fn conjugate(&self) -> Self {
        self.galois_apply(-1).expect("-1 is always a unit")
    }

    /// `Some((sign, zeta))` when the element is `sign * zeta` for a power
    /// `zeta` of `zeta_N`. The sign is `-1` only when `-zeta` is not itself a
    /// power of `zeta_N` (odd `N`).
    pub fn as_root_of_unity(&self) -> Option<(i8, RootOfUnity)> {
        let first = self.terms.first()?;
        let unit = &first.1;
        if !(unit.is_one() || (-unit).is_one()) {
            return None;
        }
        if self.terms.iter().any(|(_, c)| c != unit) {
            return None;
        }
        let negative = unit.is_negative();
        let n = self.modulus;
        let basis = Basis::new(n);
        let size = self.terms.len();
        for k in 0..n {
            let mut support = Vec::with_capacity(size);
            let mut sign_flip = None;
            let mut consistent = true;
            basis.expand(k, &mut |e, neg| {
                match sign_flip {
                    None => sign_flip = Some(neg),
                    Some(s) if s != neg => consistent = false,
                    _ => {}
                }
                support.push(e);
            });
            if !consistent || support.len() != size {
                continue;
            }
            support.sort_unstable();
            if support.iter().zip(&self.terms).any(|(e, (f, _))| e != f) {
                continue;
            }
            // self = unit * (expansion sign) * zeta^k
            let is_minus = negative ^ sign_flip.unwrap_or(false);
            let root = RootOfUnity::new(n, k as i64).expect("positive");
            if !is_minus {
                return Some((1, root));
            }
            if n.is_multiple_of(2) {
                return Some((1, root.neg()));
            }
            return Some((-1, root));
        }
        None
    }

    pub(crate) fn basis(&self) -> Basis {
        Basis::new(self.modulus)
    }
}

impl fmt::Display for CyclotomicInteger {
    /// Writes the element in the expression grammar, e.g. `2 - z(5,1) + 3*z(5,3)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if *e == 0 {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "z({},{})", self.modulus, e)?;
            } else {
                write!(f, "{abs}*z({},{})", self.modulus, e)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64, k: i64) -> CyclotomicInteger {
        CyclotomicInteger::root(n, k).unwrap()
    }

    fn int(c: i64) -> CyclotomicInteger {
        CyclotomicInteger::from_integer(c)
    }

    #[test]
    fn sum_of_cube_roots_vanishes() {
        let a = CyclotomicInteger::make(3, [(0, 1), (1, 1), (2, 1)]).unwrap();
        assert!(a.is_zero());
    }

    #[test]
    fn i_is_a_single_basis_term() {
        let i = CyclotomicInteger::make(4, [(1, 1)]).unwrap();
        assert!(!i.is_zero());
        assert_eq!(i.terms().len(), 1);
    }

    #[test]
    fn term_order_does_not_matter() {
        let a = CyclotomicInteger::make(5, [(1, 1), (4, 1)]).unwrap();
        let b = CyclotomicInteger::make(5, [(4, 1), (1, 1)]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn zero_modulus_rejected() {
        assert_eq!(
            CyclotomicInteger::make(0, [(0, 1)]),
            Err(Error::ZeroModulus)
        );
    }

    #[test]
    fn two_mod_four_modulus_is_halved() {
        let a = z(6, 1);
        assert_eq!(a.modulus(), 3);
        // zeta_6 = -zeta_3^2
        assert_eq!(a, z(3, 2).negate());
        assert_eq!(z(2, 1), int(-1));
    }

    #[test]
    fn expansion_of_large_exponents() {
        // zeta_9^6 = -(1 + zeta_9^3)
        let a = z(9, 6);
        assert_eq!(a, CyclotomicInteger::make(9, [(0, -1), (3, -1)]).unwrap());
        // zeta_15^k for all k: sum over k is zero
        let all = CyclotomicInteger::make(15, (0..15).map(|k| (k, 1))).unwrap();
        assert!(all.is_zero());
    }

    #[test]
    fn ring_examples() {
        // (z5 + z5^4)^2 = z5^2 + z5^3 + 2, expanded by hand
        let a = z(5, 1).add(&z(5, 4)).unwrap();
        let sq = a.mul(&a).unwrap();
        let expected = CyclotomicInteger::make(5, [(2, 1), (3, 1), (0, 2)]).unwrap();
        assert_eq!(sq, expected);
        assert_eq!(z(8, 1).mul(&z(8, 7)).unwrap(), int(1).embed(8).unwrap());
        assert!(z(7, 1).scalar_mul(0).is_zero());
    }

    #[test]
    fn modulus_mismatch_rejected() {
        assert!(matches!(
            z(5, 1).add(&z(7, 1)),
            Err(Error::ModulusMismatch { .. })
        ));
    }

    #[test]
    fn embed_examples() {
        assert_eq!(z(3, 1).embed(6).unwrap(), z(6, 2));
        assert_eq!(
            int(2).embed(12).unwrap().as_integer(),
            Some(BigInt::from(2))
        );
        assert!(matches!(z(5, 1).embed(12), Err(Error::NotDivisible { .. })));
    }

    #[test]
    fn galois_examples() {
        assert_eq!(z(8, 1).galois_apply(3).unwrap(), z(8, 3));
        let a = z(5, 1).add(&z(5, 2)).unwrap();
        let conj = z(5, 4).add(&z(5, 3)).unwrap();
        assert_eq!(a.galois_apply(-1).unwrap(), conj);
        let twice = z(7, 1).galois_apply(2).unwrap().galois_apply(3).unwrap();
        assert_eq!(twice, z(7, 6));
        assert!(matches!(
            z(8, 1).galois_apply(2),
            Err(Error::NotAUnit { .. })
        ));
    }

    #[test]
    fn root_of_unity_detection() {
        let a = z(3, 1).add(&z(3, 2)).unwrap().negate();
        let (sign, root) = a.as_root_of_unity().unwrap();
        assert_eq!(sign, 1);
        assert_eq!(root.order(), 1);

        let i = z(4, 1);
        assert_eq!(
            i.as_root_of_unity(),
            Some((1, RootOfUnity::new(4, 1).unwrap()))
        );

        assert_eq!(CyclotomicInteger::zero().as_root_of_unity(), None);
        assert_eq!(z(5, 1).add(&z(5, 4)).unwrap().as_root_of_unity(), None);

        // -zeta_5 needs the sign
        let m = z(5, 2).negate();
        assert_eq!(
            m.as_root_of_unity(),
            Some((-1, RootOfUnity::new(5, 2).unwrap()))
        );
        // -zeta_8 is zeta_8^5
        let m8 = z(8, 1).negate();
        assert_eq!(
            m8.as_root_of_unity(),
            Some((1, RootOfUnity::new(8, 5).unwrap()))
        );
    }

    /// Exhaustive oracle: compare against every `+-zeta_N^k`.
    #[test]
    fn root_of_unity_detection_matches_brute_force() {
        for n in [1u64, 3, 4, 5, 8, 9, 12, 15, 20] {
            for k in 0..n as i64 {
                for sign in [1i64, -1] {
                    let a = z(n, k).scalar_mul(sign);
                    let (s, r) = a.as_root_of_unity().expect("is a root");
                    assert_eq!(
                        r.to_cyclotomic().embed(2 * n).unwrap().scalar_mul(s as i64),
                        a.embed(2 * n).unwrap()
                    );
                }
            }
            let two_terms = z(n, 0).add(&z(n, 1)).unwrap();
            let brute = (0..2 * n as i64).any(|k| z(2 * n, k).same_value(&two_terms));
            assert_eq!(two_terms.as_root_of_unity().is_some(), brute, "n={n}");
        }
    }

    #[test]
    fn display_round_trips_through_text() {
        let a = CyclotomicInteger::make(12, [(0, 2), (1, -3), (5, 1)]).unwrap();
        let text = a.to_string();
        assert!(text.contains("z(12,"));
        assert_eq!(CyclotomicInteger::zero().to_string(), "0");
    }
}
