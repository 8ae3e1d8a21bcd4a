use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::arith::{gcd, lcm, rem};
use crate::error::{Error, Result};

use super::CyclotomicInteger;

/// The root of unity `zeta_N^k`, with `0 <= k < N`.
///
/// Equality, hashing and ordering look at the underlying complex number,
/// i.e. at the reduced fraction `k/N`; roots are ordered by argument in
/// `[0, 2*pi)`. So `zeta_6^2 == zeta_3^1` and `1 < zeta_8 < i < -1`.
#[derive(Debug, Clone, Copy)]
pub struct RootOfUnity {
    modulus: u64,
    exponent: u64,
}

impl RootOfUnity {
    pub fn new(modulus: u64, exponent: i64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::ZeroModulus);
        }
        Ok(Self {
            modulus,
            exponent: rem(exponent, modulus),
        })
    }

    pub fn one() -> Self {
        Self {
            modulus: 1,
            exponent: 0,
        }
    }

    pub fn minus_one() -> Self {
        Self {
            modulus: 2,
            exponent: 1,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// Multiplicative order `N / gcd(N, k)`.
    pub fn order(&self) -> u64 {
        self.modulus / gcd(self.modulus, self.exponent)
    }

    /// The same root written as `zeta_order^j` with `gcd(j, order) = 1`.
    pub fn reduced(&self) -> Self {
        let g = gcd(self.modulus, self.exponent);
        Self {
            modulus: self.modulus / g,
            exponent: self.exponent / g,
        }
    }

    /// Exponent of this root with respect to `zeta_m`; `m` must be a
    /// multiple of the order.
    pub fn exponent_in(&self, m: u64) -> Option<u64> {
        let r = self.reduced();
        m.is_multiple_of(r.modulus)
            .then(|| r.exponent * (m / r.modulus))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let m = lcm(self.modulus, other.modulus);
        let e = self.exponent * (m / self.modulus) + other.exponent * (m / other.modulus);
        Self {
            modulus: m,
            exponent: e % m,
        }
        .reduced()
    }

    pub fn pow(&self, k: i64) -> Self {
        let e = (self.exponent as i128 * k as i128).rem_euclid(self.modulus as i128) as u64;
        Self {
            modulus: self.modulus,
            exponent: e,
        }
        .reduced()
    }

    pub fn inverse(&self) -> Self {
        self.pow(-1)
    }

    /// `-zeta`, as a root of unity.
    pub fn neg(&self) -> Self {
        self.mul(&Self::minus_one())
    }

    pub fn to_cyclotomic(&self) -> CyclotomicInteger {
        CyclotomicInteger::root(self.modulus, self.exponent as i64).expect("modulus is positive")
    }
}

impl PartialEq for RootOfUnity {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = (self.reduced(), other.reduced());
        a.modulus == b.modulus && a.exponent == b.exponent
    }
}

impl Eq for RootOfUnity {}

impl Hash for RootOfUnity {
    fn hash<H: Hasher>(&self, state: &mut H) {
        let r = self.reduced();
        r.modulus.hash(state);
        r.exponent.hash(state);
    }
}

impl Ord for RootOfUnity {
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = self.exponent as u128 * other.modulus as u128;
        let rhs = other.exponent as u128 * self.modulus as u128;
        lhs.cmp(&rhs)
    }
}

impl PartialOrd for RootOfUnity {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.reduced();
        write!(f, "z({},{})", r.modulus, r.exponent)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_and_order() {
        let z = RootOfUnity::new(12, -3).unwrap();
        assert_eq!(z.exponent(), 9);
        assert_eq!(z.order(), 4);
        assert_eq!(RootOfUnity::new(5, 0).unwrap().order(), 1);
        assert!(RootOfUnity::new(0, 1).is_err());
    }

    #[test]
    fn equality_is_by_value() {
        assert_eq!(
            RootOfUnity::new(6, 2).unwrap(),
            RootOfUnity::new(3, 1).unwrap()
        );
        assert_ne!(
            RootOfUnity::new(6, 1).unwrap(),
            RootOfUnity::new(3, 1).unwrap()
        );
        assert_eq!(RootOfUnity::new(4, 2).unwrap(), RootOfUnity::minus_one());
    }

    #[test]
    fn ordering_is_by_argument() {
        let one = RootOfUnity::one();
        let z8 = RootOfUnity::new(8, 1).unwrap();
        let i = RootOfUnity::new(4, 1).unwrap();
        assert!(one < z8 && z8 < i && i < RootOfUnity::minus_one());
    }

    #[test]
    fn group_operations() {
        let z3 = RootOfUnity::new(3, 1).unwrap();
        let z6 = RootOfUnity::new(6, 1).unwrap();
        assert_eq!(z3.mul(&z6), RootOfUnity::minus_one());
        assert_eq!(z3.neg(), RootOfUnity::new(6, 5).unwrap());
        assert_eq!(z6.inverse(), RootOfUnity::new(6, 5).unwrap());
        assert_eq!(z6.pow(6), RootOfUnity::one());
    }
}
