//! Galois-theoretic queries on cyclotomic integers: conductors, subfield
//! membership and fields generated by finite sets.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{divisors, euler_phi, gcd, kernel_generators, lcm, mul_mod, rem, units};
use crate::error::{Error, Result};

use super::integer::Basis;
use super::CyclotomicInteger;

/// Smallest `n` with `a` in `Q(zeta_n)`.
///
/// Scans the divisors `d` of the modulus in ascending order and returns the
/// first one for which `a` is fixed by `Gal(Q(zeta_N)/Q(zeta_d))`, i.e. by
/// every `sigma_s` with `s = 1 mod d`. Fixedness is checked on a generating
/// set of that group.
pub fn conductor(a: &CyclotomicInteger) -> u64 {
    if a.is_rational() {
        return 1;
    }
    let basis = a.basis();
    conductor_with(a, &basis)
}

pub(crate) fn conductor_with(a: &CyclotomicInteger, basis: &Basis) -> u64 {
    let n = a.modulus();
    if a.is_rational() {
        return 1;
    }
    for d in divisors(n) {
        if d % 4 == 2 {
            continue;
        }
        if kernel_generators(n, d)
            .into_iter()
            .all(|s| a.is_fixed_by(basis, s))
        {
            return d;
        }
    }
    n
}

/// Conductor of a finite set: the lcm of the elementwise conductors.
pub fn conductor_of_set<'a, I>(values: I) -> u64
where
    I: IntoIterator<Item = &'a CyclotomicInteger>,
{
    values.into_iter().map(conductor).fold(1, lcm)
}

fn normalize_divisor(a: &CyclotomicInteger, d: u64) -> Result<u64> {
    let n = a.modulus();
    if d > 0 && n.is_multiple_of(d) {
        return Ok(d);
    }
    if d % 4 == 2 && n.is_multiple_of(d / 2) {
        return Ok(d / 2);
    }
    Err(Error::NotADivisor { d, modulus: n })
}

/// Decides `a in Q(zeta_d)` by linear algebra over `Q`.
///
/// The powers `zeta_d^j, 0 <= j < phi(d)`, form a basis of `Q(zeta_d)`. Each
/// is written in the canonical basis of `Q(zeta_N)` and we test whether `a`
/// lies in their rational span by Gaussian elimination on the augmented
/// system. This path shares nothing with the Galois-fixedness test used by
/// [`conductor`].
pub fn subfield_membership_oracle(a: &CyclotomicInteger, d: u64) -> Result<bool> {
    let d = normalize_divisor(a, d)?;
    let n = a.modulus();
    let cols = euler_phi(d) as usize;
    let columns: Vec<CyclotomicInteger> = (0..cols)
        .map(|j| CyclotomicInteger::root(n, (j as u64 * (n / d)) as i64).expect("positive"))
        .collect();

    let mut rows: Vec<u64> = columns
        .iter()
        .chain(std::iter::once(a))
        .flat_map(|v| v.terms().iter().map(|(e, _)| *e))
        .collect();
    rows.sort_unstable();
    rows.dedup();

    let coord = |v: &CyclotomicInteger, row: u64| -> BigRational {
        match v.terms().binary_search_by_key(&row, |(e, _)| *e) {
            Ok(i) => BigRational::from_integer(v.terms()[i].1.clone()),
            Err(_) => BigRational::zero(),
        }
    };
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|&r| {
            columns
                .iter()
                .chain(std::iter::once(a))
                .map(|v| coord(v, r))
                .collect()
        })
        .collect();

    // Row-reduce the coefficient part; the system is inconsistent iff some
    // row ends up as (0 ... 0 | nonzero).
    let mut pivot_row = 0;
    for col in 0..cols {
        let Some(p) = (pivot_row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(pivot_row, p);
        let inv = BigRational::one() / m[pivot_row][col].clone();
        for x in m[pivot_row].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..m.len() {
            if r != pivot_row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                let pivot = m[pivot_row].clone();
                for (x, y) in m[r].iter_mut().zip(pivot) {
                    *x -= &factor * y;
                }
            }
        }
        pivot_row += 1;
    }
    Ok(m[pivot_row..].iter().all(|row| row[cols].is_zero()))
}

/// Conductor computed from [`subfield_membership_oracle`] alone.
pub fn conductor_by_oracle(a: &CyclotomicInteger) -> u64 {
    let n = a.modulus();
    divisors(n)
        .into_iter()
        .find(|&d| subfield_membership_oracle(a, d).expect("divisor of modulus"))
        .unwrap_or(n)
}

/// A subfield of `Q(zeta_N)`, described by its Galois stabilizer in
/// `(Z/N)^x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldHandle {
    modulus: u64,
    stabilizer: Vec<u64>,
    conductor: u64,
}

impl FieldHandle {
    pub fn rational() -> Self {
        Self {
            modulus: 1,
            stabilizer: vec![0],
            conductor: 1,
        }
    }

    fn from_stabilizer(modulus: u64, mut stabilizer: Vec<u64>) -> Self {
        stabilizer.sort_unstable();
        let conductor = divisors(modulus)
            .into_iter()
            .filter(|d| d % 4 != 2)
            .find(|&d| {
                kernel_generators(modulus, d)
                    .into_iter()
                    .all(|s| stabilizer.binary_search(&s).is_ok())
            })
            .unwrap_or(modulus);
        Self {
            modulus,
            stabilizer,
            conductor,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Sorted residues `s` with `sigma_s` fixing the field.
    pub fn stabilizer(&self) -> &[u64] {
        &self.stabilizer
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Degree of the field over `Q`.
    pub fn degree(&self) -> u64 {
        euler_phi(self.modulus) / self.stabilizer.len() as u64
    }

    /// `[Q(zeta_c) : F]` where `c` is the conductor of `F`.
    pub fn index_in_conductor_field(&self) -> u64 {
        euler_phi(self.conductor) / self.degree()
    }

    /// Stabilizer lifted to `(Z/m)^x` for a multiple `m` of the modulus.
    fn stabilizer_at(&self, m: u64) -> Vec<u64> {
        units(m)
            .into_iter()
            .filter(|s| self.stabilizer.binary_search(&(s % self.modulus)).is_ok())
            .collect()
    }
}

/// Subgroup of `(Z/N)^x` fixing every value, built incrementally: elements
/// of the subgroup generated by known fixers are skipped, and once `s` is
/// found not to fix the set, the whole coset `sH` is skipped too.
pub(crate) fn stabilizer_of(values: &[CyclotomicInteger], basis: &Basis) -> Vec<u64> {
    let n = basis.modulus();
    if n == 1 {
        return vec![0];
    }
    let size = n as usize;
    let mut in_group = vec![false; size];
    let mut rejected = vec![false; size];
    in_group[1] = true;
    let mut group = vec![1u64];
    for s in units(n) {
        if in_group[s as usize] || rejected[s as usize] {
            continue;
        }
        if values.iter().all(|v| v.is_fixed_by(basis, s)) {
            let base = group.clone();
            let base_set = in_group.clone();
            let mut t = s;
            while !base_set[t as usize] {
                for &x in &base {
                    let y = mul_mod(x, t, n);
                    if !in_group[y as usize] {
                        in_group[y as usize] = true;
                        group.push(y);
                    }
                }
                t = mul_mod(t, s, n);
            }
        } else {
            for &x in &group {
                rejected[mul_mod(x, s, n) as usize] = true;
            }
        }
    }
    group
}

/// The field generated by a finite set of values. Values are lifted to the
/// lcm of their moduli; the empty set gives `Q`.
pub fn field_of_set(values: &[CyclotomicInteger]) -> FieldHandle {
    if values.is_empty() {
        return FieldHandle::rational();
    }
    let m = values.iter().map(|v| v.modulus()).fold(1, lcm);
    let lifted: Vec<CyclotomicInteger> = values
        .iter()
        .filter(|v| !v.is_rational())
        .map(|v| v.embed(m).expect("lcm is a multiple"))
        .collect();
    let basis = Basis::new(m);
    FieldHandle::from_stabilizer(m, stabilizer_of(&lifted, &basis))
}

pub fn field_equal(f: &FieldHandle, g: &FieldHandle) -> bool {
    if f.modulus == g.modulus {
        return f.stabilizer == g.stabilizer;
    }
    let m = lcm(f.modulus, g.modulus);
    f.stabilizer_at(m) == g.stabilizer_at(m)
}

/// Field inclusion `f <= g` (stabilizer reverse inclusion).
pub fn field_contains(g: &FieldHandle, f: &FieldHandle) -> bool {
    let m = lcm(f.modulus, g.modulus);
    let sf = f.stabilizer_at(m);
    g.stabilizer_at(m)
        .iter()
        .all(|s| sf.binary_search(s).is_ok())
}

/// `Q(zeta_d)` as a field handle.
pub fn cyclotomic_field(d: u64) -> FieldHandle {
    let d = if d % 4 == 2 { d / 2 } else { d };
    let stab = units(d).into_iter().filter(|s| s % d == 1 % d).collect();
    FieldHandle::from_stabilizer(d, stab)
}

/// The subfield of `Q(zeta_n)` fixed by the subgroup of `(Z/n)^x`
/// generated by `generators`.
pub fn fixed_field(n: u64, generators: &[i64]) -> Result<FieldHandle> {
    if n == 0 {
        return Err(Error::ZeroModulus);
    }
    let n = if n % 4 == 2 { n / 2 } else { n };
    let gens: Vec<u64> = generators.iter().map(|&s| rem(s, n)).collect();
    if let Some(&s) = gens.iter().find(|&&s| gcd(s, n) != 1) {
        return Err(Error::NotAUnit {
            s: s as i64,
            modulus: n,
        });
    }
    let mut group = vec![1 % n];
    let mut i = 0;
    while i < group.len() {
        for &s in &gens {
            let y = mul_mod(group[i], s, n);
            if !group.contains(&y) {
                group.push(y);
            }
        }
        i += 1;
    }
    Ok(FieldHandle::from_stabilizer(n, group))
}

/// The quadratic field `Q(sqrt(D))`, described without any cyclotomic
/// representative of `sqrt(D)`: its conductor is the absolute discriminant
/// and its stabilizer is the kernel of the Kronecker symbol `(disc / .)`.
pub fn quadratic_field(d: i64) -> FieldHandle {
    let mut core = d;
    // strip square factors
    let mut f = 2i64;
    while f * f <= core.abs() {
        while core % (f * f) == 0 {
            core /= f * f;
        }
        f += 1;
    }
    if core == 1 {
        return FieldHandle::rational();
    }
    let disc = if core.rem_euclid(4) == 1 {
        core
    } else {
        4 * core
    };
    let n = disc.unsigned_abs();
    let stab = units(n)
        .into_iter()
        .filter(|&s| kronecker(disc, s) == 1)
        .collect();
    FieldHandle::from_stabilizer(n, stab)
}

/// Kronecker symbol `(D / s)` for `s > 0` odd or even, `gcd(D, s) = 1`.
fn kronecker(d: i64, s: u64) -> i64 {
    debug_assert_eq!(gcd(d.unsigned_abs(), s), 1);
    let mut result = 1i64;
    let mut s = s;
    while s.is_multiple_of(2) {
        s /= 2;
        // (D/2) for D odd: +1 if D = +-1 mod 8, -1 if D = +-3 mod 8
        if matches!(d.rem_euclid(8), 3 | 5) {
            result = -result;
        }
    }
    result * jacobi(d.rem_euclid(s.max(1) as i64) as u64, s)
}

fn jacobi(mut a: u64, mut n: u64) -> i64 {
    if n == 1 {
        return 1;
    }
    let mut result = 1i64;
    a %= n;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// `[Q_{c(a)} : Q(a)]`, the index of the field of `a` in its conductor field.
pub fn conductor_index(a: &CyclotomicInteger) -> u64 {
    let f = field_of_set(std::slice::from_ref(a));
    f.index_in_conductor_field()
}
