//! Small finite fields `F_{p^f}` and quadratic Gauss sums.

use crate::arith::{factor, is_prime, pow_mod};
use crate::cyclonum::CyclotomicInteger;
use crate::error::{Error, Result};

/// Largest field order `make_field` will build; element logs are tabulated.
pub const FIELD_SIZE_CAP: u64 = 1 << 22;

/// An element of `F_p[x]/(g)`, as `f` coefficients mod `p`, constant first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    pub coords: Vec<u64>,
}

/// `F_{p^f}` built from the least monic irreducible of degree `f`, with the
/// least primitive element as generator. "Least" compares the integer code
/// `sum c_i p^i`, i.e. coefficients from the top down.
#[derive(Debug, Clone)]
pub struct FieldSpec {
    p: u64,
    f: u32,
    modulus: Vec<u64>,
    generator: FieldElement,
    // exp[i] = code of generator^i; log[code] = i (log[0] unused)
    exp: Vec<u64>,
    log: Vec<u64>,
}

fn poly_mulmod(a: &[u64], b: &[u64], g: &[u64], p: u64) -> Vec<u64> {
    let f = g.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    // g is monic
    for i in (f..prod.len()).rev() {
        let c = prod[i];
        if c == 0 {
            continue;
        }
        for (j, &gj) in g.iter().enumerate() {
            let k = i - f + j;
            prod[k] = (prod[k] + (p - c) * gj) % p;
        }
    }
    prod.truncate(f);
    prod.resize(f, 0);
    prod
}

fn poly_powmod(base: &[u64], mut e: u64, g: &[u64], p: u64) -> Vec<u64> {
    let f = g.len() - 1;
    let mut result = vec![0u64; f];
    result[0] = 1 % p;
    let mut b = base.to_vec();
    b.resize(f, 0);
    while e > 0 {
        if e & 1 == 1 {
            result = poly_mulmod(&result, &b, g, p);
        }
        b = poly_mulmod(&b, &b, g, p);
        e >>= 1;
    }
    result
}

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let inv = pow_mod(*b.last().expect("nonempty"), p - 2, p);
        while a.len() >= b.len() {
            let c = a.last().expect("nonempty") * inv % p;
            let shift = a.len() - b.len();
            for (j, &bj) in b.iter().enumerate() {
                a[shift + j] = (a[shift + j] + (p - c) * bj % p) % p;
            }
            a = trim(a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a
}

/// Rabin's test: `x^{p^f} = x mod g` and `gcd(x^{p^{f/r}} - x, g) = 1`
/// for each prime `r | f`.
fn is_irreducible(g: &[u64], p: u64) -> bool {
    let f = (g.len() - 1) as u32;
    let mut x = vec![0u64; f as usize];
    if f == 1 {
        return true;
    }
    x[1] = 1;
    let frob = |k: u32| {
        let mut y = x.clone();
        for _ in 0..k {
            y = poly_powmod(&y, p, g, p);
        }
        y
    };
    if frob(f) != x {
        return false;
    }
    factor(f as u64).into_iter().all(|(r, _)| {
        let mut h = frob(f / r as u32);
        h[1] = (h[1] + p - 1) % p;
        poly_gcd(&h, g, p).len() == 1
    })
}

impl FieldSpec {
    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.f
    }

    pub fn order(&self) -> u64 {
        self.exp.len() as u64 + 1
    }

    /// Monic modulus polynomial, constant coefficient first.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn generator(&self) -> &FieldElement {
        &self.generator
    }

    pub fn code(&self, x: &FieldElement) -> u64 {
        x.coords.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    pub fn from_code(&self, mut code: u64) -> FieldElement {
        let coords = (0..self.f)
            .map(|_| {
                let c = code % self.p;
                code /= self.p;
                c
            })
            .collect();
        FieldElement { coords }
    }

    pub fn element(&self, coords: &[u64]) -> FieldElement {
        let mut coords: Vec<u64> = coords.iter().map(|c| c % self.p).collect();
        coords.resize(self.f as usize, 0);
        FieldElement { coords }
    }

    pub fn zero(&self) -> FieldElement {
        self.element(&[])
    }

    pub fn one(&self) -> FieldElement {
        self.element(&[1])
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order()).map(|c| self.from_code(c))
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement {
            coords: a
                .coords
                .iter()
                .zip(&b.coords)
                .map(|(x, y)| (x + y) % self.p)
                .collect(),
        }
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement {
            coords: poly_mulmod(&a.coords, &b.coords, &self.modulus, self.p),
        }
    }

    pub fn pow(&self, a: &FieldElement, e: u64) -> FieldElement {
        FieldElement {
            coords: poly_powmod(&a.coords, e, &self.modulus, self.p),
        }
    }

    /// Discrete log to the base of the generator; `None` for zero.
    pub fn log(&self, a: &FieldElement) -> Option<u64> {
        let c = self.code(a);
        (c != 0).then(|| self.log[c as usize])
    }

    pub fn is_square(&self, a: &FieldElement) -> bool {
        self.p == 2 || self.log(a).is_none_or(|l| l % 2 == 0)
    }

    /// Absolute trace `sum_{i<f} x^{p^i}`, an element of the prime field.
    pub fn trace(&self, x: &FieldElement) -> u64 {
        let mut acc = self.zero();
        let mut y = x.clone();
        for _ in 0..self.f {
            acc = self.add(&acc, &y);
            y = self.pow(&y, self.p);
        }
        debug_assert!(acc.coords[1..].iter().all(|&c| c == 0));
        acc.coords[0]
    }
}

/// The field with `p^f` elements.
pub fn make_field(p: u64, f: u32) -> Result<FieldSpec> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if f == 0 {
        return Err(Error::InvalidDegree(f));
    }
    let q = (p as u128).checked_pow(f).unwrap_or(u128::MAX);
    if q > FIELD_SIZE_CAP as u128 {
        return Err(Error::FieldTooLarge(q));
    }
    let q = q as u64;
    let modulus = (0..q)
        .map(|code| {
            let mut g: Vec<u64> = (0..f).map(|i| code / p.pow(i) % p).collect();
            g.push(1);
            g
        })
        .find(|g| is_irreducible(g, p))
        .expect("irreducible polynomials exist in every degree");
    let mut spec = FieldSpec {
        p,
        f,
        modulus,
        generator: FieldElement { coords: vec![] },
        exp: Vec::new(),
        log: Vec::new(),
    };
    let primes: Vec<u64> = factor(q - 1).into_iter().map(|(r, _)| r).collect();
    let one = spec.one();
    spec.generator = (1..q)
        .map(|c| spec.from_code(c))
        .find(|a| primes.iter().all(|&r| spec.pow(a, (q - 1) / r) != one))
        .expect("the multiplicative group is cyclic");
    let mut exp = Vec::with_capacity(q as usize - 1);
    let mut log = vec![0u64; q as usize];
    let mut cur = one;
    for i in 0..q - 1 {
        let c = spec.code(&cur);
        exp.push(c);
        log[c as usize] = i;
        cur = spec.mul(&cur, &spec.generator);
    }
    spec.exp = exp;
    spec.log = log;
    Ok(spec)
}

/// The quadratic Gauss sum `sum_{t != 0} chi(t) zeta_p^{Tr t}` of `F_{p^f}`,
/// where `chi` is the quadratic character. Its square is `(-1)^{(q-1)/2} q`.
pub fn gauss_sum(p: u64, f: u32) -> Result<CyclotomicInteger> {
    if p == 2 {
        return Err(Error::EvenCharacteristic(p));
    }
    let field = make_field(p, f)?;
    let terms = (1..field.order()).map(|c| {
        let t = field.from_code(c);
        let chi = if field.is_square(&t) { 1 } else { -1 };
        (field.trace(&t) as i64, chi)
    });
    CyclotomicInteger::make(p, terms)
}
