//! Elementary number theory on machine integers.
//!
//! Everything here works on `u64` moduli small enough that products fit in
//! `u128`. The cyclotomic moduli used by the rest of the crate are at most a
//! few thousand, so none of these routines are performance critical.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// Extended Euclid on signed integers: returns `(g, x, y)` with
/// `a*x + b*y = g = gcd(a, b) >= 0`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i64, 0i64);
    let (mut old_t, mut t) = (0i64, 1i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Non-negative residue of a signed integer.
pub fn rem(a: i64, m: u64) -> u64 {
    debug_assert!(m > 0);
    (a as i128).rem_euclid(m as i128) as u64
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (g, x, _) = ext_gcd((a % m) as i64, m as i64);
    (g == 1).then(|| rem(x, m))
}

/// Prime factorization by trial division, primes ascending.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// All positive divisors in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut divs = vec![1u64];
    for (p, e) in factor(n) {
        let len = divs.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs.sort_unstable();
    divs
}

pub fn euler_phi(n: u64) -> u64 {
    factor(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Deterministic Miller-Rabin, valid for every `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Returns `(p, f)` when `q = p^f` with `p` prime and `f >= 1`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    match factor(q).as_slice() {
        [(p, e)] => Some((*p, *e)),
        _ => None,
    }
}

/// Exact integer square root when `n` is a perfect square.
pub fn exact_sqrt(n: u64) -> Option<u64> {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    (r * r == n).then_some(r)
}

/// Residues in `0..n` coprime to `n`, ascending. For `n = 1` this is `[0]`.
pub fn units(n: u64) -> Vec<u64> {
    (0..n).filter(|&s| gcd(s, n) == 1).collect()
}

/// Least primitive root modulo an odd prime power.
fn primitive_root_odd_prime_power(p: u64, e: u32) -> u64 {
    let pe = p.pow(e);
    let phi = pe / p * (p - 1);
    let primes: Vec<u64> = factor(phi).into_iter().map(|(l, _)| l).collect();
    (2..pe)
        .find(|&g| gcd(g, p) == 1 && primes.iter().all(|&l| pow_mod(g, phi / l, pe) != 1))
        .expect("odd prime powers have primitive roots")
}

/// Generators of the kernel of the reduction map `(Z/n)^x -> (Z/d)^x`.
///
/// The kernel is the Galois group of `Q(zeta_n)` over `Q(zeta_d)`. It is a
/// product over the prime powers `p^e || n` of the kernels of
/// `(Z/p^e)^x -> (Z/p^f)^x` with `p^f || d`; each local kernel is cyclic
/// except for `p = 2, f <= 1`, where it is `<-1> x <5>`. Local generators are
/// glued with the CRT, so the returned list has at most one entry per prime
/// plus one.
pub fn kernel_generators(n: u64, d: u64) -> Vec<u64> {
    debug_assert!(d > 0 && n.is_multiple_of(d));
    let mut gens = Vec::new();
    for (p, e) in factor(n) {
        let pe = p.pow(e);
        let mut f = 0;
        let mut dd = d;
        while dd.is_multiple_of(p) {
            dd /= p;
            f += 1;
        }
        let local: Vec<u64> = if p == 2 {
            match f {
                0 | 1 => vec![pe - 1, 5 % pe],
                2 => vec![5 % pe],
                _ => vec![pow_mod(5, 1 << (f - 2), pe)],
            }
        } else {
            let g = primitive_root_odd_prime_power(p, e);
            let exp = if f == 0 { 1 } else { p.pow(f - 1) * (p - 1) };
            vec![pow_mod(g, exp, pe)]
        };
        let rest = n / pe;
        for x in local {
            if x % pe == 1 % pe {
                continue;
            }
            gens.push(crt_pair(x, pe, 1, rest));
        }
    }
    gens
}

/// The residue mod `m1*m2` congruent to `a1` mod `m1` and `a2` mod `m2`.
pub fn crt_pair(a1: u64, m1: u64, a2: u64, m2: u64) -> u64 {
    let m = m1 * m2;
    if m == 1 {
        return 0;
    }
    let inv = inv_mod(m1 % m2, m2).expect("coprime moduli");
    // x = a1 + m1 * ((a2 - a1) * inv mod m2)
    let diff = rem(a2 as i64 - a1 as i64, m2);
    let k = mul_mod(diff, inv, m2);
    (a1 + m1 * k) % m
}
