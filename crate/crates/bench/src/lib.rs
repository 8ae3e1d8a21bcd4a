//! Shared fixtures for the criterion benchmarks.

use cyclocert::CyclotomicInteger;

/// A dense element of `Z[zeta_n]` with quadratic-residue-like coefficients.
pub fn dense(n: u64) -> CyclotomicInteger {
    CyclotomicInteger::make(n, (0..n as i64).map(|j| (j, (j * j + 3 * j) % 11 - 5)))
        .expect("positive modulus")
}

/// `zeta_n^a + zeta_n^b`, the shape of most torus character values.
pub fn two_roots(n: u64, a: i64, b: i64) -> CyclotomicInteger {
    CyclotomicInteger::make(n, [(a, 1), (b, 1)]).expect("positive modulus")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dense_is_dense() {
        assert!(dense(360).terms().len() > 60);
    }
}
