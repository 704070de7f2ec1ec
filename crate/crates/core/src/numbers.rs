//! Elementary number theory over odd square-free moduli.
//!
//! Everything here is exact integer arithmetic except the Gauss sum, whose
//! closed form is returned as a double-precision complex number.

use num_complex::Complex64;
use num_integer::Integer;

use crate::error::{Error, Result};

/// An odd square-free integer `n > 1` together with its factorization.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FactoredModulus {
    n: u64,
    prime_factors: Vec<u64>,
    phi: u64,
}

impl FactoredModulus {
    pub fn n(&self) -> u64 {
        self.n
    }

    /// Distinct prime factors in ascending order.
    pub fn prime_factors(&self) -> &[u64] {
        &self.prime_factors
    }

    /// Euler totient.
    pub fn phi(&self) -> u64 {
        self.phi
    }

    /// Cototient `n - phi(n)`: the number of indices sharing a factor with `n`.
    pub fn psi(&self) -> u64 {
        self.n - self.phi
    }

    /// Smallest prime factor.
    pub fn p_min(&self) -> u64 {
        self.prime_factors[0]
    }

    /// Number of distinct prime factors.
    pub fn omega(&self) -> usize {
        self.prime_factors.len()
    }

    pub fn is_prime(&self) -> bool {
        self.prime_factors.len() == 1
    }

    /// `n` as a sequence length. A modulus is never empty.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.n as usize
    }

    /// Euler totient of a divisor of `n` (a product of a subset of the factors).
    pub fn phi_of_divisor(&self, d: u64) -> u64 {
        debug_assert_eq!(self.n % d, 0);
        self.prime_factors
            .iter()
            .filter(|&&p| d.is_multiple_of(p))
            .map(|&p| p - 1)
            .product()
    }

    /// Möbius function of a divisor of `n`.
    pub fn mobius_of_divisor(&self, d: u64) -> i8 {
        debug_assert_eq!(self.n % d, 0);
        let k = self
            .prime_factors
            .iter()
            .filter(|&&p| d.is_multiple_of(p))
            .count();
        if k % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Jacobi symbol `(j | n)` for this modulus.
    pub fn symbol(&self, j: i64) -> i8 {
        jacobi_odd(j, self.n)
    }

    /// `gcd(j mod n, n)`, with `gcd(0, n) = n`.
    pub fn gcd_with(&self, j: i64) -> u64 {
        (j.rem_euclid(self.n as i64) as u64).gcd(&self.n)
    }
}

impl std::fmt::Display for FactoredModulus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let factors: Vec<String> = self.prime_factors.iter().map(u64::to_string).collect();
        write!(f, "{} = {}", self.n, factors.join("·"))
    }
}

/// Factor an odd square-free `n > 1` by trial division.
pub fn factor_odd_squarefree(n: u64) -> Result<FactoredModulus> {
    if n <= 1 {
        return Err(Error::ModulusTooSmall(n));
    }
    if n.is_multiple_of(2) {
        return Err(Error::EvenModulus(n));
    }
    let mut rest = n;
    let mut prime_factors = Vec::new();
    let mut p = 3u64;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            rest /= p;
            if rest.is_multiple_of(p) {
                return Err(Error::NotSquareFree { n, p });
            }
            prime_factors.push(p);
        }
        p += 2;
    }
    if rest > 1 {
        prime_factors.push(rest);
    }
    let phi = prime_factors.iter().map(|&p| p - 1).product();
    Ok(FactoredModulus {
        n,
        prime_factors,
        phi,
    })
}

/// Trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Jacobi symbol `(j | n)` for odd positive `n`; `j` is reduced mod `n` first.
pub fn jacobi(j: i64, n: u64) -> Result<i8> {
    if n == 0 || n.is_multiple_of(2) {
        return Err(Error::Precondition(format!(
            "Jacobi symbol needs odd positive n, got {n}"
        )));
    }
    Ok(jacobi_odd(j, n))
}

/// Binary Jacobi algorithm (quadratic reciprocity and the 2-supplement).
/// `(j | 1) = 1` for every `j`, including `j = 0`.
pub(crate) fn jacobi_odd(j: i64, n: u64) -> i8 {
    debug_assert!(n % 2 == 1);
    let mut a = j.rem_euclid(n as i64) as u64;
    let mut m = n;
    let mut sign = 1i8;
    while a != 0 {
        let twos = a.trailing_zeros();
        a >>= twos;
        if twos % 2 == 1 && matches!(m % 8, 3 | 5) {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut m);
        if a % 4 == 3 && m % 4 == 3 {
            sign = -sign;
        }
        a %= m;
    }
    if m == 1 {
        sign
    } else {
        0
    }
}

/// Möbius function.
pub fn mobius(n: u64) -> i8 {
    assert!(n >= 1, "mobius is defined for n >= 1");
    let mut rest = n;
    let mut sign = 1i8;
    let mut p = 2u64;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            rest /= p;
            if rest.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if rest > 1 {
        sign = -sign;
    }
    sign
}

/// Ramanujan's sum over the units mod `n`, via `mu(n / g) * phi(g)` with
/// `g = gcd(u, n)`.
pub fn ramanujan_sum(u: i64, m: &FactoredModulus) -> i64 {
    let g = m.gcd_with(u);
    i64::from(m.mobius_of_divisor(m.n() / g)) * m.phi_of_divisor(g) as i64
}

/// `i^k` for integer `k`.
pub(crate) fn i_pow(k: u64) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// Exponent of `i` in the Jacobi Gauss sum, `(m-1)^2 / 4`, reduced mod 4.
pub(crate) fn gauss_i_exponent(m: u64) -> u64 {
    let h = ((m - 1) / 2) % 4;
    (h * h) % 4
}

/// Closed form of `sum_l (l | m) zeta_m^(j l)`: `i^((m-1)^2/4) (j | m) sqrt(m)`.
pub fn gauss_sum_jacobi(j: i64, m: &FactoredModulus) -> Complex64 {
    let s = f64::from(m.symbol(j));
    i_pow(gauss_i_exponent(m.n())) * s * (m.n() as f64).sqrt()
}

/// All odd square-free integers in `[3, upper]`.
pub fn odd_squarefree_up_to(upper: u64) -> Vec<FactoredModulus> {
    (3..=upper)
        .step_by(2)
        .filter_map(|n| factor_odd_squarefree(n).ok())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
        let mut acc = 1 % m;
        b %= m;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % m;
            }
            b = b * b % m;
            e >>= 1;
        }
        acc
    }

    /// Legendre symbol by Euler's criterion.
    fn legendre_euler(a: i64, p: u64) -> i8 {
        let a = a.rem_euclid(p as i64) as u64;
        match pow_mod(a, (p - 1) / 2, p) {
            0 => 0,
            1 => 1,
            _ => -1,
        }
    }

    /// Jacobi symbol as a product of Euler-criterion Legendre symbols.
    fn jacobi_oracle(a: i64, n: u64) -> i8 {
        let mut rest = n;
        let mut s = 1i8;
        let mut p = 3u64;
        while rest > 1 {
            while rest.is_multiple_of(p) {
                s *= legendre_euler(a, p);
                rest /= p;
            }
            p += 2;
        }
        s
    }

    fn root(n: u64, k: i64) -> Complex64 {
        let k = k.rem_euclid(n as i64) as f64;
        Complex64::from_polar(1.0, 2.0 * PI * k / n as f64)
    }

    #[test]
    fn factor_examples() {
        let m = factor_odd_squarefree(15).unwrap();
        assert_eq!(m.prime_factors(), &[3, 5]);
        assert_eq!((m.phi(), m.psi(), m.p_min(), m.omega()), (8, 7, 3, 2));
        let m = factor_odd_squarefree(3).unwrap();
        assert_eq!((m.phi(), m.psi(), m.p_min(), m.omega()), (2, 1, 3, 1));
        assert_eq!(
            factor_odd_squarefree(9),
            Err(Error::NotSquareFree { n: 9, p: 3 })
        );
        assert_eq!(factor_odd_squarefree(1), Err(Error::ModulusTooSmall(1)));
        assert_eq!(factor_odd_squarefree(30), Err(Error::EvenModulus(30)));
        assert!(factor_odd_squarefree(3 * 7 * 7 * 11).is_err());
    }

    #[test]
    fn factored_modulus_invariants() {
        for m in odd_squarefree_up_to(20_000) {
            let n = m.n();
            assert_eq!(m.prime_factors().iter().product::<u64>(), n);
            assert!(m.prime_factors().windows(2).all(|w| w[0] < w[1]));
            assert!(m.prime_factors().iter().all(|p| p % 2 == 1 && is_prime(*p)));
            assert_eq!(m.psi(), n - m.phi());
            assert!((m.omega() as f64) <= (n as f64).ln());
            // psi/n <= omega/p_min, cross-multiplied
            assert!(m.psi() * m.p_min() <= m.omega() as u64 * n);
        }
    }

    #[test]
    fn jacobi_examples() {
        assert_eq!(jacobi(0, 15).unwrap(), 0);
        for n in (1..200).step_by(2) {
            assert_eq!(jacobi(1, n).unwrap(), 1);
        }
        assert_eq!(jacobi(2, 15).unwrap(), 1);
        assert_eq!(jacobi(-1, 3).unwrap(), -1);
        assert_eq!(jacobi(0, 1).unwrap(), 1);
        assert!(jacobi(3, 14).is_err());
        assert!(jacobi(3, 0).is_err());
    }

    #[test]
    fn jacobi_matches_euler_product() {
        for n in (3..400u64).step_by(2) {
            for j in -(n as i64)..(2 * n as i64) {
                assert_eq!(jacobi_odd(j, n), jacobi_oracle(j, n), "({j}|{n})");
            }
        }
    }

    #[test]
    fn mobius_examples() {
        assert_eq!(mobius(1), 1);
        assert_eq!(mobius(15), 1);
        assert_eq!(mobius(12), 0);
        assert_eq!(mobius(30), -1);
        assert_eq!(mobius(7), -1);
    }

    #[test]
    fn ramanujan_examples() {
        let m = factor_odd_squarefree(15).unwrap();
        assert_eq!(ramanujan_sum(0, &m), 8);
        assert_eq!(ramanujan_sum(1, &m), 1);
        assert_eq!(ramanujan_sum(5, &m), -4);
        assert_eq!(ramanujan_sum(-5, &m), -4);
    }

    #[test]
    fn ramanujan_matches_direct_sum() {
        for m in odd_squarefree_up_to(105) {
            let n = m.n();
            for u in 0..n as i64 {
                let direct: Complex64 = (0..n as i64)
                    .filter(|&j| m.gcd_with(j) == 1)
                    .map(|j| root(n, j * u))
                    .sum();
                let closed = ramanujan_sum(u, &m) as f64;
                assert!((direct - closed).norm() < 1e-9, "n={n} u={u}");
            }
        }
    }

    #[test]
    fn gauss_examples() {
        let m3 = factor_odd_squarefree(3).unwrap();
        let g = gauss_sum_jacobi(1, &m3);
        assert!((g - Complex64::new(0.0, 3f64.sqrt())).norm() < 1e-12);
        assert_eq!(gauss_sum_jacobi(3, &m3).norm(), 0.0);
        let m5 = factor_odd_squarefree(5).unwrap();
        assert!((gauss_sum_jacobi(1, &m5) - Complex64::new(5f64.sqrt(), 0.0)).norm() < 1e-12);
    }

    #[test]
    fn gauss_matches_direct_sum() {
        for m in odd_squarefree_up_to(105) {
            let n = m.n();
            for j in 0..n as i64 {
                let direct: Complex64 = (0..n as i64)
                    .map(|l| root(n, j * l) * f64::from(jacobi_oracle(l, n)))
                    .sum();
                assert!(
                    (direct - gauss_sum_jacobi(j, &m)).norm() < 1e-9,
                    "n={n} j={j}"
                );
            }
        }
    }

    #[test]
    fn i_exponent_is_exact() {
        for m in (1..10_001u64).step_by(2) {
            assert_eq!(gauss_i_exponent(m), ((m - 1) * (m - 1) / 4) % 4);
        }
    }

    proptest::proptest! {
        #[test]
        fn jacobi_is_multiplicative(a in -100_000i64..100_000, b in -100_000i64..100_000, h in 0u64..5000) {
            let n = 2 * h + 1;
            let ab = (a as i128 * b as i128).rem_euclid(n as i128) as i64;
            proptest::prop_assert_eq!(jacobi_odd(ab, n), jacobi_odd(a, n) * jacobi_odd(b, n));
        }

        #[test]
        fn jacobi_is_periodic(a in -100_000i64..100_000, h in 0u64..5000) {
            let n = 2 * h + 1;
            proptest::prop_assert_eq!(jacobi_odd(a, n), jacobi_odd(a + n as i64, n));
        }
    }
}
