//! Høholdt–Jensen decomposition of `||A||_4^4 / n^2` for real polynomials of
//! even degree `n - 1`, written in terms of the values `A(zeta_n^a)`.
//!
//! With `Lambda(j, k, l) = sum_a A_a conj(A_(a+j)) A_(a+k) conj(A_(a+l))`:
//!
//! ```text
//! ||A||_4^4 / n^2 = (2n^2 + 1) / (3n^5) Lambda(0,0,0) + B + C + D
//! ```
//!
//! `B` and `D` are single sums over `k`; `C` is a double sum over `k != l`.
//! The double sum is evaluated by factoring it per `a`, which brings the cost
//! from `O(n^3)` to `O(n^2)`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::norms::spectrum::{roots_of_unity, values_at_roots};
use crate::sequences::TernarySequence;

/// Default length guard for [`hj_decomposition`].
pub const HJ_DEFAULT_LIMIT: usize = 255;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecompositionReport {
    pub main_term: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub total: f64,
    /// Largest imaginary part dropped from the four (real) terms.
    pub imag_residual: f64,
}

/// Cached values `A(zeta_n^a)` and the roots `zeta_n^k`.
#[derive(Debug, Clone)]
pub struct SpectralCache {
    values: Vec<Complex64>,
    roots: Vec<Complex64>,
}

impl SpectralCache {
    pub fn new(a: &TernarySequence) -> Self {
        SpectralCache {
            values: values_at_roots(a),
            roots: roots_of_unity(a.len()),
        }
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    /// `A(zeta_n^a)` with `a` taken mod `n`.
    pub fn value(&self, a: i64) -> Complex64 {
        self.values[a.rem_euclid(self.n() as i64) as usize]
    }

    /// `zeta_n^k` with `k` taken mod `n`.
    pub fn root(&self, k: i64) -> Complex64 {
        self.roots[k.rem_euclid(self.n() as i64) as usize]
    }

    pub fn lambda(&self, j: i64, k: i64, l: i64) -> Complex64 {
        (0..self.n() as i64)
            .map(|a| {
                self.value(a)
                    * self.value(a + j).conj()
                    * self.value(a + k)
                    * self.value(a + l).conj()
            })
            .sum()
    }
}

pub fn hj_decomposition(a: &TernarySequence) -> Result<DecompositionReport> {
    hj_decomposition_with_limit(a, HJ_DEFAULT_LIMIT)
}

pub fn hj_decomposition_with_limit(
    a: &TernarySequence,
    limit: usize,
) -> Result<DecompositionReport> {
    let n = a.len();
    if n.is_multiple_of(2) {
        return Err(Error::EvenLength(n));
    }
    if n > limit {
        return Err(Error::CostGuard { n, limit });
    }
    let cache = SpectralCache::new(a);
    let nf = n as f64;
    let n5 = nf.powi(5);
    let one = Complex64::new(1.0, 0.0);

    let main = cache.lambda(0, 0, 0) * ((2.0 * nf * nf + 1.0) / (3.0 * n5));

    let mut b = Complex64::new(0.0, 0.0);
    let mut d = Complex64::new(0.0, 0.0);
    for k in 1..n as i64 {
        let z = cache.root(k);
        let w = one / (one - z);
        let l00k = cache.lambda(0, 0, k);
        b += (l00k + z * l00k.conj()) * w * w * (one + z);
        d += (cache.lambda(0, k, k) * 2.0 + cache.root(-k) * cache.lambda(k, 0, k))
            / (one - z).norm_sqr();
    }
    b *= 2.0 / n5;
    d *= 4.0 / n5;
    let c = c_term_factored(&cache) * (-2.0 / n5);

    let total = main + b + c + d;
    let imag_residual = [main, b, c, d]
        .iter()
        .map(|z| z.im.abs())
        .fold(0.0, f64::max);
    Ok(DecompositionReport {
        main_term: main.re,
        b: b.re,
        c: c.re,
        d: d.re,
        total: total.re,
        imag_residual,
    })
}

/// `sum_{k != l} (4 z^k L(0,k,l) + L(k,0,l) + z^(k+l) conj L(k,0,l)) / ((1 - z^k)(1 - z^l))`
/// without the `-2/n^5` prefactor.
///
/// Each `Lambda` is a sum over `a`, so for fixed `a` the double sum over
/// `k, l` splits into a product of single sums minus the `k = l` diagonal.
fn c_term_factored(cache: &SpectralCache) -> Complex64 {
    let n = cache.n() as i64;
    let one = Complex64::new(1.0, 0.0);
    let w: Vec<Complex64> = (0..n)
        .map(|k| {
            if k == 0 {
                Complex64::new(0.0, 0.0)
            } else {
                one / (one - cache.root(k))
            }
        })
        .collect();

    let mut acc = Complex64::new(0.0, 0.0);
    for a in 0..n {
        let mut p = Complex64::new(0.0, 0.0);
        let mut q = Complex64::new(0.0, 0.0);
        let mut diag1 = Complex64::new(0.0, 0.0);
        let mut diag2 = Complex64::new(0.0, 0.0);
        let mut diag3 = Complex64::new(0.0, 0.0);
        for k in 1..n {
            let z = cache.root(k);
            let v = cache.value(a + k);
            let wk = w[k as usize];
            let w2 = wk * wk;
            p += z * v * wk;
            q += v.conj() * wk;
            diag1 += z * v.norm_sqr() * w2;
            diag2 += v.conj() * v.conj() * w2;
            diag3 += z * z * v * v * w2;
        }
        let x = cache.value(a);
        acc += (p * q - diag1) * (4.0 * x.norm_sqr())
            + x * x * (q * q - diag2)
            + x.conj() * x.conj() * (p * p - diag3);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norms::l4_fourth_power_exact;
    use crate::numbers::factor_odd_squarefree;
    use crate::sequences::{
        character_polynomial, complete, completion_constant, rotate, Rotation, SequenceKind,
    };
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// The double sum straight from its definition, `O(n^3)`.
    fn c_term_direct(cache: &SpectralCache) -> Complex64 {
        let n = cache.n() as i64;
        let one = Complex64::new(1.0, 0.0);
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 1..n {
            for l in 1..n {
                if k == l {
                    continue;
                }
                let (zk, zl) = (cache.root(k), cache.root(l));
                let lk0l = cache.lambda(k, 0, l);
                acc += (zk * cache.lambda(0, k, l) * 4.0 + lk0l + zk * zl * lk0l.conj())
                    / ((one - zk) * (one - zl));
            }
        }
        acc
    }

    fn assert_matches_exact(a: &TernarySequence) {
        let n = a.len() as f64;
        let exact = l4_fourth_power_exact(a) as f64 / (n * n);
        let hj = hj_decomposition(a).unwrap();
        assert!(
            (hj.total - exact).abs() <= 1e-8 * exact,
            "n={n}: {} vs {exact}",
            hj.total
        );
        assert!((hj.main_term + hj.b + hj.c + hj.d - hj.total).abs() < 1e-12 * exact.max(1.0));
    }

    #[test]
    fn examples() {
        let a = TernarySequence::new(vec![1, 1, 1], SequenceKind::Other).unwrap();
        let hj = hj_decomposition(&a).unwrap();
        assert!((hj.total - 19.0 / 9.0).abs() < 1e-12);

        let m5 = factor_odd_squarefree(5).unwrap();
        let x = complete(&character_polynomial(&m5), &completion_constant(&m5, 1)).unwrap();
        assert_matches_exact(&x);

        let m15 = factor_odd_squarefree(15).unwrap();
        assert_matches_exact(&rotate(&character_polynomial(&m15), Rotation::quarter()));
    }

    #[test]
    fn factored_c_matches_direct_sum() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in (1..=31).step_by(2) {
            let a = TernarySequence::new(
                (0..n).map(|_| rng.gen_range(-1i8..=1)).collect(),
                SequenceKind::Other,
            )
            .unwrap();
            let cache = SpectralCache::new(&a);
            let fast = c_term_factored(&cache);
            let slow = c_term_direct(&cache);
            assert!((fast - slow).norm() <= 1e-9 * slow.norm().max(1.0), "n={n}");
        }
    }

    #[test]
    fn random_sequences_match_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..60 {
            let n = 2 * rng.gen_range(0..128) + 1;
            let a = TernarySequence::new(
                (0..n).map(|_| rng.gen_range(-1i8..=1)).collect(),
                SequenceKind::Other,
            )
            .unwrap();
            if a.weight() == 0 {
                continue;
            }
            assert_matches_exact(&a);
        }
    }

    #[test]
    fn guards() {
        let even = TernarySequence::new(vec![1, 1], SequenceKind::Other).unwrap();
        assert_eq!(hj_decomposition(&even), Err(Error::EvenLength(2)));
        let long = TernarySequence::new(vec![1; 257], SequenceKind::Other).unwrap();
        assert_eq!(
            hj_decomposition(&long),
            Err(Error::CostGuard { n: 257, limit: 255 })
        );
        assert!(hj_decomposition_with_limit(&long, 257).is_ok());
    }
}
