//! Exact aperiodic autocorrelations and the exact `L4` norm.
//!
//! `||A||_4^4 = c_0^2 + 2 sum_{u>=1} c_u^2` for a real sequence, so the
//! integer profile is the ground truth for every spectral computation.

use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};
use crate::sequences::TernarySequence;

/// Maximum allowed distance from the nearest integer before rounding an
/// FFT-computed autocorrelation.
pub const FFT_ROUNDING_GUARD: f64 = 1e-3;

/// Below this length the direct quadratic loop is faster than the FFT.
pub const DIRECT_CUTOFF: usize = 192;

/// Exact aperiodic autocorrelations `c_u = sum_j a_j a_(j+u)`, `0 <= u < n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutocorrelationProfile {
    c: Vec<i64>,
}

impl AutocorrelationProfile {
    pub fn n(&self) -> usize {
        self.c.len()
    }

    pub fn values(&self) -> &[i64] {
        &self.c
    }

    /// `c_0`, which is `||A||_2^2`.
    pub fn l2sq(&self) -> i64 {
        self.c.first().copied().unwrap_or(0)
    }

    /// `c_0^2 + 2 sum_{u>=1} c_u^2`.
    ///
    /// Accumulated in 128 bits: the sum is bounded by `n^3`, which leaves
    /// 64-bit range once `n > 2^21`.
    pub fn l4_fourth_power(&self) -> i128 {
        let Some((&c0, rest)) = self.c.split_first() else {
            return 0;
        };
        let off: i128 = rest.iter().map(|&c| (c as i128) * (c as i128)).sum();
        (c0 as i128) * (c0 as i128) + 2 * off
    }
}

/// Reference `O(n^2)` autocorrelation.
pub fn autocorrelation_direct(a: &TernarySequence) -> AutocorrelationProfile {
    let x = a.coeffs();
    let n = x.len();
    let c = (0..n)
        .map(|u| {
            x[..n - u]
                .iter()
                .zip(&x[u..])
                .map(|(&p, &q)| i64::from(p * q))
                .sum()
        })
        .collect();
    AutocorrelationProfile { c }
}

/// `O(n log n)` autocorrelation through a zero-padded power-of-two FFT,
/// rounded to the nearest integers.
///
/// Fails with [`Error::FftResidual`] if any value is further than
/// [`FFT_ROUNDING_GUARD`] from an integer before rounding.
pub fn autocorrelation_fft(a: &TernarySequence) -> Result<AutocorrelationProfile> {
    let n = a.len();
    if n == 0 {
        return Ok(AutocorrelationProfile { c: Vec::new() });
    }
    let size = (2 * n - 1).next_power_of_two();
    let mut planner = FftPlanner::<f64>::new();
    let forward: Arc<dyn Fft<f64>> = planner.plan_fft_forward(size);
    let inverse: Arc<dyn Fft<f64>> = planner.plan_fft_inverse(size);

    let mut buf: Vec<Complex64> = a
        .coeffs()
        .iter()
        .map(|&c| Complex64::new(f64::from(c), 0.0))
        .chain(std::iter::repeat(Complex64::new(0.0, 0.0)))
        .take(size)
        .collect();
    forward.process(&mut buf);
    for z in buf.iter_mut() {
        *z = Complex64::new(z.norm_sqr(), 0.0);
    }
    inverse.process(&mut buf);

    let scale = size as f64;
    let mut worst = 0.0f64;
    let c = buf[..n]
        .iter()
        .map(|z| {
            let v = z.re / scale;
            let r = v.round();
            worst = worst.max((v - r).abs()).max((z.im / scale).abs());
            r as i64
        })
        .collect();
    if worst >= FFT_ROUNDING_GUARD {
        return Err(Error::FftResidual(worst));
    }
    Ok(AutocorrelationProfile { c })
}

/// Autocorrelation by the fastest reliable route: direct for short
/// sequences, FFT otherwise, falling back to direct if the rounding guard
/// trips.
pub fn autocorrelation(a: &TernarySequence) -> AutocorrelationProfile {
    if a.len() <= DIRECT_CUTOFF {
        return autocorrelation_direct(a);
    }
    autocorrelation_fft(a).unwrap_or_else(|_| autocorrelation_direct(a))
}

/// Unnormalised `||A||_4^4` as an exact integer.
pub fn l4_fourth_power_exact(a: &TernarySequence) -> i128 {
    autocorrelation(a).l4_fourth_power()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::SequenceKind;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn seq(v: &[i8]) -> TernarySequence {
        TernarySequence::new(v.to_vec(), SequenceKind::Other).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(
            autocorrelation_direct(&seq(&[1, 1, 1])).values(),
            &[3, 2, 1]
        );
        assert_eq!(
            autocorrelation_direct(&seq(&[1, 1, -1])).values(),
            &[3, 0, -1]
        );
        assert_eq!(l4_fourth_power_exact(&seq(&[1, 1, 1])), 19);
        assert_eq!(l4_fourth_power_exact(&seq(&[1, 1, -1])), 11);
        assert_eq!(l4_fourth_power_exact(&seq(&[1])), 1);
        assert_eq!(l4_fourth_power_exact(&seq(&[])), 0);
    }

    #[test]
    fn fft_matches_direct_on_random_sequences() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..500 {
            let n = rng.gen_range(1..=4096);
            let a = seq(&(0..n).map(|_| rng.gen_range(-1i8..=1)).collect::<Vec<_>>());
            let direct = autocorrelation_direct(&a);
            assert_eq!(autocorrelation_fft(&a).unwrap(), direct, "n={n}");
        }
    }

    #[test]
    fn profile_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..100 {
            let n = rng.gen_range(1..300);
            let a = seq(&(0..n).map(|_| rng.gen_range(-1i8..=1)).collect::<Vec<_>>());
            let p = autocorrelation(&a);
            assert_eq!(p.l2sq() as usize, a.weight());
            for (u, &c) in p.values().iter().enumerate() {
                assert!(c.unsigned_abs() as usize <= n - u);
            }
        }
    }
}
