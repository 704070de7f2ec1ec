//! Polynomial values on the unit circle.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::sequences::TernarySequence;

/// `sum_k x_k e^(+2 pi i j k / size)` for `j = 0..size`, with `x` zero-padded.
fn positive_dft(x: impl Iterator<Item = f64>, size: usize) -> Vec<Complex64> {
    let mut buf: Vec<Complex64> = x
        .map(|v| Complex64::new(v, 0.0))
        .chain(std::iter::repeat(Complex64::new(0.0, 0.0)))
        .take(size)
        .collect();
    if size > 0 {
        FftPlanner::<f64>::new()
            .plan_fft_inverse(size)
            .process(&mut buf);
    }
    buf
}

/// `A(zeta_n^j)` for `j = 0..n`, where `n` is the sequence length.
pub fn values_at_roots(a: &TernarySequence) -> Vec<Complex64> {
    let n = a.len();
    positive_dft(a.coeffs().iter().map(|&c| f64::from(c)), n)
}

/// `A(-zeta_n^j)` for `j = 0..n`.
pub fn values_at_negated_roots(a: &TernarySequence) -> Vec<Complex64> {
    let n = a.len();
    positive_dft(
        a.coeffs().iter().enumerate().map(|(k, &c)| {
            if k % 2 == 0 {
                f64::from(c)
            } else {
                -f64::from(c)
            }
        }),
        n,
    )
}

/// `A(e^(2 pi i t / points))` for `t = 0..points`; needs `points >= n`.
pub fn values_on_grid(a: &TernarySequence, points: usize) -> Vec<Complex64> {
    assert!(points >= a.len(), "grid must have at least n points");
    positive_dft(a.coeffs().iter().map(|&c| f64::from(c)), points)
}

/// Max of `|A|` over `8n` equally spaced points of the unit circle. This
/// under-estimates the true maximum.
pub fn unit_circle_max(a: &TernarySequence) -> f64 {
    let points = 8 * a.len().max(1);
    values_on_grid(a, points)
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

/// `||A||_4^4 = (1/2n) (sum_j |A(zeta_n^j)|^4 + sum_j |A(-zeta_n^j)|^4)`,
/// valid for degree at most `n - 1`.
pub fn l4_fourth_power_dft(a: &TernarySequence) -> f64 {
    let n = a.len();
    if n == 0 {
        return 0.0;
    }
    let fourth = |v: Vec<Complex64>| -> f64 { v.iter().map(|z| z.norm_sqr().powi(2)).sum() };
    (fourth(values_at_roots(a)) + fourth(values_at_negated_roots(a))) / (2 * n) as f64
}

/// `zeta_n^k` for `k = 0..n`.
pub fn roots_of_unity(n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64))
        .collect()
}

/// Direct `O(n)` evaluation of `A(zeta_n^j)` using an exact index reduction
/// of `j k mod n` into a root table.
pub fn evaluate_at_root_direct(a: &TernarySequence, roots: &[Complex64], j: i64) -> Complex64 {
    let n = roots.len() as i64;
    a.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(k, &c)| roots[(j * k as i64).rem_euclid(n) as usize] * f64::from(c))
        .sum()
}
