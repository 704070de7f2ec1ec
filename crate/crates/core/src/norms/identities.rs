//! Closed forms and inequalities paired with their direct evaluations.
//!
//! Each check returns both sides so callers can apply their own tolerance
//! and report the offending values.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::norms::autocorrelation::l4_fourth_power_exact;
use crate::norms::spectrum::{
    evaluate_at_root_direct, roots_of_unity, unit_circle_max, values_at_roots,
};
use crate::numbers::{gauss_i_exponent, i_pow, ramanujan_sum, FactoredModulus};
use crate::sequences::{
    character_polynomial, completion_all_ones, rotate, Rotation, SequenceKind, TernarySequence,
};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpSumCheck {
    pub lhs: f64,
    pub rhs: f64,
    /// Imaginary part of the left-hand sum, which should vanish.
    pub imag: f64,
}

impl ExpSumCheck {
    pub fn error(&self) -> f64 {
        (self.lhs - self.rhs).abs()
    }
}

/// `sum_{k=1}^{n-1} zeta_n^(jk) / |1 - zeta_n^k|^2` against
/// `(n^2/2)(|j|/n - 1/2)^2 - (n^2 + 2)/24`, for `|j| <= n`.
pub fn exp_sum_identity_check(j: i64, n: u64) -> Result<ExpSumCheck> {
    if n < 2 || j.unsigned_abs() > n {
        return Err(Error::Precondition(format!(
            "exp-sum identity needs n >= 2 and |j| <= n, got j = {j}, n = {n}"
        )));
    }
    let roots = roots_of_unity(n as usize);
    let one = Complex64::new(1.0, 0.0);
    let lhs: Complex64 = (1..n as i64)
        .map(|k| {
            let z = roots[(j * k).rem_euclid(n as i64) as usize];
            z / (one - roots[k as usize]).norm_sqr()
        })
        .sum();
    let nf = n as f64;
    let t = j.unsigned_abs() as f64 / nf - 0.5;
    let rhs = nf * nf / 2.0 * t * t - (nf * nf + 2.0) / 24.0;
    Ok(ExpSumCheck {
        lhs: lhs.re,
        rhs,
        imag: lhs.im,
    })
}

/// Closed-form `J_r(zeta_n^j) = i^((n-1)^2/4) zeta_n^(-jR) (j | n) sqrt(n)`
/// for `j = 0..n`, with `R = floor(n r)`.
pub fn spectral_values_j(m: &FactoredModulus, rot: Rotation) -> Vec<Complex64> {
    let n = m.len();
    let roots = roots_of_unity(n);
    let unit = i_pow(gauss_i_exponent(m.n())) * (n as f64).sqrt();
    let shift = rot.shift(n);
    (0..n as i64)
        .map(|j| {
            let twist = roots[(-j * shift).rem_euclid(n as i64) as usize];
            unit * twist * f64::from(m.symbol(j))
        })
        .collect()
}

/// Direct evaluations of `J_r` at every `n`-th root of unity.
pub fn spectral_values_j_direct(m: &FactoredModulus, rot: Rotation) -> Vec<Complex64> {
    let jr = rotate(&character_polynomial(m), rot);
    let roots = roots_of_unity(m.len());
    (0..m.len() as i64)
        .map(|j| evaluate_at_root_direct(&jr, &roots, j))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterpolationCheck {
    /// Grid maximum of `|A|` on the unit circle (a lower bound on the true max).
    pub max_circle_estimate: f64,
    /// `2 log n * max_k |A(zeta_n^k)|`.
    pub bound: f64,
}

impl InterpolationCheck {
    pub fn holds(&self) -> bool {
        self.max_circle_estimate <= self.bound
    }
}

pub fn interpolation_bound_check(a: &TernarySequence) -> Result<InterpolationCheck> {
    let n = a.len();
    if n <= 2 {
        return Err(Error::Precondition(format!(
            "interpolation bound needs n > 2, got {n}"
        )));
    }
    let at_roots = values_at_roots(a)
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    Ok(InterpolationCheck {
        max_circle_estimate: unit_circle_max(a),
        bound: 2.0 * (n as f64).ln() * at_roots,
    })
}

/// `2 sqrt(n) log n`, the unit-circle bound for any rotation of `J`.
pub fn character_circle_bound(n: usize) -> f64 {
    2.0 * (n as f64).sqrt() * (n as f64).ln()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Prop4Check {
    pub lhs: f64,
    pub rhs: f64,
    /// Exact `||V_r||_4^4`.
    pub l4_v: i128,
    /// Exact `||J_r||_4^4`.
    pub l4_j: i128,
    /// Exact `||J_r + V_r||_4^4`.
    pub l4_x: i128,
}

impl Prop4Check {
    pub fn holds(&self) -> bool {
        self.lhs < self.rhs
    }
}

/// Right-hand side of the completion gap bound:
/// `8 p^(-1/2) n^(-1) (log n)^(3/2) ||V_r||_4^2 + 58 p^(-1/2) (log n)^(7/2)`.
pub fn proposition4_rhs(m: &FactoredModulus, l4_v: i128) -> f64 {
    let n = m.n() as f64;
    let ln = n.ln();
    let p = (m.p_min() as f64).sqrt();
    8.0 / p / n * ln.powf(1.5) * (l4_v as f64).sqrt() + 58.0 / p * ln.powf(3.5)
}

/// Compare `|1/F(J_r+V_r) - (phi/n)^2 / F(J_r) - ||V_r||_4^4 / n^2|` against
/// [`proposition4_rhs`]. The left side is formed from exact integers:
/// it equals `|L4(X) - n^2 - L4(J) + phi^2 - L4(V)| / n^2`.
pub fn proposition4_gap(
    m: &FactoredModulus,
    v: &TernarySequence,
    rot: Rotation,
) -> Result<Prop4Check> {
    if v.kind() != SequenceKind::Completion {
        return Err(Error::WrongKind {
            expected: "completion",
            found: v.kind().as_str(),
        });
    }
    v.check_support(m)?;
    let j = character_polynomial(m);
    let x = crate::sequences::complete(&j, v)?;
    let l4_j = l4_fourth_power_exact(&rotate(&j, rot));
    let l4_v = l4_fourth_power_exact(&rotate(v, rot));
    let l4_x = l4_fourth_power_exact(&rotate(&x, rot));
    Ok(prop4_from_norms(m, l4_j, l4_v, l4_x))
}

/// [`proposition4_gap`] from precomputed exact norms.
pub fn prop4_from_norms(m: &FactoredModulus, l4_j: i128, l4_v: i128, l4_x: i128) -> Prop4Check {
    let n2 = (m.n() as i128) * (m.n() as i128);
    let phi2 = (m.phi() as i128) * (m.phi() as i128);
    let num = l4_x - n2 - l4_j + phi2 - l4_v;
    Prop4Check {
        lhs: num.abs() as f64 / n2 as f64,
        rhs: proposition4_rhs(m, l4_v),
        l4_v,
        l4_j,
        l4_x,
    }
}

/// `sum_j (j | n)((j + u) | n)` directly, and `mu(n/g) phi(g)`.
pub fn character_sum_check(u: i64, m: &FactoredModulus) -> (i64, i64) {
    let n = m.n() as i64;
    let lhs = (0..n)
        .map(|j| i64::from(m.symbol(j)) * i64::from(m.symbol(j + u)))
        .sum();
    (lhs, ramanujan_sum(u, m))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpikeCheck {
    pub u: u64,
    pub value: Complex64,
    /// `phi(n) / (p_n - 1)`.
    pub expected: f64,
}

impl SpikeCheck {
    pub fn error(&self) -> f64 {
        (self.value - self.expected).norm()
    }
}

/// Evaluate the all-ones completion at `zeta_n^u` for each multiple `u` of
/// `n / p_n` in `(0, n)`.
pub fn allones_spike_check(m: &FactoredModulus) -> Vec<SpikeCheck> {
    let v = completion_all_ones(m);
    let roots = roots_of_unity(m.len());
    let step = m.n() / m.p_min();
    let expected = m.phi() as f64 / (m.p_min() - 1) as f64;
    (1..m.p_min())
        .map(|k| {
            let u = k * step;
            SpikeCheck {
                u,
                value: evaluate_at_root_direct(&v, &roots, u as i64),
                expected,
            }
        })
        .collect()
}

/// `(||A||_4^4, ||A||_2^2 * max|A|^2)` with the max taken over the `8n` grid
/// and widened by a relative `1e-6` to absorb rounding.
pub fn l4_l2_max_check(a: &TernarySequence) -> (f64, f64) {
    let l4 = l4_fourth_power_exact(a) as f64;
    let max = unit_circle_max(a);
    (l4, a.weight() as f64 * max * max * (1.0 + 1e-6))
}
