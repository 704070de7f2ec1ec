use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::norms::autocorrelation::autocorrelation;
use crate::norms::spectrum::l4_fourth_power_dft;
use crate::sequences::{rotate, Rotation, TernarySequence};

/// Merit factor `F = ||A||_2^4 / (||A||_4^4 - ||A||_2^4)` from the exact
/// integer norms. A zero denominator is reported as
/// [`Error::ZeroDenominator`].
pub fn merit_factor(a: &TernarySequence) -> Result<f64> {
    let profile = autocorrelation(a);
    merit_from_norms(profile.l2sq() as u64, profile.l4_fourth_power())
}

pub fn merit_from_norms(l2sq: u64, l4p4: i128) -> Result<f64> {
    let l2p4 = (l2sq as i128) * (l2sq as i128);
    let denom = l4p4 - l2p4;
    if denom == 0 {
        return Err(Error::ZeroDenominator);
    }
    Ok(l2p4 as f64 / denom as f64)
}

/// The limiting merit-factor profile `f(r) = 1 / (1/6 + 8 (|r| - 1/4)^2)` on
/// `(-1/2, 1/2]`, extended with period 1. Evaluated exactly in rationals and
/// rounded once.
pub fn asymptotic_f(rot: Rotation) -> f64 {
    let r = Ratio::new(rot.numer() as i128, rot.denom() as i128);
    let half = Ratio::new(1i128, 2);
    // r - ceil(r - 1/2) lies in (-1/2, 1/2]
    let reduced = r - (r - half).ceil();
    let t = reduced.abs() - Ratio::new(1, 4);
    let inv = Ratio::new(1i128, 6) + t * t * 8;
    inv.recip().to_f64().expect("finite rational")
}

/// Everything measured about one rotated polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct MeritReport {
    pub n: usize,
    pub rotation: Rotation,
    pub completion: String,
    pub seed: Option<u64>,
    pub l2sq: u64,
    pub l4p4_exact: i128,
    pub l4p4_dft: f64,
    pub merit: f64,
    pub f_of_r: f64,
    /// `|1/F - (phi/n)^2 / F(J_r)|`, set for completions.
    pub gap: Option<f64>,
}

impl MeritReport {
    /// Rotate `a` by `rot` and measure it on both the exact and spectral
    /// paths.
    pub fn compute(
        a: &TernarySequence,
        rot: Rotation,
        completion: impl Into<String>,
        seed: Option<u64>,
    ) -> Result<Self> {
        let rotated = rotate(a, rot);
        let profile = autocorrelation(&rotated);
        let l2sq = profile.l2sq() as u64;
        let l4p4_exact = profile.l4_fourth_power();
        let merit = merit_from_norms(l2sq, l4p4_exact)?;
        Ok(MeritReport {
            n: a.len(),
            rotation: rot,
            completion: completion.into(),
            seed,
            l2sq,
            l4p4_exact,
            l4p4_dft: l4_fourth_power_dft(&rotated),
            merit,
            f_of_r: asymptotic_f(rot),
            gap: None,
        })
    }

    /// Fill in the gap against the rotated character polynomial, given its
    /// exact `||J_r||_4^4` and `phi(n)`.
    pub fn with_character_gap(mut self, l4_jr: i128, phi: u64) -> Result<Self> {
        let inv_fj = 1.0 / merit_from_norms(phi, l4_jr)?;
        let ratio = phi as f64 / self.n as f64;
        self.gap = Some((1.0 / self.merit - ratio * ratio * inv_fj).abs());
        Ok(self)
    }

    /// `|F - f(r)|`.
    pub fn abs_gap_to_limit(&self) -> f64 {
        (self.merit - self.f_of_r).abs()
    }

    /// `|1/F - 1/f(r)|`.
    pub fn inverse_gap_to_limit(&self) -> f64 {
        (1.0 / self.merit - 1.0 / self.f_of_r).abs()
    }

    /// Relative disagreement between the exact and spectral `L4` paths.
    pub fn path_discrepancy(&self) -> f64 {
        let exact = self.l4p4_exact as f64;
        (self.l4p4_dft - exact).abs() / exact.max(1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::SequenceKind;

    fn seq(v: &[i8]) -> TernarySequence {
        TernarySequence::new(v.to_vec(), SequenceKind::Other).unwrap()
    }

    fn rot(s: &str) -> Rotation {
        s.parse().unwrap()
    }

    #[test]
    fn merit_examples() {
        assert_eq!(merit_factor(&seq(&[1, 1, -1])).unwrap(), 4.5);
        assert_eq!(merit_factor(&seq(&[1, 1, 1])).unwrap(), 0.9);
        assert_eq!(merit_factor(&seq(&[1])), Err(Error::ZeroDenominator));
    }

    #[test]
    fn f_examples() {
        assert_eq!(asymptotic_f(rot("1/4")), 6.0);
        assert!((asymptotic_f(rot("0")) - 1.5).abs() < 1e-15);
        assert_eq!(asymptotic_f(rot("5/4")), 6.0);
        assert_eq!(asymptotic_f(rot("-1/4")), 6.0);
        assert_eq!(asymptotic_f(rot("1/2")), asymptotic_f(rot("-1/2")));
        assert!((asymptotic_f(rot("1/2")) - 1.5).abs() < 1e-15);
    }

    proptest::proptest! {
        #[test]
        fn f_is_periodic_even_and_bounded(p in -10_000i64..10_000, q in 1i64..5000, k in -5i64..5) {
            let r = Rotation::new(p, q).unwrap();
            let f = asymptotic_f(r);
            proptest::prop_assert!((1.5..=6.0).contains(&f));
            let shifted = Rotation::new(p + k * q, q).unwrap();
            proptest::prop_assert_eq!(f, asymptotic_f(shifted));
            if 2 * p.abs() < q {
                proptest::prop_assert_eq!(f, asymptotic_f(Rotation::new(-p, q).unwrap()));
            }
        }
    }
}
