//! The identity suite: every closed form checked against its direct
//! evaluation, plus the norm inequalities, over a list of moduli.

use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;

use crate::norms::identities::{
    allones_spike_check, character_circle_bound, exp_sum_identity_check, interpolation_bound_check,
    l4_l2_max_check, prop4_from_norms, spectral_values_j, spectral_values_j_direct,
};
use crate::norms::{
    hj_decomposition, l4_fourth_power_dft, l4_fourth_power_exact, unit_circle_max, HJ_DEFAULT_LIMIT,
};
use crate::numbers::{gauss_i_exponent, i_pow, jacobi, ramanujan_sum, FactoredModulus};
use crate::sequences::{
    character_polynomial, complete, completion_all_ones, completion_constant,
    completion_jacobi_product, completion_two_prime_for, rotate, Rotation, TernarySequence,
};

/// Largest modulus swept by the exponential-sum identity regardless of the
/// list (every `n` from 2, not only admissible ones).
pub const EXP_SUM_EXHAUSTIVE_UPTO: u64 = 201;

const ABS_TOL: f64 = 1e-9;
const PATH_TOL: f64 = 1e-9;
const HJ_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityTally {
    pub name: &'static str,
    pub checked: u64,
    pub failed: u64,
}

#[derive(Debug, Clone, Default)]
pub struct VerifyReport {
    pub tallies: Vec<IdentityTally>,
    /// One line per failed check with the offending arguments.
    pub failures: Vec<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn tally(&self, name: &str) -> Option<&IdentityTally> {
        self.tallies.iter().find(|t| t.name == name)
    }

    fn record(&mut self, name: &'static str, ok: bool, detail: impl FnOnce() -> String) {
        let idx = match self.tallies.iter().position(|t| t.name == name) {
            Some(i) => i,
            None => {
                self.tallies.push(IdentityTally {
                    name,
                    checked: 0,
                    failed: 0,
                });
                self.tallies.len() - 1
            }
        };
        self.tallies[idx].checked += 1;
        if !ok {
            self.tallies[idx].failed += 1;
            self.failures.push(format!("{name}: {}", detail()));
        }
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.tallies {
            let status = if t.failed == 0 { "ok" } else { "FAILED" };
            writeln!(
                f,
                "{:<16} {:>9} checked {:>6} failed  {status}",
                t.name, t.checked, t.failed
            )?;
        }
        Ok(())
    }
}

fn reference_symbol(j: i64, n: u64) -> i8 {
    jacobi(j, n).expect("odd modulus")
}

/// Run the whole suite with the library's Jacobi symbol.
pub fn verify_identities(moduli: &[FactoredModulus]) -> VerifyReport {
    verify_identities_with(moduli, &reference_symbol)
}

/// Run the suite with `symbol` standing in for `(j | n)` in the Gauss-sum and
/// character-sum checks. Used to confirm that a broken symbol is caught.
pub fn verify_identities_with(
    moduli: &[FactoredModulus],
    symbol: &(dyn Fn(i64, u64) -> i8 + Sync),
) -> VerifyReport {
    let mut report = VerifyReport::default();
    for m in moduli {
        check_arithmetic(&mut report, m, symbol);
        check_spectral(&mut report, m);
        check_norms(&mut report, m);
    }
    for n in 2..=EXP_SUM_EXHAUSTIVE_UPTO {
        check_exp_sum(&mut report, n);
    }
    for m in moduli.iter().filter(|m| m.n() > EXP_SUM_EXHAUSTIVE_UPTO) {
        check_exp_sum(&mut report, m.n());
    }
    report
}

fn check_arithmetic(
    report: &mut VerifyReport,
    m: &FactoredModulus,
    symbol: &(dyn Fn(i64, u64) -> i8 + Sync),
) {
    let n = m.n();
    let ni = n as i64;
    let nf = n as f64;
    let sqrt_n = nf.sqrt();
    let units: Vec<i64> = (1..ni).filter(|&k| m.gcd_with(k) == 1).collect();
    let symbols: Vec<i8> = (0..ni).map(|l| symbol(l, n)).collect();

    for u in 0..ni {
        let direct: f64 = units
            .iter()
            .map(|&k| (TAU * ((k * u) % ni) as f64 / nf).cos())
            .sum();
        let closed = ramanujan_sum(u, m);
        report.record(
            "ramanujan",
            (direct - closed as f64).abs() <= ABS_TOL * nf,
            || format!("n={n} u={u}: direct {direct} vs {closed}"),
        );

        let direct: Complex64 = (0..ni)
            .map(|l| {
                let angle = TAU * ((u * l) % ni) as f64 / nf;
                Complex64::from_polar(1.0, angle) * f64::from(symbols[l as usize])
            })
            .sum();
        let closed = i_pow(gauss_i_exponent(n)) * f64::from(symbols[u as usize]) * sqrt_n;
        report.record(
            "gauss",
            (direct - closed).norm() <= ABS_TOL * sqrt_n,
            || format!("n={n} j={u}: direct {direct} vs {closed}"),
        );

        let direct: i64 = (0..ni)
            .map(|j| i64::from(symbols[j as usize]) * i64::from(symbols[((j + u) % ni) as usize]))
            .sum();
        let closed = ramanujan_sum(u, m);
        report.record("character_sum", direct == closed, || {
            format!("n={n} u={u}: direct {direct} vs {closed}")
        });
    }
}

const ROTATIONS: [(i64, i64); 4] = [(0, 1), (1, 4), (-1, 3), (1, 2)];

fn rotations() -> impl Iterator<Item = Rotation> {
    ROTATIONS
        .iter()
        .map(|&(p, q)| Rotation::new(p, q).expect("nonzero denominator"))
}

fn check_spectral(report: &mut VerifyReport, m: &FactoredModulus) {
    let n = m.n();
    let tol = ABS_TOL * (n as f64).sqrt();
    for rot in rotations() {
        let closed = spectral_values_j(m, rot);
        let direct = spectral_values_j_direct(m, rot);
        for (j, (a, b)) in closed.iter().zip(&direct).enumerate() {
            report.record("spectral", (a - b).norm() <= tol, || {
                format!("n={n} r={rot} j={j}: closed {a} vs direct {b}")
            });
        }
    }
    let tol = ABS_TOL * n as f64;
    for s in allones_spike_check(m) {
        report.record("allones_spike", s.error() <= tol, || {
            format!("n={n} u={}: {} vs {}", s.u, s.value, s.expected)
        });
    }
}

fn check_exp_sum(report: &mut VerifyReport, n: u64) {
    let tol = ABS_TOL * (n * n) as f64;
    let ni = n as i64;
    for j in -ni..=ni {
        let c = exp_sum_identity_check(j, n).expect("in range");
        report.record("exp_sum", c.error() <= tol && c.imag.abs() <= tol, || {
            format!(
                "n={n} j={j}: lhs {} (imag {}) vs rhs {}",
                c.lhs, c.imag, c.rhs
            )
        });
    }
}

/// The named completions the suite exercises.
fn named_completions(m: &FactoredModulus) -> Vec<(&'static str, TernarySequence)> {
    let mut out = vec![
        ("all_ones", completion_all_ones(m)),
        ("jacobi_product", completion_jacobi_product(m)),
        ("plus_one", completion_constant(m, 1)),
        ("minus_one", completion_constant(m, -1)),
    ];
    if m.omega() == 2 {
        out.push((
            "two_prime",
            completion_two_prime_for(m).expect("two primes"),
        ));
    }
    out
}

fn check_paths(report: &mut VerifyReport, n: u64, what: &str, a: &TernarySequence, l4: i128) {
    let dft = l4_fourth_power_dft(a);
    let rel = (dft - l4 as f64).abs() / (l4 as f64);
    report.record("l4_paths", rel <= PATH_TOL, || {
        format!("n={n} {what}: exact {l4} vs dft {dft}")
    });
    if a.len() <= HJ_DEFAULT_LIMIT && a.len() % 2 == 1 {
        let target = l4 as f64 / (n * n) as f64;
        match hj_decomposition(a) {
            Ok(d) => {
                let rel = (d.total - target).abs() / target;
                report.record("hj_decomposition", rel <= HJ_TOL, || {
                    format!("n={n} {what}: total {} vs {target}", d.total)
                });
            }
            Err(e) => report.record("hj_decomposition", false, || format!("n={n} {what}: {e}")),
        }
    }
    let (lhs, rhs) = l4_l2_max_check(a);
    report.record("l4_l2_max", lhs <= rhs, || {
        format!("n={n} {what}: {lhs} > {rhs}")
    });
}

fn check_norms(report: &mut VerifyReport, m: &FactoredModulus) {
    let n = m.n();
    let j = character_polynomial(m);
    let completions = named_completions(m);
    let psi3 = (m.psi() as i128).pow(3);
    for rot in rotations() {
        let jr = rotate(&j, rot);
        let l4_j = l4_fourth_power_exact(&jr);
        check_paths(report, n, &format!("J r={rot}"), &jr, l4_j);

        let bound = character_circle_bound(m.len());
        let max = unit_circle_max(&jr);
        report.record("interpolation", max <= bound, || {
            format!("n={n} r={rot}: max |J_r| {max} > {bound}")
        });

        for (label, v) in &completions {
            let x = rotate(&complete(&j, v).expect("disjoint supports"), rot);
            let l4_x = l4_fourth_power_exact(&x);
            let l4_v = l4_fourth_power_exact(&rotate(v, rot));
            check_paths(report, n, &format!("J+V({label}) r={rot}"), &x, l4_x);

            if n > 2 {
                let c = interpolation_bound_check(&x).expect("n > 2");
                report.record("interpolation", c.holds(), || {
                    format!(
                        "n={n} r={rot} {label}: {} > {}",
                        c.max_circle_estimate, c.bound
                    )
                });
            }
            let p4 = prop4_from_norms(m, l4_j, l4_v, l4_x);
            report.record("prop4", p4.holds(), || {
                format!("n={n} r={rot} {label}: lhs {} >= rhs {}", p4.lhs, p4.rhs)
            });
            report.record("norm_v_bound", l4_v <= psi3, || {
                format!("n={n} r={rot} {label}: ||V_r||_4^4 = {l4_v} > psi^3 = {psi3}")
            });
        }
    }
}
