//! Theorem-level experiments over `(n, r)` grids.
//!
//! Every driver evaluates its cells in parallel on a dedicated thread pool,
//! then orders rows by `(n, r)` (stable within a cell), so the output does not
//! depend on the worker count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::experiments::config::{CompletionSpec, SweepConfig};
use crate::experiments::exhaustive::{completion_for_index, exhaustive_l4};
use crate::experiments::table::CsvRow;
use crate::norms::identities::{prop4_from_norms, proposition4_rhs};
use crate::norms::{l4_fourth_power_exact, merit_from_norms, MeritReport, Prop4Check};
use crate::numbers::FactoredModulus;
use crate::sequences::{
    character_polynomial, complete, completion_all_ones, completion_jacobi_product,
    completion_random, rotate, Rotation, TernarySequence, MAX_ENUMERATION_PSI,
};

/// A completion-gap check attached to the row it was computed for.
#[derive(Debug, Clone, PartialEq)]
pub struct Prop4Record {
    pub n: u64,
    pub rotation: Rotation,
    pub completion: String,
    pub seed: Option<u64>,
    pub check: Prop4Check,
}

/// Rows plus everything checked along the way.
#[derive(Debug, Clone, Default)]
pub struct SweepOutcome {
    pub rows: Vec<CsvRow>,
    pub prop4: Vec<Prop4Record>,
    /// Cells that failed to compute, and rows whose built-in checks failed.
    pub failures: Vec<String>,
}

impl SweepOutcome {
    pub fn is_clean(&self) -> bool {
        self.failures.is_empty()
    }

    fn absorb(&mut self, other: SweepOutcome) {
        self.rows.extend(other.rows);
        self.prop4.extend(other.prop4);
        self.failures.extend(other.failures);
    }
}

/// Per-cell context: the modulus, rotation, `J`, and the exact `||J_r||_4^4`.
struct Cell<'a> {
    m: &'a FactoredModulus,
    rot: Rotation,
    j: TernarySequence,
    l4_jr: i128,
    cfg: &'a SweepConfig,
    out: SweepOutcome,
}

impl<'a> Cell<'a> {
    fn new(cfg: &'a SweepConfig, m: &'a FactoredModulus, rot: Rotation) -> Self {
        let j = character_polynomial(m);
        let l4_jr = l4_fourth_power_exact(&rotate(&j, rot));
        Cell {
            m,
            rot,
            j,
            l4_jr,
            cfg,
            out: SweepOutcome::default(),
        }
    }

    fn tag(&self) -> String {
        format!("n={} r={}", self.m.n(), self.rot)
    }

    fn check_paths(&mut self, report: &MeritReport) {
        let d = report.path_discrepancy();
        if d > self.cfg.dft_tolerance {
            let msg = format!(
                "{} {}: exact and DFT L4 disagree ({} vs {}, rel {d:e})",
                self.tag(),
                report.completion,
                report.l4p4_exact,
                report.l4p4_dft
            );
            self.out.failures.push(msg);
        }
    }

    /// Measure `J_r + V_r` and record its completion-gap check.
    fn measure(
        &mut self,
        v: &TernarySequence,
        label: &str,
        seed: Option<u64>,
    ) -> Result<(MeritReport, Prop4Check)> {
        let x = complete(&self.j, v)?;
        let report = MeritReport::compute(&x, self.rot, label, seed)?
            .with_character_gap(self.l4_jr, self.m.phi())?;
        self.check_paths(&report);
        let l4_v = l4_fourth_power_exact(&rotate(v, self.rot));
        let check = prop4_from_norms(self.m, self.l4_jr, l4_v, report.l4p4_exact);
        if !check.holds() {
            let msg = format!(
                "{} {label}: completion gap bound violated (lhs {} >= rhs {})",
                self.tag(),
                check.lhs,
                check.rhs
            );
            self.out.failures.push(msg);
        }
        self.out.prop4.push(Prop4Record {
            n: self.m.n(),
            rotation: self.rot,
            completion: label.to_string(),
            seed,
            check,
        });
        Ok((report, check))
    }

    fn push(&mut self, row: CsvRow) {
        self.out.rows.push(row);
    }
}

fn run_cells<F>(cfg: &SweepConfig, f: F) -> Result<SweepOutcome>
where
    F: Fn(&mut Cell) -> Result<()> + Sync,
{
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    let cells: Vec<(&FactoredModulus, Rotation)> = cfg
        .moduli
        .iter()
        .flat_map(|m| cfg.rotations.iter().map(move |&r| (m, r)))
        .collect();
    let outputs: Vec<SweepOutcome> = pool.install(|| {
        cells
            .par_iter()
            .map(|&(m, rot)| {
                let mut cell = Cell::new(cfg, m, rot);
                if let Err(e) = f(&mut cell) {
                    let msg = format!("{}: {e}", cell.tag());
                    cell.out.failures.push(msg);
                }
                cell.out
            })
            .collect()
    });
    let mut all = SweepOutcome::default();
    for o in outputs {
        all.absorb(o);
    }
    all.rows.sort_by_key(|r| (r.n, r.rotation));
    Ok(all)
}

fn require(cfg: &SweepConfig, label: &str, theorem: u8) -> Result<()> {
    if cfg.has(label) {
        Ok(())
    } else {
        Err(Error::Config(format!(
            "theorem {theorem} sweep needs the `{label}` completion"
        )))
    }
}

/// Deterministic per-sample seeds: a ChaCha8 stream keyed by the master seed,
/// on a stream selected by `n`.
pub fn sample_seeds(master: u64, n: u64, count: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream(n);
    (0..count).map(|_| rng.gen()).collect()
}

/// `F(J_r)` against `f(r)`.
///
/// `aux1` is `| ||J_r||_4^4 / n^2 - 1 - 1/f(r) |`, `aux2` is `|1/F - 1/f(r)|`.
pub fn run_theorem2(cfg: &SweepConfig) -> Result<SweepOutcome> {
    run_cells(cfg, |cell| {
        let report = MeritReport::compute(&cell.j, cell.rot, "character", None)?;
        cell.check_paths(&report);
        let n2 = (cell.m.n() as f64).powi(2);
        let claim = (report.l4p4_exact as f64 / n2 - 1.0 - 1.0 / report.f_of_r).abs();
        let row =
            CsvRow::from_report("2", cell.m, &report).aux(claim, report.inverse_gap_to_limit());
        cell.push(row);
        Ok(())
    })
}

/// The all-ones completion.
///
/// `aux1` is `n / (2 p_n^3)`; `aux2` is the slack in
/// `1/F >= (phi/n)^2 / F(J_r) + (n / (2 p_n^3)) (phi/n)^4 - rhs`, which must be
/// nonnegative.
pub fn run_theorem3(cfg: &SweepConfig) -> Result<SweepOutcome> {
    require(cfg, "all_ones", 3)?;
    run_cells(cfg, |cell| {
        let v = completion_all_ones(cell.m);
        let (report, check) = cell.measure(&v, "all_ones", None)?;
        let (n, p, phi) = (
            cell.m.n() as f64,
            cell.m.p_min() as f64,
            cell.m.phi() as f64,
        );
        let spike = n / (2.0 * p.powi(3));
        let inv_fj = 1.0 / merit_from_norms(cell.m.phi(), cell.l4_jr)?;
        let ratio = phi / n;
        let bound =
            ratio * ratio * inv_fj + spike * ratio.powi(4) - proposition4_rhs(cell.m, check.l4_v);
        let slack = 1.0 / report.merit - bound;
        if slack < 0.0 {
            let msg = format!(
                "{}: all-ones lower bound violated (slack {slack})",
                cell.tag()
            );
            cell.out.failures.push(msg);
        }
        let row = CsvRow::from_report("3", cell.m, &report).aux(spike, slack);
        cell.push(row);
        Ok(())
    })
}

/// Largest merit factor over all completions (when `psi(n)` permits) or over
/// a seeded sample otherwise.
///
/// `aux1` is the margin `f(r) - max F`; `aux2` the number of completions seen.
pub fn run_theorem4_bound(cfg: &SweepConfig) -> Result<SweepOutcome> {
    run_cells(cfg, |cell| {
        let m = cell.m;
        let (report, count) = if m.psi() <= MAX_ENUMERATION_PSI {
            let summary = exhaustive_l4(m, cell.rot)?;
            let v = completion_for_index(m, summary.min_index);
            (cell.measure(&v, "exhaustive_max", None)?.0, summary.count)
        } else {
            let (master, count) = cell.cfg.random_params();
            let mut best: Option<MeritReport> = None;
            for seed in sample_seeds(master, m.n(), count) {
                let v = completion_random(m, seed);
                let (r, _) = cell.measure(&v, "sampled_max", Some(seed))?;
                if best.as_ref().is_none_or(|b| r.merit > b.merit) {
                    best = Some(r);
                }
            }
            let best =
                best.ok_or_else(|| Error::Config("sampled mode needs samples > 0".into()))?;
            (best, count as u64)
        };
        let margin = report.f_of_r - report.merit;
        let row = CsvRow::from_report("4", m, &report).aux(margin, count);
        cell.push(row);
        Ok(())
    })
}

/// Uniformly random completions.
///
/// One `random` row per sample (`aux1 = |1/F - 1/f(r)|`), then a
/// `random_summary` row with `F` = sample mean, `abs_gap` = max `|F - f(r)|`,
/// `aux1` = sample standard deviation and `aux2` = sample count.
pub fn run_theorem5(cfg: &SweepConfig) -> Result<SweepOutcome> {
    require(cfg, "random", 5)?;
    run_cells(cfg, |cell| {
        let (master, count) = cell.cfg.random_params();
        if count == 0 {
            return Err(Error::Config("random completion needs count > 0".into()));
        }
        let mut merits = Vec::with_capacity(count);
        let mut f_r = 0.0;
        for seed in sample_seeds(master, cell.m.n(), count) {
            let v = completion_random(cell.m, seed);
            let (report, _) = cell.measure(&v, "random", Some(seed))?;
            merits.push(report.merit);
            f_r = report.f_of_r;
            let row =
                CsvRow::from_report("5", cell.m, &report).aux(report.inverse_gap_to_limit(), "");
            cell.push(row);
        }
        let stats = SampleStats::of(&merits);
        let max_dev = merits.iter().map(|f| (f - f_r).abs()).fold(0.0, f64::max);
        let m = cell.m;
        cell.push(CsvRow {
            theorem: "5".into(),
            n: m.n(),
            p_min: m.p_min(),
            omega: m.omega(),
            phi: m.phi(),
            psi: m.psi(),
            rotation: cell.rot,
            completion: "random_summary".into(),
            seed: Some(master),
            l2sq: Some(m.n()),
            l4p4_exact: None,
            l4p4_dft: None,
            merit: stats.mean,
            f_r,
            abs_gap: max_dev,
            aux1: stats.std.to_string(),
            aux2: count.to_string(),
        });
        Ok(())
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleStats {
    pub mean: f64,
    /// Sample standard deviation (`n - 1` denominator; 0 for one sample).
    pub std: f64,
}

impl SampleStats {
    pub fn of(xs: &[f64]) -> Self {
        let k = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / k;
        let var = if xs.len() > 1 {
            xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (k - 1.0)
        } else {
            0.0
        };
        SampleStats {
            mean,
            std: var.sqrt(),
        }
    }
}

/// The Jacobi-product completion.
///
/// `aux1` is `||V_r||_4^4 / n^2`, `aux2` is `|1/F - 1/f(r)|`.
pub fn run_theorem6(cfg: &SweepConfig) -> Result<SweepOutcome> {
    require(cfg, "jacobi_product", 6)?;
    run_cells(cfg, |cell| {
        let v = completion_jacobi_product(cell.m);
        let (report, check) = cell.measure(&v, "jacobi_product", None)?;
        let n2 = (cell.m.n() as f64).powi(2);
        let row = CsvRow::from_report("6", cell.m, &report)
            .aux(check.l4_v as f64 / n2, report.inverse_gap_to_limit());
        cell.push(row);
        Ok(())
    })
}

/// All `2^psi(n)` completions.
///
/// Rows:
/// * `exhaustive_max` / `exhaustive_min`: the best and worst completion,
///   `aux1` = its sign string on the free indices, `aux2` = completion count;
/// * one row per named completion (`all_ones`, `jacobi_product`,
///   `two_prime` when `omega(n) = 2`, plus any other named spec in the
///   config), `aux1` = fraction of completions with strictly smaller `F`,
///   `aux2` = relative spread `(max F - min F) / max F`;
/// * with `histogram`, one `exhaustive_hist` row per distinct `L4` value,
///   `aux1` = multiplicity.
pub fn run_theorem7_exhaustive(cfg: &SweepConfig) -> Result<SweepOutcome> {
    for m in &cfg.moduli {
        if m.psi() > MAX_ENUMERATION_PSI {
            return Err(Error::Config(format!(
                "exhaustive enumeration needs psi(n) <= {MAX_ENUMERATION_PSI}, n = {} has psi = {}",
                m.n(),
                m.psi()
            )));
        }
    }
    run_cells(cfg, |cell| {
        let m = cell.m;
        let summary = exhaustive_l4(m, cell.rot)?;
        let max_f = merit_from_norms(m.n(), summary.min_l4)?;
        let min_f = merit_from_norms(m.n(), summary.max_l4)?;
        let spread = (max_f - min_f) / max_f;

        for (label, index) in [
            ("exhaustive_max", summary.min_index),
            ("exhaustive_min", summary.max_index),
        ] {
            let v = completion_for_index(m, index);
            let (report, _) = cell.measure(&v, label, None)?;
            let expected = if label == "exhaustive_max" {
                summary.min_l4
            } else {
                summary.max_l4
            };
            if report.l4p4_exact != expected {
                let msg = format!(
                    "{}: enumeration L4 {expected} disagrees with recomputation {}",
                    cell.tag(),
                    report.l4p4_exact
                );
                cell.out.failures.push(msg);
            }
            let row = CsvRow::from_report("7", m, &report).aux(v.sign_string(), summary.count);
            cell.push(row);
        }

        let mut named = vec![CompletionSpec::AllOnes, CompletionSpec::JacobiProduct];
        if m.omega() == 2 {
            named.push(CompletionSpec::TwoPrime);
        }
        for spec in &cell.cfg.completions {
            let skip = matches!(
                spec,
                CompletionSpec::TwoPrime
                    | CompletionSpec::Random { .. }
                    | CompletionSpec::Exhaustive
            );
            if !skip && !named.contains(spec) {
                named.push(*spec);
            }
        }
        for spec in named {
            let Some(v) = spec.build(m)? else { continue };
            let (report, _) = cell.measure(&v, spec.label(), None)?;
            let below = summary.count_worse_than(report.l4p4_exact) as f64 / summary.count as f64;
            let row = CsvRow::from_report("7", m, &report).aux(below, spread);
            cell.push(row);
        }

        if cell.cfg.histogram {
            let f_r = crate::norms::asymptotic_f(cell.rot);
            for (&l4, &count) in &summary.histogram {
                let merit = merit_from_norms(m.n(), l4)?;
                cell.push(CsvRow {
                    theorem: "7".into(),
                    n: m.n(),
                    p_min: m.p_min(),
                    omega: m.omega(),
                    phi: m.phi(),
                    psi: m.psi(),
                    rotation: cell.rot,
                    completion: "exhaustive_hist".into(),
                    seed: None,
                    l2sq: Some(m.n()),
                    l4p4_exact: Some(l4),
                    l4p4_dft: None,
                    merit,
                    f_r,
                    abs_gap: (merit - f_r).abs(),
                    aux1: count.to_string(),
                    aux2: String::new(),
                });
            }
        }
        Ok(())
    })
}

/// Ad-hoc measurements: `J_r` itself plus every completion in the config
/// (random specs expand to their samples; exhaustive is skipped).
pub fn run_merit(cfg: &SweepConfig) -> Result<SweepOutcome> {
    run_cells(cfg, |cell| {
        let report = MeritReport::compute(&cell.j, cell.rot, "character", None)?;
        cell.check_paths(&report);
        cell.push(CsvRow::from_report("merit", cell.m, &report));
        for spec in cell.cfg.completions.clone() {
            match spec {
                CompletionSpec::Exhaustive => continue,
                CompletionSpec::Random { seed, count } => {
                    for s in sample_seeds(seed, cell.m.n(), count) {
                        let v = completion_random(cell.m, s);
                        let (report, _) = cell.measure(&v, "random", Some(s))?;
                        let gap = report.gap.unwrap_or_default();
                        cell.push(CsvRow::from_report("merit", cell.m, &report).aux(gap, ""));
                    }
                }
                named => {
                    let v = named.build(cell.m)?.expect("named completion");
                    let (report, _) = cell.measure(&v, named.label(), None)?;
                    let gap = report.gap.unwrap_or_default();
                    cell.push(CsvRow::from_report("merit", cell.m, &report).aux(gap, ""));
                }
            }
        }
        Ok(())
    })
}

/// Dispatch on the theorem number used by the `sweep` subcommand.
pub fn run_theorem(theorem: u8, cfg: &SweepConfig) -> Result<SweepOutcome> {
    match theorem {
        2 => run_theorem2(cfg),
        3 => run_theorem3(cfg),
        4 => run_theorem4_bound(cfg),
        5 => run_theorem5(cfg),
        6 => run_theorem6(cfg),
        7 => run_theorem7_exhaustive(cfg),
        _ => Err(Error::Config(format!(
            "unknown theorem {theorem}; expected one of 2..=7"
        ))),
    }
}
