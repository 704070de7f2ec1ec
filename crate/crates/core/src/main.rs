use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use littlewood::experiments::{
    default_rotation_grid, run_merit, run_theorem, run_theorem7_exhaustive, verify_identities,
    write_csv, CompletionSpec, SweepConfig, SweepOutcome,
};
use littlewood::numbers::{factor_odd_squarefree, odd_squarefree_up_to};
use littlewood::sequences::{character_polynomial, complete, completion_random, rotate};
use littlewood::{Error, Rotation};

/// Merit factors of character polynomials and their Littlewood completions.
#[derive(Parser, Debug)]
#[command(name = "littlewood", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print J, a completion V, or J + V (rotated) in the plain-text format.
    Construct(Common),
    /// F, f(r) and the gaps for J_r and each requested completion.
    Merit(Common),
    /// Theorem-level sweep over the (n, r) grid.
    Sweep {
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=7))]
        theorem: u8,
        #[command(flatten)]
        common: Common,
    },
    /// Enumerate every completion (needs psi(n) <= 24).
    Exhaustive {
        /// Also emit one row per distinct L4 value.
        #[arg(long)]
        histogram: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Check every closed form against direct evaluation.
    Verify(Common),
}

#[derive(Args, Debug)]
struct Common {
    /// A single modulus (odd, square-free, at least 3).
    #[arg(long)]
    n: Option<u64>,
    /// Comma-separated moduli.
    #[arg(long, value_delimiter = ',')]
    n_list: Vec<u64>,
    /// A single rotation, `p/q` or an integer.
    #[arg(long, allow_hyphen_values = true)]
    r: Option<Rotation>,
    /// Comma-separated rotations; `default` is the 64-point grid k/64.
    #[arg(long, allow_hyphen_values = true)]
    r_grid: Option<String>,
    /// Comma-separated completions: plus_one, minus_one, all_ones,
    /// jacobi_product, two_prime, random[:SEED:COUNT], exhaustive.
    #[arg(long, value_delimiter = ',')]
    completion: Vec<String>,
    /// Master seed for random completions.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of random completions per cell.
    #[arg(long, default_value_t = 50)]
    samples: usize,
    /// Worker threads (0: one per core).
    #[arg(long, default_value_t = 0)]
    workers: usize,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn n_values(&self) -> Vec<u64> {
        self.n
            .iter()
            .copied()
            .chain(self.n_list.iter().copied())
            .collect()
    }

    fn rotations(&self) -> Result<Vec<Rotation>, Error> {
        let mut rots: Vec<Rotation> = self.r.into_iter().collect();
        match self.r_grid.as_deref() {
            Some("default") => rots.extend(default_rotation_grid()),
            Some(list) => {
                for item in list.split(',') {
                    rots.push(item.parse()?);
                }
            }
            None => {}
        }
        if rots.is_empty() {
            rots.push(Rotation::quarter());
        }
        Ok(rots)
    }

    fn completions(&self) -> Result<Vec<CompletionSpec>, Error> {
        self.completion
            .iter()
            .map(|c| match c.trim() {
                "random" => Ok(CompletionSpec::Random {
                    seed: self.seed,
                    count: self.samples,
                }),
                other => other.parse(),
            })
            .collect()
    }

    fn config(&self, default_completions: &[CompletionSpec]) -> Result<SweepConfig, Error> {
        let ns = self.n_values();
        if ns.is_empty() {
            return Err(Error::Config("give --n or --n-list".into()));
        }
        let mut completions = self.completions()?;
        if completions.is_empty() {
            completions = default_completions.to_vec();
        }
        let mut cfg =
            SweepConfig::from_n_list(&ns, self.rotations()?)?.with_completions(completions);
        cfg.master_seed = self.seed;
        cfg.samples = self.samples;
        cfg.workers = self.workers;
        cfg.validate()?;
        Ok(cfg)
    }

    fn writer(&self) -> io::Result<Box<dyn Write>> {
        Ok(match &self.out {
            Some(path) => Box::new(BufWriter::new(File::create(path)?)),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        })
    }
}

enum Failure {
    Checks,
    Config(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Config(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Config(format!("I/O error: {e}"))
    }
}

fn defaults_for(theorem: u8, seed: u64, samples: usize) -> Vec<CompletionSpec> {
    match theorem {
        3 => vec![CompletionSpec::AllOnes],
        5 => vec![CompletionSpec::Random {
            seed,
            count: samples,
        }],
        6 => vec![CompletionSpec::JacobiProduct],
        _ => Vec::new(),
    }
}

fn emit(common: &Common, outcome: SweepOutcome) -> Result<(), Failure> {
    write_csv(common.writer()?, &outcome.rows)?;
    for f in &outcome.failures {
        eprintln!("check failed: {f}");
    }
    if outcome.is_clean() {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

fn construct(common: &Common) -> Result<(), Failure> {
    let n = match common.n_values().as_slice() {
        [n] => *n,
        _ => return Err(Failure::Config("construct takes exactly one n".into())),
    };
    let m = factor_odd_squarefree(n)?;
    let rot = common.r.unwrap_or_else(Rotation::zero);
    let j = character_polynomial(&m);
    let seq = match common.completion.as_slice() {
        [] => j,
        [label] => {
            let label = label.trim();
            let (v, with_j) = match label.strip_prefix("j+") {
                Some(rest) => (rest, true),
                None => (label, false),
            };
            let v = match v {
                "random" => completion_random(&m, common.seed),
                other => other.parse::<CompletionSpec>()?.build(&m)?.ok_or_else(|| {
                    Failure::Config(format!("`{other}` names no single completion"))
                })?,
            };
            if with_j {
                complete(&j, &v)?
            } else {
                v
            }
        }
        _ => {
            return Err(Failure::Config(
                "construct takes at most one completion".into(),
            ))
        }
    };
    let mut w = common.writer()?;
    w.write_all(rotate(&seq, rot).to_text().as_bytes())?;
    w.flush()?;
    Ok(())
}

fn verify(common: &Common) -> Result<(), Failure> {
    let ns = common.n_values();
    let moduli = if ns.is_empty() {
        odd_squarefree_up_to(105)
    } else {
        ns.iter()
            .map(|&n| factor_odd_squarefree(n))
            .collect::<Result<Vec<_>, _>>()?
    };
    let report = verify_identities(&moduli);
    let mut w = common.writer()?;
    write!(w, "{report}")?;
    w.flush()?;
    for f in &report.failures {
        eprintln!("identity failed: {f}");
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Construct(common) => construct(&common),
        Command::Merit(common) => {
            let cfg = common.config(&[])?;
            emit(&common, run_merit(&cfg)?)
        }
        Command::Sweep { theorem, common } => {
            let defaults = defaults_for(theorem, common.seed, common.samples);
            let cfg = common.config(&defaults)?;
            emit(&common, run_theorem(theorem, &cfg)?)
        }
        Command::Exhaustive { histogram, common } => {
            let mut cfg = common.config(&[])?;
            cfg.histogram = histogram;
            emit(&common, run_theorem7_exhaustive(&cfg)?)
        }
        Command::Verify(common) => verify(&common),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
