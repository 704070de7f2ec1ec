//! Sweeps over `(n, r)` grids, exhaustive enumeration, the identity suite and
//! CSV output.

pub mod config;
pub mod exhaustive;
pub mod sweep;
pub mod table;
pub mod verify;

pub use config::{default_rotation_grid, CompletionSpec, SweepConfig};
pub use exhaustive::{completion_for_index, exhaustive_l4, ExhaustiveSummary};
pub use sweep::{
    run_merit, run_theorem, run_theorem2, run_theorem3, run_theorem4_bound, run_theorem5,
    run_theorem6, run_theorem7_exhaustive, sample_seeds, Prop4Record, SampleStats, SweepOutcome,
};
pub use table::{to_csv_string, write_csv, CsvRow, HEADER, SCHEMA_ID};
pub use verify::{verify_identities, verify_identities_with, IdentityTally, VerifyReport};
