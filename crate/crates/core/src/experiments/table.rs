//! Versioned CSV schema shared with downstream plotting.

use std::io::Write;

use crate::error::{Error, Result};
use crate::norms::MeritReport;
use crate::numbers::FactoredModulus;
use crate::sequences::Rotation;

pub const SCHEMA_ID: &str = "littlewood-sweep-v1";

pub const HEADER: [&str; 19] = [
    "schema_id",
    "theorem",
    "n",
    "p_min",
    "omega",
    "phi",
    "psi",
    "r_num",
    "r_den",
    "completion",
    "seed",
    "l2sq",
    "l4p4_exact",
    "l4p4_dft",
    "F",
    "f_r",
    "abs_gap",
    "aux1",
    "aux2",
];

/// One CSV row. Optional numeric columns are written empty when absent.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvRow {
    pub theorem: String,
    pub n: u64,
    pub p_min: u64,
    pub omega: usize,
    pub phi: u64,
    pub psi: u64,
    pub rotation: Rotation,
    pub completion: String,
    pub seed: Option<u64>,
    pub l2sq: Option<u64>,
    pub l4p4_exact: Option<i128>,
    pub l4p4_dft: Option<f64>,
    pub merit: f64,
    pub f_r: f64,
    pub abs_gap: f64,
    pub aux1: String,
    pub aux2: String,
}

impl CsvRow {
    pub fn from_report(theorem: &str, m: &FactoredModulus, report: &MeritReport) -> Self {
        CsvRow {
            theorem: theorem.to_string(),
            n: m.n(),
            p_min: m.p_min(),
            omega: m.omega(),
            phi: m.phi(),
            psi: m.psi(),
            rotation: report.rotation,
            completion: report.completion.clone(),
            seed: report.seed,
            l2sq: Some(report.l2sq),
            l4p4_exact: Some(report.l4p4_exact),
            l4p4_dft: Some(report.l4p4_dft),
            merit: report.merit,
            f_r: report.f_of_r,
            abs_gap: report.abs_gap_to_limit(),
            aux1: String::new(),
            aux2: String::new(),
        }
    }

    pub fn aux(mut self, aux1: impl ToString, aux2: impl ToString) -> Self {
        self.aux1 = aux1.to_string();
        self.aux2 = aux2.to_string();
        self
    }

    pub fn fields(&self) -> [String; 19] {
        fn opt<T: ToString>(v: &Option<T>) -> String {
            v.as_ref().map(T::to_string).unwrap_or_default()
        }
        [
            SCHEMA_ID.to_string(),
            self.theorem.clone(),
            self.n.to_string(),
            self.p_min.to_string(),
            self.omega.to_string(),
            self.phi.to_string(),
            self.psi.to_string(),
            self.rotation.numer().to_string(),
            self.rotation.denom().to_string(),
            self.completion.clone(),
            opt(&self.seed),
            opt(&self.l2sq),
            opt(&self.l4p4_exact),
            opt(&self.l4p4_dft),
            self.merit.to_string(),
            self.f_r.to_string(),
            self.abs_gap.to_string(),
            self.aux1.clone(),
            self.aux2.clone(),
        ]
    }
}

pub fn write_csv<W: Write>(out: W, rows: &[CsvRow]) -> Result<()> {
    let io = |e: csv::Error| Error::Config(format!("CSV write failed: {e}"));
    let mut w = csv::Writer::from_writer(out);
    w.write_record(HEADER).map_err(io)?;
    for row in rows {
        w.write_record(row.fields()).map_err(io)?;
    }
    w.flush()
        .map_err(|e| Error::Config(format!("CSV write failed: {e}")))?;
    Ok(())
}

pub fn to_csv_string(rows: &[CsvRow]) -> String {
    let mut buf = Vec::new();
    write_csv(&mut buf, rows).expect("writing to memory cannot fail");
    String::from_utf8(buf).expect("CSV output is UTF-8")
}
