//! CSV emitters. Values use Rust's shortest round-trip formatting.

use csv::Writer;

use crate::error::{CliError, CliResult};

pub struct Table {
    w: Writer<Vec<u8>>,
}

impl Table {
    pub fn new(header: &[String]) -> CliResult<Self> {
        let mut w = Writer::from_writer(Vec::new());
        w.write_record(header).map_err(csv_err)?;
        Ok(Table { w })
    }

    pub fn row(&mut self, fields: &[String]) -> CliResult<()> {
        self.w.write_record(fields).map_err(csv_err)
    }

    pub fn finish(self) -> CliResult<Vec<u8>> {
        self.w
            .into_inner()
            .map_err(|e| CliError::Invalid(format!("csv: {e}")))
    }
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::Invalid(format!("csv: {e}"))
}

/// `prefix_1 .. prefix_d`.
pub fn columns(prefix: &str, dim: usize) -> Vec<String> {
    (1..=dim).map(|i| format!("{prefix}_{i}")).collect()
}

pub fn nums(v: &[f64]) -> Vec<String> {
    v.iter().map(|x| num(*x)).collect()
}

pub fn num(x: f64) -> String {
    format!("{x:?}")
}
