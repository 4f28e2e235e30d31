//! Machine-readable verification reports (JSON schema version 1).

use std::time::Instant;

use serde::Serialize;

use crate::partition::PartitionReport;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InstanceDescriptor {
    /// `"file"` or the generator name.
    pub generator: String,
    pub seed: Option<u64>,
    pub n: usize,
    pub m: usize,
    pub class: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub check: String,
    pub formula: String,
    pub oracle: String,
    pub agree: bool,
    /// Wall-clock milliseconds; omitted where output must be reproducible.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub instance: InstanceDescriptor,
    pub checks: Vec<CheckRecord>,
    /// True exactly when every check agrees.
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partition: Option<PartitionReport>,
}

impl VerificationReport {
    pub fn new(instance: InstanceDescriptor, checks: Vec<CheckRecord>) -> Self {
        let pass = checks.iter().all(|c| c.agree);
        VerificationReport {
            schema: SCHEMA_VERSION,
            instance,
            checks,
            pass,
            partition: None,
        }
    }

    pub fn with_partition(mut self, partition: PartitionReport) -> Self {
        self.pass &= partition.pass;
        self.partition = Some(partition);
        self
    }

    /// Drops timings so the report is a pure function of its inputs.
    pub fn without_timings(mut self) -> Self {
        for c in &mut self.checks {
            c.elapsed_ms = None;
        }
        self
    }
}

/// Runs `f` and records whether its two sides agree.
pub fn timed_check<T: PartialEq + ToString>(
    check: &str,
    f: impl FnOnce() -> crate::Result<(T, T)>,
) -> crate::Result<CheckRecord> {
    let start = Instant::now();
    let (formula, oracle) = f()?;
    Ok(CheckRecord {
        check: check.to_string(),
        agree: formula == oracle,
        formula: formula.to_string(),
        oracle: oracle.to_string(),
        elapsed_ms: Some(start.elapsed().as_secs_f64() * 1e3),
    })
}

/// Batch result of a fuzz run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FuzzReport {
    pub schema: u32,
    pub class: String,
    pub seed: u64,
    pub count: usize,
    pub max_n: usize,
    pub instances: Vec<VerificationReport>,
    pub failures: usize,
    pub pass: bool,
}
