//! Gains of each policy over the random baseline, read back from a summary
//! CSV.

use std::fmt::Write as _;
use std::io::Read;

use crate::error::{CliError, Result};
use crate::runner::{relative_gain, SUMMARY_HEADER};

#[derive(Debug, Clone, PartialEq)]
pub struct GainRow {
    pub policy: String,
    pub fraction: f64,
    pub mean_rate: f64,
    pub gain: f64,
}

#[derive(Debug, serde::Deserialize)]
struct SummaryRecord {
    policy: String,
    fraction: f64,
    mean_rate: f64,
}

/// Relative gain `(rate - rate_random) / rate_random` for every row of a
/// summary CSV. Every fraction present must have a `random` row.
pub fn summarize_gains<R: Read>(summary: R) -> Result<Vec<GainRow>> {
    let mut reader = csv::Reader::from_reader(summary);
    let header = reader.headers()?.iter().collect::<Vec<_>>().join(",");
    if header != SUMMARY_HEADER {
        return Err(CliError::Header {
            found: header,
            expected: SUMMARY_HEADER,
        });
    }
    let records = reader
        .deserialize::<SummaryRecord>()
        .collect::<std::result::Result<Vec<_>, _>>()?;
    records
        .iter()
        .map(|rec| {
            let baseline = records
                .iter()
                .find(|r| r.policy == "random" && r.fraction == rec.fraction)
                .ok_or_else(|| CliError::MissingBaseline(format!("{:.6}", rec.fraction)))?;
            Ok(GainRow {
                policy: rec.policy.clone(),
                fraction: rec.fraction,
                mean_rate: rec.mean_rate,
                gain: relative_gain(rec.mean_rate, baseline.mean_rate),
            })
        })
        .collect()
}

pub fn render_gains(rows: &[GainRow]) -> String {
    let mut out = format!(
        "{:<16} {:>9} {:>10} {:>9}\n",
        "policy", "fraction", "rate", "gain"
    );
    for row in rows {
        writeln!(
            out,
            "{:<16} {:>9.4} {:>10.6} {:>8.2}%",
            row.policy,
            row.fraction,
            row.mean_rate,
            100.0 * row.gain
        )
        .expect("writing to a String");
    }
    out
}
