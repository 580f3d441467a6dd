//! Machine-readable run reports, emitted as JSON or CSV.
//!
//! Every number is carried as a full decimal string. The CSV form puts the
//! table last (a header row naming the columns, then one row per entry) and
//! carries everything else in `# `-prefixed metadata lines, each holding one
//! CSV record.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    /// The command line as invoked.
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub witnesses: Vec<Witness>,
    pub timing_ms: u64,
    pub verdicts: Vec<Verdict>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub label: String,
    /// One-line form, e.g. `1,2,3;2,3,1`.
    pub signature: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("malformed metadata line: {0}")]
    Metadata(String),
}

const META_PREFIX: &str = "# ";

impl RunReport {
    pub fn input(&mut self, key: &str, value: impl ToString) {
        self.inputs.insert(key.to_string(), value.to_string());
    }

    pub fn verdict(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.verdicts.push(Verdict {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn witness(&mut self, label: impl Into<String>, signature: impl ToString) {
        self.witnesses.push(Witness {
            label: label.into(),
            signature: signature.to_string(),
        });
    }

    pub fn all_passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }

    pub fn to_json(&self) -> Result<String, ReportError> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self, ReportError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_csv(&self) -> Result<String, ReportError> {
        let mut out = String::new();
        let mut meta = |fields: &[&str]| -> Result<(), ReportError> {
            out.push_str(META_PREFIX);
            out.push_str(&csv_line(fields)?);
            Ok(())
        };
        meta(&["command", &self.command])?;
        for (k, v) in &self.inputs {
            meta(&["input", k, v])?;
        }
        for w in &self.witnesses {
            meta(&["witness", &w.label, &w.signature])?;
        }
        for v in &self.verdicts {
            meta(&[
                "verdict",
                &v.name,
                if v.passed { "pass" } else { "fail" },
                &v.detail,
            ])?;
        }
        meta(&["timing_ms", &self.timing_ms.to_string()])?;

        if self.columns.is_empty() {
            return Ok(out);
        }
        let mut table = csv::Writer::from_writer(Vec::new());
        table.write_record(&self.columns)?;
        for row in &self.rows {
            table.write_record(row)?;
        }
        let bytes = table
            .into_inner()
            .map_err(|e| ReportError::Metadata(e.to_string()))?;
        out.push_str(&String::from_utf8(bytes).expect("utf-8 input"));
        Ok(out)
    }

    pub fn from_csv(text: &str) -> Result<Self, ReportError> {
        let mut report = RunReport::default();
        let mut table = String::new();
        for line in text.lines() {
            let Some(meta) = line.strip_prefix(META_PREFIX) else {
                table.push_str(line);
                table.push('\n');
                continue;
            };
            let fields = parse_line(meta)?;
            let bad = || ReportError::Metadata(line.to_string());
            match fields
                .iter()
                .map(String::as_str)
                .collect::<Vec<_>>()
                .as_slice()
            {
                ["command", c] => report.command = c.to_string(),
                ["input", k, v] => report.input(k, v),
                ["witness", l, s] => report.witness(*l, s),
                ["verdict", n, p, d] => report.verdict(*n, *p == "pass", *d),
                ["timing_ms", t] => report.timing_ms = t.parse().map_err(|_| bad())?,
                _ => return Err(bad()),
            }
        }
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .from_reader(table.as_bytes());
        let mut records = reader.records();
        if let Some(header) = records.next() {
            report.columns = header?.iter().map(String::from).collect();
            for rec in records {
                report.rows.push(rec?.iter().map(String::from).collect());
            }
        }
        Ok(report)
    }
}

fn csv_line(fields: &[&str]) -> Result<String, ReportError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(fields)?;
    let bytes = w
        .into_inner()
        .map_err(|e| ReportError::Metadata(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("utf-8 input"))
}

fn parse_line(line: &str) -> Result<Vec<String>, ReportError> {
    let mut r = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(line.as_bytes());
    match r.records().next() {
        Some(rec) => Ok(rec?.iter().map(String::from).collect()),
        None => Err(ReportError::Metadata(line.to_string())),
    }
}
