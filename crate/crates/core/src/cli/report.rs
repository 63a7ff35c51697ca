//! JSON-lines reports.
//!
//! Line 1 is a header with the timestamp and wall-clock time; everything
//! after it depends only on the command and the [`RunConfig`], with records
//! sorted by name.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, SystemTime, UNIX_EPOCH};

use serde::Serialize;

use super::config::RunConfig;
use crate::error::{Error, Result};

/// One checked claim.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Record {
    pub name: String,
    /// The statement being checked, in words.
    pub claim: String,
    pub inputs: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

impl Record {
    pub fn new(
        name: impl Into<String>,
        claim: impl Into<String>,
        inputs: impl Into<String>,
        expected: impl ToString,
        computed: impl ToString,
    ) -> Self {
        let expected = expected.to_string();
        let computed = computed.to_string();
        let pass = expected == computed;
        Self {
            name: name.into(),
            claim: claim.into(),
            inputs: inputs.into(),
            expected,
            computed,
            pass,
        }
    }

    /// A record whose pass/fail is decided by the caller.
    pub fn with_status(
        name: impl Into<String>,
        claim: impl Into<String>,
        inputs: impl Into<String>,
        expected: impl ToString,
        computed: impl ToString,
        pass: bool,
    ) -> Self {
        Self {
            name: name.into(),
            claim: claim.into(),
            inputs: inputs.into(),
            expected: expected.to_string(),
            computed: computed.to_string(),
            pass,
        }
    }

    /// A failing record for a computation that returned an error.
    pub fn error(name: impl Into<String>, claim: impl Into<String>, inputs: impl Into<String>, err: &Error) -> Self {
        Self::with_status(name, claim, inputs, "no error", format!("error: {err}"), false)
    }
}

#[derive(Serialize)]
struct Header<'a> {
    kind: &'static str,
    command: &'a str,
    timestamp_unix: u64,
    wall_clock_ms: u128,
}

#[derive(Serialize)]
struct ConfigLine<'a> {
    kind: &'static str,
    command: &'a str,
    config: &'a RunConfig,
}

#[derive(Serialize)]
struct RecordLine<'a> {
    kind: &'static str,
    #[serde(flatten)]
    record: &'a Record,
}

#[derive(Serialize)]
struct Summary {
    kind: &'static str,
    total: usize,
    passed: usize,
    failed: usize,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub config: RunConfig,
    records: Vec<Record>,
    pub wall_clock: Duration,
}

impl Report {
    pub fn new(command: impl Into<String>, config: RunConfig, mut records: Vec<Record>, wall_clock: Duration) -> Self {
        records.sort_by(|a, b| a.name.cmp(&b.name));
        Self { command: command.into(), config, records, wall_clock }
    }

    pub fn records(&self) -> &[Record] {
        &self.records
    }

    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| !r.pass)
    }

    /// Everything but the header line.
    pub fn body(&self) -> String {
        let mut out = String::new();
        out += &line(&ConfigLine { kind: "config", command: &self.command, config: &self.config });
        for r in &self.records {
            out += &line(&RecordLine { kind: "record", record: r });
        }
        let passed = self.records.iter().filter(|r| r.pass).count();
        out += &line(&Summary {
            kind: "summary",
            total: self.records.len(),
            passed,
            failed: self.records.len() - passed,
        });
        out
    }

    pub fn render(&self) -> String {
        let timestamp_unix = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        let header = Header {
            kind: "header",
            command: &self.command,
            timestamp_unix,
            wall_clock_ms: self.wall_clock.as_millis(),
        };
        let mut out = line(&header);
        out += &self.body();
        out
    }

    /// Writes `<out_dir>/<command>.jsonl` and returns its path.
    pub fn write(&self) -> Result<PathBuf> {
        write_to(&self.config.out_dir, &format!("{}.jsonl", self.command), &self.render())
    }
}

fn write_to(dir: &Path, file: &str, text: &str) -> Result<PathBuf> {
    fs::create_dir_all(dir).map_err(|e| Error::InvalidParams(format!("cannot create {}: {e}", dir.display())))?;
    let path = dir.join(file);
    fs::write(&path, text).map_err(|e| Error::InvalidParams(format!("cannot write {}: {e}", path.display())))?;
    Ok(path)
}

fn line<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string(v).expect("report lines serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn body_is_sorted_and_deterministic() {
        let recs = vec![
            Record::new("b", "claim", "", 2, 2),
            Record::new("a", "claim", "", 1, 3),
        ];
        let r1 = Report::new("verify", RunConfig::default(), recs.clone(), Duration::from_millis(5));
        let r2 = Report::new("verify", RunConfig::default(), recs, Duration::from_millis(9));
        assert_eq!(r1.body(), r2.body());
        assert!(!r1.passed());
        let rendered = r1.render();
        let lines: Vec<&str> = rendered.lines().collect();
        assert_eq!(lines.len(), 5);
        assert!(lines[0].contains("\"kind\":\"header\""));
        assert!(lines[2].contains("\"name\":\"a\""));
        assert!(lines[4].contains("\"failed\":1"));
    }
}
