use std::io::Write;
use std::path::Path;

use critpoint::{Solution, SolutionSet, TrackerConfig};
use serde::Serialize;
use serde_json::Value;

/// Everything a run produced. Apart from `wall_time_seconds` the JSON form
/// depends only on the command line.
#[derive(Debug, Default, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub seed: u64,
    pub label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub config: Option<TrackerConfig>,
    pub expected_count: Option<u64>,
    pub found_count: Option<u64>,
    pub real_count: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub paths: Option<PathCounts>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub solutions: Vec<Solution>,
    /// Real critical point picked out by the objective, model coordinates only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minimizer: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub data: Value,
    pub warnings: Vec<String>,
    pub wall_time_seconds: f64,
}

#[derive(Debug, Default, Clone, Copy, Serialize)]
pub struct PathCounts {
    pub tracked: u64,
    pub failed: u64,
    pub filtered: u64,
    pub diverged: u64,
    pub duplicates: u64,
}

impl RunReport {
    pub fn from_set(label: &str, set: &SolutionSet, config: &TrackerConfig) -> Self {
        RunReport {
            label: label.to_string(),
            config: Some(config.clone()),
            expected_count: set.expected_count,
            found_count: Some(set.len() as u64),
            real_count: Some(set.count_real() as u64),
            paths: Some(PathCounts {
                tracked: set.paths,
                failed: set.failed,
                filtered: set.filtered,
                diverged: set.diverged,
                duplicates: set.duplicates,
            }),
            solutions: set.solutions.clone(),
            warnings: set.warnings.clone(),
            ..Default::default()
        }
    }

    pub fn degree(value: String, formula: String) -> Self {
        RunReport { label: "degree".into(), data: serde_json::json!({ "value": value, "formula": formula }), ..Default::default() }
    }

    pub fn check(label: &str, verified: bool, data: Value) -> Self {
        RunReport { label: label.into(), verified: Some(verified), data, ..Default::default() }
    }

    /// Sums counts of two runs; the expected count survives only if both had one.
    pub fn merge(mut self, other: RunReport) -> Self {
        let add = |a: Option<u64>, b: Option<u64>| Some(a? + b?);
        self.expected_count = add(self.expected_count, other.expected_count);
        self.found_count = add(self.found_count, other.found_count);
        self.real_count = add(self.real_count, other.real_count);
        if let (Some(p), Some(q)) = (&mut self.paths, other.paths) {
            p.tracked += q.tracked;
            p.failed += q.failed;
            p.filtered += q.filtered;
            p.diverged += q.diverged;
            p.duplicates += q.duplicates;
        }
        self.solutions.extend(other.solutions);
        self.warnings.extend(other.warnings);
        self
    }

    pub fn mismatch(&self) -> bool {
        let count = matches!((self.expected_count, self.found_count), (Some(e), Some(f)) if e != f);
        count || self.verified == Some(false)
    }

    pub fn print_summary(&self) {
        if let Some(v) = self.data.get("value") {
            println!("{}", v.as_str().unwrap_or_default());
            if let Some(f) = self.data.get("formula").and_then(Value::as_str) {
                println!("formula: {f}");
            }
            return;
        }
        if let Some(ok) = self.verified {
            println!("{}: {}", self.label, if ok { "verified" } else { "NOT verified" });
            if let Some(m) = self.data.get("member") {
                println!("member: {m}");
            }
            return;
        }
        let show = |v: Option<u64>| v.map_or_else(|| "unknown".to_string(), |v| v.to_string());
        println!(
            "{}: found {} (expected {}), {} real",
            self.label,
            show(self.found_count),
            show(self.expected_count),
            show(self.real_count)
        );
        if let Some(p) = self.paths {
            println!(
                "paths: {} tracked, {} failed ({} duplicates), {} filtered, {} diverged",
                p.tracked, p.failed, p.duplicates, p.filtered, p.diverged
            );
        }
        if let Some(m) = &self.minimizer {
            let coords: Vec<String> = m.iter().map(|x| format!("{x:.12}")).collect();
            println!("minimizer: ({})", coords.join(", "));
        }
        for w in &self.warnings {
            eprintln!("warning: {w}");
        }
    }

    pub fn write_json(&self, path: &Path) -> std::io::Result<()> {
        let text = serde_json::to_string_pretty(self)?;
        if path == Path::new("-") {
            println!("{text}");
            Ok(())
        } else {
            let mut f = std::fs::File::create(path)?;
            writeln!(f, "{text}")
        }
    }
}
