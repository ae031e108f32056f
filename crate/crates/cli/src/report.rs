//! Comparison reports: per-probe rows, tolerance checks and provenance.

use std::fmt::Write as _;

use serde::Serialize;

use crate::config::ExperimentConfig;

/// One probe: where it sits, what the simulation gave and what theory says.
/// `simulated` and `theory` hold one component for real observables and
/// two (re, im) for complex ones.
#[derive(Clone, Debug, Serialize)]
pub struct Row {
    pub coordinate: Vec<f64>,
    pub simulated: Vec<f64>,
    pub se: f64,
    pub theory: Vec<f64>,
    /// Distance to theory in standard errors; absent when `se = 0`.
    pub deviation: Option<f64>,
}

impl Row {
    pub fn real(coordinate: Vec<f64>, simulated: f64, se: f64, theory: f64) -> Self {
        let deviation = (se > 0.0).then(|| (simulated - theory).abs() / se);
        Self { coordinate, simulated: vec![simulated], se, theory: vec![theory], deviation }
    }

    pub fn complex(coordinate: Vec<f64>, simulated: [f64; 2], se: f64, theory: [f64; 2]) -> Self {
        let d = (simulated[0] - theory[0]).hypot(simulated[1] - theory[1]);
        Self {
            coordinate,
            simulated: simulated.to_vec(),
            se,
            theory: theory.to_vec(),
            deviation: (se > 0.0).then(|| d / se),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    /// Passes when `value < tolerance`.
    Below,
    /// Passes when `value >= tolerance`.
    AtLeast,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub comparison: Comparison,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, value: f64, comparison: Comparison, tolerance: f64) -> Self {
        let passed = match comparison {
            Comparison::Below => value < tolerance,
            Comparison::AtLeast => value >= tolerance,
        };
        Self { name: name.into(), value, comparison, tolerance, passed }
    }

    pub fn below(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Self::new(name, value, Comparison::Below, tolerance)
    }

    pub fn at_least(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Self::new(name, value, Comparison::AtLeast, tolerance)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Provenance {
    pub seed: u64,
    pub config_hash: String,
    pub code_version: String,
    pub config: ExperimentConfig,
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub max_abs_deviation: Option<f64>,
    pub l1_distance: Option<f64>,
    pub passed: bool,
}

/// How the checks combine into the overall verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// Every check must pass.
    All,
    /// Every check in at least one of the named groups must pass; a check
    /// belongs to a group when its name starts with `<group>:`.
    AnyGroup(Vec<String>),
}

#[derive(Clone, Debug, Serialize)]
pub struct ComparisonReport {
    pub experiment: String,
    pub coordinate_labels: Vec<String>,
    pub rows: Vec<Row>,
    pub checks: Vec<Check>,
    pub verdict: Verdict,
    pub summary: Summary,
    pub warnings: Vec<String>,
    pub provenance: Provenance,
}

impl ComparisonReport {
    pub fn new(config: &ExperimentConfig, coordinate_labels: &[&str]) -> Self {
        Self {
            experiment: config.experiment.name().to_string(),
            coordinate_labels: coordinate_labels.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
            checks: Vec::new(),
            verdict: Verdict::All,
            summary: Summary { max_abs_deviation: None, l1_distance: None, passed: false },
            warnings: Vec::new(),
            provenance: Provenance {
                seed: config.seed,
                config_hash: config.hash(),
                code_version: env!("CARGO_PKG_VERSION").to_string(),
                config: config.clone(),
            },
        }
    }

    pub fn check(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn warn(&mut self, w: impl Into<String>) {
        self.warnings.push(w.into());
    }

    pub fn find(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Fills the summary from rows and checks.
    pub fn finish(&mut self) {
        self.summary.max_abs_deviation = self.rows.iter().filter_map(|r| r.deviation).reduce(f64::max);
        self.summary.passed = !self.checks.is_empty()
            && match &self.verdict {
                Verdict::All => self.checks.iter().all(|c| c.passed),
                Verdict::AnyGroup(groups) => groups.iter().any(|g| {
                    let prefix = format!("{g}:");
                    let mut members = self.checks.iter().filter(|c| c.name.starts_with(&prefix)).peekable();
                    members.peek().is_some() && members.all(|c| c.passed)
                }),
            };
    }

    pub fn passed(&self) -> bool {
        self.summary.passed
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let p = &self.provenance;
        let _ = writeln!(s, "experiment   {}", self.experiment);
        let _ = writeln!(s, "seed         {}", p.seed);
        let _ = writeln!(s, "config hash  {}", p.config_hash);
        let _ = writeln!(s, "version      {}", p.code_version);
        let c = &p.config;
        let _ = writeln!(
            s,
            "params       n={} a={} dt={} samples={} tau={} bins={}",
            c.n, c.a, c.dt, c.samples, c.tau, c.bins
        );
        if !self.rows.is_empty() {
            let _ = writeln!(s, "\n{:>28}  {:>26}  {:>10}  {:>26}  {:>8}", self.coordinate_labels.join(","), "simulated", "se", "theory", "dev");
            for r in &self.rows {
                let dev = r.deviation.map_or("-".to_string(), |d| format!("{d:.2}"));
                let _ = writeln!(
                    s,
                    "{:>28}  {:>26}  {:>10.3e}  {:>26}  {:>8}",
                    join(&r.coordinate, 4),
                    join(&r.simulated, 6),
                    r.se,
                    join(&r.theory, 6),
                    dev
                );
            }
        }
        let _ = writeln!(s, "\nchecks");
        for ch in &self.checks {
            let op = match ch.comparison {
                Comparison::Below => "<",
                Comparison::AtLeast => ">=",
            };
            let _ = writeln!(
                s,
                "  [{}] {}: {:.6e} {} {:e}",
                if ch.passed { "pass" } else { "FAIL" },
                ch.name,
                ch.value,
                op,
                ch.tolerance
            );
        }
        if let Verdict::AnyGroup(g) = &self.verdict {
            let _ = writeln!(s, "  (passes if every check of any one group passes: {})", g.join(", "));
        }
        if let Some(m) = self.summary.max_abs_deviation {
            let _ = writeln!(s, "max |deviation| {m:.3} se");
        }
        if let Some(l1) = self.summary.l1_distance {
            let _ = writeln!(s, "L1 distance     {l1:.5}");
        }
        for w in &self.warnings {
            let _ = writeln!(s, "warning: {w}");
        }
        let _ = writeln!(s, "\nresult: {}", if self.passed() { "PASS" } else { "FAIL" });
        s
    }
}

fn join(xs: &[f64], digits: usize) -> String {
    xs.iter().map(|x| format!("{x:.digits$}")).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{ExperimentConfig, RawConfig};

    fn cfg() -> ExperimentConfig {
        ExperimentConfig::from_raw(RawConfig {
            experiment: Some("acp-verify".into()),
            seed: Some(1),
            ..Default::default()
        })
        .unwrap()
    }

    #[test]
    fn verdict_follows_checks() {
        let mut r = ComparisonReport::new(&cfg(), &["x"]);
        r.check(Check::below("l1", 0.04, 0.05));
        r.finish();
        assert!(r.passed());
        r.check(Check::at_least("hits", 22.0, 23.0));
        r.finish();
        assert!(!r.passed());
    }

    #[test]
    fn any_group_verdict() {
        let mut r = ComparisonReport::new(&cfg(), &["x"]);
        r.verdict = Verdict::AnyGroup(vec!["direct".into(), "trend".into()]);
        r.check(Check::below("direct: max", 0.2, 0.15));
        r.check(Check::below("trend: ratio", 0.8, 1.0));
        r.finish();
        assert!(r.passed());
        r.checks[1] = Check::below("trend: ratio", 1.2, 1.0);
        r.finish();
        assert!(!r.passed());
    }

    #[test]
    fn empty_report_fails_and_json_has_stable_keys() {
        let mut r = ComparisonReport::new(&cfg(), &["x"]);
        r.rows.push(Row::real(vec![0.0], 1.0, 0.0, 1.0));
        r.finish();
        assert!(!r.passed());
        let j = r.to_json();
        let keys = ["\"experiment\"", "\"rows\"", "\"checks\"", "\"summary\"", "\"provenance\""];
        let pos: Vec<usize> = keys.iter().map(|k| j.find(k).unwrap()).collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]));
        assert!(j.contains("\"deviation\": null"));
    }
}
