//! Verification sweeps: run a set of checks over a corpus and tally the
//! outcomes.

use std::collections::BTreeMap;

use critset_core::Outcome;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::checks::{self, registry, run_checks, Check, CheckSettings, Limits, Subject};
use crate::corpus::{Corpus, Family};
use crate::format::write_graph6;

/// Failures listed in a report; the certificate always lists all of them.
pub const REPORTED_FAILURES: usize = 1000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VerificationSweepConfig {
    pub family: Family,
    pub min_n: usize,
    pub max_n: usize,
    pub samples: usize,
    pub seed: u64,
    pub edge_probability: Option<f64>,
    pub min_cycle: usize,
    pub max_cycle: usize,
    pub max_added: usize,
    /// Check ids to run; empty means all.
    pub checks: Vec<String>,
    pub limits: Limits,
    pub supermodular_pairs: usize,
    /// Worker threads; `None` uses every core. Never affects the report.
    pub threads: Option<usize>,
}

impl Default for VerificationSweepConfig {
    fn default() -> Self {
        let corpus = Corpus::default();
        let settings = CheckSettings::default();
        VerificationSweepConfig {
            family: corpus.family,
            min_n: corpus.min_n,
            max_n: corpus.max_n,
            samples: corpus.samples,
            seed: corpus.seed,
            edge_probability: corpus.edge_probability,
            min_cycle: corpus.min_cycle,
            max_cycle: corpus.max_cycle,
            max_added: corpus.max_added,
            checks: Vec::new(),
            limits: settings.limits,
            supermodular_pairs: settings.supermodular_pairs,
            threads: None,
        }
    }
}

impl VerificationSweepConfig {
    pub fn corpus(&self) -> Corpus {
        Corpus {
            family: self.family,
            min_n: self.min_n,
            max_n: self.max_n,
            samples: self.samples,
            seed: self.seed,
            edge_probability: self.edge_probability,
            min_cycle: self.min_cycle,
            max_cycle: self.max_cycle,
            max_added: self.max_added,
        }
    }

    pub fn settings(&self) -> CheckSettings {
        CheckSettings {
            limits: self.limits.clamped(),
            supermodular_pairs: self.supermodular_pairs,
            seed: self.seed,
        }
    }

    pub fn selected_checks(&self) -> Result<Vec<&'static Check>, String> {
        if self.checks.is_empty() {
            return Ok(registry().iter().collect());
        }
        self.checks
            .iter()
            .map(|id| checks::find(id).ok_or_else(|| format!("unknown check {id:?}")))
            .collect()
    }

    pub fn validate(&self) -> Result<(), String> {
        self.corpus().validate()?;
        self.selected_checks()?;
        if self.threads == Some(0) {
            return Err("threads must be positive".into());
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckTally {
    pub pass: u64,
    pub fail: u64,
    pub skipped: u64,
    /// Skip reasons with their counts.
    pub skip_reasons: BTreeMap<String, u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Failure {
    pub index: u64,
    pub check: String,
    pub graph6: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generated_at: Option<u64>,
    pub family: Family,
    pub seed: u64,
    pub graphs: u64,
    pub checks: BTreeMap<String, CheckTally>,
    pub failure_count: u64,
    /// The first failures in corpus order.
    pub failures: Vec<Failure>,
    #[serde(skip)]
    pub all_failures: Vec<Failure>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    pub fn tally(&self, id: &str) -> Option<&CheckTally> {
        self.checks.get(id)
    }

    /// One `graph6 check-id` line per failure.
    pub fn certificate(&self) -> String {
        self.all_failures
            .iter()
            .map(|f| format!("{} {}\n", f.graph6, f.check))
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "family {} seed {}: {} graphs, {} failures\n",
            self.family.name(),
            self.seed,
            self.graphs,
            self.failure_count
        );
        for (id, t) in &self.checks {
            out += &format!(
                "  {id:<36} pass {:>7}  fail {:>5}  skipped {:>7}\n",
                t.pass, t.fail, t.skipped
            );
        }
        for f in &self.failures {
            out += &format!("  FAIL {} on graph #{} {}\n", f.check, f.index, f.graph6);
        }
        out
    }
}

#[derive(Default)]
struct Partial {
    tallies: BTreeMap<&'static str, CheckTally>,
    failures: Vec<Failure>,
}

impl Partial {
    fn merge(mut self, other: Partial) -> Partial {
        for (id, t) in other.tallies {
            let mine = self.tallies.entry(id).or_default();
            mine.pass += t.pass;
            mine.fail += t.fail;
            mine.skipped += t.skipped;
            for (reason, k) in t.skip_reasons {
                *mine.skip_reasons.entry(reason).or_default() += k;
            }
        }
        self.failures.extend(other.failures);
        self
    }
}

/// Runs the sweep. `inverted` flips one check's verdicts to exercise the
/// failure path.
pub fn run_sweep(config: &VerificationSweepConfig, inverted: Option<&str>) -> Result<SweepReport, String> {
    config.validate()?;
    let corpus = config.corpus();
    let settings = config.settings();
    let selected = config.selected_checks()?;
    let work = || {
        (0..corpus.len())
            .into_par_iter()
            .map(|index| {
                let item = corpus.item(index);
                let mut subject = Subject::new(&item.graph).with_stream(index);
                if let Some(c) = &item.coloring {
                    subject = subject.with_coloring(c, item.leaf_steps);
                }
                let mut part = Partial::default();
                for (id, outcome) in run_checks(&subject, &settings, &selected, inverted) {
                    let t = part.tallies.entry(id).or_default();
                    match outcome {
                        Outcome::Pass => t.pass += 1,
                        Outcome::Fail => {
                            t.fail += 1;
                            part.failures.push(Failure {
                                index,
                                check: id.to_string(),
                                graph6: write_graph6(&item.graph),
                            });
                        }
                        Outcome::Skipped(reason) => {
                            t.skipped += 1;
                            *t.skip_reasons.entry(reason).or_default() += 1;
                        }
                    }
                }
                part
            })
            .reduce(Partial::default, Partial::merge)
    };
    let partial = match config.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| e.to_string())?
            .install(work),
        None => work(),
    };
    let mut checks: BTreeMap<String, CheckTally> = selected
        .iter()
        .map(|c| (c.id.to_string(), CheckTally::default()))
        .collect();
    for (id, t) in partial.tallies {
        checks.insert(id.to_string(), t);
    }
    let mut all_failures = partial.failures;
    all_failures.sort();
    Ok(SweepReport {
        generated_at: None,
        family: config.family,
        seed: config.seed,
        graphs: corpus.len(),
        checks,
        failure_count: all_failures.len() as u64,
        failures: all_failures.iter().take(REPORTED_FAILURES).cloned().collect(),
        all_failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_exhaustive_sweep_passes() {
        let config = VerificationSweepConfig {
            max_n: 4,
            supermodular_pairs: 100,
            ..VerificationSweepConfig::default()
        };
        let report = run_sweep(&config, None).unwrap();
        assert_eq!(report.graphs, 76);
        assert!(report.passed(), "{}", report.to_text());
        assert_eq!(report.tally("dc_oracle").unwrap().pass, 76);
    }

    #[test]
    fn thread_count_does_not_change_report() {
        let base = VerificationSweepConfig {
            family: Family::RandomGnp,
            min_n: 1,
            max_n: 9,
            samples: 40,
            seed: 3,
            supermodular_pairs: 50,
            ..VerificationSweepConfig::default()
        };
        let one = run_sweep(&VerificationSweepConfig { threads: Some(1), ..base.clone() }, None).unwrap();
        let four = run_sweep(&VerificationSweepConfig { threads: Some(4), ..base }, None).unwrap();
        assert_eq!(one.to_json(), four.to_json());
    }

    #[test]
    fn inverted_check_produces_certificate() {
        let config = VerificationSweepConfig {
            max_n: 2,
            checks: vec!["dc_oracle".into()],
            ..VerificationSweepConfig::default()
        };
        let report = run_sweep(&config, Some("dc_oracle")).unwrap();
        assert_eq!(report.failure_count, 4);
        assert_eq!(report.certificate(), "? dc_oracle\n@ dc_oracle\nA? dc_oracle\nA_ dc_oracle\n");
    }

    #[test]
    fn config_errors() {
        let unknown = VerificationSweepConfig {
            checks: vec!["nope".into()],
            ..VerificationSweepConfig::default()
        };
        assert!(run_sweep(&unknown, None).is_err());
        let parsed: Result<VerificationSweepConfig, _> = serde_json::from_str(r#"{"family":"random-gnp","bogus":1}"#);
        assert!(parsed.is_err());
        let parsed: VerificationSweepConfig =
            serde_json::from_str(r#"{"family":"unicyclic-generated","samples":5}"#).unwrap();
        assert_eq!(parsed.samples, 5);
        assert_eq!(parsed.max_cycle, 9);
    }
}
