//! The `analyze` report: one structure, rendered as JSON or as a text
//! summary.

use std::collections::BTreeMap;

use critset_core::critical::{critical_profile, CriticalProfile};
use critset_core::gallai_edmonds::{check_structure, gallai_edmonds};
use critset_core::independence;
use critset_core::matching::max_matching_general;
use critset_core::unicyclic::{disconnected_invariants_with_limit, recognize, KeReason, Recognition};
use critset_core::{Graph, Outcome, VertexSet};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::checks::{registry, run_checks, Check, CheckSettings, Limits, Subject};
use crate::format::{Coloring, GraphFormat};

/// A value, or the reason it was not computed.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Field<T> {
    Value(T),
    Skipped { skipped: String },
}

impl<T> Field<T> {
    fn skipped(reason: impl Into<String>) -> Self {
        Field::Skipped {
            skipped: reason.into(),
        }
    }

    pub fn value(&self) -> Option<&T> {
        match self {
            Field::Value(v) => Some(v),
            Field::Skipped { .. } => None,
        }
    }

    pub fn is_skipped(&self) -> bool {
        matches!(self, Field::Skipped { .. })
    }
}

fn limited<T>(n: usize, limit: usize, what: &str, compute: impl FnOnce() -> T) -> Field<T> {
    if n <= limit {
        Field::Value(compute())
    } else {
        Field::skipped(format!("n = {n} exceeds the {what} limit {limit}"))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InputMeta {
    pub n: usize,
    pub m: usize,
    pub format: &'static str,
    pub sha256: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct IndependenceBlock {
    pub alpha: Field<usize>,
    pub core: Field<Vec<usize>>,
    pub maximum_independent_set_count: Field<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MatchingBlock {
    pub mu: usize,
    pub matching: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriticalBlock {
    pub d_c: usize,
    pub ker: Vec<usize>,
    pub diadem: Vec<usize>,
    pub critical_sets: Field<Vec<Vec<usize>>>,
    pub critical_independent_sets: Field<Vec<Vec<usize>>>,
    pub minimal_positive_sets: Field<Vec<Vec<usize>>>,
    pub minimal_positive_count: Field<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentEntry {
    pub vertices: Vec<usize>,
    pub factor_critical: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GallaiEdmondsBlock {
    #[serde(rename = "D")]
    pub d: Vec<usize>,
    #[serde(rename = "A")]
    pub a: Vec<usize>,
    #[serde(rename = "C")]
    pub c: Vec<usize>,
    pub components: Vec<ComponentEntry>,
    pub checks: BTreeMap<String, CheckEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckEntry {
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl From<&Outcome> for CheckEntry {
    fn from(o: &Outcome) -> Self {
        CheckEntry {
            status: o.label(),
            reason: match o {
                Outcome::Skipped(r) => Some(r.clone()),
                _ => None,
            },
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generated_at: Option<u64>,
    pub input: InputMeta,
    pub independence: IndependenceBlock,
    pub matching: MatchingBlock,
    /// `true`, `false`, or `"unknown (limit)"`.
    pub ke_status: Value,
    pub critical: CriticalBlock,
    pub gallai_edmonds: GallaiEdmondsBlock,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unicyclic: Option<Value>,
    pub checks: BTreeMap<String, CheckEntry>,
}

fn lists(sets: &[VertexSet]) -> Vec<Vec<usize>> {
    sets.iter().map(|s| s.to_vec()).collect()
}

pub fn analyze(g: &Graph, source: &[u8], format: GraphFormat, limits: Limits, seed: u64) -> AnalysisReport {
    let limits = limits.clamped();
    let n = g.order();
    let alpha = limited(n, limits.alpha, "independence number", || {
        independence::alpha_with_limit(g, limits.alpha).expect("within limit")
    });
    let omega = limited(n, limits.omega, "maximum independent set enumeration", || {
        independence::independence_profile(g).expect("within limit")
    });
    let m = max_matching_general(g);
    let mu = m.size();
    let ke_status = match alpha.value() {
        Some(a) => json!(a + mu == n),
        None => json!("unknown (limit)"),
    };

    let profile: CriticalProfile = critical_profile(g, limits.enumeration);
    let enum_skip = || format!("n = {n} exceeds the enumeration limit {}", limits.enumeration);
    let opt = |v: Option<Vec<VertexSet>>| match v {
        Some(s) => Field::Value(lists(&s)),
        None => Field::skipped(enum_skip()),
    };
    let minimal_positive_count = match &profile.minimal_positive_sets {
        Some(s) => Field::Value(s.len()),
        None => Field::skipped(enum_skip()),
    };
    let critical = CriticalBlock {
        d_c: profile.d_c,
        ker: profile.ker.to_vec(),
        diadem: profile.diadem.to_vec(),
        critical_sets: opt(profile.critical_sets),
        critical_independent_sets: opt(profile.critical_independent_sets),
        minimal_positive_sets: opt(profile.minimal_positive_sets),
        minimal_positive_count,
    };

    let partition = gallai_edmonds(g);
    let structure = check_structure(g, &partition);
    let gallai_edmonds = GallaiEdmondsBlock {
        d: partition.d_set.to_vec(),
        a: partition.a_set.to_vec(),
        c: partition.c_set.to_vec(),
        components: partition
            .d_components
            .iter()
            .map(|c| ComponentEntry {
                vertices: c.vertices.to_vec(),
                factor_critical: c.factor_critical,
            })
            .collect(),
        checks: structure
            .clauses()
            .iter()
            .map(|(id, o)| (id.to_string(), CheckEntry::from(*o)))
            .collect(),
    };

    let (unicyclic, recognized) = unicyclic_block(g, limits);
    let settings = CheckSettings {
        limits,
        seed,
        ..CheckSettings::default()
    };
    let mut subject = Subject::new(g);
    if let Some(c) = &recognized {
        subject = subject.with_coloring(c, None);
    }
    let all: Vec<&Check> = registry().iter().collect();
    let checks = run_checks(&subject, &settings, &all, None)
        .iter()
        .map(|(id, o)| (id.to_string(), CheckEntry::from(o)))
        .collect();

    AnalysisReport {
        generated_at: None,
        input: InputMeta {
            n,
            m: g.edge_count(),
            format: format.name(),
            sha256: hex::encode(Sha256::digest(source)),
        },
        independence: IndependenceBlock {
            alpha,
            core: match &omega {
                Field::Value(p) => Field::Value(p.core.to_vec()),
                Field::Skipped { skipped } => Field::skipped(skipped.clone()),
            },
            maximum_independent_set_count: match &omega {
                Field::Value(p) => Field::Value(p.omega_sets.len()),
                Field::Skipped { skipped } => Field::skipped(skipped.clone()),
            },
        },
        matching: MatchingBlock {
            mu,
            matching: m.edges(),
        },
        ke_status,
        critical,
        gallai_edmonds,
        unicyclic,
        checks,
    }
}

fn reason_text(r: KeReason) -> &'static str {
    match r {
        KeReason::EvenCycle => "even cycle",
        KeReason::LeafOnCycle { .. } => "pendant vertex on the cycle",
        KeReason::Stuck { .. } => "no reduction applies",
    }
}

fn unicyclic_block(
    g: &Graph,
    limits: Limits,
) -> (Option<Value>, Option<critset_core::unicyclic::ColoredUnicyclic>) {
    if g.cycle_rank() != 1 {
        return (None, None);
    }
    let cycle = g.find_unique_cycle().ok().flatten().unwrap_or_default();
    if g.is_connected() {
        return match recognize(g) {
            Ok(Recognition::NonKe(c)) => {
                let value = json!({
                    "connected": true,
                    "cycle": cycle,
                    "verdict": "non-KE",
                    "m": c.m(),
                    "coloring": Coloring::from(&c),
                    "predicted": {
                        "alpha": c.predicted_alpha(),
                        "mu": c.predicted_mu(),
                        "d_c": c.predicted_critical_difference(),
                    },
                });
                (Some(value), Some(c))
            }
            Ok(Recognition::Ke(r)) => (
                Some(json!({"connected": true, "cycle": cycle, "verdict": "KE", "reason": reason_text(r)})),
                None,
            ),
            Err(e) => (Some(json!({"connected": true, "error": e.to_string()})), None),
        };
    }
    let value = match disconnected_invariants_with_limit(g, limits.alpha) {
        Ok(r) => json!({
            "connected": false,
            "cycle": cycle,
            "verdict": "non-KE",
            "cycle_component": r.cycle_component.to_vec(),
            "d_c": [r.whole.critical_difference, r.cycle_part.critical_difference, r.forest_part.critical_difference],
            "alpha": [r.whole.alpha, r.cycle_part.alpha, r.forest_part.alpha],
            "mu": [r.whole.mu, r.cycle_part.mu, r.forest_part.mu],
            "d_c_equals_alpha_minus_mu": r.difference_identity(),
        }),
        Err(critset_core::Error::Precondition { .. }) => {
            json!({"connected": false, "cycle": cycle, "verdict": "KE"})
        }
        Err(e) => json!({"connected": false, "cycle": cycle, "verdict": "unknown", "skipped": e.to_string()}),
    };
    (Some(value), None)
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data") + "\n"
    }

    /// Whether a limit-dependent field was skipped.
    pub fn has_skipped_fields(&self) -> bool {
        self.independence.alpha.is_skipped()
            || self.independence.core.is_skipped()
            || self.independence.maximum_independent_set_count.is_skipped()
            || self.critical.critical_sets.is_skipped()
            || self.critical.minimal_positive_sets.is_skipped()
    }

    pub fn failed_checks(&self) -> Vec<&str> {
        self.checks
            .iter()
            .chain(&self.gallai_edmonds.checks)
            .filter(|(_, e)| e.status == "fail")
            .map(|(id, _)| id.as_str())
            .collect()
    }

    pub fn to_text(&self) -> String {
        fn show<T: std::fmt::Debug>(f: &Field<T>) -> String {
            match f {
                Field::Value(v) => format!("{v:?}"),
                Field::Skipped { skipped } => format!("skipped ({skipped})"),
            }
        }
        let mut out = format!(
            "graph: n = {}, m = {} ({}), sha256 {}\n",
            self.input.n, self.input.m, self.input.format, self.input.sha256
        );
        out += &format!("alpha = {}, mu = {}, KE = {}\n", show(&self.independence.alpha), self.matching.mu, self.ke_status);
        out += &format!("core = {}\n", show(&self.independence.core));
        out += &format!(
            "d_c = {}, ker = {:?}, diadem = {:?}\n",
            self.critical.d_c, self.critical.ker, self.critical.diadem
        );
        out += &format!("minimal positive sets: {}\n", show(&self.critical.minimal_positive_count));
        out += &format!(
            "Gallai-Edmonds: D = {:?}, A = {:?}, C = {:?}\n",
            self.gallai_edmonds.d, self.gallai_edmonds.a, self.gallai_edmonds.c
        );
        if let Some(u) = &self.unicyclic {
            out += &format!("unicyclic: {}\n", u["verdict"].as_str().unwrap_or("?"));
        }
        let count = |s: &str| self.checks.values().filter(|e| e.status == s).count();
        out += &format!(
            "checks: {} pass, {} fail, {} skipped\n",
            count("pass"),
            count("fail"),
            count("skipped")
        );
        for id in self.failed_checks() {
            out += &format!("  FAIL {id}\n");
        }
        out
    }
}
