//! Randomized verification campaigns.
//!
//! Trial `i` draws its instance from a ChaCha8 stream selected by `(seed, i)`,
//! so results do not depend on scheduling. Trials run on a rayon pool and are
//! aggregated in trial order.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use ur_core::quantum::moment_matrices;
use ur_core::relations::{evaluate_with_moments, DEFAULT_TOL};
use ur_core::sampling::{random_density, random_hermitian};
use ur_core::{DensityState, ObservableTuple, RelationId, StateKind};

use crate::error::{CliError, CliResult};
use crate::report::{finite, REPORT_VERSION};
use crate::wire::ProblemFile;

/// Environment variable overriding the worker count; `0` means automatic.
pub const THREADS_ENV: &str = "UR_THREADS";

/// Tightness buckets `[0, 0.1), ..., [0.9, 1)` plus `>= 1`.
pub const HISTOGRAM_BUCKETS: usize = 11;

fn names<T: Display, S: Serializer>(items: &[T], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(items.iter().map(|x| x.to_string()))
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CampaignConfig {
    pub dims: Vec<usize>,
    pub num_observables: Vec<usize>,
    pub trials: u64,
    pub seed: u64,
    #[serde(serialize_with = "names")]
    pub relations: Vec<RelationId>,
    pub tol: f64,
    #[serde(serialize_with = "names")]
    pub state_kinds: Vec<StateKind>,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        Self {
            dims: vec![2, 3, 4, 5, 6],
            num_observables: vec![2, 3, 4, 5],
            trials: 1000,
            seed: 0,
            relations: RelationId::ALL.to_vec(),
            tol: DEFAULT_TOL,
            state_kinds: StateKind::ALL.to_vec(),
        }
    }
}

impl CampaignConfig {
    pub fn validate(&self) -> CliResult<()> {
        let bad = |m: &str| Err(CliError::Config(m.to_string()));
        if self.trials == 0 {
            return bad("trials must be at least 1");
        }
        if self.dims.is_empty() || self.dims.iter().any(|&d| d < 2) {
            return bad("dims must be a nonempty list of integers >= 2");
        }
        if self.num_observables.is_empty() || self.num_observables.contains(&0) {
            return bad("num-obs must be a nonempty list of positive integers");
        }
        if self.relations.is_empty() {
            return bad("at least one relation is required");
        }
        if self.state_kinds.is_empty() {
            return bad("at least one state kind is required");
        }
        if !(self.tol.is_finite() && self.tol >= 0.0) {
            return bad("tol must be finite and nonnegative");
        }
        Ok(())
    }
}

/// One randomly drawn (state, tuple).
#[derive(Clone, Debug)]
pub struct Instance {
    pub trial: u64,
    pub kind: StateKind,
    pub state: DensityState,
    pub tuple: ObservableTuple,
}

pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn pick<T: Copy>(items: &[T], rng: &mut ChaCha8Rng) -> T {
    items[rng.random_range(0..items.len())]
}

/// The instance of trial `trial`; observables are not centered.
pub fn draw_instance(config: &CampaignConfig, trial: u64) -> Instance {
    let mut rng = trial_rng(config.seed, trial);
    let dim = pick(&config.dims, &mut rng);
    let n = pick(&config.num_observables, &mut rng);
    let kind = pick(&config.state_kinds, &mut rng);
    let state = random_density(dim, &mut rng, kind);
    let tuple = ObservableTuple::from_matrices((0..n).map(|_| random_hermitian(dim, &mut rng)).collect())
        .expect("random Hermitian matrices share a dimension");
    Instance {
        trial,
        kind,
        state,
        tuple,
    }
}

/// `(rhs - lhs) / max(1, |rhs|)`; a report is satisfied iff this is at
/// least `-tol`.
pub fn scaled_margin(lhs: f64, rhs: f64) -> f64 {
    (rhs - lhs) / rhs.abs().max(1.0)
}

fn bucket(tightness: f64) -> usize {
    if tightness >= 1.0 {
        HISTOGRAM_BUCKETS - 1
    } else if tightness > 0.0 {
        ((tightness * 10.0) as usize).min(HISTOGRAM_BUCKETS - 2)
    } else {
        0
    }
}

#[derive(Clone, Debug)]
enum Outcome {
    Skipped,
    Failed(String),
    Evaluated {
        violations: u64,
        margin: f64,
        label: Option<String>,
        lhs: f64,
        rhs: f64,
        tightness: Option<f64>,
    },
}

#[derive(Clone, Debug)]
struct TrialRecord {
    dim: usize,
    n: usize,
    kind: StateKind,
    outcomes: Vec<Outcome>,
}

fn run_trial(config: &CampaignConfig, trial: u64) -> TrialRecord {
    let inst = draw_instance(config, trial);
    let moments = moment_matrices(&inst.state, &inst.tuple);
    let outcomes = config
        .relations
        .iter()
        .map(|&r| {
            if inst.tuple.len() < r.min_observables() {
                return Outcome::Skipped;
            }
            let m = match &moments {
                Ok(m) => m,
                Err(e) => return Outcome::Failed(e.to_string()),
            };
            match evaluate_with_moments(r, &inst.state, &inst.tuple, m, config.tol) {
                Err(e) => Outcome::Failed(e.to_string()),
                Ok(ev) => {
                    let worst = ev
                        .reports
                        .iter()
                        .min_by(|a, b| {
                            scaled_margin(a.lhs, a.rhs).total_cmp(&scaled_margin(b.lhs, b.rhs))
                        })
                        .expect("every relation yields a report");
                    Outcome::Evaluated {
                        violations: ev.reports.iter().filter(|r| !r.satisfied).count() as u64,
                        margin: scaled_margin(worst.lhs, worst.rhs),
                        label: worst.label.clone(),
                        lhs: worst.lhs,
                        rhs: worst.rhs,
                        tightness: ev.tightness(),
                    }
                }
            }
        })
        .collect();
    TrialRecord {
        dim: inst.state.dim(),
        n: inst.tuple.len(),
        kind: inst.kind,
        outcomes,
    }
}

/// Replay data for the lowest-margin report of a relation.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct WorstWitness {
    pub seed: u64,
    pub trial: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub state_kind: String,
    pub instance: ProblemFile,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TrialError {
    pub trial: u64,
    pub message: String,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RelationStats {
    /// Trials on which the relation was evaluated.
    pub trials: u64,
    /// Unsatisfied reports.
    pub violations: u64,
    pub errors: u64,
    /// Trials with too few observables for the relation.
    pub skipped: u64,
    /// Smallest scaled margin `(rhs - lhs) / max(1, |rhs|)`.
    pub min_margin: Option<f64>,
    /// Largest `lhs / rhs` over trials whose right side is resolved
    /// (`rhs > tol * max(1, |rhs|)`).
    pub max_tightness: Option<f64>,
    /// Tightness buckets of the resolved trials.
    pub histogram: [u64; HISTOGRAM_BUCKETS],
    /// Trials whose right side is within the tolerance floor, where
    /// `lhs / rhs` is rounding noise.
    pub unresolved: u64,
    pub worst_witness: Option<WorstWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_error: Option<TrialError>,
}

impl RelationStats {
    fn new() -> Self {
        Self {
            trials: 0,
            violations: 0,
            errors: 0,
            skipped: 0,
            min_margin: None,
            max_tightness: None,
            histogram: [0; HISTOGRAM_BUCKETS],
            unresolved: 0,
            worst_witness: None,
            first_error: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CampaignResult {
    pub config: CampaignConfig,
    pub relations: BTreeMap<RelationId, RelationStats>,
    /// Wall-clock time; deliberately left out of the serialized report.
    pub elapsed: Duration,
    records: Vec<TrialRecord>,
}

#[derive(Serialize)]
struct ReportView<'a> {
    config: &'a CampaignConfig,
    relations: BTreeMap<&'static str, &'a RelationStats>,
    version: &'static str,
}

impl CampaignResult {
    pub fn total_violations(&self) -> u64 {
        self.relations.values().map(|s| s.violations).sum()
    }

    pub fn total_errors(&self) -> u64 {
        self.relations.values().map(|s| s.errors).sum()
    }

    /// The JSON report; byte-identical for identical configurations.
    pub fn to_json(&self) -> String {
        crate::wire::to_json(&ReportView {
            config: &self.config,
            relations: self
                .relations
                .iter()
                .map(|(r, s)| (r.as_str(), s))
                .collect(),
            version: REPORT_VERSION,
        })
    }

    /// Per-trial tightness ratios as CSV.
    pub fn tightness_csv(&self) -> String {
        let mut s = String::from("trial,dim,numObservables,stateKind,relation,tightness,satisfied\n");
        for (t, rec) in self.records.iter().enumerate() {
            for (r, o) in self.config.relations.iter().zip(&rec.outcomes) {
                if let Outcome::Evaluated {
                    violations,
                    tightness,
                    ..
                } = o
                {
                    let tightness = tightness.map_or(String::new(), |x| format!("{x:e}"));
                    s.push_str(&format!(
                        "{t},{},{},{},{r},{tightness},{}\n",
                        rec.dim,
                        rec.n,
                        rec.kind,
                        *violations == 0
                    ));
                }
            }
        }
        s
    }

    pub fn summary(&self) -> String {
        let mut s = format!(
            "{} trials, seed {}, {:.2?}\n",
            self.config.trials, self.config.seed, self.elapsed
        );
        for (r, st) in &self.relations {
            s.push_str(&format!(
                "{:<30} evaluated {:>6}  violations {:>4}  errors {:>4}  min margin {:>11}  max tightness {}\n",
                r.as_str(),
                st.trials,
                st.violations,
                st.errors,
                st.min_margin.map_or("-".into(), |m| format!("{m:.3e}")),
                st.max_tightness.map_or("-".into(), |t| format!("{t:.6}")),
            ));
        }
        s
    }
}

/// Worker count from `UR_THREADS`; `0` or unset lets rayon decide.
pub fn threads_from_env() -> CliResult<usize> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(0),
        Ok(v) if v.trim().is_empty() => Ok(0),
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Config(format!("{THREADS_ENV} must be a nonnegative integer, got '{v}'"))),
    }
}

pub fn run_campaign(config: &CampaignConfig) -> CliResult<CampaignResult> {
    run_campaign_with_threads(config, threads_from_env()?)
}

pub fn run_campaign_with_threads(config: &CampaignConfig, threads: usize) -> CliResult<CampaignResult> {
    config.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Config(format!("thread pool: {e}")))?;
    let start = Instant::now();
    let records: Vec<TrialRecord> = pool.install(|| {
        (0..config.trials)
            .into_par_iter()
            .map(|t| run_trial(config, t))
            .collect()
    });

    let mut stats: BTreeMap<RelationId, RelationStats> = config
        .relations
        .iter()
        .map(|&r| (r, RelationStats::new()))
        .collect();
    let mut worst: BTreeMap<RelationId, (u64, f64, Option<String>, f64, f64)> = BTreeMap::new();
    for (t, rec) in records.iter().enumerate() {
        let t = t as u64;
        for (&r, o) in config.relations.iter().zip(&rec.outcomes) {
            let st = stats.get_mut(&r).expect("stats for every relation");
            match o {
                Outcome::Skipped => st.skipped += 1,
                Outcome::Failed(msg) => {
                    st.errors += 1;
                    if st.first_error.is_none() {
                        st.first_error = Some(TrialError {
                            trial: t,
                            message: msg.clone(),
                        });
                    }
                }
                Outcome::Evaluated {
                    violations,
                    margin,
                    label,
                    lhs,
                    rhs,
                    tightness,
                } => {
                    st.trials += 1;
                    st.violations += violations;
                    match tightness {
                        Some(t) => {
                            st.histogram[bucket(*t)] += 1;
                            st.max_tightness = Some(st.max_tightness.map_or(*t, |m| m.max(*t)));
                        }
                        None => st.unresolved += 1,
                    }
                    if worst.get(&r).is_none_or(|w| *margin < w.1) {
                        worst.insert(r, (t, *margin, label.clone(), *lhs, *rhs));
                    }
                }
            }
        }
    }
    for (r, (trial, margin, label, lhs, rhs)) in worst {
        let inst = draw_instance(config, trial);
        let st = stats.get_mut(&r).expect("stats for every relation");
        st.min_margin = finite(margin);
        st.max_tightness = st.max_tightness.and_then(finite);
        st.worst_witness = Some(WorstWitness {
            seed: config.seed,
            trial,
            label,
            lhs,
            rhs,
            margin,
            state_kind: inst.kind.to_string(),
            instance: ProblemFile::from_problem(&inst.state, &inst.tuple),
        });
    }

    Ok(CampaignResult {
        config: config.clone(),
        relations: stats,
        elapsed: start.elapsed(),
        records,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> CampaignConfig {
        CampaignConfig {
            trials: 40,
            seed: 7,
            ..CampaignConfig::default()
        }
    }

    #[test]
    fn single_trial_single_relation() {
        let cfg = CampaignConfig {
            trials: 1,
            relations: vec![RelationId::RobertsonSup],
            ..small()
        };
        let res = run_campaign_with_threads(&cfg, 1).unwrap();
        let st = &res.relations[&RelationId::RobertsonSup];
        assert_eq!((st.trials, st.violations, st.errors), (1, 0, 0));
        assert_eq!(st.histogram.iter().sum::<u64>() + st.unresolved, 1);
    }

    #[test]
    fn instances_depend_only_on_seed_and_trial() {
        let cfg = small();
        let a = draw_instance(&cfg, 5);
        let b = draw_instance(&cfg, 5);
        assert_eq!(a.state, b.state);
        assert_eq!(a.tuple, b.tuple);
        assert_ne!(draw_instance(&cfg, 6).state, a.state);
    }

    #[test]
    fn thread_count_does_not_change_the_report() {
        let cfg = small();
        let one = run_campaign_with_threads(&cfg, 1).unwrap().to_json();
        let many = run_campaign_with_threads(&cfg, 3).unwrap().to_json();
        assert_eq!(one, many);
        assert!(!one.contains("elapsed"));
    }

    #[test]
    fn too_few_observables_are_skipped() {
        let cfg = CampaignConfig {
            num_observables: vec![1],
            relations: vec![RelationId::PinchingTraceStep, RelationId::RobertsonSup],
            ..small()
        };
        let res = run_campaign_with_threads(&cfg, 1).unwrap();
        assert_eq!(res.relations[&RelationId::PinchingTraceStep].skipped, 40);
        assert_eq!(res.relations[&RelationId::RobertsonSup].trials, 40);
    }

    #[test]
    fn invalid_configs() {
        for cfg in [
            CampaignConfig { trials: 0, ..small() },
            CampaignConfig { dims: vec![1], ..small() },
            CampaignConfig { dims: vec![], ..small() },
            CampaignConfig { relations: vec![], ..small() },
            CampaignConfig { tol: f64::NAN, ..small() },
        ] {
            assert!(matches!(run_campaign_with_threads(&cfg, 1), Err(CliError::Config(_))));
        }
    }

    #[test]
    fn buckets() {
        assert_eq!(bucket(0.0), 0);
        assert_eq!(bucket(-1e-17), 0);
        assert_eq!(bucket(0.55), 5);
        assert_eq!(bucket(0.999_999), 9);
        assert_eq!(bucket(1.0), 10);
        assert_eq!(bucket(f64::INFINITY), 10);
        assert_eq!(bucket(f64::NAN), 0);
    }
}
