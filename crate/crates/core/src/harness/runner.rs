use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::cover::CoverSolution;
use crate::dynamic::{DynamicCover, LazyPrimalDual, LevelGreedy, RecomputeGreedy};
use crate::error::{Error, Result};
use crate::static_solvers::{exact_cover_default, harmonic};
use crate::system::{ElementId, SetId, SetSystem};
use crate::transform::{Mode, Transform, TransformConfig};
use crate::universe::{UniverseState, UpdateKind, UpdateStep};
use crate::COST_TOL;

/// Largest system solved exactly per step under `--oracle auto`.
pub const ORACLE_MAX_SETS: usize = 22;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algo {
    LevelGreedy,
    LazyPd,
    Recompute,
}

impl FromStr for Algo {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "level-greedy" => Ok(Algo::LevelGreedy),
            "lazy-pd" => Ok(Algo::LazyPd),
            "recompute" => Ok(Algo::Recompute),
            _ => Err(Error::Config(format!("unknown algorithm '{s}'"))),
        }
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algo::LevelGreedy => "level-greedy",
            Algo::LazyPd => "lazy-pd",
            Algo::Recompute => "recompute",
        })
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OracleMode {
    /// Exact optimum when the system is small enough (or every element lies
    /// in a single set), else the dual bound.
    Auto,
    Exact,
    Dual,
    Off,
}

impl FromStr for OracleMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(OracleMode::Auto),
            "exact" => Ok(OracleMode::Exact),
            "dual" => Ok(OracleMode::Dual),
            "off" => Ok(OracleMode::Off),
            _ => Err(Error::Config(format!("unknown oracle mode '{s}'"))),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub algo: Algo,
    pub transform: Option<Mode>,
    pub strict_naive: bool,
    pub epsilon: f64,
    /// Run the structural audits every this many steps; 0 disables them.
    pub audit_every: u64,
    pub oracle: OracleMode,
    /// Seed the workload came from, echoed in the summary.
    pub seed: Option<u64>,
    /// Keep per-step rows in the result.
    pub keep_rows: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            algo: Algo::LevelGreedy,
            transform: None,
            strict_naive: false,
            epsilon: 0.1,
            audit_every: 1,
            oracle: OracleMode::Auto,
            seed: None,
            keep_rows: true,
        }
    }
}

/// One CSV row.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepRow {
    pub step: u64,
    pub kind: UpdateKind,
    pub element: u64,
    pub recourse: usize,
    pub output_size: usize,
    pub cost_output: f64,
    pub cost_background: f64,
    pub opt_or_lb: Option<f64>,
    pub ratio: Option<f64>,
    pub interval: u64,
    pub phase: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub step: u64,
    pub property: String,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Summary {
    pub seed: Option<u64>,
    pub algo: Algo,
    pub transform: Option<Mode>,
    pub strict_naive: bool,
    pub epsilon: f64,
    pub steps: u64,
    pub max_recourse: usize,
    pub mean_recourse: f64,
    pub recourse_cap: Option<usize>,
    pub max_background_recourse: usize,
    /// Largest `cost / OPT` over steps with an exact optimum.
    pub max_ratio: Option<f64>,
    /// Largest `cost / lower bound` over steps with only a dual bound.
    pub max_ratio_vs_lower_bound: Option<f64>,
    pub exact_steps: u64,
    pub approx_bound: f64,
    pub intervals: u64,
    pub wall_time_per_update_us: f64,
    pub work_total: u64,
    pub work_per_update: f64,
    pub failures: usize,
    pub failures_by_property: BTreeMap<String, usize>,
    pub failure_samples: Vec<Failure>,
    pub passed: bool,
}

#[derive(Clone, Debug)]
pub struct ExperimentResult {
    pub rows: Vec<StepRow>,
    pub summary: Summary,
}

impl ExperimentResult {
    pub fn passed(&self) -> bool {
        self.summary.passed
    }

    pub fn write_csv(&self, out: impl Write) -> Result<()> {
        write_csv(&self.rows, out)
    }

    pub fn summary_json(&self) -> String {
        serde_json::to_string_pretty(&self.summary).expect("summary serializes")
    }
}

pub fn write_csv(rows: &[StepRow], out: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row).map_err(|e| Error::Internal(format!("csv: {e}")))?;
    }
    w.flush()?;
    Ok(())
}

/// Builds a background algorithm by name.
pub fn build_background<'a>(system: &'a SetSystem, algo: Algo, epsilon: f64) -> Result<Box<dyn DynamicCover + 'a>> {
    Ok(match algo {
        Algo::LevelGreedy => Box::new(LevelGreedy::new(system, epsilon)?),
        Algo::LazyPd => Box::new(LazyPrimalDual::new(system, epsilon)?),
        Algo::Recompute => Box::new(RecomputeGreedy::new(system)),
    })
}

/// Per-element count of output sets containing it, maintained from the
/// added and removed sets only.
pub struct CoverageTracker<'a> {
    system: &'a SetSystem,
    count: Vec<u32>,
    alive: Vec<bool>,
    uncovered: usize,
    sets: CoverSolution,
}

impl<'a> CoverageTracker<'a> {
    pub fn new(system: &'a SetSystem) -> Self {
        CoverageTracker {
            system,
            count: vec![0; system.num_elements()],
            alive: vec![false; system.num_elements()],
            uncovered: 0,
            sets: CoverSolution::new(),
        }
    }

    pub fn add_set(&mut self, s: SetId) {
        if !self.sets.insert(self.system, s) {
            return;
        }
        for &e in self.system.members(s) {
            self.count[e.idx()] += 1;
            if self.count[e.idx()] == 1 && self.alive[e.idx()] {
                self.uncovered -= 1;
            }
        }
    }

    pub fn remove_set(&mut self, s: SetId) {
        if !self.sets.remove(self.system, s) {
            return;
        }
        for &e in self.system.members(s) {
            self.count[e.idx()] -= 1;
            if self.count[e.idx()] == 0 && self.alive[e.idx()] {
                self.uncovered += 1;
            }
        }
    }

    pub fn update(&mut self, step: UpdateStep) {
        let i = step.element.idx();
        let now = step.kind == UpdateKind::Insert;
        if self.alive[i] != now && self.count[i] == 0 {
            if now {
                self.uncovered += 1;
            } else {
                self.uncovered -= 1;
            }
        }
        self.alive[i] = now;
    }

    /// Moves the tracked family to `target`; returns the number of changes.
    pub fn sync(&mut self, target: &CoverSolution) -> usize {
        let added: Vec<SetId> = target.difference(&self.sets).collect();
        let removed: Vec<SetId> = self.sets.difference(target).collect();
        for &s in &added {
            self.add_set(s);
        }
        for &s in &removed {
            self.remove_set(s);
        }
        added.len() + removed.len()
    }

    pub fn is_feasible(&self) -> bool {
        self.uncovered == 0
    }

    pub fn first_uncovered(&self) -> Option<ElementId> {
        (0..self.alive.len())
            .find(|&i| self.alive[i] && self.count[i] == 0)
            .map(ElementId::from)
    }
}

enum Pipeline<'a> {
    Raw(Box<dyn DynamicCover + 'a>),
    Wrapped(Box<Transform<'a, Box<dyn DynamicCover + 'a>>>),
}

impl<'a> Pipeline<'a> {
    fn background(&self) -> &dyn DynamicCover {
        match self {
            Pipeline::Raw(b) => b.as_ref(),
            Pipeline::Wrapped(t) => t.background().as_ref(),
        }
    }

    fn output(&self) -> &CoverSolution {
        match self {
            Pipeline::Raw(b) => b.current_cover(),
            Pipeline::Wrapped(t) => t.output(),
        }
    }
}

struct Checker {
    failures: Vec<Failure>,
    by_property: BTreeMap<String, usize>,
    total: usize,
}

impl Checker {
    const KEEP: usize = 50;

    fn fail(&mut self, step: u64, property: &str, detail: String) {
        self.total += 1;
        *self.by_property.entry(property.into()).or_default() += 1;
        if self.failures.len() < Self::KEEP {
            self.failures.push(Failure {
                step,
                property: property.into(),
                detail,
            });
        }
    }
}

/// Approximation factor checked at every step with an exact optimum.
pub fn approx_bound(system: &SetSystem, config: &ExperimentConfig, alpha: f64) -> f64 {
    let eps = config.epsilon;
    let n = system.capacity().max(2) as f64;
    match config.transform {
        Some(Mode::Lf) => (2.0 + eps) * alpha,
        Some(Mode::Hf) => (2.0 + 8.0 * eps) * n.ln(),
        None => match config.algo {
            Algo::LevelGreedy => (1.0 + 10.0 * eps) * harmonic(system.capacity()),
            _ => alpha,
        },
    }
}

/// Replays `trace` through the configured pipeline, checking every
/// guarantee along the way.
pub fn run_experiment(system: &SetSystem, trace: &[UpdateStep], config: &ExperimentConfig) -> Result<ExperimentResult> {
    let background = build_background(system, config.algo, config.epsilon)?;
    let alpha = background.approx_alpha();
    let mut pipeline = match config.transform {
        None => Pipeline::Raw(background),
        Some(mode) => {
            let tc = TransformConfig {
                epsilon: config.epsilon,
                mode,
                strict_naive: config.strict_naive,
            };
            Pipeline::Wrapped(Box::new(Transform::wrap(system, background, tc)?))
        }
    };
    let cap = match &pipeline {
        Pipeline::Wrapped(t) => Some(t.recourse_cap()),
        Pipeline::Raw(_) => None,
    };
    let bound = approx_bound(system, config, alpha);
    let use_exact = match config.oracle {
        OracleMode::Auto => system.num_sets() <= ORACLE_MAX_SETS || system.frequency() == 1,
        OracleMode::Exact => true,
        OracleMode::Dual | OracleMode::Off => false,
    };

    let mut universe = UniverseState::new(system.num_elements(), system.capacity());
    let mut tracker = CoverageTracker::new(system);
    let mut check = Checker {
        failures: Vec::new(),
        by_property: BTreeMap::new(),
        total: 0,
    };
    let mut plev_seen: Vec<Option<(u64, u32, u32)>> = vec![None; system.num_elements()];
    let mut rows = Vec::new();
    let mut max_recourse = 0;
    let mut sum_recourse = 0u64;
    let mut max_bg_recourse = 0;
    let mut max_ratio: Option<f64> = None;
    let mut max_ratio_lb: Option<f64> = None;
    let mut exact_steps = 0;
    let mut elapsed = 0.0;
    let mut steps = 0u64;

    for (i, &update) in trace.iter().enumerate() {
        let t = i as u64 + 1;
        universe.validate(update)?;
        let started = Instant::now();
        let outcome = match &mut pipeline {
            Pipeline::Raw(b) => b.apply(update).map(|r| (r, r, None)),
            Pipeline::Wrapped(tr) => tr
                .step(update)
                .map(|rep| (rep.recourse, rep.background_recourse, Some(rep))),
        };
        elapsed += started.elapsed().as_secs_f64();
        let (recourse, bg_recourse, report) = match outcome {
            Ok(v) => v,
            Err(Error::Trace(msg)) => return Err(Error::Trace(msg)),
            Err(err) => {
                check.fail(t, "update", err.to_string());
                break;
            }
        };
        universe.apply(update)?;
        steps = t;

        // Feasibility and recourse, from the set differences alone.
        tracker.update(update);
        let changes = tracker.sync(pipeline.output());
        if changes != recourse {
            check.fail(t, "recourse_count", format!("reported {recourse}, observed {changes}"));
        }
        if !tracker.is_feasible() {
            let e = tracker.first_uncovered();
            check.fail(t, "feasibility", format!("element {e:?} uncovered"));
        }
        if let Some(cap) = cap {
            if recourse > cap {
                check.fail(t, "recourse_cap", format!("recourse {recourse} > cap {cap}"));
            }
        }
        max_recourse = max_recourse.max(recourse);
        sum_recourse += recourse as u64;
        max_bg_recourse = max_bg_recourse.max(bg_recourse);

        let audit_now = config.audit_every > 0 && t.is_multiple_of(config.audit_every);
        if audit_now {
            if let Pipeline::Wrapped(tr) = &pipeline {
                if let Err(msg) = tr.check_containment() {
                    check.fail(t, "containment", msg);
                }
            }
            if let Some(lg) = pipeline.background().as_level_greedy() {
                let rep = lg.audit();
                if let Some(v) = rep.violations.first() {
                    check.fail(
                        t,
                        "level_audit",
                        format!("{} violations, first {}: {}", rep.violations.len(), v.rule, v.detail),
                    );
                }
                for &e in universe.alive() {
                    let Some(view) = lg.element(e) else { continue };
                    let key = (lg.epoch(), universe.lifespan(e));
                    if let Some((ep, life, prev)) = plev_seen[e.idx()] {
                        if (ep, life) == key && view.plev < prev {
                            check.fail(t, "plev_monotone", format!("element {e}: plev {prev} -> {}", view.plev));
                        }
                    }
                    plev_seen[e.idx()] = Some((key.0, key.1, view.plev));
                }
            }
        }

        let cost = pipeline.output().cost();
        let mut opt_or_lb = None;
        let mut ratio = None;
        if config.oracle != OracleMode::Off {
            let exact = if use_exact {
                exact_cover_default(system, &universe).ok().map(|c| c.cost())
            } else {
                None
            };
            let lb = pipeline.background().lower_bound();
            if let Some(opt) = exact {
                exact_steps += 1;
                let r = if opt > 0.0 {
                    cost / opt
                } else if cost == 0.0 {
                    1.0
                } else {
                    f64::INFINITY
                };
                let tol = COST_TOL * bound.max(1.0);
                if r > bound + tol {
                    check.fail(t, "approximation", format!("cost {cost} / OPT {opt} = {r} > {bound}"));
                }
                if let (Some(rep), Some(Mode::Lf)) = (&report, config.transform) {
                    let at_start = (1.0 + config.epsilon / 3.0) * alpha;
                    if rep.interval_completed && r > at_start + tol {
                        check.fail(
                            t,
                            "interval_start_approximation",
                            format!("cost {cost} / OPT {opt} = {r} > {at_start}"),
                        );
                    }
                }
                if let Some(lb) = lb {
                    if lb > opt + COST_TOL * opt.max(1.0) {
                        check.fail(t, "lower_bound", format!("lower bound {lb} > OPT {opt}"));
                    }
                }
                max_ratio = Some(max_ratio.map_or(r, |m: f64| m.max(r)));
                opt_or_lb = Some(opt);
                ratio = Some(r);
            } else if let Some(lb) = lb {
                if lb > 0.0 {
                    let r = cost / lb;
                    max_ratio_lb = Some(max_ratio_lb.map_or(r, |m: f64| m.max(r)));
                    ratio = Some(r);
                }
                opt_or_lb = Some(lb);
            }
        }

        if config.keep_rows {
            let (interval, phase) = match &report {
                Some(rep) => (rep.interval, rep.phase.to_string()),
                None => (0, "none".to_string()),
            };
            rows.push(StepRow {
                step: t,
                kind: update.kind,
                element: system.element_label(update.element),
                recourse,
                output_size: pipeline.output().len(),
                cost_output: cost,
                cost_background: pipeline.background().current_cover().cost(),
                opt_or_lb,
                ratio,
                interval,
                phase,
            });
        }
    }

    let intervals = match &pipeline {
        Pipeline::Wrapped(tr) => tr.interval(),
        Pipeline::Raw(_) => 0,
    };
    let work_total = pipeline.background().work_counter();
    let denom = steps.max(1) as f64;
    let summary = Summary {
        seed: config.seed,
        algo: config.algo,
        transform: config.transform,
        strict_naive: config.strict_naive,
        epsilon: config.epsilon,
        steps,
        max_recourse,
        mean_recourse: sum_recourse as f64 / denom,
        recourse_cap: cap,
        max_background_recourse: max_bg_recourse,
        max_ratio,
        max_ratio_vs_lower_bound: max_ratio_lb,
        exact_steps,
        approx_bound: bound,
        intervals,
        wall_time_per_update_us: elapsed * 1e6 / denom,
        work_total,
        work_per_update: work_total as f64 / denom,
        failures: check.total,
        failures_by_property: check.by_property,
        failure_samples: check.failures,
        passed: check.total == 0,
    };
    Ok(ExperimentResult { rows, summary })
}
