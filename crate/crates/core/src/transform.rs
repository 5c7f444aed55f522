//! Low-recourse wrapper around any [`DynamicCover`].
//!
//! Time is cut into intervals. At the start of interval `i` the wrapper
//! snapshots its own output `X_i` and the background cover `B_i`, then
//! spends `h` steps adding `B_i \ X_i` and `h` more removing `X_i \ B_i`,
//! a bounded number of sets per step. Elements inserted meanwhile are
//! covered naively by an extra set (the family `N_i`). At the end of the
//! interval the output is exactly `B_i ∪ N_i`.
//!
//! When the interval would be shorter than one step, the wrapper switches
//! to `B_i` within the step; the number of changes is still below the cap.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cover::CoverSolution;
use crate::dynamic::DynamicCover;
use crate::error::{Error, Result};
use crate::system::{ElementId, SetId, SetSystem};
use crate::universe::{UniverseState, UpdateKind, UpdateStep};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Interval lengths scaled down by the background's approximation factor.
    Lf,
    /// Unscaled interval lengths; needs a robust background.
    Hf,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Lf => "lf",
            Mode::Hf => "hf",
        })
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Phase {
    Adding,
    Removing,
    /// The previous interval is finished; the next step opens a new one.
    Boundary,
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Phase::Adding => "adding",
            Phase::Removing => "removing",
            Phase::Boundary => "boundary",
        })
    }
}

#[derive(Copy, Clone, Debug, Serialize, Deserialize)]
pub struct TransformConfig {
    pub epsilon: f64,
    pub mode: Mode,
    /// Add a naive set for every insertion, even covered ones.
    pub strict_naive: bool,
}

impl TransformConfig {
    pub fn new(epsilon: f64, mode: Mode) -> Self {
        TransformConfig {
            epsilon,
            mode,
            strict_naive: false,
        }
    }
}

/// Outcome of one update.
#[derive(Clone, Debug, Serialize)]
pub struct StepReport {
    pub step: u64,
    pub kind: UpdateKind,
    pub element: ElementId,
    /// Sets added to plus removed from the output.
    pub recourse: usize,
    pub output_size: usize,
    pub output_cost: f64,
    pub background_cost: f64,
    pub background_recourse: usize,
    pub interval: u64,
    /// Phase during which the step's changes were emitted.
    pub phase: Phase,
    /// The step finished an interval; the output now equals `B_i ∪ N_i`.
    pub interval_completed: bool,
}

pub struct Transform<'a, B> {
    system: &'a SetSystem,
    background: B,
    config: TransformConfig,
    scale: f64,
    alpha: f64,
    cap: usize,
    universe: UniverseState,
    output: CoverSolution,
    interval: u64,
    phase: Phase,
    x_snap: CoverSolution,
    b_snap: CoverSolution,
    naive: BTreeSet<SetId>,
    pending_add: Vec<SetId>,
    pending_remove: Vec<SetId>,
    cursor: usize,
    quota: usize,
    h: u64,
    steps_into_phase: u64,
    steps: u64,
    last_recourse: usize,
}

impl<'a, B: DynamicCover> Transform<'a, B> {
    /// Wraps `background`, which must currently cover the empty universe.
    pub fn wrap(system: &'a SetSystem, background: B, config: TransformConfig) -> Result<Self> {
        let universe = UniverseState::new(system.num_elements(), system.capacity());
        Self::wrap_with_universe(system, background, config, universe)
    }

    /// Wraps `background` whose current cover is feasible for `universe`.
    pub fn wrap_with_universe(
        system: &'a SetSystem,
        background: B,
        config: TransformConfig,
        universe: UniverseState,
    ) -> Result<Self> {
        let eps = config.epsilon;
        let alpha = background.approx_alpha();
        let scale = match config.mode {
            Mode::Lf => {
                if !(eps > 0.0 && eps <= 0.5) {
                    return Err(Error::Config(format!("lf mode needs 0 < epsilon <= 0.5, got {eps}")));
                }
                if !(alpha >= 2.0) {
                    return Err(Error::Config(format!(
                        "lf mode needs a background approximation factor >= 2, got {alpha}"
                    )));
                }
                alpha
            }
            Mode::Hf => {
                if !(eps > 0.0 && eps < 0.25) {
                    return Err(Error::Config(format!("hf mode needs 0 < epsilon < 1/4, got {eps}")));
                }
                if !background.is_robust() {
                    return Err(Error::Config(format!(
                        "hf mode needs a robust background, {} is not",
                        background.name()
                    )));
                }
                1.0
            }
        };
        let cap = (12.0 * scale * system.aspect_ratio() / eps).ceil() as usize + 1;
        let b0 = background.current_cover().clone();
        let mut t = Transform {
            system,
            background,
            config,
            scale,
            alpha,
            cap,
            universe,
            output: b0.clone(),
            interval: 0,
            phase: Phase::Boundary,
            x_snap: b0.clone(),
            b_snap: b0,
            naive: BTreeSet::new(),
            pending_add: Vec::new(),
            pending_remove: Vec::new(),
            cursor: 0,
            quota: 0,
            h: 0,
            steps_into_phase: 0,
            steps: 0,
            last_recourse: 0,
        };
        // The first interval only maintains B_0 naively.
        let length = t.interval_length();
        if length >= 1.0 {
            t.h = t.half_length();
            t.phase = Phase::Adding;
        }
        Ok(t)
    }

    /// Wraps `background` but starts from `initial` instead of its cover;
    /// the first step opens an interval moving the output towards the
    /// background cover. Both covers must be feasible for `universe`.
    pub fn start_from(
        system: &'a SetSystem,
        background: B,
        config: TransformConfig,
        universe: UniverseState,
        initial: CoverSolution,
    ) -> Result<Self> {
        let mut t = Self::wrap_with_universe(system, background, config, universe)?;
        t.output = initial.clone();
        t.x_snap = initial;
        t.phase = Phase::Boundary;
        Ok(t)
    }

    pub fn background(&self) -> &B {
        &self.background
    }

    pub fn config(&self) -> TransformConfig {
        self.config
    }

    pub fn output(&self) -> &CoverSolution {
        &self.output
    }

    pub fn universe(&self) -> &UniverseState {
        &self.universe
    }

    /// Approximation factor of the background.
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// `α` in lf mode, 1 in hf mode.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Largest recourse any single step may have, `⌈12·scale·C/ε⌉ + 1`.
    pub fn recourse_cap(&self) -> usize {
        self.cap
    }

    pub fn interval(&self) -> u64 {
        self.interval
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    /// Half the current interval length, in steps.
    pub fn half_length(&self) -> u64 {
        let m = self.x_snap.cost().max(self.b_snap.cost());
        ((self.config.epsilon / (12.0 * self.scale)) * m).ceil().max(1.0) as u64
    }

    /// `ε/(6·scale)·max(cost X_i, cost B_i)`.
    pub fn interval_length(&self) -> f64 {
        let m = self.x_snap.cost().max(self.b_snap.cost());
        self.config.epsilon / (6.0 * self.scale) * m
    }

    pub fn snapshot_x(&self) -> &CoverSolution {
        &self.x_snap
    }

    pub fn snapshot_b(&self) -> &CoverSolution {
        &self.b_snap
    }

    pub fn naive_sets(&self) -> &BTreeSet<SetId> {
        &self.naive
    }

    pub fn pending_add(&self) -> &[SetId] {
        &self.pending_add
    }

    pub fn pending_remove(&self) -> &[SetId] {
        &self.pending_remove
    }

    pub fn last_recourse(&self) -> usize {
        self.last_recourse
    }

    fn in_target(&self, s: SetId) -> bool {
        self.b_snap.contains(s) || self.naive.contains(&s)
    }

    // Snapshots X_i and B_i. Returns false when the interval is shorter than
    // one step and the switch happens at once.
    fn begin_interval(&mut self) -> bool {
        self.interval += 1;
        self.x_snap = self.output.clone();
        self.b_snap = self.background.current_cover().clone();
        self.naive.clear();
        self.pending_add = self.b_snap.difference(&self.x_snap).collect();
        self.pending_remove = self.x_snap.difference(&self.b_snap).collect();
        self.steps_into_phase = 0;
        if self.interval_length() < 1.0 {
            return false;
        }
        self.h = self.half_length();
        self.phase = Phase::Adding;
        self.cursor = 0;
        self.quota = self.pending_add.len().div_ceil(self.h as usize);
        true
    }

    fn add_output(&mut self, s: SetId) -> usize {
        usize::from(self.output.insert(self.system, s))
    }

    fn naive_insert(&mut self, e: ElementId) -> usize {
        let inc = self.system.incidence(e);
        if !self.config.strict_naive {
            let by_output = inc.iter().any(|&s| self.output.contains(s));
            let by_target = inc.iter().any(|&s| self.in_target(s));
            if by_output && by_target {
                return 0;
            }
        }
        let s = self.system.cheapest_containing(e);
        self.naive.insert(s);
        self.add_output(s)
    }

    fn emit_quota(&mut self) -> usize {
        let mut emitted = 0;
        match self.phase {
            Phase::Adding => {
                while emitted < self.quota && self.cursor < self.pending_add.len() {
                    let s = self.pending_add[self.cursor];
                    self.cursor += 1;
                    emitted += self.add_output(s);
                }
            }
            Phase::Removing => {
                while emitted < self.quota && self.cursor < self.pending_remove.len() {
                    let s = self.pending_remove[self.cursor];
                    self.cursor += 1;
                    if self.in_target(s) {
                        continue;
                    }
                    emitted += usize::from(self.output.remove(self.system, s));
                }
            }
            Phase::Boundary => {}
        }
        emitted
    }

    // Returns true when the interval just completed.
    fn advance(&mut self) -> Result<bool> {
        self.steps_into_phase += 1;
        if self.steps_into_phase < self.h {
            return Ok(false);
        }
        self.steps_into_phase = 0;
        match self.phase {
            Phase::Adding => {
                if self.cursor < self.pending_add.len() {
                    return Err(Error::Internal("adding phase ended with pending sets".into()));
                }
                self.phase = Phase::Removing;
                self.cursor = 0;
                self.quota = self.pending_remove.len().div_ceil(self.h as usize);
                Ok(false)
            }
            Phase::Removing => {
                if self.cursor < self.pending_remove.len() {
                    return Err(Error::Internal("removing phase ended with pending sets".into()));
                }
                self.phase = Phase::Boundary;
                Ok(true)
            }
            Phase::Boundary => Ok(false),
        }
    }

    /// Processes one update: forwards it to the background, covers an
    /// inserted element naively if needed, and emits this step's share of
    /// the scheduled changes.
    pub fn step(&mut self, update: UpdateStep) -> Result<StepReport> {
        self.universe.validate(update)?;
        let background_recourse = self.background.apply(update)?;
        self.universe.apply(update)?;
        self.steps += 1;

        let mut recourse = 0;
        let emitted_phase;
        let completed;
        let phased = self.phase != Phase::Boundary || self.begin_interval();
        if phased {
            if update.kind == UpdateKind::Insert {
                recourse += self.naive_insert(update.element);
            }
            emitted_phase = self.phase;
            recourse += self.emit_quota();
            completed = self.advance()?;
        } else {
            // Instant switch to B_i; the background covers the new element.
            let target = self.b_snap.clone();
            recourse += self.output.distance(&target);
            self.output = target;
            emitted_phase = Phase::Boundary;
            completed = true;
        }

        if recourse > self.cap {
            return Err(Error::Internal(format!(
                "step {} recourse {recourse} exceeds the cap {}",
                self.steps, self.cap
            )));
        }
        self.last_recourse = recourse;
        Ok(StepReport {
            step: self.steps,
            kind: update.kind,
            element: update.element,
            recourse,
            output_size: self.output.len(),
            output_cost: self.output.cost(),
            background_cost: self.background.current_cover().cost(),
            background_recourse,
            interval: self.interval,
            phase: emitted_phase,
            interval_completed: completed,
        })
    }

    /// Checks the phase containment relations by set algebra.
    pub fn check_containment(&self) -> std::result::Result<(), String> {
        let out = self.output.members();
        let in_x = |s: &SetId| self.x_snap.contains(*s);
        let in_b = |s: &SetId| self.b_snap.contains(*s);
        let in_n = |s: &SetId| self.naive.contains(s);
        if let Some(s) = out.iter().find(|s| !in_x(s) && !in_b(s) && !in_n(s)) {
            return Err(format!("output set {s} is outside X ∪ B ∪ N"));
        }
        let missing = |pred: &dyn Fn(&SetId) -> bool, what: &str| -> std::result::Result<(), String> {
            let all = self.x_snap.iter().chain(self.b_snap.iter()).chain(self.naive.iter().copied());
            for s in all {
                if pred(&s) && !out.contains(&s) {
                    return Err(format!("{what} set {s} missing from the output"));
                }
            }
            Ok(())
        };
        match self.phase {
            Phase::Adding => missing(&|s| in_x(s) || in_n(s), "X ∪ N"),
            Phase::Removing => missing(&|s| in_b(s) || in_n(s), "B ∪ N"),
            Phase::Boundary => {
                missing(&|s| in_b(s) || in_n(s), "B ∪ N")?;
                match out.iter().find(|s| !in_b(s) && !in_n(s)) {
                    Some(s) => Err(format!("set {s} left over at interval end")),
                    None => Ok(()),
                }
            }
        }
    }
}
