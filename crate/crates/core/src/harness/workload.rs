use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cover::CoverSolution;
use crate::error::{Error, Result};
use crate::static_solvers::ChargeVector;
use crate::system::{ElementId, SetId, SetSystem};
use crate::universe::{UniverseState, UpdateStep};

/// Parameters of a random workload. Element ids range over `0..n`, so the
/// alive universe never exceeds the capacity `n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WorkloadSpec {
    pub n: usize,
    pub m: usize,
    pub f: usize,
    #[serde(rename = "C")]
    pub c: f64,
    pub steps: usize,
    /// Probability of an insertion when both kinds of update are possible.
    pub insert_ratio: f64,
    pub seed: u64,
}

impl Default for WorkloadSpec {
    fn default() -> Self {
        WorkloadSpec {
            n: 16,
            m: 12,
            f: 3,
            c: 1.0,
            steps: 500,
            insert_ratio: 0.6,
            seed: 0,
        }
    }
}

/// The generator's seeded RNG.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random set system plus trace.
///
/// Each element joins a uniform number of distinct sets in `1..=min(f, m)`
/// and set costs are uniform in `[1/C, 1]`. The trace inserts with
/// probability `insert_ratio` unless the universe is empty or full.
pub fn gen_random(spec: &WorkloadSpec) -> Result<(SetSystem, Vec<UpdateStep>)> {
    if spec.n == 0 || spec.m == 0 || spec.f == 0 || !(spec.c >= 1.0) {
        return Err(Error::Parameter(format!(
            "random workload needs n, m, f >= 1 and C >= 1, got n={} m={} f={} C={}",
            spec.n, spec.m, spec.f, spec.c
        )));
    }
    if !(0.0..=1.0).contains(&spec.insert_ratio) {
        return Err(Error::Parameter(format!(
            "insert ratio {} outside [0, 1]",
            spec.insert_ratio
        )));
    }
    let mut rng = rng(spec.seed);
    let system = random_system(&mut rng, spec.n, spec.m, spec.f, spec.c)?;
    let trace = random_trace(&mut rng, &system, spec.steps, spec.insert_ratio)?;
    Ok((system, trace))
}

pub fn random_system(rng: &mut impl Rng, n: usize, m: usize, f: usize, c: f64) -> Result<SetSystem> {
    let ids: Vec<usize> = (0..m).collect();
    let mut members = vec![Vec::new(); m];
    for e in 0..n {
        let k = rng.gen_range(1..=f.min(m));
        for &s in ids.choose_multiple(rng, k) {
            members[s].push(ElementId::from(e));
        }
    }
    let lo = 1.0 / c;
    let sets = members
        .into_iter()
        .map(|mem| {
            let cost = if lo < 1.0 { rng.gen_range(lo..=1.0) } else { 1.0 };
            (cost, mem)
        })
        .collect();
    SetSystem::new(n, c, n, sets)
}

pub fn random_trace(
    rng: &mut impl Rng,
    system: &SetSystem,
    steps: usize,
    insert_ratio: f64,
) -> Result<Vec<UpdateStep>> {
    let n = system.num_elements();
    let cap = system.capacity().min(n);
    let mut u = UniverseState::new(n, system.capacity());
    let mut absent: Vec<ElementId> = system.elements().collect();
    let mut trace = Vec::with_capacity(steps);
    for _ in 0..steps {
        let alive = u.num_alive();
        let insert = if alive == 0 {
            true
        } else if alive >= cap {
            false
        } else {
            rng.gen_bool(insert_ratio)
        };
        let step = if insert {
            let i = rng.gen_range(0..absent.len());
            UpdateStep::insert(absent.swap_remove(i))
        } else {
            let e = u.alive()[rng.gen_range(0..alive)];
            absent.push(e);
            UpdateStep::delete(e)
        };
        u.apply(step)?;
        trace.push(step);
    }
    Ok(trace)
}

/// `n·f` unit singleton sets, `f` per element; the trace inserts every
/// element and then deletes all but the last in id order.
pub fn gen_pd_adversarial(n: usize, f: usize) -> Result<(SetSystem, Vec<UpdateStep>)> {
    if n == 0 || f == 0 {
        return Err(Error::Parameter("pd adversarial workload needs n, f >= 1".into()));
    }
    let sets = (0..n * f).map(|i| (1.0, vec![ElementId::from(i / f)])).collect();
    let system = SetSystem::new(n, 1.0, n, sets)?;
    let mut trace: Vec<UpdateStep> = system.elements().map(UpdateStep::insert).collect();
    trace.extend((0..n - 1).map(|i| UpdateStep::delete(ElementId::from(i))));
    Ok((system, trace))
}

/// Vertex cover of `K_{n/2,n/2}` as set cover: sets are vertices (left side
/// first), elements are edges. Returns the system and the left and right
/// side covers.
pub fn gen_bipartite_reconfig(n: usize) -> Result<(SetSystem, CoverSolution, CoverSolution)> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::Parameter(format!("bipartite reconfiguration needs an even n >= 2, got {n}")));
    }
    let half = n / 2;
    let mut members = vec![Vec::new(); n];
    for i in 0..half {
        for j in 0..half {
            let edge = ElementId::from(i * half + j);
            members[i].push(edge);
            members[half + j].push(edge);
        }
    }
    let sets = members.into_iter().map(|m| (1.0, m)).collect();
    let system = SetSystem::new(half * half, 1.0, half * half, sets)?;
    let left = CoverSolution::from_sets(&system, (0..half).map(SetId::from))?;
    let right = CoverSolution::from_sets(&system, (half..n).map(SetId::from))?;
    Ok((system, left, right))
}

/// Deletion set for the robustness check: the `⌊δ·cost(X)⌋` alive
/// elements of highest charge, ties to the lowest id.
pub fn gen_robustness_attack(
    universe: &UniverseState,
    cover: &CoverSolution,
    charges: &ChargeVector,
    delta: f64,
) -> Result<Vec<ElementId>> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::Parameter(format!("delta must lie in (0, 1), got {delta}")));
    }
    let k = ((delta * cover.cost()).floor() as usize).min(universe.num_alive());
    let mut alive = universe.alive_sorted();
    alive.sort_by(|a, b| charges.get(*b).total_cmp(&charges.get(*a)).then(a.cmp(b)));
    alive.truncate(k);
    Ok(alive)
}

/// `k` distinct alive elements chosen uniformly.
pub fn random_deletions(rng: &mut impl Rng, universe: &UniverseState, k: usize) -> Vec<ElementId> {
    let mut alive = universe.alive_sorted();
    alive.shuffle(rng);
    alive.truncate(k);
    alive
}
