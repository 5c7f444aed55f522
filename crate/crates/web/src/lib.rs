//! Browser demo. Each export returns a JSON string for `www/main.js` to plot.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use dyncover::dynamic::DynamicCover;
use dyncover::harness::{build_background, gen_pd_adversarial, gen_random, reconfigure_bipartite, Algo, WorkloadSpec};
use dyncover::static_solvers::{exact_cover_default, greedy_cover, harmonic, primal_dual_cover, PdMode};
use dyncover::transform::{Mode, Phase, Transform, TransformConfig};
use dyncover::{Result, UniverseState};

#[derive(Serialize)]
pub struct SeriesPoint {
    pub step: u64,
    pub recourse: usize,
    pub background_recourse: usize,
    pub output_cost: f64,
    pub background_cost: f64,
    pub phase: Phase,
}

#[derive(Serialize)]
pub struct Series {
    pub recourse_cap: usize,
    pub alpha: f64,
    pub points: Vec<SeriesPoint>,
}

/// Random workload replayed through `algo` wrapped by the transformation.
pub fn transform_series(spec: &WorkloadSpec, algo: Algo, mode: Mode, epsilon: f64) -> Result<Series> {
    let (system, trace) = gen_random(spec)?;
    let bg = build_background(&system, algo, epsilon)?;
    let mut t = Transform::wrap(&system, bg, TransformConfig::new(epsilon, mode))?;
    let mut points = Vec::with_capacity(trace.len());
    for &step in &trace {
        let r = t.step(step)?;
        points.push(SeriesPoint {
            step: r.step,
            recourse: r.recourse,
            background_recourse: r.background_recourse,
            output_cost: r.output_cost,
            background_cost: r.background_cost,
            phase: r.phase,
        });
    }
    Ok(Series {
        recourse_cap: t.recourse_cap(),
        alpha: t.background().approx_alpha(),
        points,
    })
}

#[derive(Serialize)]
pub struct RobustnessPoint {
    pub deleted: usize,
    pub opt: f64,
    pub greedy_ratio: f64,
    pub pd_ratio: f64,
    /// `H_n/(1−δ)` with `δ = deleted / cost(greedy)`, absent once `δ ≥ 1`.
    pub greedy_bound: Option<f64>,
}

/// Frozen greedy and all-tight primal-dual covers on the primal-dual
/// adversarial instance, scored against the exact optimum as elements die.
pub fn robustness_curve(n: usize, f: usize) -> Result<Vec<RobustnessPoint>> {
    let (system, trace) = gen_pd_adversarial(n, f)?;
    let mut u = UniverseState::new(system.num_elements(), system.capacity());
    for &step in &trace[..n] {
        u.apply(step)?;
    }
    let (greedy, _) = greedy_cover(&system, &u)?;
    let (pd, _) = primal_dual_cover(&system, &u, PdMode::AllTight)?;
    let h_n = harmonic(system.capacity());
    let mut points = Vec::with_capacity(n);
    for deleted in 0..n {
        if deleted > 0 {
            u.apply(trace[n + deleted - 1])?;
        }
        let opt = exact_cover_default(&system, &u)?.cost();
        let delta = deleted as f64 / greedy.cost();
        points.push(RobustnessPoint {
            deleted,
            opt,
            greedy_ratio: greedy.cost() / opt,
            pd_ratio: pd.cost() / opt,
            greedy_bound: (delta < 1.0).then(|| h_n / (1.0 - delta)),
        });
    }
    Ok(points)
}

fn to_js<T: Serialize>(value: Result<T>) -> std::result::Result<String, JsError> {
    let value = value.map_err(|e| JsError::new(&e.to_string()))?;
    serde_json::to_string(&value).map_err(|e| JsError::new(&e.to_string()))
}

fn parse_mode(mode: &str) -> Result<Mode> {
    match mode {
        "lf" => Ok(Mode::Lf),
        "hf" => Ok(Mode::Hf),
        _ => Err(dyncover::Error::Config(format!("unknown mode '{mode}'"))),
    }
}

#[wasm_bindgen(js_name = transformSeries)]
#[allow(clippy::too_many_arguments)]
pub fn transform_series_js(
    n: usize,
    m: usize,
    f: usize,
    c: f64,
    steps: usize,
    seed: u64,
    algo: &str,
    mode: &str,
    epsilon: f64,
) -> std::result::Result<String, JsError> {
    let spec = WorkloadSpec {
        n,
        m,
        f,
        c,
        steps,
        insert_ratio: 0.5,
        seed,
    };
    to_js(algo.parse().and_then(|algo| transform_series(&spec, algo, parse_mode(mode)?, epsilon)))
}

#[wasm_bindgen(js_name = robustnessCurve)]
pub fn robustness_curve_js(n: usize, f: usize) -> std::result::Result<String, JsError> {
    to_js(robustness_curve(n, f))
}

#[wasm_bindgen(js_name = reconfigure)]
pub fn reconfigure_js(n: usize, epsilon: f64) -> std::result::Result<String, JsError> {
    to_js(reconfigure_bipartite(n, epsilon))
}
