use serde::Serialize;

use super::workload::gen_bipartite_reconfig;
use crate::dynamic::FixedCover;
use crate::error::Result;
use crate::system::ElementId;
use crate::transform::{Mode, Phase, Transform, TransformConfig};
use crate::universe::{UniverseState, UpdateStep};
use crate::{is_cover, SetId};

/// One step of a left-to-right reconfiguration of `K_{n/2,n/2}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReconfigFrame {
    pub step: u64,
    pub recourse: usize,
    pub output_cost: f64,
    pub left: usize,
    pub right: usize,
    pub feasible: bool,
    pub phase: Phase,
}

/// Moves the output from the left vertex cover to the right one with the
/// low-frequency transformation over a fixed target. The adversary only
/// toggles edge `(0, 0)`, so every step is an update the schedule can use.
/// Stops once the output equals the target.
pub fn reconfigure_bipartite(n: usize, epsilon: f64) -> Result<Vec<ReconfigFrame>> {
    let (system, left, right) = gen_bipartite_reconfig(n)?;
    let half = n / 2;
    let universe = UniverseState::with_alive(&system, system.elements())?;
    let background = FixedCover::new(&system, right.clone(), 2.0);
    let config = TransformConfig::new(epsilon, Mode::Lf);
    let mut t = Transform::start_from(&system, background, config, universe, left)?;
    let edge = ElementId(0);
    let mut frames = Vec::new();
    for i in 0.. {
        let update = if i % 2 == 0 {
            UpdateStep::delete(edge)
        } else {
            UpdateStep::insert(edge)
        };
        let rep = t.step(update)?;
        let out = t.output();
        frames.push(ReconfigFrame {
            step: rep.step,
            recourse: rep.recourse,
            output_cost: rep.output_cost,
            left: (0..half).filter(|&v| out.contains(SetId::from(v))).count(),
            right: (half..n).filter(|&v| out.contains(SetId::from(v))).count(),
            feasible: is_cover(&system, t.universe(), out),
            phase: rep.phase,
        });
        if out == &right {
            break;
        }
    }
    Ok(frames)
}
