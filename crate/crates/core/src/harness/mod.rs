//! Workload generators, the experiment runner and report aggregation.

mod reconfig;
mod report;
mod runner;
mod workload;

pub use reconfig::{reconfigure_bipartite, ReconfigFrame};
pub use report::{aggregate, read_csv, write_gnuplot, Aggregates};
pub use runner::{
    approx_bound, build_background, run_experiment, write_csv, Algo, CoverageTracker, ExperimentConfig,
    ExperimentResult, Failure, OracleMode, StepRow, Summary, ORACLE_MAX_SETS,
};
pub use workload::{
    gen_bipartite_reconfig, gen_pd_adversarial, gen_random, gen_robustness_attack, random_deletions, random_system,
    random_trace, rng, WorkloadSpec,
};
