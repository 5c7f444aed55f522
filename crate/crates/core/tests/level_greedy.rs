use dyncover::dynamic::{DynamicCover, LevelGreedy};
use dyncover::static_solvers::exact_cover_default;
use dyncover::{is_cover, ElementId, SetSystem, UniverseState, UpdateStep};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_system(rng: &mut ChaCha8Rng, n: usize, m: usize, f: usize, c: f64) -> SetSystem {
    let mut members = vec![Vec::new(); m];
    for e in 0..n {
        let k = rng.gen_range(1..=f.min(m));
        let mut chosen = Vec::new();
        while chosen.len() < k {
            let s = rng.gen_range(0..m);
            if !chosen.contains(&s) {
                chosen.push(s);
            }
        }
        for s in chosen {
            members[s].push(ElementId(e as u32));
        }
    }
    let sets = members
        .into_iter()
        .map(|mem| (rng.gen_range(1.0 / c..=1.0), mem))
        .collect();
    SetSystem::new(n, c, n, sets).unwrap()
}

fn random_step(rng: &mut ChaCha8Rng, u: &UniverseState, n: usize) -> UpdateStep {
    let grow = u.num_alive() == 0 || (u.num_alive() < n && rng.gen_bool(0.6));
    if grow {
        loop {
            let e = ElementId(rng.gen_range(0..n as u32));
            if !u.is_alive(e) {
                return UpdateStep::insert(e);
            }
        }
    }
    let i = rng.gen_range(0..u.num_alive());
    UpdateStep::delete(u.alive()[i])
}

#[test]
fn audit_clean_on_long_random_traces() {
    for seed in 0..6 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = 200;
        let sys = random_system(&mut rng, n, 120, 5, 4.0);
        let mut lg = LevelGreedy::new(&sys, [0.05, 0.1, 0.2][seed as usize % 3]).unwrap();
        let mut u = UniverseState::new(n, n);
        for t in 0..3000 {
            let step = random_step(&mut rng, &u, n);
            u.apply(step).unwrap();
            lg.apply(step).unwrap();
            let rep = lg.audit();
            assert!(rep.is_clean(), "seed {seed} step {t}: {:?}", rep.violations);
            assert!(is_cover(&sys, &u, lg.current_cover()));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lower_bound_below_exact_optimum(seed in any::<u64>(), eps in 0.02f64..0.25) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = 14;
        let sys = random_system(&mut rng, n, 12, 4, 3.0);
        let mut lg = LevelGreedy::new(&sys, eps).unwrap();
        let mut u = UniverseState::new(n, n);
        for _ in 0..40 {
            let step = random_step(&mut rng, &u, n);
            u.apply(step).unwrap();
            lg.apply(step).unwrap();
            prop_assert!(lg.audit().is_clean());
            let opt = exact_cover_default(&sys, &u).unwrap().cost();
            prop_assert!(lg.dual_lower_bound() <= opt + 1e-9);
            let ln_n = (n as f64).ln();
            prop_assert!(lg.current_cover().cost() <= (1.0 + 10.0 * eps) * ln_n * opt.max(0.0) + 1e-9 || opt == 0.0);
        }
    }
}
