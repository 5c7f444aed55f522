use super::greedy_picks;
use crate::cover::CoverSolution;
use crate::error::{Error, Result};
use crate::system::{SetId, SetSystem};
use crate::universe::UniverseState;

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

struct Candidate {
    id: SetId,
    cost: f64,
    mask: Vec<u64>,
    elems: Vec<usize>,
}

struct Search<'a> {
    cands: Vec<Candidate>,
    // candidate indices containing each local element
    containing: Vec<Vec<usize>>,
    excluded: Vec<bool>,
    chosen: Vec<usize>,
    best_cost: f64,
    best: Vec<usize>,
    nodes: u64,
    budget: u64,
    load: Vec<f64>,
    system: &'a SetSystem,
}

#[inline]
fn is_set(bits: &[u64], i: usize) -> bool {
    bits[i / 64] >> (i % 64) & 1 == 1
}

fn ones(bits: &[u64]) -> impl Iterator<Item = usize> + '_ {
    bits.iter().enumerate().flat_map(|(w, &word)| {
        let mut rest = word;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let b = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(w * 64 + b)
        })
    })
}

fn overlap(a: &[u64], b: &[u64]) -> u32 {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones()).sum()
}

impl Search<'_> {
    /// Primal-dual lower bound on covering `uncovered` with non-excluded
    /// candidates, or `None` when some element has no candidate left.
    fn lower_bound(&mut self, uncovered: &[u64]) -> Option<f64> {
        self.load.iter_mut().for_each(|l| *l = 0.0);
        let mut total = 0.0;
        for u in ones(uncovered) {
            let mut raise = f64::INFINITY;
            for &c in &self.containing[u] {
                if !self.excluded[c] {
                    raise = raise.min(self.cands[c].cost - self.load[c]);
                }
            }
            if !raise.is_finite() {
                return None;
            }
            let raise = raise.max(0.0);
            for &c in &self.containing[u] {
                if !self.excluded[c] {
                    self.load[c] += raise;
                }
            }
            total += raise;
        }
        Some(total)
    }

    fn dfs(&mut self, uncovered: &[u64], cost: f64) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::Internal("budget".into()));
        }
        if uncovered.iter().all(|&w| w == 0) {
            if cost < self.best_cost {
                self.best_cost = cost;
                self.best = self.chosen.clone();
            }
            return Ok(());
        }
        let Some(lb) = self.lower_bound(uncovered) else {
            return Ok(());
        };
        if cost + lb >= self.best_cost - 1e-9 * self.best_cost.max(1.0) {
            return Ok(());
        }
        let mut branch = None;
        let mut best_ratio = 0.0;
        for (i, c) in self.cands.iter().enumerate() {
            if self.excluded[i] {
                continue;
            }
            let k = overlap(&c.mask, uncovered);
            if k == 0 {
                continue;
            }
            let ratio = k as f64 / c.cost;
            if ratio > best_ratio {
                best_ratio = ratio;
                branch = Some(i);
            }
        }
        let Some(b) = branch else {
            return Ok(());
        };
        let next: Vec<u64> = uncovered
            .iter()
            .zip(&self.cands[b].mask)
            .map(|(u, m)| u & !m)
            .collect();
        self.chosen.push(b);
        self.excluded[b] = true;
        let c = self.cands[b].cost;
        self.dfs(&next, cost + c)?;
        self.chosen.pop();
        self.dfs(uncovered, cost)?;
        self.excluded[b] = false;
        Ok(())
    }

    fn solution(&self, picks: &[usize]) -> CoverSolution {
        let mut sol = CoverSolution::new();
        for &i in picks {
            sol.insert(self.system, self.cands[i].id);
        }
        sol
    }
}

/// Exact minimum-cost cover by branch-and-bound.
///
/// Branches include-first on the set with the most uncovered elements per
/// unit cost; the greedy cover is the initial incumbent and a primal-dual
/// dual solution on the residual instance prunes nodes.
pub fn exact_cover(system: &SetSystem, universe: &UniverseState, budget: u64) -> Result<CoverSolution> {
    let alive = universe.alive_sorted();
    if alive.iter().all(|&e| system.incidence(e).len() == 1) {
        // Every set is forced by its own elements.
        return CoverSolution::from_sets(system, alive.iter().map(|&e| system.incidence(e)[0]));
    }
    let k = alive.len();
    let words = k.div_ceil(64).max(1);
    let mut local = vec![usize::MAX; system.num_elements()];
    for (i, &e) in alive.iter().enumerate() {
        local[e.idx()] = i;
    }
    let mut cands = Vec::new();
    let mut containing = vec![Vec::new(); k];
    for s in system.sets() {
        let elems: Vec<usize> = system
            .members(s)
            .iter()
            .map(|e| local[e.idx()])
            .filter(|&l| l != usize::MAX)
            .collect();
        if elems.is_empty() {
            continue;
        }
        let mut mask = vec![0u64; words];
        for &l in &elems {
            mask[l / 64] |= 1 << (l % 64);
            containing[l].push(cands.len());
        }
        cands.push(Candidate {
            id: s,
            cost: system.cost(s),
            mask,
            elems,
        });
    }
    if let Some(l) = containing.iter().position(Vec::is_empty) {
        return Err(Error::Infeasible(alive[l]));
    }

    let (picks, _) = greedy_picks(system, &alive)?;
    let mut by_id = vec![usize::MAX; system.num_sets()];
    for (i, c) in cands.iter().enumerate() {
        by_id[c.id.idx()] = i;
    }
    let incumbent: Vec<usize> = picks.iter().map(|p| by_id[p.set.idx()]).collect();
    let incumbent_cost = incumbent.iter().map(|&i| cands[i].cost).sum();

    let n_cands = cands.len();
    let mut search = Search {
        cands,
        containing,
        excluded: vec![false; n_cands],
        chosen: Vec::new(),
        best_cost: incumbent_cost,
        best: incumbent,
        nodes: 0,
        budget,
        load: vec![0.0; n_cands],
        system,
    };
    let mut all = vec![0u64; words];
    for l in 0..k {
        all[l / 64] |= 1 << (l % 64);
    }
    debug_assert!(search.cands.iter().all(|c| c.elems.iter().all(|&l| is_set(&all, l))));
    let root_lb = search.lower_bound(&all).unwrap_or(0.0);
    match search.dfs(&all, 0.0) {
        Ok(()) => Ok(search.solution(&search.best)),
        Err(_) => Err(Error::BudgetExhausted {
            best: search.solution(&search.best),
            lower_bound: root_lb,
            nodes: budget,
        }),
    }
}

pub fn exact_cover_default(system: &SetSystem, universe: &UniverseState) -> Result<CoverSolution> {
    exact_cover(system, universe, DEFAULT_NODE_BUDGET)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::is_cover;
    use crate::system::ElementId;

    fn e(i: u32) -> ElementId {
        ElementId(i)
    }

    /// Cheapest feasible subfamily by enumerating all `2^m` subsets.
    fn brute_force(system: &SetSystem, universe: &UniverseState) -> f64 {
        let m = system.num_sets();
        let mut best = f64::INFINITY;
        for mask in 0u32..(1 << m) {
            let sol = CoverSolution::from_sets(
                system,
                (0..m).filter(|i| mask >> i & 1 == 1).map(SetId::from),
            )
            .unwrap();
            if is_cover(system, universe, &sol) {
                best = best.min(sol.cost());
            }
        }
        best
    }

    #[test]
    fn pair_instance_takes_the_union_set() {
        let sys = SetSystem::new(
            2,
            1.0,
            2,
            vec![(1.0, vec![e(0)]), (1.0, vec![e(1)]), (1.0, vec![e(0), e(1)])],
        )
        .unwrap();
        let u = UniverseState::with_alive(&sys, [e(0), e(1)]).unwrap();
        let sol = exact_cover_default(&sys, &u).unwrap();
        assert_eq!(sol.iter().collect::<Vec<_>>(), vec![SetId(2)]);
        assert_eq!(sol.cost(), brute_force(&sys, &u));
    }

    #[test]
    fn partition_instance_takes_forced_sets() {
        let sys = SetSystem::new(
            3,
            2.0,
            3,
            vec![(1.0, vec![e(0), e(1)]), (0.5, vec![e(2)])],
        )
        .unwrap();
        let u = UniverseState::with_alive(&sys, [e(2)]).unwrap();
        let sol = exact_cover_default(&sys, &u).unwrap();
        assert_eq!(sol.cost(), brute_force(&sys, &u));
        assert_eq!(sol.iter().collect::<Vec<_>>(), vec![SetId(1)]);
    }

    #[test]
    fn empty_universe() {
        let sys = SetSystem::new(1, 1.0, 1, vec![(1.0, vec![e(0)])]).unwrap();
        let u = UniverseState::new(1, 1);
        let sol = exact_cover_default(&sys, &u).unwrap();
        assert!(sol.is_empty());
        assert_eq!(sol.cost(), 0.0);
    }

    #[test]
    fn worked_example_costs_two() {
        let sys = SetSystem::new(
            4,
            1.0,
            4,
            vec![
                (1.0, vec![e(0), e(1)]),
                (1.0, vec![e(2), e(3)]),
                (1.0, vec![e(0), e(1), e(2)]),
            ],
        )
        .unwrap();
        let u = UniverseState::with_alive(&sys, sys.elements()).unwrap();
        let sol = exact_cover_default(&sys, &u).unwrap();
        assert_eq!(sol.cost(), 2.0);
        assert_eq!(brute_force(&sys, &u), 2.0);
    }

    #[test]
    fn beats_greedy_when_greedy_is_suboptimal() {
        // Greedy takes the big middle set first and then needs both halves.
        let sys = SetSystem::new(
            6,
            1.0,
            6,
            vec![
                (1.0, vec![e(0), e(1), e(2)]),
                (1.0, vec![e(3), e(4), e(5)]),
                (1.0, vec![e(1), e(2), e(3), e(4)]),
            ],
        )
        .unwrap();
        let u = UniverseState::with_alive(&sys, sys.elements()).unwrap();
        let sol = exact_cover_default(&sys, &u).unwrap();
        assert_eq!(sol.cost(), 2.0);
        assert!(is_cover(&sys, &u, &sol));
    }

    #[test]
    fn tiny_budget_reports_incumbent() {
        let sys = SetSystem::new(
            6,
            1.0,
            6,
            vec![
                (1.0, vec![e(0), e(1), e(2)]),
                (1.0, vec![e(3), e(4), e(5)]),
                (1.0, vec![e(1), e(2), e(3), e(4)]),
            ],
        )
        .unwrap();
        let u = UniverseState::with_alive(&sys, sys.elements()).unwrap();
        match exact_cover(&sys, &u, 1) {
            Err(Error::BudgetExhausted { best, lower_bound, .. }) => {
                assert!(is_cover(&sys, &u, &best));
                assert!(lower_bound <= 2.0 + 1e-12);
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }
}
