use std::fmt;

use serde::Serialize;

use super::DynamicCover;
use crate::cover::CoverSolution;
use crate::error::{Error, Result};
use crate::static_solvers::greedy_picks;
use crate::system::{ElementId, SetId, SetSystem};
use crate::COST_TOL;

const NO_SET: u32 = u32::MAX;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
enum Life {
    Absent,
    Alive,
    Dead,
}

#[derive(Copy, Clone, Debug)]
struct Elem {
    life: Life,
    asn: u32,
    lev: u32,
    plev: u32,
    slot: u32,
}

/// Read-only view of one element's level bookkeeping.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ElementView {
    pub alive: bool,
    pub asn: SetId,
    pub lev: u32,
    pub plev: u32,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Rule {
    /// `|N_k(s)| < β^{k+1}·cost(s)`.
    Inv1,
    /// `|cov(s)| ≥ β^{lev(s)}·cost(s)` for cover sets, level −1 outside.
    Inv2,
    /// `W_P ≤ 2ε·W_A`.
    Inv3,
    /// Alive elements sit at the highest level of any containing set.
    LevMax,
    /// `lev(e) ≤ plev(e) ≤ L`, and `plev = lev` for dead elements.
    PlevBounds,
    /// Internal counters disagree with a recount.
    Bookkeeping,
    Feasibility,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AuditViolation {
    pub rule: Rule,
    pub detail: String,
    /// How far past the threshold the offending quantity is.
    pub slack: f64,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct AuditReport {
    pub violations: Vec<AuditViolation>,
    pub weight_active: f64,
    pub weight_passive: f64,
}

impl AuditReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, rule: Rule) -> bool {
        self.violations.iter().any(|v| v.rule == rule)
    }

    fn flag(&mut self, rule: Rule, slack: f64, detail: String) {
        self.violations.push(AuditViolation { rule, detail, slack });
    }
}

/// Dynamic greedy set cover with set levels, element passive levels and
/// periodic rebuilds.
///
/// Each cover set `s` has a level `lev(s)` with `β^lev(s)·cost(s)` roughly
/// matching the number of elements it covers. Each element records the level
/// of its covering set and a passive level `plev ≥ lev`; the interval
/// `[lev, plev)` is where it still counts as active. Three invariants are
/// restored after every update:
///
/// 1. no set could cover `β^{k+1}·cost(s)` or more elements active at `k`;
/// 2. every cover set covers at least `β^{lev(s)}·cost(s)` elements;
/// 3. passive weight stays within `2ε` of active weight, or everything is
///    rebuilt with a static greedy pass.
pub struct LevelGreedy<'a> {
    system: &'a SetSystem,
    epsilon: f64,
    beta: f64,
    top: u32,
    pow: Vec<f64>,
    inv_pow: Vec<f64>,
    set_level: Vec<i32>,
    cov: Vec<Vec<ElementId>>,
    elems: Vec<Elem>,
    // Per set, sorted (level, delta) events; prefix sums give |N_k(s)|.
    profile: Vec<Vec<(u32, i32)>>,
    lev_hist: Vec<i64>,
    plev_hist: Vec<i64>,
    present: usize,
    alive: usize,
    cover: CoverSolution,
    work: u64,
    rebuilds: u64,
    epoch: u64,
    moves: u64,
    move_cap: u64,
    inv1_queue: Vec<SetId>,
    in_inv1: Vec<bool>,
    inv2_queue: Vec<SetId>,
    in_inv2: Vec<bool>,
    // Cover membership at the start of the current update, for recourse.
    touched: Vec<(SetId, bool)>,
    is_touched: Vec<bool>,
}

impl<'a> LevelGreedy<'a> {
    /// Empty structure over `system`. Requires `0 < ε ≤ 1/4`.
    pub fn new(system: &'a SetSystem, epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon <= 0.25) {
            return Err(Error::Parameter(format!(
                "level greedy needs epsilon in (0, 1/4], got {epsilon}"
            )));
        }
        let beta = 1.0 + epsilon;
        let lb = beta.ln();
        let cn = system.aspect_ratio() * system.capacity() as f64;
        let top = ((cn.ln() / lb).ceil().max(0.0) + (10.0 * (1.0 / epsilon).ln() / lb).ceil()) as u32;
        let pow = (0..=top + 1).map(|j| beta.powi(j as i32)).collect();
        let inv_pow = (0..=top + 1).map(|j| beta.powi(-(j as i32))).collect();
        let m = system.num_sets();
        let n = system.num_elements();
        let move_cap = (top as u64 + 1)
            .saturating_mul(m.max(1) as u64)
            .saturating_mul(system.capacity().max(1) as u64);
        Ok(LevelGreedy {
            system,
            epsilon,
            beta,
            top,
            pow,
            inv_pow,
            set_level: vec![-1; m],
            cov: vec![Vec::new(); m],
            elems: vec![
                Elem {
                    life: Life::Absent,
                    asn: NO_SET,
                    lev: 0,
                    plev: 0,
                    slot: 0,
                };
                n
            ],
            profile: vec![Vec::new(); m],
            lev_hist: vec![0; top as usize + 1],
            plev_hist: vec![0; top as usize + 1],
            present: 0,
            alive: 0,
            cover: CoverSolution::new(),
            work: 0,
            rebuilds: 0,
            epoch: 0,
            moves: 0,
            move_cap,
            inv1_queue: Vec::new(),
            in_inv1: vec![false; m],
            inv2_queue: Vec::new(),
            in_inv2: vec![false; m],
            touched: Vec::new(),
            is_touched: vec![false; m],
        })
    }

    pub fn system(&self) -> &'a SetSystem {
        self.system
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// The top level `L`.
    pub fn max_level(&self) -> u32 {
        self.top
    }

    /// `lev(s)`, or −1 when `s` is not in the cover.
    pub fn set_level(&self, s: SetId) -> i32 {
        self.set_level[s.idx()]
    }

    pub fn covered_by(&self, s: SetId) -> &[ElementId] {
        &self.cov[s.idx()]
    }

    pub fn element(&self, e: ElementId) -> Option<ElementView> {
        let st = self.elems.get(e.idx())?;
        match st.life {
            Life::Absent => None,
            life => Some(ElementView {
                alive: life == Life::Alive,
                asn: SetId(st.asn),
                lev: st.lev,
                plev: st.plev,
            }),
        }
    }

    pub fn num_alive(&self) -> usize {
        self.alive
    }

    /// Alive plus retained dead elements.
    pub fn num_present(&self) -> usize {
        self.present
    }

    pub fn rebuild_count(&self) -> u64 {
        self.rebuilds
    }

    /// Incremented by every rebuild; passive levels are only comparable
    /// within one epoch.
    pub fn epoch(&self) -> u64 {
        self.epoch
    }

    /// `(W_A, W_P)` from the level histograms.
    pub fn weights(&self) -> (f64, f64) {
        let mut wa = 0.0;
        let mut wp = 0.0;
        for l in 0..=self.top as usize {
            wa += self.inv_pow[l] * (self.lev_hist[l] - self.plev_hist[l]) as f64;
            wp += self.inv_pow[l] * self.plev_hist[l] as f64;
        }
        wp -= self.present as f64 * self.inv_pow[self.top as usize];
        (wa.max(0.0), wp.max(0.0))
    }

    /// `W_A / (ε·(log_β n + 2 + 1/ε))`, a lower bound on the optimum.
    pub fn dual_lower_bound(&self) -> f64 {
        let (wa, _) = self.weights();
        let n = self.system.capacity().max(1) as f64;
        let denom = self.epsilon * (n.ln() / self.beta.ln() + 2.0 + 1.0 / self.epsilon);
        wa / denom
    }

    /// Overwrites `lev(e)` without any repair, for fault-injection tests.
    #[doc(hidden)]
    pub fn debug_set_element_level(&mut self, e: ElementId, lev: u32) {
        self.elems[e.idx()].lev = lev;
    }

    // Largest count allowed by the strict Invariant 1 at level k.
    fn allowed(&self, cost: f64, k: u32) -> i64 {
        let t = self.pow[k as usize + 1] * cost;
        let r = t.round();
        if (t - r).abs() <= COST_TOL * r.max(1.0) {
            r as i64 - 1
        } else {
            t.floor() as i64
        }
    }

    // Whether `count` elements justify level `j` under Invariant 2.
    fn supports(&self, count: usize, cost: f64, j: u32) -> bool {
        let t = self.pow[j as usize] * cost;
        count as f64 >= t - COST_TOL * t.max(1.0)
    }

    fn profile_add(&mut self, s: SetId, level: u32, delta: i32) {
        let p = &mut self.profile[s.idx()];
        self.work += 1;
        match p.binary_search_by_key(&level, |&(l, _)| l) {
            Ok(i) => {
                p[i].1 += delta;
                if p[i].1 == 0 {
                    p.remove(i);
                }
            }
            Err(i) => p.insert(i, (level, delta)),
        }
    }

    fn add_active(&mut self, e: ElementId, lev: u32, plev: u32) {
        if lev >= plev {
            return;
        }
        for &s in self.system.incidence(e) {
            self.profile_add(s, lev, 1);
            self.profile_add(s, plev, -1);
        }
    }

    fn remove_active(&mut self, e: ElementId, lev: u32, plev: u32) {
        if lev >= plev {
            return;
        }
        for &s in self.system.incidence(e) {
            self.profile_add(s, lev, -1);
            self.profile_add(s, plev, 1);
        }
    }

    fn hist_add(&mut self, lev: u32, plev: u32, delta: i64) {
        self.lev_hist[lev as usize] += delta;
        self.plev_hist[plev as usize] += delta;
    }

    // Changes the levels of a present element, keeping histograms and
    // profiles in sync.
    fn relevel(&mut self, e: ElementId, lev: u32, plev: u32) {
        let st = self.elems[e.idx()];
        if st.lev == lev && st.plev == plev {
            return;
        }
        self.hist_add(st.lev, st.plev, -1);
        self.hist_add(lev, plev, 1);
        self.remove_active(e, st.lev, st.plev);
        self.add_active(e, lev, plev);
        let st = &mut self.elems[e.idx()];
        st.lev = lev;
        st.plev = plev;
    }

    fn touch(&mut self, s: SetId) {
        if !self.is_touched[s.idx()] {
            self.is_touched[s.idx()] = true;
            self.touched.push((s, self.cover.contains(s)));
        }
    }

    fn enter_cover(&mut self, s: SetId, level: u32) {
        self.touch(s);
        self.cover.insert(self.system, s);
        self.set_level[s.idx()] = level as i32;
    }

    fn leave_cover(&mut self, s: SetId) {
        self.touch(s);
        self.cover.remove(self.system, s);
        self.set_level[s.idx()] = -1;
    }

    fn queue_inv1(&mut self, s: SetId) {
        if !self.in_inv1[s.idx()] {
            self.in_inv1[s.idx()] = true;
            self.inv1_queue.push(s);
        }
    }

    fn queue_inv2(&mut self, s: SetId) {
        if !self.in_inv2[s.idx()] {
            self.in_inv2[s.idx()] = true;
            self.inv2_queue.push(s);
        }
    }

    fn detach(&mut self, e: ElementId) {
        let st = self.elems[e.idx()];
        let s = SetId(st.asn);
        let list = &mut self.cov[s.idx()];
        list.swap_remove(st.slot as usize);
        if let Some(&moved) = list.get(st.slot as usize) {
            self.elems[moved.idx()].slot = st.slot;
        }
        self.elems[e.idx()].asn = NO_SET;
        self.queue_inv2(s);
    }

    fn attach(&mut self, e: ElementId, s: SetId) {
        let list = &mut self.cov[s.idx()];
        self.elems[e.idx()].slot = list.len() as u32;
        self.elems[e.idx()].asn = s.0;
        list.push(e);
    }

    // Highest-level cover set containing e other than `skip`; ties to the
    // lowest id.
    fn best_cover_set(&mut self, e: ElementId, skip: Option<SetId>) -> Option<(SetId, u32)> {
        let mut best: Option<(SetId, u32)> = None;
        for &s in self.system.incidence(e) {
            self.work += 1;
            let l = self.set_level[s.idx()];
            if l < 0 || Some(s) == skip {
                continue;
            }
            if best.is_none_or(|(_, bl)| l as u32 > bl) {
                best = Some((s, l as u32));
            }
        }
        best
    }

    fn begin_update(&mut self) {
        self.touched.clear();
        self.moves = 0;
    }

    fn finish_update(&mut self) -> usize {
        let mut recourse = 0;
        for &(s, was) in &self.touched {
            self.is_touched[s.idx()] = false;
            if self.cover.contains(s) != was {
                recourse += 1;
            }
        }
        self.touched.clear();
        recourse
    }

    fn count_move(&mut self) -> Result<()> {
        self.moves += 1;
        if self.moves > self.move_cap {
            return Err(Error::Internal(format!(
                "level repair exceeded {} element moves",
                self.move_cap
            )));
        }
        Ok(())
    }

    // Highest level k at which s violates Invariant 1.
    fn highest_violation(&mut self, s: SetId) -> Option<u32> {
        let cost = self.system.cost(s);
        let events = std::mem::take(&mut self.profile[s.idx()]);
        self.work += events.len() as u64;
        let mut count = 0i64;
        let mut found = None;
        for (i, &(level, delta)) in events.iter().enumerate() {
            count += delta as i64;
            if count <= 0 || level >= self.top {
                continue;
            }
            if count <= self.allowed(cost, level) {
                continue;
            }
            // The count is constant on [level, end] and the threshold grows
            // with k, so the violating levels form a prefix of the segment.
            let end = match events.get(i + 1) {
                Some(&(next, _)) => next - 1,
                None => self.top - 1,
            }
            .min(self.top - 1);
            let (mut lo, mut hi) = (level, end);
            while lo < hi {
                let mid = lo + (hi - lo).div_ceil(2);
                if count > self.allowed(cost, mid) {
                    lo = mid;
                } else {
                    hi = mid - 1;
                }
            }
            found = Some(lo);
        }
        self.profile[s.idx()] = events;
        found
    }

    // Raises s to level k+1 and takes over every element of N_k(s).
    fn promote(&mut self, s: SetId, k: u32) -> Result<()> {
        let new = k + 1;
        if self.set_level[s.idx()] < 0 {
            self.enter_cover(s, new);
        } else {
            self.set_level[s.idx()] = new as i32;
        }
        let system = self.system;
        for &e in system.members(s) {
            self.work += 1;
            let st = self.elems[e.idx()];
            match st.life {
                Life::Alive if st.lev <= k => {
                    if st.asn != s.0 {
                        self.detach(e);
                        self.attach(e, s);
                    }
                    self.relevel(e, new, st.plev.max(new));
                    self.count_move()?;
                }
                Life::Dead if st.asn == s.0 => {
                    self.relevel(e, new, new);
                }
                _ => {}
            }
        }
        self.queue_inv1(s);
        Ok(())
    }

    // Demotes or removes s if it covers too few elements for its level.
    fn fix_inv2(&mut self, s: SetId) -> Result<()> {
        let level = self.set_level[s.idx()];
        if level < 0 {
            return Ok(());
        }
        let level = level as u32;
        let count = self.cov[s.idx()].len();
        if count == 0 {
            self.leave_cover(s);
            return Ok(());
        }
        let cost = self.system.cost(s);
        if self.supports(count, cost, level) {
            return Ok(());
        }
        let mut j = level - 1;
        while j > 0 && !self.supports(count, cost, j) {
            j -= 1;
        }
        self.set_level[s.idx()] = j as i32;
        let members = self.cov[s.idx()].clone();
        for e in members {
            self.work += 1;
            let st = self.elems[e.idx()];
            if st.life == Life::Dead {
                self.relevel(e, j, j);
                continue;
            }
            let target = match self.best_cover_set(e, Some(s)) {
                Some((t, tl)) if tl > j => {
                    self.detach(e);
                    self.attach(e, t);
                    tl
                }
                _ => j,
            };
            self.relevel(e, target, st.plev);
            for &t in self.system.incidence(e) {
                self.queue_inv1(t);
            }
            self.count_move()?;
        }
        Ok(())
    }

    fn repair(&mut self) -> Result<()> {
        loop {
            if let Some(s) = self.inv2_queue.pop() {
                self.in_inv2[s.idx()] = false;
                self.fix_inv2(s)?;
                continue;
            }
            if let Some(s) = self.inv1_queue.pop() {
                self.in_inv1[s.idx()] = false;
                if let Some(k) = self.highest_violation(s) {
                    self.promote(s, k)?;
                }
                continue;
            }
            return Ok(());
        }
    }

    fn inv3_violated(&self) -> bool {
        let (wa, wp) = self.weights();
        wp > 2.0 * self.epsilon * wa
    }

    // Forgets e entirely; only valid for dead elements.
    fn purge(&mut self, e: ElementId) {
        let st = self.elems[e.idx()];
        debug_assert_eq!(st.life, Life::Dead);
        self.detach(e);
        self.hist_add(st.lev, st.plev, -1);
        self.elems[e.idx()].life = Life::Absent;
        self.present -= 1;
    }

    fn rebuild(&mut self) -> Result<()> {
        self.rebuilds += 1;
        self.epoch += 1;
        let mut alive = Vec::with_capacity(self.alive);
        for i in 0..self.elems.len() {
            let e = ElementId::from(i);
            let st = self.elems[i];
            match st.life {
                Life::Dead => self.purge(e),
                Life::Alive => {
                    self.remove_active(e, st.lev, st.plev);
                    self.hist_add(st.lev, st.plev, -1);
                    self.detach(e);
                    alive.push(e);
                }
                Life::Absent => {}
            }
        }
        let (picks, work) = greedy_picks(self.system, &alive)?;
        self.work += work;
        let mut chosen = vec![false; self.system.num_sets()];
        for pick in &picks {
            chosen[pick.set.idx()] = true;
        }
        let old: Vec<SetId> = self.cover.iter().collect();
        for s in old {
            if !chosen[s.idx()] {
                self.leave_cover(s);
            }
        }
        for pick in picks {
            let cost = self.system.cost(pick.set);
            let mut j = 0;
            while j < self.top && self.supports(pick.newly.len(), cost, j + 1) {
                j += 1;
            }
            self.enter_cover(pick.set, j);
            for e in pick.newly {
                self.attach(e, pick.set);
                self.elems[e.idx()].lev = j;
                self.elems[e.idx()].plev = self.top;
                self.hist_add(j, self.top, 1);
                self.add_active(e, j, self.top);
            }
            self.queue_inv2(pick.set);
        }
        for &e in &alive {
            for &t in self.system.incidence(e) {
                self.queue_inv1(t);
            }
        }
        self.repair()
    }

    fn check_alive(&self, e: ElementId, want: bool) -> Result<()> {
        let Some(st) = self.elems.get(e.idx()) else {
            return Err(Error::Trace(format!("element {e} out of range")));
        };
        let alive = st.life == Life::Alive;
        match (want, alive) {
            (true, false) => Err(Error::Trace(format!("delete of non-alive element {e}"))),
            (false, true) => Err(Error::Trace(format!("insert of alive element {e}"))),
            _ => Ok(()),
        }
    }

    /// Full recount of every invariant and internal counter.
    pub fn audit(&self) -> AuditReport {
        let mut rep = AuditReport::default();
        let top = self.top;
        let tol = |t: f64| COST_TOL * t.abs().max(1.0);

        // Sets: cover membership, Inv2, cov consistency.
        let mut cov_total = 0usize;
        for s in self.system.sets() {
            let level = self.set_level[s.idx()];
            let in_cover = self.cover.contains(s);
            if in_cover != (level >= 0) {
                rep.flag(Rule::Inv2, 0.0, format!("set {s}: level {level} but cover membership {in_cover}"));
            }
            if level > top as i32 {
                rep.flag(Rule::Bookkeeping, 0.0, format!("set {s}: level {level} above L = {top}"));
            }
            let cov = &self.cov[s.idx()];
            cov_total += cov.len();
            if level < 0 {
                if !cov.is_empty() {
                    rep.flag(Rule::Bookkeeping, 0.0, format!("set {s} outside the cover covers {} elements", cov.len()));
                }
                continue;
            }
            let t = self.system.cost(s) * self.beta.powi(level);
            if (cov.len() as f64) < t - tol(t) {
                rep.flag(
                    Rule::Inv2,
                    t - cov.len() as f64,
                    format!("set {s} at level {level} covers {} < {t}", cov.len()),
                );
            }
            for (slot, &e) in cov.iter().enumerate() {
                let st = self.elems[e.idx()];
                if st.life == Life::Absent || st.asn != s.0 || st.slot as usize != slot {
                    rep.flag(Rule::Bookkeeping, 0.0, format!("element {e} listed in cov({s}) but assigned elsewhere"));
                }
                if self.system.members(s).binary_search(&e).is_err() {
                    rep.flag(Rule::Bookkeeping, 0.0, format!("element {e} in cov({s}) is not a member"));
                }
            }
        }

        // Elements: assignment, lev-max, plev bounds; weights by k-sums.
        let mut present = 0usize;
        let mut alive = 0usize;
        let mut active_at = vec![0i64; top as usize + 2];
        let mut passive_at = vec![0i64; top as usize + 2];
        for (i, st) in self.elems.iter().enumerate() {
            let e = ElementId::from(i);
            if st.life == Life::Absent {
                continue;
            }
            present += 1;
            if st.asn == NO_SET || self.set_level[st.asn as usize] < 0 {
                rep.flag(Rule::Feasibility, 0.0, format!("element {e} has no covering set in the cover"));
                continue;
            }
            let asn_level = self.set_level[st.asn as usize];
            if st.plev > top || st.lev > st.plev {
                rep.flag(
                    Rule::PlevBounds,
                    st.lev as f64 - st.plev as f64,
                    format!("element {e}: lev {} plev {} L {top}", st.lev, st.plev),
                );
                continue;
            }
            match st.life {
                Life::Alive => {
                    alive += 1;
                    let max = self
                        .system
                        .incidence(e)
                        .iter()
                        .map(|s| self.set_level[s.idx()])
                        .max()
                        .unwrap_or(-1);
                    if st.lev as i32 != max || asn_level != max {
                        rep.flag(
                            Rule::LevMax,
                            (max - st.lev as i32) as f64,
                            format!(
                                "alive element {e}: lev {} assigned set level {asn_level}, highest containing level {max}",
                                st.lev
                            ),
                        );
                    }
                }
                Life::Dead => {
                    if st.lev != st.plev {
                        rep.flag(Rule::PlevBounds, 0.0, format!("dead element {e}: lev {} != plev {}", st.lev, st.plev));
                    }
                    if st.lev as i32 != asn_level {
                        rep.flag(Rule::Bookkeeping, 0.0, format!("dead element {e}: lev {} but set level {asn_level}", st.lev));
                    }
                }
                Life::Absent => unreachable!(),
            }
            // Difference arrays; prefix sums below give |A_k| and |P_k|.
            active_at[st.lev as usize] += 1;
            active_at[st.plev as usize] -= 1;
            passive_at[st.plev as usize] += 1;
        }
        for k in 1..=top as usize {
            active_at[k] += active_at[k - 1];
            passive_at[k] += passive_at[k - 1];
        }
        if present != self.present || alive != self.alive || cov_total != present {
            rep.flag(
                Rule::Bookkeeping,
                0.0,
                format!(
                    "counters: present {}/{present}, alive {}/{alive}, cov total {cov_total}",
                    self.present, self.alive
                ),
            );
        }
        let (mut wa, mut wp) = (0.0, 0.0);
        for k in 0..top as usize {
            let w = self.inv_pow[k] - self.inv_pow[k + 1];
            wa += w * active_at[k] as f64;
            wp += w * passive_at[k] as f64;
        }
        rep.weight_active = wa;
        rep.weight_passive = wp;
        let (hwa, hwp) = self.weights();
        if (hwa - wa).abs() > 1e-9 * wa.max(1.0) || (hwp - wp).abs() > 1e-9 * wp.max(1.0) {
            rep.flag(
                Rule::Bookkeeping,
                0.0,
                format!("weights: histogram ({hwa}, {hwp}) vs recount ({wa}, {wp})"),
            );
        }
        let limit = 2.0 * self.epsilon * wa;
        if wp > limit + tol(limit) {
            rep.flag(Rule::Inv3, wp - limit, format!("W_P = {wp} > 2ε·W_A = {limit}"));
        }

        // Inv1 by recounting N_k(s) from scratch.
        for s in self.system.sets() {
            let mut events: Vec<(u32, i32)> = Vec::new();
            for &e in self.system.members(s) {
                let st = self.elems[e.idx()];
                if st.life != Life::Absent && st.lev < st.plev && st.plev <= top {
                    events.push((st.lev, 1));
                    events.push((st.plev, -1));
                }
            }
            events.sort_unstable();
            let mut merged: Vec<(u32, i32)> = Vec::new();
            for (l, d) in events {
                match merged.last_mut() {
                    Some(last) if last.0 == l => last.1 += d,
                    _ => merged.push((l, d)),
                }
            }
            merged.retain(|&(_, d)| d != 0);
            if merged != self.profile[s.idx()] {
                rep.flag(Rule::Bookkeeping, 0.0, format!("set {s}: active-count profile out of sync"));
            }
            let cost = self.system.cost(s);
            let mut count = 0i64;
            // The count is constant between events and the threshold grows
            // with k, so checking each segment's first level suffices.
            for &(level, d) in &merged {
                count += d as i64;
                if count <= 0 || level >= top {
                    continue;
                }
                let t = self.pow[level as usize + 1] * cost;
                if count as f64 >= t + tol(t) {
                    rep.flag(
                        Rule::Inv1,
                        count as f64 - t,
                        format!("set {s}: |N_{level}| = {count} ≥ β^{}·cost = {t}", level + 1),
                    );
                }
            }
        }
        rep
    }
}

impl DynamicCover for LevelGreedy<'_> {
    fn name(&self) -> &'static str {
        "level-greedy"
    }

    fn insert(&mut self, e: ElementId) -> Result<usize> {
        self.check_alive(e, false)?;
        self.begin_update();
        if self.elems[e.idx()].life == Life::Dead {
            self.purge(e);
        }
        let (s, level) = match self.best_cover_set(e, None) {
            Some(found) => found,
            None => {
                let s = self.system.cheapest_containing(e);
                self.enter_cover(s, 0);
                (s, 0)
            }
        };
        self.attach(e, s);
        let st = &mut self.elems[e.idx()];
        st.life = Life::Alive;
        st.lev = level;
        st.plev = self.top;
        self.hist_add(level, self.top, 1);
        self.add_active(e, level, self.top);
        self.present += 1;
        self.alive += 1;
        for &t in self.system.incidence(e) {
            self.queue_inv1(t);
        }
        self.repair()?;
        if self.inv3_violated() {
            self.rebuild()?;
        }
        Ok(self.finish_update())
    }

    fn delete(&mut self, e: ElementId) -> Result<usize> {
        self.check_alive(e, true)?;
        self.begin_update();
        let lev = self.elems[e.idx()].lev;
        self.relevel(e, lev, lev);
        self.elems[e.idx()].life = Life::Dead;
        self.alive -= 1;
        self.work += 1;
        if self.inv3_violated() {
            self.rebuild()?;
        }
        Ok(self.finish_update())
    }

    fn current_cover(&self) -> &CoverSolution {
        &self.cover
    }

    fn approx_alpha(&self) -> f64 {
        (1.0 + self.epsilon) * (self.system.capacity().max(2) as f64).ln()
    }

    fn work_counter(&self) -> u64 {
        self.work
    }

    fn is_robust(&self) -> bool {
        true
    }

    fn lower_bound(&self) -> Option<f64> {
        Some(self.dual_lower_bound())
    }

    fn as_level_greedy(&self) -> Option<&LevelGreedy<'_>> {
        Some(self)
    }
}
