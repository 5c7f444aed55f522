use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::system::ElementId;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum UpdateKind {
    Insert,
    Delete,
}

/// One adversarial element update.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UpdateStep {
    pub kind: UpdateKind,
    pub element: ElementId,
}

impl UpdateStep {
    pub fn insert(e: ElementId) -> Self {
        UpdateStep {
            kind: UpdateKind::Insert,
            element: e,
        }
    }

    pub fn delete(e: ElementId) -> Self {
        UpdateStep {
            kind: UpdateKind::Delete,
            element: e,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
enum Status {
    Absent,
    Alive,
    Dead,
}

const NO_POS: u32 = u32::MAX;

/// The adversary's view of the universe: alive elements `U` and deleted
/// elements still retained by some algorithm (`U⁺ \ U`).
#[derive(Clone, Debug)]
pub struct UniverseState {
    capacity: usize,
    status: Vec<Status>,
    // Dense list of alive elements with back-pointers for O(1) removal.
    alive: Vec<ElementId>,
    pos: Vec<u32>,
    dead: usize,
    lifespan: Vec<u32>,
}

impl UniverseState {
    pub fn new(num_elements: usize, capacity: usize) -> Self {
        UniverseState {
            capacity,
            status: vec![Status::Absent; num_elements],
            alive: Vec::new(),
            pos: vec![NO_POS; num_elements],
            dead: 0,
            lifespan: vec![0; num_elements],
        }
    }

    /// Universe for `system` with every listed element alive.
    pub fn with_alive(
        system: &crate::SetSystem,
        alive: impl IntoIterator<Item = ElementId>,
    ) -> Result<Self> {
        let mut u = Self::new(system.num_elements(), system.capacity());
        for e in alive {
            u.apply(UpdateStep::insert(e))?;
        }
        Ok(u)
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn num_elements(&self) -> usize {
        self.status.len()
    }

    pub fn num_alive(&self) -> usize {
        self.alive.len()
    }

    pub fn num_dead(&self) -> usize {
        self.dead
    }

    #[inline]
    pub fn is_alive(&self, e: ElementId) -> bool {
        self.status.get(e.idx()) == Some(&Status::Alive)
    }

    pub fn is_dead(&self, e: ElementId) -> bool {
        self.status.get(e.idx()) == Some(&Status::Dead)
    }

    /// Number of times `e` has been inserted.
    pub fn lifespan(&self, e: ElementId) -> u32 {
        self.lifespan[e.idx()]
    }

    /// Alive elements in unspecified (but deterministic) order.
    pub fn alive(&self) -> &[ElementId] {
        &self.alive
    }

    pub fn alive_sorted(&self) -> Vec<ElementId> {
        let mut v = self.alive.clone();
        v.sort_unstable();
        v
    }

    pub fn dead(&self) -> impl Iterator<Item = ElementId> + '_ {
        self.status
            .iter()
            .enumerate()
            .filter(|(_, s)| **s == Status::Dead)
            .map(|(i, _)| ElementId::from(i))
    }

    /// Checks `step` against the current state without applying it.
    pub fn validate(&self, step: UpdateStep) -> Result<()> {
        let e = step.element;
        let Some(&status) = self.status.get(e.idx()) else {
            return Err(Error::Trace(format!("element {e} out of range")));
        };
        match step.kind {
            UpdateKind::Insert => {
                if status == Status::Alive {
                    return Err(Error::Trace(format!("insert of alive element {e}")));
                }
                if self.alive.len() >= self.capacity {
                    return Err(Error::Trace(format!(
                        "insert of {e} exceeds capacity n = {}",
                        self.capacity
                    )));
                }
            }
            UpdateKind::Delete => {
                if status != Status::Alive {
                    return Err(Error::Trace(format!("delete of non-alive element {e}")));
                }
            }
        }
        Ok(())
    }

    pub fn apply(&mut self, step: UpdateStep) -> Result<()> {
        self.validate(step)?;
        let i = step.element.idx();
        match step.kind {
            UpdateKind::Insert => {
                if self.status[i] == Status::Dead {
                    self.dead -= 1;
                }
                self.status[i] = Status::Alive;
                self.pos[i] = self.alive.len() as u32;
                self.alive.push(step.element);
                self.lifespan[i] += 1;
            }
            UpdateKind::Delete => {
                let p = self.pos[i] as usize;
                self.alive.swap_remove(p);
                if let Some(&moved) = self.alive.get(p) {
                    self.pos[moved.idx()] = p as u32;
                }
                self.pos[i] = NO_POS;
                self.status[i] = Status::Dead;
                self.dead += 1;
            }
        }
        Ok(())
    }

    /// Forgets a dead element.
    pub fn purge(&mut self, e: ElementId) {
        if self.status[e.idx()] == Status::Dead {
            self.status[e.idx()] = Status::Absent;
            self.dead -= 1;
        }
    }

    pub fn purge_dead(&mut self) {
        for s in self.status.iter_mut() {
            if *s == Status::Dead {
                *s = Status::Absent;
            }
        }
        self.dead = 0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const E1: ElementId = ElementId(1);

    #[test]
    fn insert_then_reinsert_starts_new_lifespan() {
        let mut u = UniverseState::new(4, 4);
        u.apply(UpdateStep::insert(E1)).unwrap();
        assert_eq!(u.alive(), &[E1]);
        u.apply(UpdateStep::delete(E1)).unwrap();
        assert!(u.is_dead(E1));
        assert_eq!(u.num_dead(), 1);
        u.apply(UpdateStep::insert(E1)).unwrap();
        assert_eq!(u.alive(), &[E1]);
        assert_eq!(u.lifespan(E1), 2);
        assert_eq!(u.num_dead(), 0);
    }

    #[test]
    fn rejects_invalid_updates() {
        let mut u = UniverseState::new(10, 2);
        assert!(matches!(
            u.apply(UpdateStep::delete(ElementId(9))),
            Err(Error::Trace(_))
        ));
        u.apply(UpdateStep::insert(E1)).unwrap();
        assert!(u.apply(UpdateStep::insert(E1)).is_err());
        u.apply(UpdateStep::insert(ElementId(2))).unwrap();
        // capacity 2 reached
        assert!(u.apply(UpdateStep::insert(ElementId(3))).is_err());
        assert!(u.apply(UpdateStep::insert(ElementId(10))).is_err());
    }

    #[test]
    fn swap_remove_keeps_positions() {
        let mut u = UniverseState::new(5, 5);
        for i in 0..5 {
            u.apply(UpdateStep::insert(ElementId(i))).unwrap();
        }
        u.apply(UpdateStep::delete(ElementId(0))).unwrap();
        u.apply(UpdateStep::delete(ElementId(4))).unwrap();
        u.apply(UpdateStep::delete(ElementId(2))).unwrap();
        assert_eq!(u.alive_sorted(), vec![ElementId(1), ElementId(3)]);
        u.purge_dead();
        assert_eq!(u.num_dead(), 0);
        assert_eq!(u.dead().count(), 0);
    }
}
