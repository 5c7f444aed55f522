use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::COST_TOL;

macro_rules! dense_id {
    ($name:ident, $doc:literal) => {
        #[doc = $doc]
        #[derive(
            Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
        )]
        #[serde(transparent)]
        pub struct $name(pub u32);

        impl $name {
            #[inline]
            pub fn idx(self) -> usize {
                self.0 as usize
            }
        }

        impl From<usize> for $name {
            #[inline]
            fn from(i: usize) -> Self {
                $name(i as u32)
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}", self.0)
            }
        }
    };
}

dense_id!(SetId, "Dense index of a set in a [`SetSystem`].");
dense_id!(ElementId, "Dense index of an element in a [`SetSystem`].");

/// A fixed family of weighted sets over a dense element range.
///
/// Ids are dense; the labels used in instance files are kept alongside so
/// that a parsed system can be written back unchanged.
#[derive(Clone, Debug, PartialEq)]
pub struct SetSystem {
    capacity: usize,
    aspect_ratio: f64,
    costs: Vec<f64>,
    members: Vec<Vec<ElementId>>,
    incidence: Vec<Vec<SetId>>,
    frequency: usize,
    set_labels: Vec<u64>,
    element_labels: Vec<u64>,
}

impl SetSystem {
    /// Builds a system over elements `0..num_elements` with identity labels.
    pub fn new(
        capacity: usize,
        aspect_ratio: f64,
        num_elements: usize,
        sets: Vec<(f64, Vec<ElementId>)>,
    ) -> Result<Self> {
        let set_labels = (0..sets.len() as u64).collect();
        let element_labels = (0..num_elements as u64).collect();
        Self::with_labels(capacity, aspect_ratio, sets, set_labels, element_labels)
    }

    pub(crate) fn with_labels(
        capacity: usize,
        aspect_ratio: f64,
        sets: Vec<(f64, Vec<ElementId>)>,
        set_labels: Vec<u64>,
        element_labels: Vec<u64>,
    ) -> Result<Self> {
        if capacity == 0 {
            return Err(Error::Validation("capacity n must be positive".into()));
        }
        if !(aspect_ratio.is_finite() && aspect_ratio >= 1.0) {
            return Err(Error::Validation(format!(
                "aspect ratio C must be >= 1, got {aspect_ratio}"
            )));
        }
        let num_elements = element_labels.len();
        let lo = 1.0 / aspect_ratio - COST_TOL;
        let hi = 1.0 + COST_TOL;
        let mut costs = Vec::with_capacity(sets.len());
        let mut members = Vec::with_capacity(sets.len());
        let mut incidence: Vec<Vec<SetId>> = vec![Vec::new(); num_elements];
        for (i, (cost, mut elems)) in sets.into_iter().enumerate() {
            let label = set_labels[i];
            if !(cost.is_finite() && cost >= lo && cost <= hi) {
                return Err(Error::Validation(format!(
                    "set {label}: cost {cost} outside [1/C, 1] = [{}, 1]",
                    1.0 / aspect_ratio
                )));
            }
            elems.sort_unstable();
            for w in elems.windows(2) {
                if w[0] == w[1] {
                    return Err(Error::Validation(format!(
                        "set {label}: element {} listed twice",
                        element_labels[w[0].idx()]
                    )));
                }
            }
            for &e in &elems {
                if e.idx() >= num_elements {
                    return Err(Error::Validation(format!(
                        "set {label}: element id {e} out of range"
                    )));
                }
                incidence[e.idx()].push(SetId::from(i));
            }
            costs.push(cost);
            members.push(elems);
        }
        let mut frequency = 1;
        for (e, inc) in incidence.iter().enumerate() {
            if inc.is_empty() {
                return Err(Error::Validation(format!(
                    "element {} is not contained in any set",
                    element_labels[e]
                )));
            }
            frequency = frequency.max(inc.len());
        }
        Ok(SetSystem {
            capacity,
            aspect_ratio,
            costs,
            members,
            incidence,
            frequency,
            set_labels,
            element_labels,
        })
    }

    /// Maximum number of simultaneously alive elements (`n`).
    pub fn capacity(&self) -> usize {
        self.capacity
    }

    /// Cost ratio bound `C`; all costs lie in `[1/C, 1]`.
    pub fn aspect_ratio(&self) -> f64 {
        self.aspect_ratio
    }

    /// Largest number of sets containing a single element (`f`).
    pub fn frequency(&self) -> usize {
        self.frequency
    }

    pub fn num_sets(&self) -> usize {
        self.costs.len()
    }

    pub fn num_elements(&self) -> usize {
        self.incidence.len()
    }

    #[inline]
    pub fn cost(&self, s: SetId) -> f64 {
        self.costs[s.idx()]
    }

    pub fn try_cost(&self, s: SetId) -> Result<f64> {
        self.costs.get(s.idx()).copied().ok_or(Error::UnknownSet(s))
    }

    /// Elements of `s`, sorted by id.
    #[inline]
    pub fn members(&self, s: SetId) -> &[ElementId] {
        &self.members[s.idx()]
    }

    /// Sets containing `e`, sorted by id.
    #[inline]
    pub fn incidence(&self, e: ElementId) -> &[SetId] {
        &self.incidence[e.idx()]
    }

    pub fn sets(&self) -> impl Iterator<Item = SetId> + '_ {
        (0..self.num_sets()).map(SetId::from)
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> + '_ {
        (0..self.num_elements()).map(ElementId::from)
    }

    pub fn set_label(&self, s: SetId) -> u64 {
        self.set_labels[s.idx()]
    }

    pub fn element_label(&self, e: ElementId) -> u64 {
        self.element_labels[e.idx()]
    }

    /// Reverse lookup from file label to dense element id.
    pub fn element_by_label(&self, label: u64) -> Option<ElementId> {
        self.element_labels
            .iter()
            .position(|&l| l == label)
            .map(ElementId::from)
    }

    /// Cheapest set containing `e`, ties to the lowest id.
    pub fn cheapest_containing(&self, e: ElementId) -> SetId {
        let inc = self.incidence(e);
        let mut best = inc[0];
        for &s in &inc[1..] {
            if self.cost(s) < self.cost(best) {
                best = s;
            }
        }
        best
    }

    /// Total size `Σ|s|` of the family.
    pub fn total_size(&self) -> usize {
        self.members.iter().map(Vec::len).sum()
    }

    /// Largest set size `d`.
    pub fn max_set_size(&self) -> usize {
        self.members.iter().map(Vec::len).max().unwrap_or(0)
    }
}
