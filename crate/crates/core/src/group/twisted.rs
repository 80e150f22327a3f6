use serde::Serialize;

use super::{DisjointSets, FiniteGroup, GroupMap};

/// Partition of a group into twisted conjugacy classes of an endomorphism.
///
/// Classes are numbered in order of their least element, which is also the
/// class representative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistedPartition {
    pub class_of: Vec<usize>,
    pub class_reps: Vec<usize>,
    pub class_sizes: Vec<usize>,
}

impl TwistedPartition {
    /// The Reidemeister number: the number of classes.
    pub fn count(&self) -> usize {
        self.class_reps.len()
    }

    pub fn members(&self, class: usize) -> impl Iterator<Item = usize> + '_ {
        self.class_of.iter().enumerate().filter(move |(_, &c)| c == class).map(|(x, _)| x)
    }

    fn from_sets(mut sets: DisjointSets) -> Self {
        let class_of = sets.labels();
        let count = sets.set_count();
        let mut class_reps = vec![usize::MAX; count];
        let mut class_sizes = vec![0; count];
        for (x, &c) in class_of.iter().enumerate() {
            if class_reps[c] == usize::MAX {
                class_reps[c] = x;
            }
            class_sizes[c] += 1;
        }
        TwistedPartition { class_of, class_reps, class_sizes }
    }
}

/// `g·x = g x φ(g)⁻¹`. This is a left action: `(gh)·x = g·(h·x)`.
#[inline]
pub(crate) fn twisted_act(group: &FiniteGroup, map: &GroupMap, g: usize, x: usize) -> usize {
    group.mul(group.mul(g, x), group.inv(map.apply(g)))
}

/// Orbits of the twisted action, merging `x` with `s·x` for every seed `s`.
/// The orbits of a generating set of seeds are the orbits of the whole group.
pub fn twisted_classes_seeded(map: &GroupMap, seeds: &[usize]) -> TwistedPartition {
    let group = map.group();
    let mut sets = DisjointSets::new(group.order());
    for &s in seeds {
        for x in group.elements() {
            sets.union(x, twisted_act(group, map, s, x));
        }
    }
    TwistedPartition::from_sets(sets)
}

/// Twisted conjugacy classes `{x}_φ = { g x φ(g)⁻¹ : g ∈ G }`.
pub fn twisted_classes(map: &GroupMap) -> TwistedPartition {
    twisted_classes_seeded(map, &map.group().generating_set())
}

/// Number of twisted conjugacy classes of `map`.
pub fn reidemeister_number(map: &GroupMap) -> usize {
    twisted_classes(map).count()
}

/// Ordinary conjugacy classes (the identity map's twisted classes).
pub fn conjugacy_partition(group: &std::sync::Arc<FiniteGroup>) -> TwistedPartition {
    twisted_classes(&GroupMap::identity(group))
}
