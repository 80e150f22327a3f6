//! Finite groups with exact multiplication tables.
//!
//! Elements are the indices `0..order`. Groups built from permutations or by
//! the built-in constructors have the identity at index 0 and the remaining
//! elements in breadth-first discovery order, so indices are reproducible
//! across runs and maps serialise stably.

mod builtin;
mod map;
mod perm;
mod twisted;
mod unionfind;

use std::collections::VecDeque;
use std::fmt;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use builtin::BuiltinGroup;
pub use map::{
    endo_from_images, endo_from_images_with, enumerate_endomorphisms, enumerate_endomorphisms_with,
    eventual_image, EventualImage, GroupMap,
};
pub use perm::Permutation;
pub use twisted::{
    conjugacy_partition, reidemeister_number, twisted_classes, twisted_classes_seeded,
    TwistedPartition,
};
pub use unionfind::DisjointSets;

/// Default cap on group order. The Cayley table needs `order²` entries.
pub const DEFAULT_ORDER_CAP: usize = 20_000;
/// Below this order, associativity and homomorphism audits are exhaustive.
pub const FULL_AUDIT_BELOW: usize = 512;
/// Default cap on the number of generator-image tuples tried by
/// [`enumerate_endomorphisms`].
pub const DEFAULT_SEARCH_CAP: u64 = 4_000_000;

const SAMPLED_AUDIT_CHECKS: usize = 200_000;
const AUDIT_SEED: u64 = 0x7477_625f_6175_6474;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("multiplication table is empty")]
    EmptyTable,
    #[error("multiplication table row {row} has length {len}, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("table entry ({row}, {col}) = {value} is out of range")]
    EntryOutOfRange { row: usize, col: usize, value: usize },
    #[error("not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {element} has no two-sided inverse")]
    NoInverse { element: usize },
    #[error("group order exceeds the cap of {limit}")]
    OrderLimitExceeded { limit: usize },
    #[error("generator {index} is not a permutation of {degree} points")]
    InvalidPermutation { index: usize, degree: usize },
    #[error("unknown builtin group {0:?}")]
    UnknownName(String),
    #[error("invalid parameters for builtin group {name}: {reason}")]
    InvalidParams { name: String, reason: String },
    #[error("{count} labels given for a group of order {order}")]
    LabelCount { count: usize, order: usize },
    #[error("element index {index} out of range for a group of order {order}")]
    ElementOutOfRange { index: usize, order: usize },
    #[error("{generators} generators but {images} images")]
    LengthMismatch { generators: usize, images: usize },
    #[error("the given elements generate a subgroup of order {generated}, not the whole group of order {order}")]
    NotGenerating { generated: usize, order: usize },
    #[error("not a homomorphism: image({x}*{y}) != image({x})*image({y})")]
    NotAHomomorphism { x: usize, y: usize },
    #[error("endomorphism search needs {tuples} candidate tuples, above the cap of {limit}")]
    SearchLimitExceeded { tuples: u128, limit: u64 },
}

/// How thoroughly table axioms are audited.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Audit {
    /// Exhaustive below [`FULL_AUDIT_BELOW`], sampled above.
    #[default]
    Auto,
    Full,
    Sampled(usize),
}

impl Audit {
    fn is_full(self, order: usize) -> bool {
        match self {
            Audit::Auto => order < FULL_AUDIT_BELOW,
            Audit::Full => true,
            Audit::Sampled(_) => false,
        }
    }

    fn samples(self) -> usize {
        match self {
            Audit::Sampled(n) => n,
            _ => SAMPLED_AUDIT_CHECKS,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroupConfig {
    pub order_cap: usize,
    pub audit: Audit,
    pub search_cap: u64,
}

impl Default for GroupConfig {
    fn default() -> Self {
        GroupConfig {
            order_cap: DEFAULT_ORDER_CAP,
            audit: Audit::Auto,
            search_cap: DEFAULT_SEARCH_CAP,
        }
    }
}

impl GroupConfig {
    /// Default configuration with the order cap taken from `TWB_ORDER_CAP`
    /// when that variable holds a positive integer.
    pub fn from_env() -> Self {
        let mut config = GroupConfig::default();
        if let Some(cap) = std::env::var("TWB_ORDER_CAP")
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&c| c > 0)
        {
            config.order_cap = cap;
        }
        config
    }
}

/// A finite group as an indexed element set with an exact multiplication table.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    identity: usize,
    inverse: Vec<u32>,
    labels: Option<Vec<String>>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order)
            .field("identity", &self.identity)
            .finish_non_exhaustive()
    }
}

impl FiniteGroup {
    /// Builds a group from a Cayley table `table[a][b] = a*b`, deriving the
    /// identity and inverses and auditing associativity.
    pub fn from_cayley(
        table: &[Vec<usize>],
        labels: Option<Vec<String>>,
    ) -> Result<Self, GroupError> {
        Self::from_cayley_with(table, labels, &GroupConfig::default())
    }

    pub fn from_cayley_with(
        table: &[Vec<usize>],
        labels: Option<Vec<String>>,
        config: &GroupConfig,
    ) -> Result<Self, GroupError> {
        let order = table.len();
        if order == 0 {
            return Err(GroupError::EmptyTable);
        }
        if order > config.order_cap {
            return Err(GroupError::OrderLimitExceeded { limit: config.order_cap });
        }
        let mut flat = Vec::with_capacity(order * order);
        for (row, entries) in table.iter().enumerate() {
            if entries.len() != order {
                return Err(GroupError::NotSquare { row, len: entries.len(), expected: order });
            }
            for (col, &value) in entries.iter().enumerate() {
                if value >= order {
                    return Err(GroupError::EntryOutOfRange { row, col, value });
                }
                flat.push(value as u32);
            }
        }
        Self::from_flat_table(order, flat, labels, config.audit)
    }

    /// Validates a row-major table: identity, inverses, then associativity.
    pub(crate) fn from_flat_table(
        order: usize,
        table: Vec<u32>,
        labels: Option<Vec<String>>,
        audit: Audit,
    ) -> Result<Self, GroupError> {
        debug_assert_eq!(table.len(), order * order);
        if let Some(l) = &labels {
            if l.len() != order {
                return Err(GroupError::LabelCount { count: l.len(), order });
            }
        }
        let at = |a: usize, b: usize| table[a * order + b] as usize;
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or(GroupError::NoIdentity)?;
        let mut inverse = vec![0u32; order];
        for x in 0..order {
            let y = (0..order)
                .find(|&y| at(x, y) == identity)
                .filter(|&y| at(y, x) == identity)
                .ok_or(GroupError::NoInverse { element: x })?;
            inverse[x] = y as u32;
        }
        let group = FiniteGroup { order, table, identity, inverse, labels };
        group.audit_associativity(audit)?;
        Ok(group)
    }

    /// Table built from a trusted construction; only checked in debug builds.
    pub(crate) fn from_trusted_table(
        order: usize,
        table: Vec<u32>,
        labels: Option<Vec<String>>,
    ) -> Self {
        let audit = if cfg!(debug_assertions) { Audit::Auto } else { Audit::Sampled(0) };
        Self::from_flat_table(order, table, labels, audit)
            .expect("trusted group construction produced an invalid table")
    }

    fn audit_associativity(&self, audit: Audit) -> Result<(), GroupError> {
        let n = self.order;
        let check = |a: usize, b: usize, c: usize| {
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                Err(GroupError::NotAssociative { a, b, c })
            } else {
                Ok(())
            }
        };
        if audit.is_full(n) {
            for a in 0..n {
                for b in 0..n {
                    let ab = self.mul(a, b);
                    for c in 0..n {
                        if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                            return Err(GroupError::NotAssociative { a, b, c });
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(AUDIT_SEED);
            for _ in 0..audit.samples() {
                check(rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n))?;
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Human-readable name of an element; falls back to its index.
    pub fn label(&self, x: usize) -> String {
        match &self.labels {
            Some(l) => l[x].clone(),
            None => x.to_string(),
        }
    }

    /// The table as nested rows, e.g. for serialisation.
    pub fn cayley_table(&self) -> Vec<Vec<usize>> {
        self.table
            .chunks(self.order)
            .map(|row| row.iter().map(|&v| v as usize).collect())
            .collect()
    }

    pub fn pow(&self, x: usize, mut k: u64) -> usize {
        let mut base = x;
        let mut acc = self.identity;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != self.identity {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    /// Least common multiple of element orders.
    pub fn exponent(&self) -> usize {
        self.elements()
            .map(|x| self.element_order(x))
            .fold(1, num_integer::lcm)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub(crate) fn check_element(&self, index: usize) -> Result<(), GroupError> {
        if index < self.order {
            Ok(())
        } else {
            Err(GroupError::ElementOutOfRange { index, order: self.order })
        }
    }

    /// Membership mask and breadth-first element list of the subgroup
    /// generated by `gens`.
    pub fn generated_subgroup(&self, gens: &[usize]) -> (Vec<bool>, Vec<usize>) {
        let mut member = vec![false; self.order];
        let mut found = vec![self.identity];
        member[self.identity] = true;
        self.extend_closure(&mut member, &mut found, gens);
        (member, found)
    }

    fn extend_closure(&self, member: &mut [bool], found: &mut Vec<usize>, gens: &[usize]) {
        let mut queue: VecDeque<usize> = found.iter().copied().collect();
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                let y = self.mul(x, s);
                if !member[y] {
                    member[y] = true;
                    found.push(y);
                    queue.push_back(y);
                }
            }
        }
    }

    /// A generating set found by scanning elements in index order and
    /// keeping each one not already generated.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let (mut member, mut found) = self.generated_subgroup(&[]);
        for x in self.elements() {
            if !member[x] {
                gens.push(x);
                // the closure of <H, x> has to revisit old elements against x
                found.clear();
                found.extend(member.iter().enumerate().filter(|(_, &m)| m).map(|(i, _)| i));
                self.extend_closure(&mut member, &mut found, &gens);
            }
            if found.len() == self.order {
                break;
            }
        }
        gens
    }

    /// A small generating set, chosen greedily: at each step add the element
    /// that generates the largest subgroup together with the ones already
    /// chosen (ties broken by least index).
    pub fn small_generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut current = 1;
        while current < self.order {
            let mut best: Option<(usize, usize)> = None;
            let (member, _) = self.generated_subgroup(&gens);
            for x in self.elements().filter(|&x| !member[x]) {
                let mut trial = gens.clone();
                trial.push(x);
                let size = self.generated_subgroup(&trial).1.len();
                if best.is_none_or(|(_, s)| size > s) {
                    best = Some((x, size));
                    if size == self.order {
                        break;
                    }
                }
            }
            let (x, size) = best.expect("proper subgroup has elements outside it");
            gens.push(x);
            current = size;
        }
        gens
    }

    /// The subgroup on `elements` as a group in its own right, with the
    /// identity first and the other elements in increasing parent index.
    /// Returns the subgroup and its embedding into `self`.
    pub fn subgroup(&self, elements: &[usize]) -> (FiniteGroup, Vec<usize>) {
        let mut embedding: Vec<usize> = elements.to_vec();
        embedding.sort_unstable();
        embedding.dedup();
        embedding.retain(|&x| x != self.identity);
        embedding.insert(0, self.identity);
        let mut local = vec![u32::MAX; self.order];
        for (i, &x) in embedding.iter().enumerate() {
            local[x] = i as u32;
        }
        let n = embedding.len();
        let mut table = Vec::with_capacity(n * n);
        for &a in &embedding {
            for &b in &embedding {
                let c = local[self.mul(a, b)];
                assert!(c != u32::MAX, "element set is not closed under multiplication");
                table.push(c);
            }
        }
        let labels = self
            .labels
            .as_ref()
            .map(|l| embedding.iter().map(|&x| l[x].clone()).collect());
        (FiniteGroup::from_trusted_table(n, table, labels), embedding)
    }

    /// Direct product `a × b`; the pair `(x, y)` has index `x·|b| + y`.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
        let n = a.order * b.order;
        let mut table = Vec::with_capacity(n * n);
        for x1 in 0..a.order {
            for y1 in 0..b.order {
                for x2 in 0..a.order {
                    let x = a.mul(x1, x2) * b.order;
                    for y2 in 0..b.order {
                        table.push((x + b.mul(y1, y2)) as u32);
                    }
                }
            }
        }
        let labels = (0..a.order)
            .flat_map(|x| (0..b.order).map(move |y| (x, y)))
            .map(|(x, y)| format!("({},{})", a.label(x), b.label(y)))
            .collect();
        FiniteGroup::from_trusted_table(n, table, Some(labels))
    }

    /// Reindexes so that the identity is first, then breadth-first order
    /// from the identity along right multiplication by `generating_set()`.
    pub fn canonical_relabel(&self) -> (FiniteGroup, Vec<usize>) {
        let gens = self.generating_set();
        let (_, order) = self.generated_subgroup(&gens);
        let mut local = vec![0u32; self.order];
        for (i, &x) in order.iter().enumerate() {
            local[x] = i as u32;
        }
        let n = self.order;
        let mut table = Vec::with_capacity(n * n);
        for &a in &order {
            for &b in &order {
                table.push(local[self.mul(a, b)]);
            }
        }
        let labels = self.labels.as_ref().map(|l| order.iter().map(|&x| l[x].clone()).collect());
        (FiniteGroup::from_trusted_table(n, table, labels), order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z3_table() -> Vec<Vec<usize>> {
        (0..3).map(|a| (0..3).map(|b| (a + b) % 3).collect()).collect()
    }

    #[test]
    fn trivial_group_from_table() {
        let g = FiniteGroup::from_cayley(&[vec![0]], None).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.identity(), 0);
        assert_eq!(g.inv(0), 0);
    }

    #[test]
    fn cyclic_three_from_table() {
        let g = FiniteGroup::from_cayley(&z3_table(), None).unwrap();
        assert_eq!(g.identity(), 0);
        assert_eq!(g.inv(1), 2);
        assert_eq!(g.exponent(), 3);
        assert!(g.is_abelian());
    }

    #[test]
    fn identity_need_not_be_index_zero() {
        // ℤ/3 with 1 playing the role of zero: a*b = a + b - 1 mod 3
        let t: Vec<Vec<usize>> =
            (0..3).map(|a| (0..3).map(|b| (a + b + 2) % 3).collect()).collect();
        let g = FiniteGroup::from_cayley(&t, None).unwrap();
        assert_eq!(g.identity(), 1);
        let (h, perm) = g.canonical_relabel();
        assert_eq!(h.identity(), 0);
        assert_eq!(perm[0], 1);
    }

    #[test]
    fn rejects_non_associative_table() {
        // a loop of order 5 with identity 0 whose rows and columns are
        // permutations but which is not associative
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        match FiniteGroup::from_cayley(&t, None) {
            Err(GroupError::NotAssociative { a, b, c }) => {
                let m = |x: usize, y: usize| t[x][y];
                assert_ne!(m(m(a, b), c), m(a, m(b, c)));
            }
            other => panic!("expected NotAssociative, got {other:?}"),
        }
    }

    #[test]
    fn rejects_missing_identity_and_inverse() {
        let t = vec![vec![0, 0], vec![0, 0]];
        assert_eq!(FiniteGroup::from_cayley(&t, None), Err(GroupError::NoIdentity));
        // monoid {1, 0} under multiplication: identity 0, element 1 has no inverse
        let t = vec![vec![0, 1], vec![1, 1]];
        assert_eq!(
            FiniteGroup::from_cayley(&t, None),
            Err(GroupError::NoInverse { element: 1 })
        );
    }

    #[test]
    fn rejects_malformed_tables() {
        assert_eq!(FiniteGroup::from_cayley(&[], None), Err(GroupError::EmptyTable));
        assert!(matches!(
            FiniteGroup::from_cayley(&[vec![0, 1], vec![1]], None),
            Err(GroupError::NotSquare { row: 1, .. })
        ));
        assert!(matches!(
            FiniteGroup::from_cayley(&[vec![0, 2], vec![1, 0]], None),
            Err(GroupError::EntryOutOfRange { row: 0, col: 1, value: 2 })
        ));
        let cfg = GroupConfig { order_cap: 2, ..Default::default() };
        assert!(matches!(
            FiniteGroup::from_cayley_with(&z3_table(), None, &cfg),
            Err(GroupError::OrderLimitExceeded { limit: 2 })
        ));
    }

    #[test]
    fn generating_sets() {
        let g = BuiltinGroup::Abelian(vec![2, 2, 2]).build().unwrap();
        assert_eq!(g.small_generating_set().len(), 3);
        let s4 = BuiltinGroup::Symmetric(4).build().unwrap();
        let gens = s4.small_generating_set();
        assert_eq!(gens.len(), 2);
        assert_eq!(s4.generated_subgroup(&gens).1.len(), 24);
        assert_eq!(s4.generated_subgroup(&s4.generating_set()).1.len(), 24);
        let one = BuiltinGroup::Cyclic(1).build().unwrap();
        assert!(one.small_generating_set().is_empty());
        assert!(one.generating_set().is_empty());
    }

    #[test]
    fn subgroup_embedding() {
        let z4 = BuiltinGroup::Cyclic(4).build().unwrap();
        let (h, emb) = z4.subgroup(&[2, 0]);
        assert_eq!(h.order(), 2);
        assert_eq!(emb, vec![0, 2]);
        assert_eq!(h.mul(1, 1), 0);
    }
}
