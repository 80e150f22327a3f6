use std::collections::{HashMap, VecDeque};
use std::fmt;

use super::{FiniteGroup, GroupConfig, GroupError};

/// A permutation of `{0, …, k−1}` in image form: `p[i]` is the image of `i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation((0..degree as u32).collect())
    }

    pub fn from_images(images: &[usize]) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in images {
            if i >= n || seen[i] {
                return None;
            }
            seen[i] = true;
        }
        Some(Permutation(images.iter().map(|&i| i as u32).collect()))
    }

    /// Builds a permutation of `degree` points from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Option<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut moved = vec![false; degree];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                let b = cycle[(k + 1) % cycle.len()];
                if a >= degree || b >= degree || moved[a] {
                    return None;
                }
                moved[a] = true;
                images[a] = b;
            }
        }
        Self::from_images(&images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&i| self.0[i as usize]).collect())
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut j = self.apply(start);
            while j != start {
                seen[j] = true;
                cycle.push(j);
                j = self.apply(j);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|i| i.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FiniteGroup {
    /// Closure of permutation generators. The identity is element 0 and the
    /// rest follow in breadth-first order of right multiplication by the
    /// generators; the product of elements `a`, `b` is `a ∘ b`.
    pub fn from_permutations(degree: usize, generators: &[Vec<usize>]) -> Result<Self, GroupError> {
        Self::from_permutations_with(degree, generators, &GroupConfig::default())
    }

    pub fn from_permutations_with(
        degree: usize,
        generators: &[Vec<usize>],
        config: &GroupConfig,
    ) -> Result<Self, GroupError> {
        let gens = generators
            .iter()
            .enumerate()
            .map(|(index, g)| {
                if g.len() != degree {
                    return Err(GroupError::InvalidPermutation { index, degree });
                }
                Permutation::from_images(g).ok_or(GroupError::InvalidPermutation { index, degree })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let (group, _) = closure(degree, &gens, config)?;
        Ok(group)
    }
}

/// Breadth-first closure. Returns the group and the permutation of each element.
pub(crate) fn closure(
    degree: usize,
    gens: &[Permutation],
    config: &GroupConfig,
) -> Result<(FiniteGroup, Vec<Permutation>), GroupError> {
    let id = Permutation::identity(degree);
    let mut index: HashMap<Permutation, usize> = HashMap::new();
    let mut elements = vec![id.clone()];
    // parent[y] = (x, s) with y = x ∘ gens[s]
    let mut parent: Vec<(usize, usize)> = vec![(0, usize::MAX)];
    let mut right: Vec<Vec<u32>> = Vec::new();
    index.insert(id, 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        let mut row = Vec::with_capacity(gens.len());
        for (s, g) in gens.iter().enumerate() {
            let y = elements[x].compose(g);
            let next = elements.len();
            let iy = *index.entry(y.clone()).or_insert(next);
            if iy == next {
                if next >= config.order_cap {
                    return Err(GroupError::OrderLimitExceeded { limit: config.order_cap });
                }
                elements.push(y);
                parent.push((x, s));
                queue.push_back(iy);
            }
            row.push(iy as u32);
        }
        debug_assert_eq!(right.len(), x);
        right.push(row);
    }
    let n = elements.len();
    let mut table = vec![0u32; n * n];
    for a in 0..n {
        table[a * n] = a as u32;
        // elements are stored in BFS order, so parents precede children
        for b in 1..n {
            let (p, s) = parent[b];
            let ap = table[a * n + p] as usize;
            table[a * n + b] = right[ap][s];
        }
    }
    let labels = elements.iter().map(|p| p.to_string()).collect();
    let group = FiniteGroup::from_flat_table(n, table, Some(labels), config.audit)?;
    Ok((group, elements))
}
