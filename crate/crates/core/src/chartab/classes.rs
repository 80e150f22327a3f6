use std::sync::Arc;

use serde::Serialize;

use crate::group::{conjugacy_partition, FiniteGroup};

/// Conjugacy classes of a finite group, ordered by least element index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjugacyData {
    pub class_of: Vec<usize>,
    pub reps: Vec<usize>,
    pub sizes: Vec<usize>,
    /// Class of `g⁻¹` for `g` in each class.
    pub inverse_class: Vec<usize>,
    pub exponent: usize,
    pub identity_class: usize,
}

impl ConjugacyData {
    pub fn new(group: &Arc<FiniteGroup>) -> Self {
        let p = conjugacy_partition(group);
        let inverse_class = p.class_reps.iter().map(|&r| p.class_of[group.inv(r)]).collect();
        ConjugacyData {
            identity_class: p.class_of[group.identity()],
            class_of: p.class_of,
            reps: p.class_reps,
            sizes: p.class_sizes,
            inverse_class,
            exponent: group.exponent(),
        }
    }

    pub fn count(&self) -> usize {
        self.reps.len()
    }

    /// `power_map[k][l]` = class of `gₖˡ`, for `l` in `0..exponent`.
    pub fn power_map(&self, group: &FiniteGroup) -> Vec<Vec<usize>> {
        self.reps
            .iter()
            .map(|&g| {
                let mut x = group.identity();
                (0..self.exponent)
                    .map(|_| {
                        let c = self.class_of[x];
                        x = group.mul(x, g);
                        c
                    })
                    .collect()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::BuiltinGroup;

    fn data(b: BuiltinGroup) -> ConjugacyData {
        ConjugacyData::new(&Arc::new(b.build().unwrap()))
    }

    #[test]
    fn trivial_group() {
        let d = data(BuiltinGroup::Cyclic(1));
        assert_eq!(d.count(), 1);
        assert_eq!(d.exponent, 1);
    }

    #[test]
    fn symmetric_three() {
        let d = data(BuiltinGroup::Symmetric(3));
        let mut sizes = d.sizes.clone();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 3]);
        assert_eq!(d.exponent, 6);
        // S₃ is ambivalent
        assert!(d.inverse_class.iter().enumerate().all(|(k, &j)| k == j));
    }

    #[test]
    fn cyclic_singletons() {
        for n in 1..=9 {
            let d = data(BuiltinGroup::Cyclic(n));
            assert_eq!(d.count(), n);
            assert!(d.sizes.iter().all(|&s| s == 1));
            for k in 0..n {
                assert_eq!(d.inverse_class[d.inverse_class[k]], k);
            }
        }
    }

    #[test]
    fn sizes_sum_to_order() {
        for b in [BuiltinGroup::Symmetric(4), BuiltinGroup::Quaternion8, BuiltinGroup::Dihedral(5)] {
            let n = b.order().unwrap();
            let d = data(b);
            assert_eq!(d.sizes.iter().sum::<usize>(), n);
            assert_eq!(d.class_of[d.reps[d.identity_class]], d.identity_class);
        }
    }
}
