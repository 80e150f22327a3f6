use serde::Serialize;

use super::{CharacterTable, Cyclotomic};
use crate::group::{reidemeister_number, GroupMap};

/// What `χ ↦ χ∘φ` does to one irreducible character.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DualImage {
    /// `χ∘φ = χ`.
    FixedBy(usize),
    /// `χ∘φ` is the irreducible character with this index.
    MappedTo(usize),
    /// `χ∘φ = Σ mⱼ χⱼ` with these multiplicities (possibly a single
    /// multiplicity above one, or zero characters for nothing at all).
    Reducible(Vec<u64>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualAction {
    pub images: Vec<DualImage>,
}

impl DualAction {
    pub fn fixed_count(&self) -> usize {
        self.images.iter().filter(|i| matches!(i, DualImage::FixedBy(_))).count()
    }
}

/// Values of `χᵢ∘φ` on the classes.
fn composed(table: &CharacterTable, map: &GroupMap, i: usize) -> Vec<Cyclotomic> {
    let classes = table.classes();
    classes
        .reps
        .iter()
        .map(|&g| table.character(i)[classes.class_of[map.apply(g)]].clone())
        .collect()
}

/// Decomposes each `χ∘φ` into irreducibles.
///
/// Multiplicities are computed from the table's reduction mod p, where each
/// one is a residue below `p`; they are then confirmed exactly by rebuilding
/// `χ∘φ = Σ mⱼ χⱼ` in cyclotomic arithmetic.
pub fn dual_action(table: &CharacterTable, map: &GroupMap) -> DualAction {
    let classes = table.classes();
    let modular = table.modular();
    let fp = modular.field;
    let r = table.len();
    let n_inv = fp.inv(fp.reduce(table.group().order() as u64));
    let images = (0..r)
        .map(|i| {
            let target: Vec<usize> = classes.reps.iter().map(|&g| classes.class_of[map.apply(g)]).collect();
            let psi_mod: Vec<u64> = target.iter().map(|&c| modular.chars[i][c]).collect();
            let mult: Vec<u64> = (0..r)
                .map(|j| {
                    let s = (0..r).fold(0, |acc, k| {
                        let t = fp.mul(
                            fp.mul(fp.reduce(classes.sizes[k] as u64), psi_mod[k]),
                            modular.chars[j][classes.inverse_class[k]],
                        );
                        fp.add(acc, t)
                    });
                    fp.mul(s, n_inv)
                })
                .collect();
            let psi = composed(table, map, i);
            let mut rebuilt = vec![Cyclotomic::zero(table.field()); r];
            for (j, &m) in mult.iter().enumerate().filter(|(_, &m)| m != 0) {
                for (acc, v) in rebuilt.iter_mut().zip(table.character(j)) {
                    *acc = acc.add(&v.scale_int(m as i64));
                }
            }
            assert!(
                rebuilt == psi,
                "decomposition of a composed character failed to reconstruct it"
            );
            let single = mult.iter().enumerate().filter(|(_, &m)| m != 0).collect::<Vec<_>>();
            match single.as_slice() {
                [(j, 1)] if *j == i => DualImage::FixedBy(i),
                [(j, 1)] => DualImage::MappedTo(*j),
                _ => DualImage::Reducible(mult),
            }
        })
        .collect();
    DualAction { images }
}

/// `S(φ)`: the number of irreducible characters with `χ∘φ = χ` pointwise.
pub fn fixed_points_count(table: &CharacterTable, map: &GroupMap) -> usize {
    (0..table.len()).filter(|&i| composed(table, map, i) == table.character(i)).count()
}

/// Both sides of the twisted Burnside identity for one endomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BurnsideReport {
    #[serde(rename = "R")]
    pub reidemeister: usize,
    #[serde(rename = "S")]
    pub fixed_characters: usize,
    pub equal: bool,
}

/// Counts twisted classes by orbit enumeration and fixed irreducible
/// characters of the dual map independently, and compares them.
pub fn burnside_check(table: &CharacterTable, map: &GroupMap) -> BurnsideReport {
    let reidemeister = reidemeister_number(map);
    let fixed_characters = fixed_points_count(table, map);
    BurnsideReport { reidemeister, fixed_characters, equal: reidemeister == fixed_characters }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::group::{endo_from_images, BuiltinGroup};

    fn setup(b: BuiltinGroup) -> (Arc<crate::group::FiniteGroup>, CharacterTable) {
        let g = Arc::new(b.build().unwrap());
        let t = CharacterTable::new(&g).unwrap();
        (g, t)
    }

    #[test]
    fn identity_fixes_everything() {
        for b in [BuiltinGroup::Symmetric(3), BuiltinGroup::Quaternion8, BuiltinGroup::Cyclic(5)] {
            let (g, t) = setup(b);
            let d = dual_action(&t, &GroupMap::identity(&g));
            assert!(d.images.iter().enumerate().all(|(i, x)| *x == DualImage::FixedBy(i)));
        }
    }

    #[test]
    fn inversion_on_z3_swaps_nontrivial_characters() {
        let (g, t) = setup(BuiltinGroup::Cyclic(3));
        let inv = endo_from_images(&g, &[1], &[2]).unwrap();
        let d = dual_action(&t, &inv);
        assert_eq!(d.images[0], DualImage::FixedBy(0));
        assert_eq!(d.images[1], DualImage::MappedTo(2));
        assert_eq!(d.images[2], DualImage::MappedTo(1));
        assert_eq!(fixed_points_count(&t, &inv), 1);
        assert_eq!(
            burnside_check(&t, &inv),
            BurnsideReport { reidemeister: 1, fixed_characters: 1, equal: true }
        );
    }

    #[test]
    fn doubling_on_z4() {
        let (g, t) = setup(BuiltinGroup::Cyclic(4));
        let dbl = endo_from_images(&g, &[1], &[2]).unwrap();
        // direct evaluation: χ_j(x) = i^{jx}, so χ_j∘φ = χ_{2j mod 4}
        let index_of = |j: i64| {
            let f = t.field();
            let want: Vec<Cyclotomic> = (0..4).map(|x| Cyclotomic::root_of_unity(f, j * x)).collect();
            (0..4).find(|&i| t.character(i) == want.as_slice()).unwrap()
        };
        let d = dual_action(&t, &dbl);
        for j in 0..4i64 {
            let expected = index_of((2 * j) % 4);
            let got = &d.images[index_of(j)];
            if expected == index_of(j) {
                assert_eq!(*got, DualImage::FixedBy(expected));
            } else {
                assert_eq!(*got, DualImage::MappedTo(expected));
            }
        }
        assert_eq!(fixed_points_count(&t, &dbl), 1);
        assert!(burnside_check(&t, &dbl).equal);
    }

    #[test]
    fn trivial_endomorphism_collapses_to_trivial_character() {
        let (g, t) = setup(BuiltinGroup::Symmetric(3));
        let zero = GroupMap::from_total(&g, &[0; 6]).unwrap();
        let d = dual_action(&t, &zero);
        // χ∘0 = χ(1)·1
        assert_eq!(d.images[0], DualImage::FixedBy(0));
        assert_eq!(d.images[1], DualImage::MappedTo(0));
        assert_eq!(d.images[2], DualImage::Reducible(vec![2, 0, 0]));
        assert_eq!(burnside_check(&t, &zero).reidemeister, 1);
        assert!(burnside_check(&t, &zero).equal);
    }

    #[test]
    fn s3_identity_report() {
        let (g, t) = setup(BuiltinGroup::Symmetric(3));
        assert_eq!(
            burnside_check(&t, &GroupMap::identity(&g)),
            BurnsideReport { reidemeister: 3, fixed_characters: 3, equal: true }
        );
        assert_eq!(
            serde_json::to_string(&burnside_check(&t, &GroupMap::identity(&g))).unwrap(),
            r#"{"R":3,"S":3,"equal":true}"#
        );
    }
}
