mod common;

use std::sync::Arc;

use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{det_cofactor, matrix, naive_twisted_classes, regular_representation_characters};
use twb_core::abelian::{reidemeister_abelian, AbelianEndo, FgAbelianGroup};
use twb_core::chartab::{burnside_check, CharacterTable};
use twb_core::corpus::corpus_groups;
use twb_core::group::{enumerate_endomorphisms, reidemeister_number, FiniteGroup, GroupMap};
use twb_core::mobius::{congruence_check, torus_map_reidemeister};
use twb_core::ReidemeisterNumber;

fn small_corpus() -> Vec<Arc<FiniteGroup>> {
    corpus_groups()
        .into_iter()
        .filter(|b| b.order().is_some_and(|n| n <= 16))
        .map(|b| Arc::new(b.build().unwrap()))
        .collect()
}

/// Characters fixed by `χ ↦ χ∘φ`, counted on floating-point characters.
fn float_fixed_count(table: &CharacterTable, chars: &[Vec<Complex64>], phi: &GroupMap) -> usize {
    let classes = table.classes();
    chars
        .iter()
        .filter(|chi| {
            classes
                .reps
                .iter()
                .enumerate()
                .all(|(k, &x)| (chi[classes.class_of[phi.apply(x)]] - chi[k]).norm() < 1e-6)
        })
        .count()
}

#[test]
fn burnside_against_float_characters() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for g in small_corpus() {
        let table = CharacterTable::new(&g).unwrap();
        let chars = regular_representation_characters(&g, table.classes(), &mut rng);
        assert_eq!(chars.len(), table.len());
        for phi in enumerate_endomorphisms(&g, false).unwrap().iter().take(64) {
            let report = burnside_check(&table, phi);
            assert_eq!(report.reidemeister, naive_twisted_classes(phi).0);
            assert_eq!(report.fixed_characters, float_fixed_count(&table, &chars, phi));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn orbit_count_matches_naive(gi in 0usize..100, mi in 0usize..10_000) {
        let groups = small_corpus();
        let g = &groups[gi % groups.len()];
        let maps = enumerate_endomorphisms(g, false).unwrap();
        let phi = &maps[mi % maps.len()];
        prop_assert_eq!(reidemeister_number(phi), naive_twisted_classes(phi).0);
    }

    #[test]
    fn torus_sequence_matches_cofactor(a in proptest::collection::vec(-3i64..=3, 4)) {
        let rows = vec![a[..2].to_vec(), a[2..].to_vec()];
        let seq = torus_map_reidemeister(&matrix(&rows), 6);
        let mut power = vec![vec![1i64, 0], vec![0, 1]];
        for n in 0..6 {
            power = vec![
                vec![power[0][0] * rows[0][0] + power[0][1] * rows[1][0], power[0][0] * rows[0][1] + power[0][1] * rows[1][1]],
                vec![power[1][0] * rows[0][0] + power[1][1] * rows[1][0], power[1][0] * rows[0][1] + power[1][1] * rows[1][1]],
            ];
            let m: Vec<Vec<i64>> = (0..2).map(|i| (0..2).map(|j| i64::from(i == j) - power[i][j]).collect()).collect();
            let d = det_cofactor(&m).abs();
            let expected = if d == 0 { ReidemeisterNumber::Infinite } else { ReidemeisterNumber::from(d as u64) };
            prop_assert_eq!(&seq.values[n], &expected);
        }
        if seq.values.iter().all(|v| !v.is_infinite()) {
            prop_assert!(congruence_check(&seq).unwrap().passes);
        }
    }

    #[test]
    fn abelian_formula_matches_orbits(torsion in prop_oneof![Just(vec![2u64, 4]), Just(vec![3, 3]), Just(vec![2, 6]), Just(vec![12])],
                                      raw in proptest::collection::vec(0i64..12, 4)) {
        let group = FgAbelianGroup::new(0, torsion.clone()).unwrap();
        let n = torsion.len();
        let entries: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| {
                let (di, dj) = (torsion[i] as i64, torsion[j] as i64);
                // smallest multiple making the column compatible
                let step = di / num_integer::gcd(di, dj);
                raw[i * n + j] * step % di
            }).collect())
            .collect();
        let phi = AbelianEndo::new(&group, matrix(&entries)).unwrap();
        let finite = Arc::new(group.to_builtin().unwrap().build().unwrap());
        let map = phi.to_group_map(&finite).unwrap();
        prop_assert_eq!(reidemeister_abelian(&phi), ReidemeisterNumber::from(naive_twisted_classes(&map).0 as u64));
    }
}
