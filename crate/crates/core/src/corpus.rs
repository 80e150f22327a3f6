//! The built-in corpus of small groups and the sweep that checks
//! `R(φ) = S(φ)`, the congruences and `R(φ) = R(φ_H)` on every
//! endomorphism.

use std::sync::Arc;

use serde::Serialize;

use crate::chartab::{burnside_check, CharTableError, CharacterTable};
use crate::group::{
    enumerate_endomorphisms_with, eventual_image, reidemeister_number, BuiltinGroup, FiniteGroup, GroupConfig,
    GroupError, GroupMap,
};
use crate::mobius::finite_group_congruence_suite;

/// Cyclic 1–24, dihedral of orders 6–16, `S₃`, `S₄`, `A₄`, `Q₈`,
/// `ℤ/2 ⊕ ℤ/4`, `(ℤ/2)³`.
pub fn corpus_groups() -> Vec<BuiltinGroup> {
    let mut out: Vec<BuiltinGroup> = (1..=24).map(BuiltinGroup::Cyclic).collect();
    out.extend((3..=8).map(BuiltinGroup::Dihedral));
    out.extend([
        BuiltinGroup::Symmetric(3),
        BuiltinGroup::Symmetric(4),
        BuiltinGroup::Alternating(4),
        BuiltinGroup::Quaternion8,
        BuiltinGroup::Abelian(vec![2, 4]),
        BuiltinGroup::Abelian(vec![2, 2, 2]),
    ]);
    out
}

#[derive(Clone, Debug)]
pub struct CorpusOptions {
    pub max_order: usize,
    pub automorphisms_only: bool,
    pub n_max: usize,
    /// Worker threads; `0` or `1` runs sequentially.
    pub jobs: usize,
    pub config: GroupConfig,
    /// Reports `S + 1` instead of `S`, so every pair must fail.
    pub inject_fault: bool,
}

impl Default for CorpusOptions {
    fn default() -> Self {
        CorpusOptions {
            max_order: 24,
            automorphisms_only: false,
            n_max: 12,
            jobs: 1,
            config: GroupConfig::default(),
            inject_fault: false,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("{group}: {source}")]
    Group { group: String, source: GroupError },
    #[error("{group}: {source}")]
    Table { group: String, source: CharTableError },
    #[error("could not start worker threads: {0}")]
    Threads(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupSummary {
    pub name: String,
    pub order: usize,
    pub classes: usize,
    pub maps: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairOutcome {
    pub group: String,
    pub map: Vec<usize>,
    pub bijective: bool,
    #[serde(rename = "R")]
    pub reidemeister: usize,
    #[serde(rename = "S")]
    pub fixed_characters: usize,
    pub burnside: bool,
    pub congruences: bool,
    /// `R(φ) = R(φ_H)` for the eventual image `H`.
    pub eventual_image: bool,
}

impl PairOutcome {
    pub fn passes(&self) -> bool {
        self.burnside && self.congruences && self.eventual_image
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusReport {
    pub groups: Vec<GroupSummary>,
    pub pairs: usize,
    pub failures: Vec<PairOutcome>,
    pub passes: bool,
}

struct Prepared {
    name: String,
    table: CharacterTable,
    maps: Vec<GroupMap>,
}

fn prepare(b: &BuiltinGroup, opts: &CorpusOptions) -> Result<Prepared, CorpusError> {
    let name = b.to_string();
    let group_err = |source| CorpusError::Group { group: name.clone(), source };
    let group: Arc<FiniteGroup> = Arc::new(b.build_with(&opts.config).map_err(group_err)?);
    let table = CharacterTable::with_order_cap(&group, opts.config.order_cap)
        .map_err(|source| CorpusError::Table { group: name.clone(), source })?;
    let maps = enumerate_endomorphisms_with(&group, opts.automorphisms_only, &opts.config).map_err(group_err)?;
    Ok(Prepared { name, table, maps })
}

/// Checks one pair.
pub fn check_pair(name: &str, table: &CharacterTable, map: &GroupMap, n_max: usize, inject_fault: bool) -> PairOutcome {
    let mut report = burnside_check(table, map);
    if inject_fault {
        report.fixed_characters += 1;
        report.equal = report.reidemeister == report.fixed_characters;
    }
    let congruences = n_max == 0 || finite_group_congruence_suite(map, n_max).passes;
    let h = eventual_image(map);
    let eventual = reidemeister_number(&h.restricted) == report.reidemeister;
    PairOutcome {
        group: name.to_string(),
        map: map.images(),
        bijective: map.is_bijective(),
        reidemeister: report.reidemeister,
        fixed_characters: report.fixed_characters,
        burnside: report.equal,
        congruences,
        eventual_image: eventual,
    }
}

/// Sweeps every corpus group of order at most `max_order`. Output order
/// is the corpus order whatever the number of jobs.
pub fn run_corpus(opts: &CorpusOptions) -> Result<CorpusReport, CorpusError> {
    let groups: Vec<BuiltinGroup> = corpus_groups()
        .into_iter()
        .filter(|b| b.order().is_some_and(|n| n <= opts.max_order))
        .collect();
    let run = || -> Result<CorpusReport, CorpusError> {
        let prepared: Vec<Prepared> = map_maybe_parallel(&groups, opts.jobs, |b| prepare(b, opts))
            .into_iter()
            .collect::<Result<_, _>>()?;
        let pairs: Vec<(&Prepared, &GroupMap)> =
            prepared.iter().flat_map(|p| p.maps.iter().map(move |m| (p, m))).collect();
        let outcomes = map_maybe_parallel(&pairs, opts.jobs, |(p, m)| {
            check_pair(&p.name, &p.table, m, opts.n_max, opts.inject_fault)
        });
        let failures: Vec<PairOutcome> = outcomes.iter().filter(|o| !o.passes()).cloned().collect();
        Ok(CorpusReport {
            groups: prepared
                .iter()
                .map(|p| GroupSummary {
                    name: p.name.clone(),
                    order: p.table.group().order(),
                    classes: p.table.len(),
                    maps: p.maps.len(),
                })
                .collect(),
            pairs: outcomes.len(),
            passes: failures.is_empty(),
            failures,
        })
    };
    with_pool(opts.jobs, run)
}

#[cfg(feature = "parallel")]
fn with_pool<T: Send>(
    jobs: usize,
    f: impl FnOnce() -> Result<T, CorpusError> + Send,
) -> Result<T, CorpusError> {
    if jobs <= 1 {
        return f();
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CorpusError::Threads(e.to_string()))?
        .install(f)
}

#[cfg(not(feature = "parallel"))]
fn with_pool<T>(_jobs: usize, f: impl FnOnce() -> Result<T, CorpusError>) -> Result<T, CorpusError> {
    f()
}

#[cfg(feature = "parallel")]
fn map_maybe_parallel<T: Sync, U: Send>(items: &[T], jobs: usize, f: impl Fn(&T) -> U + Sync + Send) -> Vec<U> {
    use rayon::prelude::*;
    if jobs <= 1 {
        items.iter().map(f).collect()
    } else {
        items.par_iter().map(f).collect()
    }
}

#[cfg(not(feature = "parallel"))]
fn map_maybe_parallel<T, U>(items: &[T], _jobs: usize, f: impl Fn(&T) -> U) -> Vec<U> {
    items.iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_list() {
        let groups = corpus_groups();
        assert_eq!(groups.len(), 24 + 6 + 6);
        assert!(groups.iter().all(|b| b.order().unwrap() <= 24));
    }

    #[test]
    fn trivial_corpus() {
        let opts = CorpusOptions { max_order: 1, ..Default::default() };
        let r = run_corpus(&opts).unwrap();
        assert_eq!(r.groups.len(), 1);
        assert_eq!(r.pairs, 1);
        assert!(r.passes);
    }

    #[test]
    fn small_corpus_passes_and_fault_is_caught() {
        let opts = CorpusOptions { max_order: 8, n_max: 6, ..Default::default() };
        let r = run_corpus(&opts).unwrap();
        assert!(r.passes, "{:?}", r.failures);
        let faulty = run_corpus(&CorpusOptions { inject_fault: true, ..opts }).unwrap();
        assert_eq!(faulty.failures.len(), faulty.pairs);
        assert!(!faulty.passes);
    }

    #[test]
    fn jobs_do_not_change_the_report() {
        let base = CorpusOptions { max_order: 10, n_max: 4, ..Default::default() };
        let one = run_corpus(&base).unwrap();
        let four = run_corpus(&CorpusOptions { jobs: 4, ..base }).unwrap();
        assert_eq!(one, four);
    }
}
