//! Möbius inversion of Reidemeister sequences and the congruences
//! `Σ_{d|n} μ(d)·R(φ^{n/d}) ≡ 0 (mod n)`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::group::{reidemeister_number, GroupMap};
use crate::intmat::IntegerMatrix;
use crate::ReidemeisterNumber;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MobiusError {
    #[error("R at n = {0} is infinite")]
    InfiniteEntry(usize),
}

/// `μ(d)` by trial division.
pub fn mobius(d: u64) -> i8 {
    assert!(d >= 1, "mobius is defined for positive integers");
    let mut n = d;
    let mut sign = 1i8;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Positive divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// `R(φⁿ)` for `n = 1..=len`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReidemeisterSequence {
    pub source: String,
    pub values: Vec<ReidemeisterNumber>,
}

impl ReidemeisterSequence {
    pub fn new(source: impl Into<String>, values: Vec<ReidemeisterNumber>) -> Self {
        ReidemeisterSequence { source: source.into(), values }
    }

    pub fn from_u64(source: impl Into<String>, values: &[u64]) -> Self {
        Self::new(source, values.iter().map(|&v| v.into()).collect())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `R(φⁿ)`, 1-based.
    pub fn get(&self, n: usize) -> &ReidemeisterNumber {
        &self.values[n - 1]
    }
}

/// `Pₙ = Σ_{d|n} μ(d)·R(φ^{n/d})`, or `None` where a needed entry is infinite.
pub fn periodic_class_counts_partial(seq: &ReidemeisterSequence) -> Vec<Option<BigInt>> {
    (1..=seq.len())
        .map(|n| {
            let mut sum = BigInt::zero();
            for d in divisors(n as u64) {
                let mu = mobius(d);
                if mu == 0 {
                    continue;
                }
                let r = seq.get(n / d as usize).finite()?;
                let r = BigInt::from(r.clone());
                if mu > 0 {
                    sum += r;
                } else {
                    sum -= r;
                }
            }
            Some(sum)
        })
        .collect()
}

pub fn periodic_class_counts(seq: &ReidemeisterSequence) -> Result<Vec<BigInt>, MobiusError> {
    if let Some(i) = seq.values.iter().position(ReidemeisterNumber::is_infinite) {
        return Err(MobiusError::InfiniteEntry(i + 1));
    }
    Ok(periodic_class_counts_partial(seq).into_iter().map(|p| p.expect("finite")).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CongruenceEntry {
    pub n: usize,
    #[serde(rename = "P_n", serialize_with = "ser_count")]
    pub p_n: Option<BigInt>,
    /// `None` when `Pₙ` is undefined.
    pub passes: Option<bool>,
}

fn ser_count<S: Serializer>(p: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
    match p {
        Some(v) => s.serialize_str(&v.to_string()),
        None => s.serialize_str("infinite"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CongruenceReport {
    pub source: String,
    pub entries: Vec<CongruenceEntry>,
    /// Every defined entry passes.
    pub passes: bool,
}

impl CongruenceReport {
    pub fn first_failure(&self) -> Option<usize> {
        self.entries.iter().find(|e| e.passes == Some(false)).map(|e| e.n)
    }

    pub fn undefined(&self) -> Vec<usize> {
        self.entries.iter().filter(|e| e.passes.is_none()).map(|e| e.n).collect()
    }
}

/// `Pₙ ≥ 0` and `n | Pₙ`, per defined `n`.
pub fn congruence_check_partial(seq: &ReidemeisterSequence) -> CongruenceReport {
    let entries: Vec<CongruenceEntry> = periodic_class_counts_partial(seq)
        .into_iter()
        .enumerate()
        .map(|(i, p)| {
            let n = i + 1;
            let passes = p.as_ref().map(|p| !p.is_negative() && p.is_multiple_of(&BigInt::from(n)));
            CongruenceEntry { n, p_n: p, passes }
        })
        .collect();
    let passes = entries.iter().all(|e| e.passes != Some(false));
    CongruenceReport { source: seq.source.clone(), entries, passes }
}

pub fn congruence_check(seq: &ReidemeisterSequence) -> Result<CongruenceReport, MobiusError> {
    if let Some(i) = seq.values.iter().position(ReidemeisterNumber::is_infinite) {
        return Err(MobiusError::InfiniteEntry(i + 1));
    }
    Ok(congruence_check_partial(seq))
}

/// `R(fⁿ) = |det(I − Aⁿ)|` for the torus map induced by `A`.
pub fn torus_map_reidemeister(a: &IntegerMatrix, n_max: usize) -> ReidemeisterSequence {
    assert!(a.is_square(), "torus maps need a square matrix");
    let mut power = IntegerMatrix::identity(a.rows());
    let values = (0..n_max)
        .map(|_| {
            power = power.mul(a);
            let det = power.one_minus().det();
            if det.is_zero() {
                ReidemeisterNumber::Infinite
            } else {
                ReidemeisterNumber::Finite(det.abs().to_biguint().expect("absolute value"))
            }
        })
        .collect();
    ReidemeisterSequence::new(format!("torus {a}"), values)
}

/// `R(φⁿ)` by orbit counting on each iterate.
pub fn finite_group_sequence(map: &GroupMap, n_max: usize) -> ReidemeisterSequence {
    let mut power = map.clone();
    let values = (1..=n_max)
        .map(|n| {
            if n > 1 {
                power = power.compose(map);
            }
            ReidemeisterNumber::Finite(BigUint::from(reidemeister_number(&power)))
        })
        .collect();
    ReidemeisterSequence::new(format!("finite group of order {}", map.group().order()), values)
}

pub fn finite_group_congruence_suite(map: &GroupMap, n_max: usize) -> CongruenceReport {
    congruence_check_partial(&finite_group_sequence(map, n_max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{enumerate_endomorphisms, BuiltinGroup};
    use std::sync::Arc;

    #[test]
    fn mobius_values() {
        assert_eq!(mobius(1), 1);
        assert_eq!(mobius(4), 0);
        assert_eq!(mobius(30), -1);
        assert_eq!(mobius(6), 1);
        assert_eq!(mobius(97), -1);
        assert_eq!(mobius(9 * 7), 0);
    }

    #[test]
    fn mobius_sums_vanish() {
        for n in 2..=10_000u64 {
            let s: i64 = divisors(n).iter().map(|&d| mobius(d) as i64).sum();
            assert_eq!(s, 0, "n = {n}");
        }
    }

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(49), vec![1, 7, 49]);
    }

    #[test]
    fn constant_one() {
        let seq = ReidemeisterSequence::from_u64("const", &[1; 8]);
        let p = periodic_class_counts(&seq).unwrap();
        assert_eq!(p[0], 1.into());
        assert!(p[1..].iter().all(Zero::is_zero));
        assert!(congruence_check(&seq).unwrap().passes);
    }

    #[test]
    fn cat_map() {
        let a = IntegerMatrix::from_i64(&[&[2, 1], &[1, 1]]);
        let seq = torus_map_reidemeister(&a, 12);
        // oracle: |2 − tr Aⁿ| with tr Aⁿ the Lucas numbers L(2n)
        let (mut l0, mut l1) = (2i64, 3i64);
        for n in 1..=12 {
            assert_eq!(*seq.get(n), ((l1 - 2).unsigned_abs()).into());
            (l0, l1) = (l1, 3 * l1 - l0);
        }
        assert_eq!(&seq.values[..4], &[1u64.into(), 5u64.into(), 16u64.into(), 45u64.into()]);
        let p = periodic_class_counts(&seq).unwrap();
        assert_eq!(p[1], 4.into());
        let report = congruence_check(&seq).unwrap();
        assert!(report.passes);
        assert_eq!(report.first_failure(), None);
    }

    #[test]
    fn corrupted_sequence_fails() {
        let seq = ReidemeisterSequence::from_u64("corrupted", &[1, 5, 17]);
        let report = congruence_check(&seq).unwrap();
        assert!(!report.passes);
        assert_eq!(report.first_failure(), Some(3));
        assert_eq!(report.entries[2].p_n, Some(16.into()));
    }

    #[test]
    fn degenerate_torus_maps() {
        let seq = torus_map_reidemeister(&IntegerMatrix::zeros(2, 2), 6);
        assert!(seq.values.iter().all(|r| *r == 1u64.into()));
        let seq = torus_map_reidemeister(&IntegerMatrix::identity(2), 4);
        assert!(seq.values.iter().all(ReidemeisterNumber::is_infinite));
        assert_eq!(congruence_check(&seq), Err(MobiusError::InfiniteEntry(1)));
    }

    #[test]
    fn infinite_entries_poison_only_their_multiples() {
        // A = −1 on ℤ: R = 2, ∞, 2, ∞, ...
        let seq = torus_map_reidemeister(&IntegerMatrix::from_i64(&[&[-1]]), 6);
        let report = congruence_check_partial(&seq);
        assert_eq!(report.undefined(), vec![2, 4, 6]);
        assert_eq!(report.entries[2].p_n, Some(0.into()));
        assert!(report.passes);
        let json = serde_json::to_value(&report.entries[1]).unwrap();
        assert_eq!(json, serde_json::json!({"n": 2, "P_n": "infinite", "passes": null}));
    }

    #[test]
    fn inversion_round_trip() {
        let a = IntegerMatrix::from_i64(&[&[1, 2, 0], &[0, 1, 1], &[3, 0, 1]]);
        let seq = torus_map_reidemeister(&a, 10);
        let p = periodic_class_counts(&seq).unwrap();
        for n in 1..=10 {
            let s: BigInt = divisors(n as u64).iter().map(|&d| p[d as usize - 1].clone()).sum();
            assert_eq!(ReidemeisterNumber::Finite(s.to_biguint().unwrap()), *seq.get(n));
        }
    }

    #[test]
    fn finite_group_suites() {
        let s3 = Arc::new(BuiltinGroup::Symmetric(3).build().unwrap());
        for phi in enumerate_endomorphisms(&s3, true).unwrap() {
            let r = finite_group_congruence_suite(&phi, 12);
            assert!(r.passes && r.undefined().is_empty());
        }
        let z4 = Arc::new(BuiltinGroup::Cyclic(4).build().unwrap());
        let doubling = crate::group::endo_from_images(&z4, &[1], &[2]).unwrap();
        assert!(finite_group_congruence_suite(&doubling, 12).passes);
        let trivial = Arc::new(BuiltinGroup::Cyclic(1).build().unwrap());
        assert!(finite_group_congruence_suite(&GroupMap::identity(&trivial), 12).passes);
    }

    #[test]
    fn report_json() {
        let seq = ReidemeisterSequence::from_u64("t", &[1, 5]);
        let v = serde_json::to_value(congruence_check(&seq).unwrap()).unwrap();
        assert_eq!(v["entries"][1], serde_json::json!({"n": 2, "P_n": "4", "passes": true}));
    }
}
