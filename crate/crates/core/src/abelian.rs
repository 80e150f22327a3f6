//! Finitely generated abelian groups `ℤʳ ⊕ ℤ/d₁ ⊕ … ⊕ ℤ/dₜ` and their
//! endomorphisms.
//!
//! Generators are ordered free part first. An endomorphism is the integer
//! matrix whose column `j` is the image of generator `j`. The twisted
//! conjugacy class of the identity is `im(1 − φ)` and the others are its
//! cosets, so `R(φ)` is the order of the cokernel of `1 − φ`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::group::{BuiltinGroup, FiniteGroup, GroupError, GroupMap};
use crate::intmat::{IntegerMatrix, MatrixError};
use crate::snf::{lattice_coset_reps, lattice_index, LatticeError};
use crate::ReidemeisterNumber;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AbelianError {
    #[error("torsion invariant {0} is smaller than 2")]
    TrivialInvariant(u64),
    #[error("torsion invariants {0} and {1} do not form a divisibility chain")]
    BrokenChain(u64, u64),
    #[error(transparent)]
    Shape(#[from] MatrixError),
    #[error("generator {generator} has order {order} but its image does not")]
    IncompatibleImage { generator: usize, order: u64 },
    #[error("the group is infinite")]
    NotFinite,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGroup")]
pub struct FgAbelianGroup {
    rank: usize,
    torsion: Vec<u64>,
}

#[derive(Deserialize)]
struct RawGroup {
    #[serde(default)]
    rank: usize,
    #[serde(default)]
    torsion: Vec<u64>,
}

impl TryFrom<RawGroup> for FgAbelianGroup {
    type Error = AbelianError;
    fn try_from(raw: RawGroup) -> Result<Self, AbelianError> {
        FgAbelianGroup::new(raw.rank, raw.torsion)
    }
}

impl FgAbelianGroup {
    pub fn new(rank: usize, torsion: Vec<u64>) -> Result<Self, AbelianError> {
        if let Some(&d) = torsion.iter().find(|&&d| d < 2) {
            return Err(AbelianError::TrivialInvariant(d));
        }
        if let Some(w) = torsion.windows(2).find(|w| w[1] % w[0] != 0) {
            return Err(AbelianError::BrokenChain(w[0], w[1]));
        }
        Ok(FgAbelianGroup { rank, torsion })
    }

    pub fn free(rank: usize) -> Self {
        FgAbelianGroup { rank, torsion: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }

    pub fn generator_count(&self) -> usize {
        self.rank + self.torsion.len()
    }

    /// Order of generator `j`, `0` for free generators.
    pub fn generator_order(&self, j: usize) -> u64 {
        if j < self.rank {
            0
        } else {
            self.torsion[j - self.rank]
        }
    }

    /// Columns `d_j·e_j` spanning the relation lattice.
    pub fn relations(&self) -> IntegerMatrix {
        let n = self.generator_count();
        let mut m = IntegerMatrix::zeros(n, self.torsion.len());
        for (k, &d) in self.torsion.iter().enumerate() {
            m[(self.rank + k, k)] = d.into();
        }
        m
    }

    /// Reduces torsion coordinates into `0..d`.
    pub fn normalize(&self, v: &[BigInt]) -> Vec<BigInt> {
        v.iter()
            .enumerate()
            .map(|(j, x)| match self.generator_order(j) {
                0 => x.clone(),
                d => x.mod_floor(&BigInt::from(d)),
            })
            .collect()
    }

    pub fn order(&self) -> Option<u64> {
        if self.rank > 0 {
            return None;
        }
        self.torsion.iter().try_fold(1u64, |a, &d| a.checked_mul(d))
    }

    /// Fails when the concatenated torsion is not a divisibility chain.
    pub fn direct_sum(&self, other: &FgAbelianGroup) -> Result<FgAbelianGroup, AbelianError> {
        let mut torsion = self.torsion.clone();
        torsion.extend_from_slice(&other.torsion);
        FgAbelianGroup::new(self.rank + other.rank, torsion)
    }

    /// The finite group with the same invariants, indexed mixed-radix.
    pub fn to_builtin(&self) -> Result<BuiltinGroup, AbelianError> {
        if self.rank > 0 {
            return Err(AbelianError::NotFinite);
        }
        Ok(BuiltinGroup::Abelian(self.torsion.iter().map(|&d| d as usize).collect()))
    }

    /// Mixed-radix index of a torsion coordinate vector.
    pub fn element_index(&self, coords: &[BigInt]) -> usize {
        let reduced = self.normalize(coords);
        self.torsion
            .iter()
            .zip(&reduced)
            .fold(0usize, |acc, (&d, x)| acc * d as usize + x.to_usize().expect("reduced coordinate"))
    }

    pub fn element_coords(&self, mut index: usize) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.torsion.len()];
        for (k, &d) in self.torsion.iter().enumerate().rev() {
            out[k] = (index % d as usize).into();
            index /= d as usize;
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianEndo {
    group: FgAbelianGroup,
    matrix: IntegerMatrix,
}

impl AbelianEndo {
    /// Checks that every torsion generator of order `d` is sent to an
    /// element killed by `d`.
    pub fn new(group: &FgAbelianGroup, matrix: IntegerMatrix) -> Result<Self, AbelianError> {
        let n = group.generator_count();
        matrix.require_square(n)?;
        for j in group.rank..n {
            let dj = group.generator_order(j);
            for i in 0..n {
                let ok = match group.generator_order(i) {
                    0 => matrix[(i, j)].is_zero(),
                    di => (&matrix[(i, j)] * dj).is_multiple_of(&BigInt::from(di)),
                };
                if !ok {
                    return Err(AbelianError::IncompatibleImage { generator: j, order: dj });
                }
            }
        }
        Ok(AbelianEndo { group: group.clone(), matrix })
    }

    pub fn group(&self) -> &FgAbelianGroup {
        &self.group
    }

    pub fn matrix(&self) -> &IntegerMatrix {
        &self.matrix
    }

    pub fn pow(&self, n: u32) -> AbelianEndo {
        AbelianEndo { group: self.group.clone(), matrix: self.matrix.pow(n) }
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.group.normalize(&self.matrix.mul_vec(v))
    }

    /// Matrix of a homomorphism of the finite group built by
    /// [`FgAbelianGroup::to_builtin`].
    pub fn from_group_map(group: &FgAbelianGroup, map: &GroupMap) -> Result<Self, AbelianError> {
        let n = group.generator_count();
        if group.rank > 0 {
            return Err(AbelianError::NotFinite);
        }
        let mut matrix = IntegerMatrix::zeros(n, n);
        for j in 0..n {
            let mut e = vec![BigInt::zero(); n];
            e[j] = 1.into();
            let image = group.element_coords(map.apply(group.element_index(&e)));
            for (i, x) in image.into_iter().enumerate() {
                matrix[(i, j)] = x;
            }
        }
        AbelianEndo::new(group, matrix)
    }

    /// The same endomorphism as a total map on `finite`, which must be the
    /// group returned by building [`FgAbelianGroup::to_builtin`].
    pub fn to_group_map(&self, finite: &Arc<FiniteGroup>) -> Result<GroupMap, AbelianError> {
        let order = self.group.order().ok_or(AbelianError::NotFinite)? as usize;
        let image: Vec<usize> = (0..order)
            .map(|x| self.group.element_index(&self.apply(&self.group.element_coords(x))))
            .collect();
        Ok(GroupMap::from_total(finite, &image)?)
    }
}

/// Order of `G / M·G` where `M` is given on generators, via the
/// presentation `[M | relations]`.
pub fn cokernel_order(group: &FgAbelianGroup, m: &IntegerMatrix) -> ReidemeisterNumber {
    lattice_index(&m.hstack(&group.relations()))
}

/// `R(φ) = |coker(1 − φ)|`. Finiteness is cross-checked against
/// `det(I − A_free) ≠ 0`.
pub fn reidemeister_abelian(phi: &AbelianEndo) -> ReidemeisterNumber {
    let g = &phi.group;
    let r = cokernel_order(g, &phi.matrix.one_minus());
    let free_det = phi.matrix.leading_block(g.rank).one_minus().det();
    assert_eq!(
        r.is_infinite(),
        free_det.is_zero(),
        "cokernel finiteness disagrees with det(I - A_free) = {free_det}"
    );
    r
}

/// `R(φⁿ)` for `n = 1..=n_max`.
pub fn reidemeister_abelian_sequence(phi: &AbelianEndo, n_max: u32) -> Vec<ReidemeisterNumber> {
    let mut power = phi.clone();
    let mut out = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        if n > 1 {
            power.matrix = power.matrix.mul(&phi.matrix);
        }
        out.push(reidemeister_abelian(&power));
    }
    out
}

/// One representative per twisted class, i.e. per coset of `im(1 − φ)`.
pub fn twisted_class_reps_abelian(phi: &AbelianEndo) -> Result<Vec<Vec<BigInt>>, AbelianError> {
    let g = &phi.group;
    let presentation = phi.matrix.one_minus().hstack(&g.relations());
    let mut reps: Vec<Vec<BigInt>> = lattice_coset_reps(&presentation)?.iter().map(|v| g.normalize(v)).collect();
    reps.sort();
    Ok(reps)
}
