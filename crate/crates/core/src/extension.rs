//! Groups `ℤᵏ ⋊_θ ℤ` with `(v, n)·(w, m) = (v + θⁿw, n + m)`, and
//! endomorphisms `φ(v, n) = (Bv, ε·n)`.
//!
//! The twisted action of `g = (w, m)` is
//!
//! ```text
//! g·(v, n) = (w + θᵐv − θ^{2m+n}Bw, n + 2m)        (ε = −1)
//! ```
//!
//! so for `ε = −1` every class meets the fibre `n₀ ∈ {0, 1}` and inside a
//! fibre (`m = 0`) the classes are the cosets of `(I − θ^{n₀}B)ℤᵏ`. For
//! `ε = +1` the quotient `ℤ` already has infinitely many classes.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::intmat::{IntegerMatrix, MatrixError};
use crate::snf::{lattice_coset_reps, lattice_index, unimodular_inverse, LatticeError};
use crate::ReidemeisterNumber;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExtensionError {
    #[error(transparent)]
    Shape(#[from] MatrixError),
    #[error("theta is not invertible over the integers (det = {0})")]
    NotUnimodular(BigInt),
    #[error("eps must be +1 or -1, got {0}")]
    InvalidEps(i64),
    #[error("B·theta != theta^eps·B, so (v, n) -> (Bv, eps·n) is not a homomorphism")]
    IncompatibleTwist,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeExtensionGroup {
    theta: IntegerMatrix,
    #[serde(skip)]
    theta_inv: IntegerMatrix,
}

impl LatticeExtensionGroup {
    pub fn new(theta: IntegerMatrix) -> Result<Self, ExtensionError> {
        theta.require_square(theta.rows())?;
        let theta_inv = unimodular_inverse(&theta).ok_or_else(|| ExtensionError::NotUnimodular(theta.det()))?;
        Ok(LatticeExtensionGroup { theta, theta_inv })
    }

    pub fn rank(&self) -> usize {
        self.theta.rows()
    }

    pub fn theta(&self) -> &IntegerMatrix {
        &self.theta
    }

    /// `θⁿ` for any integer `n`.
    pub fn theta_pow(&self, n: i64) -> IntegerMatrix {
        let base = if n >= 0 { &self.theta } else { &self.theta_inv };
        base.pow(n.unsigned_abs() as u32)
    }

    pub fn mul(&self, (v, n): (&[BigInt], i64), (w, m): (&[BigInt], i64)) -> (Vec<BigInt>, i64) {
        let tw = self.theta_pow(n).mul_vec(w);
        (v.iter().zip(tw).map(|(a, b)| a + b).collect(), n + m)
    }

    pub fn inv(&self, (v, n): (&[BigInt], i64)) -> (Vec<BigInt>, i64) {
        let t = self.theta_pow(-n).mul_vec(v);
        (t.into_iter().map(|a| -a).collect(), -n)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionEndo {
    #[serde(rename = "B")]
    b: IntegerMatrix,
    eps: i64,
}

impl ExtensionEndo {
    pub fn new(group: &LatticeExtensionGroup, b: IntegerMatrix, eps: i64) -> Result<Self, ExtensionError> {
        b.require_square(group.rank())?;
        if eps != 1 && eps != -1 {
            return Err(ExtensionError::InvalidEps(eps));
        }
        if b.mul(&group.theta) != group.theta_pow(eps).mul(&b) {
            return Err(ExtensionError::IncompatibleTwist);
        }
        Ok(ExtensionEndo { b, eps })
    }

    pub fn b(&self) -> &IntegerMatrix {
        &self.b
    }

    pub fn eps(&self) -> i64 {
        self.eps
    }

    pub fn apply(&self, (v, n): (&[BigInt], i64)) -> (Vec<BigInt>, i64) {
        (self.b.mul_vec(v), self.eps * n)
    }

    /// `φⁿ = (Bⁿ, εⁿ)`, compatible whenever `φ` is.
    pub fn pow(&self, n: u32) -> ExtensionEndo {
        let eps = if self.eps == -1 && n % 2 == 1 { -1 } else { 1 };
        ExtensionEndo { b: self.b.pow(n), eps }
    }
}

/// `I − θ^{n₀}B`, whose cokernel indexes the classes in fibre `n₀`.
pub fn fiber_matrix(group: &LatticeExtensionGroup, phi: &ExtensionEndo, n0: i64) -> IntegerMatrix {
    group.theta_pow(n0).mul(&phi.b).one_minus()
}

pub fn reidemeister_extension(group: &LatticeExtensionGroup, phi: &ExtensionEndo) -> ReidemeisterNumber {
    if phi.eps == 1 {
        return ReidemeisterNumber::Infinite;
    }
    let mut total = num_bigint::BigUint::zero();
    for n0 in 0..2 {
        match lattice_index(&fiber_matrix(group, phi, n0)) {
            ReidemeisterNumber::Finite(r) => total += r,
            ReidemeisterNumber::Infinite => return ReidemeisterNumber::Infinite,
        }
    }
    ReidemeisterNumber::Finite(total)
}

/// Representatives `(v, n₀)`, fibre 0 first.
pub fn fiber_class_reps(
    group: &LatticeExtensionGroup,
    phi: &ExtensionEndo,
) -> Result<Vec<(Vec<BigInt>, i64)>, ExtensionError> {
    if phi.eps == 1 {
        return Err(LatticeError::InfiniteClasses.into());
    }
    let mut out = Vec::new();
    for n0 in 0..2 {
        let mut reps = lattice_coset_reps(&fiber_matrix(group, phi, n0))?;
        reps.sort();
        out.extend(reps.into_iter().map(|v| (v, n0)));
    }
    Ok(out)
}

/// `R(φⁿ)` for `n = 1..=n_max`; every even entry is infinite when `ε = −1`.
pub fn reidemeister_extension_sequence(
    group: &LatticeExtensionGroup,
    phi: &ExtensionEndo,
    n_max: u32,
) -> Vec<ReidemeisterNumber> {
    let mut power = phi.clone();
    (1..=n_max)
        .map(|n| {
            if n > 1 {
                power = ExtensionEndo { b: power.b.mul(&phi.b), eps: power.eps * phi.eps };
            }
            reidemeister_extension(group, &power)
        })
        .collect()
}

/// Twisted action `g·x = g x φ(g)⁻¹`.
pub fn twisted_act(
    group: &LatticeExtensionGroup,
    phi: &ExtensionEndo,
    g: (&[BigInt], i64),
    x: (&[BigInt], i64),
) -> (Vec<BigInt>, i64) {
    let (pv, pn) = phi.apply(g);
    let (iv, in_) = group.inv((&pv, pn));
    let (gv, gn) = group.mul(g, x);
    group.mul((&gv, gn), (&iv, in_))
}

impl LatticeExtensionGroup {
    /// The identity element of the lattice part.
    pub fn zero(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.rank()]
    }

    pub fn unit(&self, i: usize) -> Vec<BigInt> {
        let mut v = self.zero();
        v[i] = BigInt::one();
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::{reidemeister_abelian, AbelianEndo, FgAbelianGroup};
    use crate::group::DisjointSets;
    use num_traits::{Signed, ToPrimitive};
    use proptest::prelude::*;

    fn cat() -> LatticeExtensionGroup {
        LatticeExtensionGroup::new(IntegerMatrix::from_i64(&[&[2, 1], &[1, 1]])).unwrap()
    }

    fn int_vec(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| x.into()).collect()
    }

    /// Orbits of `ℤᵏ` under translation by the columns of `M`, counted on
    /// `(ℤ/N)ᵏ` with `N = |det M|`.
    fn orbit_index_oracle(m: &IntegerMatrix) -> u64 {
        let k = m.rows();
        let n = m.det().abs().to_u64().unwrap();
        assert!(n > 0);
        let size = (n as usize).pow(k as u32);
        let decode = |mut x: usize| {
            let mut v = vec![0i64; k];
            for c in v.iter_mut() {
                *c = (x % n as usize) as i64;
                x /= n as usize;
            }
            v
        };
        let encode = |v: &[i64]| v.iter().rev().fold(0usize, |acc, &c| acc * n as usize + c.rem_euclid(n as i64) as usize);
        let mut sets = DisjointSets::new(size);
        for x in 0..size {
            let v = decode(x);
            for j in 0..k {
                let w: Vec<i64> = (0..k).map(|i| v[i] + m[(i, j)].to_i64().unwrap()).collect();
                sets.union(x, encode(&w));
            }
        }
        sets.set_count() as u64
    }

    #[test]
    fn four_classes_for_cat_map_with_rotation() {
        let g = cat();
        let phi = ExtensionEndo::new(&g, IntegerMatrix::from_i64(&[&[0, 1], &[-1, 0]]), -1).unwrap();
        assert_eq!(reidemeister_extension(&g, &phi), 4u64.into());
        let reps = fiber_class_reps(&g, &phi).unwrap();
        assert_eq!(reps.len(), 4);
        assert_eq!(reps.iter().filter(|r| r.1 == 0).count(), 2);
    }

    #[test]
    fn rotated_example_matches_orbit_oracle() {
        let g = cat();
        let phi = ExtensionEndo::new(&g, IntegerMatrix::from_i64(&[&[0, -1], &[1, 0]]), -1).unwrap();
        assert_eq!(reidemeister_extension(&g, &phi), 4u64.into());
        let oracle: u64 = (0..2).map(|n0| orbit_index_oracle(&fiber_matrix(&g, &phi, n0))).sum();
        assert_eq!(oracle, 4);
    }

    #[test]
    fn validation() {
        let g = cat();
        assert_eq!(
            ExtensionEndo::new(&g, IntegerMatrix::identity(2), -1),
            Err(ExtensionError::IncompatibleTwist)
        );
        let phi = ExtensionEndo::new(&g, g.theta().clone(), 1).unwrap();
        assert!(reidemeister_extension(&g, &phi).is_infinite());
        assert_eq!(fiber_class_reps(&g, &phi), Err(ExtensionError::Lattice(LatticeError::InfiniteClasses)));
        assert_eq!(ExtensionEndo::new(&g, IntegerMatrix::identity(2), 0), Err(ExtensionError::InvalidEps(0)));
        assert!(matches!(
            LatticeExtensionGroup::new(IntegerMatrix::from_i64(&[&[2, 0], &[0, 1]])),
            Err(ExtensionError::NotUnimodular(_))
        ));
    }

    #[test]
    fn degenerate_direct_product() {
        let g = LatticeExtensionGroup::new(IntegerMatrix::from_i64(&[&[1]])).unwrap();
        let phi = ExtensionEndo::new(&g, IntegerMatrix::from_i64(&[&[-1]]), -1).unwrap();
        assert_eq!(reidemeister_extension(&g, &phi), 4u64.into());
        let reps = fiber_class_reps(&g, &phi).unwrap();
        let expected: Vec<(Vec<BigInt>, i64)> =
            vec![(int_vec(&[0]), 0), (int_vec(&[1]), 0), (int_vec(&[0]), 1), (int_vec(&[1]), 1)];
        assert_eq!(reps, expected);
        let z2 = FgAbelianGroup::free(2);
        let ab = AbelianEndo::new(&z2, IntegerMatrix::from_i64(&[&[-1, 0], &[0, -1]])).unwrap();
        assert_eq!(reidemeister_abelian(&ab), 4u64.into());
    }

    #[test]
    fn sequence_alternates() {
        let g = cat();
        let phi = ExtensionEndo::new(&g, IntegerMatrix::from_i64(&[&[0, 1], &[-1, 0]]), -1).unwrap();
        let seq = reidemeister_extension_sequence(&g, &phi, 6);
        for (i, r) in seq.iter().enumerate() {
            assert_eq!(r.is_infinite(), i % 2 == 1);
        }
        assert_eq!(seq[0], 4u64.into());
        for n in 1..=4 {
            let p = phi.pow(n);
            assert_eq!(p.b().mul(g.theta()), g.theta_pow(p.eps()).mul(p.b()));
        }
    }

    #[test]
    fn twisted_action_formula() {
        let g = cat();
        let phi = ExtensionEndo::new(&g, IntegerMatrix::from_i64(&[&[0, 1], &[-1, 0]]), -1).unwrap();
        for (w, m) in [(vec![1, 0], 0), (vec![0, 1], 1), (vec![2, -1], -1), (vec![0, 0], 2)] {
            for (v, n) in [(vec![0, 0], 0), (vec![1, 1], 1), (vec![-3, 2], -2)] {
                let (w, v) = (int_vec(&w), int_vec(&v));
                let got = twisted_act(&g, &phi, (&w, m), (&v, n));
                let tm_v = g.theta_pow(m).mul_vec(&v);
                let tb_w = g.theta_pow(2 * m + n).mul(phi.b()).mul_vec(&w);
                let expected: Vec<BigInt> = (0..2).map(|i| &w[i] + &tm_v[i] - &tb_w[i]).collect();
                assert_eq!(got, (expected, n + 2 * m));
            }
        }
    }

    proptest! {
        #[test]
        fn trivial_twist_agrees_with_abelian(k in 1usize..=3, e in proptest::collection::vec(-3i64..=3, 9), eps in prop_oneof![Just(-1i64), Just(1i64)]) {
            let rows: Vec<Vec<i64>> = (0..k).map(|i| e[i * k..(i + 1) * k].to_vec()).collect();
            let b = IntegerMatrix::from_rows(&rows).unwrap();
            let g = LatticeExtensionGroup::new(IntegerMatrix::identity(k)).unwrap();
            let phi = ExtensionEndo::new(&g, b.clone(), eps).unwrap();
            let mut block = IntegerMatrix::zeros(k + 1, k + 1);
            for i in 0..k {
                for j in 0..k {
                    block[(i, j)] = b[(i, j)].clone();
                }
            }
            block[(k, k)] = eps.into();
            let ab = AbelianEndo::new(&FgAbelianGroup::free(k + 1), block).unwrap();
            prop_assert_eq!(reidemeister_extension(&g, &phi), reidemeister_abelian(&ab));
        }

        #[test]
        fn fiber_counts_match_determinants(e in proptest::collection::vec(-2i64..=2, 4)) {
            // B commuting with θ⁻¹ up to conjugation is rare; use B = ±θ^j R with R the quarter turn
            let g = cat();
            let r = IntegerMatrix::from_i64(&[&[0, 1], &[-1, 0]]);
            let j = e[0];
            let sign = if e[1] >= 0 { 1 } else { -1 };
            let b = g.theta_pow(j).mul(&r);
            let b = if sign == 1 { b } else { b.neg() };
            let phi = ExtensionEndo::new(&g, b, -1).unwrap();
            if let ReidemeisterNumber::Finite(total) = reidemeister_extension(&g, &phi) {
                prop_assert!(total >= 2u32.into());
                for n0 in 0..2 {
                    let m = fiber_matrix(&g, &phi, n0);
                    let det = m.det().abs();
                    prop_assert_eq!(BigInt::from(orbit_index_oracle(&m)), det.clone());
                    let reps = fiber_class_reps(&g, &phi).unwrap();
                    prop_assert_eq!(BigInt::from(reps.iter().filter(|x| x.1 == n0).count()), det);
                }
            }
        }
    }
}
