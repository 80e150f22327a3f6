//! Smith normal form over the integers, with unimodular transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::intmat::IntegerMatrix;
use crate::ReidemeisterNumber;

/// `S = U·A·V` with `U`, `V` unimodular and `S` diagonal, `sᵢ | sᵢ₊₁`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmithDecomposition {
    pub u: IntegerMatrix,
    pub s: IntegerMatrix,
    pub v: IntegerMatrix,
    #[serde(skip)]
    pub u_inv: IntegerMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("the quotient is infinite")]
    InfiniteClasses,
    #[error("the quotient has {count} elements, more than the listing limit {limit}")]
    TooManyClasses { count: BigInt, limit: usize },
}

/// Largest number of coset representatives that will be listed.
pub const COSET_LISTING_LIMIT: usize = 1 << 20;

struct Work {
    a: IntegerMatrix,
    u: IntegerMatrix,
    u_inv: IntegerMatrix,
    v: IntegerMatrix,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.a.cols() {
            let t = self.a[(i, c)].clone();
            self.a[(i, c)] = std::mem::replace(&mut self.a[(j, c)], t);
        }
        for c in 0..self.u.cols() {
            let t = self.u[(i, c)].clone();
            self.u[(i, c)] = std::mem::replace(&mut self.u[(j, c)], t);
        }
        for r in 0..self.u_inv.rows() {
            let t = self.u_inv[(r, i)].clone();
            self.u_inv[(r, i)] = std::mem::replace(&mut self.u_inv[(r, j)], t);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.a.rows() {
            let t = self.a[(r, i)].clone();
            self.a[(r, i)] = std::mem::replace(&mut self.a[(r, j)], t);
        }
        for r in 0..self.v.rows() {
            let t = self.v[(r, i)].clone();
            self.v[(r, i)] = std::mem::replace(&mut self.v[(r, j)], t);
        }
    }

    /// row `i` -= q · row `j`
    fn row_axpy(&mut self, i: usize, j: usize, q: &BigInt) {
        for c in 0..self.a.cols() {
            let t = &self.a[(j, c)] * q;
            self.a[(i, c)] -= t;
        }
        for c in 0..self.u.cols() {
            let t = &self.u[(j, c)] * q;
            self.u[(i, c)] -= t;
        }
        for r in 0..self.u_inv.rows() {
            let t = &self.u_inv[(r, i)] * q;
            self.u_inv[(r, j)] += t;
        }
    }

    /// column `i` -= q · column `j`
    fn col_axpy(&mut self, i: usize, j: usize, q: &BigInt) {
        for r in 0..self.a.rows() {
            let t = &self.a[(r, j)] * q;
            self.a[(r, i)] -= t;
        }
        for r in 0..self.v.rows() {
            let t = &self.v[(r, j)] * q;
            self.v[(r, i)] -= t;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.a.cols() {
            self.a[(i, c)] = -&self.a[(i, c)];
        }
        for c in 0..self.u.cols() {
            self.u[(i, c)] = -&self.u[(i, c)];
        }
        for r in 0..self.u_inv.rows() {
            self.u_inv[(r, i)] = -&self.u_inv[(r, i)];
        }
    }

    fn smallest_in(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.abs() < self.a[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    /// Clears row and column `t` except the pivot; returns `false` when a
    /// smaller remainder appeared and the pivot must be chosen again.
    fn clear_pivot_cross(&mut self, t: usize) -> bool {
        let p = self.a[(t, t)].clone();
        let mut clean = true;
        for i in t + 1..self.a.rows() {
            if self.a[(i, t)].is_zero() {
                continue;
            }
            let q = self.a[(i, t)].div_floor(&p);
            self.row_axpy(i, t, &q);
            if !self.a[(i, t)].is_zero() {
                clean = false;
            }
        }
        for j in t + 1..self.a.cols() {
            if self.a[(t, j)].is_zero() {
                continue;
            }
            let q = self.a[(t, j)].div_floor(&p);
            self.col_axpy(j, t, &q);
            if !self.a[(t, j)].is_zero() {
                clean = false;
            }
        }
        clean
    }
}

/// Smith normal form of any integer matrix. The decomposition is verified
/// by multiplication before it is returned.
pub fn smith_normal_form(a: &IntegerMatrix) -> SmithDecomposition {
    let (m, n) = (a.rows(), a.cols());
    let mut w = Work {
        a: a.clone(),
        u: IntegerMatrix::identity(m),
        u_inv: IntegerMatrix::identity(m),
        v: IntegerMatrix::identity(n),
    };
    for t in 0..m.min(n) {
        let Some((pi, pj)) = w.smallest_in(t) else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            if !w.clear_pivot_cross(t) {
                let (pi, pj) = w.smallest_in(t).expect("nonzero pivot region");
                w.swap_rows(t, pi);
                w.swap_cols(t, pj);
                continue;
            }
            let p = w.a[(t, t)].clone();
            let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !w.a[(i, j)].is_multiple_of(&p)));
            match offender {
                Some(i) => w.row_axpy(t, i, &BigInt::from(-1)),
                None => break,
            }
        }
        if w.a[(t, t)].is_negative() {
            w.negate_row(t);
        }
    }
    let out = SmithDecomposition { u: w.u, s: w.a, v: w.v, u_inv: w.u_inv };
    out.verify(a);
    out
}

impl SmithDecomposition {
    /// Diagonal entries `s₁, …, s_min(m,n)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols())).map(|i| self.s[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }

    fn verify(&self, a: &IntegerMatrix) {
        assert_eq!(self.u.mul(a).mul(&self.v), self.s, "Smith reconstruction failed");
        assert!(self.s.is_diagonal(), "Smith form is not diagonal");
        assert!(self.u.is_unimodular() && self.v.is_unimodular(), "Smith transform not unimodular");
        assert_eq!(self.u.mul(&self.u_inv), IntegerMatrix::identity(self.u.rows()));
        let d = self.diagonal();
        assert!(d.iter().all(|x| !x.is_negative()));
        for w in d.windows(2) {
            assert!(
                (w[0].is_zero() && w[1].is_zero()) || (!w[0].is_zero() && w[1].is_multiple_of(&w[0])),
                "divisibility chain broken: {} then {}",
                w[0],
                w[1]
            );
        }
    }
}

/// Order of `ℤᵐ / M·ℤⁿ` for an `m × n` matrix `M`.
pub fn lattice_index(m: &IntegerMatrix) -> ReidemeisterNumber {
    let snf = smith_normal_form(m);
    if snf.rank() < m.rows() {
        return ReidemeisterNumber::Infinite;
    }
    let prod: BigInt = snf.diagonal().iter().product();
    ReidemeisterNumber::Finite(prod.to_biguint().expect("positive invariant factors"))
}

/// One representative per coset of `M·ℤⁿ` in `ℤᵐ`: `U⁻¹·c` with
/// `0 ≤ cᵢ < sᵢ`, reduced into `[0, s_max)ᵐ` (the lattice contains
/// `s_max·ℤᵐ`).
pub fn lattice_coset_reps(m: &IntegerMatrix) -> Result<Vec<Vec<BigInt>>, LatticeError> {
    let snf = smith_normal_form(m);
    if snf.rank() < m.rows() {
        return Err(LatticeError::InfiniteClasses);
    }
    let diag = snf.diagonal();
    let count: BigInt = diag.iter().product();
    if count > BigInt::from(COSET_LISTING_LIMIT) {
        return Err(LatticeError::TooManyClasses { count, limit: COSET_LISTING_LIMIT });
    }
    let s_max = diag.last().cloned().unwrap_or_else(BigInt::one);
    let mut reps = Vec::new();
    let mut c = vec![BigInt::zero(); diag.len()];
    loop {
        reps.push(snf.u_inv.mul_vec(&c).iter().map(|x| x.mod_floor(&s_max)).collect());
        let mut i = 0;
        loop {
            if i == c.len() {
                return Ok(reps);
            }
            c[i] += 1;
            if c[i] < diag[i] {
                break;
            }
            c[i] = BigInt::zero();
            i += 1;
        }
    }
}

/// Whether `x ∈ M·ℤⁿ`.
pub fn lattice_contains(m: &IntegerMatrix, x: &[BigInt]) -> bool {
    let snf = smith_normal_form(m);
    let y = snf.u.mul_vec(x);
    let diag = snf.diagonal();
    y.iter().enumerate().all(|(i, yi)| match diag.get(i) {
        Some(d) if !d.is_zero() => yi.is_multiple_of(d),
        _ => yi.is_zero(),
    })
}

/// Inverse of a unimodular square matrix, or `None`.
pub fn unimodular_inverse(a: &IntegerMatrix) -> Option<IntegerMatrix> {
    if !a.is_square() || !a.is_unimodular() {
        return None;
    }
    let snf = smith_normal_form(a);
    debug_assert!(snf.diagonal().iter().all(One::is_one));
    Some(snf.v.mul(&snf.u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn diag(a: &IntegerMatrix) -> Vec<i64> {
        smith_normal_form(a).diagonal().iter().map(|x| x.try_into().unwrap()).collect()
    }

    #[test]
    fn small_examples() {
        assert_eq!(diag(&IntegerMatrix::identity(3)), vec![1, 1, 1]);
        assert_eq!(diag(&IntegerMatrix::from_i64(&[&[2, 0], &[0, 3]])), vec![1, 6]);
        assert_eq!(diag(&IntegerMatrix::from_i64(&[&[-1, -1], &[-1, 0]])), vec![1, 1]);
        assert_eq!(diag(&IntegerMatrix::from_i64(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]])), vec![2, 6, 12]);
        assert_eq!(diag(&IntegerMatrix::from_i64(&[&[0, 0], &[0, 0]])), vec![0, 0]);
        assert_eq!(diag(&IntegerMatrix::from_i64(&[&[4, 6]])), vec![2]);
        assert_eq!(diag(&IntegerMatrix::zeros(0, 3)), Vec::<i64>::new());
    }

    #[test]
    fn indices_and_cosets() {
        let m = IntegerMatrix::from_i64(&[&[2]]);
        assert_eq!(lattice_index(&m), 2u64.into());
        let reps = lattice_coset_reps(&m).unwrap();
        assert_eq!(reps, vec![vec![BigInt::from(0)], vec![BigInt::from(1)]]);
        let singular = IntegerMatrix::from_i64(&[&[1, 1], &[1, 1]]);
        assert!(lattice_index(&singular).is_infinite());
        assert_eq!(lattice_coset_reps(&singular), Err(LatticeError::InfiniteClasses));
        // wide presentation: ℤ² / ⟨(2,0),(0,4),(1,1)⟩
        let wide = IntegerMatrix::from_i64(&[&[2, 0, 1], &[0, 4, 1]]);
        assert_eq!(lattice_index(&wide), 2u64.into());
    }

    #[test]
    fn inverse_of_cat_map() {
        let a = IntegerMatrix::from_i64(&[&[2, 1], &[1, 1]]);
        let inv = unimodular_inverse(&a).unwrap();
        assert_eq!(inv, IntegerMatrix::from_i64(&[&[1, -1], &[-1, 2]]));
        assert!(unimodular_inverse(&IntegerMatrix::from_i64(&[&[2]])).is_none());
    }

    fn matrix(rows: usize, cols: usize, entries: &[i64]) -> IntegerMatrix {
        let rows: Vec<Vec<i64>> = (0..rows).map(|i| entries[i * cols..(i + 1) * cols].to_vec()).collect();
        IntegerMatrix::from_rows(&rows).unwrap()
    }

    proptest! {
        #[test]
        fn reconstruction_holds(rows in 1usize..=4, cols in 1usize..=4, e in proptest::collection::vec(-12i64..=12, 16)) {
            // verification panics inside on failure
            let a = matrix(rows, cols, &e);
            let snf = smith_normal_form(&a);
            prop_assert_eq!(snf.u.mul(&a).mul(&snf.v), snf.s.clone());
            if rows == cols {
                let prod: BigInt = snf.diagonal().iter().product();
                prop_assert_eq!(prod, a.det().abs());
            }
        }

        #[test]
        fn coset_reps_are_distinct_and_complete(e in proptest::collection::vec(-4i64..=4, 4)) {
            let a = matrix(2, 2, &e);
            prop_assume!(!a.det().is_zero());
            let reps = lattice_coset_reps(&a).unwrap();
            prop_assert_eq!(BigInt::from(reps.len()), a.det().abs());
            for (i, x) in reps.iter().enumerate() {
                for y in &reps[..i] {
                    let diff: Vec<BigInt> = x.iter().zip(y).map(|(p, q)| p - q).collect();
                    prop_assert!(!lattice_contains(&a, &diff));
                }
            }
        }
    }
}
