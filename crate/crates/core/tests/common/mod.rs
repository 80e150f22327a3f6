//! Independent oracles shared by the integration tests. Nothing here calls
//! the algorithms it is used to check.
#![allow(dead_code)]

use std::collections::VecDeque;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use twb_core::chartab::ConjugacyData;
use twb_core::group::{FiniteGroup, GroupMap};
use twb_core::intmat::IntegerMatrix;

/// `g · x = g x φ(g)⁻¹`, spelled out with table lookups.
pub fn act(g: &FiniteGroup, phi: &GroupMap, a: usize, x: usize) -> usize {
    g.mul(g.mul(a, x), g.inv(phi.apply(a)))
}

/// Orbits of the twisted action by breadth-first search over all of `G`.
pub fn naive_twisted_classes(phi: &GroupMap) -> (usize, Vec<usize>) {
    let g = phi.group();
    let n = g.order();
    let mut class = vec![usize::MAX; n];
    let mut count = 0;
    for start in 0..n {
        if class[start] != usize::MAX {
            continue;
        }
        class[start] = count;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for a in 0..n {
                let y = act(g, phi, a, x);
                if class[y] == usize::MAX {
                    class[y] = count;
                    queue.push_back(y);
                }
            }
        }
        count += 1;
    }
    (count, class)
}

/// Number of ordinary conjugacy classes by direct scan.
pub fn naive_class_count(g: &FiniteGroup) -> usize {
    let n = g.order();
    let mut seen = vec![false; n];
    let mut count = 0;
    for x in 0..n {
        if seen[x] {
            continue;
        }
        count += 1;
        for a in 0..n {
            seen[g.mul(g.mul(a, x), g.inv(a))] = true;
        }
    }
    count
}

/// Irreducible characters from the regular representation, in floating
/// point, one row per character indexed by class.
///
/// A random Hermitian element of the centre of `ℂ[G]` acts on each isotypic
/// component of the regular representation by a distinct real scalar. The
/// spectral projector of a cluster is left multiplication by the central
/// idempotent `e_χ = χ(1)/|G| Σ χ(g⁻¹) g`, read off from its image of `δ_e`.
pub fn regular_representation_characters(
    g: &FiniteGroup,
    classes: &ConjugacyData,
    rng: &mut ChaCha8Rng,
) -> Vec<Vec<Complex64>> {
    let n = g.order();
    let r = classes.count();
    let mut class_sum: Vec<DMatrix<Complex64>> = vec![DMatrix::zeros(n, n); r];
    for x in 0..n {
        let k = classes.class_of[x];
        for y in 0..n {
            class_sum[k][(g.mul(x, y), y)] += Complex64::new(1.0, 0.0);
        }
    }
    let mut h = DMatrix::<Complex64>::zeros(n, n);
    for k in 0..r {
        let adj = &class_sum[classes.inverse_class[k]];
        let a: f64 = rng.gen_range(-1.0..1.0);
        let b: f64 = rng.gen_range(-1.0..1.0);
        h += (&class_sum[k] + adj) * Complex64::new(a, 0.0);
        h += (&class_sum[k] - adj) * Complex64::new(0.0, b);
    }
    let eig = SymmetricEigen::new(h);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].partial_cmp(&eig.eigenvalues[j]).unwrap());
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for &i in &order {
        match clusters.last_mut() {
            Some(c) if (eig.eigenvalues[i] - eig.eigenvalues[*c.last().unwrap()]).abs() < 1e-6 => c.push(i),
            _ => clusters.push(vec![i]),
        }
    }
    let e = g.identity();
    clusters
        .iter()
        .map(|cluster| {
            // column e of the projector Σ v v*
            let mut idem = vec![Complex64::new(0.0, 0.0); n];
            for &i in cluster {
                let v = eig.eigenvectors.column(i);
                for x in 0..n {
                    idem[x] += v[x] * v[e].conj();
                }
            }
            let degree = (n as f64 * idem[e].re).sqrt();
            classes
                .reps
                .iter()
                .map(|&x| idem[g.inv(x)] * (n as f64 / degree))
                .collect()
        })
        .collect()
}

/// Determinant by cofactor expansion along the first row.
pub fn det_cofactor(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, &v)| v).collect())
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] as i128 * det_cofactor(&minor)
        })
        .sum()
}

pub fn random_rows(rng: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> Vec<Vec<i64>> {
    (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-bound..=bound)).collect()).collect()
}

pub fn matrix(rows: &[Vec<i64>]) -> IntegerMatrix {
    IntegerMatrix::from_rows(rows).unwrap()
}

/// Invariant factor lists `d₁ | d₂ | …` with product `n`, each `dᵢ ≥ 2`.
pub fn invariant_chains(n: u64) -> Vec<Vec<u64>> {
    fn rec(rem: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if rem == 1 {
            out.push(cur.clone());
            return;
        }
        let last = cur.last().copied().unwrap_or(1);
        for d in 2..=rem {
            if rem.is_multiple_of(d) && d % last == 0 {
                cur.push(d);
                rec(rem / d, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::new(), &mut out);
    out
}

/// `|End(⊕ ℤ/dᵢ)| = Π gcd(dᵢ, dⱼ)`.
pub fn abelian_endomorphism_count(chain: &[u64]) -> u128 {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    chain.iter().flat_map(|&a| chain.iter().map(move |&b| gcd(a, b) as u128)).product()
}
