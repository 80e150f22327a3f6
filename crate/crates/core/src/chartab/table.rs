use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::classes::ConjugacyData;
use super::cyclotomic::{Cyclotomic, CyclotomicField};
use super::modp::{choose_prime, PrimeField};
use super::CharTableError;
use crate::group::{FiniteGroup, DEFAULT_ORDER_CAP};

/// Exact irreducible characters of a finite group.
///
/// Rows are sorted by degree, with the trivial character first among the
/// linear ones, then lexicographically by values; columns follow
/// [`ConjugacyData`].
#[derive(Clone, Debug)]
pub struct CharacterTable {
    group: Arc<FiniteGroup>,
    classes: ConjugacyData,
    field: Arc<CyclotomicField>,
    chars: Vec<Vec<Cyclotomic>>,
    degrees: Vec<usize>,
    modular: ModularImage,
}

/// The table reduced modulo a prime `p ≡ 1 (mod e)` via `ζₑ ↦ z`.
#[derive(Clone, Debug)]
pub(crate) struct ModularImage {
    pub field: PrimeField,
    pub chars: Vec<Vec<u64>>,
}

impl CharacterTable {
    pub fn new(group: &Arc<FiniteGroup>) -> Result<Self, CharTableError> {
        Self::with_order_cap(group, DEFAULT_ORDER_CAP)
    }

    pub fn with_order_cap(group: &Arc<FiniteGroup>, cap: usize) -> Result<Self, CharTableError> {
        if group.order() > cap {
            return Err(CharTableError::OrderLimitExceeded { limit: cap });
        }
        let classes = ConjugacyData::new(group);
        let table = build(group, classes)?;
        table.verify()?;
        Ok(table)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn classes(&self) -> &ConjugacyData {
        &self.classes
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn characters(&self) -> &[Vec<Cyclotomic>] {
        &self.chars
    }

    pub fn character(&self, i: usize) -> &[Cyclotomic] {
        &self.chars[i]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    /// Number of irreducible characters.
    pub fn len(&self) -> usize {
        self.chars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chars.is_empty()
    }

    pub(crate) fn modular(&self) -> &ModularImage {
        &self.modular
    }

    /// `⟨a, b⟩ = |G|⁻¹ Σ |Cₖ| a(gₖ) conj(b(gₖ))` for class functions given
    /// by their values on classes.
    pub fn inner_product(&self, a: &[Cyclotomic], b: &[Cyclotomic]) -> Cyclotomic {
        let mut acc = Cyclotomic::zero(&self.field);
        for (k, (x, y)) in a.iter().zip(b).enumerate() {
            acc = acc.add(&x.mul(&y.conj()).scale_int(self.classes.sizes[k] as i64));
        }
        acc.scale(&BigRational::new(BigInt::one(), BigInt::from(self.group.order())))
    }

    /// Checks both orthogonality relations and the degree identities exactly.
    pub fn verify(&self) -> Result<(), CharTableError> {
        let n = self.group.order() as i64;
        let r = self.classes.count();
        let fail = |what: String| Err(CharTableError::LiftFailure(what));
        if self.chars.len() != r {
            return fail(format!("{} characters for {r} classes", self.chars.len()));
        }
        let sum_sq: usize = self.degrees.iter().map(|d| d * d).sum();
        if sum_sq != self.group.order() {
            return fail(format!("sum of squared degrees is {sum_sq}"));
        }
        if let Some(d) = self.degrees.iter().find(|&&d| !self.group.order().is_multiple_of(d)) {
            return fail(format!("degree {d} does not divide the group order"));
        }
        // conj(χ(g)) = χ(g⁻¹); multiply against the inverse class instead of conjugating
        let dual = |row: &[Cyclotomic], k: usize| row[self.classes.inverse_class[k]].clone();
        for i in 0..r {
            for j in i..r {
                let mut acc = Cyclotomic::zero(&self.field);
                for k in 0..r {
                    let t = self.chars[i][k].mul(&dual(&self.chars[j], k));
                    acc = acc.add(&t.scale_int(self.classes.sizes[k] as i64));
                }
                let expected = if i == j { n } else { 0 };
                if acc != Cyclotomic::from_integer(&self.field, expected) {
                    return fail(format!("rows {i} and {j} are not orthogonal: {acc}"));
                }
            }
        }
        for k in 0..r {
            for l in k..r {
                let mut acc = Cyclotomic::zero(&self.field);
                for row in &self.chars {
                    acc = acc.add(&row[k].mul(&dual(row, l)));
                }
                let expected = if k == l { n / self.classes.sizes[k] as i64 } else { 0 };
                if acc != Cyclotomic::from_integer(&self.field, expected) {
                    return fail(format!("columns {k} and {l} are not orthogonal: {acc}"));
                }
            }
        }
        Ok(())
    }
}

/// Class-algebra structure constants as matrices: `(M_j)[k][l]` is the
/// number of `x ∈ C_j` with `x⁻¹ gₗ ∈ C_k`, reduced mod p. The vector of
/// central character values `ω(C_k) = |C_k| χ(g_k)/χ(1)` is a common
/// eigenvector: `M_j ω = ω(C_j) ω`.
fn class_matrix(group: &FiniteGroup, classes: &ConjugacyData, j: usize, fp: PrimeField) -> Vec<Vec<u64>> {
    let r = classes.count();
    let mut m = vec![vec![0u64; r]; r];
    let members: Vec<usize> = group.elements().filter(|&x| classes.class_of[x] == j).collect();
    for (l, &g) in classes.reps.iter().enumerate() {
        for &x in &members {
            let k = classes.class_of[group.mul(group.inv(x), g)];
            m[k][l] += 1;
        }
    }
    for row in m.iter_mut() {
        for v in row.iter_mut() {
            *v = fp.reduce(*v);
        }
    }
    m
}

/// Characteristic polynomial (low degree first, monic) via reduction to
/// upper Hessenberg form.
pub(crate) fn charpoly(fp: PrimeField, a: &[Vec<u64>]) -> Vec<u64> {
    let n = a.len();
    let mut h = a.to_vec();
    for c in 0..n.saturating_sub(2) {
        let Some(piv) = (c + 1..n).find(|&i| h[i][c] != 0) else { continue };
        if piv != c + 1 {
            h.swap(piv, c + 1);
            for row in h.iter_mut() {
                row.swap(piv, c + 1);
            }
        }
        let tinv = fp.inv(h[c + 1][c]);
        for i in c + 2..n {
            if h[i][c] == 0 {
                continue;
            }
            let u = fp.mul(h[i][c], tinv);
            for j in 0..n {
                let t = fp.mul(u, h[c + 1][j]);
                h[i][j] = fp.sub(h[i][j], t);
            }
            for row in h.iter_mut() {
                let t = fp.mul(u, row[i]);
                row[c + 1] = fp.add(row[c + 1], t);
            }
        }
    }
    // p_m = (x − h_mm) p_{m−1} − Σ_{i≥1} h_{m−i,m} (h_{m,m−1} ⋯ h_{m−i+1,m−i}) p_{m−i−1}
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 0..n {
        let prev = &polys[m];
        let mut next = vec![0u64; m + 2];
        for (d, &c) in prev.iter().enumerate() {
            next[d + 1] = fp.add(next[d + 1], c);
            next[d] = fp.sub(next[d], fp.mul(h[m][m], c));
        }
        let mut t = 1u64;
        for i in 1..=m {
            t = fp.mul(t, h[m - i + 1][m - i]);
            let coef = fp.mul(t, h[m - i][m]);
            if coef == 0 {
                continue;
            }
            for (d, &c) in polys[m - i].iter().enumerate() {
                next[d] = fp.sub(next[d], fp.mul(coef, c));
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

fn poly_roots(fp: PrimeField, poly: &[u64]) -> Vec<u64> {
    (0..fp.modulus())
        .filter(|&x| poly.iter().rev().fold(0, |acc, &c| fp.add(fp.mul(acc, x), c)) == 0)
        .collect()
}

/// Common eigenvectors of all class matrices, by successive splitting of
/// invariant subspaces.
fn split_class_algebra(
    group: &FiniteGroup,
    classes: &ConjugacyData,
    fp: PrimeField,
) -> Result<Vec<Vec<u64>>, CharTableError> {
    let r = classes.count();
    let identity: Vec<Vec<u64>> =
        (0..r).map(|i| (0..r).map(|j| (i == j) as u64).collect()).collect();
    let mut spaces = vec![identity];
    for j in 0..r {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        if j == classes.identity_class {
            continue;
        }
        let m = class_matrix(group, classes, j, fp);
        let mut next = Vec::with_capacity(spaces.len());
        for space in spaces {
            if space.len() == 1 {
                next.push(space);
                continue;
            }
            next.extend(split_space(fp, &m, &space)?);
        }
        spaces = next;
    }
    if let Some(s) = spaces.iter().find(|s| s.len() != 1) {
        return Err(CharTableError::LiftFailure(format!(
            "class algebra left a common eigenspace of dimension {}",
            s.len()
        )));
    }
    Ok(spaces.into_iter().map(|mut s| s.pop().unwrap()).collect())
}

fn split_space(
    fp: PrimeField,
    m: &[Vec<u64>],
    space: &[Vec<u64>],
) -> Result<Vec<Vec<Vec<u64>>>, CharTableError> {
    let (basis, pivots) = fp.echelon(space);
    let d = basis.len();
    let r = m.len();
    // restriction of m to the space, in the echelon basis
    let mut a = vec![vec![0u64; d]; d];
    for (col, b) in basis.iter().enumerate() {
        let image: Vec<u64> = (0..r)
            .map(|k| m[k].iter().zip(b).fold(0, |acc, (&x, &y)| fp.add(acc, fp.mul(x, y))))
            .collect();
        for (row, &pc) in pivots.iter().enumerate() {
            a[row][col] = image[pc];
        }
    }
    let scalar = (0..d).all(|i| (0..d).all(|k| if i == k { a[i][k] == a[0][0] } else { a[i][k] == 0 }));
    if scalar {
        return Ok(vec![basis]);
    }
    let roots = poly_roots(fp, &charpoly(fp, &a));
    let mut out = Vec::new();
    let mut total = 0;
    for lambda in roots {
        let shifted: Vec<Vec<u64>> = (0..d)
            .map(|i| (0..d).map(|k| if i == k { fp.sub(a[i][k], lambda) } else { a[i][k] }).collect())
            .collect();
        let kernel = fp.nullspace(&shifted);
        total += kernel.len();
        let vectors = kernel
            .iter()
            .map(|u| {
                (0..r)
                    .map(|t| u.iter().zip(&basis).fold(0, |acc, (&c, b)| fp.add(acc, fp.mul(c, b[t]))))
                    .collect()
            })
            .collect();
        out.push(vectors);
    }
    if total != d {
        return Err(CharTableError::LiftFailure(format!(
            "class matrix is not diagonalisable mod {} ({total} of {d} eigenvectors)",
            fp.modulus()
        )));
    }
    Ok(out)
}

fn isqrt(n: usize) -> usize {
    let mut s = (n as f64).sqrt() as usize;
    while s * s > n {
        s -= 1;
    }
    while (s + 1) * (s + 1) <= n {
        s += 1;
    }
    s
}

fn build(group: &Arc<FiniteGroup>, classes: ConjugacyData) -> Result<CharacterTable, CharTableError> {
    let order = group.order();
    let e = classes.exponent;
    let r = classes.count();
    let fp = PrimeField::new(choose_prime(e as u64, order as u64));
    let z = fp.root_of_unity(e as u64);
    let field = CyclotomicField::get(e);
    let eigvecs = split_class_algebra(group, &classes, fp)?;
    let power_map = classes.power_map(group);
    let zpow: Vec<u64> = (0..e as u64).map(|t| fp.pow(z, t)).collect();
    let e_inv = fp.inv(fp.reduce(e as u64));
    let g_mod = fp.reduce(order as u64);
    let bound = isqrt(order);

    let mut rows: Vec<(usize, Vec<Cyclotomic>, Vec<u64>)> = Vec::with_capacity(r);
    for w in eigvecs {
        let w0 = w[classes.identity_class];
        if w0 == 0 {
            return Err(CharTableError::LiftFailure("eigenvector vanishes at the identity".into()));
        }
        let w0_inv = fp.inv(w0);
        let w: Vec<u64> = w.iter().map(|&x| fp.mul(x, w0_inv)).collect();
        // Σ ω(C_k) ω(C_k*) / |C_k| = |G| / χ(1)²
        let s = (0..r).fold(0, |acc, k| {
            let t = fp.mul(fp.mul(w[k], w[classes.inverse_class[k]]), fp.inv(fp.reduce(classes.sizes[k] as u64)));
            fp.add(acc, t)
        });
        if s == 0 {
            return Err(CharTableError::LiftFailure("degree sum vanishes mod p".into()));
        }
        let d_sq = fp.mul(g_mod, fp.inv(s));
        let degree = (1..=bound)
            .find(|&d| fp.reduce((d * d) as u64) == d_sq)
            .ok_or_else(|| CharTableError::LiftFailure("no integer degree matches mod p".into()))?;
        let d_mod = fp.reduce(degree as u64);
        let chi_mod: Vec<u64> = (0..r)
            .map(|k| fp.mul(fp.mul(d_mod, w[k]), fp.inv(fp.reduce(classes.sizes[k] as u64))))
            .collect();
        // multiplicities of the eigenvalue ζʲ of ρ(g_k): (1/e) Σ_l χ(g_kˡ) ζ^{−jl}
        let mut values = Vec::with_capacity(r);
        for k in 0..r {
            let mut mult = vec![0i64; e];
            let mut total = 0;
            for (j, m) in mult.iter_mut().enumerate() {
                let sum = (0..e).fold(0, |acc, l| {
                    let t = fp.mul(chi_mod[power_map[k][l]], zpow[(e - (j * l) % e) % e]);
                    fp.add(acc, t)
                });
                let v = fp.mul(sum, e_inv) as usize;
                if v > degree {
                    return Err(CharTableError::LiftFailure(format!(
                        "eigenvalue multiplicity {v} exceeds degree {degree}"
                    )));
                }
                *m = v as i64;
                total += v;
            }
            if total != degree {
                return Err(CharTableError::LiftFailure("eigenvalue multiplicities do not sum to the degree".into()));
            }
            values.push(Cyclotomic::from_root_multiplicities(&field, &mult));
        }
        rows.push((degree, values, chi_mod));
    }

    let is_trivial = |v: &[Cyclotomic]| v.iter().all(|x| x == &Cyclotomic::from_integer(&field, 1));
    rows.sort_by(|(da, va, _), (db, vb, _)| {
        da.cmp(db)
            .then_with(|| is_trivial(vb).cmp(&is_trivial(va)))
            .then_with(|| {
                va.iter()
                    .zip(vb.iter())
                    .map(|(x, y)| x.cmp_coeffs(y))
                    .find(|o| *o != Ordering::Equal)
                    .unwrap_or(Ordering::Equal)
            })
    });
    let degrees = rows.iter().map(|(d, _, _)| *d).collect();
    let mut chars = Vec::with_capacity(r);
    let mut chars_mod = Vec::with_capacity(r);
    for (_, v, m) in rows {
        chars.push(v);
        chars_mod.push(m);
    }
    Ok(CharacterTable {
        group: Arc::clone(group),
        classes,
        field,
        chars,
        degrees,
        modular: ModularImage { field: fp, chars: chars_mod },
    })
}

impl Serialize for CharacterTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("CharacterTable", 6)?;
        s.serialize_field("order", &self.group.order())?;
        s.serialize_field("exponent", &self.classes.exponent)?;
        s.serialize_field("class_reps", &self.classes.reps)?;
        s.serialize_field("class_sizes", &self.classes.sizes)?;
        s.serialize_field("degrees", &self.degrees)?;
        s.serialize_field("values", &self.chars)?;
        s.end()
    }
}

/// Rational check helper for tests and callers: is `x` the integer `n`?
pub fn is_integer_value(x: &Cyclotomic, n: i64) -> bool {
    x.to_rational().is_some_and(|q| q == BigRational::from_integer(n.into()))
}
