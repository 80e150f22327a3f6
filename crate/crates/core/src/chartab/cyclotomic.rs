//! Exact arithmetic in cyclotomic fields `ℚ(ζₑ)`.
//!
//! Elements are coefficient vectors over the power basis
//! `1, ζ, …, ζ^{φ(e)−1}`, always reduced modulo the `e`-th cyclotomic
//! polynomial, so equality of values is equality of coefficients.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

/// The field `ℚ(ζₑ)` with precomputed reductions of `ζ⁰ … ζ^{e−1}`.
pub struct CyclotomicField {
    order: usize,
    /// Monic `Φₑ`, low degree first, leading coefficient omitted.
    modulus: Vec<BigInt>,
    /// `roots[j]` = reduced coefficients of `ζʲ`.
    roots: Vec<Vec<BigInt>>,
}

impl fmt::Debug for CyclotomicField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.order)
    }
}

/// Integer coefficients of `Φₙ`, low degree first.
pub fn cyclotomic_polynomial(n: usize) -> Vec<BigInt> {
    assert!(n >= 1);
    // xⁿ − 1 divided by Φ_d for every proper divisor d
    let mut num = vec![BigInt::zero(); n + 1];
    num[0] = -BigInt::one();
    num[n] = BigInt::one();
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        num = divide_monic(&num, &cyclotomic_polynomial(d));
    }
    num
}

fn divide_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (i, d) in den.iter().enumerate() {
            rem[k + i] -= &c * d;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

impl CyclotomicField {
    /// The shared field of order `e` (`e` and `2e` give the same field for
    /// odd `e`, but are kept distinct so bases never mix).
    pub fn get(order: usize) -> Arc<CyclotomicField> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<CyclotomicField>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(f) = cache.lock().unwrap().get(&order) {
            return Arc::clone(f);
        }
        let field = Arc::new(CyclotomicField::new(order));
        cache.lock().unwrap().entry(order).or_insert(field).clone()
    }

    fn new(order: usize) -> Self {
        let phi = cyclotomic_polynomial(order);
        let degree = phi.len() - 1;
        let modulus: Vec<BigInt> = phi[..degree].to_vec();
        let mut roots = Vec::with_capacity(order);
        let mut cur = vec![BigInt::zero(); degree];
        cur[0] = BigInt::one();
        for _ in 0..order {
            roots.push(cur.clone());
            // multiply by x and reduce: x^degree = −Σ modulus[i] xⁱ
            let top = cur[degree - 1].clone();
            for i in (1..degree).rev() {
                cur[i] = cur[i - 1].clone() - &top * &modulus[i];
            }
            cur[0] = -(&top * &modulus[0]);
        }
        CyclotomicField { order, modulus, roots }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `φ(e)`, the dimension over `ℚ`.
    pub fn degree(&self) -> usize {
        self.modulus.len()
    }
}

/// An element of `ℚ(ζₑ)`, stored as integer numerators over one positive
/// common denominator, reduced to lowest terms.
#[derive(Clone)]
pub struct Cyclotomic {
    field: Arc<CyclotomicField>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        self.field.order == other.field.order && self.den == other.den && self.num == other.num
    }
}

impl Eq for Cyclotomic {}

impl Cyclotomic {
    fn new_normalized(field: &Arc<CyclotomicField>, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        debug_assert!(!den.is_zero());
        if den.is_negative() {
            den = -den;
            num.iter_mut().for_each(|c| *c = -std::mem::take(c));
        }
        if !den.is_one() {
            let g = num.iter().fold(den.clone(), |g, c| g.gcd(c));
            if !g.is_one() {
                num.iter_mut().for_each(|c| *c /= &g);
                den /= &g;
            }
        }
        Cyclotomic { field: Arc::clone(field), num, den }
    }

    fn from_integers(field: &Arc<CyclotomicField>, num: Vec<BigInt>) -> Self {
        Cyclotomic { field: Arc::clone(field), num, den: BigInt::one() }
    }

    pub fn zero(field: &Arc<CyclotomicField>) -> Self {
        Self::from_integers(field, vec![BigInt::zero(); field.degree()])
    }

    pub fn from_rational(field: &Arc<CyclotomicField>, q: BigRational) -> Self {
        let mut num = vec![BigInt::zero(); field.degree()];
        let (n, d) = q.into_raw();
        num[0] = n;
        Self::new_normalized(field, num, d)
    }

    pub fn from_integer(field: &Arc<CyclotomicField>, n: i64) -> Self {
        let mut num = vec![BigInt::zero(); field.degree()];
        num[0] = n.into();
        Self::from_integers(field, num)
    }

    /// `ζʲ` (exponent taken modulo `e`).
    pub fn root_of_unity(field: &Arc<CyclotomicField>, j: i64) -> Self {
        let j = j.rem_euclid(field.order as i64) as usize;
        Self::from_integers(field, field.roots[j].clone())
    }

    /// `Σ mⱼ ζʲ` for integer multiplicities `m` of length `e`.
    pub fn from_root_multiplicities(field: &Arc<CyclotomicField>, mult: &[i64]) -> Self {
        assert_eq!(mult.len(), field.order);
        let mut acc = vec![BigInt::zero(); field.degree()];
        for (j, &m) in mult.iter().enumerate().filter(|(_, &m)| m != 0) {
            for (a, r) in acc.iter_mut().zip(&field.roots[j]) {
                *a += r * m;
            }
        }
        Self::from_integers(field, acc)
    }

    /// Builds a value from power-basis coefficients.
    pub fn from_coeffs(field: &Arc<CyclotomicField>, coeffs: &[BigRational]) -> Option<Self> {
        if coeffs.len() != field.degree() {
            return None;
        }
        let den = coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let num = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        Some(Self::new_normalized(field, num, den))
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    /// Power-basis coefficients.
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num.iter().map(|c| BigRational::new(c.clone(), self.den.clone())).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    /// True when all coefficients are integers (for character values: when
    /// the value is an algebraic integer written in the power basis).
    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.num[1..].iter().all(Zero::is_zero)
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| BigRational::new(self.num[0].clone(), self.den.clone()))
    }

    fn check_field(&self, other: &Cyclotomic) {
        assert_eq!(self.field.order, other.field.order, "mixing cyclotomic fields");
    }

    fn combine(&self, other: &Cyclotomic, sign: i8) -> Cyclotomic {
        self.check_field(other);
        let pick = |a: &BigInt, b: &BigInt| if sign > 0 { a + b } else { a - b };
        if self.den == other.den {
            let num = self.num.iter().zip(&other.num).map(|(a, b)| pick(a, b)).collect();
            return Self::new_normalized(&self.field, num, self.den.clone());
        }
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(a, b)| pick(&(a * &other.den), &(b * &self.den)))
            .collect();
        Self::new_normalized(&self.field, num, &self.den * &other.den)
    }

    pub fn add(&self, other: &Cyclotomic) -> Cyclotomic {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &Cyclotomic) -> Cyclotomic {
        self.combine(other, -1)
    }

    pub fn neg(&self) -> Cyclotomic {
        Cyclotomic {
            field: Arc::clone(&self.field),
            num: self.num.iter().map(|a| -a).collect(),
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, q: &BigRational) -> Cyclotomic {
        let num = self.num.iter().map(|a| a * q.numer()).collect();
        Self::new_normalized(&self.field, num, &self.den * q.denom())
    }

    pub fn scale_int(&self, k: i64) -> Cyclotomic {
        let num = self.num.iter().map(|a| a * k).collect();
        Self::new_normalized(&self.field, num, self.den.clone())
    }

    pub fn mul(&self, other: &Cyclotomic) -> Cyclotomic {
        self.check_field(other);
        let d = self.field.degree();
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.num.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other.num.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                prod[i + j] += a * b;
            }
        }
        for k in (d..prod.len()).rev() {
            let top = std::mem::take(&mut prod[k]);
            if top.is_zero() {
                continue;
            }
            for (i, m) in self.field.modulus.iter().enumerate() {
                if !m.is_zero() {
                    prod[k - d + i] -= &top * m;
                }
            }
        }
        prod.truncate(d);
        Self::new_normalized(&self.field, prod, &self.den * &other.den)
    }

    /// Complex conjugation `ζ ↦ ζ⁻¹`.
    pub fn conj(&self) -> Cyclotomic {
        let e = self.field.order;
        let mut acc = vec![BigInt::zero(); self.field.degree()];
        for (j, c) in self.num.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (a, r) in acc.iter_mut().zip(&self.field.roots[(e - j) % e]) {
                if !r.is_zero() {
                    *a += c * r;
                }
            }
        }
        Cyclotomic { field: Arc::clone(&self.field), num: acc, den: self.den.clone() }
    }

    /// Value under the embedding `ζ ↦ exp(2πi/e)`, as `(re, im)`.
    /// Presentation only; no decision in this crate depends on it.
    pub fn to_complex(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        let e = self.field.order as f64;
        let den = self.den.to_f64().unwrap_or(f64::NAN);
        self.num.iter().enumerate().fold((0.0, 0.0), |(re, im), (j, c)| {
            let c = c.to_f64().unwrap_or(f64::NAN) / den;
            let t = std::f64::consts::TAU * j as f64 / e;
            (re + c * t.cos(), im + c * t.sin())
        })
    }

    /// Lexicographic order on coefficient vectors.
    pub fn cmp_coeffs(&self, other: &Cyclotomic) -> Ordering {
        self.coeffs().cmp(&other.coeffs())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let unit = abs.is_one();
            match (j, unit) {
                (0, _) => write!(f, "{abs}")?,
                (_, true) => write_power(f, j, self.field.order)?,
                (_, false) => {
                    write!(f, "{abs}*")?;
                    write_power(f, j, self.field.order)?
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

fn write_power(f: &mut fmt::Formatter<'_>, j: usize, e: usize) -> fmt::Result {
    if j == 1 {
        write!(f, "z{e}")
    } else {
        write!(f, "z{e}^{j}")
    }
}

/// `{"order": e, "coeffs": ["p/q", …]}`
impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let coeffs: Vec<String> = self.coeffs().iter().map(|c| c.to_string()).collect();
        let mut s = serializer.serialize_struct("Cyclotomic", 2)?;
        s.serialize_field("order", &self.field.order)?;
        s.serialize_field("coeffs", &coeffs)?;
        s.end()
    }
}
