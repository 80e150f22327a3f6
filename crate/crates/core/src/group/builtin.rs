use std::fmt;

use super::perm::{closure, Permutation};
use super::{FiniteGroup, GroupConfig, GroupError};

/// Named groups used for examples and corpus sweeps.
///
/// Element indexing:
/// * `Cyclic(n)`: `k` is the residue `k`.
/// * `Abelian(ds)`: mixed radix over the factors, first factor most significant.
/// * `Dihedral(n)`: order `2n`; index `j·n + i` is `rⁱ sʲ` with `s r s = r⁻¹`.
/// * `Symmetric(n)`, `Alternating(n)`: permutation closure, identity first.
/// * `Quaternion8`: `1, −1, i, −i, j, −j, k, −k`.
/// * `DirectProduct(a, b)`: `(x, y)` has index `x·|b| + y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BuiltinGroup {
    Cyclic(usize),
    Dihedral(usize),
    Symmetric(usize),
    Alternating(usize),
    Quaternion8,
    DirectProduct(Box<BuiltinGroup>, Box<BuiltinGroup>),
    Abelian(Vec<usize>),
}

impl fmt::Display for BuiltinGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuiltinGroup::Cyclic(n) => write!(f, "cyclic({n})"),
            BuiltinGroup::Dihedral(n) => write!(f, "dihedral({n})"),
            BuiltinGroup::Symmetric(n) => write!(f, "symmetric({n})"),
            BuiltinGroup::Alternating(n) => write!(f, "alternating({n})"),
            BuiltinGroup::Quaternion8 => f.write_str("quaternion8"),
            BuiltinGroup::DirectProduct(a, b) => write!(f, "direct_product({a},{b})"),
            BuiltinGroup::Abelian(ds) => {
                let parts: Vec<String> = ds.iter().map(|d| d.to_string()).collect();
                write!(f, "abelian([{}])", parts.join(","))
            }
        }
    }
}

impl BuiltinGroup {
    pub fn build(&self) -> Result<FiniteGroup, GroupError> {
        self.build_with(&GroupConfig::default())
    }

    /// Order of the group, computed without building it. `None` on overflow.
    pub fn order(&self) -> Option<usize> {
        match self {
            BuiltinGroup::Cyclic(n) => Some(*n),
            BuiltinGroup::Dihedral(n) => n.checked_mul(2),
            BuiltinGroup::Symmetric(n) => (1..=*n).try_fold(1usize, |a, k| a.checked_mul(k)),
            BuiltinGroup::Alternating(n) => {
                let full = (1..=*n).try_fold(1usize, |a, k| a.checked_mul(k))?;
                Some(if *n >= 2 { full / 2 } else { full })
            }
            BuiltinGroup::Quaternion8 => Some(8),
            BuiltinGroup::DirectProduct(a, b) => a.order()?.checked_mul(b.order()?),
            BuiltinGroup::Abelian(ds) => ds.iter().try_fold(1usize, |a, &d| a.checked_mul(d)),
        }
    }

    fn invalid(&self, reason: &str) -> GroupError {
        let name = self.to_string();
        let name = name.split('(').next().unwrap_or_default().to_string();
        GroupError::InvalidParams { name, reason: reason.to_string() }
    }

    pub fn build_with(&self, config: &GroupConfig) -> Result<FiniteGroup, GroupError> {
        let cap = GroupError::OrderLimitExceeded { limit: config.order_cap };
        let order = self.order().ok_or(cap.clone())?;
        if order > config.order_cap {
            return Err(cap);
        }
        match self {
            BuiltinGroup::Cyclic(n) => {
                if *n == 0 {
                    return Err(self.invalid("n must be positive"));
                }
                Ok(abelian_product(&[*n]))
            }
            BuiltinGroup::Abelian(ds) => {
                if ds.contains(&0) {
                    return Err(self.invalid("invariants must be positive"));
                }
                Ok(abelian_product(ds))
            }
            BuiltinGroup::Dihedral(n) => {
                if *n == 0 {
                    return Err(self.invalid("n must be positive"));
                }
                Ok(dihedral(*n))
            }
            BuiltinGroup::Symmetric(n) => {
                let mut gens = Vec::new();
                if *n >= 2 {
                    let cycle: Vec<usize> = (0..*n).collect();
                    gens.push(Permutation::from_cycles(*n, &[&cycle]).unwrap());
                    if *n > 2 {
                        gens.push(Permutation::from_cycles(*n, &[&[0, 1]]).unwrap());
                    }
                }
                Ok(closure((*n).max(1), &gens, config)?.0)
            }
            BuiltinGroup::Alternating(n) => {
                let gens: Vec<Permutation> = (2..*n)
                    .map(|i| Permutation::from_cycles(*n, &[&[0, 1, i]]).unwrap())
                    .collect();
                Ok(closure((*n).max(1), &gens, config)?.0)
            }
            BuiltinGroup::Quaternion8 => Ok(quaternion8()),
            BuiltinGroup::DirectProduct(a, b) => {
                let ga = a.build_with(config)?;
                let gb = b.build_with(config)?;
                Ok(FiniteGroup::direct_product(&ga, &gb))
            }
        }
    }
}

fn abelian_product(moduli: &[usize]) -> FiniteGroup {
    let n: usize = moduli.iter().product();
    let decode = |mut x: usize| {
        let mut digits = vec![0; moduli.len()];
        for (i, &m) in moduli.iter().enumerate().rev() {
            digits[i] = x % m;
            x /= m;
        }
        digits
    };
    let encode = |digits: &[usize]| digits.iter().zip(moduli).fold(0, |acc, (&d, &m)| acc * m + d);
    let coords: Vec<Vec<usize>> = (0..n).map(decode).collect();
    let mut table = Vec::with_capacity(n * n);
    for a in &coords {
        for b in &coords {
            let sum: Vec<usize> = a.iter().zip(b).zip(moduli).map(|((x, y), m)| (x + y) % m).collect();
            table.push(encode(&sum) as u32);
        }
    }
    let labels = coords
        .iter()
        .map(|c| {
            if c.len() == 1 {
                c[0].to_string()
            } else {
                let parts: Vec<String> = c.iter().map(|d| d.to_string()).collect();
                format!("({})", parts.join(","))
            }
        })
        .collect();
    FiniteGroup::from_trusted_table(n, table, Some(labels))
}

fn dihedral(n: usize) -> FiniteGroup {
    let order = 2 * n;
    let mut table = Vec::with_capacity(order * order);
    for a in 0..order {
        let (i1, j1) = (a % n, a / n);
        for b in 0..order {
            let (i2, j2) = (b % n, b / n);
            // rⁱ¹ sʲ¹ rⁱ² sʲ² = rⁱ¹⁺⁽⁻¹⁾ʲ¹ⁱ² sʲ¹⁺ʲ²
            let i = if j1 == 0 { (i1 + i2) % n } else { (i1 + n - i2) % n };
            let j = (j1 + j2) % 2;
            table.push((j * n + i) as u32);
        }
    }
    let labels = (0..order)
        .map(|a| {
            let (i, j) = (a % n, a / n);
            match (i, j) {
                (0, 0) => "e".to_string(),
                (i, 0) => format!("r{i}"),
                (0, _) => "s".to_string(),
                (i, _) => format!("r{i}s"),
            }
        })
        .collect();
    FiniteGroup::from_trusted_table(order, table, Some(labels))
}

fn quaternion8() -> FiniteGroup {
    // units 1, i, j, k as 0..4; unit product table as (sign, unit)
    const UNIT: [[(bool, usize); 4]; 4] = [
        [(false, 0), (false, 1), (false, 2), (false, 3)],
        [(false, 1), (true, 0), (false, 3), (true, 2)],
        [(false, 2), (true, 3), (true, 0), (false, 1)],
        [(false, 3), (false, 2), (true, 1), (true, 0)],
    ];
    let mut table = Vec::with_capacity(64);
    for a in 0..8 {
        for b in 0..8 {
            let (neg, u) = UNIT[a / 2][b / 2];
            let negative = neg ^ (a % 2 == 1) ^ (b % 2 == 1);
            table.push((2 * u + negative as usize) as u32);
        }
    }
    let labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"].map(String::from).to_vec();
    FiniteGroup::from_trusted_table(8, table, Some(labels))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        let cases = [
            (BuiltinGroup::Cyclic(1), 1),
            (BuiltinGroup::Cyclic(7), 7),
            (BuiltinGroup::Dihedral(4), 8),
            (BuiltinGroup::Symmetric(1), 1),
            (BuiltinGroup::Symmetric(2), 2),
            (BuiltinGroup::Symmetric(4), 24),
            (BuiltinGroup::Alternating(4), 12),
            (BuiltinGroup::Alternating(2), 1),
            (BuiltinGroup::Quaternion8, 8),
            (BuiltinGroup::Abelian(vec![2, 4]), 8),
            (
                BuiltinGroup::DirectProduct(
                    Box::new(BuiltinGroup::Cyclic(2)),
                    Box::new(BuiltinGroup::Symmetric(3)),
                ),
                12,
            ),
        ];
        for (b, n) in cases {
            let g = b.build().unwrap();
            assert_eq!(g.order(), n, "{b}");
            assert_eq!(b.order(), Some(n));
            assert_eq!(g.identity(), 0, "{b}");
        }
    }

    #[test]
    fn dihedral_four_matches_closure() {
        // symmetries of a square as permutations of its corners
        let closed = FiniteGroup::from_permutations(4, &[vec![1, 2, 3, 0], vec![0, 3, 2, 1]]).unwrap();
        assert_eq!(closed.order(), 8);
        let d4 = BuiltinGroup::Dihedral(4).build().unwrap();
        assert_eq!(d4.order(), closed.order());
        assert_eq!(d4.exponent(), closed.exponent());
        assert!(!d4.is_abelian());
    }

    #[test]
    fn quaternion_relations() {
        let q = BuiltinGroup::Quaternion8.build().unwrap();
        let (i, j, k, m1) = (2, 4, 6, 1);
        assert_eq!(q.mul(i, i), m1);
        assert_eq!(q.mul(j, j), m1);
        assert_eq!(q.mul(k, k), m1);
        assert_eq!(q.mul(i, j), k);
        assert_eq!(q.mul(j, i), k + 1);
        assert_eq!(q.exponent(), 4);
    }

    #[test]
    fn invalid_and_capped() {
        assert!(matches!(BuiltinGroup::Cyclic(0).build(), Err(GroupError::InvalidParams { .. })));
        assert!(matches!(
            BuiltinGroup::Abelian(vec![2, 0]).build(),
            Err(GroupError::InvalidParams { .. })
        ));
        let cfg = GroupConfig { order_cap: 100, ..Default::default() };
        assert_eq!(
            BuiltinGroup::Symmetric(5).build_with(&cfg),
            Err(GroupError::OrderLimitExceeded { limit: 100 })
        );
        assert!(BuiltinGroup::Symmetric(40).build().is_err());
    }
}
