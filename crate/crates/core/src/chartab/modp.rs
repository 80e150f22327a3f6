//! Arithmetic and linear algebra over a prime field `F_p`, `p < 2³²`.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        debug_assert!(is_prime(p) && p < (1 << 32));
        PrimeField { p }
    }

    pub fn modulus(self) -> u64 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(self, mut a: u64, mut k: u64) -> u64 {
        let mut acc = 1 % self.p;
        a %= self.p;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            k >>= 1;
        }
        acc
    }

    pub fn inv(self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "inverting zero mod {}", self.p);
        self.pow(a, self.p - 2)
    }

    pub fn reduce(self, a: u64) -> u64 {
        a % self.p
    }

    /// An element of multiplicative order exactly `e`; requires `e | p − 1`.
    pub fn root_of_unity(self, e: u64) -> u64 {
        assert_eq!((self.p - 1) % e, 0);
        let factors = prime_factors(self.p - 1);
        let generator = (2..self.p)
            .find(|&g| factors.iter().all(|&q| self.pow(g, (self.p - 1) / q) != 1))
            .unwrap_or(1);
        self.pow(generator, (self.p - 1) / e)
    }

    /// Basis of the null space `{x : A x = 0}` of an `n × n` matrix.
    pub fn nullspace(self, a: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let rows = a.len();
        let cols = if rows == 0 { 0 } else { a[0].len() };
        let mut m: Vec<Vec<u64>> = a.to_vec();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            let Some(pr) = (r..rows).find(|&i| m[i][c] != 0) else { continue };
            m.swap(r, pr);
            let inv = self.inv(m[r][c]);
            for x in m[r].iter_mut() {
                *x = self.mul(*x, inv);
            }
            for i in 0..rows {
                if i != r && m[i][c] != 0 {
                    let f = m[i][c];
                    for j in 0..cols {
                        let t = self.mul(f, m[r][j]);
                        m[i][j] = self.sub(m[i][j], t);
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows {
                break;
            }
        }
        let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0; cols];
                v[f] = 1;
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = self.sub(0, m[i][f]);
                }
                v
            })
            .collect()
    }

    /// Reduced row echelon form of a list of independent vectors; returns
    /// the reduced vectors and their pivot positions.
    pub fn echelon(self, vectors: &[Vec<u64>]) -> (Vec<Vec<u64>>, Vec<usize>) {
        let mut m = vectors.to_vec();
        let n = m.len();
        let cols = if n == 0 { 0 } else { m[0].len() };
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            let Some(pr) = (r..n).find(|&i| m[i][c] != 0) else { continue };
            m.swap(r, pr);
            let inv = self.inv(m[r][c]);
            for x in m[r].iter_mut() {
                *x = self.mul(*x, inv);
            }
            for i in 0..n {
                if i != r && m[i][c] != 0 {
                    let f = m[i][c];
                    for j in 0..cols {
                        let t = self.mul(f, m[r][j]);
                        m[i][j] = self.sub(m[i][j], t);
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == n {
                break;
            }
        }
        m.truncate(r);
        (m, pivots)
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Smallest prime `p ≡ 1 (mod e)` with `p > 2√order`, i.e. `p² > 4·order`.
pub(crate) fn choose_prime(exponent: u64, order: u64) -> u64 {
    let mut p = exponent + 1;
    loop {
        if is_prime(p) && (p as u128) * (p as u128) > 4 * order as u128 {
            return p;
        }
        p += exponent;
    }
}
