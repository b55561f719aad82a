//! Residue arithmetic in `Z_p` and small matrices over it.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Trial-division primality test.
pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut k = 3u32;
    while (k as u64) * (k as u64) <= n as u64 {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 2;
    }
    true
}

#[inline]
pub fn add(p: u32, a: u32, b: u32) -> u32 {
    ((a as u64 + b as u64) % p as u64) as u32
}

#[inline]
pub fn sub(p: u32, a: u32, b: u32) -> u32 {
    ((a as u64 + p as u64 - (b % p) as u64) % p as u64) as u32
}

#[inline]
pub fn neg(p: u32, a: u32) -> u32 {
    sub(p, 0, a)
}

#[inline]
pub fn mul(p: u32, a: u32, b: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub fn pow(p: u32, mut base: u32, mut exp: u64) -> u32 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul(p, acc, base);
        }
        base = mul(p, base, base);
        exp >>= 1;
    }
    acc
}

/// Inverse modulo a prime; `None` for zero.
pub fn inv(p: u32, a: u32) -> Option<u32> {
    if a.is_multiple_of(p) {
        None
    } else {
        Some(pow(p, a, p as u64 - 2))
    }
}

/// Reduces a signed integer to its canonical residue.
pub fn reduce(p: u32, a: i64) -> u32 {
    a.rem_euclid(p as i64) as u32
}

/// Square matrix with entries in `Z_p`, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ResidueMatrix {
    n: usize,
    entries: Vec<u32>,
}

impl ResidueMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            entries: vec![0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from rows. Panics if the rows are ragged.
    pub fn from_rows(rows: &[Vec<u32>]) -> Self {
        let n = rows.len();
        let mut m = Self::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "ragged residue matrix");
            m.entries[i * n..(i + 1) * n].copy_from_slice(row);
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> u32 {
        self.entries[row * self.n + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: u32) {
        self.entries[row * self.n + col] = value;
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.entries
            .chunks(self.n.max(1))
            .map(|r| r.to_vec())
            .collect()
    }

    pub fn mul(&self, other: &Self, p: u32) -> Self {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0u64;
                for k in 0..n {
                    acc += self.get(i, k) as u64 * other.get(k, j) as u64;
                }
                out.set(i, j, (acc % p as u64) as u32);
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32], p: u32) -> Vec<u32> {
        assert_eq!(self.n, v.len());
        (0..self.n)
            .map(|i| {
                let acc: u64 = (0..self.n)
                    .map(|k| self.get(i, k) as u64 * v[k] as u64)
                    .sum();
                (acc % p as u64) as u32
            })
            .collect()
    }

    pub fn pow(&self, mut exp: u64, p: u32) -> Self {
        let mut acc = Self::identity(self.n);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base, p);
            }
            base = base.mul(&base, p);
            exp >>= 1;
        }
        acc
    }

    /// Gauss-Jordan inverse over `Z_p`; `None` when singular.
    pub fn inverse(&self, p: u32) -> Option<Self> {
        let n = self.n;
        let mut a = self.clone();
        let mut b = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| a.get(r, col) != 0)?;
            if pivot != col {
                for k in 0..n {
                    let (x, y) = (a.get(col, k), a.get(pivot, k));
                    a.set(col, k, y);
                    a.set(pivot, k, x);
                    let (x, y) = (b.get(col, k), b.get(pivot, k));
                    b.set(col, k, y);
                    b.set(pivot, k, x);
                }
            }
            let s = inv(p, a.get(col, col))?;
            for k in 0..n {
                a.set(col, k, mul(p, a.get(col, k), s));
                b.set(col, k, mul(p, b.get(col, k), s));
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a.get(r, col);
                if f == 0 {
                    continue;
                }
                for k in 0..n {
                    a.set(r, k, sub(p, a.get(r, k), mul(p, f, a.get(col, k))));
                    b.set(r, k, sub(p, b.get(r, k), mul(p, f, b.get(col, k))));
                }
            }
        }
        Some(b)
    }
}

impl fmt::Debug for ResidueMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}
