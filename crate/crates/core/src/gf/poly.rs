//! Dense univariate polynomials over `Z_p`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::modp;

/// Polynomial with coefficients low-to-high in `[0, p)`. Trailing zeros are
/// trimmed, so the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Polynomial {
    coeffs: Vec<u32>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// Reduces every coefficient modulo `p`.
    pub fn from_residues(p: u32, coeffs: &[u32]) -> Self {
        Self::new(coeffs.iter().map(|c| c % p).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self { coeffs: vec![1] }
    }

    /// `y`
    pub fn y() -> Self {
        Self { coeffs: vec![0, 1] }
    }

    /// `y^n`
    pub fn monomial(n: usize) -> Self {
        let mut c = vec![0; n + 1];
        c[n] = 1;
        Self { coeffs: c }
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    /// Coefficients below the leading one, i.e. `(c_0, ..., c_{n-1})` of a
    /// monic polynomial.
    pub fn tail(&self) -> &[u32] {
        &self.coeffs[..self.coeffs.len().saturating_sub(1)]
    }

    pub fn add(&self, other: &Self, p: u32) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| modp::add(p, self.coeff(i), other.coeff(i)))
            .collect();
        Self::new(c)
    }

    pub fn sub(&self, other: &Self, p: u32) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| modp::sub(p, self.coeff(i), other.coeff(i)))
            .collect();
        Self::new(c)
    }

    pub fn mul(&self, other: &Self, p: u32) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut acc = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u64 * b as u64) % p as u64;
            }
        }
        Self::new(acc.into_iter().map(|c| c as u32).collect())
    }

    pub fn scale(&self, k: u32, p: u32) -> Self {
        Self::new(self.coeffs.iter().map(|&c| modp::mul(p, c, k)).collect())
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self, p: u32) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = modp::inv(p, divisor.leading()).expect("leading coefficient invertible");
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if nd < dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![0u32; nd - dd + 1];
        for k in (dd..=nd).rev() {
            let t = modp::mul(p, rem[k], lead_inv);
            if t == 0 {
                continue;
            }
            quot[k - dd] = t;
            for (j, &c) in divisor.coeffs.iter().enumerate() {
                let idx = k - dd + j;
                rem[idx] = modp::sub(p, rem[idx], modp::mul(p, t, c));
            }
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem(&self, divisor: &Self, p: u32) -> Self {
        self.div_rem(divisor, p).1
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self, p: u32) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b, p);
            a = b;
            b = r;
        }
        a.make_monic(p)
    }

    pub fn make_monic(&self, p: u32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let s = modp::inv(p, self.leading()).expect("nonzero leading coefficient");
        self.scale(s, p)
    }

    /// `self^exp mod modulus`.
    pub fn pow_mod(&self, mut exp: u64, modulus: &Self, p: u32) -> Self {
        let mut acc = Self::one().rem(modulus, p);
        let mut base = self.rem(modulus, p);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base, p).rem(modulus, p);
            }
            base = base.mul(&base, p).rem(modulus, p);
            exp >>= 1;
        }
        acc
    }

    /// Evaluates at a residue.
    pub fn eval(&self, x: u32, p: u32) -> u32 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| modp::add(p, modp::mul(p, acc, x), c))
    }

    fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match (k, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => f.write_str("y")?,
                (1, c) => write!(f, "{c}y")?,
                (k, 1) => write!(f, "y^{k}")?,
                (k, c) => write!(f, "{c}y^{k}")?,
            }
        }
        Ok(())
    }
}
