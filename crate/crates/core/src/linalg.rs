//! Dense complex matrices and state vectors.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::ops::{Add, Mul, Sub};

// Unused whenever std is linked into the build, since its inherent float
// methods take precedence.
#[allow(unused_imports)]
use num_traits::Float;

pub use num_complex::Complex64;

/// `exp(2 pi i k / n)`, with `k` reduced mod `n` first so that equal residues
/// give bit-identical values.
pub fn root_of_unity(n: usize, k: i64) -> Complex64 {
    let k = k.rem_euclid(n as i64);
    let theta = 2.0 * PI * k as f64 / n as f64;
    Complex64::new(theta.cos(), theta.sin())
}

/// Pure state or intermediate vector in a `d`-dimensional Hilbert space.
#[derive(Clone, PartialEq, Debug)]
pub struct StateVector {
    amps: Vec<Complex64>,
}

impl StateVector {
    pub fn zeros(dim: usize) -> Self {
        Self {
            amps: vec![Complex64::new(0.0, 0.0); dim],
        }
    }

    /// The `index`-th standard basis vector. Panics when out of range.
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.amps[index] = Complex64::new(1.0, 0.0);
        v
    }

    pub fn from_amplitudes(amps: Vec<Complex64>) -> Self {
        Self { amps }
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm();
        self.scale(Complex64::new(1.0 / n, 0.0))
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>() - 1.0).abs() <= tol
    }

    /// `<self|other>`, antilinear in `self`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            amps: self.amps.iter().map(|a| a * c).collect(),
        }
    }

    pub fn kron(&self, other: &Self) -> Self {
        let mut amps = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        Self { amps }
    }

    /// Tensor product where `factors[k]` carries base-`p` digit `k` of the
    /// index (factor 0 least significant).
    pub fn tensor_digits(factors: &[StateVector]) -> Self {
        let mut iter = factors.iter().rev();
        let first = iter.next().expect("at least one factor").clone();
        iter.fold(first, |acc, f| acc.kron(f))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl Add for &StateVector {
    type Output = StateVector;

    fn add(self, rhs: Self) -> StateVector {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        StateVector {
            amps: self
                .amps
                .iter()
                .zip(&rhs.amps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &StateVector {
    type Output = StateVector;

    fn sub(self, rhs: Self) -> StateVector {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        StateVector {
            amps: self
                .amps
                .iter()
                .zip(&rhs.amps)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

/// Dense `d x d` complex matrix, row-major.
#[derive(Clone, PartialEq, Debug)]
pub struct Operator {
    dim: usize,
    data: Vec<Complex64>,
}

impl Operator {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |r, c| {
            if r == c {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                data.push(f(r, c));
            }
        }
        Self { dim, data }
    }

    /// Diagonal matrix with the given entries.
    pub fn diagonal(diag: &[Complex64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }

    /// Permutation matrix sending basis vector `j` to `target(j)`.
    pub fn permutation(dim: usize, target: impl Fn(usize) -> usize) -> Self {
        let mut m = Self::zeros(dim);
        for j in 0..dim {
            m.set(target(j), j, Complex64::new(1.0, 0.0));
        }
        m
    }

    /// `|a><b|`
    pub fn outer(a: &StateVector, b: &StateVector) -> Self {
        let dim = a.dim();
        assert_eq!(dim, b.dim(), "dimension mismatch");
        Self::from_fn(dim, |r, c| a.amplitudes()[r] * b.amplitudes()[c].conj())
    }

    /// Row-major entries.
    pub fn from_entries(dim: usize, data: Vec<Complex64>) -> Self {
        assert_eq!(data.len(), dim * dim, "entry count must be dim^2");
        Self { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.data[row * self.dim + col] = value;
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self.get(c, r).conj())
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let row = &other.data[k * n..(k + 1) * n];
                let dst = &mut out.data[i * n..(i + 1) * n];
                for (d, b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &StateVector) -> StateVector {
        assert_eq!(self.dim, v.dim(), "dimension mismatch");
        let n = self.dim;
        let amps = (0..n)
            .map(|r| {
                self.data[r * n..(r + 1) * n]
                    .iter()
                    .zip(v.amplitudes())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect();
        StateVector::from_amplitudes(amps)
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut acc = Self::identity(self.dim);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.matmul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.matmul(&base);
            }
        }
        acc
    }

    pub fn kron(&self, other: &Self) -> Self {
        let (n, m) = (self.dim, other.dim);
        Self::from_fn(n * m, |r, c| {
            self.get(r / m, c / m) * other.get(r % m, c % m)
        })
    }

    /// Tensor product where `factors[k]` acts on base-`p` digit `k` of the
    /// index (factor 0 least significant).
    pub fn tensor_digits(factors: &[Operator]) -> Self {
        let mut iter = factors.iter().rev();
        let first = iter.next().expect("at least one factor").clone();
        iter.fold(first, |acc, f| acc.kron(f))
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Hilbert-Schmidt inner product `Tr(self^dagger other)`.
    pub fn hs_inner(&self, other: &Self) -> Complex64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// `self other - other self`
    pub fn commutator(&self, other: &Self) -> Self {
        &self.matmul(other) - &other.matmul(self)
    }

    /// Unitary conjugation `u self u^dagger`.
    pub fn conjugate_by(&self, u: &Self) -> Self {
        u.matmul(self).matmul(&u.adjoint())
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|a| a.norm()).fold(0.0, f64::max)
    }

    /// `max |U U^dagger - I|`.
    pub fn unitarity_residual(&self) -> f64 {
        self.matmul(&self.adjoint())
            .max_abs_diff(&Self::identity(self.dim))
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_residual() <= tol
    }
}

impl Add for &Operator {
    type Output = Operator;

    fn add(self, rhs: Self) -> Operator {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        Operator {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &Operator {
    type Output = Operator;

    fn sub(self, rhs: Self) -> Operator {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        Operator {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &Operator {
    type Output = Operator;

    fn mul(self, rhs: Self) -> Operator {
        self.matmul(rhs)
    }
}

impl Mul<&StateVector> for &Operator {
    type Output = StateVector;

    fn mul(self, rhs: &StateVector) -> StateVector {
        self.apply(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn kron_index_layout() {
        let a = Operator::from_entries(2, vec![c(1., 0.), c(2., 0.), c(3., 0.), c(4., 0.)]);
        let b = Operator::identity(2);
        let k = a.kron(&b);
        assert_eq!(k.get(0, 2), c(2., 0.));
        assert_eq!(k.get(3, 1), c(3., 0.));
        assert_eq!(k.get(1, 0), c(0., 0.));
    }

    #[test]
    fn tensor_digits_puts_factor_zero_last() {
        let s0 = StateVector::basis(3, 1);
        let s1 = StateVector::basis(3, 2);
        // index = 1 + 2 * 3
        assert_eq!(
            StateVector::tensor_digits(&[s0, s1]),
            StateVector::basis(9, 7)
        );
    }

    #[test]
    fn pow_and_permutation() {
        let shift = Operator::permutation(5, |j| (j + 1) % 5);
        assert!(shift.pow(5).max_abs_diff(&Operator::identity(5)) == 0.0);
        assert!(shift.is_unitary(1e-12));
        assert_eq!(
            shift.apply(&StateVector::basis(5, 4)),
            StateVector::basis(5, 0)
        );
    }

    #[test]
    fn roots_of_unity_reduce_argument() {
        assert_eq!(root_of_unity(3, -1), root_of_unity(3, 2));
        assert!((root_of_unity(4, 1) - c(0., 1.)).norm() < 1e-15);
    }
}
