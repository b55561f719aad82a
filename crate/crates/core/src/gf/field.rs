use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::irreducible::is_irreducible;
use super::modp::{self, ResidueMatrix};
use super::poly::Polynomial;
use crate::linalg::{root_of_unity, Complex64};
use crate::{Error, Result};

/// Monic defining polynomial `c_0 + c_1 y + ... + c_{l-1} y^{l-1} + y^l`,
/// stored as its lower coefficients `(c_0, ..., c_{l-1})`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IrreduciblePoly {
    coeffs: Vec<u32>,
}

impl IrreduciblePoly {
    /// Irreducibility is only checked when a [`FieldContext`] is built.
    pub fn new(coeffs: Vec<u32>) -> Self {
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// The full monic polynomial.
    pub fn to_polynomial(&self) -> Polynomial {
        let mut c = self.coeffs.clone();
        c.push(1);
        Polynomial::new(c)
    }
}

/// An element of `GF(p^l)`: its components `(a_0, ..., a_{l-1})` in the basis
/// `1, e, ..., e^{l-1}`.
///
/// The derived ordering is lexicographic on the component vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FieldElement {
    coeffs: Vec<u32>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// True when the element lies in the base field `Z_p`.
    pub fn is_base(&self) -> bool {
        self.coeffs.iter().skip(1).all(|&c| c == 0)
    }
}

/// Comma-separated components, low to high (`"1,2"` is `1 + 2e`).
impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Immutable description of `GF(p^l)` together with the inverse Planck
/// constant `h` and every table derived from it.
#[derive(Clone, PartialEq, Debug)]
pub struct FieldContext {
    p: u32,
    ell: usize,
    poly: IrreduciblePoly,
    planck: FieldElement,
    /// Powers `C^0, ..., C^{l-1}` of the Frobenius matrix.
    frob_powers: Vec<ResidueMatrix>,
    /// `Tr(e^k)` for `k < l`.
    trace_basis: Vec<u32>,
    /// `Tr(h e^k)` for `k <= 2l - 2`.
    planck_traces: Vec<u32>,
    gram: ResidueMatrix,
    gram_inv: ResidueMatrix,
    dual_basis: Vec<FieldElement>,
}

impl FieldContext {
    /// Builds `GF(p^l)` from an odd prime `p`, a monic irreducible polynomial
    /// of degree `l` and a nonzero constant `h` given by its components
    /// (shorter slices are padded with zeros).
    pub fn new(p: u32, poly: IrreduciblePoly, planck: &[u32]) -> Result<Self> {
        if p.is_multiple_of(2) || !modp::is_prime(p) {
            return Err(Error::CompositeModulus(p));
        }
        let ell = poly.degree();
        let poly = IrreduciblePoly::new(poly.coeffs.iter().map(|c| c % p).collect());
        if ell == 0 || !is_irreducible(p, &poly.to_polynomial()) {
            return Err(Error::ReduciblePolynomial);
        }
        if planck.len() > ell {
            return Err(Error::ContextMismatch);
        }

        let mut ctx = Self {
            p,
            ell,
            poly,
            planck: FieldElement {
                coeffs: vec![0; ell],
            },
            frob_powers: Vec::new(),
            trace_basis: Vec::new(),
            planck_traces: Vec::new(),
            gram: ResidueMatrix::zeros(ell),
            gram_inv: ResidueMatrix::zeros(ell),
            dual_basis: Vec::new(),
        };
        let planck = ctx.element(planck)?;
        if planck.is_zero() {
            return Err(Error::ZeroPlanck);
        }
        ctx.planck = planck;

        // Column mu of C holds the components of (e^mu)^p.
        let mut frob = ResidueMatrix::zeros(ell);
        for mu in 0..ell {
            let image = ctx.pow(&ctx.epsilon_power(mu), p as u64);
            for kappa in 0..ell {
                frob.set(kappa, mu, image.coeffs[kappa]);
            }
        }
        ctx.frob_powers = (0..ell as u64).map(|k| frob.pow(k, p)).collect();

        ctx.trace_basis = (0..ell)
            .map(|k| {
                let e = ctx.epsilon_power(k);
                let sum = (0..ell).fold(ctx.zero(), |acc, lambda| {
                    ctx.add(&acc, &ctx.frobenius_power(&e, lambda))
                });
                debug_assert!(sum.is_base(), "trace must land in the base field");
                sum.coeffs[0]
            })
            .collect();

        let eps = ctx.epsilon();
        let mut eps_pow = ctx.one();
        for _ in 0..(2 * ell - 1) {
            let t = ctx.trace(&ctx.mul(&ctx.planck, &eps_pow));
            ctx.planck_traces.push(t);
            eps_pow = ctx.mul(&eps_pow, &eps);
        }
        for lambda in 0..ell {
            for kappa in 0..ell {
                ctx.gram
                    .set(lambda, kappa, ctx.planck_traces[lambda + kappa]);
            }
        }
        // The trace form is nondegenerate, so g is invertible whenever h != 0.
        ctx.gram_inv = ctx
            .gram
            .inverse(p)
            .expect("trace form is nondegenerate for nonzero h");
        ctx.dual_basis = (0..ell)
            .map(|kappa| FieldElement {
                coeffs: (0..ell)
                    .map(|lambda| ctx.gram_inv.get(kappa, lambda))
                    .collect(),
            })
            .collect();
        Ok(ctx)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    /// Field size `p^l`.
    pub fn order(&self) -> usize {
        (self.p as usize).pow(self.ell as u32)
    }

    pub fn poly(&self) -> &IrreduciblePoly {
        &self.poly
    }

    /// The inverse Planck constant `h`.
    pub fn planck(&self) -> &FieldElement {
        &self.planck
    }

    /// Frobenius matrix `C`: `(e^mu)^p = sum_k e^k C[k][mu]`.
    pub fn frobenius_matrix(&self) -> &ResidueMatrix {
        &self.frob_powers[1 % self.ell]
    }

    /// `C^lambda`, with `lambda` taken mod `l`.
    pub fn frobenius_matrix_power(&self, lambda: usize) -> &ResidueMatrix {
        &self.frob_powers[lambda % self.ell]
    }

    /// `E_k = Tr(h e^k)` for `k = 0, ..., 2l-2`.
    pub fn planck_traces(&self) -> &[u32] {
        &self.planck_traces
    }

    /// `g[l][k] = E_{l+k}`.
    pub fn gram(&self) -> &ResidueMatrix {
        &self.gram
    }

    /// `G = g^{-1}` over `Z_p`.
    pub fn gram_inverse(&self) -> &ResidueMatrix {
        &self.gram_inv
    }

    /// Dual basis `E_0, ..., E_{l-1}` with `Tr(h e^k E_l) = delta(k, l)`.
    pub fn dual_basis(&self) -> &[FieldElement] {
        &self.dual_basis
    }

    /// Builds an element from residues; values are reduced mod `p` and short
    /// slices are zero-padded.
    pub fn element(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() > self.ell {
            return Err(Error::ContextMismatch);
        }
        let mut c: Vec<u32> = coeffs.iter().map(|x| x % self.p).collect();
        c.resize(self.ell, 0);
        Ok(FieldElement { coeffs: c })
    }

    /// Same as [`element`](Self::element) for signed input (`-1` is `p-1`).
    pub fn element_signed(&self, coeffs: &[i64]) -> Result<FieldElement> {
        let c: Vec<u32> = coeffs.iter().map(|&x| modp::reduce(self.p, x)).collect();
        self.element(&c)
    }

    /// Fails with [`Error::ContextMismatch`] unless `a` belongs to this field.
    pub fn check(&self, a: &FieldElement) -> Result<()> {
        if a.coeffs.len() == self.ell && a.coeffs.iter().all(|&c| c < self.p) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            coeffs: vec![0; self.ell],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_base(1)
    }

    pub fn from_base(&self, k: u32) -> FieldElement {
        let mut c = vec![0; self.ell];
        c[0] = k % self.p;
        FieldElement { coeffs: c }
    }

    /// The generator `e` (a root of the defining polynomial).
    pub fn epsilon(&self) -> FieldElement {
        if self.ell == 1 {
            self.from_base(modp::neg(self.p, self.poly.coeffs[0]))
        } else {
            self.epsilon_power(1)
        }
    }

    /// `e^k` for `k < l`.
    pub fn epsilon_power(&self, k: usize) -> FieldElement {
        let mut c = vec![0; self.ell];
        c[k] = 1;
        FieldElement { coeffs: c }
    }

    /// Basis index `sum a_k p^k` of an element.
    pub fn index_of(&self, a: &FieldElement) -> usize {
        a.coeffs
            .iter()
            .rev()
            .fold(0usize, |acc, &c| acc * self.p as usize + c as usize)
    }

    pub fn element_at(&self, index: usize) -> FieldElement {
        let mut rest = index;
        let coeffs = (0..self.ell)
            .map(|_| {
                let d = (rest % self.p as usize) as u32;
                rest /= self.p as usize;
                d
            })
            .collect();
        FieldElement { coeffs }
    }

    /// All elements in basis-index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order()).map(move |i| self.element_at(i))
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.assert_pair(a, b);
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| modp::add(self.p, x, y))
            .collect();
        FieldElement { coeffs }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.assert_pair(a, b);
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| modp::sub(self.p, x, y))
            .collect();
        FieldElement { coeffs }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        self.sub(&self.zero(), a)
    }

    /// Polynomial product reduced modulo the defining polynomial.
    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.assert_pair(a, b);
        let l = self.ell;
        let p = self.p as u64;
        let mut prod = vec![0u64; 2 * l - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        // e^l = -(c_0 + ... + c_{l-1} e^{l-1})
        for k in (l..2 * l - 1).rev() {
            let t = prod[k];
            if t == 0 {
                continue;
            }
            prod[k] = 0;
            for (j, &c) in self.poly.coeffs.iter().enumerate() {
                let idx = k - l + j;
                prod[idx] = (prod[idx] + (p - t) * c as u64) % p;
            }
        }
        FieldElement {
            coeffs: prod[..l].iter().map(|&c| c as u32).collect(),
        }
    }

    pub fn pow(&self, a: &FieldElement, mut exp: u64) -> FieldElement {
        let mut acc = self.one();
        let mut base = a.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse, `a^{p^l - 2}`.
    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.order() as u64 - 2))
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// `Tr(a) = a + a^p + ... + a^{p^{l-1}}`, a residue in `Z_p`.
    pub fn trace(&self, a: &FieldElement) -> u32 {
        let acc: u64 = a
            .coeffs
            .iter()
            .zip(&self.trace_basis)
            .map(|(&x, &t)| x as u64 * t as u64)
            .sum();
        (acc % self.p as u64) as u32
    }

    /// `Tr(h a)`.
    pub fn planck_trace(&self, a: &FieldElement) -> u32 {
        let acc: u64 = a
            .coeffs
            .iter()
            .zip(&self.planck_traces)
            .map(|(&x, &t)| x as u64 * t as u64)
            .sum();
        (acc % self.p as u64) as u32
    }

    /// `Tr(h a b)`.
    pub fn trace_product(&self, a: &FieldElement, b: &FieldElement) -> u32 {
        self.trace(&self.mul(&self.mul(&self.planck, a), b))
    }

    /// `a^{p^lambda}` via the component action of `C^lambda`.
    pub fn frobenius_power(&self, a: &FieldElement, lambda: usize) -> FieldElement {
        FieldElement {
            coeffs: self
                .frobenius_matrix_power(lambda)
                .mul_vec(&a.coeffs, self.p),
        }
    }

    /// Galois conjugates `a, a^p, a^{p^2}, ...` up to the first repeat.
    pub fn conjugates(&self, a: &FieldElement) -> Vec<FieldElement> {
        let mut orbit = vec![a.clone()];
        loop {
            let next = self.frobenius_power(orbit.last().unwrap(), 1);
            if next == *a {
                return orbit;
            }
            orbit.push(next);
        }
    }

    /// Dual components `Tr(h a e^k)`, i.e. the coordinates of `a` in the dual
    /// basis.
    pub fn dual_components(&self, a: &FieldElement) -> Vec<u32> {
        self.gram.mul_vec(&a.coeffs, self.p)
    }

    /// Inverse of [`dual_components`](Self::dual_components).
    pub fn components_from_dual(&self, dual: &[u32]) -> Result<FieldElement> {
        if dual.len() != self.ell {
            return Err(Error::ContextMismatch);
        }
        let d: Vec<u32> = dual.iter().map(|x| x % self.p).collect();
        Ok(FieldElement {
            coeffs: self.gram_inv.mul_vec(&d, self.p),
        })
    }

    /// Additive character `chi(a) = exp(2 pi i Tr(a) / p)`.
    pub fn character(&self, a: &FieldElement) -> Complex64 {
        root_of_unity(self.p as usize, self.trace(a) as i64)
    }

    /// `p^{-l} sum_n chi(n m - n^{p^lambda} r)`, summed over the whole field.
    pub fn character_sum(&self, m: &FieldElement, r: &FieldElement, lambda: usize) -> Complex64 {
        let total: Complex64 = self
            .elements()
            .map(|n| {
                let arg = self.sub(
                    &self.mul(&n, m),
                    &self.mul(&self.frobenius_power(&n, lambda), r),
                );
                self.character(&arg)
            })
            .sum();
        total / self.order() as f64
    }

    fn assert_pair(&self, a: &FieldElement, b: &FieldElement) {
        assert!(
            a.coeffs.len() == self.ell && b.coeffs.len() == self.ell,
            "{}",
            Error::ContextMismatch
        );
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf9(h: &[u32]) -> FieldContext {
        FieldContext::new(3, IrreduciblePoly::new(vec![2, 1]), h).unwrap()
    }

    #[test]
    fn construction_errors() {
        let poly = || IrreduciblePoly::new(vec![2, 1]);
        assert_eq!(
            FieldContext::new(9, poly(), &[1]),
            Err(Error::CompositeModulus(9))
        );
        assert_eq!(
            FieldContext::new(2, IrreduciblePoly::new(vec![1, 1]), &[1]),
            Err(Error::CompositeModulus(2))
        );
        assert_eq!(
            FieldContext::new(3, poly(), &[0, 0]),
            Err(Error::ZeroPlanck)
        );
        assert_eq!(
            FieldContext::new(3, IrreduciblePoly::new(vec![1, 1]), &[1]),
            Err(Error::ReduciblePolynomial)
        );
        assert_eq!(
            FieldContext::new(3, poly(), &[1, 0, 0]),
            Err(Error::ContextMismatch)
        );
        // y^2 + 1 is irreducible over Z_3.
        assert!(FieldContext::new(3, IrreduciblePoly::new(vec![1, 0]), &[1]).is_ok());
    }

    #[test]
    fn basic_arithmetic() {
        let ctx = gf9(&[1]);
        let a = ctx.element(&[1, 1]).unwrap();
        let b = ctx.element(&[2, 2]).unwrap();
        assert_eq!(ctx.add(&a, &b), ctx.zero());
        assert_eq!(ctx.neg(&a), b);
        assert_eq!(ctx.add(&a, &ctx.zero()), a);
        assert_eq!(ctx.mul(&a, &ctx.one()), a);
        // (1+e)(2e) is the constant term of y^2 + 2y + 2.
        assert_eq!(
            ctx.mul(&a, &ctx.element(&[0, 2]).unwrap()),
            ctx.from_base(2)
        );
        assert_eq!(ctx.pow(&ctx.epsilon(), 8), ctx.one());
        assert_eq!(ctx.inv(&ctx.zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn index_round_trip() {
        let ctx = gf9(&[1]);
        for i in 0..9 {
            assert_eq!(ctx.index_of(&ctx.element_at(i)), i);
        }
        assert_eq!(ctx.index_of(&ctx.element(&[1, 1]).unwrap()), 4);
    }

    #[test]
    fn traces_of_basis() {
        let ctx = gf9(&[1]);
        assert_eq!(ctx.trace(&ctx.one()), 2);
        assert_eq!(ctx.trace(&ctx.epsilon()), 2);
        let e2 = ctx.mul(&ctx.epsilon(), &ctx.epsilon());
        assert_eq!(ctx.trace(&e2), 0);
    }

    #[test]
    fn conjugate_orbits() {
        let ctx = gf9(&[1]);
        let a = ctx.element(&[1, 1]).unwrap();
        assert_eq!(
            ctx.conjugates(&a),
            vec![a.clone(), ctx.element(&[0, 2]).unwrap()]
        );
        assert_eq!(ctx.conjugates(&ctx.from_base(2)), vec![ctx.from_base(2)]);
        assert_eq!(ctx.frobenius_power(&a, 0), a);
        assert_eq!(ctx.frobenius_power(&a, 2), a);
    }

    #[test]
    fn dual_components_examples() {
        let ctx = gf9(&[1]);
        let a = ctx.element(&[1, 1]).unwrap();
        assert_eq!(ctx.dual_components(&a), vec![1, 2]);
        assert_eq!(ctx.dual_components(&ctx.zero()), vec![0, 0]);
        assert_eq!(ctx.components_from_dual(&[1, 2]).unwrap(), a);
        let ctx = gf9(&[1, 1]);
        assert_eq!(ctx.dual_components(&a), vec![0, 1]);
    }

    #[test]
    fn ell_one_field() {
        let ctx = FieldContext::new(5, IrreduciblePoly::new(vec![0]), &[1]).unwrap();
        assert_eq!(ctx.order(), 5);
        for a in ctx.elements() {
            assert_eq!(ctx.trace(&a), a.coeffs()[0]);
            assert_eq!(ctx.conjugates(&a).len(), 1);
        }
    }
}
