//! The Galois quantum system: a `p^l`-dimensional Hilbert space whose
//! position and momentum labels are elements of `GF(p^l)`.
//!
//! Position state `|X;m>` is basis vector `index_of(m) = sum m_k p^k`, which is
//! the tensor product `|m_0> (x) ... (x) |m_{l-1}>` with factor 0 carrying the
//! least significant digit. The Fourier transform pairs labels through the
//! trace, `F = p^{-l/2} sum omega[Tr(h m n)] |X;m><X;n|` with
//! `omega = exp(2 pi i / p)`, so it differs from the tensor power of the
//! `Z_p` transform as soon as `l > 1`.

use alloc::vec::Vec;

use crate::gf::{FieldContext, FieldElement};
use crate::linalg::{root_of_unity, Complex64, Operator, StateVector};
use crate::{zd, Result};

#[allow(unused_imports)]
use num_traits::Float;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Basis {
    Position,
    Momentum,
}

/// Operator diagonal in the position or momentum basis whose spectrum is a
/// field-valued label map. The eigenvalues stay symbolic: an element of
/// `GF(p^l)` has no canonical complex value.
#[derive(Clone, PartialEq, Debug)]
pub struct FieldDiagonalOperator {
    basis: Basis,
    eigenvalues: Vec<FieldElement>,
}

impl FieldDiagonalOperator {
    pub fn basis(&self) -> Basis {
        self.basis
    }

    /// Eigenvalue on the basis state with the given index.
    pub fn eigenvalue(&self, index: usize) -> &FieldElement {
        &self.eigenvalues[index]
    }

    pub fn eigenvalues(&self) -> &[FieldElement] {
        &self.eigenvalues
    }

    /// Field weights of the per-factor `Z_p` operators: `e^k` for position,
    /// the dual basis `E_k` for momentum.
    pub fn factor_weights(&self, ctx: &FieldContext) -> Vec<FieldElement> {
        match self.basis {
            Basis::Position => (0..ctx.ell()).map(|k| ctx.epsilon_power(k)).collect(),
            Basis::Momentum => ctx.dual_basis().to_vec(),
        }
    }

    /// Checks `m^{p^l} = m` for every eigenvalue.
    pub fn satisfies_field_identity(&self, ctx: &FieldContext) -> bool {
        let q = ctx.order() as u64;
        self.eigenvalues.iter().all(|m| ctx.pow(m, q) == *m)
    }

    /// Complex operator `f(self)` obtained by applying `f` to each eigenvalue.
    pub fn map_to_operator(
        &self,
        sys: &GaloisSystem,
        f: impl Fn(&FieldElement) -> Complex64,
    ) -> Operator {
        let diag: Vec<Complex64> = self.eigenvalues.iter().map(f).collect();
        let d = Operator::diagonal(&diag);
        match self.basis {
            Basis::Position => d,
            Basis::Momentum => d.conjugate_by(&sys.fourier()),
        }
    }
}

/// Quantum system of dimension `p^l` with `GF(p^l)`-labelled bases.
#[derive(Clone, PartialEq, Debug)]
pub struct GaloisSystem {
    ctx: FieldContext,
}

impl GaloisSystem {
    pub fn new(ctx: FieldContext) -> Self {
        Self { ctx }
    }

    pub fn ctx(&self) -> &FieldContext {
        &self.ctx
    }

    pub fn dim(&self) -> usize {
        self.ctx.order()
    }

    pub fn index_of(&self, m: &FieldElement) -> usize {
        self.ctx.index_of(m)
    }

    pub fn label_at(&self, index: usize) -> FieldElement {
        self.ctx.element_at(index)
    }

    /// `omega^k` with `omega = exp(2 pi i / p)`.
    pub fn omega(&self, k: i64) -> Complex64 {
        root_of_unity(self.ctx.p() as usize, k)
    }

    /// `|X;m>`
    pub fn position_state(&self, m: &FieldElement) -> StateVector {
        StateVector::basis(self.dim(), self.index_of(m))
    }

    /// `F = p^{-l/2} sum_{m,n} omega[Tr(h m n)] |X;m><X;n|`
    pub fn fourier(&self) -> Operator {
        let d = self.dim();
        let norm = 1.0 / (d as f64).sqrt();
        let labels: Vec<FieldElement> = self.ctx.elements().collect();
        Operator::from_fn(d, |r, c| {
            self.omega(self.ctx.trace_product(&labels[r], &labels[c]) as i64) * norm
        })
    }

    /// The `l`-fold tensor power of the `Z_p` Fourier transform.
    pub fn tensor_fourier(&self) -> Operator {
        let single = zd::fourier(self.ctx.p() as usize).expect("p >= 3");
        let factors: Vec<Operator> = (0..self.ctx.ell()).map(|_| single.clone()).collect();
        Operator::tensor_digits(&factors)
    }

    /// `|P;m> = F |X;m>`
    pub fn momentum_state(&self, m: &FieldElement) -> StateVector {
        let d = self.dim();
        let norm = 1.0 / (d as f64).sqrt();
        let amps = self
            .ctx
            .elements()
            .map(|n| self.omega(self.ctx.trace_product(m, &n) as i64) * norm)
            .collect();
        StateVector::from_amplitudes(amps)
    }

    /// Position operator as a field-valued diagonal map.
    pub fn x_hat(&self) -> FieldDiagonalOperator {
        FieldDiagonalOperator {
            basis: Basis::Position,
            eigenvalues: self.ctx.elements().collect(),
        }
    }

    /// Momentum operator `F x F^dagger`: `|P;m>` has eigenvalue `m`.
    pub fn p_hat(&self) -> FieldDiagonalOperator {
        FieldDiagonalOperator {
            basis: Basis::Momentum,
            eigenvalues: self.ctx.elements().collect(),
        }
    }

    /// `Z^a = sum_n omega[Tr(h a n)] |X;n><X;n|`
    pub fn z_pow(&self, alpha: &FieldElement) -> Operator {
        let diag: Vec<Complex64> = self
            .ctx
            .elements()
            .map(|n| self.omega(self.ctx.trace_product(alpha, &n) as i64))
            .collect();
        Operator::diagonal(&diag)
    }

    /// `X^b = sum_n omega[-Tr(h b n)] |P;n><P;n|`, which acts as the shift
    /// `|X;m> -> |X;m+b>`.
    pub fn x_pow(&self, beta: &FieldElement) -> Operator {
        let ctx = &self.ctx;
        Operator::permutation(self.dim(), |j| {
            ctx.index_of(&ctx.add(&ctx.element_at(j), beta))
        })
    }

    /// `D(a, b) = Z^a X^b omega[-2^{-1} Tr(h a b)]`
    pub fn displacement(&self, alpha: &FieldElement, beta: &FieldElement) -> Operator {
        let p = self.ctx.p() as i64;
        let half = (p + 1) / 2;
        let t = self.ctx.trace_product(alpha, beta) as i64;
        let phase = self.omega(-(half * t % p));
        self.z_pow(alpha).matmul(&self.x_pow(beta)).scale(phase)
    }

    /// `D(a_bar_0, b_0) (x) ... (x) D(a_bar_{l-1}, b_{l-1})` built from `Z_p`
    /// displacements, with `a_bar` the dual components of `a`.
    pub fn displacement_tensor(
        &self,
        alpha: &FieldElement,
        beta: &FieldElement,
    ) -> Result<Operator> {
        let p = self.ctx.p() as usize;
        let dual = self.ctx.dual_components(alpha);
        let factors = dual
            .iter()
            .zip(beta.coeffs())
            .map(|(&a, &b)| zd::displacement(p, a as i64, b as i64))
            .collect::<Result<Vec<_>>>()?;
        Ok(Operator::tensor_digits(&factors))
    }
}
