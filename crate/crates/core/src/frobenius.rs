//! Frobenius subspaces and transformations.
//!
//! The Frobenius map `m -> m^p` partitions the position labels into orbits of
//! Galois conjugates. For prime `l` there are `s = (p^l - p)/l` orbits of
//! length `l` (spanning `H_A`) and `p` fixed points (spanning `H_B`). The
//! Frobenius transformation `G` cycles each orbit; picking one representative
//! `m(i)` per long orbit gives `s`-dimensional copy subspaces
//! `span{|X;m(0)^{p^k}>, ..., |X;m(s-1)^{p^k}>}`, one per `k < l`, each carrying
//! its own `Z_s` Fourier transform and Heisenberg-Weyl pair `S_k`, `R_k`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::galois::GaloisSystem;
use crate::gf::{is_prime, minimal_polynomial, FieldContext, FieldElement, Polynomial};
use crate::linalg::{root_of_unity, Complex64, Operator, StateVector};
use crate::{Error, Result};

#[allow(unused_imports)]
use num_traits::Float;

/// Projection residual above which a state is treated as leaving a subspace.
pub const SUBSPACE_TOL: f64 = 1e-8;

/// One Galois-conjugacy class `[m, m^p, m^{p^2}, ...]`, starting at its
/// representative.
#[derive(Clone, PartialEq, Debug)]
pub struct Orbit {
    elements: Vec<FieldElement>,
    indices: Vec<usize>,
    minimal_poly: Polynomial,
}

impl Orbit {
    pub fn representative(&self) -> &FieldElement {
        &self.elements[0]
    }

    pub fn elements(&self) -> &[FieldElement] {
        &self.elements
    }

    /// Basis indices of the orbit elements, in orbit order.
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `prod (y - m^{p^k})` over the orbit.
    pub fn minimal_polynomial(&self) -> &Polynomial {
        &self.minimal_poly
    }
}

fn require_prime_ell(ell: usize) -> Result<()> {
    if ell == 1 || is_prime(ell as u32) {
        Ok(())
    } else {
        Err(Error::NonPrimeEll(ell as u32))
    }
}

/// Decomposition of the position basis into Frobenius subspaces.
///
/// Orbits `0..s` are the full-length ones, `s..s+p` the fixed points of `Z_p`
/// in increasing order. An optional unitary `U` rotates every subspace to
/// `span{U|X;m>}`; all operators returned are then `U O U^dagger`.
#[derive(Clone, PartialEq, Debug)]
pub struct FrobeniusDecomposition {
    dim: usize,
    ell: usize,
    s: usize,
    orbits: Vec<Orbit>,
    orbit_of: Vec<usize>,
    rotation: Option<Operator>,
}

/// Canonical decomposition: each representative is the lexicographically
/// smallest component vector of its orbit, and full-length orbits are sorted by
/// representative.
pub fn decompose(sys: &GaloisSystem) -> Result<FrobeniusDecomposition> {
    let ctx = sys.ctx();
    require_prime_ell(ctx.ell())?;
    let mut seen = vec![false; sys.dim()];
    let mut reps = Vec::new();
    for idx in 0..sys.dim() {
        if seen[idx] {
            continue;
        }
        let orbit = ctx.conjugates(&ctx.element_at(idx));
        for m in &orbit {
            seen[ctx.index_of(m)] = true;
        }
        if ctx.ell() > 1 && orbit.len() == ctx.ell() {
            reps.push(orbit.into_iter().min().expect("nonempty orbit"));
        }
    }
    reps.sort();
    build(ctx, &reps)
}

/// Decomposition with caller-chosen representatives `m(0), ..., m(s-1)`, one
/// per full-length orbit, in the given order. This fixes both the orbit labels
/// and the cyclic order of the copy-subspace bases.
pub fn decompose_with_representatives(
    sys: &GaloisSystem,
    representatives: &[FieldElement],
) -> Result<FrobeniusDecomposition> {
    let ctx = sys.ctx();
    require_prime_ell(ctx.ell())?;
    for r in representatives {
        ctx.check(r)?;
    }
    build(ctx, representatives)
}

fn build(ctx: &FieldContext, reps: &[FieldElement]) -> Result<FrobeniusDecomposition> {
    let dim = ctx.order();
    let ell = ctx.ell();
    let p = ctx.p() as usize;
    let expected_s = if ell == 1 { 0 } else { (dim - p) / ell };
    if reps.len() != expected_s {
        return Err(Error::InvalidRepresentatives);
    }
    let mut orbit_of = vec![usize::MAX; dim];
    let mut orbits = Vec::with_capacity(expected_s + p);
    let singles = (0..p as u32).map(|k| ctx.from_base(k));
    for (i, rep) in reps.iter().cloned().chain(singles).enumerate() {
        let elements = ctx.conjugates(&rep);
        let full = i < expected_s;
        if full && elements.len() != ell {
            return Err(Error::InvalidRepresentatives);
        }
        let indices: Vec<usize> = elements.iter().map(|m| ctx.index_of(m)).collect();
        for &j in &indices {
            if orbit_of[j] != usize::MAX {
                return Err(Error::InvalidRepresentatives);
            }
            orbit_of[j] = i;
        }
        orbits.push(Orbit {
            minimal_poly: minimal_polynomial(ctx, &rep),
            elements,
            indices,
        });
    }
    debug_assert!(orbit_of.iter().all(|&o| o != usize::MAX));
    Ok(FrobeniusDecomposition {
        dim,
        ell,
        s: expected_s,
        orbits,
        orbit_of,
        rotation: None,
    })
}

impl FrobeniusDecomposition {
    /// Rotates all subspaces by the unitary `u`.
    pub fn with_rotation(mut self, u: Operator) -> Self {
        assert_eq!(u.dim(), self.dim, "dimension mismatch");
        self.rotation = Some(u);
        self
    }

    pub fn rotation(&self) -> Option<&Operator> {
        self.rotation.as_ref()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    /// Number of full-length orbits.
    pub fn s(&self) -> usize {
        self.s
    }

    pub fn orbits(&self) -> &[Orbit] {
        &self.orbits
    }

    /// Index `i` of the orbit containing the basis state `index`.
    pub fn orbit_of(&self, index: usize) -> usize {
        self.orbit_of[index]
    }

    /// Orbits spanning `H_A`.
    pub fn layer_a(&self) -> &[Orbit] {
        &self.orbits[..self.s]
    }

    /// Orbits spanning `H_B`.
    pub fn layer_b(&self) -> &[Orbit] {
        &self.orbits[self.s..]
    }

    fn frame(&self, op: Operator) -> Operator {
        match &self.rotation {
            Some(u) => op.conjugate_by(u),
            None => op,
        }
    }

    fn projector_onto(&self, indices: impl Iterator<Item = usize>) -> Operator {
        let mut op = Operator::zeros(self.dim);
        for j in indices {
            op.set(j, j, Complex64::new(1.0, 0.0));
        }
        self.frame(op)
    }

    /// `Pi_i`, the projector onto the `i`-th Frobenius subspace.
    pub fn projector(&self, i: usize) -> Operator {
        self.projector_onto(self.orbits[i].indices.iter().copied())
    }

    /// Projector onto `H_A`.
    pub fn projector_a(&self) -> Operator {
        self.projector_onto(
            self.layer_a()
                .iter()
                .flat_map(|o| o.indices.iter().copied()),
        )
    }

    /// Projector onto `H_B`.
    pub fn projector_b(&self) -> Operator {
        self.projector_onto(
            self.layer_b()
                .iter()
                .flat_map(|o| o.indices.iter().copied()),
        )
    }

    /// `G_i = sum_k |X;m^{p^{k+1}}><X;m^{p^k}|`; for a fixed point this is `Pi_i`.
    pub fn g_i(&self, i: usize) -> Operator {
        let idx = &self.orbits[i].indices;
        let mut op = Operator::zeros(self.dim);
        for k in 0..idx.len() {
            op.set(idx[(k + 1) % idx.len()], idx[k], Complex64::new(1.0, 0.0));
        }
        self.frame(op)
    }

    /// `G = sum_i G_i`, sending `|X;m>` to `|X;m^p>`.
    pub fn g_total(&self) -> Operator {
        let mut op = Operator::zeros(self.dim);
        for orbit in &self.orbits {
            let idx = &orbit.indices;
            for k in 0..idx.len() {
                op.set(idx[(k + 1) % idx.len()], idx[k], Complex64::new(1.0, 0.0));
            }
        }
        self.frame(op)
    }

    /// The copy subspaces `H_{X0}, ..., H_{X,l-1}` tiling `H_A`.
    pub fn copy_subspaces(&self, ctx: &FieldContext) -> Result<Vec<CopySubspace>> {
        if self.s < 2 {
            return Err(Error::SubspaceTooSmall(self.s));
        }
        Ok((0..self.ell)
            .map(|kappa| {
                let labels: Vec<FieldElement> = self
                    .layer_a()
                    .iter()
                    .map(|o| o.elements[kappa % o.len()].clone())
                    .collect();
                let indices = labels.iter().map(|m| ctx.index_of(m)).collect();
                CopySubspace {
                    kappa,
                    dim: self.dim,
                    labels,
                    indices,
                    rotation: self.rotation.clone(),
                }
            })
            .collect())
    }
}

/// Residuals of the conjugation identities
/// `G^k X^b G^{-k} = X^{b^{p^k}}`, `G^k Z^a G^{-k} = Z^{a^{p^k} h^{p^k - 1}}`
/// and `G^k D(a,b) G^{-k} = D(a^{p^k} h^{p^k - 1}, b^{p^k})`.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct ConjugationResidual {
    pub x: f64,
    pub z: f64,
    pub d: f64,
}

impl ConjugationResidual {
    pub fn max(&self) -> f64 {
        self.x.max(self.z).max(self.d)
    }

    pub fn holds(&self, tol: f64) -> bool {
        self.max() <= tol
    }
}

/// `a^{p^k} h^{p^k - 1}`, the displacement parameter after conjugation by `G^k`.
pub fn conjugated_alpha(ctx: &FieldContext, alpha: &FieldElement, lambda: usize) -> FieldElement {
    let q = (ctx.p() as u64).pow((lambda % ctx.ell()) as u32);
    let h_pow = ctx.pow(ctx.planck(), q - 1);
    ctx.mul(&ctx.frobenius_power(alpha, lambda), &h_pow)
}

/// Checks the conjugation identities for one `(a, b, k)`.
pub fn verify_conjugation(
    sys: &GaloisSystem,
    dec: &FrobeniusDecomposition,
    alpha: &FieldElement,
    beta: &FieldElement,
    lambda: usize,
) -> ConjugationResidual {
    let ctx = sys.ctx();
    let g = dec.g_total().pow(lambda as u64);
    let alpha2 = conjugated_alpha(ctx, alpha, lambda);
    let beta2 = ctx.frobenius_power(beta, lambda);
    let framed = |op: Operator| dec.frame(op);
    let conj = |op: Operator| framed(op).conjugate_by(&g);

    ConjugationResidual {
        x: conj(sys.x_pow(beta)).max_abs_diff(&framed(sys.x_pow(&beta2))),
        z: conj(sys.z_pow(alpha)).max_abs_diff(&framed(sys.z_pow(&alpha2))),
        d: conj(sys.displacement(alpha, beta))
            .max_abs_diff(&framed(sys.displacement(&alpha2, &beta2))),
    }
}

/// Per-factor parameters after conjugating `D(a_bar_0, b_0) (x) ... ` by `G^k`:
/// `A_mu = sum_j a_bar_j (C^{-k})[j][mu]` and `B_j = sum_mu (C^k)[j][mu] b_mu`.
pub fn conjugated_factor_parameters(
    ctx: &FieldContext,
    alpha: &FieldElement,
    beta: &FieldElement,
    lambda: usize,
) -> (Vec<u32>, Vec<u32>) {
    let ell = ctx.ell();
    let p = ctx.p();
    let dual = ctx.dual_components(alpha);
    let c_inv = ctx.frobenius_matrix_power(ell - lambda % ell);
    let a: Vec<u32> = (0..ell)
        .map(|mu| {
            let acc: u64 = (0..ell)
                .map(|j| dual[j] as u64 * c_inv.get(j, mu) as u64)
                .sum();
            (acc % p as u64) as u32
        })
        .collect();
    let b = ctx.frobenius_matrix_power(lambda).mul_vec(beta.coeffs(), p);
    (a, b)
}

/// `Delta_1(k) = 2 pi i sum_{m<s} m Omega(m k)`, with `Omega = exp(2 pi i / s)`.
pub fn delta1(s: usize, lambda: i64) -> Complex64 {
    let sum: Complex64 = (0..s)
        .map(|m| root_of_unity(s, m as i64 * lambda) * m as f64)
        .sum();
    Complex64::new(0.0, 2.0 * PI) * sum
}

/// The `s`-dimensional copy subspace `span{|X;m(j)^{p^k}>}` for one `k`, with
/// its ordered basis `b_j = |X;m(j)^{p^k}>`.
#[derive(Clone, PartialEq, Debug)]
pub struct CopySubspace {
    kappa: usize,
    dim: usize,
    labels: Vec<FieldElement>,
    indices: Vec<usize>,
    rotation: Option<Operator>,
}

impl CopySubspace {
    /// Sheet index `k`.
    pub fn kappa(&self) -> usize {
        self.kappa
    }

    /// Subspace dimension `s`.
    pub fn s(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[FieldElement] {
        &self.labels
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    /// `Omega^k = exp(2 pi i k / s)`
    pub fn big_omega(&self, k: i64) -> Complex64 {
        root_of_unity(self.s(), k)
    }

    fn frame(&self, op: Operator) -> Operator {
        match &self.rotation {
            Some(u) => op.conjugate_by(u),
            None => op,
        }
    }

    /// Operator `sum_{j,k} m[j][k] |b_j><b_k|`.
    fn embed(&self, entry: impl Fn(usize, usize) -> Complex64) -> Operator {
        let mut op = Operator::zeros(self.dim);
        for (j, &r) in self.indices.iter().enumerate() {
            for (k, &c) in self.indices.iter().enumerate() {
                op.set(r, c, entry(j, k));
            }
        }
        self.frame(op)
    }

    /// Basis state `b_j`.
    pub fn basis_state(&self, j: usize) -> StateVector {
        let v = StateVector::basis(self.dim, self.indices[j]);
        match &self.rotation {
            Some(u) => u.apply(&v),
            None => v,
        }
    }

    /// `Sigma_k`, the projector onto this subspace.
    pub fn projector(&self) -> Operator {
        self.embed(|j, k| {
            if j == k {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    /// `s^{-1/2} sum Omega(j k) |b_j><b_k|`
    pub fn fourier(&self) -> Operator {
        let s = self.s();
        let norm = 1.0 / (s as f64).sqrt();
        self.embed(|j, k| root_of_unity(s, ((j * k) % s) as i64) * norm)
    }

    /// `S = sum_j |b_{j+1}><b_j|`
    pub fn s_op(&self) -> Operator {
        let s = self.s();
        self.embed(|j, k| {
            if j == (k + 1) % s {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    /// `R = sum_j Omega^j |b_j><b_j|`
    pub fn r_op(&self) -> Operator {
        let s = self.s();
        self.embed(|j, k| {
            if j == k {
                root_of_unity(s, j as i64)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    /// Dual state `F_k b_j = s^{-1/2} sum_m Omega(j m) b_m`.
    pub fn dual_state(&self, j: usize) -> Result<StateVector> {
        let s = self.s();
        if j >= s {
            return Err(Error::IndexOutOfRange { index: j, len: s });
        }
        let norm = 1.0 / (s as f64).sqrt();
        let mut amps = vec![Complex64::new(0.0, 0.0); self.dim];
        for (m, &idx) in self.indices.iter().enumerate() {
            amps[idx] = root_of_unity(s, ((j * m) % s) as i64) * norm;
        }
        let v = StateVector::from_amplitudes(amps);
        Ok(match &self.rotation {
            Some(u) => u.apply(&v),
            None => v,
        })
    }

    /// Position operator `r = sum_j j |b_j><b_j|`.
    pub fn position_op(&self) -> Operator {
        self.embed(|j, k| {
            if j == k {
                Complex64::new(j as f64, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    /// Dual position operator `g = F r F^dagger = sum_j j |P_j><P_j|`.
    pub fn momentum_op(&self) -> Operator {
        self.position_op().conjugate_by(&self.fourier())
    }

    /// The same operator written with the kernel
    /// `(2 pi i s)^{-1} Delta_1(j - k) |b_j><b_k|`.
    pub fn momentum_op_kernel(&self) -> Operator {
        let s = self.s();
        let scale = Complex64::new(0.0, 2.0 * PI * s as f64).inv();
        self.embed(|j, k| delta1(s, j as i64 - k as i64) * scale)
    }

    /// `|| psi - Sigma psi ||`
    pub fn projection_residual(&self, state: &StateVector) -> f64 {
        (state - &self.projector().apply(state)).norm()
    }

    /// Stroboscopic evolution `S^N |psi>` for a state supported in this subspace.
    pub fn evolve(&self, state: &StateVector, steps: u64) -> Result<StateVector> {
        let residual = self.projection_residual(state);
        if residual > SUBSPACE_TOL {
            return Err(Error::StateOutsideSubspace { residual });
        }
        Ok(self.s_op().pow(steps).apply(state))
    }
}
