//! Analytic representation of `H_A` on the `l`-sheeted extended complex plane.
//!
//! A state `|f> = sum f(lambda, kappa) |X;[m(lambda)]^{p^kappa}>` is mapped to
//! the function `f(z) = sum_lambda d(s, lambda) f(lambda, tau(z)) z^{l lambda}`,
//! where `tau(z)` is the sheet holding `z`. The plane is cut along the rays
//! `arg z = 2 pi kappa / l`; sheet `kappa` is the open sector between cut
//! `kappa` and cut `kappa + 1`. Only odd `s` is supported.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use crate::frobenius::{FrobeniusDecomposition, SUBSPACE_TOL};
use crate::galois::GaloisSystem;
use crate::linalg::{Complex64, StateVector};
use crate::quadrature::GaussLegendre;
use crate::{Error, Result};

/// The `l`-sheeted plane carrying polynomials of degree `< s` in `z^l`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SheetedPlane {
    ell: usize,
    s: usize,
}

impl SheetedPlane {
    pub fn new(ell: usize, s: usize) -> Result<Self> {
        if ell == 0 {
            return Err(Error::InvalidDimension(ell));
        }
        if s.is_multiple_of(2) {
            return Err(Error::EvenS(s));
        }
        Ok(Self { ell, s })
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn s(&self) -> usize {
        self.s
    }

    /// `theta = exp(2 pi i / l)`
    pub fn theta(&self) -> Complex64 {
        Complex64::from_polar(1.0, 2.0 * PI / self.ell as f64)
    }

    /// Angle of cut `kappa`.
    pub fn cut_angle(&self, kappa: usize) -> f64 {
        2.0 * PI * (kappa % self.ell) as f64 / self.ell as f64
    }

    /// `tau(z)`, the integer part of `l arg(z) / 2 pi` with `arg` in `[0, 2 pi)`.
    pub fn sheet_number(&self, z: Complex64) -> Result<usize> {
        if !(z.re.is_finite() && z.im.is_finite()) || z == Complex64::new(0.0, 0.0) {
            return Err(Error::BranchPoint);
        }
        let mut arg = z.im.atan2(z.re);
        if arg < 0.0 {
            arg += 2.0 * PI;
        }
        let x = self.ell as f64 * arg / (2.0 * PI);
        if x == x.floor() {
            return Err(Error::OnCut);
        }
        Ok((x.floor() as usize).min(self.ell - 1))
    }

    /// `d(s, lambda) = sqrt((s-1)! / (lambda! (s-1-lambda)!))`
    pub fn weight(&self, lambda: usize) -> f64 {
        binomial(self.s - 1, lambda).sqrt()
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Side from which a cut is approached.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CutSide {
    /// From sheet `kappa - 1` (clockwise of cut `kappa`).
    Below,
    /// From sheet `kappa` (counter-clockwise of cut `kappa`).
    Above,
}

/// Node counts and tolerance for the numerical scalar product.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct QuadratureSpec {
    /// Gauss-Legendre nodes in `u = |z|^{2l} / (1 + |z|^{2l})` per sheet.
    pub radial: usize,
    /// Midpoint nodes in the angle per sheet.
    pub angular: usize,
    /// Maximum change allowed when both node counts are doubled.
    pub tol: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            radial: 64,
            angular: 64,
            tol: 1e-5,
        }
    }
}

/// Coefficients `f(lambda, kappa)` of a state in `H_A`.
#[derive(Clone, PartialEq, Debug)]
pub struct AnalyticRep {
    plane: SheetedPlane,
    /// Row-major `s x l`.
    coeffs: Vec<Complex64>,
}

impl AnalyticRep {
    /// Panics unless `coeffs.len() == s * l`.
    pub fn from_coefficients(plane: SheetedPlane, coeffs: Vec<Complex64>) -> Self {
        assert_eq!(coeffs.len(), plane.s * plane.ell, "coefficient count");
        Self { plane, coeffs }
    }

    pub fn zero(plane: SheetedPlane) -> Self {
        Self::from_coefficients(plane, vec![Complex64::new(0.0, 0.0); plane.s * plane.ell])
    }

    pub fn plane(&self) -> SheetedPlane {
        self.plane
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, lambda: usize, kappa: usize) -> Complex64 {
        self.coeffs[lambda * self.plane.ell + kappa]
    }

    /// `sum |f(lambda, kappa)|^2`
    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// `a * self + b * other`. Panics if the planes differ.
    pub fn combine(&self, a: Complex64, other: &Self, b: Complex64) -> Self {
        assert_eq!(self.plane, other.plane, "planes differ");
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(x, y)| a * x + b * y)
            .collect();
        Self::from_coefficients(self.plane, coeffs)
    }

    /// `f(z)`. Points on a cut and the branch point `0` are rejected; use
    /// [`evaluate_on_sheet`](Self::evaluate_on_sheet) or
    /// [`cut_limit`](Self::cut_limit) there.
    pub fn evaluate(&self, z: Complex64) -> Result<Complex64> {
        let kappa = self.plane.sheet_number(z)?;
        Ok(self.evaluate_on_sheet(kappa, z))
    }

    /// The polynomial of sheet `kappa` evaluated at `z`, wherever `z` lies.
    pub fn evaluate_on_sheet(&self, kappa: usize, z: Complex64) -> Complex64 {
        let kappa = kappa % self.plane.ell;
        let w = z.powu(self.plane.ell as u32);
        let mut acc = Complex64::new(0.0, 0.0);
        for lambda in (0..self.plane.s).rev() {
            acc = acc * w + self.coeff(lambda, kappa) * self.plane.weight(lambda);
        }
        acc
    }

    /// One-sided limit at `r theta^kappa` on cut `kappa`.
    pub fn cut_limit(&self, kappa: usize, r: f64, side: CutSide) -> Complex64 {
        let ell = self.plane.ell;
        let sheet = match side {
            CutSide::Above => kappa % ell,
            CutSide::Below => (kappa + ell - 1) % ell,
        };
        let z = Complex64::from_polar(r, self.plane.cut_angle(kappa));
        self.evaluate_on_sheet(sheet, z)
    }

    /// `Delta_kappa(z) = sum d(s, lambda) [f(lambda, kappa) - f(lambda, kappa-1)] z^{l lambda}`
    /// at `z = r theta^kappa`.
    pub fn discontinuity(&self, kappa: usize, r: f64) -> Complex64 {
        let ell = self.plane.ell;
        let (k, km) = (kappa % ell, (kappa + ell - 1) % ell);
        // z^{l lambda} = r^{l lambda} on every cut.
        let w = r.powi(ell as i32);
        let mut acc = Complex64::new(0.0, 0.0);
        for lambda in (0..self.plane.s).rev() {
            let jump = self.coeff(lambda, k) - self.coeff(lambda, km);
            acc = acc * w + jump * self.plane.weight(lambda);
        }
        acc
    }

    /// Representation of `G^kappa |f>`: column `k` moves to `k + kappa`. The
    /// result evaluates at `z` to the original at `z theta^{-kappa}`; for
    /// `l = 2` this equals `z theta^kappa`.
    pub fn frobenius_action(&self, kappa: usize) -> Self {
        let ell = self.plane.ell;
        let shift = kappa % ell;
        let mut coeffs = vec![Complex64::new(0.0, 0.0); self.coeffs.len()];
        for lambda in 0..self.plane.s {
            for k in 0..ell {
                coeffs[lambda * ell + (k + shift) % ell] = self.coeff(lambda, k);
            }
        }
        Self::from_coefficients(self.plane, coeffs)
    }

    /// Exact scalar product `sum conj(self) * other` of the coefficients.
    pub fn inner_exact(&self, other: &Self) -> Complex64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// `(s/pi) int conj(self(z)) other(z) (1 + |z|^{2l})^{1-s} d mu_l(z)` by
    /// quadrature at the requested and at doubled resolution. Returns the
    /// finer value.
    pub fn inner_product_numeric(&self, other: &Self, spec: &QuadratureSpec) -> Result<Complex64> {
        assert_eq!(self.plane, other.plane, "planes differ");
        let coarse = self.inner_product_quadrature(other, spec.radial, spec.angular);
        let fine = self.inner_product_quadrature(other, 2 * spec.radial, 2 * spec.angular);
        let difference = (fine - coarse).norm();
        // Written so that a NaN difference also fails.
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(difference <= spec.tol) {
            return Err(Error::QuadratureNotConverged {
                difference,
                tolerance: spec.tol,
            });
        }
        Ok(fine)
    }

    /// A single quadrature evaluation of the scalar product.
    ///
    /// With `u = t / (1 + t)`, `t = |z|^{2l}`, the measure becomes
    /// `(l/2) (1 - u)^{s-1} du dphi` on each sheet.
    pub fn inner_product_quadrature(
        &self,
        other: &Self,
        radial: usize,
        angular: usize,
    ) -> Complex64 {
        let plane = self.plane;
        let ell = plane.ell as f64;
        let rule = GaussLegendre::new(radial);
        let width = 2.0 * PI / ell;
        let h = width / angular as f64;
        let mut total = Complex64::new(0.0, 0.0);
        for kappa in 0..plane.ell {
            let start = plane.cut_angle(kappa);
            for (u, wu) in rule.on_interval(0.0, 1.0) {
                let r = (u / (1.0 - u)).powf(0.5 / ell);
                let radial_weight = wu * (1.0 - u).powi(plane.s as i32 - 1);
                let mut ring = Complex64::new(0.0, 0.0);
                for j in 0..angular {
                    let z = Complex64::from_polar(r, start + (j as f64 + 0.5) * h);
                    ring +=
                        self.evaluate_on_sheet(kappa, z).conj() * other.evaluate_on_sheet(kappa, z);
                }
                total += ring * (radial_weight * h);
            }
        }
        total * (plane.s as f64 / PI * ell / 2.0)
    }
}

/// Reads off `f(lambda, kappa) = <X;[m(lambda)]^{p^kappa}|f>` in the copy
/// subspace bases of `dec`.
pub fn represent(
    sys: &GaloisSystem,
    dec: &FrobeniusDecomposition,
    state: &StateVector,
) -> Result<AnalyticRep> {
    if state.dim() != sys.dim() {
        return Err(Error::InvalidDimension(state.dim()));
    }
    let plane = SheetedPlane::new(dec.ell(), dec.s())?;
    let residual = dec.projector_b().apply(state).norm();
    if residual > SUBSPACE_TOL {
        return Err(Error::StateOutsideHA { residual });
    }
    let subspaces = dec.copy_subspaces(sys.ctx())?;
    let ell = plane.ell;
    let mut coeffs = vec![Complex64::new(0.0, 0.0); plane.s * ell];
    for cs in &subspaces {
        for lambda in 0..plane.s {
            coeffs[lambda * ell + cs.kappa()] = cs.basis_state(lambda).inner(state);
        }
    }
    Ok(AnalyticRep::from_coefficients(plane, coeffs))
}
