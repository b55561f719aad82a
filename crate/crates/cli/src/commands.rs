//! One function per subcommand. Each returns a serializable document or a
//! [`Table`]; rendering and exit codes are left to the caller.

use std::f64::consts::PI;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use galois_quantum::analytic::{represent, AnalyticRep, QuadratureSpec};
use galois_quantum::frobenius::{
    decompose, decompose_with_representatives, verify_conjugation, CopySubspace,
    FrobeniusDecomposition,
};
use galois_quantum::galois::GaloisSystem;
use galois_quantum::gf::{
    enumerate_irreducibles, field_polynomial, FieldContext, FieldElement, IrreduciblePoly,
    Polynomial,
};
use galois_quantum::{zd, Complex64, Error, Operator, StateVector};

use crate::format::{Cell, MatrixDoc, Num, StateDoc, Table};
use crate::spec::{element_from, SystemSpec};
use crate::CliError;

/// Build the field and wrap it as a quantum system.
pub fn system(spec: &SystemSpec) -> Result<GaloisSystem, CliError> {
    Ok(GaloisSystem::new(spec.context()?))
}

fn element(ctx: &FieldContext, what: &str, coeffs: &[u32]) -> Result<FieldElement, CliError> {
    element_from(ctx, coeffs).map_err(|m| CliError::Usage(format!("{what}: {m}")))
}

/// Canonical decomposition, or the one fixed by explicit representatives.
pub fn decomposition(
    sys: &GaloisSystem,
    reps: Option<&[Vec<u32>]>,
) -> Result<FrobeniusDecomposition, CliError> {
    Ok(match reps {
        None => decompose(sys)?,
        Some(reps) => {
            let reps = reps
                .iter()
                .map(|c| element(sys.ctx(), "--reps", c))
                .collect::<Result<Vec<_>, _>>()?;
            decompose_with_representatives(sys, &reps)?
        }
    })
}

fn copy_subspace(
    sys: &GaloisSystem,
    dec: &FrobeniusDecomposition,
    kappa: usize,
) -> Result<CopySubspace, CliError> {
    let mut subspaces = dec.copy_subspaces(sys.ctx())?;
    let len = subspaces.len();
    if kappa >= len {
        return Err(Error::IndexOutOfRange { index: kappa, len }.into());
    }
    Ok(subspaces.swap_remove(kappa))
}

fn coeff_rows(elements: &[FieldElement]) -> Vec<Vec<u32>> {
    elements.iter().map(|e| e.coeffs().to_vec()).collect()
}

// ---------------------------------------------------------------- field-table

/// Everything derived from `(p, poly, h)`; integer-valued, so it round-trips
/// exactly through JSON.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct FieldTable {
    pub p: u32,
    pub ell: usize,
    pub poly: Vec<u32>,
    pub h: Vec<u32>,
    pub order: usize,
    /// Column `mu` holds the components of `(e^mu)^p`.
    pub frobenius_matrix: Vec<Vec<u32>>,
    /// `Tr(h e^k)` for `k = 0, ..., 2l - 2`.
    pub planck_traces: Vec<u32>,
    pub gram: Vec<Vec<u32>>,
    pub gram_inverse: Vec<Vec<u32>>,
    pub dual_basis: Vec<Vec<u32>>,
    pub elements: Vec<ElementRow>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ElementRow {
    pub index: usize,
    pub coeffs: Vec<u32>,
    pub conjugates: Vec<Vec<u32>>,
    pub trace: u32,
    pub planck_trace: u32,
    pub dual: Vec<u32>,
}

impl FieldTable {
    pub fn from_context(ctx: &FieldContext) -> Self {
        FieldTable {
            p: ctx.p(),
            ell: ctx.ell(),
            poly: ctx.poly().coeffs().to_vec(),
            h: ctx.planck().coeffs().to_vec(),
            order: ctx.order(),
            frobenius_matrix: ctx.frobenius_matrix().rows(),
            planck_traces: ctx.planck_traces().to_vec(),
            gram: ctx.gram().rows(),
            gram_inverse: ctx.gram_inverse().rows(),
            dual_basis: coeff_rows(ctx.dual_basis()),
            elements: ctx
                .elements()
                .enumerate()
                .map(|(index, m)| ElementRow {
                    index,
                    coeffs: m.coeffs().to_vec(),
                    conjugates: coeff_rows(&ctx.conjugates(&m)),
                    trace: ctx.trace(&m),
                    planck_trace: ctx.planck_trace(&m),
                    dual: ctx.dual_components(&m),
                })
                .collect(),
        }
    }

    /// Rebuilds the field from `(p, poly, h)` and checks that every derived
    /// entry agrees.
    pub fn to_context(&self) -> Result<FieldContext, CliError> {
        if self.poly.len() != self.ell {
            return Err(CliError::InconsistentTable(format!(
                "ell = {} but poly has {} coefficients",
                self.ell,
                self.poly.len()
            )));
        }
        let ctx = FieldContext::new(self.p, IrreduciblePoly::new(self.poly.clone()), &self.h)?;
        let rebuilt = FieldTable::from_context(&ctx);
        let checks: [(&str, bool); 9] = [
            ("h", rebuilt.h == self.h),
            ("order", rebuilt.order == self.order),
            (
                "frobenius_matrix",
                rebuilt.frobenius_matrix == self.frobenius_matrix,
            ),
            ("planck_traces", rebuilt.planck_traces == self.planck_traces),
            ("gram", rebuilt.gram == self.gram),
            ("gram_inverse", rebuilt.gram_inverse == self.gram_inverse),
            ("dual_basis", rebuilt.dual_basis == self.dual_basis),
            ("elements", rebuilt.elements == self.elements),
            ("p", rebuilt.p == self.p),
        ];
        match checks.iter().find(|(_, ok)| !ok) {
            Some((name, _)) => Err(CliError::InconsistentTable(format!(
                "{name} does not match"
            ))),
            None => Ok(ctx),
        }
    }

    pub fn parse(text: &str) -> Result<FieldContext, CliError> {
        let table: FieldTable = serde_json::from_str(text).map_err(|e| CliError::Input {
            what: "field table".into(),
            message: e.to_string(),
        })?;
        table.to_context()
    }
}

pub fn field_table(spec: &SystemSpec) -> Result<FieldTable, CliError> {
    Ok(FieldTable::from_context(&spec.context()?))
}

// -------------------------------------------------------------- irreducibles

/// A polynomial as its full coefficient list (low to high) and as text.
#[derive(Serialize, Debug)]
pub struct PolyDoc {
    pub coeffs: Vec<u32>,
    pub text: String,
}

impl PolyDoc {
    pub fn new(f: &Polynomial) -> Self {
        PolyDoc {
            coeffs: f.coeffs().to_vec(),
            text: f.to_string(),
        }
    }
}

#[derive(Serialize, Debug)]
pub struct IrreduciblesDoc {
    pub p: u32,
    pub ell: usize,
    pub s: usize,
    pub count: usize,
    pub top: Vec<PolyDoc>,
    pub linear: Vec<PolyDoc>,
    /// Whether the product of all of them is `y^{p^l} - y`.
    pub product_is_field_polynomial: bool,
}

impl IrreduciblesDoc {
    pub fn to_table(&self) -> Table {
        let mut t = Table::new(&["degree", "coeffs", "text"]);
        for f in self.top.iter().chain(&self.linear) {
            let coeffs: Vec<String> = f.coeffs.iter().map(u32::to_string).collect();
            t.push(vec![
                Cell::Int(f.coeffs.len() as i64 - 1),
                Cell::Text(coeffs.join(",")),
                Cell::Text(f.text.clone()),
            ]);
        }
        t
    }
}

pub fn irreducibles(p: u32, ell: usize) -> Result<IrreduciblesDoc, CliError> {
    let set = enumerate_irreducibles(p, ell)?;
    Ok(IrreduciblesDoc {
        p,
        ell,
        s: set.s(),
        count: set.top.len() + set.linear.len(),
        top: set.top.iter().map(PolyDoc::new).collect(),
        linear: set.linear.iter().map(PolyDoc::new).collect(),
        product_is_field_polynomial: set.product() == field_polynomial(p, ell),
    })
}

// ------------------------------------------------------------------ operator

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OperatorKind {
    /// Field Fourier transform.
    #[value(name = "F")]
    F,
    /// Tensor power of the `Z_p` Fourier transform.
    #[value(name = "tensorF")]
    TensorF,
    /// Clock `Z^alpha`.
    #[value(name = "Z")]
    Z,
    /// Shift `X^beta`.
    #[value(name = "X")]
    X,
    /// Displacement `D(alpha, beta)`.
    #[value(name = "D")]
    D,
    /// Frobenius operator, or its block on one orbit with `--orbit`.
    #[value(name = "G")]
    G,
    /// Cyclic shift on copy subspace `kappa`.
    #[value(name = "S")]
    S,
    /// Clock on copy subspace `kappa`.
    #[value(name = "R")]
    R,
    /// Position operator on copy subspace `kappa`.
    #[value(name = "r")]
    SubPosition,
    /// Momentum operator on copy subspace `kappa`.
    #[value(name = "g")]
    SubMomentum,
    /// Fourier transform on copy subspace `kappa`.
    #[value(name = "Fsub")]
    Fsub,
}

#[derive(Clone, Debug, Default)]
pub struct OperatorParams {
    pub alpha: Vec<u32>,
    pub beta: Vec<u32>,
    pub kappa: usize,
    pub orbit: Option<usize>,
    pub reps: Option<Vec<Vec<u32>>>,
}

pub fn operator(
    spec: &SystemSpec,
    kind: OperatorKind,
    params: &OperatorParams,
) -> Result<MatrixDoc, CliError> {
    let sys = system(spec)?;
    let ctx = sys.ctx();
    let alpha = element(ctx, "--alpha", &params.alpha)?;
    let beta = element(ctx, "--beta", &params.beta)?;
    let sub = |name: &str, f: fn(&CopySubspace) -> Operator| -> Result<MatrixDoc, CliError> {
        let dec = decomposition(&sys, params.reps.as_deref())?;
        let cs = copy_subspace(&sys, &dec, params.kappa)?;
        Ok(MatrixDoc::new(
            format!("{name} kappa={}", params.kappa),
            &f(&cs),
        ))
    };
    Ok(match kind {
        OperatorKind::F => MatrixDoc::new("F", &sys.fourier()),
        OperatorKind::TensorF => MatrixDoc::new("tensorF", &sys.tensor_fourier()),
        OperatorKind::Z => MatrixDoc::new(format!("Z alpha={alpha}"), &sys.z_pow(&alpha)),
        OperatorKind::X => MatrixDoc::new(format!("X beta={beta}"), &sys.x_pow(&beta)),
        OperatorKind::D => MatrixDoc::new(
            format!("D alpha={alpha} beta={beta}"),
            &sys.displacement(&alpha, &beta),
        ),
        OperatorKind::G => {
            let dec = decomposition(&sys, params.reps.as_deref())?;
            match params.orbit {
                None => MatrixDoc::new("G", &dec.g_total()),
                Some(i) if i < dec.orbits().len() => {
                    MatrixDoc::new(format!("G orbit={i}"), &dec.g_i(i))
                }
                Some(i) => {
                    let len = dec.orbits().len();
                    return Err(Error::IndexOutOfRange { index: i, len }.into());
                }
            }
        }
        OperatorKind::S => sub("S", CopySubspace::s_op)?,
        OperatorKind::R => sub("R", CopySubspace::r_op)?,
        OperatorKind::SubPosition => sub("r", CopySubspace::position_op)?,
        OperatorKind::SubMomentum => sub("g", CopySubspace::momentum_op)?,
        OperatorKind::Fsub => sub("Fsub", CopySubspace::fourier)?,
    })
}

// ---------------------------------------------------------------- frobenius

#[derive(Serialize, Debug)]
pub struct OrbitDoc {
    pub index: usize,
    /// `A` for full-length orbits, `B` for the fixed points of `Z_p`.
    pub layer: &'static str,
    pub representative: Vec<u32>,
    pub elements: Vec<Vec<u32>>,
    pub indices: Vec<usize>,
    pub minimal_polynomial: PolyDoc,
}

#[derive(Serialize, Debug)]
pub struct CopySubspaceDoc {
    pub kappa: usize,
    pub labels: Vec<Vec<u32>>,
    pub indices: Vec<usize>,
}

#[derive(Serialize, Debug)]
pub struct FrobeniusOperators {
    pub g: MatrixDoc,
    pub g_i: Vec<MatrixDoc>,
}

#[derive(Serialize, Debug)]
pub struct FrobeniusDoc {
    pub spec: String,
    pub s: usize,
    pub orbits: Vec<OrbitDoc>,
    pub copy_subspaces: Vec<CopySubspaceDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub operators: Option<FrobeniusOperators>,
}

pub fn frobenius(
    spec: &SystemSpec,
    reps: Option<&[Vec<u32>]>,
    emit_operators: bool,
) -> Result<FrobeniusDoc, CliError> {
    let sys = system(spec)?;
    let dec = decomposition(&sys, reps)?;
    let s = dec.s();
    let orbits = dec
        .orbits()
        .iter()
        .enumerate()
        .map(|(index, o)| OrbitDoc {
            index,
            layer: if index < s { "A" } else { "B" },
            representative: o.representative().coeffs().to_vec(),
            elements: coeff_rows(o.elements()),
            indices: o.indices().to_vec(),
            minimal_polynomial: PolyDoc::new(o.minimal_polynomial()),
        })
        .collect();
    let copy_subspaces = if s >= 2 {
        dec.copy_subspaces(sys.ctx())?
            .iter()
            .map(|cs| CopySubspaceDoc {
                kappa: cs.kappa(),
                labels: coeff_rows(cs.labels()),
                indices: cs.indices().to_vec(),
            })
            .collect()
    } else {
        Vec::new()
    };
    let operators = emit_operators.then(|| FrobeniusOperators {
        g: MatrixDoc::new("G", &dec.g_total()),
        g_i: (0..dec.orbits().len())
            .map(|i| MatrixDoc::new(format!("G orbit={i}"), &dec.g_i(i)))
            .collect(),
    });
    Ok(FrobeniusDoc {
        spec: spec.to_string(),
        s,
        orbits,
        copy_subspaces,
        operators,
    })
}

// --------------------------------------------------------------- invariants

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    /// Field axioms, trace and dual basis (exact).
    Field,
    /// Unitarity and order of the Fourier transform, momentum factorization.
    Fourier,
    /// Displacement factorization, commutation and composition.
    Displacement,
    /// Conjugation identities of the Frobenius operator.
    Frobenius,
    /// Shift and clock relations inside the copy subspaces.
    Copy,
    /// Scalar product of the analytic representation by quadrature.
    Analytic,
}

impl Suite {
    const EACH: [Suite; 6] = [
        Suite::Field,
        Suite::Fourier,
        Suite::Displacement,
        Suite::Frobenius,
        Suite::Copy,
        Suite::Analytic,
    ];

    fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Field => "field",
            Suite::Fourier => "fourier",
            Suite::Displacement => "displacement",
            Suite::Frobenius => "frobenius",
            Suite::Copy => "copy",
            Suite::Analytic => "analytic",
        }
    }
}

/// The analytic suite compares quadrature against exact values, so it is
/// judged at this accuracy rather than at `--tol`.
pub const QUADRATURE_THRESHOLD: f64 = 1e-4;

/// Relative change allowed between a quadrature and its refinement.
pub const QUADRATURE_REFINEMENT_TOL: f64 = 1e-5;

#[derive(Serialize, Debug)]
pub struct SuiteResult {
    pub name: &'static str,
    /// `PASS`, `FAIL` or `SKIP`.
    pub status: &'static str,
    pub max_residual: Num,
    pub threshold: Num,
    pub checks: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Serialize, Debug)]
pub struct InvariantReport {
    pub spec: String,
    pub suites: Vec<SuiteResult>,
    pub passed: bool,
}

impl InvariantReport {
    pub fn to_table(&self) -> Table {
        let mut t = Table::new(&["suite", "status", "max_residual", "threshold", "checks"]);
        for r in &self.suites {
            t.push(vec![
                Cell::Text(r.name.into()),
                Cell::Text(r.status.into()),
                Cell::Float(r.max_residual.0),
                Cell::Float(r.threshold.0),
                Cell::Int(r.checks as i64),
            ]);
        }
        t
    }

    pub fn failed_suites(&self) -> Vec<&'static str> {
        self.suites
            .iter()
            .filter(|r| r.status == "FAIL")
            .map(|r| r.name)
            .collect()
    }
}

#[derive(Default)]
struct Tally {
    max: f64,
    checks: usize,
}

impl Tally {
    fn record(&mut self, residual: f64) {
        // NaN must fail, so it is recorded as infinite.
        let r = if residual.is_nan() {
            f64::INFINITY
        } else {
            residual
        };
        self.max = self.max.max(r);
        self.checks += 1;
    }

    fn exact(&mut self, ok: bool) {
        self.record(if ok { 0.0 } else { 1.0 });
    }
}

enum Outcome {
    Ran(Tally),
    Skipped(String),
}

/// Index pairs to test: all of them for small fields, otherwise `limit`
/// pairs spread by fixed strides.
fn sample_pairs(d: usize, limit: usize) -> Vec<(usize, usize)> {
    if d * d <= limit {
        return (0..d).flat_map(|a| (0..d).map(move |b| (a, b))).collect();
    }
    (0..limit)
        .map(|i| ((i * 37 + 1) % d, (i * 101 + 3) % d))
        .collect()
}

fn suite_field(sys: &GaloisSystem) -> Outcome {
    let ctx = sys.ctx();
    let d = ctx.order();
    let mut t = Tally::default();
    for (i, j) in sample_pairs(d, 2048) {
        let (a, b) = (ctx.element_at(i), ctx.element_at(j));
        let c = ctx.element_at((i + 2 * j + 1) % d);
        t.exact(ctx.mul(&a, &b) == ctx.mul(&b, &a));
        t.exact(ctx.mul(&ctx.mul(&a, &b), &c) == ctx.mul(&a, &ctx.mul(&b, &c)));
        t.exact(ctx.mul(&a, &ctx.add(&b, &c)) == ctx.add(&ctx.mul(&a, &b), &ctx.mul(&a, &c)));
        let tr = (ctx.trace(&a) + ctx.trace(&b)) % ctx.p();
        t.exact(ctx.trace(&ctx.add(&a, &b)) == tr);
    }
    for a in ctx.elements() {
        if !a.is_zero() {
            let inv = ctx.inv(&a).expect("nonzero");
            t.exact(ctx.mul(&a, &inv) == ctx.one());
        }
        t.exact(ctx.trace(&ctx.frobenius_power(&a, 1)) == ctx.trace(&a));
        t.exact(ctx.pow(&a, ctx.order() as u64) == a);
        let dual = ctx.dual_components(&a);
        t.exact(ctx.components_from_dual(&dual).as_ref() == Ok(&a));
    }
    for (k, e) in ctx.dual_basis().iter().enumerate() {
        for j in 0..ctx.ell() {
            let tr = ctx.planck_trace(&ctx.mul(e, &ctx.epsilon_power(j)));
            t.exact(tr == u32::from(j == k));
        }
    }
    Outcome::Ran(t)
}

fn suite_fourier(sys: &GaloisSystem) -> Result<Outcome, CliError> {
    let ctx = sys.ctx();
    let p = ctx.p() as usize;
    let mut t = Tally::default();
    let f = sys.fourier();
    t.record(f.unitarity_residual());
    t.record(f.pow(4).max_abs_diff(&Operator::identity(sys.dim())));
    t.record(sys.tensor_fourier().unitarity_residual());
    for m in ctx.elements() {
        let factors = ctx
            .dual_components(&m)
            .iter()
            .map(|&k| zd::momentum_state(p, k as usize))
            .collect::<Result<Vec<_>, _>>()?;
        let expected = StateVector::tensor_digits(&factors);
        t.record(f.apply(&sys.position_state(&m)).max_abs_diff(&expected));
    }
    Ok(Outcome::Ran(t))
}

fn suite_displacement(sys: &GaloisSystem) -> Result<Outcome, CliError> {
    let ctx = sys.ctx();
    let d = ctx.order();
    let p = ctx.p() as i64;
    let half = (p + 1) / 2;
    let mut t = Tally::default();
    let limit = if d <= 27 { 729 } else { 64 };
    for (n, (i, j)) in sample_pairs(d, limit).into_iter().enumerate() {
        let (a, b) = (ctx.element_at(i), ctx.element_at(j));
        let dab = sys.displacement(&a, &b);
        t.record(dab.max_abs_diff(&sys.displacement_tensor(&a, &b)?));
        t.record(dab.unitarity_residual());
        let lhs = sys.x_pow(&b).matmul(&sys.z_pow(&a));
        let rhs = sys.z_pow(&a).matmul(&sys.x_pow(&b));
        let phase = sys.omega(-(ctx.trace_product(&a, &b) as i64));
        t.record(lhs.max_abs_diff(&rhs.scale(phase)));
        if n % 8 == 0 {
            let (a2, b2) = (
                ctx.element_at((i * 5 + 2) % d),
                ctx.element_at((j * 7 + 1) % d),
            );
            let prod = dab.matmul(&sys.displacement(&a2, &b2));
            let sym = ctx.trace_product(&a, &b2) as i64 - ctx.trace_product(&a2, &b) as i64;
            let expected = sys
                .displacement(&ctx.add(&a, &a2), &ctx.add(&b, &b2))
                .scale(sys.omega(half * sym));
            t.record(prod.max_abs_diff(&expected));
        }
    }
    Ok(Outcome::Ran(t))
}

fn decomposition_or_skip(
    sys: &GaloisSystem,
) -> Result<Result<FrobeniusDecomposition, String>, CliError> {
    match decompose(sys) {
        Ok(dec) => Ok(Ok(dec)),
        Err(e @ Error::NonPrimeEll(_)) => Ok(Err(e.to_string())),
        Err(e) => Err(e.into()),
    }
}

fn suite_frobenius(sys: &GaloisSystem, dec: &FrobeniusDecomposition) -> Outcome {
    let ctx = sys.ctx();
    let d = ctx.order();
    let ell = ctx.ell();
    let mut t = Tally::default();
    let g = dec.g_total();
    t.record(g.unitarity_residual());
    t.record(g.pow(ell as u64).max_abs_diff(&Operator::identity(d)));
    for m in ctx.elements() {
        let image = g.apply(&sys.position_state(&m));
        t.record(image.max_abs_diff(&sys.position_state(&ctx.frobenius_power(&m, 1))));
    }
    let limit = if d <= 9 { 81 } else { 16 };
    for (i, j) in sample_pairs(d, limit) {
        let (a, b) = (ctx.element_at(i), ctx.element_at(j));
        for lambda in 1..ell.max(2) {
            t.record(verify_conjugation(sys, dec, &a, &b, lambda).max());
        }
    }
    Outcome::Ran(t)
}

fn suite_copy(sys: &GaloisSystem, dec: &FrobeniusDecomposition) -> Result<Outcome, CliError> {
    let s = dec.s();
    if s < 2 {
        return Ok(Outcome::Skipped(format!("no copy subspaces (s = {s})")));
    }
    let subspaces = dec.copy_subspaces(sys.ctx())?;
    let g = dec.g_total();
    let mut t = Tally::default();
    let mut sum = Operator::zeros(sys.dim());
    for cs in &subspaces {
        let (shift, clock, f) = (cs.s_op(), cs.r_op(), cs.fourier());
        let proj = cs.projector();
        t.record(shift.pow(s as u64).max_abs_diff(&proj));
        t.record(shift.conjugate_by(&f).max_abs_diff(&clock));
        t.record(cs.momentum_op().max_abs_diff(&cs.momentum_op_kernel()));
        for lambda in 0..s {
            for mu in 0..s {
                let lhs = shift.pow(lambda as u64).matmul(&clock.pow(mu as u64));
                let rhs = clock
                    .pow(mu as u64)
                    .matmul(&shift.pow(lambda as u64))
                    .scale(cs.big_omega(-((lambda * mu) as i64)));
                t.record(lhs.max_abs_diff(&rhs));
            }
            let dual = cs.dual_state(lambda)?;
            let expected = dual.scale(cs.big_omega(-(lambda as i64)));
            t.record(shift.apply(&dual).max_abs_diff(&expected));
        }
        let next = &subspaces[(cs.kappa() + 1) % subspaces.len()];
        t.record(proj.conjugate_by(&g).max_abs_diff(&next.projector()));
        sum = &sum + &proj;
    }
    t.record(sum.max_abs_diff(&dec.projector_a()));
    Ok(Outcome::Ran(t))
}

/// Basis states of the copy subspaces tested by the analytic suite.
const ANALYTIC_STATES: usize = 12;

fn suite_analytic(
    sys: &GaloisSystem,
    dec: &FrobeniusDecomposition,
    quad_nodes: usize,
) -> Result<Outcome, CliError> {
    let s = dec.s();
    if s < 2 {
        return Ok(Outcome::Skipped(format!("no copy subspaces (s = {s})")));
    }
    if s.is_multiple_of(2) {
        return Ok(Outcome::Skipped(format!("s = {s} is even")));
    }
    let subspaces = dec.copy_subspaces(sys.ctx())?;
    let states: Vec<StateVector> = (0..s)
        .flat_map(|j| subspaces.iter().map(move |cs| cs.basis_state(j)))
        .take(ANALYTIC_STATES)
        .collect();
    let reps = states
        .iter()
        .map(|v| represent(sys, dec, v))
        .collect::<Result<Vec<AnalyticRep>, _>>()?;
    let quad = QuadratureSpec {
        radial: quad_nodes,
        angular: quad_nodes,
        tol: QUADRATURE_REFINEMENT_TOL,
    };
    let mut t = Tally::default();
    for (i, a) in reps.iter().enumerate() {
        for (j, b) in reps.iter().enumerate().skip(i) {
            let exact = Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0);
            t.record((a.inner_product_numeric(b, &quad)? - exact).norm());
            t.record((a.inner_exact(b) - exact).norm());
        }
    }
    let g = dec.g_total();
    for (v, rep) in states.iter().zip(&reps) {
        let moved = represent(sys, dec, &g.apply(v))?;
        let shifted = rep.frobenius_action(1);
        let diff = moved
            .coeffs()
            .iter()
            .zip(shifted.coeffs())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max);
        t.record(diff);
    }
    Ok(Outcome::Ran(t))
}

pub fn invariants(
    spec: &SystemSpec,
    suite: Suite,
    tol: f64,
    quad_nodes: usize,
) -> Result<InvariantReport, CliError> {
    let sys = system(spec)?;
    let selected: Vec<Suite> = match suite {
        Suite::All => Suite::EACH.to_vec(),
        one => vec![one],
    };
    let dec = decomposition_or_skip(&sys)?;
    let mut suites = Vec::new();
    for which in selected {
        let threshold = if which == Suite::Analytic {
            QUADRATURE_THRESHOLD.max(tol)
        } else {
            tol
        };
        let outcome = match (which, &dec) {
            (Suite::Field, _) => suite_field(&sys),
            (Suite::Fourier, _) => suite_fourier(&sys)?,
            (Suite::Displacement, _) => suite_displacement(&sys)?,
            (_, Err(reason)) => Outcome::Skipped(reason.clone()),
            (Suite::Frobenius, Ok(dec)) => suite_frobenius(&sys, dec),
            (Suite::Copy, Ok(dec)) => suite_copy(&sys, dec)?,
            (Suite::Analytic, Ok(dec)) => suite_analytic(&sys, dec, quad_nodes)?,
            (Suite::All, _) => unreachable!("expanded above"),
        };
        suites.push(match outcome {
            Outcome::Ran(t) => SuiteResult {
                name: which.name(),
                status: if t.max <= threshold { "PASS" } else { "FAIL" },
                max_residual: Num(t.max),
                threshold: Num(threshold),
                checks: t.checks,
                note: None,
            },
            Outcome::Skipped(reason) => SuiteResult {
                name: which.name(),
                status: "SKIP",
                max_residual: Num(0.0),
                threshold: Num(threshold),
                checks: 0,
                note: Some(reason),
            },
        });
    }
    let passed = suites.iter().all(|r| r.status != "FAIL");
    Ok(InvariantReport {
        spec: spec.to_string(),
        suites,
        passed,
    })
}

// --------------------------------------------------- evolve and analytic

/// Where an input state comes from.
#[derive(Clone, Debug)]
pub enum StateSource {
    /// The position eigenstate `|X;m>` for the given components of `m`.
    Label(Vec<u32>),
    Vector(StateVector),
}

fn resolve_state(sys: &GaloisSystem, source: &StateSource) -> Result<StateVector, CliError> {
    let state = match source {
        StateSource::Label(c) => sys.position_state(&element(sys.ctx(), "--label", c)?),
        StateSource::Vector(v) => v.clone(),
    };
    if state.dim() != sys.dim() {
        return Err(Error::InvalidDimension(state.dim()).into());
    }
    Ok(state)
}

/// `S^N |psi>` inside copy subspace `kappa`.
pub fn evolve(
    spec: &SystemSpec,
    reps: Option<&[Vec<u32>]>,
    kappa: usize,
    source: &StateSource,
    steps: u64,
) -> Result<StateDoc, CliError> {
    let sys = system(spec)?;
    let dec = decomposition(&sys, reps)?;
    let cs = copy_subspace(&sys, &dec, kappa)?;
    let state = resolve_state(&sys, source)?;
    Ok(StateDoc::new(&cs.evolve(&state, steps)?))
}

/// Sample points: `radii` radii `r_max * (i + 1) / radii` and `angles`
/// midpoint angles inside each sheet.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    pub radii: usize,
    pub angles: usize,
    pub r_max: f64,
}

fn analytic_rep(
    spec: &SystemSpec,
    reps: Option<&[Vec<u32>]>,
    source: &StateSource,
) -> Result<AnalyticRep, CliError> {
    let sys = system(spec)?;
    let dec = decomposition(&sys, reps)?;
    let state = resolve_state(&sys, source)?;
    Ok(represent(&sys, &dec, &state)?)
}

fn radius(grid: &Grid, i: usize) -> f64 {
    grid.r_max * (i + 1) as f64 / grid.radii as f64
}

/// Values of the analytic representation: columns `sheet,r,phi,re,im`.
pub fn analytic(
    spec: &SystemSpec,
    reps: Option<&[Vec<u32>]>,
    source: &StateSource,
    grid: &Grid,
) -> Result<Table, CliError> {
    let rep = analytic_rep(spec, reps, source)?;
    let plane = rep.plane();
    let width = 2.0 * PI / plane.ell() as f64;
    let mut t = Table::new(&["sheet", "r", "phi", "re", "im"]);
    for kappa in 0..plane.ell() {
        for i in 0..grid.radii {
            let r = radius(grid, i);
            for j in 0..grid.angles {
                let phi = plane.cut_angle(kappa) + (j as f64 + 0.5) * width / grid.angles as f64;
                let value = rep.evaluate(Complex64::from_polar(r, phi))?;
                t.push(vec![
                    Cell::Int(kappa as i64),
                    Cell::Float(r),
                    Cell::Float(phi),
                    Cell::Float(value.re),
                    Cell::Float(value.im),
                ]);
            }
        }
    }
    Ok(t)
}

/// Jumps across each cut: columns `kappa,r,re,im`.
pub fn discontinuity(
    spec: &SystemSpec,
    reps: Option<&[Vec<u32>]>,
    source: &StateSource,
    grid: &Grid,
) -> Result<Table, CliError> {
    let rep = analytic_rep(spec, reps, source)?;
    let mut t = Table::new(&["kappa", "r", "re", "im"]);
    for kappa in 0..rep.plane().ell() {
        for i in 0..grid.radii {
            let r = radius(grid, i);
            let jump = rep.discontinuity(kappa, r);
            t.push(vec![
                Cell::Int(kappa as i64),
                Cell::Float(r),
                Cell::Float(jump.re),
                Cell::Float(jump.im),
            ]);
        }
    }
    Ok(t)
}
