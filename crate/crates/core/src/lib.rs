//! Galois quantum systems.
//!
//! A quantum system of dimension `d = p^l` (with `p` an odd prime) can have its
//! position and momentum labelled by elements of the finite field `GF(p^l)`
//! instead of the ring `Z_d`. This crate provides:
//!
//! - exact arithmetic in `GF(p^l)` in the polynomial basis, together with the
//!   trace, Frobenius conjugates, dual bases and additive characters ([`gf`]);
//! - the generic `Z_d` system: Fourier transform, position/momentum states and
//!   Heisenberg-Weyl displacements ([`zd`]);
//! - the Galois system built on `GF(p^l)`: the trace-based Fourier transform,
//!   field-valued position/momentum operators and field-indexed displacements
//!   ([`galois`]);
//! - the decomposition of the Hilbert space into Frobenius subspaces, the
//!   Frobenius transformation and the copy-subspace formalism ([`frobenius`]);
//! - an analytic representation of states on the `l`-sheeted extended complex
//!   plane ([`analytic`]).
//!
//! The crate is `no_std` and only needs `alloc`. File formats and the command
//! line live in the companion `galois-quantum-cli` crate.
//!
//! ```
//! use galois_quantum::gf::{FieldContext, IrreduciblePoly};
//!
//! // GF(9) built on e^2 + e + 2 with inverse Planck constant 1.
//! let ctx = FieldContext::new(3, IrreduciblePoly::new(vec![2, 1]), &[1]).unwrap();
//! let a = ctx.element(&[1, 1]).unwrap();
//! assert_eq!(ctx.frobenius_power(&a, 1), ctx.element(&[0, 2]).unwrap());
//! assert_eq!(ctx.trace(&ctx.one()), 2);
//! ```
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod analytic;
mod error;
pub mod frobenius;
pub mod galois;
pub mod gf;
pub mod linalg;
pub mod quadrature;
pub mod zd;

pub use error::{Error, Result};
pub use linalg::{Complex64, Operator, StateVector};

/// Default tolerance used for complex-matrix equality checks.
pub const DEFAULT_TOL: f64 = 1e-10;
