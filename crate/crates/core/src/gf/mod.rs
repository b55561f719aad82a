//! Exact arithmetic in `GF(p^l)`.
//!
//! Elements are coefficient vectors `(a_0, ..., a_{l-1})` over `Z_p` in the
//! polynomial basis `1, e, ..., e^{l-1}`, reduced modulo a monic irreducible
//! polynomial of degree `l`. All residues are kept canonical in `[0, p)`.
//!
//! Element `a` is identified with the basis index `sum a_k p^k`, so the base-`p`
//! digits of an index are the components of its field label.

mod field;
mod irreducible;
pub mod modp;
mod poly;

pub use field::{FieldContext, FieldElement, IrreduciblePoly};
pub use irreducible::{
    enumerate_irreducibles, field_polynomial, is_irreducible, minimal_polynomial, IrreducibleSet,
};
pub use modp::{is_prime, ResidueMatrix};
pub use poly::Polynomial;
