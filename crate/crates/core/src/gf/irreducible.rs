//! Irreducibility testing, enumeration of irreducible polynomials and minimal
//! polynomials of field elements.

use alloc::vec;
use alloc::vec::Vec;

use super::field::{FieldContext, FieldElement};
use super::modp;
use super::poly::Polynomial;
use crate::{Error, Result};

/// Rabin's test: a monic `f` of degree `n` over `Z_p` is irreducible iff
/// `y^{p^n} = y mod f` and `gcd(y^{p^{n/q}} - y, f) = 1` for every prime `q | n`.
///
/// Non-monic input is normalized first; constants are never irreducible.
pub fn is_irreducible(p: u32, poly: &Polynomial) -> bool {
    let f = Polynomial::from_residues(p, poly.coeffs()).make_monic(p);
    let n = match f.degree() {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(n) => n,
    };
    // frob[i] = y^{p^i} mod f
    let y = Polynomial::y().rem(&f, p);
    let mut frob = vec![y.clone()];
    for i in 0..n {
        let next = frob[i].pow_mod(p as u64, &f, p);
        frob.push(next);
    }
    if frob[n] != y {
        return false;
    }
    prime_factors(n).into_iter().all(|q| {
        let h = frob[n / q].sub(&y, p);
        h.gcd(&f, p).degree() == Some(0)
    })
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            out.push(q);
            while n.is_multiple_of(q) {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `y^{p^l} - y`
pub fn field_polynomial(p: u32, ell: usize) -> Polynomial {
    let q = (p as usize).pow(ell as u32);
    Polynomial::monomial(q).sub(&Polynomial::y(), p)
}

/// Monic irreducible polynomials of degree dividing a prime `l`, split into the
/// two layers: `s = (p^l - p)/l` of degree `l` and `p` linear ones.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IrreducibleSet {
    pub p: u32,
    pub ell: usize,
    /// Degree-`l` polynomials, lexicographic by `(c_0, ..., c_{l-1})`.
    pub top: Vec<Polynomial>,
    /// `y - m` for `m` in `Z_p`, lexicographic by constant term.
    pub linear: Vec<Polynomial>,
}

impl IrreducibleSet {
    pub fn s(&self) -> usize {
        self.top.len()
    }

    /// Top layer followed by the linear layer.
    pub fn all(&self) -> impl Iterator<Item = &Polynomial> {
        self.top.iter().chain(&self.linear)
    }

    pub fn top_product(&self) -> Polynomial {
        self.top
            .iter()
            .fold(Polynomial::one(), |acc, f| acc.mul(f, self.p))
    }

    pub fn linear_product(&self) -> Polynomial {
        self.linear
            .iter()
            .fold(Polynomial::one(), |acc, f| acc.mul(f, self.p))
    }

    pub fn product(&self) -> Polynomial {
        self.top_product().mul(&self.linear_product(), self.p)
    }
}

/// Enumerates all monic irreducible polynomials over `Z_p` whose degree divides
/// `l`. Only `l = 1` or prime `l` is accepted, where the degrees are exactly
/// `1` and `l`.
pub fn enumerate_irreducibles(p: u32, ell: usize) -> Result<IrreducibleSet> {
    if !modp::is_prime(p) {
        return Err(Error::CompositeModulus(p));
    }
    if ell != 1 && !modp::is_prime(ell as u32) {
        return Err(Error::NonPrimeEll(ell as u32));
    }
    let linear: Vec<Polynomial> = (0..p).map(|c| Polynomial::new(vec![c, 1])).collect();
    let top = if ell == 1 {
        Vec::new()
    } else {
        let count = (p as usize).pow(ell as u32);
        (0..count)
            .map(|idx| {
                // Base-p digits of idx, most significant first, give the
                // lexicographic order on (c_0, ..., c_{l-1}).
                let mut c = vec![0u32; ell + 1];
                let mut rest = idx;
                for k in (0..ell).rev() {
                    c[k] = (rest % p as usize) as u32;
                    rest /= p as usize;
                }
                c[ell] = 1;
                Polynomial::new(c)
            })
            .filter(|f| is_irreducible(p, f))
            .collect()
    };
    Ok(IrreducibleSet {
        p,
        ell,
        top,
        linear,
    })
}

/// `prod (y - a^{p^k})` over the conjugates of `a`. The product is computed
/// with coefficients in `GF(p^l)`; they always land in `Z_p`.
pub fn minimal_polynomial(ctx: &FieldContext, a: &FieldElement) -> Polynomial {
    // Coefficients low-to-high as field elements.
    let mut coeffs: Vec<FieldElement> = vec![ctx.one()];
    for root in ctx.conjugates(a) {
        let neg_root = ctx.neg(&root);
        let mut next = vec![ctx.zero(); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] = ctx.add(&next[i + 1], c);
            next[i] = ctx.add(&next[i], &ctx.mul(c, &neg_root));
        }
        coeffs = next;
    }
    let base: Vec<u32> = coeffs
        .iter()
        .map(|c| {
            debug_assert!(c.is_base(), "minimal polynomial coefficient outside Z_p");
            c.coeffs()[0]
        })
        .collect();
    Polynomial::new(base)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::IrreduciblePoly;

    #[test]
    fn small_cases() {
        // y^2 + y + 1 = (y - 1)^2 over Z_3
        assert!(!is_irreducible(3, &Polynomial::new(vec![1, 1, 1])));
        assert!(is_irreducible(3, &Polynomial::new(vec![2, 1, 1])));
        assert!(is_irreducible(3, &Polynomial::new(vec![1, 0, 1])));
        assert!(!is_irreducible(3, &Polynomial::new(vec![2])));
        assert!(is_irreducible(7, &Polynomial::new(vec![3, 1])));
        // y^4 + 1 = (y^2 + y + 2)(y^2 + 2y + 2) over Z_3: no roots, yet reducible.
        assert!(!is_irreducible(3, &Polynomial::new(vec![1, 0, 0, 0, 1])));
    }

    #[test]
    fn gf9_enumeration() {
        let set = enumerate_irreducibles(3, 2).unwrap();
        assert_eq!(set.s(), 3);
        let tails: Vec<&[u32]> = set.top.iter().map(|f| f.tail()).collect();
        assert_eq!(tails, vec![&[1, 0][..], &[2, 1][..], &[2, 2][..]]);
        assert_eq!(set.product(), field_polynomial(3, 2));
    }

    #[test]
    fn composite_ell_rejected() {
        assert_eq!(enumerate_irreducibles(3, 4), Err(Error::NonPrimeEll(4)));
        assert_eq!(
            enumerate_irreducibles(4, 2),
            Err(Error::CompositeModulus(4))
        );
        assert_eq!(enumerate_irreducibles(5, 1).unwrap().linear.len(), 5);
    }

    #[test]
    fn minimal_polynomials_in_gf9() {
        let ctx = FieldContext::new(3, IrreduciblePoly::new(vec![2, 1]), &[1]).unwrap();
        let a = ctx.element(&[1, 1]).unwrap();
        assert_eq!(minimal_polynomial(&ctx, &a), Polynomial::new(vec![2, 2, 1]));
        assert_eq!(
            minimal_polynomial(&ctx, &ctx.from_base(2)),
            Polynomial::new(vec![1, 1])
        );
        assert_eq!(
            minimal_polynomial(&ctx, &ctx.epsilon()),
            Polynomial::new(vec![2, 1, 1])
        );
    }
}
