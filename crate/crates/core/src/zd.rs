//! The finite quantum system with positions and momenta in `Z_d`.
//!
//! `omega(a) = exp(2 pi i a / d)`. Position states are the standard basis;
//! momentum states are the columns of the Fourier transform.

use alloc::vec::Vec;

use crate::linalg::{root_of_unity, Complex64, Operator, StateVector};
use crate::{Error, Result};

#[allow(unused_imports)]
use num_traits::Float;

fn check_dim(d: usize) -> Result<()> {
    if d < 2 {
        Err(Error::InvalidDimension(d))
    } else {
        Ok(())
    }
}

fn check_index(d: usize, m: usize) -> Result<()> {
    if m >= d {
        Err(Error::IndexOutOfRange { index: m, len: d })
    } else {
        Ok(())
    }
}

/// `d^{-1/2} sum_{m,n} omega(mn) |m><n|`
pub fn fourier(d: usize) -> Result<Operator> {
    check_dim(d)?;
    let norm = 1.0 / (d as f64).sqrt();
    Ok(Operator::from_fn(d, |m, n| {
        root_of_unity(d, ((m * n) % d) as i64) * norm
    }))
}

pub fn position_state(d: usize, m: usize) -> Result<StateVector> {
    check_dim(d)?;
    check_index(d, m)?;
    Ok(StateVector::basis(d, m))
}

/// `|P;m> = F |X;m>`, amplitudes `d^{-1/2} omega(mn)`.
pub fn momentum_state(d: usize, m: usize) -> Result<StateVector> {
    check_dim(d)?;
    check_index(d, m)?;
    let norm = 1.0 / (d as f64).sqrt();
    Ok(StateVector::from_amplitudes(
        (0..d)
            .map(|n| root_of_unity(d, ((m * n) % d) as i64) * norm)
            .collect(),
    ))
}

/// `x = sum n |X;n><X;n|`
pub fn position_op(d: usize) -> Result<Operator> {
    check_dim(d)?;
    let diag: Vec<Complex64> = (0..d).map(|n| Complex64::new(n as f64, 0.0)).collect();
    Ok(Operator::diagonal(&diag))
}

/// `p = F x F^dagger`
pub fn momentum_op(d: usize) -> Result<Operator> {
    Ok(position_op(d)?.conjugate_by(&fourier(d)?))
}

/// `Z^a = sum omega(a n) |X;n><X;n|`
pub fn z_pow(d: usize, alpha: i64) -> Result<Operator> {
    check_dim(d)?;
    let a = alpha.rem_euclid(d as i64) as usize;
    let diag: Vec<Complex64> = (0..d)
        .map(|n| root_of_unity(d, ((a * n) % d) as i64))
        .collect();
    Ok(Operator::diagonal(&diag))
}

/// `X^b`, the shift `|X;m> -> |X;m+b>`.
pub fn x_pow(d: usize, beta: i64) -> Result<Operator> {
    check_dim(d)?;
    let b = beta.rem_euclid(d as i64) as usize;
    Ok(Operator::permutation(d, |m| (m + b) % d))
}

pub fn z_op(d: usize) -> Result<Operator> {
    z_pow(d, 1)
}

pub fn x_op(d: usize) -> Result<Operator> {
    x_pow(d, 1)
}

/// `D(a, b) = Z^a X^b omega(-2^{-1} a b)`, with `2^{-1}` taken mod `d`.
pub fn displacement(d: usize, alpha: i64, beta: i64) -> Result<Operator> {
    check_dim(d)?;
    if d.is_multiple_of(2) {
        return Err(Error::EvenDimension(d));
    }
    let dd = d as i64;
    let half = (dd + 1) / 2;
    let (a, b) = (alpha.rem_euclid(dd), beta.rem_euclid(dd));
    let phase_exp = -((half * a % dd) * b % dd);
    let phase = root_of_unity(d, phase_exp);
    Ok(z_pow(d, a)?.matmul(&x_pow(d, b)?).scale(phase))
}
