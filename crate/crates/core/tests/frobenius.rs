use std::f64::consts::PI;

use galois_quantum::frobenius::{
    conjugated_alpha, conjugated_factor_parameters, decompose, decompose_with_representatives,
    delta1, verify_conjugation, FrobeniusDecomposition,
};
use galois_quantum::galois::GaloisSystem;
use galois_quantum::gf::{enumerate_irreducibles, FieldContext, FieldElement, IrreduciblePoly};
use galois_quantum::{zd, Complex64, Error, Operator, StateVector};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const TOL: f64 = 1e-10;

fn system(p: u32, tail: &[u32], h: &[u32]) -> GaloisSystem {
    GaloisSystem::new(FieldContext::new(p, IrreduciblePoly::new(tail.to_vec()), h).unwrap())
}

/// `a^n` by repeated multiplication.
fn slow_pow(ctx: &FieldContext, a: &FieldElement, n: u64) -> FieldElement {
    (0..n).fold(ctx.one(), |acc, _| ctx.mul(&acc, a))
}

/// The permutation `|X;m> -> |X;m^p>`.
fn oracle_g(ctx: &FieldContext) -> Operator {
    Operator::permutation(ctx.order(), |j| {
        ctx.index_of(&slow_pow(ctx, &ctx.element_at(j), ctx.p() as u64))
    })
}

fn random_state(rng: &mut StdRng, basis: &[StateVector]) -> StateVector {
    let dim = basis[0].dim();
    let mut v = StateVector::zeros(dim);
    for b in basis {
        let c = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        v = &v + &b.scale(c);
    }
    v.normalized()
}

const SYSTEMS: &[(u32, &[u32])] = &[(3, &[2, 1]), (3, &[1, 2, 0]), (5, &[2, 1]), (7, &[3, 1])];

#[test]
fn orbits_partition_the_field() {
    for &(p, tail) in SYSTEMS {
        let sys = system(p, tail, &[1]);
        let dec = decompose(&sys).unwrap();
        let ell = tail.len();
        assert_eq!(dec.s(), ((p as usize).pow(ell as u32) - p as usize) / ell);
        assert_eq!(dec.layer_b().len(), p as usize);
        let mut count = vec![0; sys.dim()];
        for (i, orbit) in dec.orbits().iter().enumerate() {
            for &j in orbit.indices() {
                count[j] += 1;
                assert_eq!(dec.orbit_of(j), i);
            }
        }
        assert!(count.iter().all(|&c| c == 1));
        // minimal polynomials of H_A orbits are exactly the degree-l irreducibles
        let mut polys: Vec<_> = dec
            .layer_a()
            .iter()
            .map(|o| o.minimal_polynomial().clone())
            .collect();
        polys.sort();
        let mut top = enumerate_irreducibles(p, ell).unwrap().top;
        top.sort();
        assert_eq!(polys, top);
    }
}

#[test]
fn g_is_the_frobenius_permutation() {
    for &(p, tail) in SYSTEMS {
        let sys = system(p, tail, &[1]);
        let ctx = sys.ctx();
        let dec = decompose(&sys).unwrap();
        let g = dec.g_total();
        assert!(g.max_abs_diff(&oracle_g(ctx)) < TOL);
        let id = Operator::identity(sys.dim());
        assert!(g.pow(ctx.ell() as u64).max_abs_diff(&id) < TOL);
        let mut sum = Operator::zeros(sys.dim());
        let mut proj = Operator::zeros(sys.dim());
        for i in 0..dec.orbits().len() {
            let pi = dec.projector(i);
            assert!(g.commutator(&pi).max_abs() < TOL);
            assert!(dec.g_i(i).max_abs_diff(&pi.matmul(&g)) < TOL);
            sum = &sum + &dec.g_i(i);
            proj = &proj + &pi;
        }
        assert!(sum.max_abs_diff(&g) < TOL);
        assert!(proj.max_abs_diff(&id) < TOL);
        assert!((&dec.projector_a() + &dec.projector_b()).max_abs_diff(&id) < TOL);
    }
}

fn conjugation_oracle(ctx: &FieldContext, a: &FieldElement, lambda: usize) -> FieldElement {
    let q = (ctx.p() as u64).pow(lambda as u32);
    ctx.mul(&slow_pow(ctx, a, q), &slow_pow(ctx, ctx.planck(), q - 1))
}

#[test]
fn conjugation_identities_exhaustive_on_gf9() {
    for h in [&[1u32][..], &[1, 1], &[0, 2]] {
        let sys = system(3, &[2, 1], h);
        let ctx = sys.ctx();
        let dec = decompose(&sys).unwrap();
        for lambda in 0..2 {
            for a in ctx.elements() {
                assert_eq!(
                    conjugated_alpha(ctx, &a, lambda),
                    conjugation_oracle(ctx, &a, lambda)
                );
                for b in ctx.elements() {
                    assert!(verify_conjugation(&sys, &dec, &a, &b, lambda).holds(TOL));
                }
            }
        }
    }
}

#[test]
fn conjugated_tensor_factors() {
    let mut rng = StdRng::seed_from_u64(7);
    for &(p, tail) in &SYSTEMS[..3] {
        let sys = system(p, tail, &[2, 1]);
        let ctx = sys.ctx();
        let dec = decompose(&sys).unwrap();
        for _ in 0..10 {
            let a = ctx.element_at(rng.gen_range(0..sys.dim()));
            let b = ctx.element_at(rng.gen_range(0..sys.dim()));
            let lambda = rng.gen_range(0..ctx.ell());
            let (big_a, big_b) = conjugated_factor_parameters(ctx, &a, &b, lambda);
            let alpha2 = conjugation_oracle(ctx, &a, lambda);
            assert_eq!(big_a, ctx.dual_components(&alpha2));
            assert_eq!(
                big_b,
                slow_pow(ctx, &b, (p as u64).pow(lambda as u32)).coeffs()
            );
            let factors: Vec<Operator> = big_a
                .iter()
                .zip(&big_b)
                .map(|(&x, &y)| zd::displacement(p as usize, x as i64, y as i64).unwrap())
                .collect();
            let g = dec.g_total().pow(lambda as u64);
            let lhs = sys.displacement_tensor(&a, &b).unwrap().conjugate_by(&g);
            assert!(lhs.max_abs_diff(&Operator::tensor_digits(&factors)) < TOL);
        }
    }
}

#[test]
fn g_commutes_only_with_base_field_powers() {
    let sys = system(3, &[2, 1], &[1]);
    let ctx = sys.ctx();
    let g = decompose(&sys).unwrap().g_total();
    for a in ctx.elements() {
        let commutes = g.commutator(&sys.z_pow(&a)).max_abs() < TOL;
        assert_eq!(commutes, a.is_base(), "Z^{a}");
        let commutes = g.commutator(&sys.x_pow(&a)).max_abs() < TOL;
        assert_eq!(commutes, a.is_base(), "X^{a}");
        for b in ctx.elements() {
            if a.is_base() && b.is_base() {
                assert!(g.commutator(&sys.displacement(&a, &b)).max_abs() < TOL);
            }
        }
    }
}

#[test]
fn rotated_frame_preserves_identities() {
    let sys = system(3, &[2, 1], &[1, 1]);
    let ctx = sys.ctx();
    let u = sys.fourier();
    let dec = decompose(&sys).unwrap().with_rotation(u.clone());
    assert!(dec.g_total().max_abs_diff(&oracle_g(ctx).conjugate_by(&u)) < TOL);
    let a = ctx.element(&[1, 2]).unwrap();
    let b = ctx.element(&[2, 2]).unwrap();
    assert!(verify_conjugation(&sys, &dec, &a, &b, 1).holds(TOL));
    let copies = dec.copy_subspaces(ctx).unwrap();
    let s = copies[0].s() as u64;
    assert!(copies[0].s_op().pow(s).max_abs_diff(&copies[0].projector()) < TOL);
    let b0 = copies[0].basis_state(0);
    assert!(b0.max_abs_diff(&u.apply(&sys.position_state(&copies[0].labels()[0]))) < TOL);
}

fn copies_of(
    dec: &FrobeniusDecomposition,
    sys: &GaloisSystem,
) -> Vec<galois_quantum::frobenius::CopySubspace> {
    dec.copy_subspaces(sys.ctx()).unwrap()
}

#[test]
fn copy_subspaces_tile_h_a() {
    for &(p, tail) in SYSTEMS {
        let sys = system(p, tail, &[1]);
        let dec = decompose(&sys).unwrap();
        let copies = copies_of(&dec, &sys);
        assert_eq!(copies.len(), tail.len());
        let mut sum = Operator::zeros(sys.dim());
        for (k, c) in copies.iter().enumerate() {
            assert_eq!(c.kappa(), k);
            assert_eq!(c.s(), dec.s());
            sum = &sum + &c.projector();
        }
        assert!(sum.max_abs_diff(&dec.projector_a()) < TOL);
    }
}

#[test]
fn frobenius_transports_copy_subspaces() {
    for &(p, tail) in SYSTEMS {
        let sys = system(p, tail, &[1]);
        let dec = decompose(&sys).unwrap();
        let g = dec.g_total();
        let copies = copies_of(&dec, &sys);
        let ell = copies.len();
        for k in 0..ell {
            let next = &copies[(k + 1) % ell];
            let here = &copies[k];
            assert!(
                here.position_op()
                    .conjugate_by(&g)
                    .max_abs_diff(&next.position_op())
                    < TOL
            );
            assert!(here.s_op().conjugate_by(&g).max_abs_diff(&next.s_op()) < TOL);
            assert!(
                here.projector()
                    .conjugate_by(&g)
                    .max_abs_diff(&next.projector())
                    < TOL
            );
        }
    }
}

#[test]
fn heisenberg_weyl_in_each_copy() {
    for &(p, tail) in &SYSTEMS[..3] {
        let sys = system(p, tail, &[1]);
        let dec = decompose(&sys).unwrap();
        for c in copies_of(&dec, &sys) {
            let s = c.s();
            let sigma = c.projector();
            let (sop, rop, f) = (c.s_op(), c.r_op(), c.fourier());
            assert!(sop.pow(s as u64).max_abs_diff(&sigma) < TOL);
            assert!(rop.pow(s as u64).max_abs_diff(&sigma) < TOL);
            assert!(f.pow(4).max_abs_diff(&sigma) < TOL);
            assert!(sop.conjugate_by(&f).max_abs_diff(&rop) < TOL);
            let lhs = sop.matmul(&rop);
            let rhs = rop.matmul(&sop).scale(c.big_omega(-1));
            assert!(lhs.max_abs_diff(&rhs) < TOL);
            for j in 0..s {
                let dual = c.dual_state(j).unwrap();
                assert!(
                    sop.apply(&dual)
                        .max_abs_diff(&dual.scale(c.big_omega(-(j as i64))))
                        < TOL
                );
                assert!(f.apply(&c.basis_state(j)).max_abs_diff(&dual) < TOL);
            }
            assert!(c.momentum_op().max_abs_diff(&c.momentum_op_kernel()) < 1e-9);
        }
    }
}

#[test]
fn delta1_closed_form() {
    // sum_{m<s} m x^m with x = Omega^k != 1 equals s / (x - 1).
    for s in [3usize, 5, 8, 13] {
        for k in 1..s as i64 {
            let x = Complex64::from_polar(1.0, 2.0 * PI * k as f64 / s as f64);
            let expected = Complex64::new(0.0, 2.0 * PI) * (s as f64) / (x - 1.0);
            assert!((delta1(s, k) - expected).norm() < 1e-9);
        }
        let expected = Complex64::new(0.0, PI * (s * (s - 1)) as f64);
        assert!((delta1(s, 0) - expected).norm() < 1e-9);
    }
}

#[test]
fn stroboscopic_evolution() {
    let mut rng = StdRng::seed_from_u64(11);
    let sys = system(5, &[2, 1], &[1]);
    let dec = decompose(&sys).unwrap();
    let c = &copies_of(&dec, &sys)[1];
    let basis: Vec<StateVector> = (0..c.s()).map(|j| c.basis_state(j)).collect();
    let psi = random_state(&mut rng, &basis);
    for n in 0..25 {
        let out = c.evolve(&psi, n).unwrap();
        assert!(c.projection_residual(&out) < TOL);
        assert!((out.norm() - 1.0).abs() < TOL);
    }
    assert!(c.evolve(&psi, c.s() as u64).unwrap().max_abs_diff(&psi) < TOL);
    let outside = sys.position_state(&sys.ctx().one());
    assert!(matches!(
        c.evolve(&outside, 1),
        Err(Error::StateOutsideSubspace { .. })
    ));
}

#[test]
fn representative_validation() {
    let sys = system(3, &[2, 1], &[1]);
    let ctx = sys.ctx();
    let e = |c: &[u32]| ctx.element(c).unwrap();
    let good = [e(&[2, 2]), e(&[1, 1]), e(&[2, 1])];
    let dec = decompose_with_representatives(&sys, &good).unwrap();
    assert_eq!(dec.orbits()[0].representative(), &good[0]);
    assert_eq!(
        decompose_with_representatives(&sys, &good[..2]).unwrap_err(),
        Error::InvalidRepresentatives
    );
    assert_eq!(
        decompose_with_representatives(&sys, &[e(&[1, 0]), e(&[1, 1]), e(&[2, 1])]).unwrap_err(),
        Error::InvalidRepresentatives
    );
    let line = system(3, &[1], &[1]);
    let dec = decompose(&line).unwrap();
    assert_eq!(dec.s(), 0);
    assert_eq!(
        dec.copy_subspaces(line.ctx()).unwrap_err(),
        Error::SubspaceTooSmall(0)
    );
}
