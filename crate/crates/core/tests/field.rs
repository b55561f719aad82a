use galois_quantum::gf::{
    enumerate_irreducibles, field_polynomial, is_irreducible, minimal_polynomial, FieldContext,
    FieldElement, IrreduciblePoly, Polynomial,
};
use galois_quantum::{Complex64, Error};
use proptest::prelude::*;

// Fields exercised throughout: (p, tail of the defining polynomial).
const FIELDS: &[(u32, &[u32])] = &[(3, &[2, 1]), (3, &[1, 2, 0]), (5, &[2, 1]), (7, &[3, 1])];

fn ctx(i: usize, h: &[u32]) -> FieldContext {
    let (p, tail) = FIELDS[i];
    FieldContext::new(p, IrreduciblePoly::new(tail.to_vec()), h).unwrap()
}

/// Schoolbook product of coefficient vectors reduced by `y^l + tail`.
fn oracle_mul(p: u32, tail: &[u32], a: &[u32], b: &[u32]) -> Vec<u32> {
    let l = tail.len();
    let p = p as i64;
    let mut prod = vec![0i64; 2 * l];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] += x as i64 * y as i64;
        }
    }
    for k in (l..2 * l).rev() {
        let c = prod[k] % p;
        prod[k] = 0;
        for (j, &t) in tail.iter().enumerate() {
            prod[k - l + j] -= c * t as i64;
        }
    }
    prod[..l].iter().map(|c| c.rem_euclid(p) as u32).collect()
}

fn oracle_pow(p: u32, tail: &[u32], a: &[u32], e: u64) -> Vec<u32> {
    let mut acc = vec![0; tail.len()];
    acc[0] = 1;
    for _ in 0..e {
        acc = oracle_mul(p, tail, &acc, a);
    }
    acc
}

/// Trace as the sum of the conjugates.
fn oracle_trace(p: u32, tail: &[u32], a: &[u32]) -> u32 {
    let mut total = vec![0u32; tail.len()];
    let mut conj = a.to_vec();
    for _ in 0..tail.len() {
        for (t, c) in total.iter_mut().zip(&conj) {
            *t = (*t + c) % p;
        }
        conj = oracle_pow(p, tail, &conj, p as u64);
    }
    assert!(
        total[1..].iter().all(|&c| c == 0),
        "trace left the base field"
    );
    total[0]
}

fn element_strategy() -> impl Strategy<Value = (usize, Vec<u32>, Vec<u32>, Vec<u32>)> {
    (0..FIELDS.len()).prop_flat_map(|i| {
        let (p, tail) = FIELDS[i];
        let v = || proptest::collection::vec(0..p, tail.len());
        (Just(i), v(), v(), v())
    })
}

proptest! {
    #[test]
    fn multiplication_matches_schoolbook((i, a, b, _) in element_strategy()) {
        let (p, tail) = FIELDS[i];
        let f = ctx(i, &[1]);
        let got = f.mul(&f.element(&a).unwrap(), &f.element(&b).unwrap());
        prop_assert_eq!(got.coeffs(), &oracle_mul(p, tail, &a, &b)[..]);
    }

    #[test]
    fn field_axioms((i, a, b, c) in element_strategy()) {
        let f = ctx(i, &[1]);
        let (a, b, c) = (f.element(&a).unwrap(), f.element(&b).unwrap(), f.element(&c).unwrap());
        prop_assert_eq!(f.add(&a, &b), f.add(&b, &a));
        prop_assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
        prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
        prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
        prop_assert_eq!(f.add(&a, &f.neg(&a)), f.zero());
        prop_assert_eq!(f.sub(&a, &b), f.add(&a, &f.neg(&b)));
        if a.is_zero() {
            prop_assert_eq!(f.inv(&a), Err(Error::DivisionByZero));
        } else {
            let inv = f.inv(&a).unwrap();
            prop_assert_eq!(f.mul(&a, &inv), f.one());
            prop_assert_eq!(f.div(&b, &a).unwrap(), f.mul(&b, &inv));
        }
        prop_assert_eq!(f.pow(&a, f.order() as u64), a);
    }

    #[test]
    fn trace_matches_conjugate_sum((i, a, b, _) in element_strategy()) {
        let (p, tail) = FIELDS[i];
        let f = ctx(i, &[1]);
        let (ea, eb) = (f.element(&a).unwrap(), f.element(&b).unwrap());
        prop_assert_eq!(f.trace(&ea), oracle_trace(p, tail, &a));
        prop_assert_eq!(f.trace(&f.add(&ea, &eb)), (f.trace(&ea) + f.trace(&eb)) % p);
        let k = b[0];
        prop_assert_eq!(f.trace(&f.mul(&f.from_base(k), &ea)), (k * f.trace(&ea)) % p);
        prop_assert_eq!(f.trace(&f.frobenius_power(&ea, 1)), f.trace(&ea));
    }

    #[test]
    fn frobenius_matrix_power_is_field_power((i, a, _, _) in element_strategy(), lambda in 0usize..4) {
        let (p, tail) = FIELDS[i];
        let f = ctx(i, &[1]);
        let expected = oracle_pow(p, tail, &a, (p as u64).pow(lambda as u32));
        let got = f.frobenius_power(&f.element(&a).unwrap(), lambda);
        prop_assert_eq!(got.coeffs(), &expected[..]);
    }

    #[test]
    fn dual_components_round_trip((i, a, h, _) in element_strategy()) {
        prop_assume!(h.iter().any(|&c| c != 0));
        let f = ctx(i, &h);
        let a = f.element(&a).unwrap();
        let dual = f.dual_components(&a);
        // a = sum_k dual_k E_k
        let mut rebuilt = f.zero();
        for (k, e) in f.dual_basis().iter().enumerate() {
            rebuilt = f.add(&rebuilt, &f.mul(&f.from_base(dual[k]), e));
        }
        prop_assert_eq!(&rebuilt, &a);
        prop_assert_eq!(f.components_from_dual(&dual).unwrap(), a.clone());
        // dual_k = Tr(h a e^k)
        for (k, &d) in dual.iter().enumerate() {
            prop_assert_eq!(d, f.trace_product(&a, &f.epsilon_power(k)));
        }
    }
}

#[test]
fn dual_basis_is_dual() {
    for i in 0..FIELDS.len() {
        for h in [&[1u32][..], &[1, 1]] {
            let f = ctx(i, h);
            for (k, e) in f.dual_basis().iter().enumerate() {
                for lambda in 0..f.ell() {
                    let expected = u32::from(k == lambda);
                    assert_eq!(f.trace_product(&f.epsilon_power(lambda), e), expected);
                }
            }
        }
    }
}

#[test]
fn gram_matrix_from_traces() {
    for (i, &(p, tail)) in FIELDS.iter().enumerate() {
        let f = ctx(i, &[2, 1]);
        let h = f.planck().coeffs().to_vec();
        let mut eps = vec![0; tail.len()];
        eps[1] = 1;
        for a in 0..f.ell() {
            for b in 0..f.ell() {
                let mono = oracle_pow(p, tail, &eps, (a + b) as u64);
                let expected = oracle_trace(p, tail, &oracle_mul(p, tail, &h, &mono));
                assert_eq!(f.gram().get(a, b), expected);
                assert_eq!(f.planck_traces()[a + b], expected);
            }
        }
        let gg = f.gram().mul(f.gram_inverse(), p);
        assert_eq!(
            gg.rows(),
            galois_quantum::gf::ResidueMatrix::identity(f.ell()).rows()
        );
    }
}

#[test]
fn character_sums_are_kronecker_deltas() {
    for i in [0usize, 2] {
        let f = ctx(i, &[1, 1]);
        let q = f.order() as u64;
        let elems: Vec<FieldElement> = f.elements().collect();
        for lambda in 0..f.ell() {
            let pl = (f.p() as u64).pow(lambda as u32);
            for m in &elems {
                for r in &elems {
                    // brute-force sum of omega[Tr(n m - n^{p^lambda} r)]
                    let mut sum = Complex64::new(0.0, 0.0);
                    for n in &elems {
                        let t = f.trace(&f.sub(&f.mul(n, m), &f.mul(&f.pow(n, pl), r)));
                        sum += Complex64::from_polar(
                            1.0,
                            2.0 * std::f64::consts::PI * t as f64 / f.p() as f64,
                        );
                    }
                    sum /= q as f64;
                    let expected = if f.pow(m, pl) == *r { 1.0 } else { 0.0 };
                    assert!((sum - Complex64::new(expected, 0.0)).norm() < 1e-10);
                    assert!((f.character_sum(m, r, lambda) - sum).norm() < 1e-10);
                }
            }
        }
    }
}

fn poly(c: &[u32]) -> Polynomial {
    Polynomial::new(c.to_vec())
}

/// Reducible iff some monic polynomial of degree 1..=deg/2 divides it.
fn oracle_irreducible(p: u32, f: &Polynomial) -> bool {
    let n = f.degree().unwrap();
    for d in 1..=n / 2 {
        for idx in 0..(p as usize).pow(d as u32) {
            let mut c: Vec<u32> = (0..d)
                .map(|k| (idx / (p as usize).pow(k as u32) % p as usize) as u32)
                .collect();
            c.push(1);
            if f.rem(&Polynomial::new(c), p).is_zero() {
                return false;
            }
        }
    }
    n > 0
}

fn mobius(n: usize) -> i64 {
    let (mut n, mut result, mut d) = (n, 1i64, 2);
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            result = -result;
        }
        d += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Number of monic irreducibles of degree `n` over `Z_p`.
fn necklace(p: u32, n: usize) -> usize {
    let total: i64 = (1..=n)
        .filter(|d| n.is_multiple_of(*d))
        .map(|d| mobius(n / d) * (p as i64).pow(d as u32))
        .sum();
    (total / n as i64) as usize
}

#[test]
fn rabin_test_agrees_with_trial_division() {
    for p in [3u32, 5] {
        for n in 1..=4usize {
            let mut count = 0;
            for idx in 0..(p as usize).pow(n as u32) {
                let mut c: Vec<u32> = (0..n)
                    .map(|k| (idx / (p as usize).pow(k as u32) % p as usize) as u32)
                    .collect();
                c.push(1);
                let f = Polynomial::new(c);
                let irr = oracle_irreducible(p, &f);
                assert_eq!(is_irreducible(p, &f), irr, "p={p} f={f}");
                count += irr as usize;
            }
            assert_eq!(count, necklace(p, n), "p={p} n={n}");
        }
    }
}

#[test]
fn enumeration_counts_and_products() {
    for (p, ell) in [(3u32, 2usize), (3, 3), (5, 2), (7, 2), (5, 3)] {
        let set = enumerate_irreducibles(p, ell).unwrap();
        assert_eq!(set.top.len(), necklace(p, ell));
        assert_eq!(set.s(), ((p as usize).pow(ell as u32) - p as usize) / ell);
        assert_eq!(set.linear.len(), p as usize);
        assert!(set.top.windows(2).all(|w| w[0].tail() < w[1].tail()));
        let field = field_polynomial(p, ell);
        let linear = field_polynomial(p, 1);
        assert_eq!(set.linear_product(), linear);
        let (quotient, rem) = field.div_rem(&linear, p);
        assert!(rem.is_zero());
        assert_eq!(set.top_product(), quotient);
        assert_eq!(set.product(), field);
    }
}

#[test]
fn enumeration_rejects_bad_parameters() {
    assert_eq!(
        enumerate_irreducibles(9, 2).unwrap_err(),
        Error::CompositeModulus(9)
    );
    assert_eq!(
        enumerate_irreducibles(3, 4).unwrap_err(),
        Error::NonPrimeEll(4)
    );
}

#[test]
fn minimal_polynomials_vanish_on_conjugates() {
    for i in 0..FIELDS.len() {
        let f = ctx(i, &[1]);
        let p = f.p();
        for a in f.elements() {
            let m = minimal_polynomial(&f, &a);
            assert!(m.is_monic());
            assert!(is_irreducible(p, &m));
            // evaluate m at a by Horner in the field
            let mut acc = f.zero();
            for &c in m.coeffs().iter().rev() {
                acc = f.add(&f.mul(&acc, &a), &f.from_base(c));
            }
            assert!(acc.is_zero(), "minimal polynomial of {a} does not vanish");
            assert_eq!(m.degree().unwrap(), f.conjugates(&a).len());
        }
    }
}

#[test]
fn construction_checks() {
    let reducible = IrreduciblePoly::new(vec![2, 0]); // y^2 + 2 = (y-1)(y+1)
    assert_eq!(
        FieldContext::new(3, reducible, &[1]).unwrap_err(),
        Error::ReduciblePolynomial
    );
    assert_eq!(
        FieldContext::new(4, IrreduciblePoly::new(vec![1, 1]), &[1]).unwrap_err(),
        Error::CompositeModulus(4)
    );
    assert_eq!(
        FieldContext::new(3, IrreduciblePoly::new(vec![2, 1]), &[0, 0]).unwrap_err(),
        Error::ZeroPlanck
    );
    let gf9 = ctx(0, &[1]);
    let gf25 = ctx(2, &[1]);
    assert_eq!(
        gf9.check(&gf25.element(&[4, 4]).unwrap()),
        Err(Error::ContextMismatch)
    );
}

#[test]
fn polynomial_display() {
    assert_eq!(poly(&[2, 2, 1]).to_string(), "y^2 + 2y + 2");
    assert_eq!(poly(&[0, 1]).to_string(), "y");
}
