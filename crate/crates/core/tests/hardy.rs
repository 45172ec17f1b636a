mod common;

use common::*;
use rand::Rng;
use toeplitz_lab::blaschke::FiniteBlaschke;
use toeplitz_lab::hardy::{
    hankel_kernel_inner, hankel_section, self_commutator_section, toeplitz_section, MatrixSymbol,
};
use toeplitz_lab::linalg::{hermitian_defect, op_norm, CMatrix};
use toeplitz_lab::rational::{Polynomial, RationalFunction};

/// Entries with one or two poles, each at modulus in `[0.2, 0.7]` or `[1.5, 3]`.
fn random_rational_symbol(rng: &mut impl Rng, n: usize) -> MatrixSymbol {
    let entries = (0..n * n)
        .map(|_| {
            let poles = (0..rng.gen_range(1..=2))
                .map(|_| {
                    let r = if rng.gen_bool(0.5) { rng.gen_range(0.2..0.7) } else { rng.gen_range(1.5..3.0) };
                    (toeplitz_lab::Complex64::from_polar(r, rng.gen_range(0.0..std::f64::consts::TAU)), 1)
                })
                .collect();
            let deg = rng.gen_range(0..=2);
            RationalFunction::from_parts(random_poly(rng, deg), poles)
        })
        .collect();
    MatrixSymbol::new(n, entries).unwrap()
}

fn sampled_toeplitz(phi: &MatrixSymbol, len: usize, m: usize) -> CMatrix {
    let n = phi.n();
    let lo = -(len as i64) + 1;
    let hi = len as i64 - 1;
    let coeffs: Vec<Vec<_>> = (0..n * n)
        .map(|e| dft(|z| phi.entry(e / n, e % n).eval(z).unwrap(), m, lo, hi))
        .collect();
    CMatrix::from_fn(n * len, n * len, |r, s| {
        let (j, a, k, b) = (r / n, r % n, s / n, s % n);
        coeffs[a * n + b][(j as i64 - k as i64 - lo) as usize]
    })
}

fn block(m: &CMatrix, rows: usize, cols: usize) -> CMatrix {
    m.view((0, 0), (rows, cols)).into_owned()
}

#[test]
fn sections_match_sampled_coefficients() {
    let mut rng = rng(21);
    for n in [1, 2, 3] {
        let phi = random_rational_symbol(&mut rng, n);
        let t = toeplitz_section(&phi, 10).unwrap().matrix;
        let h = hankel_section(&phi, 10).unwrap().matrix;
        let eval = |z| phi.eval(z).unwrap();
        assert!((t - sampled_toeplitz(&phi, 10, 2048)).camax() < 1e-10);
        assert!((h - sampled_hankel(eval, n, 10, 2048)).camax() < 1e-10);
    }
}

#[test]
fn shift_intertwining() {
    let mut rng = rng(22);
    let phi = random_rational_symbol(&mut rng, 2);
    let (n, len) = (2, 12);
    let t = toeplitz_section(&phi, len).unwrap().matrix;
    let h = hankel_section(&phi, len).unwrap().matrix;
    let d = n * (len - 1);
    // S^* T S = T and H S = S^* H, read off as shifted blocks
    assert_eq!(t.view((n, n), (d, d)), t.view((0, 0), (d, d)));
    assert_eq!(h.view((0, n), (d, d)), h.view((n, 0), (d, d)));
}

#[test]
fn adjoint_symbol_gives_adjoint_section_and_hermitian_commutator() {
    let mut rng = rng(23);
    for n in [1, 2] {
        let phi = random_rational_symbol(&mut rng, n);
        let t = toeplitz_section(&phi, 9).unwrap().matrix;
        let ta = toeplitz_section(&phi.adjoint(), 9).unwrap().matrix;
        assert!((ta - t.adjoint()).camax() < 1e-12);
        let s = self_commutator_section(&phi, 9).unwrap();
        assert_eq!(hermitian_defect(&s.matrix), 0.0);
    }
}

#[test]
fn commutator_of_trigonometric_symbol_is_exact() {
    let mut rng = rng(24);
    for n in [1, 2] {
        let phi = random_trig(&mut rng, n, -3, 3);
        let (len, guard) = (16, 3);
        let (nn, mm) = (n * len, n * (len + guard));
        let t = toeplitz_section(&phi, len + guard).unwrap().matrix;
        let ta = t.adjoint();
        let direct = block(&ta, nn, mm) * block(&t, mm, nn) - block(&t, nn, mm) * block(&ta, mm, nn);
        let s = self_commutator_section(&phi, len).unwrap();
        assert!((s.matrix - direct).camax() < 1e-12);
        assert_eq!(s.tail_bound, 0.0);
    }
}

#[test]
fn tail_bound_covers_truncation_and_shrinks() {
    let mut rng = rng(25);
    for n in [1, 2] {
        let phi = random_rational_symbol(&mut rng, n);
        let mut prev = f64::INFINITY;
        for len in [6, 12, 24] {
            let s = self_commutator_section(&phi, len).unwrap();
            let big = self_commutator_section(&phi, 4 * len).unwrap();
            let d = n * len;
            let gap = op_norm(&(&s.matrix - block(&big.matrix, d, d)));
            assert!(gap <= s.tail_bound + big.tail_bound + 1e-12, "len {len}: gap {gap:e}, tail {:e}", s.tail_bound);
            assert!(s.tail_bound < prev);
            prev = s.tail_bound;
        }
    }
}

#[test]
fn hankel_kernel_of_conjugate_inner_multiple() {
    let mut rng = rng(26);
    for d in 1..=4 {
        let zeros = separated_points(&mut rng, d, 0.8, 0.25);
        let theta = FiniteBlaschke::new(c(1.0, 0.0), zeros.iter().map(|&a| (a, 1)).collect()).unwrap();
        let b = loop {
            let b = random_poly(&mut rng, 2);
            if zeros.iter().all(|&a| b.eval(a).norm() > 0.2) {
                break b;
            }
        };
        let fbar = theta.to_rational().circle_adjoint().mul(&RationalFunction::polynomial(b));
        let got = hankel_kernel_inner(&MatrixSymbol::scalar(fbar).unwrap()).unwrap();
        assert!(got.divides(&theta) && theta.divides(&got));
    }
    // analytic symbols have a trivial Hankel
    let p = MatrixSymbol::scalar(RationalFunction::polynomial(Polynomial::from_real(&[1.0, 2.0]))).unwrap();
    assert_eq!(hankel_kernel_inner(&p).unwrap().degree(), 0);
}
