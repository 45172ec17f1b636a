mod common;

use common::*;
use rand::Rng;
use toeplitz_lab::blaschke::{coprimality_test, FiniteBlaschke};
use toeplitz_lab::criteria::{
    classify, divisibility_check, hyponormal_psd_test, verify_coupled_family, witness_certify, Conclusion, Verdict,
};
use toeplitz_lab::hardy::MatrixSymbol;
use toeplitz_lab::rational::RationalFunction;
use toeplitz_lab::Complex64 as C;

/// `f + conj(g)` with `g = P_+(conj(k) f)` for analytic polynomials `f`, `k`.
fn with_witness(f: &[C], k: &[C]) -> MatrixSymbol {
    let deg = f.len() - 1;
    let g: Vec<C> = (0..=deg)
        .map(|j| k.iter().enumerate().filter(|(i, _)| i + j <= deg).map(|(i, ki)| ki.conj() * f[i + j]).sum())
        .collect();
    let mut coeffs: Vec<C> = (1..=deg).rev().map(|j| g[j].conj()).collect();
    coeffs.push(f[0] + g[0].conj());
    coeffs.extend_from_slice(&f[1..]);
    MatrixSymbol::laurent(-(deg as i64), &coeffs)
}

#[test]
fn certified_witness_excludes_negative_verdict() {
    let mut rng = rng(31);
    for _ in 0..20 {
        let deg = rng.gen_range(1..=3);
        let f: Vec<C> = (0..=deg).map(|_| gaussian_c(&mut rng)).collect();
        let mut k: Vec<C> = (0..rng.gen_range(1..=2)).map(|_| gaussian_c(&mut rng)).collect();
        // sup |k| <= sum |k_i| = 0.9
        let l1: f64 = k.iter().map(|x| x.norm()).sum();
        k.iter_mut().for_each(|x| *x *= 0.9 / l1);
        let phi = with_witness(&f, &k);
        let cert = witness_certify(&phi, &MatrixSymbol::laurent(0, &k)).unwrap();
        assert!(cert.certified, "{cert:?}");
        let v = hyponormal_psd_test(&phi, phi.certified_section_length().max(16), 1e-8).unwrap();
        assert_ne!(v.verdict, Verdict::NotHyponormal, "min eigenvalue {}", v.min_eigenvalue);
    }
}

#[test]
fn witnesses_outside_the_unit_ball_are_not_certified() {
    let phi = with_witness(&[c(0.0, 0.0), c(1.0, 0.0)], &[c(0.5, 0.0)]);
    assert!(witness_certify(&phi, &MatrixSymbol::laurent(0, &[c(0.5, 0.0)])).unwrap().certified);
    assert!(!witness_certify(&phi, &MatrixSymbol::laurent(0, &[c(1.5, 0.0)])).unwrap().certified);
}

#[test]
fn failed_divisibility_forces_negative_verdict() {
    let mut rng = rng(32);
    for trial in 0..25 {
        // co-analytic degree strictly above the analytic one
        let minus = rng.gen_range(2..=4);
        let plus = rng.gen_range(1..minus);
        let mut coeffs: Vec<C> = (0..=minus + plus).map(|_| gaussian_c(&mut rng)).collect();
        coeffs[0] = C::from_polar(rng.gen_range(0.5..2.0), rng.gen_range(0.0..6.0));
        coeffs[minus + plus] = C::from_polar(rng.gen_range(0.5..2.0), rng.gen_range(0.0..6.0));
        let scalar = MatrixSymbol::laurent(-(minus as i64), &coeffs);
        let phi = if trial % 5 == 4 {
            // block diagonal with an analytic companion
            let analytic = RationalFunction::laurent(0, &[c(1.0, 0.0), c(0.5, 0.0)]);
            MatrixSymbol::from_rows(vec![
                vec![scalar.entry(0, 0).clone(), RationalFunction::zero()],
                vec![RationalFunction::zero(), analytic],
            ])
            .unwrap()
        } else {
            scalar
        };
        assert!(!divisibility_check(&phi).unwrap().divisible);
        let v = hyponormal_psd_test(&phi, phi.certified_section_length().max(16), 1e-8).unwrap();
        assert_eq!(v.verdict, Verdict::NotHyponormal, "trial {trial}: min eigenvalue {}", v.min_eigenvalue);
    }
}

#[test]
fn coupled_family_for_composite_inner_functions() {
    let b = |a: C| FiniteBlaschke::factor(a).unwrap();
    for theta in [
        FiniteBlaschke::power_of_z(1).mul(&b(c(0.5, 0.0))),
        FiniteBlaschke::new(c(1.0, 0.0), vec![(c(0.0, 0.3), 2)]).unwrap(),
        b(c(-0.4, 0.0)).mul(&b(c(0.2, 0.5))),
    ] {
        let r = verify_coupled_family(&theta, 32, 1e-8).unwrap();
        assert!(r.matches_prediction, "{r:?}");
        assert_eq!(r.rank, theta.degree());
        assert!((r.top_eigenvalue - 4.0).abs() < 1e-8);
    }
}

#[test]
fn scalar_symbols_always_pass_coprimality() {
    let mut rng = rng(33);
    for _ in 0..15 {
        let d = rng.gen_range(1..=3);
        let theta = random_blaschke(&mut rng, d, 0.8);
        let deg = rng.gen_range(0..=3);
        let b = MatrixSymbol::scalar(RationalFunction::polynomial(random_poly(&mut rng, deg))).unwrap();
        let phi = MatrixSymbol::scalar(theta.to_rational().circle_adjoint().mul(b.entry(0, 0))).unwrap();
        let report = classify(&phi, 24, 1e-8).unwrap();
        assert!(report.checks.coprimality.pass, "{:?}", report.checks.coprimality);
        // the reduced cofactor never vanishes at a zero of the reduced inner part
        let reduced = phi.coanalytic_inner().unwrap();
        assert!(coprimality_test(&phi.coanalytic_cofactor(&reduced), &reduced).unwrap().coprime);
    }
}

#[test]
fn classification_never_contradicts_on_random_trig_symbols() {
    let mut rng = rng(34);
    for _ in 0..20 {
        let n = rng.gen_range(1..=2);
        let phi = random_trig(&mut rng, n, -2, 2);
        let r = classify(&phi, 24, 1e-8).unwrap();
        assert_ne!(r.conclusion, Conclusion::Contradiction, "{r:?}");
    }
}
