//! Shared generators and sampling oracles. Nothing here calls the residue
//! machinery: Fourier coefficients are estimated from circle samples.

#![allow(dead_code)]

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use toeplitz_lab::blaschke::FiniteBlaschke;
use toeplitz_lab::hardy::MatrixSymbol;
use toeplitz_lab::linalg::CMatrix;
use toeplitz_lab::rational::{Polynomial, RationalFunction};
use toeplitz_lab::Complex64 as C;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

/// Uniform in the disk of radius `r`.
pub fn in_disk(rng: &mut impl Rng, r: f64) -> C {
    C::from_polar(r * rng.gen::<f64>().sqrt(), rng.gen_range(0.0..std::f64::consts::TAU))
}

pub fn gaussian_c(rng: &mut impl Rng) -> C {
    c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// Zeros in the disk of radius `rmax`, pairwise at least `sep` apart.
pub fn separated_points(rng: &mut impl Rng, count: usize, rmax: f64, sep: f64) -> Vec<C> {
    let mut pts: Vec<C> = Vec::new();
    while pts.len() < count {
        let p = in_disk(rng, rmax);
        if pts.iter().all(|q| (p - q).norm() >= sep) {
            pts.push(p);
        }
    }
    pts
}

pub fn random_blaschke(rng: &mut impl Rng, degree: usize, rmax: f64) -> FiniteBlaschke {
    let zeros = (0..degree).map(|_| (in_disk(rng, rmax), 1)).collect();
    FiniteBlaschke::new(C::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU)), zeros).unwrap()
}

pub fn random_poly(rng: &mut impl Rng, degree: usize) -> Polynomial {
    Polynomial::new((0..=degree).map(|_| gaussian_c(rng)).collect())
}

/// `n x n` trigonometric polynomial with powers in `lo..=hi`.
pub fn random_trig(rng: &mut impl Rng, n: usize, lo: i64, hi: i64) -> MatrixSymbol {
    let entries = (0..n * n)
        .map(|_| {
            let coeffs: Vec<C> = (lo..=hi).map(|_| gaussian_c(rng)).collect();
            RationalFunction::laurent(lo, &coeffs)
        })
        .collect();
    MatrixSymbol::new(n, entries).unwrap()
}

pub fn circle(m: usize) -> Vec<C> {
    (0..m).map(|i| C::from_polar(1.0, std::f64::consts::TAU * i as f64 / m as f64)).collect()
}

/// Trapezoidal estimate of Fourier coefficients `k in lo..=hi` from `m`
/// samples of `f` on the circle.
pub fn dft(f: impl Fn(C) -> C, m: usize, lo: i64, hi: i64) -> Vec<C> {
    let zs = circle(m);
    let vals: Vec<C> = zs.iter().map(|&z| f(z)).collect();
    (lo..=hi)
        .map(|k| {
            zs.iter().zip(&vals).map(|(z, v)| v * z.powi(-k as i32)).sum::<C>() / m as f64
        })
        .collect()
}

/// Block Hankel section `[F^(-j-k-1)]` of an `n x n` matrix function given
/// by its values, estimated by sampling.
pub fn sampled_hankel(f: impl Fn(C) -> CMatrix, n: usize, len: usize, m: usize) -> CMatrix {
    let zs = circle(m);
    let vals: Vec<CMatrix> = zs.iter().map(|&z| f(z)).collect();
    let coeff = |k: i64| -> CMatrix {
        let mut acc = CMatrix::zeros(n, n);
        for (z, v) in zs.iter().zip(&vals) {
            acc += v * z.powi(-k as i32);
        }
        acc / C::new(m as f64, 0.0)
    };
    let blocks: Vec<CMatrix> = (0..2 * len).map(|s| coeff(-(s as i64) - 1)).collect();
    let mut h = CMatrix::zeros(n * len, n * len);
    for j in 0..len {
        for k in 0..len {
            let b = &blocks[j + k];
            for a in 0..n {
                for bb in 0..n {
                    h[(j * n + a, k * n + bb)] = b[(a, bb)];
                }
            }
        }
    }
    h
}

pub fn numerical_rank(m: &CMatrix, rel: f64) -> usize {
    let sv = m.singular_values();
    let smax = sv.iter().copied().fold(0.0, f64::max);
    sv.iter().filter(|&&s| s > rel * smax).count()
}

/// Max entrywise difference of two matrix symbols on `m` circle points.
pub fn sampled_distance(a: &MatrixSymbol, b: &MatrixSymbol, m: usize) -> f64 {
    circle(m)
        .into_iter()
        .map(|z| (a.eval(z).unwrap() - b.eval(z).unwrap()).iter().map(|x| x.norm()).fold(0.0, f64::max))
        .fold(0.0, f64::max)
}
