//! Coprimality of an analytic matrix function `B` with `theta I_n`, decided by
//! invertibility of `B` at the zeros of `theta`, and the interpolation witness
//! that exhibits a non-trivial kernel of `H_{B Theta^*}` when it fails.

use num_complex::Complex64;
use serde::Serialize;

use super::finite::FiniteBlaschke;
use super::model_space::model_space_basis;
use crate::error::{Error, Result};
use crate::hardy::{hankel_section, MatrixSymbol};
use crate::linalg::{determinant, op_norm, svd_null_space, CMatrix};
use crate::rational::Polynomial;
use crate::tol::{close, DEFAULT_TOL};

type C = Complex64;

const SINGULAR_REL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZeroDeterminant {
    pub alpha: [f64; 2],
    pub abs_det: f64,
    pub threshold: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoprimalityVerdict {
    pub coprime: bool,
    /// Distinct zeros of `theta` at which `B` is singular.
    pub failing: Vec<[f64; 2]>,
    pub determinants: Vec<ZeroDeterminant>,
}

fn require_analytic(b: &MatrixSymbol) -> Result<()> {
    for f in b.entries() {
        if let Some(p) = f.pole_in_closed_disk() {
            return Err(Error::NotAnalytic(p));
        }
    }
    Ok(())
}

fn singular_at(b: &MatrixSymbol, alpha: C) -> Result<ZeroDeterminant> {
    let m = b.eval(alpha)?;
    Ok(ZeroDeterminant {
        alpha: [alpha.re, alpha.im],
        abs_det: determinant(&m).norm(),
        threshold: SINGULAR_REL * (1.0 + op_norm(&m)),
    })
}

/// `B` and `theta I_n` are coprime iff `B(alpha)` is invertible at every zero.
/// Repeated zeros need no separate test: the block Taylor matrix at a zero is
/// lower block-triangular with `B(alpha)` on its diagonal.
pub fn coprimality_test(b: &MatrixSymbol, theta: &FiniteBlaschke) -> Result<CoprimalityVerdict> {
    require_analytic(b)?;
    let mut failing = Vec::new();
    let mut determinants = Vec::new();
    for &(alpha, _) in theta.zeros() {
        let d = singular_at(b, alpha)?;
        if d.abs_det <= d.threshold {
            failing.push(d.alpha);
        }
        determinants.push(d);
    }
    Ok(CoprimalityVerdict { coprime: failing.is_empty(), failing, determinants })
}

/// Polynomial vector `h` with prescribed jets at a singular zero and vanishing
/// jets at the other zeros of `theta`.
#[derive(Clone, Debug)]
pub struct HermiteWitness {
    pub alpha: C,
    pub multiplicity: usize,
    /// `jets[j][a]` is the `j`-th Taylor coefficient of component `a` at `alpha`.
    pub jets: Vec<Vec<C>>,
    pub components: Vec<Polynomial>,
    /// `||H h|| / ||h||` for a Hankel section of `B Theta^*` of length `deg theta + 8`.
    pub hankel_residual: f64,
    /// Angle between `h` and `Theta H^2_{C^n}`.
    pub angle: f64,
}

impl HermiteWitness {
    /// Block-major coefficient vector of length `len * n`.
    pub fn coefficient_vector(&self, len: usize) -> Vec<C> {
        let n = self.components.len();
        let mut v = vec![C::new(0.0, 0.0); len * n];
        for (a, p) in self.components.iter().enumerate() {
            for (j, &c) in p.coeffs().iter().enumerate().take(len) {
                v[j * n + a] = c;
            }
        }
        v
    }
}

/// Taylor blocks `B^(j)(alpha) / j!` for `j < m`.
fn taylor_blocks(b: &MatrixSymbol, alpha: C, m: usize) -> Result<Vec<CMatrix>> {
    let n = b.n();
    let mut blocks = vec![CMatrix::zeros(n, n); m];
    for r in 0..n {
        for c in 0..n {
            for (j, t) in b.entry(r, c).taylor_coeffs(alpha, m)?.into_iter().enumerate() {
                blocks[j][(r, c)] = t;
            }
        }
    }
    Ok(blocks)
}

/// Power series quotient `num / den`, first `m` terms.
fn series_div(num: &[C], den: &[C], m: usize) -> Vec<C> {
    let mut out: Vec<C> = Vec::with_capacity(m);
    for j in 0..m {
        let mut s = num.get(j).copied().unwrap_or_default();
        for (i, &o) in out.iter().enumerate() {
            s -= o * den.get(j - i).copied().unwrap_or_default();
        }
        out.push(s / den[0]);
    }
    out
}

/// `sum_j coeffs[j] (z - c)^j`
fn from_taylor(coeffs: &[C], c: C) -> Polynomial {
    let lin = Polynomial::new(vec![-c, C::new(1.0, 0.0)]);
    coeffs.iter().rev().fold(Polynomial::zero(), |acc, &a| &(&acc * &lin) + &Polynomial::constant(a))
}

pub fn hermite_witness(b: &MatrixSymbol, theta: &FiniteBlaschke, alpha0: C) -> Result<HermiteWitness> {
    require_analytic(b)?;
    let (alpha, m0) = theta
        .zeros()
        .iter()
        .copied()
        .find(|(a, _)| close(*a, alpha0, DEFAULT_TOL))
        .ok_or_else(|| Error::InvalidInput(format!("{alpha0} is not a zero of theta")))?;
    let d = singular_at(b, alpha)?;
    if d.abs_det > d.threshold {
        return Err(Error::WitnessNotNeeded(alpha));
    }
    let n = b.n();

    // lower block-triangular Taylor matrix and one of its null vectors
    let blocks = taylor_blocks(b, alpha, m0)?;
    let mut big = CMatrix::zeros(n * m0, n * m0);
    for r in 0..m0 {
        for c in 0..=r {
            big.view_mut((r * n, c * n), (n, n)).copy_from(&blocks[r - c]);
        }
    }
    let (_, null) = svd_null_space(&big, f64::INFINITY);
    let g = null.column(null.ncols() - 1).into_owned();
    let jets: Vec<Vec<C>> = (0..m0).map(|j| (0..n).map(|a| g[j * n + a]).collect()).collect();

    // h = q r with q vanishing to full order at the other zeros and r fixing
    // the jets at alpha, so deg h < deg theta
    let others: Vec<(C, usize)> = theta.zeros().iter().copied().filter(|(a, _)| *a != alpha).collect();
    let q = Polynomial::from_roots(&others);
    let q_jets: Vec<C> = (0..m0).map(|j| q.taylor_at(alpha).coeff(j)).collect();
    let components: Vec<Polynomial> = (0..n)
        .map(|a| {
            let target: Vec<C> = jets.iter().map(|row| row[a]).collect();
            &q * &from_taylor(&series_div(&target, &q_jets, m0), alpha)
        })
        .collect();

    let len = theta.degree() + 8;
    let symbol = b.scale_by(&theta.to_rational().circle_adjoint());
    let section = hankel_section(&symbol, len)?;
    let mut witness = HermiteWitness { alpha, multiplicity: m0, jets, components, hankel_residual: 0.0, angle: 0.0 };
    let v = CMatrix::from_column_slice(len * n, 1, &witness.coefficient_vector(len));
    witness.hankel_residual = (&section.matrix * &v).norm() / v.norm();

    let basis = model_space_basis(theta)?;
    let in_model: f64 = witness
        .components
        .iter()
        .flat_map(|p| basis.coordinates(p))
        .map(|x| x.norm_sqr())
        .sum();
    witness.angle = (in_model.sqrt() / v.norm()).clamp(0.0, 1.0).asin();
    Ok(witness)
}
