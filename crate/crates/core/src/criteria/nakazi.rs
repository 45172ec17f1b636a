//! Rank of the self-commutator against the degree of a Blaschke witness, and a
//! bounded search for such witnesses of low degree.

use num_complex::Complex64;
use serde::Serialize;

use super::witness::{witness_certify, WitnessCertificate};
use crate::blaschke::FiniteBlaschke;
use crate::error::{Error, Result};
use crate::hardy::{numerical_rank_and_kernel, self_commutator_section, MatrixSymbol};

type C = Complex64;

const SAMPLES: usize = 128;
const CHECKED_COEFFS: usize = 12;
const MAX_RADIUS: f64 = 0.98;

#[derive(Clone, Debug, Serialize)]
pub struct NakaziTakahashi {
    pub holds: bool,
    pub rank: usize,
    pub degree: usize,
    pub section_length: usize,
    pub certificate: WitnessCertificate,
}

fn scalar(phi: &MatrixSymbol) -> Result<()> {
    if phi.n() != 1 {
        return Err(Error::DimensionMismatch("a scalar symbol is required".into()));
    }
    Ok(())
}

/// The rank of `[T_phi^*, T_phi]` equals the degree of `b` for `b in E(phi)`.
pub fn nakazi_takahashi_check(phi: &MatrixSymbol, b: &FiniteBlaschke, tol: f64) -> Result<NakaziTakahashi> {
    scalar(phi)?;
    let k = MatrixSymbol::scalar(b.to_rational())?;
    let certificate = witness_certify(phi, &k)?;
    if !certificate.certified {
        return Err(Error::WitnessRejected(certificate.reason.unwrap_or_default()));
    }
    let len = phi.certified_section_length().max(b.degree() + 8);
    let s = self_commutator_section(phi, len)?;
    let rank = numerical_rank_and_kernel(&s, tol.max(2.0 * s.tail_bound))?.rank;
    Ok(NakaziTakahashi { holds: rank == b.degree(), rank, degree: b.degree(), section_length: len, certificate })
}

/// Blaschke product `e^{i psi} prod b_{alpha_j}` from a flat parameter vector
/// `[psi, re a_1, im a_1, ...]`.
fn blaschke_of(p: &[f64]) -> Option<FiniteBlaschke> {
    let zeros: Vec<(C, usize)> = p[1..].chunks(2).map(|a| (C::new(a[0], a[1]), 1)).collect();
    FiniteBlaschke::new(C::from_polar(1.0, p[0]), zeros).ok()
}

struct Residual {
    samples: Vec<(C, C)>,
    scale: f64,
}

impl Residual {
    fn new(phi: &MatrixSymbol) -> Self {
        let f = phi.entry(0, 0);
        let samples: Vec<(C, C)> = (0..SAMPLES)
            .map(|i| {
                let z = C::from_polar(1.0, std::f64::consts::TAU * i as f64 / SAMPLES as f64);
                (z, f.value(z))
            })
            .collect();
        let scale = samples.iter().map(|s| s.1.norm()).fold(0.0, f64::max).max(1e-300);
        Residual { samples, scale }
    }

    /// Anti-analytic Fourier coefficients of `phi - b conj(phi)`, stacked as
    /// real and imaginary parts and scaled by `sup |phi|`.
    fn eval(&self, p: &[f64]) -> Vec<f64> {
        let b = match blaschke_of(p) {
            Some(b) => b,
            None => return vec![f64::INFINITY; 2 * CHECKED_COEFFS],
        };
        let g: Vec<(C, C)> = self.samples.iter().map(|&(z, f)| (z, f - b.eval(z) * f.conj())).collect();
        let mut out = Vec::with_capacity(2 * CHECKED_COEFFS);
        for k in 1..=CHECKED_COEFFS {
            let c: C = g.iter().map(|&(z, v)| v * z.powu(k as u32)).sum::<C>() / (SAMPLES as f64 * self.scale);
            out.push(c.re);
            out.push(c.im);
        }
        out
    }

    fn norm(&self, p: &[f64]) -> f64 {
        self.eval(p).iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap())?;
        if a[piv][col].abs() < 1e-300 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            for c in col..n {
                a[r][c] -= f * a[col][c];
            }
            b[r] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|c| a[r][c] * x[c]).sum();
        x[r] = (b[r] - s) / a[r][r];
    }
    Some(x)
}

/// Levenberg-Marquardt on the residual with a forward-difference Jacobian.
fn refine(res: &Residual, mut p: Vec<f64>) -> (Vec<f64>, f64) {
    let mut lambda = 1e-3;
    let mut r = res.eval(&p);
    let mut cost: f64 = r.iter().map(|x| x * x).sum();
    for _ in 0..60 {
        if cost < 1e-28 {
            break;
        }
        let h = 1e-7;
        let jac: Vec<Vec<f64>> = (0..p.len())
            .map(|j| {
                let mut q = p.clone();
                q[j] += h;
                res.eval(&q).iter().zip(&r).map(|(a, b)| (a - b) / h).collect()
            })
            .collect();
        let n = p.len();
        let mut jtj = vec![vec![0.0; n]; n];
        let mut jtr = vec![0.0; n];
        for i in 0..n {
            for j in 0..n {
                jtj[i][j] = jac[i].iter().zip(&jac[j]).map(|(a, b)| a * b).sum();
            }
            jtr[i] = -jac[i].iter().zip(&r).map(|(a, b)| a * b).sum::<f64>();
        }
        let mut improved = false;
        for _ in 0..8 {
            let mut damped = jtj.clone();
            for (i, row) in damped.iter_mut().enumerate() {
                row[i] += lambda * (1.0 + jtj[i][i]);
            }
            let Some(step) = solve(damped, jtr.clone()) else { break };
            let cand: Vec<f64> = p.iter().zip(&step).map(|(a, s)| a + s).collect();
            let ok_radius = cand[1..].chunks(2).all(|a| a[0].hypot(a[1]) < MAX_RADIUS);
            let rc = res.eval(&cand);
            let cc: f64 = rc.iter().map(|x| x * x).sum();
            if ok_radius && cc < cost {
                p = cand;
                r = rc;
                cost = cc;
                lambda = (lambda / 4.0).max(1e-12);
                improved = true;
                break;
            }
            lambda *= 8.0;
        }
        if !improved {
            break;
        }
    }
    (p, cost.sqrt())
}

fn polar_grid(radii: &[f64], angles: usize) -> Vec<[f64; 2]> {
    let mut pts = vec![[0.0, 0.0]];
    for &r in radii {
        for k in 0..angles {
            let t = std::f64::consts::TAU * k as f64 / angles as f64;
            pts.push([r * t.cos(), r * t.sin()]);
        }
    }
    pts
}

fn candidates(degree: usize) -> Vec<Vec<f64>> {
    let phases = |m: usize| (0..m).map(move |k| std::f64::consts::TAU * k as f64 / m as f64);
    match degree {
        0 => phases(64).map(|psi| vec![psi]).collect(),
        1 => {
            let grid = polar_grid(&[0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9], 16);
            phases(16).flat_map(|psi| grid.iter().map(move |a| vec![psi, a[0], a[1]])).collect()
        }
        _ => {
            let grid = polar_grid(&[0.25, 0.5, 0.75], 8);
            let mut out = Vec::new();
            for psi in phases(8) {
                for i in 0..grid.len() {
                    for j in i..grid.len() {
                        out.push(vec![psi, grid[i][0], grid[i][1], grid[j][0], grid[j][1]]);
                    }
                }
            }
            out
        }
    }
}

/// Search Blaschke products of degree at most 2 for a member of `E(phi)`,
/// lowest degree first. Every returned product has passed `witness_certify`.
pub fn find_blaschke_witness(phi: &MatrixSymbol) -> Result<Option<FiniteBlaschke>> {
    scalar(phi)?;
    let res = Residual::new(phi);
    for degree in 0..=2 {
        let mut scored: Vec<(f64, Vec<f64>)> = candidates(degree).into_iter().map(|p| (res.norm(&p), p)).collect();
        scored.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        for (_, start) in scored.into_iter().take(6) {
            let (p, cost) = refine(&res, start);
            if cost > 1e-9 {
                continue;
            }
            let Some(b) = blaschke_of(&p) else { continue };
            let k = MatrixSymbol::scalar(b.to_rational())?;
            if witness_certify(phi, &k)?.certified {
                return Ok(Some(b));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C {
        C::new(re, 0.0)
    }

    #[test]
    fn degree_one_witness() {
        let phi = MatrixSymbol::laurent(-1, &[c(1.0), c(0.0), c(2.0)]);
        let b = find_blaschke_witness(&phi).unwrap().expect("a degree-one witness exists");
        assert_eq!(b.degree(), 1);
        assert!((b.eval(c(0.0)) - c(0.5)).norm() < 1e-8);
        let r = nakazi_takahashi_check(&phi, &b, 1e-8).unwrap();
        assert!(r.holds && r.rank == 1);
    }

    #[test]
    fn normal_symbols_have_constant_witnesses() {
        let w = C::from_polar(1.0, 0.7);
        let phi = MatrixSymbol::laurent(-1, &[c(1.0), c(0.0), w]);
        let b = find_blaschke_witness(&phi).unwrap().unwrap();
        assert_eq!(b.degree(), 0);
        assert!((b.phase() - w).norm() < 1e-8);
        let r = nakazi_takahashi_check(&phi, &b, 1e-8).unwrap();
        assert!(r.holds && r.rank == 0);
    }

    #[test]
    fn rejects_non_members() {
        let phi = MatrixSymbol::laurent(-1, &[c(1.0), c(0.0), c(2.0)]);
        assert!(matches!(
            nakazi_takahashi_check(&phi, &FiniteBlaschke::power_of_z(1), 1e-8),
            Err(Error::WitnessRejected(_))
        ));
    }
}
