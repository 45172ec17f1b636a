use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::hardy::MatrixSymbol;
use crate::linalg::{op_norm, CMatrix};
use crate::tol::RESIDUE_TOL;

const GRID: usize = 256;
const NORM_SLACK: f64 = 1e-9;

/// Evidence for `K in E(Phi)`: `K` analytic, `||K||_inf <= 1` and
/// `Phi - K Phi^*` analytic.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessCertificate {
    pub certified: bool,
    pub k_analytic: bool,
    /// Largest `||K(z)||` found on the grid after local refinement.
    pub sup_norm: f64,
    /// Grid maximum plus the derivative-based Lipschitz allowance.
    pub sup_norm_bound: f64,
    /// Largest principal-part coefficient left inside the disk in `Phi - K Phi^*`.
    pub max_inner_residue: f64,
    /// Largest anti-analytic Fourier coefficient of `Phi - K Phi^*` checked.
    pub max_anti_analytic_coeff: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

fn norm_at(k: &MatrixSymbol, t: f64) -> f64 {
    op_norm(&k.on_circle(t))
}

/// Golden-section search for a local maximum of `||K(e^{it})||` on `[a, b]`.
fn refine_max(k: &MatrixSymbol, mut a: f64, mut b: f64) -> f64 {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = b - g * (b - a);
    let mut x2 = a + g * (b - a);
    let (mut f1, mut f2) = (norm_at(k, x1), norm_at(k, x2));
    for _ in 0..40 {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = norm_at(k, x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = norm_at(k, x1);
        }
    }
    f1.max(f2)
}

fn derivative_norm(k: &MatrixSymbol, t: f64) -> Result<f64> {
    let z = num_complex::Complex64::from_polar(1.0, t);
    let n = k.n();
    let mut d = CMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            d[(i, j)] = k.entry(i, j).eval_derivative(z)?;
        }
    }
    Ok(d.norm())
}

pub fn witness_certify(phi: &MatrixSymbol, k: &MatrixSymbol) -> Result<WitnessCertificate> {
    let mut cert = WitnessCertificate {
        certified: false,
        k_analytic: k.entries().iter().all(|f| f.pole_in_closed_disk().is_none()),
        sup_norm: 0.0,
        sup_norm_bound: 0.0,
        max_inner_residue: 0.0,
        max_anti_analytic_coeff: 0.0,
        reason: None,
    };
    if phi.n() != k.n() {
        cert.reason = Some("witness and symbol differ in size".into());
        return Ok(cert);
    }

    let step = std::f64::consts::TAU / GRID as f64;
    let mut samples: Vec<(f64, f64)> = (0..GRID).map(|i| (i as f64 * step, norm_at(k, i as f64 * step))).collect();
    let mut dmax: f64 = 0.0;
    for &(t, _) in &samples {
        dmax = dmax.max(derivative_norm(k, t)?);
    }
    let grid_max = samples.iter().map(|s| s.1).fold(0.0, f64::max);
    samples.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap());
    cert.sup_norm = samples
        .iter()
        .take(4)
        .map(|&(t, v)| v.max(refine_max(k, t - step, t + step)))
        .fold(grid_max, f64::max);
    cert.sup_norm_bound = grid_max + dmax * step / 2.0;

    let r = phi.sub(&k.mul(&phi.adjoint())?)?;
    let mut depth = 0;
    for f in r.entries() {
        depth = depth.max(f.den().degree().unwrap_or(0));
        for t in f.partial_fractions().terms.iter().filter(|t| t.pole.norm() < 1.0) {
            for c in &t.coefficients {
                cert.max_inner_residue = cert.max_inner_residue.max(c.norm());
            }
        }
    }
    for f in r.entries() {
        for c in f.fourier_coeffs(-(depth as i64 + 8), -1)? {
            cert.max_anti_analytic_coeff = cert.max_anti_analytic_coeff.max(c.norm());
        }
    }

    cert.reason = if !cert.k_analytic {
        Some("K has a pole in the closed disk".into())
    } else if cert.sup_norm > 1.0 + NORM_SLACK {
        Some(format!("||K||_inf = {} > 1", cert.sup_norm))
    } else if cert.max_inner_residue > RESIDUE_TOL || cert.max_anti_analytic_coeff > RESIDUE_TOL {
        Some("Phi - K Phi^* is not analytic".into())
    } else {
        None
    };
    cert.certified = cert.reason.is_none();
    Ok(cert)
}
