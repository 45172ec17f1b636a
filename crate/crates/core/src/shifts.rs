//! Weighted shifts and the Berger moment test for subnormality.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, CMatrix};
use num_complex::Complex64;

/// Both moment Hankel matrices must have min eigenvalue above this.
pub const PSD_TOL: f64 = -1e-10;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightSequence {
    pub weights: Vec<f64>,
    /// `alpha` when the prefix comes from the Cowen-Long generator.
    pub alpha: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MomentSequence {
    pub moments: Vec<f64>,
}

/// `beta_n = sqrt(1 - alpha^(2n + 2))`, `n < m`.
pub fn cowen_long_weights(alpha: f64, m: usize) -> Result<WeightSequence> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    if m == 0 {
        return Err(Error::InvalidInput("at least one weight is required".into()));
    }
    let a2 = alpha * alpha;
    let mut p = a2;
    let weights = (0..m)
        .map(|_| {
            let w = (1.0 - p).sqrt();
            p *= a2;
            w
        })
        .collect();
    Ok(WeightSequence { weights, alpha: Some(alpha) })
}

/// Double-double value `hi + lo`.
#[derive(Clone, Copy)]
struct Dd(f64, f64);

fn two_prod(a: f64, b: f64) -> Dd {
    let p = a * b;
    Dd(p, a.mul_add(b, -p))
}

fn two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    let bb = s - a;
    Dd(s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    Dd(s, b - (s - a))
}

impl Dd {
    fn mul(self, o: Dd) -> Dd {
        let Dd(p, e) = two_prod(self.0, o.0);
        quick_two_sum(p, e + self.0 * o.1 + self.1 * o.0)
    }
}

/// `gamma_0 = 1`, `gamma_{n+1} = gamma_n beta_n^2`, accumulated in
/// double-double so long products of factors near 1 keep full precision.
pub fn moment_sequence(beta: &WeightSequence) -> MomentSequence {
    let mut acc = Dd(1.0, 0.0);
    let mut moments = Vec::with_capacity(beta.weights.len() + 1);
    moments.push(1.0);
    for (n, &b) in beta.weights.iter().enumerate() {
        let sq = match beta.alpha {
            // exact generator: 1 - alpha^(2n+2) without going through sqrt
            Some(a) => {
                let mut pw = Dd(1.0, 0.0);
                let a2 = two_prod(a, a);
                for _ in 0..=n {
                    pw = pw.mul(a2);
                }
                let Dd(s, e) = two_sum(1.0, -pw.0);
                quick_two_sum(s, e - pw.1)
            }
            None => two_prod(b, b),
        };
        acc = acc.mul(sq);
        moments.push(acc.0 + acc.1);
    }
    MomentSequence { moments }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShiftVerdict {
    SubnormalConsistent,
    NotSubnormal,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BergerTest {
    pub k: usize,
    pub min_eig_h0: f64,
    pub min_eig_h1: f64,
    pub verdict: ShiftVerdict,
}

fn moment_hankel(g: &[f64], k: usize, offset: usize) -> CMatrix {
    CMatrix::from_fn(k, k, |i, j| Complex64::new(g[i + j + offset], 0.0))
}

/// `[gamma_{i+j}]` and `[gamma_{i+j+1}]`, `0 <= i, j < k`, must both be PSD.
pub fn berger_psd_test(gamma: &MomentSequence, k: usize) -> Result<BergerTest> {
    let g = &gamma.moments;
    if k == 0 || g.len() < 2 * k {
        return Err(Error::InsufficientMoments { needed: 2 * k.max(1), available: g.len() });
    }
    let min_eig = |m: CMatrix| hermitian_eigenvalues(&m).first().copied().unwrap_or(0.0);
    let min_eig_h0 = min_eig(moment_hankel(g, k, 0));
    let min_eig_h1 = min_eig(moment_hankel(g, k, 1));
    let verdict = if min_eig_h0 >= PSD_TOL && min_eig_h1 >= PSD_TOL {
        ShiftVerdict::SubnormalConsistent
    } else {
        ShiftVerdict::NotSubnormal
    };
    Ok(BergerTest { k, min_eig_h0, min_eig_h1, verdict })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CowenLongReport {
    pub alpha: f64,
    pub k: usize,
    #[serde(rename = "min_eig_H0")]
    pub min_eig_h0: f64,
    #[serde(rename = "min_eig_H1")]
    pub min_eig_h1: f64,
    pub verdict: ShiftVerdict,
}

pub fn cowen_long_report(alpha: f64, k: usize) -> Result<CowenLongReport> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be at least 1".into()));
    }
    let w = cowen_long_weights(alpha, 2 * k)?;
    let t = berger_psd_test(&moment_sequence(&w), k)?;
    Ok(CowenLongReport { alpha, k, min_eig_h0: t.min_eig_h0, min_eig_h1: t.min_eig_h1, verdict: t.verdict })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_and_moments() {
        let w = cowen_long_weights(0.5, 4).unwrap();
        assert!((w.weights[0] - 0.75f64.sqrt()).abs() < 1e-15);
        assert!((w.weights[1] - 0.9375f64.sqrt()).abs() < 1e-15);
        let g = moment_sequence(&w).moments;
        assert_eq!(g[0], 1.0);
        assert!((g[1] - 0.75).abs() < 1e-15);
        assert!((g[2] - 0.703125).abs() < 1e-15);
        assert!(cowen_long_weights(1.0, 3).is_err());
        assert!(cowen_long_weights(0.0, 3).is_err());

        let tiny = cowen_long_weights(1e-6, 5).unwrap();
        assert!(tiny.weights.iter().all(|w| (w - 1.0).abs() < 1e-11));
    }

    #[test]
    fn berger_examples() {
        let unilateral = MomentSequence { moments: vec![1.0; 6] };
        assert_eq!(berger_psd_test(&unilateral, 3).unwrap().verdict, ShiftVerdict::SubnormalConsistent);

        let bad = MomentSequence { moments: vec![1.0, 1.0, 0.25, 0.25] };
        let t = berger_psd_test(&bad, 2).unwrap();
        assert_eq!(t.verdict, ShiftVerdict::NotSubnormal);

        assert!(matches!(berger_psd_test(&bad, 3), Err(Error::InsufficientMoments { needed: 6, available: 4 })));

        let r = cowen_long_report(0.5, 8).unwrap();
        assert_eq!(r.verdict, ShiftVerdict::SubnormalConsistent);
    }
}
