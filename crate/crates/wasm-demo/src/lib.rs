//! Browser bindings for the demo page in `www/`. Every export takes plain
//! numbers and returns a JSON string; failures come back as `{"error": ...}`.

use serde_json::{json, Value};
use toeplitz_lab::blaschke::FiniteBlaschke;
use toeplitz_lab::criteria::{
    classify, coupled_family, find_blaschke_witness, hyponormal_psd_test, verify_coupled_family,
};
use toeplitz_lab::hardy::{self_commutator_section, MatrixSymbol};
use toeplitz_lab::linalg::hermitian_eigenvalues;
use toeplitz_lab::shifts::{berger_psd_test, cowen_long_weights, moment_sequence};
use toeplitz_lab::tol::DEFAULT_TOL;
use toeplitz_lab::Complex64;
use wasm_bindgen::prelude::*;

const MAX_SECTION: usize = 96;

fn finish(r: Result<Value, String>) -> String {
    r.unwrap_or_else(|e| json!({ "error": e })).to_string()
}

fn check_section(n: usize) -> Result<usize, String> {
    if (1..=MAX_SECTION).contains(&n) {
        Ok(n)
    } else {
        Err(format!("section length must be between 1 and {MAX_SECTION}"))
    }
}

fn spectrum(phi: &MatrixSymbol, n: usize) -> Result<Vec<f64>, String> {
    let s = self_commutator_section(phi, n).map_err(|e| e.to_string())?;
    Ok(hermitian_eigenvalues(&s.matrix))
}

/// Scalar trigonometric polynomial `sum_k (re[k] + i im[k]) z^(lowest + k)`:
/// commutator spectrum, PSD verdict, classification and a witness search.
#[wasm_bindgen]
pub fn probe_laurent(lowest: i32, re: &[f64], im: &[f64], section: usize) -> String {
    finish((|| {
        if re.len() != im.len() || re.is_empty() {
            return Err("need matching, non-empty coefficient lists".to_string());
        }
        let n = check_section(section)?;
        let coeffs: Vec<Complex64> = re.iter().zip(im).map(|(&a, &b)| Complex64::new(a, b)).collect();
        let phi = MatrixSymbol::laurent(lowest as i64, &coeffs);
        let hyp = hyponormal_psd_test(&phi, n, DEFAULT_TOL).map_err(|e| e.to_string())?;
        let cls = classify(&phi, n, DEFAULT_TOL).map_err(|e| e.to_string())?;
        let witness = find_blaschke_witness(&phi).map_err(|e| e.to_string())?;
        Ok(json!({
            "eigenvalues": spectrum(&phi, n)?,
            "verdict": hyp.verdict,
            "min_eigenvalue": hyp.min_eigenvalue,
            "conclusion": cls.conclusion,
            "witness": witness,
        }))
    })())
}

/// The coupled 2x2 family for `theta = b_alpha^mult`: computed spectrum next
/// to the predicted one (`4` with multiplicity `deg theta`, zeros elsewhere).
#[wasm_bindgen]
pub fn coupled_spectrum(alpha_re: f64, alpha_im: f64, mult: usize, section: usize) -> String {
    finish((|| {
        let n = check_section(section)?;
        if !(1..=4).contains(&mult) {
            return Err("multiplicity must be between 1 and 4".to_string());
        }
        let theta = FiniteBlaschke::new(Complex64::new(1.0, 0.0), vec![(Complex64::new(alpha_re, alpha_im), mult)])
            .map_err(|e| e.to_string())?;
        let fam = coupled_family(&theta).map_err(|e| e.to_string())?;
        let report = verify_coupled_family(&theta, n, DEFAULT_TOL).map_err(|e| e.to_string())?;
        Ok(json!({
            "eigenvalues": spectrum(&fam.symbol, n)?,
            "predicted_rank": fam.predicted_rank(),
            "report": report,
        }))
    })())
}

/// Weights, moments and the two moment-Hankel minimum eigenvalues for every
/// size up to `k`.
#[wasm_bindgen]
pub fn cowen_long(alpha: f64, k: usize) -> String {
    finish((|| {
        if !(1..=16).contains(&k) {
            return Err("k must be between 1 and 16".to_string());
        }
        let w = cowen_long_weights(alpha, 2 * k).map_err(|e| e.to_string())?;
        let g = moment_sequence(&w);
        let steps: Vec<Value> = (1..=k)
            .map(|j| {
                let t = berger_psd_test(&g, j).expect("2k moments are available");
                json!({"k": j, "min_eig_H0": t.min_eig_h0, "min_eig_H1": t.min_eig_h1, "verdict": t.verdict})
            })
            .collect();
        Ok(json!({"weights": w.weights, "moments": g.moments, "steps": steps}))
    })())
}
