//! Polynomial roots from companion-matrix eigenvalues, with multiplicity
//! recovery.
//!
//! Eigenvalues of a companion matrix split an `m`-fold root into a ring of
//! radius about `eps^(1/m)`. Candidate clusters are therefore formed by
//! proximity and then accepted only if the first `m` Taylor coefficients of
//! the polynomial vanish at the cluster centre to working precision.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::poly::Polynomial;
use crate::error::{Error, Result};

type C = Complex64;

const SCHUR_MAX_ITER: usize = 10_000;

/// Eigenvalues of the companion matrix of `p` (no clustering). `p` must have
/// nonzero constant term for the result to exclude zero roots.
fn companion_eigenvalues(p: &Polynomial) -> Result<Vec<C>> {
    let n = p.degree().unwrap_or(0);
    match n {
        0 => return Ok(Vec::new()),
        1 => return Ok(vec![-p.coeff(0) / p.coeff(1)]),
        _ => {}
    }
    let lead = p.leading();
    let mut m = DMatrix::<C>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = C::new(1.0, 0.0);
    }
    for i in 0..n {
        m[(i, n - 1)] = -p.coeff(i) / lead;
    }
    let schur = nalgebra::Schur::try_new(m, f64::EPSILON, SCHUR_MAX_ITER)
        .ok_or(Error::RootFindingFailure(n))?;
    let ev = schur.eigenvalues().ok_or(Error::RootFindingFailure(n))?;
    Ok(ev.iter().copied().collect())
}

fn polish(p: &Polynomial, dp: &Polynomial, mut r: C) -> C {
    let mut val = p.eval(r).norm();
    for _ in 0..4 {
        let d = dp.eval(r);
        if d.norm() == 0.0 {
            break;
        }
        let cand = r - p.eval(r) / d;
        let cv = p.eval(cand).norm();
        if cv < val {
            r = cand;
            val = cv;
        } else {
            break;
        }
    }
    r
}

/// Taylor coefficients of `|p|` (coefficientwise absolute values) at `|c|`:
/// the natural scale of each Taylor coefficient of `p` at `c`.
fn jet_scales(p: &Polynomial, c: C, m: usize) -> Vec<f64> {
    let abs = Polynomial::new(p.coeffs().iter().map(|a| C::new(a.norm(), 0.0)).collect());
    let t = abs.taylor_at(C::new(c.norm(), 0.0));
    (0..m).map(|j| t.coeff(j).re).collect()
}

fn jets_vanish(p: &Polynomial, c: C, m: usize) -> bool {
    let deg = p.degree().unwrap_or(0).max(1) as f64;
    let tau = 256.0 * deg * f64::EPSILON;
    let t = p.taylor_at(c);
    let scales = jet_scales(p, c, m);
    (0..m).all(|j| t.coeff(j).norm() <= tau * scales[j].max(f64::MIN_POSITIVE))
}

fn refine_centre(p: &Polynomial, c: C, m: usize) -> C {
    let mut d = p.clone();
    for _ in 0..m - 1 {
        d = d.derivative();
    }
    let dd = d.derivative();
    polish(&d, &dd, c)
}

fn components(points: &[C], radius: f64) -> Vec<Vec<C>> {
    let n = points.len();
    let mut label: Vec<usize> = (0..n).collect();
    fn find(label: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while label[r] != r {
            r = label[r];
        }
        label[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            let scale = 1.0f64.max(points[i].norm()).max(points[j].norm());
            if (points[i] - points[j]).norm() <= radius * scale {
                let (a, b) = (find(&mut label, i), find(&mut label, j));
                label[a] = b;
            }
        }
    }
    let mut groups: Vec<(usize, Vec<C>)> = Vec::new();
    for (i, &pt) in points.iter().enumerate() {
        let r = find(&mut label, i);
        match groups.iter_mut().find(|(k, _)| *k == r) {
            Some((_, g)) => g.push(pt),
            None => groups.push((r, vec![pt])),
        }
    }
    groups.into_iter().map(|(_, g)| g).collect()
}

fn cluster(p: &Polynomial, points: &[C], radius: f64, out: &mut Vec<(C, usize)>) {
    for group in components(points, radius) {
        let m = group.len();
        if m == 1 {
            out.push((group[0], 1));
            continue;
        }
        let mean = group.iter().sum::<C>() / m as f64;
        let centre = refine_centre(p, mean, m);
        if jets_vanish(p, centre, m) {
            out.push((centre, m));
        } else if radius > 1e-10 {
            cluster(p, &group, radius / 10.0, out);
        } else {
            out.extend(group.into_iter().map(|r| (r, 1)));
        }
    }
}

/// Distinct roots of `p` with multiplicities summing to its degree.
pub fn clustered_roots(p: &Polynomial) -> Result<Vec<(C, usize)>> {
    let Some(deg) = p.degree() else {
        return Err(Error::InvalidInput("roots of the zero polynomial".into()));
    };
    if deg == 0 {
        return Ok(Vec::new());
    }
    let zeros_at_origin = p.coeffs().iter().take_while(|c| c.norm() == 0.0).count();
    let q = Polynomial::new(p.coeffs()[zeros_at_origin..].to_vec());
    let dq = q.derivative();
    let raw: Vec<C> = companion_eigenvalues(&q)?
        .into_iter()
        .map(|r| polish(&q, &dq, r))
        .collect();
    if raw.iter().any(|r| !r.re.is_finite() || !r.im.is_finite()) {
        return Err(Error::RootFindingFailure(deg));
    }
    let mut out = Vec::new();
    cluster(&q, &raw, 1e-3, &mut out);
    if zeros_at_origin > 0 {
        out.push((C::new(0.0, 0.0), zeros_at_origin));
    }
    Ok(out)
}
