//! Thin helpers over `nalgebra` for dense complex matrices.

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;

/// Spectral norm.
pub fn op_norm(m: &CMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone().singular_values().iter().copied().fold(0.0, f64::max)
}

/// Eigenvalues of a Hermitian matrix in ascending order. The input is
/// symmetrized first.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    if m.is_empty() {
        return Vec::new();
    }
    let h = (m + m.adjoint()).scale(0.5);
    let mut ev: Vec<f64> = h.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ev
}

/// Largest deviation from Hermitian symmetry.
pub fn hermitian_defect(m: &CMatrix) -> f64 {
    (m - m.adjoint()).iter().map(|c| c.norm()).fold(0.0, f64::max)
}

/// Singular values (descending) and an orthonormal basis (as columns) of the
/// right-singular subspace with singular value `<= cutoff`.
pub fn svd_null_space(m: &CMatrix, cutoff: f64) -> (Vec<f64>, CMatrix) {
    let (rows, cols) = m.shape();
    // pad wide matrices so that nalgebra returns a full right basis
    let a = if rows < cols {
        let mut p = CMatrix::zeros(cols, cols);
        p.view_mut((0, 0), (rows, cols)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = a.svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&i, &j| svd.singular_values[j].partial_cmp(&svd.singular_values[i]).unwrap());
    let sv: Vec<f64> = order.iter().map(|&i| svd.singular_values[i]).collect();
    let null: Vec<usize> = order
        .iter()
        .copied()
        .filter(|&i| svd.singular_values[i] <= cutoff)
        .collect();
    let mut basis = CMatrix::zeros(cols, null.len());
    for (c, &i) in null.iter().enumerate() {
        for r in 0..cols {
            basis[(r, c)] = v_t[(i, r)].conj();
        }
    }
    // singular values beyond min(rows, cols) of the padded problem are zeros
    let sv = sv.into_iter().take(rows.min(cols)).collect();
    (sv, basis)
}

/// Orthonormal basis of the column space spanned by left-singular vectors
/// with singular value `> cutoff`.
pub fn range_basis(m: &CMatrix, cutoff: f64) -> CMatrix {
    let rows = m.nrows();
    if m.is_empty() {
        return CMatrix::zeros(rows, 0);
    }
    let svd = m.clone().svd(true, false);
    let u = svd.u.expect("left singular vectors requested");
    let keep: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&i| svd.singular_values[i] > cutoff)
        .collect();
    let mut basis = CMatrix::zeros(rows, keep.len());
    for (c, &i) in keep.iter().enumerate() {
        basis.set_column(c, &u.column(i));
    }
    basis
}

/// Orthonormalize columns (thin QR), dropping numerically dependent ones.
pub fn orthonormalize(m: &CMatrix) -> CMatrix {
    range_basis(m, 1e-12 * op_norm(m).max(f64::MIN_POSITIVE))
}

/// Sines of the principal angles between two subspaces given by orthonormal
/// column bases; the largest sine is the subspace distance.
pub fn principal_angles(a: &CMatrix, b: &CMatrix) -> Vec<f64> {
    if a.ncols() == 0 || b.ncols() == 0 {
        return Vec::new();
    }
    let cosines = (a.adjoint() * b).singular_values();
    let mut angles: Vec<f64> = cosines.iter().map(|c| c.clamp(-1.0, 1.0).acos()).collect();
    angles.sort_by(|x, y| x.partial_cmp(y).unwrap());
    angles
}

pub fn determinant(m: &CMatrix) -> Complex64 {
    m.clone().lu().determinant()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn null_space_of_rank_one() {
        let m = CMatrix::from_row_slice(2, 2, &[c(1.0), c(1.0), c(1.0), c(1.0)]);
        let (sv, null) = svd_null_space(&m, 1e-12);
        assert!((sv[0] - 2.0).abs() < 1e-12);
        assert_eq!(null.ncols(), 1);
        assert!((&m * &null).norm() < 1e-12);
    }

    #[test]
    fn wide_null_space_is_complete() {
        let m = CMatrix::from_row_slice(1, 3, &[c(1.0), c(0.0), c(0.0)]);
        let (_, null) = svd_null_space(&m, 1e-12);
        assert_eq!(null.ncols(), 2);
    }

    #[test]
    fn eigenvalues_sorted() {
        let m = CMatrix::from_row_slice(2, 2, &[c(2.0), c(-2.0), c(-2.0), c(2.0)]);
        let ev = hermitian_eigenvalues(&m);
        assert!(ev[0].abs() < 1e-12 && (ev[1] - 4.0).abs() < 1e-12);
    }
}
