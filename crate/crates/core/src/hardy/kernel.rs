use super::sections::{hankel_section, OperatorSection, SectionKind};
use super::symbol::MatrixSymbol;
use crate::blaschke::{coprimality_test, FiniteBlaschke};
use crate::error::{Error, Result};
use crate::linalg::{op_norm, range_basis, svd_null_space, CMatrix};

/// Numerical rank and an orthonormal kernel basis (as columns).
#[derive(Clone, Debug)]
pub struct RankKernel {
    pub rank: usize,
    pub kernel: CMatrix,
    pub singular_values: Vec<f64>,
    pub cutoff: f64,
}

/// Singular values above `tol * sigma_max` count towards the rank.
pub fn numerical_rank_and_kernel(s: &OperatorSection, tol: f64) -> Result<RankKernel> {
    if tol <= s.tail_bound {
        return Err(Error::ToleranceBelowTailBound { tol, tail: s.tail_bound });
    }
    let smax = op_norm(&s.matrix);
    let cutoff = tol * smax;
    let (sv, kernel) = if smax == 0.0 {
        (vec![0.0; s.dim()], CMatrix::identity(s.dim(), s.dim()))
    } else {
        svd_null_space(&s.matrix, cutoff)
    };
    let rank = sv.iter().filter(|&&x| x > cutoff).count();
    Ok(RankKernel { rank, kernel, singular_values: sv, cutoff })
}

/// Rank of the section matrix itself, counting singular values above
/// `rel_tol * sigma_max`. Unlike [`numerical_rank_and_kernel`] this makes no
/// claim about the untruncated operator, so no tail condition applies.
pub fn section_rank(s: &OperatorSection, rel_tol: f64) -> usize {
    let sv = s.matrix.singular_values();
    let smax = sv.iter().copied().fold(0.0, f64::max);
    sv.iter().filter(|&&x| x > rel_tol * smax && x > 0.0).count()
}

/// Kernel of a section restricted to vectors supported in the leading
/// `len - guard` blocks, with an absolute singular-value cutoff.
pub fn supported_kernel(s: &OperatorSection, guard: usize, cutoff: f64) -> CMatrix {
    let keep = s.n * s.len.saturating_sub(guard);
    let cols = s.matrix.columns(0, keep).into_owned();
    let (_, null) = svd_null_space(&cols, cutoff);
    let mut v = CMatrix::zeros(s.dim(), null.ncols());
    v.view_mut((0, 0), (keep, null.ncols())).copy_from(&null);
    v
}

/// Invariance defect `max_v ||(I - P_ker) T v||` for an orthonormal family
/// `v` (columns) inside the kernel of the section `s`.
///
/// The kernel of a Hermitian section is the orthogonal complement of its
/// range, so the defect is the norm of `U^* T V` with `U` spanning the range.
pub fn invariance_residual(
    v: &CMatrix,
    s: &OperatorSection,
    t: &OperatorSection,
    guard: usize,
    cutoff: f64,
) -> Result<f64> {
    if t.kind != SectionKind::Toeplitz {
        return Err(Error::InvalidInput("invariance is measured against a Toeplitz section".into()));
    }
    if guard < t.bandwidth {
        return Err(Error::GuardTooSmall { guard, bandwidth: t.bandwidth });
    }
    if s.dim() != t.dim() || v.nrows() != s.dim() {
        return Err(Error::DimensionMismatch("sections and kernel basis differ in size".into()));
    }
    if v.ncols() == 0 {
        return Ok(0.0);
    }
    let range = range_basis(&s.matrix, cutoff);
    if range.ncols() == 0 {
        return Ok(0.0);
    }
    Ok(op_norm(&(range.adjoint() * (&t.matrix * v))))
}

/// `theta` with `ker H_Phi = theta H^2_{C^n}` when `Phi`'s co-analytic part
/// reduces to a scalar inner multiple, validated against the kernel
/// dimension of a Hankel section of length `deg theta + 8`.
pub fn hankel_kernel_inner(phi: &MatrixSymbol) -> Result<FiniteBlaschke> {
    let theta = phi.coanalytic_inner()?;
    if phi.n() > 1 {
        let b = phi.coanalytic_cofactor(&theta);
        if !coprimality_test(&b, &theta)?.coprime {
            return Err(Error::NotReducible);
        }
    }
    let d = theta.degree();
    let len = d + 8;
    let s = hankel_section(phi, len)?;
    if section_rank(&s, 1e-8) != phi.n() * d {
        return Err(Error::NotReducible);
    }
    Ok(theta)
}
