use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::symbol::MatrixSymbol;
use crate::error::{Error, Result};
use crate::linalg::{op_norm, CMatrix};

type C = Complex64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SectionKind {
    Toeplitz,
    Hankel,
    SelfCommutator,
}

/// `(N n) x (N n)` truncation of an operator on `H^2_{C^n}`, stored
/// block-major: row `j * n + a` is component `a` of the coefficient of `z^j`.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorSection {
    pub kind: SectionKind,
    pub n: usize,
    pub len: usize,
    pub matrix: CMatrix,
    /// Operator-norm bound on what the truncation discards.
    pub tail_bound: f64,
    pub decay_rate: f64,
    /// Largest polynomial degree of the analytic part of the symbol.
    pub bandwidth: usize,
}

#[derive(Serialize, Deserialize)]
struct SectionJson {
    n: usize,
    #[serde(rename = "N")]
    len: usize,
    kind: SectionKind,
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
    tail_bound: f64,
}

impl OperatorSection {
    pub fn dim(&self) -> usize {
        self.n * self.len
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows = self.matrix.nrows();
        let cols = self.matrix.ncols();
        let grid = |f: fn(&C) -> f64| -> Vec<Vec<f64>> {
            (0..rows).map(|i| (0..cols).map(|j| f(&self.matrix[(i, j)])).collect()).collect()
        };
        serde_json::to_value(SectionJson {
            n: self.n,
            len: self.len,
            kind: self.kind,
            re: grid(|c| c.re),
            im: grid(|c| c.im),
            tail_bound: self.tail_bound,
        })
        .expect("plain data serializes")
    }
}

fn check_len(len: usize) -> Result<()> {
    if len == 0 {
        return Err(Error::InvalidInput("section length must be positive".into()));
    }
    Ok(())
}

fn place(m: &mut CMatrix, n: usize, bj: usize, bk: usize, block: &CMatrix) {
    m.view_mut((bj * n, bk * n), (n, n)).copy_from(block);
}

/// Block `(j, k)` is `Phi^(j - k)`.
pub fn toeplitz_section(phi: &MatrixSymbol, len: usize) -> Result<OperatorSection> {
    check_len(len)?;
    let n = phi.n();
    let coeffs: Vec<CMatrix> = (0..2 * len - 1).map(|i| phi.fourier(i as i64 - (len as i64 - 1))).collect();
    let mut m = CMatrix::zeros(n * len, n * len);
    for j in 0..len {
        for k in 0..len {
            place(&mut m, n, j, k, &coeffs[j + len - 1 - k]);
        }
    }
    let (p, q) = phi.tail_mass(len);
    Ok(OperatorSection {
        kind: SectionKind::Toeplitz,
        n,
        len,
        matrix: m,
        tail_bound: p + q,
        decay_rate: phi.decay_rate(),
        bandwidth: phi.analytic_bandwidth(),
    })
}

/// `rows x len` block Hankel matrix with block `(j, k) = Phi^(-j-k-1)`.
fn hankel_blocks(phi: &MatrixSymbol, rows: usize, len: usize) -> CMatrix {
    let n = phi.n();
    let coeffs: Vec<CMatrix> = (0..rows + len).map(|i| phi.fourier(-(i as i64) - 1)).collect();
    let mut m = CMatrix::zeros(n * rows, n * len);
    for j in 0..rows {
        for k in 0..len {
            let blk = &coeffs[j + k];
            m.view_mut((j * n, k * n), (n, n)).copy_from(blk);
        }
    }
    m
}

/// Schur-test bound on the part of `H_Phi` outside the leading `len` blocks:
/// both the rows below and the columns to the right see only coefficients
/// with index at least `len + 1`.
fn hankel_tail(phi: &MatrixSymbol, len: usize) -> f64 {
    2.0 * phi.tail_mass(len + 1).1
}

pub fn hankel_section(phi: &MatrixSymbol, len: usize) -> Result<OperatorSection> {
    check_len(len)?;
    Ok(OperatorSection {
        kind: SectionKind::Hankel,
        n: phi.n(),
        len,
        matrix: hankel_blocks(phi, len, len),
        tail_bound: hankel_tail(phi, len),
        decay_rate: phi.decay_rate(),
        bandwidth: phi.analytic_bandwidth(),
    })
}

/// `[T_Phi^*, T_Phi] = H_{Phi^*}^* H_{Phi^*} - H_Phi^* H_Phi + T_{Phi^* Phi - Phi Phi^*}`.
///
/// The last term vanishes for normal symbols. The Hankel Grams are formed
/// from tall sections so that only the column truncation is discarded.
pub fn self_commutator_section(phi: &MatrixSymbol, len: usize) -> Result<OperatorSection> {
    check_len(len)?;
    let adj = phi.adjoint();
    let rows = len + phi.certified_section_length();
    let ha = hankel_blocks(&adj, rows, len);
    let hb = hankel_blocks(phi, rows, len);
    let mut m = ha.adjoint() * &ha - hb.adjoint() * &hb;

    let defect = adj.mul(phi)?.sub(&phi.mul(&adj)?)?;
    let mut defect_tail = 0.0;
    if !defect.is_zero() {
        let t = toeplitz_section(&defect, len)?;
        m += &t.matrix;
        defect_tail = t.tail_bound;
    }
    m = (&m + m.adjoint()).scale(0.5);

    // || H^*H - H_N^* H_N || <= 2 ||H|| ||H - H_N||, row truncation is beyond
    // the certified length and contributes below the section epsilon
    let (ta, tb) = (hankel_tail(&adj, len), hankel_tail(phi, len));
    let (na, nb) = (op_norm(&ha) + ta, op_norm(&hb) + tb);
    let row_tail = hankel_tail(&adj, rows) * na + hankel_tail(phi, rows) * nb;
    Ok(OperatorSection {
        kind: SectionKind::SelfCommutator,
        n: phi.n(),
        len,
        matrix: m,
        tail_bound: 2.0 * (na * ta + nb * tb) + row_tail + defect_tail,
        decay_rate: phi.decay_rate(),
        bandwidth: phi.analytic_bandwidth(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blaschke::FiniteBlaschke;
    use crate::linalg::hermitian_eigenvalues;
    use crate::rational::{Polynomial, RationalFunction};
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    fn zbar_plus(a: C) -> MatrixSymbol {
        MatrixSymbol::laurent(-1, &[c(1.0, 0.0), c(0.0, 0.0), a])
    }

    #[test]
    fn toeplitz_placement() {
        let s = toeplitz_section(&MatrixSymbol::laurent(0, &[c(0.0, 0.0), c(1.0, 0.0)]), 3).unwrap();
        for j in 0..3 {
            for k in 0..3 {
                let e = if j == k + 1 { 1.0 } else { 0.0 };
                assert_eq!(s.matrix[(j, k)], c(e, 0.0));
            }
        }
        let s = toeplitz_section(&zbar_plus(c(0.7, 0.0)), 3).unwrap();
        assert_eq!(s.matrix[(0, 1)], c(1.0, 0.0));
        assert_eq!(s.matrix[(1, 0)], c(0.7, 0.0));
        assert_eq!(s.matrix[(2, 0)], c(0.0, 0.0));
        assert_eq!(s.tail_bound, 0.0);
    }

    #[test]
    fn hankel_placement() {
        let s = hankel_section(&MatrixSymbol::laurent(-1, &[c(1.0, 0.0)]), 2).unwrap();
        assert_eq!(s.matrix[(0, 0)], c(1.0, 0.0));
        assert_eq!(s.matrix[(0, 1)] + s.matrix[(1, 0)] + s.matrix[(1, 1)], c(0.0, 0.0));

        let analytic = MatrixSymbol::laurent(0, &[c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)]);
        assert_eq!(hankel_section(&analytic, 4).unwrap().matrix.norm(), 0.0);

        let f = RationalFunction::new(Polynomial::one(), Polynomial::from_real(&[1.0, -0.5])).unwrap();
        let s = hankel_section(&MatrixSymbol::scalar(f.circle_adjoint()).unwrap(), 6).unwrap();
        for j in 0..6 {
            for k in 0..6 {
                assert_abs_diff_eq!(s.matrix[(j, k)].re, 0.5f64.powi((j + k + 1) as i32), epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn scalar_commutators() {
        let z = MatrixSymbol::laurent(0, &[c(0.0, 0.0), c(1.0, 0.0)]);
        let s = self_commutator_section(&z, 5).unwrap();
        assert_abs_diff_eq!(s.matrix[(0, 0)].re, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(s.matrix.norm(), 1.0, epsilon = 1e-14);

        for a in [c(0.5, 0.0), c(2.0, 0.0), C::from_polar(1.0, 1.0)] {
            let s = self_commutator_section(&zbar_plus(a), 6).unwrap();
            let mut expect = CMatrix::zeros(6, 6);
            expect[(0, 0)] = c(a.norm_sqr() - 1.0, 0.0);
            assert!((s.matrix - expect).norm() < 1e-13);
        }
    }

    #[test]
    fn coupled_family_commutator() {
        let theta = FiniteBlaschke::power_of_z(1).to_rational();
        let tb = theta.circle_adjoint();
        let d = theta.scale(c(2.0, 0.0)).add(&tb);
        let phi = MatrixSymbol::from_rows(vec![vec![d.clone(), tb.clone()], vec![tb, d]]).unwrap();
        let s = self_commutator_section(&phi, 4).unwrap();
        let ev = hermitian_eigenvalues(&s.matrix);
        assert_abs_diff_eq!(ev[7], 4.0, epsilon = 1e-12);
        assert!(ev[..7].iter().all(|e| e.abs() < 1e-12));
    }

    #[test]
    fn non_normal_symbol_keeps_the_defect_term() {
        // [[z, 1], [0, z]]
        let z = RationalFunction::monomial(c(1.0, 0.0), 1);
        let one = RationalFunction::constant(c(1.0, 0.0));
        let phi = MatrixSymbol::from_rows(vec![vec![z.clone(), one], vec![RationalFunction::zero(), z]]).unwrap();
        let s = self_commutator_section(&phi, 5).unwrap();
        // compare with T^*T - T T^* from a long Toeplitz section
        let t = toeplitz_section(&phi, 12).unwrap().matrix;
        let full = t.adjoint() * &t - &t * t.adjoint();
        let lead = full.view((0, 0), (10, 10)).into_owned();
        assert!((s.matrix - lead).norm() < 1e-12);
    }

    #[test]
    fn json_export_shape() {
        let s = toeplitz_section(&zbar_plus(c(2.0, 0.0)), 2).unwrap();
        let v = s.to_json();
        assert_eq!(v["N"], 2);
        assert_eq!(v["kind"], "toeplitz");
        assert_eq!(v["re"][1][0], 2.0);
    }
}
