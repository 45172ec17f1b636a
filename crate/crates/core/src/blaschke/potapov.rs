use num_complex::Complex64;

use super::finite::FiniteBlaschke;
use crate::error::{Error, Result};
use crate::hardy::MatrixSymbol;
use crate::linalg::{op_norm, CMatrix};
use crate::rational::RationalFunction;

type C = Complex64;

const STRUCTURE_TOL: f64 = 1e-10;
const INNER_TOL: f64 = 1e-8;

/// `D(z) = nu * prod (b_m(z) P_m + I - P_m)` with `nu` unitary, each `b_m` a
/// single Blaschke factor and each `P_m` an orthogonal projection.
#[derive(Clone, Debug, PartialEq)]
pub struct BlaschkePotapov {
    nu: CMatrix,
    factors: Vec<(FiniteBlaschke, CMatrix)>,
}

fn is_projection(p: &CMatrix) -> bool {
    (p - p.adjoint()).norm() <= STRUCTURE_TOL && (p * p - p).norm() <= STRUCTURE_TOL
}

impl BlaschkePotapov {
    pub fn new(nu: CMatrix, factors: Vec<(FiniteBlaschke, CMatrix)>) -> Result<Self> {
        let n = nu.nrows();
        if nu.ncols() != n || n == 0 {
            return Err(Error::InvalidPotapov("nu must be a nonempty square matrix".into()));
        }
        if (nu.adjoint() * &nu - CMatrix::identity(n, n)).norm() > STRUCTURE_TOL {
            return Err(Error::InvalidPotapov("nu is not unitary".into()));
        }
        for (b, p) in &factors {
            if b.degree() != 1 {
                return Err(Error::InvalidPotapov(format!("factor of degree {}", b.degree())));
            }
            if p.shape() != (n, n) || !is_projection(p) {
                return Err(Error::InvalidPotapov("P is not an orthogonal projection".into()));
            }
        }
        Ok(BlaschkePotapov { nu, factors })
    }

    pub fn n(&self) -> usize {
        self.nu.nrows()
    }

    pub fn eval(&self, z: C) -> CMatrix {
        let n = self.n();
        let id = CMatrix::identity(n, n);
        self.factors.iter().fold(self.nu.clone(), |acc, (b, p)| {
            acc * (p * b.eval(z) + (&id - p))
        })
    }

    /// The product as a rational matrix symbol.
    pub fn to_symbol(&self) -> MatrixSymbol {
        let n = self.n();
        let id = CMatrix::identity(n, n);
        let mut acc = MatrixSymbol::constant(&self.nu).expect("square");
        for (b, p) in &self.factors {
            let br = b.to_rational();
            let f = MatrixSymbol::new(
                n,
                (0..n * n)
                    .map(|i| {
                        let (r, c) = (i / n, i % n);
                        br.scale(p[(r, c)]).add(&RationalFunction::constant(id[(r, c)] - p[(r, c)]))
                    })
                    .collect(),
            )
            .expect("rational inner factor");
            acc = acc.mul(&f).expect("same size");
        }
        acc
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InnerCheck {
    pub inner: bool,
    pub max_defect: f64,
}

/// Largest `||D(z)^* D(z) - I||` over `samples` equispaced circle points.
pub fn potapov_inner_check(d: &BlaschkePotapov, samples: usize) -> Result<InnerCheck> {
    if samples < 16 {
        return Err(Error::InvalidInput(format!("{samples} samples < 16")));
    }
    let n = d.n();
    let id = CMatrix::identity(n, n);
    let max_defect = (0..samples)
        .map(|i| {
            let v = d.eval(C::from_polar(1.0, std::f64::consts::TAU * i as f64 / samples as f64));
            op_norm(&(v.adjoint() * &v - &id))
        })
        .fold(0.0, f64::max);
    Ok(InnerCheck { inner: max_defect <= INNER_TOL, max_defect })
}
