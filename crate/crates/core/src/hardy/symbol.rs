use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::blaschke::FiniteBlaschke;
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::rational::{Polynomial, RationalFunction};
use crate::tol::SECTION_EPS;

type C = Complex64;

/// Hard ceiling on automatically chosen section lengths.
const MAX_SECTION: usize = 4096;

/// `n x n` matrix of rational functions on the circle, with its split
/// `Phi = Phi_minus^* + Phi_plus` cached at construction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SymbolRepr", into = "SymbolRepr")]
pub struct MatrixSymbol {
    n: usize,
    entries: Vec<RationalFunction>,
    plus: Vec<RationalFunction>,
    minus: Vec<RationalFunction>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SymbolRepr {
    n: usize,
    entries: Vec<Vec<RationalFunction>>,
}

impl TryFrom<SymbolRepr> for MatrixSymbol {
    type Error = Error;
    fn try_from(r: SymbolRepr) -> Result<Self> {
        if r.entries.len() != r.n || r.entries.iter().any(|row| row.len() != r.n) {
            return Err(Error::DimensionMismatch(format!("entries do not form a {0}x{0} grid", r.n)));
        }
        MatrixSymbol::new(r.n, r.entries.into_iter().flatten().collect())
    }
}

impl From<MatrixSymbol> for SymbolRepr {
    fn from(s: MatrixSymbol) -> Self {
        let n = s.n;
        let mut it = s.entries.into_iter();
        SymbolRepr { n, entries: (0..n).map(|_| it.by_ref().take(n).collect()).collect() }
    }
}

impl MatrixSymbol {
    /// Row-major entries.
    pub fn new(n: usize, entries: Vec<RationalFunction>) -> Result<Self> {
        if n == 0 || entries.len() != n * n {
            return Err(Error::DimensionMismatch(format!("{} entries for n = {n}", entries.len())));
        }
        let mut plus = Vec::with_capacity(n * n);
        let mut coanalytic = Vec::with_capacity(n * n);
        for f in &entries {
            let (p, m) = f.analytic_split()?;
            plus.push(p);
            coanalytic.push(m);
        }
        // Phi_minus = (P^perp Phi)^*, so its (i, j) entry reflects entry (j, i)
        let minus = (0..n * n).map(|idx| coanalytic[(idx % n) * n + idx / n].clone()).collect();
        Ok(MatrixSymbol { n, entries, plus, minus })
    }

    pub fn from_rows(rows: Vec<Vec<RationalFunction>>) -> Result<Self> {
        Self::try_from(SymbolRepr { n: rows.len(), entries: rows })
    }

    pub fn scalar(f: RationalFunction) -> Result<Self> {
        Self::new(1, vec![f])
    }

    /// Constant matrix symbol.
    pub fn constant(m: &CMatrix) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::DimensionMismatch("constant symbol must be square".into()));
        }
        let n = m.nrows();
        Self::new(n, (0..n * n).map(|i| RationalFunction::constant(m[(i / n, i % n)])).collect())
    }

    pub fn identity(n: usize) -> Self {
        Self::constant(&CMatrix::identity(n, n)).expect("identity is valid")
    }

    /// `f * I_n`
    pub fn diagonal(n: usize, f: &RationalFunction) -> Result<Self> {
        Self::new(
            n,
            (0..n * n)
                .map(|i| if i / n == i % n { f.clone() } else { RationalFunction::zero() })
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &RationalFunction {
        &self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[RationalFunction] {
        &self.entries
    }

    /// Entry `(i, j)` of `Phi_plus`.
    pub fn plus_entry(&self, i: usize, j: usize) -> &RationalFunction {
        &self.plus[i * self.n + j]
    }

    /// Entry `(i, j)` of `Phi_minus`.
    pub fn minus_entry(&self, i: usize, j: usize) -> &RationalFunction {
        &self.minus[i * self.n + j]
    }

    pub fn plus_symbol(&self) -> Self {
        Self::new(self.n, self.plus.clone()).expect("analytic part is valid")
    }

    pub fn minus_symbol(&self) -> Self {
        Self::new(self.n, self.minus.clone()).expect("reflected part is valid")
    }

    /// `P^perp Phi` entrywise, i.e. `Phi_minus^*` on the circle.
    pub fn coanalytic_symbol(&self) -> Self {
        self.minus_symbol().adjoint()
    }

    fn map(&self, f: impl Fn(usize, usize) -> RationalFunction) -> Self {
        let n = self.n;
        Self::new(n, (0..n * n).map(|i| f(i / n, i % n)).collect()).expect("closed under arithmetic")
    }

    /// Pointwise adjoint on the circle.
    pub fn adjoint(&self) -> Self {
        self.map(|i, j| self.entry(j, i).circle_adjoint())
    }

    /// Transpose of the tilde transform, `z -> Phi(conj z)^*`.
    pub fn tilde(&self) -> Self {
        self.map(|i, j| self.entry(j, i).tilde())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_size(other)?;
        Ok(self.map(|i, j| self.entry(i, j).add(other.entry(i, j))))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_size(other)?;
        Ok(self.map(|i, j| self.entry(i, j).sub(other.entry(i, j))))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_size(other)?;
        Ok(self.map(|i, j| {
            (0..self.n).fold(RationalFunction::zero(), |acc, k| acc.add(&self.entry(i, k).mul(other.entry(k, j))))
        }))
    }

    pub fn scale(&self, s: C) -> Self {
        self.map(|i, j| self.entry(i, j).scale(s))
    }

    /// Multiply every entry by a scalar rational function.
    pub fn scale_by(&self, f: &RationalFunction) -> Self {
        self.map(|i, j| self.entry(i, j).mul(f))
    }

    fn same_size(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!("{} vs {}", self.n, other.n)));
        }
        Ok(())
    }

    pub fn eval(&self, z: C) -> Result<CMatrix> {
        let n = self.n;
        let mut m = CMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = self.entry(i, j).eval(z)?;
            }
        }
        Ok(m)
    }

    /// Value on the unit circle, where no entry has a pole.
    pub(crate) fn on_circle(&self, t: f64) -> CMatrix {
        let z = C::from_polar(1.0, t);
        let n = self.n;
        CMatrix::from_fn(n, n, |i, j| self.entry(i, j).value(z))
    }

    /// Fourier coefficient matrix `Phi^(k)`.
    pub fn fourier(&self, k: i64) -> CMatrix {
        let n = self.n;
        CMatrix::from_fn(n, n, |i, j| self.entry(i, j).coeff(k))
    }

    /// No entry has a pole inside the closed disk, so every negative Fourier
    /// coefficient vanishes identically.
    pub fn is_analytic(&self) -> bool {
        self.entries.iter().all(|f| f.is_analytic())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|f| f.is_zero())
    }

    /// Largest polynomial degree among entries of `Phi_plus`.
    pub fn analytic_bandwidth(&self) -> usize {
        self.entries.iter().map(|f| f.finite_support().0).max().unwrap_or(0)
    }

    /// Largest pole order at the origin among the entries.
    pub fn coanalytic_bandwidth(&self) -> usize {
        self.entries.iter().map(|f| f.finite_support().1).max().unwrap_or(0)
    }

    /// Largest geometric decay rate of the Fourier coefficients on either side.
    pub fn decay_rate(&self) -> f64 {
        self.entries
            .iter()
            .map(|f| {
                let (p, m) = f.decay();
                p.rho.max(m.rho)
            })
            .fold(0.0, f64::max)
    }

    /// Bounds on `sum_{k >= from} ||Phi^(k)||` and `sum_{k >= from} ||Phi^(-k)||`.
    pub fn tail_mass(&self, from: usize) -> (f64, f64) {
        // the operator norm of a matrix is at most the sum of its entry moduli
        self.entries.iter().fold((0.0, 0.0), |(p, m), f| {
            let (fp, fm) = f.tail_mass(from);
            (p + fp, m + fm)
        })
    }

    /// Inner function `theta_2`: lcm over entries of the Blaschke products
    /// whose zeros are the poles inside the disk, so that
    /// `P^perp Phi = conj(theta_2) B` with `B` analytic.
    pub fn coanalytic_inner(&self) -> Result<FiniteBlaschke> {
        let mut theta = FiniteBlaschke::power_of_z(0);
        for f in &self.entries {
            theta = theta.lcm(&FiniteBlaschke::from_inner_poles(f)?);
        }
        Ok(theta)
    }

    /// The analytic cofactor `B = theta * P^perp Phi`.
    pub fn coanalytic_cofactor(&self, theta: &FiniteBlaschke) -> Self {
        self.coanalytic_symbol().scale_by(&theta.to_rational())
    }

    /// Section length with every discarded tail below `SECTION_EPS`, and at
    /// least long enough to resolve the finite-rank structure.
    pub fn certified_section_length(&self) -> usize {
        let inner_degree: usize = self
            .entries
            .iter()
            .map(|f| f.poles().iter().filter(|(p, _)| p.norm() < 1.0).map(|(_, m)| m).sum::<usize>())
            .sum();
        let floor = (self.analytic_bandwidth().max(self.coanalytic_bandwidth()) + inner_degree + 8).max(8);
        let mut n = floor;
        while n < MAX_SECTION {
            let (p, m) = self.tail_mass(n);
            if p + m <= SECTION_EPS {
                break;
            }
            n += (n / 4).max(1);
        }
        n.min(MAX_SECTION)
    }

    /// Scalar trigonometric polynomial `sum_k coeffs[k - lowest] z^k`.
    pub fn laurent(lowest: i64, coeffs: &[C]) -> Self {
        Self::scalar(RationalFunction::laurent(lowest, coeffs)).expect("polynomial symbols are valid")
    }

    /// `I_n`-multiple of a polynomial, handy in tests.
    pub fn polynomial_diagonal(n: usize, p: Polynomial) -> Self {
        Self::diagonal(n, &RationalFunction::polynomial(p)).expect("polynomial symbols are valid")
    }
}
