use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::poly::Polynomial;
use crate::error::{Error, Result};
use crate::tol::{close, MERGE_TOL, POLE_BAND};

type C = Complex64;

const ZERO: C = C::new(0.0, 0.0);
const ONE: C = C::new(1.0, 0.0);

/// Relative size of `num(p)` under which a pole is cancelled by the numerator.
const CANCEL_TOL: f64 = 1e-10;

/// Principal part of a rational function at one pole:
/// `sum_j coefficients[j-1] / (z - pole)^j`.
#[derive(Clone, Debug, PartialEq)]
pub struct PoleTerm {
    pub pole: C,
    pub order: usize,
    pub coefficients: Vec<C>,
}

/// `f = polynomial_part + sum of principal parts`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct PrincipalPartDecomposition {
    pub polynomial_part: Polynomial,
    pub terms: Vec<PoleTerm>,
}

fn binom(n: usize, k: usize) -> f64 {
    (1..=k).fold(1.0, |acc, i| acc * (n + 1 - i) as f64 / i as f64)
}

/// Where a pole sits relative to the unit circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    Origin,
    Inside,
    Outside,
}

fn side(p: C) -> Side {
    if p == ZERO {
        Side::Origin
    } else if p.norm() < 1.0 {
        Side::Inside
    } else {
        Side::Outside
    }
}

impl PoleTerm {
    /// Contribution of this principal part to the `k`-th Fourier coefficient
    /// of the boundary function, by expanding each `(z - p)^{-j}` in the
    /// annulus containing the circle.
    fn fourier_coeff(&self, k: i64) -> C {
        let p = self.pole;
        let mut s = ZERO;
        for (idx, &c) in self.coefficients.iter().enumerate() {
            let j = idx + 1;
            match side(p) {
                Side::Origin => {
                    if k == -(j as i64) {
                        s += c;
                    }
                }
                Side::Outside => {
                    if k >= 0 {
                        let k = k as usize;
                        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                        s += c * sign * binom(k + j - 1, j - 1) / p.powu((j + k) as u32);
                    }
                }
                Side::Inside => {
                    if k <= -(j as i64) {
                        let l = (-k) as usize - j;
                        s += c * binom(l + j - 1, j - 1) * p.powu(l as u32);
                    }
                }
            }
        }
        s
    }

    /// Upper bound for `|coefficient|` at distance `k` from the first nonzero
    /// index on the side this pole contributes to.
    fn envelope(&self, k: usize) -> f64 {
        let r = self.pole.norm();
        self.coefficients
            .iter()
            .enumerate()
            .map(|(idx, c)| {
                let j = idx + 1;
                match side(self.pole) {
                    Side::Origin => 0.0,
                    Side::Outside => c.norm() * binom(k + j - 1, j - 1) * r.powi(-((j + k) as i32)),
                    Side::Inside => c.norm() * binom(k + j - 1, j - 1) * r.powi(k as i32),
                }
            })
            .sum()
    }
}

impl PrincipalPartDecomposition {
    pub fn fourier_coeff(&self, k: i64) -> C {
        let mut s = if k >= 0 { self.polynomial_part.coeff(k as usize) } else { ZERO };
        for t in &self.terms {
            s += t.fourier_coeff(k);
        }
        s
    }

    pub fn eval(&self, z: C) -> C {
        let mut s = self.polynomial_part.eval(z);
        for t in &self.terms {
            let w = z - t.pole;
            let mut wp = ONE;
            for &c in &t.coefficients {
                wp *= w;
                s += c / wp;
            }
        }
        s
    }
}

/// Geometric decay of Fourier coefficients on one side of the spectrum:
/// `|f^(k)| <= constant * rho^k` beyond the finitely supported part.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Decay {
    pub rho: f64,
    pub constant: f64,
}

impl Decay {
    pub const NONE: Decay = Decay { rho: 0.0, constant: 0.0 };

    /// Bound on `sum_{k >= from} constant * rho^k`.
    pub fn tail(&self, from: usize) -> f64 {
        if self.constant == 0.0 {
            return 0.0;
        }
        self.constant * self.rho.powi(from as i32) / (1.0 - self.rho)
    }

    fn of_terms<'a>(terms: impl Iterator<Item = &'a PoleTerm> + Clone) -> Decay {
        let mut rho: f64 = 0.0;
        let mut max_order = 0;
        for t in terms.clone() {
            let r = t.pole.norm();
            rho = rho.max(if r < 1.0 { r } else { 1.0 / r });
            max_order = max_order.max(t.order);
        }
        if max_order == 0 {
            return Decay::NONE;
        }
        let rho_eff = if max_order == 1 { rho } else { rho.powf(0.9) };
        let horizon = ((10.0 / (1.0 - rho_eff)) as usize).clamp(400, 20_000);
        let steps = if max_order == 1 { 1 } else { horizon };
        let mut constant: f64 = 0.0;
        for k in 0..steps {
            let env: f64 = terms.clone().map(|t| t.envelope(k)).sum();
            constant = constant.max(env / rho_eff.powi(k as i32));
        }
        Decay { rho: rho_eff, constant }
    }
}

/// Reduced rational function `num / den` with `den` monic and stored in
/// factored form `prod (z - p)^m`.
///
/// Poles are kept as exact values whenever the function was built from
/// factors (Blaschke products, sums, products, reflections); root finding is
/// only used when a denominator arrives as bare coefficients.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RationalRepr", into = "RationalRepr")]
pub struct RationalFunction {
    num: Polynomial,
    poles: Vec<(C, usize)>,
    den: Polynomial,
    parts: PrincipalPartDecomposition,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RationalRepr {
    num: Polynomial,
    den: Polynomial,
}

impl TryFrom<RationalRepr> for RationalFunction {
    type Error = Error;
    fn try_from(r: RationalRepr) -> Result<Self> {
        RationalFunction::new(r.num, r.den)
    }
}

impl From<RationalFunction> for RationalRepr {
    fn from(f: RationalFunction) -> Self {
        RationalRepr { num: f.num, den: f.den }
    }
}

fn merge_into(list: &mut Vec<(C, usize)>, p: C, m: usize, lcm: bool) {
    if m == 0 {
        return;
    }
    match list.iter_mut().find(|(q, _)| close(*q, p, MERGE_TOL)) {
        Some((_, mq)) => *mq = if lcm { (*mq).max(m) } else { *mq + m },
        None => list.push((p, m)),
    }
}

fn multiplicity_in(list: &[(C, usize)], p: C) -> usize {
    list.iter()
        .find(|(q, _)| close(*q, p, MERGE_TOL))
        .map_or(0, |(_, m)| *m)
}

/// Product of `(z - p)^(m_target - m_have)` over the target pole list.
fn cofactor(target: &[(C, usize)], have: &[(C, usize)]) -> Polynomial {
    let missing: Vec<(C, usize)> = target
        .iter()
        .map(|&(p, m)| (p, m - multiplicity_in(have, p)))
        .collect();
    Polynomial::from_roots(&missing)
}

fn principal_part(num: &Polynomial, poles: &[(C, usize)], idx: usize) -> Vec<C> {
    let (p, m) = poles[idx];
    let taylor = num.taylor_at(p);
    let mut series: Vec<C> = (0..m).map(|i| taylor.coeff(i)).collect();
    for (j, &(q, mq)) in poles.iter().enumerate() {
        if j == idx {
            continue;
        }
        let d = p - q;
        let inv: Vec<C> = (0..m).map(|i| (-ONE / d).powu(i as u32) / d).collect();
        for _ in 0..mq {
            let mut next = vec![ZERO; m];
            for (a, &sa) in series.iter().enumerate() {
                for (b, &ib) in inv.iter().enumerate().take(m - a) {
                    next[a + b] += sa * ib;
                }
            }
            series = next;
        }
    }
    // coefficient of (z-p)^{-j} is the Taylor coefficient of order m - j
    (1..=m).map(|j| series[m - j]).collect()
}

impl RationalFunction {
    /// Build from coefficient vectors. The denominator is normalized to be
    /// monic and common roots are cancelled.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let lead = den.leading();
        let poles = den.roots()?;
        Ok(Self::from_parts(num.scale(ONE / lead), poles))
    }

    /// Build from a numerator and a denominator given by its roots.
    pub fn from_parts(num: Polynomial, poles: Vec<(C, usize)>) -> Self {
        let mut merged = Vec::new();
        for (p, m) in poles {
            merge_into(&mut merged, p, m, false);
        }
        let (num, poles) = Self::cancel(num, merged);
        let den = Polynomial::from_roots(&poles);
        let (polynomial_part, _) = num.div_rem(&den);
        let terms = (0..poles.len())
            .map(|i| PoleTerm {
                pole: poles[i].0,
                order: poles[i].1,
                coefficients: principal_part(&num, &poles, i),
            })
            .collect();
        RationalFunction {
            num,
            poles,
            den,
            parts: PrincipalPartDecomposition { polynomial_part, terms },
        }
    }

    fn cancel(mut num: Polynomial, poles: Vec<(C, usize)>) -> (Polynomial, Vec<(C, usize)>) {
        if num.is_zero() {
            return (num, Vec::new());
        }
        let mut kept = Vec::with_capacity(poles.len());
        for (p, mut m) in poles {
            while m > 0 {
                let scale = num.scale_norm(p.norm());
                if num.eval(p).norm() <= CANCEL_TOL * scale {
                    num = num.deflate(p).0;
                    m -= 1;
                } else {
                    break;
                }
            }
            if m > 0 {
                kept.push((p, m));
            }
        }
        (num, kept)
    }

    pub fn polynomial(p: Polynomial) -> Self {
        Self::from_parts(p, Vec::new())
    }

    pub fn constant(c: C) -> Self {
        Self::polynomial(Polynomial::constant(c))
    }

    pub fn zero() -> Self {
        Self::polynomial(Polynomial::zero())
    }

    /// `c * z^k`
    pub fn monomial(c: C, k: usize) -> Self {
        Self::polynomial(Polynomial::monomial(c, k))
    }

    /// Trigonometric polynomial `sum_k coeffs[k - lowest] z^k`, `lowest <= 0`.
    pub fn laurent(lowest: i64, coeffs: &[C]) -> Self {
        let shift = (-lowest).max(0) as usize;
        let mut v = vec![ZERO; (lowest + shift as i64) as usize];
        v.extend_from_slice(coeffs);
        Self::from_parts(Polynomial::new(v), vec![(ZERO, shift)])
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn poles(&self) -> &[(C, usize)] {
        &self.poles
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn partial_fractions(&self) -> &PrincipalPartDecomposition {
        &self.parts
    }

    /// `(zeros, poles)` with multiplicities.
    pub fn poles_and_zeros(&self) -> Result<(Vec<(C, usize)>, Vec<(C, usize)>)> {
        let zeros = match self.num.degree() {
            None | Some(0) => Vec::new(),
            Some(_) => self.num.roots()?,
        };
        Ok((zeros, self.poles.clone()))
    }

    pub fn eval(&self, z: C) -> Result<C> {
        let d = self.den.eval(z);
        if d.norm() <= 1e-14 * self.den.scale_norm(z.norm()) {
            return Err(Error::PoleAtEvaluationPoint(z));
        }
        Ok(self.num.eval(z) / d)
    }

    /// Evaluation without the pole guard; callers have already excluded poles.
    pub(crate) fn value(&self, z: C) -> C {
        self.num.eval(z) / self.den.eval(z)
    }

    pub fn eval_derivative(&self, z: C) -> Result<C> {
        let d = self.den.eval(z);
        if d.norm() <= 1e-14 * self.den.scale_norm(z.norm()) {
            return Err(Error::PoleAtEvaluationPoint(z));
        }
        let n = self.num.eval(z);
        Ok((self.num.derivative().eval(z) * d - n * self.den.derivative().eval(z)) / (d * d))
    }

    /// First pole within the circle band, if any.
    pub fn pole_on_circle(&self) -> Option<C> {
        self.poles
            .iter()
            .map(|&(p, _)| p)
            .find(|p| (1.0 - p.norm()).abs() < POLE_BAND)
    }

    pub fn check_circle(&self) -> Result<()> {
        match self.pole_on_circle() {
            Some(p) => Err(Error::PoleOnCircle(p)),
            None => Ok(()),
        }
    }

    /// First pole in the closed unit disk, if any.
    pub fn pole_in_closed_disk(&self) -> Option<C> {
        self.poles
            .iter()
            .map(|&(p, _)| p)
            .find(|p| p.norm() < 1.0 + POLE_BAND)
    }

    /// `k`-th Fourier coefficient of `t -> f(e^{it})`, by residues.
    pub fn fourier_coeff(&self, k: i64) -> Result<C> {
        self.check_circle()?;
        Ok(self.parts.fourier_coeff(k))
    }

    /// Coefficients for `k` in `lo..=hi`.
    pub fn fourier_coeffs(&self, lo: i64, hi: i64) -> Result<Vec<C>> {
        self.check_circle()?;
        Ok((lo..=hi).map(|k| self.parts.fourier_coeff(k)).collect())
    }

    /// Fourier coefficient without the circle check, for functions already
    /// validated at construction of an enclosing symbol.
    pub(crate) fn coeff(&self, k: i64) -> C {
        self.parts.fourier_coeff(k)
    }

    /// First `m` Taylor coefficients at `c`, i.e. `f^(j)(c) / j!`.
    pub fn taylor_coeffs(&self, c: C, m: usize) -> Result<Vec<C>> {
        let n = self.num.taylor_at(c);
        let d = self.den.taylor_at(c);
        let d0 = d.coeff(0);
        if d0.norm() <= 1e-14 * self.den.scale_norm(c.norm()) {
            return Err(Error::PoleAtEvaluationPoint(c));
        }
        let mut out: Vec<C> = Vec::with_capacity(m);
        for j in 0..m {
            let mut s = n.coeff(j);
            for (i, &o) in out.iter().enumerate() {
                s -= o * d.coeff(j - i);
            }
            out.push(s / d0);
        }
        Ok(out)
    }

    /// True when no Fourier coefficient with negative index is nonzero, decided
    /// from the pole structure (no poles inside the disk after cancellation).
    pub fn is_analytic(&self) -> bool {
        self.poles.iter().all(|&(p, _)| p.norm() > 1.0)
    }

    fn assemble(poly: Polynomial, terms: &[&PoleTerm]) -> Self {
        let poles: Vec<(C, usize)> = terms.iter().map(|t| (t.pole, t.order)).collect();
        let den = Polynomial::from_roots(&poles);
        let mut num = &poly * &den;
        for t in terms {
            for (idx, &c) in t.coefficients.iter().enumerate() {
                let j = idx + 1;
                let rest: Vec<(C, usize)> = poles
                    .iter()
                    .map(|&(p, m)| (p, if p == t.pole { m - j } else { m }))
                    .collect();
                num = &num + &Polynomial::from_roots(&rest).scale(c);
            }
        }
        Self::from_parts(num, poles)
    }

    /// `P f`: polynomial part plus principal parts at poles outside the disk.
    pub fn analytic_part(&self) -> Result<Self> {
        self.check_circle()?;
        let outer: Vec<&PoleTerm> = self.parts.terms.iter().filter(|t| t.pole.norm() > 1.0).collect();
        Ok(Self::assemble(self.parts.polynomial_part.clone(), &outer))
    }

    /// `(I - P) f`: principal parts at poles inside the disk.
    pub fn coanalytic_part(&self) -> Result<Self> {
        self.check_circle()?;
        let inner: Vec<&PoleTerm> = self.parts.terms.iter().filter(|t| t.pole.norm() < 1.0).collect();
        Ok(Self::assemble(Polynomial::zero(), &inner))
    }

    /// Split `f = conj(f_minus) + f_plus` on the circle with `f_plus = P f`
    /// and `f_minus` analytic, `f_minus(0) = 0`.
    pub fn analytic_split(&self) -> Result<(Self, Self)> {
        Ok((self.analytic_part()?, self.coanalytic_part()?.circle_adjoint()))
    }

    /// `z -> conj(f(conj z))`.
    pub fn tilde(&self) -> Self {
        let poles = self.poles.iter().map(|&(p, m)| (p.conj(), m)).collect();
        Self::from_parts(self.num.conj_coeffs(), poles)
    }

    /// The rational function agreeing with `conj(f)` on the unit circle,
    /// i.e. `z -> conj(f(1/conj z))`.
    pub fn circle_adjoint(&self) -> Self {
        let Some(a) = self.num.degree() else {
            return Self::zero();
        };
        let b = self.den.degree().unwrap_or(0);
        let mut factor = ONE;
        let mut poles = Vec::new();
        for &(p, m) in &self.poles {
            if p != ZERO {
                factor *= (-p.conj()).powu(m as u32);
                poles.push((ONE / p.conj(), m));
            }
        }
        let mut num = self.num.conj_coeffs().reversed(a).scale(ONE / factor);
        if b >= a {
            num = num.shift_up(b - a);
        } else {
            poles.push((ZERO, a - b));
        }
        Self::from_parts(num, poles)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut lcm = self.poles.clone();
        for &(p, m) in &other.poles {
            merge_into(&mut lcm, p, m, true);
        }
        let num = &(&self.num * &cofactor(&lcm, &self.poles)) + &(&other.num * &cofactor(&lcm, &other.poles));
        Self::from_parts(num, lcm)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-ONE))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut poles = self.poles.clone();
        poles.extend_from_slice(&other.poles);
        Self::from_parts(&self.num * &other.num, poles)
    }

    pub fn scale(&self, s: C) -> Self {
        Self::from_parts(self.num.scale(s), self.poles.clone())
    }

    /// Multiply by `z^k`.
    pub fn shift(&self, k: usize) -> Self {
        Self::from_parts(self.num.shift_up(k), self.poles.clone())
    }

    /// Maximum of `|f|` on `grid_size` equispaced circle points, with a
    /// Lipschitz refinement `max + max|f'| * pi / grid_size`.
    pub fn sup_norm_grid(&self, grid_size: usize) -> Result<SupNorm> {
        self.check_circle()?;
        if grid_size < 64 {
            return Err(Error::InvalidInput(format!("grid size {grid_size} < 64")));
        }
        let mut max: f64 = 0.0;
        let mut dmax: f64 = 0.0;
        for i in 0..grid_size {
            let z = C::from_polar(1.0, std::f64::consts::TAU * i as f64 / grid_size as f64);
            max = max.max(self.value(z).norm());
            dmax = dmax.max(self.eval_derivative(z)?.norm());
        }
        Ok(SupNorm {
            grid_max: max,
            refined_bound: max + dmax * std::f64::consts::PI / grid_size as f64,
        })
    }

    /// Decay of the analytic (`k > 0`) and co-analytic (`k < 0`) Fourier
    /// coefficients outside their finitely supported parts.
    pub fn decay(&self) -> (Decay, Decay) {
        let outer = self.parts.terms.iter().filter(|t| side(t.pole) == Side::Outside);
        let inner = self.parts.terms.iter().filter(|t| side(t.pole) == Side::Inside);
        (Decay::of_terms(outer), Decay::of_terms(inner))
    }

    /// Largest `k` with a nonzero coefficient from the finite part on the
    /// analytic side (polynomial degree) and on the co-analytic side (order of
    /// the pole at the origin).
    pub fn finite_support(&self) -> (usize, usize) {
        let pos = self.parts.polynomial_part.degree().unwrap_or(0);
        let neg = self
            .parts
            .terms
            .iter()
            .find(|t| side(t.pole) == Side::Origin)
            .map_or(0, |t| t.order);
        (pos, neg)
    }

    /// Bounds on `sum_{k >= from} |f^(k)|` and `sum_{k >= from} |f^(-k)|`.
    pub fn tail_mass(&self, from: usize) -> (f64, f64) {
        let (dp, dm) = self.decay();
        let mut plus = dp.tail(from);
        let mut minus = dm.tail(from);
        plus += self.parts.polynomial_part.coeffs().iter().skip(from).map(|c| c.norm()).sum::<f64>();
        if let Some(t) = self.parts.terms.iter().find(|t| side(t.pole) == Side::Origin) {
            minus += t.coefficients.iter().skip(from.saturating_sub(1)).map(|c| c.norm()).sum::<f64>();
        }
        (plus, minus)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SupNorm {
    pub grid_max: f64,
    pub refined_bound: f64,
}
