use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::roots;
use crate::error::Result;

type C = Complex64;

/// Dense polynomial with complex coefficients in ascending degree.
///
/// Trailing zero coefficients are always stripped, so the zero polynomial is
/// the empty coefficient vector and `degree == len - 1` otherwise.
#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "Vec<[f64; 2]>", into = "Vec<[f64; 2]>")]
pub struct Polynomial {
    coeffs: Vec<C>,
}

impl From<Vec<[f64; 2]>> for Polynomial {
    fn from(v: Vec<[f64; 2]>) -> Self {
        Polynomial::new(v.into_iter().map(|[re, im]| C::new(re, im)).collect())
    }
}

impl From<Polynomial> for Vec<[f64; 2]> {
    fn from(p: Polynomial) -> Self {
        p.coeffs.iter().map(|c| [c.re, c.im]).collect()
    }
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| *c == C::new(0.0, 0.0)) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| C::new(c, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::new(1.0, 0.0))
    }

    pub fn constant(c: C) -> Self {
        Self::new(vec![c])
    }

    /// `c * z^k`
    pub fn monomial(c: C, k: usize) -> Self {
        let mut v = vec![C::new(0.0, 0.0); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// Monic polynomial `prod (z - r)^m`.
    pub fn from_roots(roots: &[(C, usize)]) -> Self {
        let mut p = Self::one();
        for &(r, m) in roots {
            let lin = Polynomial::new(vec![-r, C::new(1.0, 0.0)]);
            for _ in 0..m {
                p = &p * &lin;
            }
        }
        p
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> C {
        self.coeffs.last().copied().unwrap_or_default()
    }

    pub fn eval(&self, z: C) -> C {
        self.coeffs.iter().rev().fold(C::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }

    pub fn scale(&self, s: C) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    pub fn conj_coeffs(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.conj()).collect())
    }

    /// `z^deg * p(1/z)` for a nominal degree `deg >= degree()`.
    pub fn reversed(&self, deg: usize) -> Self {
        let mut v = vec![C::new(0.0, 0.0); deg + 1];
        for (k, &c) in self.coeffs.iter().enumerate() {
            v[deg - k] = c;
        }
        Self::new(v)
    }

    /// Multiply by `z^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![C::new(0.0, 0.0); k];
        v.extend_from_slice(&self.coeffs);
        Self::new(v)
    }

    /// `sum |a_k| r^k`, the natural magnitude of `p(z)` at `|z| = r`.
    pub fn scale_norm(&self, r: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Drop leading coefficients below `rel * max|a_k|`.
    pub fn trim_relative(&self, rel: f64) -> Self {
        let cut = rel * self.max_abs_coeff();
        let mut v = self.coeffs.clone();
        while v.last().is_some_and(|c| c.norm() <= cut) {
            v.pop();
        }
        Self::new(v)
    }

    /// Synthetic division by `(z - r)`: returns quotient and remainder `p(r)`.
    pub fn deflate(&self, r: C) -> (Self, C) {
        if self.coeffs.is_empty() {
            return (Self::zero(), C::new(0.0, 0.0));
        }
        let n = self.coeffs.len();
        let mut q = vec![C::new(0.0, 0.0); n - 1];
        let mut acc = C::new(0.0, 0.0);
        for k in (0..n).rev() {
            acc = acc * r + self.coeffs[k];
            if k > 0 {
                q[k - 1] = acc;
            }
        }
        (Self::new(q), acc)
    }

    /// Polynomial long division. Panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let Some(nd) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if nd < dd {
            return (Self::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut q = vec![C::new(0.0, 0.0); nd - dd + 1];
        let lead = d.leading();
        for k in (0..=nd - dd).rev() {
            let c = rem[k + dd] / lead;
            q[k] = c;
            for (j, &dc) in d.coeffs.iter().enumerate() {
                rem[k + j] -= c * dc;
            }
        }
        rem.truncate(dd);
        (Self::new(q), Self::new(rem))
    }

    /// Coefficients of `w -> p(c + w)`.
    pub fn taylor_at(&self, c: C) -> Self {
        let mut work = self.clone();
        let mut out = Vec::with_capacity(self.coeffs.len());
        while !work.is_zero() {
            let (q, r) = work.deflate(c);
            out.push(r);
            work = q;
        }
        Self::new(out)
    }

    /// Roots clustered into distinct values with multiplicities.
    pub fn roots(&self) -> Result<Vec<(C, usize)>> {
        roots::clustered_roots(self)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut v = vec![C::new(0.0, 0.0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Polynomial::new(v)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(C::new(-1.0, 0.0))
    }
}
