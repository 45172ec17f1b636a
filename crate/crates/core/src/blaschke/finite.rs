use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{Polynomial, RationalFunction};
use crate::tol::{close, DEFAULT_TOL, ZERO_MARGIN};

type C = Complex64;

/// `phase * prod ((z - alpha) / (1 - conj(alpha) z))^mult`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BlaschkeRepr", into = "BlaschkeRepr")]
pub struct FiniteBlaschke {
    phase: C,
    zeros: Vec<(C, usize)>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BlaschkeRepr {
    #[serde(default = "unit_phase")]
    phase: [f64; 2],
    zeros: Vec<ZeroRepr>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ZeroRepr {
    alpha: [f64; 2],
    mult: usize,
}

fn unit_phase() -> [f64; 2] {
    [1.0, 0.0]
}

impl TryFrom<BlaschkeRepr> for FiniteBlaschke {
    type Error = Error;
    fn try_from(r: BlaschkeRepr) -> Result<Self> {
        FiniteBlaschke::new(
            C::new(r.phase[0], r.phase[1]),
            r.zeros
                .into_iter()
                .map(|z| (C::new(z.alpha[0], z.alpha[1]), z.mult))
                .collect(),
        )
    }
}

impl From<FiniteBlaschke> for BlaschkeRepr {
    fn from(b: FiniteBlaschke) -> Self {
        BlaschkeRepr {
            phase: [b.phase.re, b.phase.im],
            zeros: b
                .zeros
                .iter()
                .map(|&(a, m)| ZeroRepr { alpha: [a.re, a.im], mult: m })
                .collect(),
        }
    }
}

/// Merge a zero list by clustering within the global tolerance.
fn merged(zeros: impl IntoIterator<Item = (C, usize)>, lcm: bool) -> Vec<(C, usize)> {
    let mut out: Vec<(C, usize)> = Vec::new();
    for (a, m) in zeros {
        if m == 0 {
            continue;
        }
        match out.iter_mut().find(|(b, _)| close(*b, a, DEFAULT_TOL)) {
            Some((_, mb)) => *mb = if lcm { (*mb).max(m) } else { *mb + m },
            None => out.push((a, m)),
        }
    }
    out
}

impl FiniteBlaschke {
    pub fn new(phase: C, zeros: Vec<(C, usize)>) -> Result<Self> {
        if (phase.norm() - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidBlaschke(format!("phase {phase} is not unimodular")));
        }
        if let Some((a, _)) = zeros.iter().find(|(a, _)| a.norm() >= 1.0 - ZERO_MARGIN) {
            return Err(Error::InvalidBlaschke(format!("zero {a} is not inside the disk")));
        }
        Ok(FiniteBlaschke { phase: phase / phase.norm(), zeros: merged(zeros, false) })
    }

    /// Unimodular constant.
    pub fn constant(phase: C) -> Result<Self> {
        Self::new(phase, Vec::new())
    }

    /// `z^k`
    pub fn power_of_z(k: usize) -> Self {
        FiniteBlaschke { phase: C::new(1.0, 0.0), zeros: merged([(C::new(0.0, 0.0), k)], false) }
    }

    /// Single factor `b_alpha`.
    pub fn factor(alpha: C) -> Result<Self> {
        Self::new(C::new(1.0, 0.0), vec![(alpha, 1)])
    }

    pub fn phase(&self) -> C {
        self.phase
    }

    /// Distinct zeros with multiplicities.
    pub fn zeros(&self) -> &[(C, usize)] {
        &self.zeros
    }

    pub fn degree(&self) -> usize {
        self.zeros.iter().map(|(_, m)| m).sum()
    }

    pub fn is_constant(&self) -> bool {
        self.zeros.is_empty()
    }

    /// Zeros repeated by multiplicity, in a fixed order.
    pub fn zero_sequence(&self) -> Vec<C> {
        self.zeros
            .iter()
            .flat_map(|&(a, m)| std::iter::repeat_n(a, m))
            .collect()
    }

    pub fn eval(&self, z: C) -> C {
        self.zeros.iter().fold(self.phase, |acc, &(a, m)| {
            acc * ((z - a) / (C::new(1.0, 0.0) - a.conj() * z)).powu(m as u32)
        })
    }

    /// Reduced rational form; numerator and denominator both have degree `d`
    /// (up to zeros at the origin, which contribute no pole).
    pub fn to_rational(&self) -> RationalFunction {
        let mut scale = self.phase;
        let mut poles = Vec::new();
        for &(a, m) in &self.zeros {
            if a != C::new(0.0, 0.0) {
                // 1 - conj(a) z = -conj(a) (z - 1/conj(a))
                scale /= (-a.conj()).powu(m as u32);
                poles.push((C::new(1.0, 0.0) / a.conj(), m));
            }
        }
        let num = Polynomial::from_roots(&self.zeros).scale(scale);
        RationalFunction::from_parts(num, poles)
    }

    pub fn mul(&self, other: &Self) -> Self {
        FiniteBlaschke {
            phase: self.phase * other.phase,
            zeros: merged(self.zeros.iter().chain(other.zeros.iter()).copied(), false),
        }
    }

    /// Least common multiple: zero multiplicities are the pointwise maxima.
    pub fn lcm(&self, other: &Self) -> Self {
        FiniteBlaschke {
            phase: C::new(1.0, 0.0),
            zeros: merged(self.zeros.iter().chain(other.zeros.iter()).copied(), true),
        }
    }

    fn multiplicity_of(&self, a: C) -> usize {
        self.zeros
            .iter()
            .find(|(b, _)| close(*b, a, DEFAULT_TOL))
            .map_or(0, |(_, m)| *m)
    }

    /// `self` divides `other` (zero-multiset containment).
    pub fn divides(&self, other: &Self) -> bool {
        self.zeros.iter().all(|&(a, m)| other.multiplicity_of(a) >= m)
    }

    /// No common zero.
    pub fn coprime(&self, other: &Self) -> bool {
        self.zeros.iter().all(|&(a, _)| other.multiplicity_of(a) == 0)
    }

    /// Inner factor whose zeros are the poles of `f` inside the open disk.
    /// For the co-analytic part `g` of a symbol this is the `theta` with
    /// `ker H_g = theta H^2`.
    pub fn from_inner_poles(f: &RationalFunction) -> Result<Self> {
        f.check_circle()?;
        let zeros = f
            .poles()
            .iter()
            .filter(|(p, _)| p.norm() < 1.0)
            .copied()
            .collect();
        Self::new(C::new(1.0, 0.0), zeros)
    }
}

pub fn blaschke_lcm(a: &FiniteBlaschke, b: &FiniteBlaschke) -> FiniteBlaschke {
    a.lcm(b)
}

pub fn scalar_coprime(a: &FiniteBlaschke, b: &FiniteBlaschke) -> bool {
    a.coprime(b)
}
