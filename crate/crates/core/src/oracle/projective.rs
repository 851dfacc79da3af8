//! Optional oracle targets: the projective spaces in the Killing metric,
//! given directly by their spectra. Volumes come from the Weyl leading term,
//! with the leading multiplicity coefficient read off by finite differences.

use astro_float::{BigFloat, Consts};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{mp, SpectralModel, SpectrumLine};
use crate::error::{Error, Result};
use crate::exactnum::{binomial, factorial, int, rpow};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Projective {
    /// CP^{m̄}
    Complex(u32),
    /// HP^{m̄}
    Quaternionic(u32),
    Cayley,
}

#[derive(Debug, Clone)]
pub struct ProjectiveSpectrum {
    pub kind: Projective,
}

impl ProjectiveSpectrum {
    pub fn new(kind: Projective) -> Result<Self> {
        match kind {
            Projective::Complex(m) | Projective::Quaternionic(m) if m < 1 => Err(Error::Parameter(format!("{kind:?}"))),
            _ => Ok(ProjectiveSpectrum { kind }),
        }
    }

    /// (shift a, scale s) with eigenvalue k(k+a)/s.
    fn eigen_data(&self) -> (u64, u64) {
        match self.kind {
            Projective::Complex(m) => (m as u64, m as u64 + 1),
            Projective::Quaternionic(m) => (2 * m as u64 + 1, 2 * (m as u64 + 2)),
            Projective::Cayley => (11, 18),
        }
    }

    fn multiplicity(&self, k: u64) -> BigInt {
        match self.kind {
            Projective::Complex(m) => {
                let m = m as u64;
                let c = binomial(k + m - 1, k);
                BigInt::from(2 * k + m) * &c * &c / BigInt::from(m)
            }
            Projective::Quaternionic(p) => {
                let (k, p) = (k as usize, p as usize);
                BigInt::from(2 * k + 2 * p + 1) * factorial(k + 2 * p) * factorial(k + 2 * p - 1)
                    / (factorial(2 * p + 1) * factorial(2 * p - 1) * factorial(k) * factorial(k + 1))
            }
            Projective::Cayley => {
                let k = k as usize;
                BigInt::from(2 * k + 11) * factorial(k + 10) * factorial(k + 7) * 6
                    / (factorial(11) * factorial(7) * factorial(k) * factorial(k + 3))
            }
        }
    }

    /// Leading coefficient L of the multiplicity polynomial in k, from its
    /// (dim-1)-th finite difference.
    pub fn leading_multiplicity(&self) -> BigRational {
        let deg = self.dimension() as u64 - 1;
        let mut acc = BigInt::zero();
        for j in 0..=deg {
            let term = binomial(deg, j) * self.multiplicity(j);
            if (deg - j).is_multiple_of(2) {
                acc += term;
            } else {
                acc -= term;
            }
        }
        BigRational::new(acc, factorial(deg as usize))
    }

    /// Vol / (4π)^{m/2} = L Γ(m/2) s^{m/2} / 2 (m is even here).
    pub fn volume_over_4pi_power(&self) -> BigRational {
        let d = self.dimension() as usize / 2;
        let (_, s) = self.eigen_data();
        self.leading_multiplicity() * factorial(d - 1) * rpow(&int(s as i64), d as i64) / int(2)
    }
}

impl SpectralModel for ProjectiveSpectrum {
    fn dimension(&self) -> u32 {
        match self.kind {
            Projective::Complex(m) => 2 * m,
            Projective::Quaternionic(m) => 4 * m,
            Projective::Cayley => 16,
        }
    }

    fn line(&self, k: u64) -> SpectrumLine {
        let (a, s) = self.eigen_data();
        SpectrumLine {
            eigenvalue: BigRational::new(BigInt::from(k * (k + a)), BigInt::from(s)),
            multiplicity: self.multiplicity(k),
        }
    }

    fn volume(&self, p: usize, cc: &mut Consts) -> BigFloat {
        let d = self.dimension() as usize / 2;
        let four_pi = mp::pi(p, cc).mul(&mp::from_rational(&int(4), p), p, mp::RM);
        four_pi
            .powi(d, p, mp::RM)
            .mul(&mp::from_rational(&self.volume_over_4pi_power(), p), p, mp::RM)
    }

    fn eigen_scale(&self) -> f64 {
        self.eigen_data().1 as f64
    }

    fn label(&self) -> String {
        match self.kind {
            Projective::Complex(m) => format!("Killing CP^{m}"),
            Projective::Quaternionic(m) => format!("Killing HP^{m}"),
            Projective::Cayley => "Killing OP^2".into(),
        }
    }
}
