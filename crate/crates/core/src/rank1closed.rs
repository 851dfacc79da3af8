//! Closed forms for the heat coefficients of the even-dimensional compact
//! rank-1 symmetric spaces S^{2m̄}, CP^{m̄}, HP^{m̄} and OP², in the Killing
//! metric, and their assembly into heat series.
//!
//! Every family has spectrum (ν² - ν₀²)/s with ν running over a half-integer
//! or integer lattice and multiplicity 2ν·Q(ν²)/K, where Q comes from one of
//! the seed tables. Euler-Maclaurin on that sum gives, with b = ν₀²/s,
//!
//! ```text
//! a_n = (4π)^D/K · Σ_i b^{n-i}/(n-i)! · G_i
//! G_i     = q_{D-1-i} (D-1-i)! s^{D-i}                  (i < D, the "first sum")
//! G_{D+l} = σ Σ_ℓ (-1)^ℓ q_ℓ x_{ℓ+l} / (s^l l!)         (the "double sum")
//! ```
//!
//! with x = c, σ = +1 on the half-integer lattice and x = d, σ = -1 on the
//! integer lattice. Vol = (4π)^D (D-1)! s^D / K.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactnum::{bernoulli, c_coeff, d_coeff, factorial, factorials, int, ratio, rpow};
use crate::oracle;
use crate::seedpolys::{beta_table, delta_table, eta_table, gamma_table};
use crate::series::{dualize, rescale, HeatSeries, Validity};

/// `rational · π^pi_power`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledRational {
    pub rational: BigRational,
    pub pi_power: i32,
}

impl ScaledRational {
    pub fn new(rational: BigRational, pi_power: i32) -> Self {
        let pi_power = if rational.is_zero() { 0 } else { pi_power };
        ScaledRational { rational, pi_power }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.rational * &other.rational, self.pi_power + other.pi_power)
    }

    pub fn div(&self, other: &Self) -> Self {
        Self::new(&self.rational / &other.rational, self.pi_power - other.pi_power)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rational.is_zero() {
            return Ok(other.clone());
        }
        if other.rational.is_zero() {
            return Ok(self.clone());
        }
        if self.pi_power != other.pi_power {
            return Err(Error::Invariant(format!(
                "adding π^{} to π^{}",
                self.pi_power, other.pi_power
            )));
        }
        Ok(Self::new(&self.rational + &other.rational, self.pi_power))
    }

    pub fn to_f64(&self) -> f64 {
        crate::exactnum::to_f64(&self.rational) * std::f64::consts::PI.powi(self.pi_power)
    }
}

impl fmt::Display for ScaledRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.pi_power {
            0 => write!(f, "{}", self.rational),
            p => write!(f, "{}·π^{}", self.rational, p),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rank1Family {
    Sphere,
    ComplexProjective,
    QuaternionicProjective,
    CayleyPlane,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Signature {
    Compact,
    Noncompact,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpaceModel {
    pub family: Rank1Family,
    pub mbar: u32,
    pub signature: Signature,
    /// c² relative to the Killing metric; the model's metric is g_Killing / c².
    pub scale: BigRational,
}

impl SpaceModel {
    pub fn new(family: Rank1Family, mbar: u32, signature: Signature, scale: BigRational) -> Result<Self> {
        let min = match family {
            Rank1Family::Sphere => 1,
            Rank1Family::ComplexProjective | Rank1Family::QuaternionicProjective => 2,
            Rank1Family::CayleyPlane => 2,
        };
        if mbar < min || (family == Rank1Family::CayleyPlane && mbar != 2) {
            return Err(Error::Parameter(format!("{family:?} with m̄ = {mbar}")));
        }
        if !scale.is_positive() {
            return Err(Error::Parameter(format!("scale must be positive, got {scale}")));
        }
        Ok(SpaceModel {
            family,
            mbar,
            signature,
            scale,
        })
    }

    pub fn sphere(mbar: u32) -> Result<Self> {
        Self::new(Rank1Family::Sphere, mbar, Signature::Compact, int(1))
    }

    pub fn cp(mbar: u32) -> Result<Self> {
        Self::new(Rank1Family::ComplexProjective, mbar, Signature::Compact, int(1))
    }

    pub fn hp(mbar: u32) -> Result<Self> {
        Self::new(Rank1Family::QuaternionicProjective, mbar, Signature::Compact, int(1))
    }

    pub fn op2() -> Self {
        Self::new(Rank1Family::CayleyPlane, 2, Signature::Compact, int(1)).expect("valid")
    }

    pub fn dual(mut self) -> Self {
        self.signature = match self.signature {
            Signature::Compact => Signature::Noncompact,
            Signature::Noncompact => Signature::Compact,
        };
        self
    }

    pub fn dimension(&self) -> u32 {
        match self.family {
            Rank1Family::Sphere | Rank1Family::ComplexProjective => 2 * self.mbar,
            Rank1Family::QuaternionicProjective => 4 * self.mbar,
            Rank1Family::CayleyPlane => 16,
        }
    }

    /// Smallest n for which the closed form is offered.
    pub fn threshold(&self) -> usize {
        let m = self.mbar as usize;
        match self.family {
            Rank1Family::Sphere => m,
            Rank1Family::ComplexProjective => m - 1,
            Rank1Family::QuaternionicProjective => 2 * m,
            Rank1Family::CayleyPlane => 7,
        }
    }

    /// Eigenvalue scale s of the Killing metric: eigenvalues are (ν² - ν₀²)/s.
    pub fn killing_scale(&self) -> BigRational {
        data(self.family, self.mbar).s
    }

    pub fn label(&self) -> String {
        let base = match self.family {
            Rank1Family::Sphere => format!("sphere:{}", self.mbar),
            Rank1Family::ComplexProjective => format!("cp:{}", self.mbar),
            Rank1Family::QuaternionicProjective => format!("hp:{}", self.mbar),
            Rank1Family::CayleyPlane => "op2".to_string(),
        };
        let base = match self.signature {
            Signature::Compact => base,
            Signature::Noncompact => format!("dual({base})"),
        };
        if self.scale.is_one() {
            base
        } else {
            format!("scale({base}, {})", self.scale)
        }
    }
}

/// Spectral data shared by the closed forms.
#[derive(Debug, Clone)]
pub(crate) struct Rank1Data {
    /// ν on ℕ + 1/2 (true) or ℕ (false)
    pub half_lattice: bool,
    pub s: BigRational,
    pub nu0_sq: BigRational,
    /// multiplicity = 2ν·Σ q_ℓ ν^{2ℓ} / k_const
    pub q: Vec<BigRational>,
    pub half_dim: usize,
    pub k_const: BigInt,
}

pub(crate) fn data(family: Rank1Family, mbar: u32) -> Rank1Data {
    let m = mbar as usize;
    match family {
        Rank1Family::Sphere => Rank1Data {
            half_lattice: true,
            s: int(2 * (2 * mbar as i64 - 1)),
            nu0_sq: ratio((2 * mbar as i64 - 1).pow(2), 4),
            q: beta_table(mbar).expect("m̄ ≥ 1").values,
            half_dim: m,
            k_const: factorial(2 * m - 1),
        },
        Rank1Family::ComplexProjective => Rank1Data {
            half_lattice: mbar % 2 == 1,
            s: int(mbar as i64 + 1),
            nu0_sq: ratio((mbar as i64).pow(2), 4),
            q: gamma_table(mbar).expect("m̄ ≥ 2").values,
            half_dim: m,
            k_const: factorial(m) * factorial(m - 1),
        },
        Rank1Family::QuaternionicProjective => Rank1Data {
            half_lattice: true,
            s: int(2 * (mbar as i64 + 2)),
            nu0_sq: ratio((2 * mbar as i64 + 1).pow(2), 4),
            q: delta_table(mbar + 1).expect("m̄ ≥ 1").values,
            half_dim: 2 * m,
            k_const: factorial(2 * m + 1) * factorial(2 * m - 1),
        },
        Rank1Family::CayleyPlane => Rank1Data {
            half_lattice: true,
            s: int(18),
            nu0_sq: ratio(121, 4),
            q: eta_table().values,
            half_dim: 8,
            k_const: factorial(7) * factorial(11) / BigInt::from(6),
        },
    }
}

impl Rank1Data {
    fn b(&self) -> BigRational {
        &self.nu0_sq / &self.s
    }

    fn x(&self, k: usize) -> BigRational {
        if self.half_lattice {
            c_coeff(k)
        } else {
            d_coeff(k)
        }
    }

    /// G_i for i < D.
    fn first_term(&self, i: usize) -> BigRational {
        let d = self.half_dim;
        let l = d - 1 - i;
        &self.q[l] * factorial(l) * rpow(&self.s, (d - i) as i64)
    }

    /// G_{D+l}. Fails if two nonzero terms of the inner sum differ in sign.
    fn double_term(&self, l: usize, fact_l: &BigInt) -> Result<BigRational> {
        let sigma = if self.half_lattice { 1 } else { -1 };
        let denom = rpow(&self.s, l as i64) * fact_l;
        let mut acc = BigRational::zero();
        let mut sign = 0;
        for (ell, q) in self.q.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let mut term = q * self.x(ell + l) / &denom;
            if (ell % 2 == 1) != (sigma < 0) {
                term = -term;
            }
            let ts = if term.is_positive() { 1 } else { -1 };
            if sign != 0 && ts != sign {
                return Err(Error::Invariant(format!(
                    "double-sum terms change sign at l = {l}, ℓ = {ell}"
                )));
            }
            sign = ts;
            acc += term;
        }
        Ok(acc)
    }

    /// Normalizer (D-1)! s^D, so that 𝒜_n = bracket_n / normalizer.
    fn normalizer(&self) -> BigRational {
        rpow(&self.s, self.half_dim as i64) * factorial(self.half_dim - 1)
    }

    fn volume(&self) -> ScaledRational {
        let d = self.half_dim as i64;
        let r = rpow(&int(4), d) * self.normalizer() / &self.k_const;
        ScaledRational::new(r, d as i32)
    }

    fn prefactor(&self) -> ScaledRational {
        let d = self.half_dim as i64;
        ScaledRational::new(rpow(&int(4), d) / &self.k_const, d as i32)
    }
}

/// The two parts of the closed form at a single n, before the (4π)^D/K prefactor.
#[derive(Debug, Clone, PartialEq)]
pub struct AnParts {
    pub first: BigRational,
    pub double: BigRational,
}

impl AnParts {
    pub fn total(&self) -> BigRational {
        &self.first + &self.double
    }
}

fn parts_at(dat: &Rank1Data, n: usize) -> Result<AnParts> {
    let b = dat.b();
    let d = dat.half_dim;
    let mut first = BigRational::zero();
    for i in 0..d.min(n + 1) {
        first += dat.first_term(i) * rpow(&b, (n - i) as i64) / factorial(n - i);
    }
    let mut double = BigRational::zero();
    if n >= d {
        let facts = factorials(n - d);
        for l in 0..=n - d {
            let q = n - d - l;
            double += dat.double_term(l, &facts[l])? * rpow(&b, q as i64) / &facts[q];
        }
    }
    Ok(AnParts { first, double })
}

/// First and double sums of a_n for a compact Killing model, without the
/// (4π)^D/K prefactor. Defined for every n ≥ 0.
pub fn an_parts(family: Rank1Family, mbar: u32, n: usize) -> Result<AnParts> {
    SpaceModel::new(family, mbar, Signature::Compact, int(1))?;
    parts_at(&data(family, mbar), n)
}

fn closed_an(family: Rank1Family, mbar: u32, n: usize) -> Result<ScaledRational> {
    let model = SpaceModel::new(family, mbar, Signature::Compact, int(1))?;
    if n < model.threshold() {
        return Err(Error::BelowThreshold {
            n,
            threshold: model.threshold(),
        });
    }
    let dat = data(family, mbar);
    let parts = parts_at(&dat, n)?;
    Ok(dat.prefactor().mul(&ScaledRational::new(parts.total(), 0)))
}

/// a_n(S^{2m̄}) for n ≥ m̄.
pub fn even_sphere_an(mbar: u32, n: usize) -> Result<ScaledRational> {
    closed_an(Rank1Family::Sphere, mbar, n)
}

/// a_n(CP^{m̄}) for n ≥ m̄ - 1; odd m̄ uses c_n, even m̄ uses d_n.
pub fn cp_an(mbar: u32, n: usize) -> Result<ScaledRational> {
    closed_an(Rank1Family::ComplexProjective, mbar, n)
}

/// a_n(HP^{m̄}) for n ≥ 2m̄.
pub fn hp_an(mbar: u32, n: usize) -> Result<ScaledRational> {
    closed_an(Rank1Family::QuaternionicProjective, mbar, n)
}

/// a_n(OP²) for n ≥ 7.
pub fn op2_an(n: usize) -> Result<ScaledRational> {
    closed_an(Rank1Family::CayleyPlane, 2, n)
}

/// Killing-metric volume of the compact model.
pub fn volume(family: Rank1Family, mbar: u32) -> Result<ScaledRational> {
    SpaceModel::new(family, mbar, Signature::Compact, int(1))?;
    Ok(data(family, mbar).volume())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Fill {
    /// leave below-threshold indices as unavailable zeros
    #[default]
    Unavailable,
    /// fit them with the spectral oracle and mark them approximate
    Oracle,
    /// keep the closed-form values, which hold for every n ≥ 0, and mark them exact
    ClosedForm,
}

/// 𝒜₀..𝒜_{n_max} of the compact Killing model, computed in parallel over n.
fn compact_killing(dat: &Rank1Data, n_max: usize) -> Result<Vec<BigRational>> {
    let d = dat.half_dim;
    // warm the Bernoulli cache once instead of contending for it
    bernoulli(2 * (n_max + d + 1))?;
    let b = dat.b();
    let facts = factorials(n_max + 1);
    let g: Vec<BigRational> = (0..=n_max)
        .into_par_iter()
        .map(|i| {
            if i < d {
                Ok(dat.first_term(i))
            } else {
                dat.double_term(i - d, &facts[i - d])
            }
        })
        .collect::<Result<_>>()?;
    // With b = p/q and L clearing every denominator of G,
    //   L q^n n! · bracket_n = Σ_i H_i C(n,i) p^{n-i},   H_i = L G_i i! q^i,
    // which Horner evaluates in integers.
    let (p, q) = (b.numer().clone(), b.denom().clone());
    let l = g.iter().fold(BigInt::one(), |acc, gi| acc.lcm(gi.denom()));
    let mut q_pow = BigInt::one();
    let mut h = Vec::with_capacity(n_max + 1);
    for (i, gi) in g.iter().enumerate() {
        h.push(gi.numer() * (&l / gi.denom()) * &facts[i] * &q_pow);
        q_pow *= &q;
    }
    let norm = dat.normalizer();
    let coeffs: Vec<BigRational> = (0..=n_max)
        .into_par_iter()
        .map(|n| {
            let mut acc = BigInt::zero();
            let mut binom = BigInt::one();
            for (i, hi) in h.iter().enumerate().take(n + 1) {
                acc = acc * &p + hi * &binom;
                binom = binom * (n - i) / (i + 1);
            }
            let den = &l * Pow::pow(&q, n as u32) * &facts[n];
            BigRational::new(acc, den) / &norm
        })
        .collect();
    Ok(coeffs)
}

/// Heat series 𝒜₀..𝒜_{n_max} of a rank-1 model. 𝒜₀ is 1, indices at or past
/// the threshold are exact, and the rest follow `fill`.
pub fn rank1_series_with(model: &SpaceModel, n_max: usize, fill: Fill) -> Result<HeatSeries> {
    let dat = data(model.family, model.mbar);
    let exact = compact_killing(&dat, n_max)?;
    if !exact[0].is_one() {
        return Err(Error::Invariant(format!("{}: 𝒜₀ = {}", model.label(), exact[0])));
    }
    let threshold = model.threshold();
    let mut coeffs = exact;
    let mut validity = vec![Validity::Exact; n_max + 1];
    let gap = 1..threshold.min(n_max + 1);
    if !gap.is_empty() {
        match fill {
            Fill::Unavailable => {
                for n in gap {
                    coeffs[n] = BigRational::zero();
                    validity[n] = Validity::Unavailable;
                }
            }
            Fill::ClosedForm => {}
            Fill::Oracle => {
                if model.family != Rank1Family::Sphere {
                    return Err(Error::OracleUnsupported(model.label()));
                }
                let fitted = oracle::sphere_killing_fit(2 * model.mbar, gap.end - 1)?;
                for n in gap {
                    coeffs[n] = BigRational::from_float(fitted[n])
                        .ok_or_else(|| Error::Invariant("non-finite oracle value".into()))?;
                    validity[n] = Validity::Approximate;
                }
            }
        }
    }
    let mut series = HeatSeries {
        coeffs,
        validity,
        provenance: match model.family {
            Rank1Family::Sphere => format!("sphere:{}", model.mbar),
            Rank1Family::ComplexProjective => format!("cp:{}", model.mbar),
            Rank1Family::QuaternionicProjective => format!("hp:{}", model.mbar),
            Rank1Family::CayleyPlane => "op2".to_string(),
        },
    };
    if model.signature == Signature::Noncompact {
        series = dualize(&series);
    }
    if !model.scale.is_one() {
        series = rescale(&series, &model.scale)?;
    }
    Ok(series)
}

pub fn rank1_series(model: &SpaceModel, n_max: usize) -> Result<HeatSeries> {
    rank1_series_with(model, n_max, Fill::Unavailable)
}

/// 𝒜_n = a_n / Vol for a single n at or past the threshold; the π-powers must cancel.
pub fn normalized_an(family: Rank1Family, mbar: u32, n: usize) -> Result<BigRational> {
    let an = closed_an(family, mbar, n)?;
    let q = an.div(&volume(family, mbar)?);
    if q.pi_power != 0 && !q.rational.is_zero() {
        return Err(Error::Invariant(format!("π^{} left after dividing by Vol", q.pi_power)));
    }
    Ok(q.rational)
}
