//! Spectral oracle: exact spectra, multiprecision heat traces and extraction
//! of the leading heat coefficients by fitting on a geometric ladder of t.
//! Nothing here touches the closed forms.

mod mp;
pub mod projective;

use astro_float::{BigFloat, Consts};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactnum::{binomial, int, ratio, rpow, to_f64};

pub use mp::{bits_for, to_rational as float_to_rational};

/// Levels past this are refused: t is too small for a direct sum.
pub const MAX_LEVELS: u64 = 5_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumLine {
    pub eigenvalue: BigRational,
    pub multiplicity: BigInt,
}

/// A compact manifold given by an explicit spectrum with strictly increasing
/// eigenvalues indexed by level k ≥ 0.
pub trait SpectralModel: Sync {
    fn dimension(&self) -> u32;
    fn line(&self, k: u64) -> SpectrumLine;
    fn volume(&self, p: usize, cc: &mut Consts) -> BigFloat;
    /// Rough size of eig_k / k², used to pick default t values.
    fn eigen_scale(&self) -> f64 {
        1.0
    }
    fn label(&self) -> String;
}

/// The round sphere S^m of radius 1.
#[derive(Debug, Clone, Copy)]
pub struct UnitSphere {
    pub m: u32,
}

impl UnitSphere {
    pub fn new(m: u32) -> Result<Self> {
        if m < 2 {
            return Err(Error::Parameter(format!("sphere dimension must be ≥ 2, got {m}")));
        }
        Ok(UnitSphere { m })
    }
}

/// Eigenvalue k(k+m-1) with the dimension of degree-k harmonic polynomials
/// on ℝ^{m+1} as multiplicity.
pub fn sphere_spectrum(m: u32, k: u64) -> Result<SpectrumLine> {
    if m < 2 {
        return Err(Error::Parameter(format!("sphere dimension must be ≥ 2, got {m}")));
    }
    let m = m as u64;
    let eig = k * (k + m - 1);
    let mult = if k < 2 {
        binomial(k + m, m)
    } else {
        binomial(k + m, m) - binomial(k + m - 2, m)
    };
    Ok(SpectrumLine {
        eigenvalue: BigRational::from_integer(BigInt::from(eig)),
        multiplicity: mult,
    })
}

impl SpectralModel for UnitSphere {
    fn dimension(&self) -> u32 {
        self.m
    }

    fn line(&self, k: u64) -> SpectrumLine {
        sphere_spectrum(self.m, k).expect("m ≥ 2")
    }

    /// 2π^{(m+1)/2} / Γ((m+1)/2).
    fn volume(&self, p: usize, cc: &mut Consts) -> BigFloat {
        let pi = mp::pi(p, cc);
        let m = self.m as usize;
        if m % 2 == 1 {
            let q = m.div_ceil(2);
            let c = ratio(2, 1) / BigRational::from_integer(crate::exactnum::factorial(q - 1));
            mp::from_rational(&c, p).mul(&pi.powi(q, p, mp::RM), p, mp::RM)
        } else {
            // Γ(q + 1/2) = (2q)! √π / (4^q q!)
            let q = m / 2;
            let c =
                rpow(&int(4), q as i64) * int(2) * crate::exactnum::factorial(q) / crate::exactnum::factorial(2 * q);
            mp::from_rational(&c, p).mul(&pi.powi(q, p, mp::RM), p, mp::RM)
        }
    }

    fn label(&self) -> String {
        format!("unit S^{}", self.m)
    }
}

/// Σ_k mult_k e^{-t eig_k}, stopped once a term is below 10^{-digits} of the
/// running sum and the terms have started shrinking at least geometrically
/// by half, so the tail is bounded by the last term.
pub fn heat_trace_of(model: &dyn SpectralModel, t: &BigRational, digits: u32) -> Result<BigFloat> {
    if !t.is_positive() {
        return Err(Error::Parameter(format!("t must be positive, got {t}")));
    }
    if digits > 500 {
        return Err(Error::Parameter(format!("precision {digits} exceeds 500 digits")));
    }
    let p = mp::bits_for(digits);
    let cut = mp::from_rational(&BigRational::new(BigInt::one(), BigInt::from(10).pow(digits + 2)), p);
    let half = mp::from_rational(&ratio(1, 2), p);
    let mut cc = mp::consts();
    let mut sum = BigFloat::from_u64(0, p);
    let mut prev: Option<BigFloat> = None;
    for k in 0.. {
        if k > MAX_LEVELS {
            return Err(Error::CutoffTooLarge(k));
        }
        let line = model.line(k);
        let x = mp::from_rational(&(&line.eigenvalue * t), p).neg();
        let term = mp::from_bigint(&line.multiplicity, p).mul(&x.exp(p, mp::RM, &mut cc), p, mp::RM);
        sum = sum.add(&term, p, mp::RM);
        let small = term.cmp(&sum.mul(&cut, p, mp::RM)).is_some_and(|c| c < 0);
        let shrinking = prev
            .as_ref()
            .is_some_and(|q| term.cmp(&q.mul(&half, p, mp::RM)).is_some_and(|c| c <= 0));
        if small && shrinking {
            break;
        }
        prev = Some(term);
    }
    Ok(sum)
}

/// Heat trace of the unit sphere S^m.
pub fn heat_trace(m: u32, t: &BigRational, digits: u32) -> Result<BigFloat> {
    heat_trace_of(&UnitSphere::new(m)?, t, digits)
}

/// t_j = t0 / 2^j for j < count.
pub fn geometric_ladder(t0: &BigRational, count: usize) -> Vec<BigRational> {
    (0..count).map(|j| t0 / rpow(&int(2), j as i64)).collect()
}

#[derive(Debug, Clone)]
pub struct FitResult {
    /// fitted 𝒜₀..𝒜_orders (exact values of the multiprecision fit)
    pub coeffs: Vec<BigRational>,
    /// |full fit - fit without the largest t| plus the rounding bound
    pub error: Vec<f64>,
    /// propagated data rounding, Σ_j |V⁻¹_{nj}| |y_j| 2^{-bits}
    pub rounding: Vec<f64>,
    pub points: usize,
    pub digits: u32,
}

impl FitResult {
    pub fn values(&self) -> Vec<f64> {
        self.coeffs.iter().map(to_f64).collect()
    }
}

/// Inverse of the Vandermonde matrix V_{jn} = t_j^n by exact Gauss-Jordan.
fn vandermonde_inverse(ts: &[BigRational]) -> Vec<Vec<BigRational>> {
    let n = ts.len();
    let mut a: Vec<Vec<BigRational>> = ts
        .iter()
        .map(|t| {
            let mut row: Vec<BigRational> = (0..n).map(|k| rpow(t, k as i64)).collect();
            row.extend((0..n).map(|_| BigRational::zero()));
            row
        })
        .collect();
    for (i, row) in a.iter_mut().enumerate() {
        row[n + i] = BigRational::one();
    }
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero()).expect("distinct nodes");
        a.swap(col, piv);
        let inv = a[col][col].recip();
        for v in a[col].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let f = row[col].clone();
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    if !pv.is_zero() {
                        *v -= &f * pv;
                    }
                }
            }
        }
    }
    // rows of the right half give coefficients: c = V⁻¹ y
    a.into_iter().map(|row| row[n..].to_vec()).collect()
}

fn solve(inv: &[Vec<BigRational>], y: &[BigRational]) -> Vec<BigRational> {
    inv.iter()
        .map(|row| row.iter().zip(y).map(|(a, b)| a * b).sum())
        .collect()
}

/// The normalized trace F(t) = (4πt)^{m/2} Tr(t) / Vol, rounded to an exact rational.
fn normalized_trace(model: &dyn SpectralModel, t: &BigRational, digits: u32) -> Result<BigRational> {
    let p = mp::bits_for(digits);
    let mut cc = mp::consts();
    let tr = heat_trace_of(model, t, digits)?;
    let m = model.dimension() as usize;
    let four_pi_t = mp::pi(p, &mut cc).mul(&mp::from_rational(&(t * int(4)), p), p, mp::RM);
    let mut pref = four_pi_t.powi(m / 2, p, mp::RM);
    if m % 2 == 1 {
        pref = pref.mul(&four_pi_t.sqrt(p, mp::RM), p, mp::RM);
    }
    let f = pref.mul(&tr, p, mp::RM).div(&model.volume(p, &mut cc), p, mp::RM);
    mp::to_rational(&f).ok_or_else(|| Error::Invariant("non-finite heat trace".into()))
}

/// Relative rounding amplification allowed before a fit is refused.
pub const MAX_ROUNDING: f64 = 1e-10;

/// Fit 𝒜₀..𝒜_orders of an explicit spectrum by polynomial interpolation of
/// the normalized trace on a geometric ladder.
pub fn fit_model(model: &dyn SpectralModel, orders: usize, t_grid: &[BigRational], digits: u32) -> Result<FitResult> {
    let k = t_grid.len();
    if k < 2 * orders || k < orders + 2 {
        return Err(Error::Parameter(format!("{k} grid points cannot fit {orders} orders")));
    }
    if t_grid.iter().any(|t| !t.is_positive()) {
        return Err(Error::Parameter("t grid must be positive".into()));
    }
    let r = &t_grid[1] / &t_grid[0];
    if t_grid.windows(2).any(|w| &w[1] / &w[0] != r) || r >= int(1) {
        return Err(Error::Parameter("t grid must be a decreasing geometric ladder".into()));
    }
    let ys: Vec<BigRational> = t_grid
        .par_iter()
        .map(|t| normalized_trace(model, t, digits))
        .collect::<Result<_>>()?;
    let inv = vandermonde_inverse(t_grid);
    let full = solve(&inv, &ys);
    let inv_reduced = vandermonde_inverse(&t_grid[1..]);
    let reduced = solve(&inv_reduced, &ys[1..]);
    let ulp = 2f64.powi(-(mp::bits_for(digits) as i32 - 8));
    let mut rounding = Vec::with_capacity(orders + 1);
    let mut error = Vec::with_capacity(orders + 1);
    for n in 0..=orders {
        let amp: f64 = inv[n].iter().zip(&ys).map(|(a, y)| to_f64(&(a * y).abs())).sum::<f64>() * ulp;
        let scale = to_f64(&full[n]).abs().max(1e-12);
        if !(amp / scale <= MAX_ROUNDING) {
            return Err(Error::IllConditioned(format!(
                "rounding bound {amp:e} on 𝒜_{n} ≈ {scale:e} with {k} points at {digits} digits"
            )));
        }
        rounding.push(amp);
        error.push(to_f64(&(&full[n] - &reduced[n]).abs()) + amp);
    }
    Ok(FitResult {
        coeffs: full[..=orders].to_vec(),
        error,
        rounding,
        points: k,
        digits,
    })
}

/// Fit on the unit sphere S^m.
pub fn fit_coefficients(m: u32, orders: usize, t_grid: &[BigRational], digits: u32) -> Result<FitResult> {
    fit_model(&UnitSphere::new(m)?, orders, t_grid, digits)
}

/// The default ladder for `orders` coefficients: 2·orders + 3 points from
/// t0 = eigen_scale / 10.
pub fn default_grid(model: &dyn SpectralModel, orders: usize) -> Vec<BigRational> {
    let t0 = BigRational::from_float(model.eigen_scale() / 10.0).expect("finite");
    geometric_ladder(&t0, 2 * orders + 3)
}

pub const DEFAULT_DIGITS: u32 = 50;

/// π as a rational within 10^{-digits}.
pub fn pi_rational(digits: u32) -> BigRational {
    let mut cc = mp::consts();
    mp::to_rational(&mp::pi(bits_for(digits), &mut cc)).expect("π is finite")
}

/// Killing-normalized 𝒜₁..𝒜_{n_hi} of S^m (m even) from a unit-sphere fit;
/// the Killing metric is the unit metric scaled so eigenvalues shrink by 2(m-1).
pub fn sphere_killing_fit(m: u32, n_hi: usize) -> Result<Vec<f64>> {
    let sphere = UnitSphere::new(m)?;
    let orders = n_hi.max(2);
    let fit = fit_model(&sphere, orders, &default_grid(&sphere, orders), DEFAULT_DIGITS)?;
    let c2 = 2.0 * (m as f64 - 1.0);
    Ok(fit
        .values()
        .into_iter()
        .enumerate()
        .map(|(n, v)| v / c2.powi(n as i32))
        .collect())
}
