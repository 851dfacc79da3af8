//! Factorial growth analysis of heat series, entirely in log space.
//!
//! Two sequences are equivalent in the sense used here when, for every
//! ε in (0,1), Ξ_n(1-ε)ⁿ < Ξ̃_n < Ξ_n(1+ε)ⁿ holds for all n past some N(ε).

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactnum::{ln_factorial, log_abs};
use crate::series::{HeatSeries, Validity};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    FactorialGrowth,
    FactorialDecay,
    PolynomialExponential,
    Vanishing,
    /// none of the above is recognizable on the computed range
    Unclassified,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::FactorialGrowth => "factorial_growth",
            Classification::FactorialDecay => "factorial_decay",
            Classification::PolynomialExponential => "polynomial_exponential",
            Classification::Vanishing => "vanishing",
            Classification::Unclassified => "unclassified",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrowthReport {
    pub classification: Classification,
    pub c_estimate: f64,
    /// (ε, N(ε)) with N the smallest start index for which the band holds
    /// through n_max against `c_reference`, or None if it never does
    pub epsilon_band: Vec<(f64, Option<usize>)>,
    pub c_reference: f64,
    pub c1_min: f64,
    pub n_max: usize,
}

fn require_exact(s: &HeatSeries, lo: usize, hi: usize) -> Result<()> {
    if !s.is_exact_on(lo, hi) {
        return Err(Error::InsufficientRange { lo, hi });
    }
    Ok(())
}

/// (|𝒜ₙ|/n!)^{1/n}; None for a zero coefficient.
pub fn nth_root_ratio(s: &HeatSeries, n: usize) -> Option<f64> {
    let c = &s.coeffs[n];
    if c.is_zero() || n == 0 {
        return None;
    }
    let l = log_abs(c).ok()?;
    Some(((l - ln_factorial(n)) / n as f64).exp())
}

/// The value of (|𝒜ₙ|/n!)^{1/n} at n_max, after checking that the series is
/// exact and nonzero on [n_min, n_max] and that n_max ≥ n_min + 50.
pub fn estimate_growth_constant(s: &HeatSeries, n_min: usize) -> Result<f64> {
    let n_max = s.n_max();
    let n_min = n_min.max(1);
    if n_max < n_min + 50 {
        return Err(Error::InsufficientRange {
            lo: n_min,
            hi: n_min + 50,
        });
    }
    require_exact(s, n_min, n_max)?;
    let mut last = 0.0;
    for n in n_min..=n_max {
        last = nth_root_ratio(s, n).ok_or(Error::ZeroCoefficient(n))?;
    }
    Ok(last)
}

/// Log-space band test: for n in [from, log_a.len()), require
/// log_a[n] + n·lo < log_b[n] < log_a[n] + n·hi. Returns the failing indices.
pub fn band_failures(log_a: &[f64], log_b: &[f64], lo: f64, hi: f64, from: usize) -> Vec<usize> {
    (from..log_a.len().min(log_b.len()))
        .filter(|&n| {
            let d = log_b[n] - log_a[n];
            let k = n as f64;
            !(d > k * lo && d < k * hi)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquivReport {
    pub holds: bool,
    pub failures: Vec<usize>,
    /// max over the range of |ln(|𝒜ₙ|/(Cⁿn!))|/n
    pub worst_log_ratio: f64,
}

fn log_coeffs(s: &HeatSeries, from: usize) -> Vec<f64> {
    (0..s.len())
        .map(|n| {
            if n < from {
                0.0
            } else {
                log_abs(&s.coeffs[n]).unwrap_or(f64::NEG_INFINITY)
            }
        })
        .collect()
}

/// Does {|𝒜ₙ|} sit in the band Cⁿn!(1±ε)ⁿ for every n in [N, n_max]?
pub fn equiv_check(s: &HeatSeries, c: f64, eps: f64, n_start: usize) -> Result<EquivReport> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::Parameter(format!("ε must lie in (0,1), got {eps}")));
    }
    if !(c > 0.0) {
        return Err(Error::Parameter(format!("C must be positive, got {c}")));
    }
    let n_max = s.n_max();
    if n_start > n_max {
        return Err(Error::InsufficientRange { lo: n_start, hi: n_max });
    }
    require_exact(s, n_start, n_max)?;
    let target: Vec<f64> = (0..=n_max).map(|n| n as f64 * c.ln() + ln_factorial(n)).collect();
    let actual = log_coeffs(s, n_start);
    let failures = band_failures(&target, &actual, (1.0 - eps).ln(), (1.0 + eps).ln(), n_start.max(1));
    let worst_log_ratio = (n_start.max(1)..=n_max)
        .map(|n| ((actual[n] - target[n]) / n as f64).abs())
        .fold(0.0, f64::max);
    Ok(EquivReport {
        holds: failures.is_empty(),
        failures,
        worst_log_ratio,
    })
}

/// Smallest N for which the ε-band against Cⁿn! holds on all of [N, n_max],
/// if that leaves at least `min_span` indices.
pub fn discover_n(s: &HeatSeries, c: f64, eps: f64, n_min: usize, min_span: usize) -> Result<Option<usize>> {
    let report = equiv_check(s, c, eps, n_min)?;
    let n = report.failures.last().map_or(n_min, |&f| f + 1);
    Ok((n + min_span <= s.n_max()).then_some(n))
}

/// max_n (|𝒜ₙ|/n!)^{1/n} over the available indices of [1, n_max], the least
/// C₁ with |𝒜ₙ| ≤ C₁ⁿn! there. Unavailable indices are skipped.
pub fn factorial_bound_witness(s: &HeatSeries) -> f64 {
    available(s).filter_map(|n| nth_root_ratio(s, n)).fold(0.0, f64::max)
}

/// Indices 1..=n_max that carry a computed value.
fn available(s: &HeatSeries) -> impl Iterator<Item = usize> + '_ {
    (1..s.len()).filter(|&n| s.validity[n] != Validity::Unavailable)
}

/// Check |𝒜ₙ| ≤ C₁ⁿ n! at every available index, in log space.
pub fn bound_holds(s: &HeatSeries, c1: f64) -> bool {
    available(s).all(|n| {
        let c = &s.coeffs[n];
        c.is_zero() || log_abs(c).is_ok_and(|l| l <= n as f64 * c1.ln() + ln_factorial(n))
    })
}

/// Classify by the n-th root behavior over the last fifth of the range.
pub fn classify(s: &HeatSeries, deg_bound: Option<usize>) -> Classification {
    let n_max = s.n_max();
    let last_nonzero = (0..=n_max).rev().find(|&n| !s.coeffs[n].is_zero()).unwrap_or(0);
    let bound = deg_bound.unwrap_or(n_max / 2);
    if n_max >= 4 && last_nonzero <= bound {
        return Classification::Vanishing;
    }
    let lo = (n_max * 4 / 5).max(1);
    let tail: Option<Vec<f64>> = (lo..=n_max).map(|n| nth_root_ratio(s, n)).collect();
    let Some(tail) = tail else {
        return Classification::Unclassified;
    };
    if tail.len() < 2 {
        return Classification::Unclassified;
    }
    let (min, max) = tail
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(a, b), &x| (a.min(x), b.max(x)));
    if max <= 1.05 * min {
        return Classification::FactorialGrowth;
    }
    let decreasing = tail.windows(2).all(|w| w[1] <= w[0]);
    if decreasing && *tail.last().expect("nonempty") < 1e-3 {
        return Classification::FactorialDecay;
    }
    // |𝒜ₙ|^{1/n} settling means exponential times polynomial
    let roots: Vec<f64> = (lo..=n_max)
        .map(|n| (log_abs(&s.coeffs[n]).unwrap_or(f64::NEG_INFINITY) / n as f64).exp())
        .collect();
    let (rmin, rmax) = roots
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(a, b), &x| (a.min(x), b.max(x)));
    if rmin > 0.0 && rmax <= 1.05 * rmin {
        return Classification::PolynomialExponential;
    }
    Classification::Unclassified
}

/// Full report. `c_reference` defaults to the estimate; the ε bands are
/// discovered against it with at least 10 indices of support.
pub fn growth_report(
    s: &HeatSeries,
    epsilons: &[f64],
    c_reference: Option<f64>,
    deg_bound: Option<usize>,
) -> Result<GrowthReport> {
    let classification = classify(s, deg_bound);
    let n_max = s.n_max();
    let c1_min = factorial_bound_witness(s);
    let c_estimate = if n_max >= 1 {
        nth_root_ratio(s, n_max).unwrap_or(0.0)
    } else {
        0.0
    };
    let c_ref = c_reference.unwrap_or(c_estimate);
    let first_exact = (1..=n_max).find(|&n| s.is_exact_on(n, n_max)).unwrap_or(n_max);
    let mut epsilon_band = Vec::new();
    if classification == Classification::FactorialGrowth && c_ref > 0.0 {
        for &eps in epsilons {
            epsilon_band.push((eps, discover_n(s, c_ref, eps, first_exact, 10)?));
        }
    }
    Ok(GrowthReport {
        classification,
        c_estimate,
        epsilon_band,
        c_reference: c_ref,
        c1_min,
        n_max,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{factorial, int, ratio, rpow};
    use crate::series::{exp_series, rescale};
    use num_rational::BigRational;

    fn fact_series(poly: impl Fn(usize) -> BigRational, n_max: usize) -> HeatSeries {
        HeatSeries::exact(
            (0..=n_max)
                .map(|n| poly(n) * BigRational::from_integer(factorial(n)))
                .collect(),
            "test",
        )
    }

    #[test]
    fn reflexive_band() {
        let a: Vec<f64> = (0..50).map(|n| (n as f64).sqrt()).collect();
        assert!(band_failures(&a, &a, (0.9f64).ln(), (1.1f64).ln(), 1).is_empty());
    }

    #[test]
    fn polynomial_prefactor_absorbed() {
        let s = fact_series(|n| int(14 * (n * n) as i64 + 1), 400);
        let r = equiv_check(&s, 1.0, 0.1, 200).unwrap();
        assert!(r.holds, "{:?}", r.failures.first());
        assert!(!equiv_check(&s, 1.0, 0.1, 2).unwrap().holds);
    }

    #[test]
    fn exp_series_is_decay() {
        let s = HeatSeries::exact(exp_series(&ratio(1, 4), 300), "s3");
        assert_eq!(classify(&s, None), Classification::FactorialDecay);
        assert!(estimate_growth_constant(&s, 10).unwrap() < 1e-4);
        let w = factorial_bound_witness(&s);
        assert!(w <= 0.25 + 1e-12);
        assert!(bound_holds(&s, 0.25));
    }

    #[test]
    fn growth_detected_and_scaled() {
        let s = fact_series(|n| rpow(&ratio(1, 7), n as i64) * int(n as i64 + 3), 200);
        assert_eq!(classify(&s, None), Classification::FactorialGrowth);
        let c = estimate_growth_constant(&s, 1).unwrap();
        assert!((c - 1.0 / 7.0).abs() < 0.01);
        let r = rescale(&s, &ratio(5, 2)).unwrap();
        let c2 = estimate_growth_constant(&r, 1).unwrap();
        assert!((c2 - 2.5 * c).abs() < 1e-9 * c2);
    }

    #[test]
    fn errors() {
        let s = HeatSeries::exact(exp_series(&ratio(1, 4), 30), "short");
        assert!(matches!(
            estimate_growth_constant(&s, 1),
            Err(Error::InsufficientRange { .. })
        ));
        let z = HeatSeries::one(80);
        assert_eq!(estimate_growth_constant(&z, 1), Err(Error::ZeroCoefficient(1)));
        assert_eq!(classify(&z, None), Classification::Vanishing);
        assert!(equiv_check(&s, 1.0, 1.5, 1).is_err());
    }
}
