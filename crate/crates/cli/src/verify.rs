//! Built-in verification suites.

use heatcoef::exactnum::{factorial, int, to_f64};
use heatcoef::growth::{classify, discover_n, Classification};
use heatcoef::oracle::{default_grid, fit_model, UnitSphere, DEFAULT_DIGITS};
use heatcoef::plancherel::{build_family, model_series, PlancherelFamily, RootType};
use heatcoef::rank1closed::{normalized_an, rank1_series, Rank1Family, SpaceModel};
use heatcoef::series::{dualize, product, rescale};
use heatcoef::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::CliError;

pub const SUITES: [&str; 3] = ["dual-vanishing", "oracle-spheres", "growth-laws"];

pub struct Check {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

fn check(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Check {
    Check {
        name: name.into(),
        ok,
        detail: detail.into(),
    }
}

pub fn run(suite: &str) -> Result<Vec<Check>, CliError> {
    match suite {
        // the second name is the one fixed by the command-line contract
        "dual-vanishing" | "corollary-1.7" => vanishing(),
        "oracle-spheres" => oracle_spheres(),
        "growth-laws" => growth_laws(),
        "all" => {
            let mut out = Vec::new();
            for s in SUITES {
                out.extend(run(s)?);
            }
            Ok(out)
        }
        _ => Err(CliError::Usage(format!(
            "unknown suite `{suite}`; expected one of {} or all",
            SUITES.join(", ")
        ))),
    }
}

/// ℋ(t)ℋ(-t) = 1 whenever 𝒫 ≡ 1, so the product with the dual vanishes past n = 0.
fn vanishing() -> Result<Vec<Check>, CliError> {
    let families = [
        PlancherelFamily::HyperbolicOdd(1),
        PlancherelFamily::ComplexGroup(RootType::A, 1),
        PlancherelFamily::ComplexGroup(RootType::A, 2),
        PlancherelFamily::ComplexGroup(RootType::B, 2),
        PlancherelFamily::ComplexGroup(RootType::D, 4),
    ];
    families
        .iter()
        .map(|f| {
            let s = model_series(&build_family(f)?, 100)?;
            let p = product(&s, &dualize(&s));
            let nonzero: Vec<usize> = (1..=100).filter(|&n| !p.coeffs[n].is_zero()).collect();
            Ok(check(
                format!("{} × dual", f.label()),
                p.coeffs[0].is_one() && nonzero.is_empty(),
                if nonzero.is_empty() {
                    "𝒜ₙ = 0 exactly for 1 ≤ n ≤ 100".to_string()
                } else {
                    format!("nonzero at n = {nonzero:?}")
                },
            ))
        })
        .collect()
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn oracle_spheres() -> Result<Vec<Check>, CliError> {
    let mut out = Vec::new();
    for mbar in [1u32, 2] {
        let sphere = UnitSphere::new(2 * mbar)?;
        let fit = fit_model(&sphere, 7, &default_grid(&sphere, 7), DEFAULT_DIGITS)?;
        let c2 = 2.0 * (2.0 * mbar as f64 - 1.0);
        let mut worst = 0.0f64;
        for n in mbar as usize..=5 {
            let closed = to_f64(&normalized_an(Rank1Family::Sphere, mbar, n)?);
            worst = worst.max(rel(fit.values()[n] / c2.powi(n as i32), closed));
        }
        out.push(check(
            format!("S^{} closed form vs spectral fit", 2 * mbar),
            worst < 1e-6,
            format!("n = {mbar}..5, worst relative deviation {worst:.2e}"),
        ));
    }
    let s3 = UnitSphere::new(3)?;
    let fit = fit_model(&s3, 7, &default_grid(&s3, 7), DEFAULT_DIGITS)?;
    let worst = (0..=5)
        .map(|n| rel(fit.values()[n], 1.0 / to_f64(&BigRational::from_integer(factorial(n)))))
        .fold(0.0, f64::max);
    out.push(check(
        "unit S³ spectral fit is 1/n!",
        worst < 1e-6,
        format!("worst relative deviation {worst:.2e}"),
    ));
    let h3 = model_series(&build_family(&PlancherelFamily::HyperbolicOdd(1))?, 30)?;
    let chain = rescale(&dualize(&h3), &int(4))?;
    let exact = (0..=30).all(|n| chain.coeffs[n] == BigRational::one() / BigRational::from_integer(factorial(n)));
    out.push(check(
        "scale(dual(hyperbolic-odd:1), 4) = 1/n!",
        exact,
        "exact for n ≤ 30",
    ));
    Ok(out)
}

/// Growth against the Killing-normalized constants C = 1/(sπ²), where s is the
/// eigenvalue scale, and the eventual signs of the exact coefficients.
fn growth_laws() -> Result<Vec<Check>, CliError> {
    let cases = [
        (SpaceModel::sphere(1)?, 1),
        (SpaceModel::sphere(2)?, -1),
        (SpaceModel::cp(2)?, 1),
        (SpaceModel::cp(3)?, 1),
        (SpaceModel::hp(2)?, -1),
        (SpaceModel::op2(), -1),
    ];
    cases
        .par_iter()
        .map(|(m, sign)| {
            let s = rank1_series(m, 300)?;
            let c = 1.0 / (to_f64(&m.killing_scale()) * std::f64::consts::PI.powi(2));
            let n = discover_n(&s, c, 0.2, m.threshold().max(1), 50)?;
            let signs = (50..=300).all(|k| s.coeffs[k].is_positive() == (*sign > 0));
            let growth = classify(&s, None) == Classification::FactorialGrowth;
            Ok(check(
                format!("{} ≈ Cⁿn!", m.label()),
                n.is_some() && signs && growth,
                format!(
                    "C = 1/({}π²), N(0.2) = {}, sign {} for 50 ≤ n ≤ 300",
                    m.killing_scale(),
                    n.map_or("none".into(), |n| n.to_string()),
                    if *sign > 0 { "+" } else { "-" }
                ),
            ))
        })
        .collect()
}
