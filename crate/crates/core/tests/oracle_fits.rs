use heatcoef::exactnum::{factorial, int, ratio, to_f64};
use heatcoef::oracle::projective::{Projective, ProjectiveSpectrum};
use heatcoef::oracle::{default_grid, fit_coefficients, fit_model, geometric_ladder, SpectralModel, UnitSphere};
use heatcoef::plancherel::{build_family, closed_form, to_series, PlancherelFamily};
use heatcoef::rank1closed::{an_parts, Rank1Family};
use heatcoef::series::{dualize, rescale};
use heatcoef::BigRational;

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn fit(model: &dyn SpectralModel, orders: usize) -> heatcoef::oracle::FitResult {
    fit_model(model, orders, &default_grid(model, orders), 50).unwrap()
}

/// Closed-form 𝒜ₙ evaluated at every n (it is valid below the threshold too).
fn closed(family: Rank1Family, mbar: u32, n: usize, vol_norm: &BigRational) -> f64 {
    to_f64(&(an_parts(family, mbar, n).unwrap().total() / vol_norm))
}

#[test]
fn unit_s2_matches_known_values() {
    let f = fit(&UnitSphere::new(2).unwrap(), 5);
    let v = f.values();
    assert!((v[0] - 1.0).abs() < 1e-8);
    assert!(rel(v[1], 1.0 / 3.0) < 1e-6);
    assert!(rel(v[2], 1.0 / 15.0) < 1e-6);
    assert!(rel(v[3], 4.0 / 315.0) < 1e-6);
}

#[test]
fn unit_s3_is_exponential() {
    let f = fit(&UnitSphere::new(3).unwrap(), 5);
    for (n, v) in f.values().into_iter().enumerate() {
        let want = 1.0 / to_f64(&BigRational::from_integer(factorial(n)));
        assert!(rel(v, want) < 1e-6, "n={n}: {v} vs {want}");
    }
    // the same numbers from the H³ closed form, dualized and rescaled
    let h3 = closed_form(&build_family(&PlancherelFamily::HyperbolicOdd(1)).unwrap()).unwrap();
    let chain = rescale(&dualize(&to_series(&h3, 5)), &int(4)).unwrap();
    for (n, v) in f.values().into_iter().enumerate() {
        assert!(rel(v, to_f64(&chain.coeffs[n])) < 1e-6);
    }
}

#[test]
fn volume_self_consistency() {
    for m in 2..=8 {
        let f = fit(&UnitSphere::new(m).unwrap(), 3);
        assert!((f.values()[0] - 1.0).abs() < 1e-8, "S^{m}: {}", f.values()[0]);
    }
}

#[test]
fn refinement_within_error_estimate() {
    for m in [2, 3, 4] {
        let grid = geometric_ladder(&ratio(1, 10), 13);
        let coarse = fit_coefficients(m, 4, &grid, 40).unwrap();
        let fine_grid: Vec<BigRational> = grid.iter().map(|t| t / int(2)).collect();
        let fine = fit_coefficients(m, 4, &fine_grid, 80).unwrap();
        for n in 0..=4 {
            let d = to_f64(&(&coarse.coeffs[n] - &fine.coeffs[n])).abs();
            assert!(
                d <= coarse.error[n],
                "S^{m} n={n}: moved {d:e}, estimate {:e}",
                coarse.error[n]
            );
        }
    }
}

#[test]
fn projective_spaces_against_closed_forms() {
    let cases = [
        (Projective::Complex(2), Rank1Family::ComplexProjective, 2),
        (Projective::Complex(3), Rank1Family::ComplexProjective, 3),
        (Projective::Quaternionic(2), Rank1Family::QuaternionicProjective, 2),
        (Projective::Cayley, Rank1Family::CayleyPlane, 2),
    ];
    for (kind, family, mbar) in cases {
        let spec = ProjectiveSpectrum::new(kind).unwrap();
        let f = fit(&spec, 4);
        let norm = an_parts(family, mbar, 0).unwrap().total();
        for (n, v) in f.values().into_iter().enumerate() {
            let want = closed(family, mbar, n, &norm);
            assert!(rel(v, want) < 1e-6, "{kind:?} n={n}: fit {v} closed {want}");
        }
    }
}
