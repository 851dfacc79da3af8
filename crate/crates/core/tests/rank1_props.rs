use heatcoef::exactnum::{int, ratio, to_f64};
use heatcoef::oracle::sphere_killing_fit;
use heatcoef::rank1closed::{
    an_parts, even_sphere_an, hp_an, normalized_an, rank1_series, rank1_series_with, volume, Fill, Rank1Family,
    SpaceModel,
};
use heatcoef::series::{dualize, rescale, Validity};
use heatcoef::Error;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn families() -> Vec<(Rank1Family, u32)> {
    let mut v = Vec::new();
    for mbar in 1..=6 {
        v.push((Rank1Family::Sphere, mbar));
    }
    for mbar in 2..=6 {
        v.push((Rank1Family::ComplexProjective, mbar));
    }
    for mbar in 2..=4 {
        v.push((Rank1Family::QuaternionicProjective, mbar));
    }
    v.push((Rank1Family::CayleyPlane, 2));
    v
}

fn model(family: Rank1Family, mbar: u32) -> SpaceModel {
    SpaceModel::new(family, mbar, heatcoef::rank1closed::Signature::Compact, int(1)).unwrap()
}

#[test]
fn first_coefficient_is_dim_over_12() {
    // Killing metrics are Einstein with Ric = g/2, so 𝒜₁ = τ/6 = dim/12
    for (family, mbar) in families() {
        let m = model(family, mbar);
        let a1 = an_parts(family, mbar, 1).unwrap().total() / an_parts(family, mbar, 0).unwrap().total();
        assert_eq!(a1, ratio(m.dimension() as i64, 12), "{}", m.label());
    }
}

#[test]
fn pi_powers_cancel_in_normalized_coefficients() {
    for (family, mbar) in families() {
        let m = model(family, mbar);
        for n in m.threshold().max(1)..m.threshold() + 6 {
            let a = normalized_an(family, mbar, n).unwrap();
            assert!(!a.is_zero());
        }
        let v = volume(family, mbar).unwrap();
        assert_eq!(v.pi_power as usize * 2, m.dimension() as usize, "{}", m.label());
    }
}

#[test]
fn double_sum_dominates_for_large_n() {
    for (family, mbar) in families() {
        let m = model(family, mbar);
        // from 4·threshold this fails for S⁸, S¹⁰, S¹²; 5·threshold covers every family
        let start = 5 * m.threshold().max(2);
        for n in (start..start + 20).chain([100]) {
            let p = an_parts(family, mbar, n).unwrap();
            assert!(p.first.abs() < p.double.abs(), "{} n={n}", m.label());
        }
    }
}

#[test]
fn quaternionic_double_sum_is_negative() {
    for mbar in 2..=4 {
        for n in [2 * mbar as usize + 10, 80] {
            assert!(an_parts(Rank1Family::QuaternionicProjective, mbar, n)
                .unwrap()
                .double
                .is_negative());
        }
        assert!(hp_an(mbar, 60).unwrap().rational.is_negative());
    }
}

#[test]
fn four_sphere_is_eventually_negative() {
    assert!(even_sphere_an(2, 200).unwrap().rational.is_negative());
}

#[test]
fn complex_projective_plane_stays_positive() {
    let s = rank1_series(&SpaceModel::cp(2).unwrap(), 120).unwrap();
    assert!((1..=120).all(|n| s.coeffs[n].is_positive()));
}

#[test]
fn thresholds_and_gaps() {
    let s = rank1_series(&SpaceModel::op2(), 10).unwrap();
    assert_eq!(s.validity[0], Validity::Exact);
    assert!((1..7).all(|n| s.validity[n] == Validity::Unavailable && s.coeffs[n].is_zero()));
    assert!((7..=10).all(|n| s.validity[n] == Validity::Exact));
    assert!(matches!(hp_an(3, 5), Err(Error::BelowThreshold { n: 5, threshold: 6 })));
    assert!(matches!(
        rank1_series_with(&SpaceModel::cp(3).unwrap(), 5, Fill::Oracle),
        Err(Error::OracleUnsupported(_))
    ));
}

#[test]
fn oracle_fill_on_a_sphere() {
    let m = SpaceModel::sphere(3).unwrap();
    let s = rank1_series_with(&m, 6, Fill::Oracle).unwrap();
    assert!((1..3).all(|n| s.validity[n] == Validity::Approximate));
    assert!((3..=6).all(|n| s.validity[n] == Validity::Exact));
    let fitted = sphere_killing_fit(6, 2).unwrap();
    for n in 1..3 {
        let exact =
            an_parts(Rank1Family::Sphere, 3, n).unwrap().total() / an_parts(Rank1Family::Sphere, 3, 0).unwrap().total();
        assert!((to_f64(&s.coeffs[n]) / to_f64(&exact) - 1.0).abs() < 1e-8);
        assert!((fitted[n] / to_f64(&exact) - 1.0).abs() < 1e-8);
    }
}

#[test]
fn duality_and_scale_on_models() {
    let m = SpaceModel::hp(2).unwrap();
    let s = rank1_series(&m, 30).unwrap();
    assert_eq!(rank1_series(&m.clone().dual(), 30).unwrap().coeffs, dualize(&s).coeffs);
    let scaled = SpaceModel {
        scale: ratio(3, 2),
        ..m
    };
    assert_eq!(
        rank1_series(&scaled, 30).unwrap().coeffs,
        rescale(&s, &ratio(3, 2)).unwrap().coeffs
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn series_agree_with_single_coefficients(idx in 0usize..15, extra in 0usize..20) {
        let (family, mbar) = families()[idx];
        let m = model(family, mbar);
        let n = m.threshold().max(1) + extra;
        let s = rank1_series(&m, n).unwrap();
        prop_assert_eq!(&s.coeffs[n], &normalized_an(family, mbar, n).unwrap());
    }

    #[test]
    fn dual_flips_odd_signs_only(idx in 0usize..15) {
        let (family, mbar) = families()[idx];
        let m = model(family, mbar);
        let s = rank1_series(&m, 25).unwrap();
        let d = rank1_series(&m.dual(), 25).unwrap();
        for n in 0..=25 {
            prop_assert_eq!(d.coeffs[n].abs(), s.coeffs[n].abs());
            if n % 2 == 0 {
                prop_assert_eq!(&d.coeffs[n], &s.coeffs[n]);
            }
        }
    }
}
