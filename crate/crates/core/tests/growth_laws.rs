use std::f64::consts::PI;
use std::sync::OnceLock;

use heatcoef::exactnum::int;
use heatcoef::growth::{
    bound_holds, classify, discover_n, equiv_check, estimate_growth_constant, factorial_bound_witness, nth_root_ratio,
    Classification,
};
use heatcoef::rank1closed::{rank1_series, SpaceModel};
use heatcoef::series::{dualize, rescale, HeatSeries};
use num_traits::Signed;

fn killing_models() -> Vec<SpaceModel> {
    vec![
        SpaceModel::sphere(1).unwrap(),
        SpaceModel::sphere(2).unwrap(),
        SpaceModel::cp(2).unwrap(),
        SpaceModel::cp(3).unwrap(),
        SpaceModel::hp(2).unwrap(),
        SpaceModel::op2(),
    ]
}

fn series(m: &SpaceModel) -> &'static HeatSeries {
    static CACHE: OnceLock<Vec<(String, HeatSeries)>> = OnceLock::new();
    let all = CACHE.get_or_init(|| {
        killing_models()
            .iter()
            .map(|m| (m.label(), rank1_series(m, 300).unwrap()))
            .collect()
    });
    &all.iter().find(|(l, _)| *l == m.label()).unwrap().1
}

/// C = 1/(sπ²) with s the Killing eigenvalue scale.
fn derived_constant(m: &SpaceModel) -> f64 {
    1.0 / (heatcoef::exactnum::to_f64(&m.killing_scale()) * PI * PI)
}

#[test]
fn derived_constants_hold_at_eps_02() {
    for m in killing_models() {
        let s = series(&m);
        let c = derived_constant(&m);
        let n = discover_n(s, c, 0.2, m.threshold().max(1), 50).unwrap();
        assert!(n.is_some_and(|n| n <= 150), "{}: N(0.2) = {n:?}", m.label());
        assert_eq!(classify(s, None), Classification::FactorialGrowth, "{}", m.label());
        let est = estimate_growth_constant(s, m.threshold().max(1)).unwrap();
        assert!((est / c - 1.0).abs() < 0.15, "{}: {est} vs {c}", m.label());
    }
}

#[test]
fn eventual_signs() {
    // + for S², CP², CP³; - for S⁴, HP², OP²
    let want = [1, -1, 1, 1, -1, -1];
    for (m, sign) in killing_models().iter().zip(want) {
        let s = series(m);
        for n in 50..=300 {
            let pos = s.coeffs[n].is_positive();
            assert_eq!(pos, sign > 0, "{} n={n}", m.label());
        }
    }
}

#[test]
fn scale_and_duality_invariance() {
    let s = rank1_series(&SpaceModel::sphere(2).unwrap(), 120).unwrap();
    let c = estimate_growth_constant(&s, 2).unwrap();
    let r = rescale(&s, &int(7)).unwrap();
    assert!((estimate_growth_constant(&r, 2).unwrap() / (7.0 * c) - 1.0).abs() < 1e-9);
    assert_eq!(estimate_growth_constant(&dualize(&s), 2).unwrap(), c);
}

#[test]
fn factorial_bound_everywhere() {
    for m in killing_models() {
        let s = series(&m);
        let w = factorial_bound_witness(s);
        assert!(w.is_finite() && w > 0.0);
        assert!(bound_holds(s, w * (1.0 + 1e-12)), "{}", m.label());
    }
}

#[test]
fn s2_witness_is_set_by_the_first_coefficient() {
    // the max over the range sits at n = 1; the tail approaches 1/(2π²) from below
    let s = series(&SpaceModel::sphere(1).unwrap());
    assert!((factorial_bound_witness(s) - 1.0 / 6.0).abs() < 1e-15);
    let c = 1.0 / (2.0 * PI * PI);
    let tail = nth_root_ratio(s, 300).unwrap();
    assert!(tail < c && (tail / c - 1.0).abs() < 0.01, "{tail} vs {c}");
}

#[test]
fn equiv_reports_band() {
    let s = series(&SpaceModel::sphere(1).unwrap());
    let r = equiv_check(s, 1.0 / (2.0 * PI * PI), 0.2, 50).unwrap();
    assert!(r.holds);
    assert!(r.worst_log_ratio < (1.2f64).ln());
}
