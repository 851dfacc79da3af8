use heatcoef::exactnum::{factorial, int, rpow};
use heatcoef::plancherel::text::parse_model;
use heatcoef::plancherel::{
    build_family, closed_form, model_series, PlancherelFamily, PlancherelModel, RootType, MAX_MONOMIALS,
};
use heatcoef::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn families() -> Vec<PlancherelFamily> {
    let mut v: Vec<PlancherelFamily> = (1..=8).map(PlancherelFamily::HyperbolicOdd).collect();
    v.extend([2, 3, 4].map(PlancherelFamily::SuStar));
    v.push(PlancherelFamily::E6F4);
    for (ty, ranks) in [
        (RootType::A, 1..=4),
        (RootType::B, 2..=4),
        (RootType::C, 2..=4),
        (RootType::D, 3..=4),
    ] {
        v.extend(ranks.map(|r| PlancherelFamily::ComplexGroup(ty, r)));
    }
    v
}

fn check_structure(model: &PlancherelModel) {
    let label = model.family.label();
    assert_eq!(model.p.degree() as usize, model.m - model.r, "{label}: deg p");
    let f = closed_form(model).unwrap();
    assert!(f.poly[0].is_one(), "{label}: 𝒫(0)");
    assert!(f.degree() <= (model.m - model.r) / 2, "{label}: deg 𝒫 = {}", f.degree());
    assert_eq!(f.leading_power_twice, -(model.m as i64), "{label}");
    assert_eq!(f.kappa, -&model.rho_sq, "{label}");
    assert!(model.rho_sq.is_positive(), "{label}");
}

#[test]
fn structure_of_every_builtin_family() {
    for f in families() {
        check_structure(&build_family(&f).unwrap());
    }
}

#[test]
fn hyperbolic_degrees_and_rho() {
    // H^{2k+1}: p = λ²∏_{h=1}^{k-1}(λ²+h²), so deg 𝒫 = k - 1 and ⟨ρ,ρ⟩ = k/4
    for k in 1..=8u32 {
        let model = build_family(&PlancherelFamily::HyperbolicOdd(k)).unwrap();
        assert_eq!(model.m, 2 * k as usize + 1);
        assert_eq!(model.rho_sq, BigRational::new(k.into(), 4.into()));
        assert_eq!(closed_form(&model).unwrap().degree(), k as usize - 1);
    }
}

#[test]
fn homogeneous_p_gives_trivial_polynomial_by_full_expansion() {
    // small complex groups expand p fully, so this checks the shortcut's claim
    for (ty, r) in [
        (RootType::A, 2),
        (RootType::A, 3),
        (RootType::B, 2),
        (RootType::C, 3),
        (RootType::D, 3),
    ] {
        let model = build_family(&PlancherelFamily::ComplexGroup(ty, r)).unwrap();
        assert!(model.p.expansion_size() <= MAX_MONOMIALS);
        assert!(model.p.is_homogeneous());
        assert_eq!(closed_form(&model).unwrap().poly, vec![BigRational::one()]);
    }
    let big = build_family(&PlancherelFamily::ComplexGroup(RootType::D, 8)).unwrap();
    assert!(big.p.expansion_size() > MAX_MONOMIALS);
    assert_eq!(closed_form(&big).unwrap().poly, vec![BigRational::one()]);
}

#[test]
fn coefficients_decay_like_kappa_n_over_n_factorial() {
    // |𝒜ₙ| n! ≤ |κ|ⁿ K (1+n)^{deg 𝒫} with K = Σ_h |𝒫_h| |κ|^{-h}
    for f in families()
        .into_iter()
        .filter(|f| !matches!(f, PlancherelFamily::ComplexGroup(_, r) if *r > 3))
    {
        let model = build_family(&f).unwrap();
        let form = closed_form(&model).unwrap();
        let k_abs = form.kappa.abs();
        let big_k: BigRational = form
            .poly
            .iter()
            .enumerate()
            .map(|(h, c)| c.abs() * rpow(&k_abs, -(h as i64)))
            .sum();
        let s = model_series(&model, 150).unwrap();
        for n in 0..=150usize {
            let lhs = s.coeffs[n].abs() * BigRational::from_integer(factorial(n));
            let rhs = rpow(&k_abs, n as i64) * &big_k * rpow(&int(1 + n as i64), form.degree() as i64);
            assert!(lhs <= rhs, "{} n={n}", f.label());
        }
    }
}

fn root_line(coords: &[i64], mult: u32) -> String {
    let c: Vec<String> = coords.iter().map(|x| x.to_string()).collect();
    format!("root {} mult {mult}\n", c.join(" "))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// Rank-1 root data with even multiplicities: a root α (mult a) and
    /// optionally 2α (mult b).
    #[test]
    fn random_rank_one_root_data(a in 1u32..=4, b in 0u32..=2, len in 1i64..=3) {
        let mut src = root_line(&[len], 2 * a);
        if b > 0 {
            src += &root_line(&[2 * len], 2 * b);
        }
        src += "basis 1\n";
        let model = parse_model(&src).unwrap();
        prop_assert_eq!(model.m, 1 + 2 * (a + b) as usize);
        check_structure(&model);
        // the root length does not change the normalized answer
        let unit = parse_model(&src.replace(&format!("root {len} "), "root 1 ").replace(&format!("root {} ", 2 * len), "root 2 ")).unwrap();
        prop_assert_eq!(closed_form(&model).unwrap(), closed_form(&unit).unwrap());
    }

    /// Rank-2 type-A root data with a common even multiplicity.
    #[test]
    fn random_rank_two_type_a(mult in 1u32..=3) {
        let mut src = String::new();
        for r in [[1, -1, 0], [1, 0, -1], [0, 1, -1]] {
            src += &root_line(&r, 2 * mult);
        }
        src += "basis 1 0 -1\nbasis 0 1 -1\n";
        let model = parse_model(&src).unwrap();
        check_structure(&model);
        let f = closed_form(&model).unwrap();
        let s = model_series(&model, 12).unwrap();
        // 𝒜₁ = κ + 𝒫₁
        let want = &f.kappa + f.poly.get(1).cloned().unwrap_or_else(BigRational::zero);
        prop_assert_eq!(&s.coeffs[1], &want);
    }
}
