//! Symmetric spaces of noncompact type whose Plancherel density is a
//! polynomial p(λ), and the closed form ℋ(t) = e^{κt}𝒫(t) obtained by
//! integrating p against the Gaussian e^{-t⟨λ,λ⟩} term by term.
//!
//! Coordinates on 𝔞* are λ_k = λ(H_k) for a chosen basis H_k of 𝔞, so the
//! inner product is the inverse of the Killing Gram matrix of the H_k and
//! everything stays rational.

mod poly;
pub mod text;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{binomial, gauss_moment, int, ratio, rpow};
use crate::series::{exp_series, HeatSeries};

pub use poly::MultiPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RootType {
    A,
    B,
    C,
    D,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PlancherelFamily {
    /// H^{2m̄+1}
    HyperbolicOdd(u32),
    /// SU*(2m̄)/Sp(m̄)
    SuStar(u32),
    /// E6(-26)/F4
    E6F4,
    /// G_ℂ/G for a classical complex simple group
    ComplexGroup(RootType, u32),
    Custom(String),
}

impl PlancherelFamily {
    pub fn label(&self) -> String {
        match self {
            PlancherelFamily::HyperbolicOdd(m) => format!("hyperbolic-odd:{m}"),
            PlancherelFamily::SuStar(m) => format!("su-star:{m}"),
            PlancherelFamily::E6F4 => "e6-f4".into(),
            PlancherelFamily::ComplexGroup(t, n) => format!("complex-group:{t:?}{n}"),
            PlancherelFamily::Custom(name) => format!("custom:{name}"),
        }
    }
}

/// Where ⟨ρ,ρ⟩ came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RhoSource {
    /// computed from root data and equal to a value pinned by a known anchor
    Anchor,
    /// computed from root data
    RootData,
    UserSupplied,
}

/// ∏_{h ∈ shifts} ((z·λ)² + h²).
#[derive(Debug, Clone, PartialEq)]
pub struct RootFactor {
    pub z: Vec<BigRational>,
    pub shifts: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum PlancherelPoly {
    Factored { vars: usize, factors: Vec<RootFactor> },
    Expanded(MultiPoly),
}

impl PlancherelPoly {
    pub fn degree(&self) -> u32 {
        match self {
            PlancherelPoly::Factored { factors, .. } => factors.iter().map(|f| 2 * f.shifts.len() as u32).sum(),
            PlancherelPoly::Expanded(p) => p.degree().unwrap_or(0),
        }
    }

    pub fn vars(&self) -> usize {
        match self {
            PlancherelPoly::Factored { vars, .. } => *vars,
            PlancherelPoly::Expanded(p) => p.vars,
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        match self {
            PlancherelPoly::Factored { factors, .. } => factors.iter().all(|f| f.shifts.iter().all(|&h| h == 0)),
            PlancherelPoly::Expanded(p) => p.is_homogeneous(),
        }
    }

    /// The expanded polynomial in the λ coordinates.
    pub fn expand(&self) -> MultiPoly {
        match self {
            PlancherelPoly::Factored { vars, factors } => expand_factors(*vars, factors),
            PlancherelPoly::Expanded(p) => p.clone(),
        }
    }

    /// p(T y), expanded in y.
    fn pull_back(&self, t: &[Vec<BigRational>]) -> MultiPoly {
        match self {
            PlancherelPoly::Factored { vars, factors } => {
                // z·(T y) = (Tᵀ z)·y
                let moved: Vec<RootFactor> = factors
                    .iter()
                    .map(|f| RootFactor {
                        z: (0..*vars)
                            .map(|j| (0..*vars).map(|i| &t[i][j] * &f.z[i]).sum())
                            .collect(),
                        shifts: f.shifts.clone(),
                    })
                    .collect();
                expand_factors(*vars, &moved)
            }
            PlancherelPoly::Expanded(p) => p.substitute(t),
        }
    }

    /// Upper bound on the number of monomials an expansion can produce.
    pub fn expansion_size(&self) -> u64 {
        let d = self.degree() as u64;
        let r = self.vars() as u64;
        let b = binomial(d + r, r);
        num_traits::ToPrimitive::to_u64(&b).unwrap_or(u64::MAX)
    }
}

fn expand_factors(vars: usize, factors: &[RootFactor]) -> MultiPoly {
    let mut acc = MultiPoly::one(vars);
    for f in factors {
        let sq = MultiPoly::linear(&f.z).pow(2);
        for &h in &f.shifts {
            let shifted = sq.add(&MultiPoly::constant(vars, int((h * h) as i64)));
            acc = acc.mul(&shifted);
        }
    }
    acc
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlancherelModel {
    pub family: PlancherelFamily,
    /// rank of G/K
    pub r: usize,
    /// dimension of G/K
    pub m: usize,
    pub p: PlancherelPoly,
    /// ⟨·,·⟩ on 𝔞* in the λ coordinates
    pub form: Vec<Vec<BigRational>>,
    pub rho_sq: BigRational,
    pub rho_source: RhoSource,
}

/// Positive restricted roots in some ambient Euclidean coordinates, with
/// multiplicities, and a basis H_k of 𝔞 in the same coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct RootDatum {
    pub positive: Vec<(Vec<BigRational>, u32)>,
    pub basis: Vec<Vec<BigRational>>,
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

fn to_rat(v: Vec<i64>) -> Vec<BigRational> {
    v.into_iter().map(int).collect()
}

/// Type A_{n-1} on the sum-zero hyperplane of ℝⁿ, basis H_k = e_k - e_n.
fn type_a(n: usize, mult: u32) -> RootDatum {
    let mut positive = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut v = vec![0; n];
            v[i] = 1;
            v[j] = -1;
            positive.push((to_rat(v), mult));
        }
    }
    let basis = (0..n - 1)
        .map(|k| {
            let mut v = vec![0; n];
            v[k] = 1;
            v[n - 1] = -1;
            to_rat(v)
        })
        .collect();
    RootDatum { positive, basis }
}

/// Classical root system of the given type and rank, every multiplicity 2.
pub fn complex_root_datum(ty: RootType, rank: u32) -> Result<RootDatum> {
    let n = rank as usize;
    let min = match ty {
        RootType::A => 1,
        RootType::B | RootType::C => 2,
        RootType::D => 3,
    };
    if n < min || n > 8 {
        return Err(Error::Parameter(format!("complex group {ty:?}{rank} is out of range")));
    }
    if ty == RootType::A {
        return Ok(type_a(n + 1, 2));
    }
    let mut positive = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for sign in [-1, 1] {
                let mut v = unit(n, i);
                v[j] = sign;
                positive.push((to_rat(v), 2));
            }
        }
        match ty {
            RootType::B => positive.push((to_rat(unit(n, i)), 2)),
            RootType::C => positive.push((to_rat(unit(n, i).into_iter().map(|x| 2 * x).collect()), 2)),
            _ => {}
        }
    }
    let basis = (0..n).map(|k| to_rat(unit(n, k))).collect();
    Ok(RootDatum { positive, basis })
}

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn mat_vec(m: &[Vec<BigRational>], v: &[BigRational]) -> Vec<BigRational> {
    m.iter().map(|row| dot(row, v)).collect()
}

/// Inverse by exact Gauss-Jordan; None if singular.
pub fn invert(m: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = a[col][col].recip();
        for v in a[col].iter_mut() {
            *v *= &inv;
        }
        let pr = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let f = row[col].clone();
                for (v, p) in row.iter_mut().zip(&pr) {
                    *v -= &f * p;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Build a model from restricted-root data with even multiplicities.
pub fn from_root_data(family: PlancherelFamily, datum: &RootDatum) -> Result<PlancherelModel> {
    let r = datum.basis.len();
    if r == 0 {
        return Err(Error::Parameter("empty basis".into()));
    }
    let coords: Vec<(Vec<BigRational>, u32)> = datum
        .positive
        .iter()
        .map(|(beta, mult)| (datum.basis.iter().map(|h| dot(beta, h)).collect(), *mult))
        .collect();
    if let Some((_, m)) = coords.iter().find(|(_, m)| *m == 0 || m % 2 == 1) {
        return Err(Error::Parameter(format!(
            "root multiplicity {m} is not a positive even number"
        )));
    }
    // Killing form on 𝔞: B(H_k, H_l) = 2 Σ_{β>0} m_β β(H_k) β(H_l)
    let mut gram = vec![vec![BigRational::zero(); r]; r];
    let mut rho = vec![BigRational::zero(); r];
    for (b, mult) in &coords {
        for k in 0..r {
            rho[k] += &b[k] * int(*mult as i64) / int(2);
            for l in 0..r {
                gram[k][l] += &b[k] * &b[l] * int(2 * *mult as i64);
            }
        }
    }
    let form = invert(&gram).ok_or(Error::NotPositiveDefinite)?;
    let rho_sq = dot(&rho, &mat_vec(&form, &rho));
    let factors = coords
        .iter()
        .map(|(b, mult)| {
            let fb = mat_vec(&form, b);
            let norm = dot(b, &fb);
            RootFactor {
                z: fb.into_iter().map(|x| x / &norm).collect(),
                shifts: (0..mult / 2).collect(),
            }
        })
        .collect();
    let m = r + coords.iter().map(|(_, m)| *m as usize).sum::<usize>();
    let model = PlancherelModel {
        family,
        r,
        m,
        p: PlancherelPoly::Factored { vars: r, factors },
        form,
        rho_sq,
        rho_source: RhoSource::RootData,
    };
    diagonalize_form(&model)?;
    Ok(model)
}

/// The four built-in families.
pub fn build_family(family: &PlancherelFamily) -> Result<PlancherelModel> {
    let datum = match family {
        PlancherelFamily::HyperbolicOdd(mbar) => {
            if *mbar < 1 {
                return Err(Error::Parameter("hyperbolic-odd needs m̄ ≥ 1".into()));
            }
            RootDatum {
                positive: vec![(vec![int(1)], 2 * mbar)],
                basis: vec![vec![int(1)]],
            }
        }
        PlancherelFamily::SuStar(mbar) => {
            if *mbar < 2 {
                return Err(Error::Parameter("su-star needs m̄ ≥ 2".into()));
            }
            type_a(*mbar as usize, 4)
        }
        PlancherelFamily::E6F4 => type_a(3, 8),
        PlancherelFamily::ComplexGroup(ty, rank) => complex_root_datum(*ty, *rank)?,
        PlancherelFamily::Custom(_) => {
            return Err(Error::Parameter(
                "custom models come from model text, not build_family".into(),
            ))
        }
    };
    let mut model = from_root_data(family.clone(), &datum)?;
    if *family == PlancherelFamily::HyperbolicOdd(1) {
        if model.rho_sq != ratio(1, 4) {
            return Err(Error::Invariant(format!("H³ gives ⟨ρ,ρ⟩ = {}", model.rho_sq)));
        }
        model.rho_source = RhoSource::Anchor;
    }
    Ok(model)
}

/// A congruence T with Tᵀ·form·T = diag(d).
#[derive(Debug, Clone, PartialEq)]
pub struct Diagonalization {
    pub t: Vec<Vec<BigRational>>,
    pub d: Vec<BigRational>,
}

/// Rational LDLᵀ of the form; T = L^{-T}. Fails on a non-positive pivot.
pub fn diagonalize_form(model: &PlancherelModel) -> Result<Diagonalization> {
    diagonalize(&model.form)
}

pub fn diagonalize(form: &[Vec<BigRational>]) -> Result<Diagonalization> {
    let n = form.len();
    if form.iter().any(|row| row.len() != n) {
        return Err(Error::Parameter("form is not square".into()));
    }
    for i in 0..n {
        for j in 0..i {
            if form[i][j] != form[j][i] {
                return Err(Error::NotPositiveDefinite);
            }
        }
    }
    let mut l = vec![vec![BigRational::zero(); n]; n];
    let mut d = vec![BigRational::zero(); n];
    for j in 0..n {
        let mut dj = form[j][j].clone();
        for k in 0..j {
            dj -= &l[j][k] * &l[j][k] * &d[k];
        }
        if !dj.is_positive() {
            return Err(Error::NotPositiveDefinite);
        }
        l[j][j] = BigRational::one();
        for i in j + 1..n {
            let mut v = form[i][j].clone();
            for k in 0..j {
                v -= &l[i][k] * &l[j][k] * &d[k];
            }
            l[i][j] = v / &dj;
        }
        d[j] = dj;
    }
    // L is unit lower triangular, so forward substitution inverts it
    let mut linv = vec![vec![BigRational::zero(); n]; n];
    for c in 0..n {
        for i in 0..n {
            let mut v = if i == c {
                BigRational::one()
            } else {
                BigRational::zero()
            };
            for k in 0..i {
                v -= &l[i][k] * &linv[k][c];
            }
            linv[i][c] = v;
        }
    }
    let t = (0..n).map(|i| (0..n).map(|j| linv[j][i].clone()).collect()).collect();
    Ok(Diagonalization { t, d })
}

/// ℋ(t) = e^{κt}·𝒫(t).
#[derive(Debug, Clone, PartialEq)]
pub struct ExpPolyForm {
    pub kappa: BigRational,
    /// 𝒫 by ascending power, 𝒫(0) = 1
    pub poly: Vec<BigRational>,
    /// twice the power of t carried by the unnormalized moment integral
    pub leading_power_twice: i64,
}

impl ExpPolyForm {
    pub fn degree(&self) -> usize {
        self.poly.len() - 1
    }

    /// The compact dual: e^{-κt}𝒫(-t).
    pub fn dual(&self) -> Self {
        ExpPolyForm {
            kappa: -&self.kappa,
            poly: self
                .poly
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
            leading_power_twice: self.leading_power_twice,
        }
    }
}

/// Expansions larger than this are refused unless p is homogeneous.
pub const MAX_MONOMIALS: u64 = 400_000;

/// Integrate p against e^{-t(⟨λ,λ⟩+⟨ρ,ρ⟩)} in diagonal coordinates and
/// normalize so 𝒫(0) = 1.
pub fn closed_form(model: &PlancherelModel) -> Result<ExpPolyForm> {
    let deg = model.p.degree() as usize;
    if deg % 2 == 1 {
        return Err(Error::Parameter(format!("p has odd degree {deg}")));
    }
    let half = deg / 2;
    let lead = -(model.r as i64 + 2 * half as i64);
    if lead != -(model.m as i64) {
        return Err(Error::Invariant(format!(
            "moment integral carries t^{}/2, expected t^-{}/2",
            lead, model.m
        )));
    }
    let kappa = -&model.rho_sq;
    if model.p.expansion_size() > MAX_MONOMIALS {
        if model.p.is_homogeneous() {
            // a single moment degree survives, so 𝒫 ≡ 1 and p never needs expanding
            return Ok(ExpPolyForm {
                kappa,
                poly: vec![BigRational::one()],
                leading_power_twice: lead,
            });
        }
        return Err(Error::Parameter(format!(
            "{} is too large to expand exactly",
            model.family.label()
        )));
    }
    let diag = diagonalize_form(model)?;
    let pulled = model.p.pull_back(&diag.t);
    let sums = moment_sums(&pulled, &diag.d, half);
    let top = &sums[half];
    if top.is_zero() {
        return Err(Error::DegenerateMoment);
    }
    let mut poly: Vec<BigRational> = (0..=half).map(|j| &sums[half - j] / top).collect();
    while poly.len() > 1 && poly.last().is_some_and(|c| c.is_zero()) {
        poly.pop();
    }
    Ok(ExpPolyForm {
        kappa,
        poly,
        leading_power_twice: lead,
    })
}

/// S_k = Σ_{|h|=k} a_{2h} ∏_j M(h_j) d_j^{-h_j}; monomials with an odd
/// exponent integrate to zero and are skipped.
fn moment_sums(p: &MultiPoly, d: &[BigRational], half: usize) -> Vec<BigRational> {
    let mut sums = vec![BigRational::zero(); half + 1];
    for (e, c) in &p.terms {
        if e.iter().any(|k| k % 2 == 1) {
            continue;
        }
        let k: usize = e.iter().map(|&x| x as usize / 2).sum();
        let mut w = c.clone();
        for (j, &x) in e.iter().enumerate() {
            let h = x as usize / 2;
            w *= gauss_moment(h) * rpow(&d[j], -(h as i64));
        }
        if k <= half {
            sums[k] += w;
        }
    }
    sums
}

/// The odd part of p (monomials of odd total degree) in λ coordinates.
pub fn odd_part(p: &MultiPoly) -> MultiPoly {
    let mut out = MultiPoly::zero(p.vars);
    for (e, c) in &p.terms {
        if e.iter().sum::<u32>() % 2 == 1 {
            out.add_term(e.clone(), c.clone());
        }
    }
    out
}

/// 𝒜_n = Σ_h 𝒫_h κ^{n-h}/(n-h)!.
pub fn to_series(form: &ExpPolyForm, n_max: usize) -> HeatSeries {
    let e = exp_series(&form.kappa, n_max);
    let coeffs = (0..=n_max)
        .map(|n| {
            form.poly
                .iter()
                .enumerate()
                .take(n + 1)
                .map(|(h, c)| c * &e[n - h])
                .sum()
        })
        .collect();
    HeatSeries::exact(coeffs, format!("exp-poly(κ = {})", form.kappa))
}

/// Heat series of a built model, labeled with its family.
pub fn model_series(model: &PlancherelModel, n_max: usize) -> Result<HeatSeries> {
    let mut s = to_series(&closed_form(model)?, n_max);
    s.provenance = model.family.label();
    Ok(s)
}
