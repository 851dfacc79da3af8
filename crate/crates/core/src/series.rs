//! Truncated heat series 𝒜₀ + 𝒜₁t + ... and their algebra: Cauchy product,
//! homothety rescaling and compact/noncompact dualization.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Ordered weakest first, so `min` combines flags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Validity {
    Unavailable,
    Approximate,
    Exact,
}

impl Validity {
    pub fn as_str(self) -> &'static str {
        match self {
            Validity::Exact => "exact",
            Validity::Approximate => "approximate",
            Validity::Unavailable => "unavailable",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HeatSeries {
    pub coeffs: Vec<BigRational>,
    pub validity: Vec<Validity>,
    pub provenance: String,
}

impl HeatSeries {
    pub fn exact(coeffs: Vec<BigRational>, provenance: impl Into<String>) -> Self {
        let validity = vec![Validity::Exact; coeffs.len()];
        HeatSeries {
            coeffs,
            validity,
            provenance: provenance.into(),
        }
    }

    /// The series of ℋ ≡ 1, truncated at `n_max`.
    pub fn one(n_max: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); n_max + 1];
        coeffs[0] = BigRational::one();
        Self::exact(coeffs, "1")
    }

    pub fn n_max(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_exact_on(&self, lo: usize, hi: usize) -> bool {
        hi < self.len() && self.validity[lo..=hi].iter().all(|&v| v == Validity::Exact)
    }

    pub fn truncate(&self, n_max: usize) -> Self {
        let n = n_max.min(self.n_max()) + 1;
        HeatSeries {
            coeffs: self.coeffs[..n].to_vec(),
            validity: self.validity[..n].to_vec(),
            provenance: self.provenance.clone(),
        }
    }

    /// 𝒜₀ = 1 wherever index 0 is exact.
    pub fn check_normalized(&self) -> Result<()> {
        if self.validity.first() == Some(&Validity::Exact) && !self.coeffs[0].is_one() {
            return Err(Error::Invariant(format!(
                "{}: exact 𝒜₀ = {} ≠ 1",
                self.provenance, self.coeffs[0]
            )));
        }
        Ok(())
    }
}

/// Cauchy product, truncated to the shorter input. Each output flag is the
/// weakest flag among the pairs that feed it.
pub fn product(a: &HeatSeries, b: &HeatSeries) -> HeatSeries {
    let n = a.n_max().min(b.n_max());
    let mut coeffs = Vec::with_capacity(n + 1);
    let mut validity = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut acc = BigRational::zero();
        let mut flag = Validity::Exact;
        for i in 0..=k {
            let (x, y) = (&a.coeffs[i], &b.coeffs[k - i]);
            if !x.is_zero() && !y.is_zero() {
                acc += x * y;
            }
            flag = flag.min(a.validity[i]).min(b.validity[k - i]);
        }
        coeffs.push(acc);
        validity.push(flag);
    }
    HeatSeries {
        coeffs,
        validity,
        provenance: format!("product({}, {})", a.provenance, b.provenance),
    }
}

/// ℋ(t) ↦ ℋ(-t).
pub fn dualize(a: &HeatSeries) -> HeatSeries {
    let coeffs = a
        .coeffs
        .iter()
        .enumerate()
        .map(|(n, c)| if n % 2 == 1 { -c } else { c.clone() })
        .collect();
    HeatSeries {
        coeffs,
        validity: a.validity.clone(),
        provenance: format!("dual({})", a.provenance),
    }
}

/// ℋ(t) ↦ ℋ(c²t), the series of the metric g/c².
pub fn rescale(a: &HeatSeries, c2: &BigRational) -> Result<HeatSeries> {
    if !c2.is_positive() {
        return Err(Error::Parameter(format!("scale factor must be positive, got {c2}")));
    }
    let mut pow = BigRational::one();
    let mut coeffs = Vec::with_capacity(a.len());
    for c in &a.coeffs {
        coeffs.push(c * &pow);
        pow *= c2;
    }
    Ok(HeatSeries {
        coeffs,
        validity: a.validity.clone(),
        provenance: format!("scale({}, {})", a.provenance, c2),
    })
}

/// Coefficients of e^{κt}, exact, to `n_max`.
pub fn exp_series(kappa: &BigRational, n_max: usize) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(n_max + 1);
    let mut term = BigRational::one();
    out.push(term.clone());
    for n in 1..=n_max {
        term = term * kappa / BigInt::from(n);
        out.push(term.clone());
    }
    out
}
