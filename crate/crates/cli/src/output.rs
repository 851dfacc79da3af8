//! The versioned output document and its JSON and CSV renderings.

use heatcoef::exactnum::{rpow, to_decimal};
use heatcoef::growth::GrowthReport;
use heatcoef::oracle::pi_rational;
use heatcoef::series::HeatSeries;
use heatcoef::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::space::Normalization;

pub const SCHEMA_VERSION: &str = "1.0";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Coefficient {
    pub n: usize,
    /// exact value as "num/den" (or "num" when den = 1), times π^pi_power
    pub value: String,
    pub pi_power: i32,
    pub validity: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub decimal: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpaceInfo {
    pub spec: String,
    pub dimension: usize,
    /// "normalized" for 𝒜ₙ = aₙ/Vol, "raw" for aₙ itself
    pub coefficients: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Growth {
    pub classification: String,
    pub c_estimate: f64,
    pub c_reference: f64,
    pub c1_min: f64,
    pub n_max: usize,
    pub epsilon_band: Vec<Band>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Band {
    pub epsilon: f64,
    #[serde(rename = "N")]
    pub n: Option<usize>,
}

impl From<&GrowthReport> for Growth {
    fn from(r: &GrowthReport) -> Self {
        Growth {
            classification: r.classification.as_str().into(),
            c_estimate: r.c_estimate,
            c_reference: r.c_reference,
            c1_min: r.c1_min,
            n_max: r.n_max,
            epsilon_band: r.epsilon_band.iter().map(|&(epsilon, n)| Band { epsilon, n }).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub schema_version: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub generated_unix: Option<u64>,
    pub space: SpaceInfo,
    pub normalization: serde_json::Value,
    pub coefficients: Vec<Coefficient>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub growth: Option<Growth>,
    pub provenance: Vec<String>,
}

pub fn normalization_json(n: &Normalization) -> serde_json::Value {
    match n {
        Normalization::Killing => "killing".into(),
        Normalization::UnitCurvature => "unit_curvature".into(),
        Normalization::Custom(c2) => serde_json::json!({ "custom": c2 }),
    }
}

pub fn timestamp(enabled: bool) -> Option<u64> {
    enabled.then(|| {
        std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map_or(0, |d| d.as_secs())
    })
}

/// Rows for a series, each coefficient multiplied by `factor`·π^pi_power.
pub fn coefficients(s: &HeatSeries, factor: &BigRational, pi_power: i32, decimal: Option<usize>) -> Vec<Coefficient> {
    let pi = decimal.filter(|_| pi_power != 0).map(|d| pi_rational(d as u32 + 20));
    s.coeffs
        .iter()
        .zip(&s.validity)
        .enumerate()
        .map(|(n, (c, v))| {
            let x = c * factor;
            let decimal = decimal.map(|d| match &pi {
                Some(pi) => to_decimal(&(&x * rpow(pi, pi_power as i64)), d),
                None => to_decimal(&x, d),
            });
            Coefficient {
                n,
                value: x.to_string(),
                pi_power: if x.is_zero() { 0 } else { pi_power },
                validity: v.as_str().into(),
                decimal,
            }
        })
        .collect()
}

pub fn to_json(doc: &Document) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

pub fn to_csv(rows: &[Coefficient]) -> String {
    let with_decimal = rows.iter().any(|r| r.decimal.is_some());
    let mut out = String::from("n,num,den,pi_power,validity");
    if with_decimal {
        out.push_str(",decimal");
    }
    out.push('\n');
    for r in rows {
        let (num, den) = r.value.split_once('/').unwrap_or((&r.value, "1"));
        out.push_str(&format!("{},{num},{den},{},{}", r.n, r.pi_power, r.validity));
        if let Some(d) = &r.decimal {
            out.push(',');
            out.push_str(d);
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use heatcoef::exactnum::ratio;

    #[test]
    fn exact_values_round_trip() {
        let s = HeatSeries::exact(vec![ratio(1, 1), ratio(-1, 4), ratio(1, 32), ratio(-7, 123456789)], "t");
        let rows = coefficients(&s, &ratio(1, 1), 0, Some(5));
        let doc = Document {
            schema_version: SCHEMA_VERSION.into(),
            generated_unix: None,
            space: SpaceInfo {
                spec: "t".into(),
                dimension: 3,
                coefficients: "normalized".into(),
            },
            normalization: normalization_json(&Normalization::Killing),
            coefficients: rows,
            growth: None,
            provenance: vec![],
        };
        let back: Document = serde_json::from_str(&to_json(&doc)).unwrap();
        assert_eq!(back, doc);
        let values: Vec<BigRational> = back.coefficients.iter().map(|c| c.value.parse().unwrap()).collect();
        assert_eq!(values, s.coeffs);
        assert_eq!(back.coefficients[1].decimal.as_deref(), Some("-2.5000e-1"));
    }

    #[test]
    fn csv_columns() {
        let s = HeatSeries::exact(vec![ratio(1, 1), ratio(-1, 4)], "t");
        let csv = to_csv(&coefficients(&s, &ratio(1, 1), 0, None));
        assert_eq!(csv, "n,num,den,pi_power,validity\n0,1,1,0,exact\n1,-1,4,0,exact\n");
    }
}
