//! Plain-text model descriptions for spaces beyond the built-in families.
//!
//! One directive per line, `#` starts a comment. Either give the model
//! explicitly:
//!
//! ```text
//! name h3
//! rank 1
//! dimension 3
//! rho_sq 1/4
//! form 1/4          # one row of the r×r inner product per line
//! term 1 2          # coefficient, then r exponents
//! ```
//!
//! or as restricted-root data, from which the form, ⟨ρ,ρ⟩, p and the
//! dimension are derived:
//!
//! ```text
//! name e6-f4
//! root 1 -1 0 mult 8    # positive root in ambient coordinates
//! root 1 0 -1 mult 8
//! root 0 1 -1 mult 8
//! basis 1 0 -1          # basis vectors of 𝔞, same coordinates
//! basis 0 1 -1
//! ```

use num_rational::BigRational;

use super::{from_root_data, MultiPoly, PlancherelFamily, PlancherelModel, PlancherelPoly, RhoSource, RootDatum};
use crate::error::{Error, Result};

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::ModelText { line, msg: msg.into() }
}

fn rational(line: usize, s: &str) -> Result<BigRational> {
    s.parse::<BigRational>()
        .map_err(|_| err(line, format!("not a rational number: {s}")))
}

fn integer(line: usize, s: &str) -> Result<u32> {
    s.parse::<u32>()
        .map_err(|_| err(line, format!("not a nonnegative integer: {s}")))
}

fn one_arg<'a>(line: usize, key: &str, args: &[&'a str]) -> Result<&'a str> {
    match args {
        [a] => Ok(a),
        _ => Err(err(line, format!("`{key}` takes one value"))),
    }
}

pub fn parse_model(src: &str) -> Result<PlancherelModel> {
    let mut name = "custom".to_string();
    let mut rank = None;
    let mut dim = None;
    let mut rho_sq = None;
    let mut form: Vec<Vec<BigRational>> = Vec::new();
    let mut terms: Vec<(usize, BigRational, Vec<u32>)> = Vec::new();
    let mut roots: Vec<(Vec<BigRational>, u32)> = Vec::new();
    let mut basis: Vec<Vec<BigRational>> = Vec::new();
    let mut last_line = 0;

    for (i, raw) in src.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let mut words = body.split_whitespace();
        let key = words.next().expect("nonempty");
        let args: Vec<&str> = words.collect();
        match key {
            "name" => name = one_arg(line, key, &args)?.to_string(),
            "rank" => rank = Some((line, integer(line, one_arg(line, key, &args)?)? as usize)),
            "dimension" => dim = Some((line, integer(line, one_arg(line, key, &args)?)? as usize)),
            "rho_sq" => rho_sq = Some(rational(line, one_arg(line, key, &args)?)?),
            "form" => form.push(args.iter().map(|a| rational(line, a)).collect::<Result<_>>()?),
            "term" => {
                let (c, exps) = args
                    .split_first()
                    .ok_or_else(|| err(line, "`term` needs a coefficient"))?;
                let exps = exps.iter().map(|a| integer(line, a)).collect::<Result<_>>()?;
                terms.push((line, rational(line, c)?, exps));
            }
            "root" => {
                let pos = args
                    .iter()
                    .position(|&a| a == "mult")
                    .ok_or_else(|| err(line, "`root` needs `mult <k>`"))?;
                let mult = integer(line, one_arg(line, "mult", &args[pos + 1..])?)?;
                let v = args[..pos].iter().map(|a| rational(line, a)).collect::<Result<_>>()?;
                roots.push((v, mult));
            }
            "basis" => basis.push(args.iter().map(|a| rational(line, a)).collect::<Result<_>>()?),
            other => return Err(err(line, format!("unknown directive `{other}`"))),
        }
    }

    let family = PlancherelFamily::Custom(name);
    if !roots.is_empty() {
        if !terms.is_empty() || !form.is_empty() || rho_sq.is_some() {
            return Err(err(last_line, "root data and an explicit model cannot be mixed"));
        }
        let ambient = roots[0].0.len();
        if roots.iter().any(|(v, _)| v.len() != ambient) || basis.iter().any(|v| v.len() != ambient) {
            return Err(err(
                last_line,
                "roots and basis vectors must share one ambient dimension",
            ));
        }
        let model = from_root_data(family, &RootDatum { positive: roots, basis })?;
        if let Some((line, r)) = rank {
            if r != model.r {
                return Err(err(line, format!("rank {r} but the basis has {} vectors", model.r)));
            }
        }
        if let Some((line, m)) = dim {
            if m != model.m {
                return Err(err(line, format!("dimension {m} but the root data give {}", model.m)));
            }
        }
        return Ok(model);
    }

    let (_, r) = rank.ok_or_else(|| err(last_line, "missing `rank`"))?;
    let (_, m) = dim.ok_or_else(|| err(last_line, "missing `dimension`"))?;
    let rho_sq = rho_sq.ok_or_else(|| err(last_line, "missing `rho_sq`"))?;
    if form.len() != r || form.iter().any(|row| row.len() != r) {
        return Err(err(last_line, format!("`form` must give {r} rows of {r} entries")));
    }
    let mut p = MultiPoly::zero(r);
    for (line, c, exps) in terms {
        if exps.len() != r {
            return Err(err(line, format!("term needs {r} exponents")));
        }
        // odd monomials integrate to zero against the Gaussian
        if exps.iter().sum::<u32>() % 2 == 0 {
            p.add_term(exps, c);
        }
    }
    if p.is_zero() {
        return Err(err(last_line, "p has no even terms"));
    }
    let model = PlancherelModel {
        family,
        r,
        m,
        p: PlancherelPoly::Expanded(p),
        form,
        rho_sq,
        rho_source: RhoSource::UserSupplied,
    };
    super::diagonalize_form(&model)?;
    Ok(model)
}
