//! Space expressions: `family:param` atoms combined with `dual(...)`,
//! `scale(..., c²)` and `product(..., ...)`.

use heatcoef::exactnum::{int, rpow};
use heatcoef::plancherel::{build_family, model_series, PlancherelFamily, PlancherelModel, RootType};
use heatcoef::rank1closed::{rank1_series_with, Fill, Rank1Family, SpaceModel};
use heatcoef::series::{dualize, product, rescale, HeatSeries};
use heatcoef::{BigRational, Error};
use num_traits::Signed;

use crate::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum Space {
    Rank1(SpaceModel),
    Plancherel(PlancherelFamily),
    /// the model read from `--model-file`
    Custom,
    Dual(Box<Space>),
    Scale(Box<Space>, BigRational),
    Product(Box<Space>, Box<Space>),
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.src[self.pos..].chars().next().map_or(1, char::len_utf8);
        }
    }

    fn eat(&mut self, c: char) -> Result<(), CliError> {
        self.skip_ws();
        if self.src[self.pos..].starts_with(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.error(&format!("expected `{c}`")))
        }
    }

    fn error(&self, msg: &str) -> CliError {
        CliError::Usage(format!("space spec `{}`, at offset {}: {msg}", self.src, self.pos))
    }

    /// A run of characters that can appear in an atom or a number.
    fn word(&mut self) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let len = rest
            .find(|c: char| !(c.is_ascii_alphanumeric() || matches!(c, ':' | '-' | '/' | '_' | '.')))
            .unwrap_or(rest.len());
        self.pos += len;
        &self.src[start..start + len]
    }

    fn expr(&mut self) -> Result<Space, CliError> {
        let w = self.word();
        match w {
            "dual" => {
                self.eat('(')?;
                let inner = self.expr()?;
                self.eat(')')?;
                Ok(Space::Dual(Box::new(inner)))
            }
            "scale" => {
                self.eat('(')?;
                let inner = self.expr()?;
                self.eat(',')?;
                let c2 = self.word();
                let c2: BigRational = c2
                    .parse()
                    .map_err(|_| self.error(&format!("`{c2}` is not a rational scale")))?;
                if !c2.is_positive() {
                    return Err(self.error("scale must be positive"));
                }
                self.eat(')')?;
                Ok(Space::Scale(Box::new(inner), c2))
            }
            "product" => {
                self.eat('(')?;
                let a = self.expr()?;
                self.eat(',')?;
                let b = self.expr()?;
                self.eat(')')?;
                Ok(Space::Product(Box::new(a), Box::new(b)))
            }
            "" => Err(self.error("expected a space")),
            atom => parse_atom(atom).map_err(|e| self.error(&e)),
        }
    }
}

fn param(name: &str, value: Option<&str>) -> Result<u32, String> {
    let v = value.ok_or_else(|| format!("`{name}` needs a parameter, as in `{name}:2`"))?;
    v.parse()
        .map_err(|_| format!("`{v}` is not a valid parameter for `{name}`"))
}

fn parse_atom(atom: &str) -> Result<Space, String> {
    let (name, value) = match atom.split_once(':') {
        Some((n, v)) => (n, Some(v)),
        None => (atom, None),
    };
    let rank1 = |family| -> Result<Space, String> {
        let m = SpaceModel::new(
            family,
            param(name, value)?,
            heatcoef::rank1closed::Signature::Compact,
            int(1),
        )
        .map_err(|e| e.to_string())?;
        Ok(Space::Rank1(m))
    };
    match name {
        "sphere" => rank1(Rank1Family::Sphere),
        "cp" => rank1(Rank1Family::ComplexProjective),
        "hp" => rank1(Rank1Family::QuaternionicProjective),
        "op2" if value.is_none() => Ok(Space::Rank1(SpaceModel::op2())),
        "hyperbolic-odd" => Ok(Space::Plancherel(PlancherelFamily::HyperbolicOdd(param(name, value)?))),
        "su-star" => Ok(Space::Plancherel(PlancherelFamily::SuStar(param(name, value)?))),
        "e6-f4" if value.is_none() => Ok(Space::Plancherel(PlancherelFamily::E6F4)),
        "complex-group" => {
            let v = value.ok_or("`complex-group` needs a type and rank, as in `complex-group:A2`")?;
            let mut chars = v.chars();
            let ty = match chars.next().map(|c| c.to_ascii_uppercase()) {
                Some('A') => RootType::A,
                Some('B') => RootType::B,
                Some('C') => RootType::C,
                Some('D') => RootType::D,
                _ => return Err(format!("unknown root type in `{v}`")),
            };
            let rank = chars.as_str().parse().map_err(|_| format!("bad rank in `{v}`"))?;
            Ok(Space::Plancherel(PlancherelFamily::ComplexGroup(ty, rank)))
        }
        "custom" if value.is_none() => Ok(Space::Custom),
        _ => Err(format!("unknown space `{atom}`")),
    }
}

pub fn parse_space(src: &str) -> Result<Space, CliError> {
    let mut p = Parser { src, pos: 0 };
    let s = p.expr()?;
    p.skip_ws();
    if p.pos != src.len() {
        return Err(p.error("trailing input"));
    }
    Ok(s)
}

/// Everything needed to evaluate an expression.
pub struct Context {
    pub fill: Fill,
    pub custom: Option<PlancherelModel>,
}

impl Context {
    pub fn custom(&self) -> Result<&PlancherelModel, CliError> {
        self.custom
            .as_ref()
            .ok_or_else(|| CliError::Usage("`custom` needs --model-file".into()))
    }

    pub fn plancherel_model(&self, s: &Space) -> Result<PlancherelModel, CliError> {
        match s {
            Space::Plancherel(f) => Ok(build_family(f)?),
            Space::Custom => Ok(self.custom()?.clone()),
            _ => Err(CliError::Usage("expected a Plancherel family or `custom`".into())),
        }
    }
}

pub fn series(s: &Space, n_max: usize, ctx: &Context) -> Result<HeatSeries, CliError> {
    Ok(match s {
        Space::Rank1(m) => rank1_series_with(m, n_max, ctx.fill)?,
        Space::Plancherel(_) | Space::Custom => model_series(&ctx.plancherel_model(s)?, n_max)?,
        Space::Dual(a) => dualize(&series(a, n_max, ctx)?),
        Space::Scale(a, c2) => rescale(&series(a, n_max, ctx)?, c2)?,
        Space::Product(a, b) => product(&series(a, n_max, ctx)?, &series(b, n_max, ctx)?),
    })
}

pub fn dimension(s: &Space, ctx: &Context) -> Result<usize, CliError> {
    Ok(match s {
        Space::Rank1(m) => m.dimension() as usize,
        Space::Plancherel(_) | Space::Custom => ctx.plancherel_model(s)?.m,
        Space::Dual(a) | Space::Scale(a, _) => dimension(a, ctx)?,
        Space::Product(a, b) => dimension(a, ctx)? + dimension(b, ctx)?,
    })
}

pub fn describe(s: &Space) -> String {
    match s {
        Space::Rank1(m) => m.label(),
        Space::Plancherel(f) => f.label(),
        Space::Custom => "custom".into(),
        Space::Dual(a) => format!("dual({})", describe(a)),
        Space::Scale(a, c2) => format!("scale({}, {c2})", describe(a)),
        Space::Product(a, b) => format!("product({}, {})", describe(a), describe(b)),
    }
}

/// c² taking the Killing metric of an atom to constant curvature ±1, for the
/// atoms where that metric exists: S^d and H^d both need 2(d - 1).
pub fn unit_curvature_scale(s: &Space) -> Result<BigRational, CliError> {
    match s {
        Space::Rank1(m) if m.family == Rank1Family::Sphere => Ok(int(2 * (m.dimension() as i64 - 1))),
        Space::Plancherel(PlancherelFamily::HyperbolicOdd(k)) => Ok(int(4 * *k as i64)),
        Space::Dual(a) => unit_curvature_scale(a),
        _ => Err(CliError::Usage(
            "--unit-curvature applies to a single sphere or hyperbolic-odd space".into(),
        )),
    }
}

/// Growth constant 1/(sπ²) of a rank-1 atom, carried through dual and scale.
pub fn reference_constant(s: &Space) -> Option<f64> {
    match s {
        Space::Rank1(m) => {
            let s = heatcoef::exactnum::to_f64(&m.killing_scale());
            Some(1.0 / (s * std::f64::consts::PI * std::f64::consts::PI))
        }
        Space::Dual(a) => reference_constant(a),
        Space::Scale(a, c2) => reference_constant(a).map(|c| c * heatcoef::exactnum::to_f64(c2)),
        _ => None,
    }
}

/// Volume of a compact rank-1 atom, possibly rescaled, as (rational, π power).
pub fn volume(s: &Space) -> Result<(BigRational, i32), CliError> {
    match s {
        Space::Rank1(m) => {
            let v = heatcoef::rank1closed::volume(m.family, m.mbar)?;
            Ok((v.rational, v.pi_power))
        }
        // the metric g/c² has volume c^{-m} Vol
        Space::Scale(a, c2) => {
            let (v, p) = volume(a)?;
            let half = (dimension_of_compact(a)? / 2) as i64;
            Ok((v * rpow(c2, -half), p))
        }
        _ => Err(CliError::Usage(
            "--raw needs a compact rank-1 space, optionally inside scale(...)".into(),
        )),
    }
}

fn dimension_of_compact(s: &Space) -> Result<usize, CliError> {
    match s {
        Space::Rank1(m) => Ok(m.dimension() as usize),
        Space::Scale(a, _) => dimension_of_compact(a),
        _ => Err(CliError::Usage("--raw needs a compact rank-1 space".into())),
    }
}

/// Normalization tag for the output document.
pub fn normalization(s: &Space) -> Normalization {
    fn has_scale(s: &Space) -> bool {
        match s {
            Space::Scale(..) => true,
            Space::Dual(a) => has_scale(a),
            Space::Product(a, b) => has_scale(a) || has_scale(b),
            _ => false,
        }
    }
    match s {
        Space::Scale(a, c2) if !has_scale(a) => Normalization::Custom(c2.to_string()),
        _ if has_scale(s) => Normalization::Custom("per-factor".into()),
        _ => Normalization::Killing,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Normalization {
    Killing,
    UnitCurvature,
    Custom(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Invariant(_) | Error::IllConditioned(_) | Error::CutoffTooLarge(_) | Error::LogOfZero => {
                CliError::Internal(e.to_string())
            }
            _ => CliError::Usage(e.to_string()),
        }
    }
}
