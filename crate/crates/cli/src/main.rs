//! `heatcoef`: exact heat-trace coefficients from the command line.

mod output;
mod space;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use heatcoef::exactnum::{int, to_decimal};
use heatcoef::growth::growth_report;
use heatcoef::plancherel::text::parse_model;
use heatcoef::plancherel::{closed_form, ExpPolyForm};
use heatcoef::rank1closed::Fill;
use heatcoef::BigRational;
use serde::Serialize;

use output::{normalization_json, Coefficient, Document, Growth, SpaceInfo, SCHEMA_VERSION};
use space::{Context, Normalization, Space};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error("verification failed")]
    Verification,
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Verification => 1,
            CliError::Usage(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "heatcoef",
    version,
    about = "Exact heat-trace coefficients of symmetric spaces"
)]
struct Cli {
    /// worker threads for per-n computations (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// omit the generation timestamp so output is byte-for-byte reproducible
    #[arg(long, global = true)]
    no_timestamp: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum FillArg {
    /// closed-form values, exact for every n
    ClosedForm,
    /// spectral-oracle fits marked approximate (spheres only)
    Oracle,
    /// leave the indices empty and mark them unavailable
    Unavailable,
}

#[derive(Args)]
struct SpaceArgs {
    /// space expression, e.g. `sphere:2`, `product(hyperbolic-odd:1, dual(hyperbolic-odd:1))`
    #[arg(long)]
    space: String,
    /// model description used by the `custom` atom
    #[arg(long)]
    model_file: Option<PathBuf>,
    /// how rank-1 coefficients below the closed-form threshold are filled
    #[arg(long, value_enum, default_value = "closed-form")]
    fill: FillArg,
}

#[derive(Subcommand)]
enum Command {
    /// Coefficients 𝒜₀..𝒜_{n_max} of a space
    Coeffs {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long, default_value_t = 20)]
        n_max: usize,
        #[arg(long, default_value_t = 1000)]
        limit: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// add rounded decimal values with this many significant digits
        #[arg(long)]
        decimal: Option<usize>,
        /// report aₙ = 𝒜ₙ·Vol (compact rank-1 spaces only)
        #[arg(long)]
        raw: bool,
        /// rescale a sphere or hyperbolic-odd space to curvature ±1
        #[arg(long)]
        unit_curvature: bool,
    },
    /// κ and 𝒫 in ℋ(t) = e^{κt}𝒫(t) for a polynomial-Plancherel family
    ClosedForm {
        /// family expression: a Plancherel atom, `custom`, or `dual(...)` of one
        #[arg(long)]
        family: String,
        #[arg(long)]
        model_file: Option<PathBuf>,
    },
    /// Growth classification and ε-bands of a coefficient sequence
    Growth {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long, default_value_t = 300)]
        n_max: usize,
        #[arg(long, default_value_t = 1000)]
        limit: usize,
        #[arg(long, value_delimiter = ',', default_value = "0.2,0.1,0.05")]
        eps: Vec<f64>,
        /// override the reference constant C
        #[arg(long)]
        c_reference: Option<f64>,
    },
    /// Run a verification suite: dual-vanishing (alias corollary-1.7), oracle-spheres, growth-laws or all
    Verify {
        #[arg(long)]
        suite: String,
    },
}

fn context(args: &SpaceArgs) -> Result<Context, CliError> {
    Ok(Context {
        fill: match args.fill {
            FillArg::Unavailable => Fill::Unavailable,
            FillArg::Oracle => Fill::Oracle,
            FillArg::ClosedForm => Fill::ClosedForm,
        },
        custom: load_model(args.model_file.as_ref())?,
    })
}

fn load_model(path: Option<&PathBuf>) -> Result<Option<heatcoef::plancherel::PlancherelModel>, CliError> {
    let Some(path) = path else { return Ok(None) };
    let src =
        std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(Some(parse_model(&src)?))
}

fn check_limit(n_max: usize, limit: usize) -> Result<(), CliError> {
    if n_max > limit {
        return Err(CliError::Usage(format!("--n-max {n_max} exceeds the limit {limit}")));
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_coeffs(
    args: &SpaceArgs,
    n_max: usize,
    limit: usize,
    format: Format,
    decimal: Option<usize>,
    raw: bool,
    unit_curvature: bool,
    stamp: bool,
) -> Result<String, CliError> {
    check_limit(n_max, limit)?;
    let ctx = context(args)?;
    let mut expr = space::parse_space(&args.space)?;
    let mut normalization = space::normalization(&expr);
    if unit_curvature {
        let c2 = space::unit_curvature_scale(&expr)?;
        expr = Space::Scale(Box::new(expr), c2);
        normalization = Normalization::UnitCurvature;
    }
    let series = space::series(&expr, n_max, &ctx)?;
    let (factor, pi_power) = if raw { space::volume(&expr)? } else { (int(1), 0) };
    let rows = output::coefficients(&series, &factor, pi_power, decimal);
    Ok(match format {
        Format::Csv => output::to_csv(&rows),
        Format::Json => output::to_json(&document(
            &args.space,
            &expr,
            &ctx,
            normalization,
            rows,
            raw,
            None,
            &series.provenance,
            stamp,
        )?),
    })
}

#[allow(clippy::too_many_arguments)]
fn document(
    spec: &str,
    expr: &Space,
    ctx: &Context,
    normalization: Normalization,
    coefficients: Vec<Coefficient>,
    raw: bool,
    growth: Option<Growth>,
    provenance: &str,
    stamp: bool,
) -> Result<Document, CliError> {
    Ok(Document {
        schema_version: SCHEMA_VERSION.into(),
        generated_unix: output::timestamp(stamp),
        space: SpaceInfo {
            spec: spec.into(),
            dimension: space::dimension(expr, ctx)?,
            coefficients: if raw { "raw" } else { "normalized" }.into(),
        },
        normalization: normalization_json(&normalization),
        coefficients,
        growth,
        provenance: vec![provenance.to_string(), format!("parsed as {}", space::describe(expr))],
    })
}

#[derive(Serialize)]
struct ClosedFormDoc {
    schema_version: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    generated_unix: Option<u64>,
    family: String,
    rank: usize,
    dimension: usize,
    normalization: &'static str,
    rho_sq: String,
    rho_source: String,
    kappa: String,
    /// 𝒫 by ascending power of t, exact
    poly: Vec<String>,
    degree: usize,
    /// (m - r)/2
    degree_bound: usize,
    /// power of t carried by the unnormalized trace, as "-m/2"
    leading_power: String,
    kappa_decimal: String,
}

fn cmd_closed_form(family: &str, model_file: Option<&PathBuf>, stamp: bool) -> Result<String, CliError> {
    let ctx = Context {
        fill: Fill::Unavailable,
        custom: load_model(model_file)?,
    };
    let expr = space::parse_space(family)?;
    let (atom, dual) = match &expr {
        Space::Dual(a) => (a.as_ref(), true),
        a => (a, false),
    };
    let model = ctx.plancherel_model(atom)?;
    let form: ExpPolyForm = closed_form(&model)?;
    let form = if dual { form.dual() } else { form };
    let doc = ClosedFormDoc {
        schema_version: SCHEMA_VERSION.into(),
        generated_unix: output::timestamp(stamp),
        family: space::describe(&expr),
        rank: model.r,
        dimension: model.m,
        normalization: "killing",
        rho_sq: model.rho_sq.to_string(),
        rho_source: format!("{:?}", model.rho_source),
        kappa: form.kappa.to_string(),
        poly: form.poly.iter().map(|c| c.to_string()).collect(),
        degree: form.degree(),
        degree_bound: (model.m - model.r) / 2,
        leading_power: BigRational::new(form.leading_power_twice.into(), 2.into()).to_string(),
        kappa_decimal: to_decimal(&form.kappa, 12),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("serializes");
    s.push('\n');
    Ok(s)
}

fn cmd_growth(
    args: &SpaceArgs,
    n_max: usize,
    limit: usize,
    eps: &[f64],
    c_reference: Option<f64>,
    stamp: bool,
) -> Result<String, CliError> {
    check_limit(n_max, limit)?;
    if let Some(e) = eps.iter().find(|e| !(**e > 0.0 && **e < 1.0)) {
        return Err(CliError::Usage(format!("ε must lie in (0, 1), got {e}")));
    }
    let ctx = context(args)?;
    let expr = space::parse_space(&args.space)?;
    let series = space::series(&expr, n_max, &ctx)?;
    let c_ref = c_reference.or_else(|| space::reference_constant(&expr));
    let deg_bound = match &expr {
        Space::Plancherel(_) | Space::Custom => Some(closed_form(&ctx.plancherel_model(&expr)?)?.degree()),
        _ => None,
    };
    let report = growth_report(&series, eps, c_ref, deg_bound)?;
    let doc = document(
        &args.space,
        &expr,
        &ctx,
        space::normalization(&expr),
        Vec::new(),
        false,
        Some(Growth::from(&report)),
        &series.provenance,
        stamp,
    )?;
    Ok(output::to_json(&doc))
}

fn cmd_verify(suite: &str) -> Result<String, CliError> {
    let checks = verify::run(suite)?;
    let mut out = String::new();
    for c in &checks {
        out.push_str(&format!(
            "{} {}: {}\n",
            if c.ok { "PASS" } else { "FAIL" },
            c.name,
            c.detail
        ));
    }
    let failed = checks.iter().filter(|c| !c.ok).count();
    out.push_str(&format!(
        "{} of {} checks passed\n",
        checks.len() - failed,
        checks.len()
    ));
    print!("{out}");
    if failed > 0 {
        return Err(CliError::Verification);
    }
    Ok(String::new())
}

fn run(cli: Cli) -> Result<String, CliError> {
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(CliError::Usage("--jobs must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| CliError::Internal(e.to_string()))?;
    }
    let stamp = !cli.no_timestamp;
    match &cli.command {
        Command::Coeffs {
            space,
            n_max,
            limit,
            format,
            decimal,
            raw,
            unit_curvature,
        } => cmd_coeffs(space, *n_max, *limit, *format, *decimal, *raw, *unit_curvature, stamp),
        Command::ClosedForm { family, model_file } => cmd_closed_form(family, model_file.as_ref(), stamp),
        Command::Growth {
            space,
            n_max,
            limit,
            eps,
            c_reference,
        } => cmd_growth(space, *n_max, *limit, eps, *c_reference, stamp),
        Command::Verify { suite } => cmd_verify(suite),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match std::panic::catch_unwind(|| run(cli)) {
        Ok(Ok(out)) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Ok(Err(e)) => {
            if !matches!(e, CliError::Verification) {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.code())
        }
        Err(_) => ExitCode::from(3),
    }
}
