//! Argument definitions and one handler per subcommand.

use crate::acceptance;
use crate::config::RunConfig;
use crate::output::{exact, real, real_f64, series_fields, Format, Report, Table};
use clap::{Args, Parser, Subcommand, ValueEnum};
use ising_exact::chi::{
    amplitude_constants, chi3d_pole_amplitude, chi_diag_asymptotics, chi_diag_series,
    diagonal_singularities, nickel_singularities, ChiKind, ChiTerm, Representation,
};
use ising_exact::formfactor::{
    correlation_value, formfactor_quad, formfactor_series_with, formfactor_value, FormFactor,
};
use ising_exact::numerics::float_string;
use ising_exact::odehunt::{
    default_primes, fit_ode, fit_rational, verify_annihilation, SeriesModP, DEFAULT_PRIME,
};
use ising_exact::painleve::{piii_solve, pvi_residual, pvi_residual_lambda, scaling_g, GSign};
use ising_exact::params::{CouplingPoint, Side};
use ising_exact::series::series_from_json;
use ising_exact::toeplitz::{correlation, critical_amplitude, CorrelationKind};
use rug::{Float, Rational};
use serde_json::json;

#[derive(Debug, Parser)]
#[command(
    name = "ising",
    version,
    about = "Exact and high-precision 2D Ising correlations and susceptibility"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Working precision in bits.
    #[arg(long, global = true, default_value_t = 128)]
    pub precision: u32,
    /// Default series length.
    #[arg(long, global = true, default_value_t = 20)]
    pub series_order: usize,
    /// Required agreement between quadrature oracles and series values.
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub quadrature_target: f64,
    /// Largest form-factor index n.
    #[arg(long, global = true, default_value_t = 6)]
    pub n_max: usize,
    /// Largest separation N.
    #[arg(long = "N-max", global = true, default_value_t = 8)]
    pub n_sep_max: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub output_format: Format,
}

impl GlobalArgs {
    pub fn config(&self) -> RunConfig {
        RunConfig {
            precision_bits: self.precision,
            series_order: self.series_order,
            quadrature_target: self.quadrature_target,
            n_max: self.n_max,
            n_sep_max: self.n_sep_max,
            output_format: self.output_format,
        }
    }
}

/// A real flag value kept as its decimal text, so it can be rounded once at
/// the working precision.
#[derive(Debug, Clone, PartialEq)]
pub struct Decimal(pub String);

impl std::str::FromStr for Decimal {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        match s.parse::<f64>() {
            Ok(v) if v.is_finite() && Float::parse(s).is_ok() => Ok(Decimal(s.to_string())),
            _ => Err(format!("{s:?} is not a finite real number")),
        }
    }
}

impl Decimal {
    pub fn at(&self, prec: u32) -> Float {
        let parsed = Float::parse(&self.0).expect("validated when the flag was parsed");
        Float::with_val(prec, parsed)
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum KindArg {
    Diag,
    Row,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ChiKindArg {
    Bulk,
    Diag,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SideArg {
    Below,
    Above,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Below => Side::BelowTc,
            SideArg::Above => Side::AboveTc,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ReprArg {
    Closed,
    Integral,
    Series,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Diagonal or row correlation ⟨σ00σNN⟩ / ⟨σ00σ0N⟩ from the Toeplitz determinant.
    Correlate {
        #[arg(long, value_enum, default_value_t = KindArg::Diag)]
        kind: KindArg,
        #[arg(long = "N", value_delimiter = ',', required = true)]
        n_sep: Vec<usize>,
        /// Temperature variable t for isotropic couplings.
        #[arg(long, value_delimiter = ',', required_unless_present = "kv")]
        t: Vec<Decimal>,
        #[arg(long, value_enum, default_value_t = SideArg::Below)]
        side: SideArg,
        /// Vertical coupling K_v (use with --kh instead of --t).
        #[arg(long, requires = "kh", conflicts_with = "t")]
        kv: Option<Decimal>,
        #[arg(long, requires = "kv")]
        kh: Option<Decimal>,
    },
    /// Diagonal form factor f^(n)_{N,N} as an exact series or numerical values.
    Formfactor {
        #[arg(long)]
        n: usize,
        #[arg(long = "N")]
        n_sep: u32,
        #[arg(long, conflicts_with = "t", required_unless_present = "t")]
        order: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        t: Vec<Decimal>,
    },
    /// λ-extended diagonal correlation C_∓(N,N;λ).
    Lambda {
        #[arg(long = "N")]
        n_sep: u32,
        #[arg(long)]
        lambda: Decimal,
        #[arg(long, value_delimiter = ',', required = true)]
        t: Vec<Decimal>,
        #[arg(long, value_enum, default_value_t = SideArg::Below)]
        side: SideArg,
    },
    /// Exact residual of the sigma-form Painlevé VI equation.
    PviCheck {
        #[arg(long = "N")]
        n_sep: u32,
        #[arg(long, value_enum)]
        side: SideArg,
        #[arg(long, default_value_t = 16)]
        order: usize,
        /// Keep λ symbolic.
        #[arg(long)]
        symbolic: bool,
    },
    /// Painlevé III scaling functions G±(r;λ).
    Piii {
        #[arg(long, default_value_t = 1.0)]
        lambda: f64,
        #[arg(long, value_delimiter = ',', required = true)]
        r: Vec<f64>,
    },
    /// n-particle susceptibility terms χ^(n) or χ_d^(n).
    Chi {
        #[arg(long, value_enum)]
        kind: ChiKindArg,
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', required_unless_present_any = ["order", "asymptotics"])]
        t: Vec<Decimal>,
        /// Exact series length (diagonal terms).
        #[arg(long, conflicts_with = "t")]
        order: Option<usize>,
        #[arg(long, value_enum)]
        representation: Option<ReprArg>,
        /// t → 1 and t → −1 analysis for χ_d^(3), χ_d^(4).
        #[arg(long, conflicts_with_all = ["t", "order"])]
        asymptotics: bool,
    },
    /// Singular points of χ^(n) (Nickel locus) or χ_d^(n) (roots of unity).
    Singularities {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = ChiKindArg::Bulk)]
        kind: ChiKindArg,
    },
    /// Critical amplitudes and constants.
    Amplitudes,
    /// Fits a linear ODE to a series document mod p.
    OdeFit {
        #[arg(long)]
        input: std::path::PathBuf,
        #[arg(long)]
        max_order: usize,
        #[arg(long)]
        max_degree: usize,
        #[arg(long, default_value_t = DEFAULT_PRIME)]
        prime: u64,
        /// Also lift to Q using this many primes.
        #[arg(long)]
        lift: Option<usize>,
    },
    /// Runs the acceptance suite.
    Acceptance {
        /// Criterion ids to run (default all).
        #[arg(long, value_delimiter = ',')]
        only: Vec<usize>,
        #[arg(long, default_value_t = 4)]
        workers: usize,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Compute(#[from] ising_exact::Error),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }

    /// Structured form written to stderr.
    pub fn to_json(&self) -> String {
        let kind = match self {
            CliError::Usage(_) => "usage".to_string(),
            CliError::Io { .. } => "io".to_string(),
            CliError::Compute(e) => {
                let dbg = format!("{e:?}");
                dbg.split(['(', ' ', '{'])
                    .next()
                    .unwrap_or("error")
                    .to_string()
            }
        };
        json!({ "schema": ising_exact::series::SCHEMA, "error": { "kind": kind, "message": self.to_string() } })
            .to_string()
    }
}

pub struct Outcome {
    pub report: Report,
    /// Nonzero when a check ran but failed (acceptance).
    pub exit_code: i32,
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let cfg = cli.global.config();
    cfg.validate().map_err(CliError::Usage)?;
    let report = match &cli.command {
        Command::Correlate {
            kind,
            n_sep,
            t,
            side,
            kv,
            kh,
        } => correlate(
            &cfg,
            *kind,
            n_sep,
            t,
            (*side).into(),
            kv.as_ref().zip(kh.as_ref()),
        )?,
        Command::Formfactor { n, n_sep, order, t } => formfactor(&cfg, *n, *n_sep, *order, t)?,
        Command::Lambda {
            n_sep,
            lambda,
            t,
            side,
        } => lambda_cmd(&cfg, *n_sep, lambda, t, (*side).into())?,
        Command::PviCheck {
            n_sep,
            side,
            order,
            symbolic,
        } => pvi_check(*n_sep, (*side).into(), *order, *symbolic)?,
        Command::Piii { lambda, r } => piii(*lambda, r)?,
        Command::Chi {
            kind,
            n,
            t,
            order,
            representation,
            asymptotics,
        } => chi(&cfg, *kind, *n, t, *order, *representation, *asymptotics)?,
        Command::Singularities { n, kind } => singularities(&cfg, *n, *kind)?,
        Command::Amplitudes => amplitudes(&cfg),
        Command::OdeFit {
            input,
            max_order,
            max_degree,
            prime,
            lift,
        } => ode_fit(input, *max_order, *max_degree, *prime, *lift)?,
        Command::Acceptance { only, workers } => return acceptance_cmd(only, *workers),
    };
    Ok(Outcome {
        report,
        exit_code: 0,
    })
}

fn float(cfg: &RunConfig, v: &Decimal) -> Float {
    v.at(cfg.precision_bits)
}

fn side_name(side: Side) -> &'static str {
    match side {
        Side::BelowTc => "below",
        Side::AboveTc => "above",
        Side::AtTc => "critical",
    }
}

fn check_caps(cfg: &RunConfig, n: usize, n_sep: usize) -> Result<(), CliError> {
    if n > cfg.n_max || n_sep > cfg.n_sep_max as usize {
        return Err(CliError::Usage(format!(
            "n = {n}, N = {n_sep} exceed the caps n ≤ {}, N ≤ {}",
            cfg.n_max, cfg.n_sep_max
        )));
    }
    Ok(())
}

fn correlate(
    cfg: &RunConfig,
    kind: KindArg,
    n_sep: &[usize],
    ts: &[Decimal],
    side: Side,
    couplings: Option<(&Decimal, &Decimal)>,
) -> Result<Report, CliError> {
    let kind = match kind {
        KindArg::Diag => CorrelationKind::Diagonal,
        KindArg::Row => CorrelationKind::Row,
    };
    let points: Vec<CouplingPoint> = match couplings {
        Some((kv, kh)) => vec![CouplingPoint::new(float(cfg, kv), float(cfg, kh))?],
        None => ts
            .iter()
            .map(|t| CouplingPoint::isotropic_from_t(&float(cfg, t), side))
            .collect::<Result<_, _>>()?,
    };
    let mut rows = Vec::new();
    let mut table = Table::new(&["kind", "N", "kv", "kh", "side", "value", "precision_bits"]);
    for cp in &points {
        for &n in n_sep {
            check_caps(cfg, 0, n)?;
            let v = correlation(cp, kind, n)?;
            table.push(vec![
                format!("{kind:?}").to_lowercase(),
                n.to_string(),
                float_string(&cp.kv),
                float_string(&cp.kh),
                side_name(cp.side).into(),
                float_string(&v),
                v.prec().to_string(),
            ]);
            rows.push(json!({
                "N": n,
                "kv": real(&cp.kv),
                "kh": real(&cp.kh),
                "side": side_name(cp.side),
                "value": real(&v),
            }));
        }
    }
    Ok(Report::new("correlate")
        .field("kind", format!("{kind:?}").to_lowercase())
        .field("results", rows)
        .table(table))
}

fn formfactor(
    cfg: &RunConfig,
    n: usize,
    n_sep: u32,
    order: Option<usize>,
    ts: &[Decimal],
) -> Result<Report, CliError> {
    check_caps(cfg, n, n_sep as usize)?;
    if let Some(order) = order {
        let ff = formfactor_series_with(&cfg.caps(order), n, n_sep, order)?;
        let report = Report::new("formfactor")
            .field("n", n)
            .field("N", n_sep)
            .field(
                "leading_exponent",
                FormFactor::leading_exponent(n, n_sep).to_string(),
            );
        return Ok(series_fields(report, &ff.series));
    }
    let mut rows = Vec::new();
    let mut table = Table::new(&["t", "value", "quadrature", "precision_bits"]);
    for tv in ts {
        let t = float(cfg, tv);
        let v = formfactor_value(n, n_sep, &t, cfg.precision_bits)?;
        let quad = if (1..=3).contains(&n) {
            Some(formfactor_quad(n, n_sep, &t)?)
        } else {
            None
        };
        let agree = quad.as_ref().map(|q| {
            let d = Float::with_val(v.prec(), &v - q).abs();
            d.to_f64() <= cfg.quadrature_target * v.to_f64().abs().max(f64::MIN_POSITIVE)
        });
        table.push(vec![
            tv.0.clone(),
            float_string(&v),
            quad.as_ref().map(float_string).unwrap_or_default(),
            v.prec().to_string(),
        ]);
        rows.push(json!({
            "t": real(&t),
            "value": real(&v),
            "quadrature": quad.as_ref().map(real),
            "quadrature_agrees": agree,
        }));
    }
    Ok(Report::new("formfactor")
        .field("n", n)
        .field("N", n_sep)
        .field("quadrature_target", cfg.quadrature_target)
        .field("results", rows)
        .table(table))
}

fn lambda_cmd(
    cfg: &RunConfig,
    n_sep: u32,
    lambda: &Decimal,
    ts: &[Decimal],
    side: Side,
) -> Result<Report, CliError> {
    check_caps(cfg, 0, n_sep as usize)?;
    let l = float(cfg, lambda);
    let mut rows = Vec::new();
    let mut table = Table::new(&["t", "lambda", "value", "precision_bits"]);
    for tv in ts {
        let t = float(cfg, tv);
        let v = correlation_value(n_sep, side, &l, &t, cfg.precision_bits)?;
        table.push(vec![
            tv.0.clone(),
            lambda.0.clone(),
            float_string(&v),
            v.prec().to_string(),
        ]);
        rows.push(json!({ "t": real(&t), "value": real(&v) }));
    }
    Ok(Report::new("lambda")
        .field("N", n_sep)
        .field("side", side_name(side))
        .field("lambda", real(&l))
        .field("results", rows)
        .table(table))
}

fn pvi_check(n_sep: u32, side: Side, order: usize, symbolic: bool) -> Result<Report, CliError> {
    let (zero, valuation, coeffs): (bool, Option<usize>, Vec<String>) = if symbolic {
        let r = pvi_residual_lambda(n_sep, side, order, &[])?;
        (
            r.is_zero(),
            r.valuation(),
            r.coeffs.iter().map(|c| format!("{c:?}")).collect(),
        )
    } else {
        let r = pvi_residual(n_sep, side, order)?;
        (
            r.is_zero(),
            r.valuation(),
            r.coeffs.iter().map(Rational::to_string).collect(),
        )
    };
    let mut table = Table::new(&["k", "residual"]);
    for (k, c) in coeffs.iter().enumerate() {
        table.push(vec![k.to_string(), c.clone()]);
    }
    Ok(Report::new("pvi-check")
        .field("N", n_sep)
        .field("side", side_name(side))
        .field("order", order)
        .field("symbolic_lambda", symbolic)
        .field("residual_is_zero", zero)
        .field("first_nonzero", valuation)
        .table(table))
}

fn piii(lambda: f64, rs: &[f64]) -> Result<Report, CliError> {
    let mut rows = Vec::new();
    let mut table = Table::new(&["r", "G_minus", "G_plus", "precision_bits"]);
    for &r in rs {
        let gm = scaling_g(r, lambda, GSign::Minus)?;
        let gp = scaling_g(r, lambda, GSign::Plus)?;
        table.push(vec![
            r.to_string(),
            format!("{gm:e}"),
            format!("{gp:e}"),
            "53".into(),
        ]);
        rows.push(json!({ "r": real_f64(r), "G_minus": real_f64(gm), "G_plus": real_f64(gp) }));
    }
    // defect of the underlying solution over the covered range
    let theta_min = rs.iter().copied().fold(f64::INFINITY, f64::min) / 2.0;
    let defect = if theta_min.is_finite() && theta_min > 0.0 {
        let sol = piii_solve(lambda, theta_min, (theta_min + 4.0).max(10.0))?;
        Some(sol.max_defect(theta_min, sol.theta_max - 2.0))
    } else {
        None
    };
    Ok(Report::new("piii")
        .field("lambda", real_f64(lambda))
        .field("results", rows)
        .field("max_ode_defect", defect.map(real_f64))
        .table(table))
}

fn chi(
    cfg: &RunConfig,
    kind: ChiKindArg,
    n: usize,
    ts: &[Decimal],
    order: Option<usize>,
    repr: Option<ReprArg>,
    asymptotics: bool,
) -> Result<Report, CliError> {
    let kind = match kind {
        ChiKindArg::Bulk => ChiKind::Bulk,
        ChiKindArg::Diag => ChiKind::Diagonal,
    };
    let base = Report::new("chi").field("kind", kind).field("n", n);
    if asymptotics {
        if kind != ChiKind::Diagonal {
            return Err(CliError::Usage(
                "--asymptotics applies to --kind diag".into(),
            ));
        }
        let a = chi_diag_asymptotics(n)?;
        let mut table = Table::new(&["quantity", "value"]);
        table.push(vec!["pass".into(), a.pass().to_string()]);
        return Ok(base.field("asymptotics", a).table(table));
    }
    if let Some(order) = order {
        if kind != ChiKind::Diagonal {
            return Err(CliError::Usage(
                "exact series exist only for --kind diag".into(),
            ));
        }
        return Ok(series_fields(base, &chi_diag_series(n, order)?));
    }
    let representation = match repr {
        Some(ReprArg::Closed) => Representation::ClosedForm,
        Some(ReprArg::Integral) => Representation::Integral,
        Some(ReprArg::Series) => Representation::Series,
        None => {
            let closed_max = if kind == ChiKind::Bulk { 2 } else { 4 };
            if n <= closed_max {
                Representation::ClosedForm
            } else if kind == ChiKind::Diagonal {
                Representation::Series
            } else {
                Representation::Integral
            }
        }
    };
    let term = ChiTerm::new(kind, n, representation)?;
    let mut rows = Vec::new();
    let mut table = Table::new(&["t", "value", "precision_bits"]);
    for tv in ts {
        let t = float(cfg, tv);
        let v = term.value(&t)?;
        table.push(vec![tv.0.clone(), float_string(&v), v.prec().to_string()]);
        rows.push(json!({ "t": real(&t), "value": real(&v) }));
    }
    Ok(base
        .field("representation", representation)
        .field("results", rows)
        .table(table))
}

fn singularities(cfg: &RunConfig, n: usize, kind: ChiKindArg) -> Result<Report, CliError> {
    let recs = match kind {
        ChiKindArg::Bulk => nickel_singularities(n, cfg.precision_bits)?,
        ChiKindArg::Diag => diagonal_singularities(n, cfg.precision_bits)?,
    };
    let mut table = Table::new(&[
        "re",
        "im",
        "variable",
        "exponent",
        "has_log",
        "precision_bits",
    ]);
    for r in &recs {
        table.push(vec![
            float_string(&r.re),
            float_string(&r.im),
            json!(r.variable).as_str().unwrap_or_default().to_string(),
            r.exponent.to_string(),
            r.has_log.to_string(),
            r.re.prec().to_string(),
        ]);
    }
    Ok(Report::new("singularities")
        .field("n", n)
        .field("precision_bits", cfg.precision_bits)
        .field("singularities", &recs)
        .table(table))
}

fn amplitudes(cfg: &RunConfig) -> Report {
    let prec = cfg.precision_bits;
    let a = amplitude_constants(prec);
    let named = [
        ("C1", a.c[0].clone()),
        ("C2", a.c[1].clone()),
        ("C3", a.c[2].clone()),
        ("C4", a.c[3].clone()),
        ("C1_over_C2", a.ratio_leading()),
        ("four_term_ratio", a.ratio_four_term()),
        ("critical_diagonal_amplitude", critical_amplitude(prec)),
        ("chi_d3_pole_amplitude", chi3d_pole_amplitude(prec)),
    ];
    let mut table = Table::new(&["name", "value", "precision_bits"]);
    let mut report = Report::new("amplitudes");
    for (name, v) in &named {
        table.push(vec![
            name.to_string(),
            float_string(v),
            v.prec().to_string(),
        ]);
        report = report.field(name, real(v));
    }
    report
        .field("C2_exact", "1/(12*pi)")
        .field("C1_exact", exact(&Rational::from(1)))
        .table(table)
}

fn ode_fit(
    input: &std::path::Path,
    max_order: usize,
    max_degree: usize,
    prime: u64,
    lift: Option<usize>,
) -> Result<Report, CliError> {
    let text = std::fs::read_to_string(input).map_err(|source| CliError::Io {
        path: input.display().to_string(),
        source,
    })?;
    let series = series_from_json(&text)?;
    let s = SeriesModP::from_rational(&series, prime)?;
    let ode = fit_ode(&s, max_order, max_degree)?;
    let check = verify_annihilation(&ode, &s)?;
    let mut table = Table::new(&["j", "i", "coeff_mod_p"]);
    for (j, poly) in ode.coeffs.iter().enumerate() {
        for (i, c) in poly.iter().enumerate() {
            table.push(vec![j.to_string(), i.to_string(), c.to_string()]);
        }
    }
    let mut report = Report::new("ode-fit")
        .field("operator", &ode)
        .field("annihilation", check);
    if let Some(k) = lift {
        let r = fit_rational(&series, max_order, max_degree, &default_primes(k))?;
        let coeffs: Vec<Vec<String>> = r
            .coeffs
            .iter()
            .map(|p| p.iter().map(Rational::to_string).collect())
            .collect();
        report = report.field(
            "rational_operator",
            json!({ "order": r.order, "degree": r.degree, "coeffs": coeffs }),
        );
    }
    Ok(report.table(table))
}

fn acceptance_cmd(only: &[usize], workers: usize) -> Result<Outcome, CliError> {
    let count = acceptance::CRITERIA.len();
    if let Some(bad) = only.iter().find(|&&i| i == 0 || i > count) {
        return Err(CliError::Usage(format!(
            "criteria are numbered 1..={count}, got {bad}"
        )));
    }
    let ids: Vec<usize> = if only.is_empty() {
        (1..=count).collect()
    } else {
        only.to_vec()
    };
    let results = acceptance::run(&ids, workers);
    let pass = results.iter().all(|r| r.pass);
    let mut table = Table::new(&["id", "name", "pass", "detail"]);
    for r in &results {
        eprintln!("{}", r.line());
        table.push(vec![
            r.id.to_string(),
            r.name.into(),
            r.pass.to_string(),
            r.detail.clone(),
        ]);
    }
    // timings vary between runs, so they go to stderr only
    let rows: Vec<_> = results
        .iter()
        .map(|r| json!({ "id": r.id, "name": r.name, "pass": r.pass, "detail": r.detail }))
        .collect();
    Ok(Outcome {
        report: Report::new("acceptance")
            .field("pass", pass)
            .field("criteria", rows)
            .table(table),
        exit_code: if pass { 0 } else { 1 },
    })
}

pub fn main_with(cli: &Cli) -> i32 {
    match run(cli) {
        Ok(out) => {
            print!("{}", out.report.render(cli.global.output_format));
            out.exit_code
        }
        Err(e) => {
            eprintln!("{}", e.to_json());
            e.exit_code()
        }
    }
}
