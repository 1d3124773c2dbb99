use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use volterra::harness::{
    emit_report, parse_complex, parse_polynomial, parse_symbol, run_experiment, ExperimentKind,
    ExperimentSpec, ReportFormat,
};
use volterra::operators::{apply_volterra, finite_section, resolvent_apply, s_operator_apply, t_gamma_apply};
use volterra::series::{TruncatedSeries, DEFAULT_DEGREE};
use volterra::spectra::{
    classify_boundedness_hv, classify_spectrum_a0p, classify_spectrum_ap, classify_spectrum_entire,
    classify_spectrum_h0v, classify_spectrum_hv, SpectrumResult,
};
use volterra::weights::{default_window, order_type, GrowthCondition, PowerWeight};
use volterra::Error;

const OUT_DIR_ENV: &str = "VOLTERRA_OUT_DIR";

#[derive(Parser)]
#[command(name = "volterra", version, about = "Volterra operators with polynomial symbols: resolvents, spectra, experiments")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct Global {
    /// Working truncation degree N
    #[arg(long, global = true)]
    degree: Option<usize>,
    /// Output directory (default: stdout, or $VOLTERRA_OUT_DIR)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// json, csv or text
    #[arg(long, global = true)]
    format: Option<String>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Flat TOML file with any of degree, out, format, seed; flags win
    #[arg(long, global = true)]
    #[serde(skip)]
    config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Spectrum of V_g on a space
    #[command(subcommand)]
    Classify(Classify),
    /// f = R(lambda, g) h, the solution of f - (1/lambda) V_g f = h
    Resolvent {
        #[arg(long)]
        symbol: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, default_value = "1")]
        h: String,
    },
    /// Apply V_g, S or T_gamma to a polynomial
    Apply {
        #[arg(long)]
        symbol: Option<String>,
        #[arg(long, default_value = "1")]
        f: String,
        /// volterra, s or t-gamma
        #[arg(long, default_value = "volterra")]
        op: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        gamma: Option<String>,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Finite section of V_g in the monomial basis
    Matrix {
        #[arg(long)]
        symbol: String,
        #[arg(long, default_value_t = 8)]
        size: usize,
    },
    /// Order and type from Taylor coefficients
    Ordertype {
        /// Estimate for e^P with this polynomial P
        #[arg(long, conflicts_with = "series")]
        exp: Option<String>,
        /// Series JSON file
        #[arg(long)]
        series: Option<PathBuf>,
        /// Coefficient window lo..hi (default: upper half)
        #[arg(long)]
        window: Option<String>,
    },
    /// Run a seeded experiment and write its report
    Verify {
        kind: String,
        /// Experiment spec as JSON (default: built-in parameters for the kind)
        #[arg(long)]
        spec: Option<PathBuf>,
        /// Inject a deliberate error of this size
        #[arg(long, allow_hyphen_values = true)]
        perturb: Option<f64>,
    },
}

#[derive(Subcommand)]
enum Classify {
    /// H∞_v with v = exp(-alpha r^p)
    Banach {
        #[arg(long)]
        symbol: String,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        p: f64,
        /// Tag the result for H0_v
        #[arg(long)]
        h0: bool,
    },
    /// A_p with p(r) = scale r^a
    Hormander {
        #[arg(long)]
        symbol: String,
        #[arg(long)]
        a: f64,
        #[arg(long, default_value_t = 1.0)]
        scale: f64,
        /// A⁰_p instead of A_p
        #[arg(long)]
        zero: bool,
    },
    /// H(C)
    Entire {
        #[arg(long)]
        symbol: String,
    },
}

struct Settings {
    degree: usize,
    out: Option<PathBuf>,
    format: Option<ReportFormat>,
    seed: u64,
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Unbounded => Failure::Runtime(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn settings(global: Global) -> Result<Settings, Failure> {
    let file = match &global.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            toml::from_str::<Global>(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?
        }
        None => Global::default(),
    };
    let format = global
        .format
        .or(file.format)
        .map(|f| f.parse::<ReportFormat>())
        .transpose()?;
    Ok(Settings {
        degree: global.degree.or(file.degree).unwrap_or(DEFAULT_DEGREE),
        out: global
            .out
            .or(file.out)
            .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from)),
        format,
        seed: global.seed.or(file.seed).unwrap_or(0),
    })
}

/// Writes `bytes` to `<out>/<stem>.<ext>` or stdout.
fn write_output(settings: &Settings, stem: &str, format: ReportFormat, bytes: &[u8]) -> Result<(), Failure> {
    match &settings.out {
        Some(dir) => {
            fs::create_dir_all(dir).map_err(|e| Failure::Usage(format!("{}: {e}", dir.display())))?;
            let path = dir.join(format!("{stem}.{}", format.extension()));
            fs::write(&path, bytes).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            eprintln!("wrote {}", path.display());
        }
        None => {
            std::io::stdout()
                .write_all(bytes)
                .map_err(|e| Failure::Runtime(e.to_string()))?;
        }
    }
    Ok(())
}

fn spectrum_bytes(r: &SpectrumResult, format: ReportFormat, extra: &str) -> Vec<u8> {
    let radius = r.shape.radius().map(|x| x.to_string()).unwrap_or_default();
    let text = match format {
        ReportFormat::Json => format!("{}\n", r.to_json()),
        ReportFormat::Csv => format!(
            "shape,radius,point_spectrum,space\n{},{},empty,\"{}\"\n",
            r.shape.tag(),
            radius,
            r.space
        ),
        ReportFormat::Text => format!(
            "space {}\n{extra}spectrum {}{}\npoint spectrum empty\n{}\n",
            r.space,
            r.shape.tag(),
            if radius.is_empty() { String::new() } else { format!(" radius {radius}") },
            r.witness.as_deref().unwrap_or("")
        ),
    };
    text.into_bytes()
}

fn series_bytes(f: &TruncatedSeries, format: ReportFormat) -> Vec<u8> {
    match format {
        ReportFormat::Json => format!("{}\n", f.to_json()).into_bytes(),
        ReportFormat::Csv | ReportFormat::Text => {
            let mut s = String::from("k,re,im\n");
            for (k, c) in f.coeffs().iter().enumerate() {
                s.push_str(&format!("{k},{},{}\n", c.re, c.im));
            }
            s.into_bytes()
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    let s = settings(cli.global)?;
    let fmt = |default| s.format.unwrap_or(default);
    match cli.command {
        Command::Classify(c) => {
            let format = fmt(ReportFormat::Json);
            let (result, extra) = match c {
                Classify::Banach { symbol, alpha, p, h0 } => {
                    let g = parse_symbol(&symbol)?;
                    let w = PowerWeight::new(alpha, p)?;
                    let b = classify_boundedness_hv(&g.clone().into(), &w);
                    let extra = format!("bounded {} compact {}\n", b.bounded, b.compact);
                    let r = if h0 { classify_spectrum_h0v(&g, &w)? } else { classify_spectrum_hv(&g, &w)? };
                    (r, extra)
                }
                Classify::Hormander { symbol, a, scale, zero } => {
                    let g = parse_symbol(&symbol)?;
                    let gc = GrowthCondition::new(scale, a)?;
                    let r = if zero { classify_spectrum_a0p(&g, &gc) } else { classify_spectrum_ap(&g, &gc) };
                    (r, String::new())
                }
                Classify::Entire { symbol } => (classify_spectrum_entire(&parse_symbol(&symbol)?), String::new()),
            };
            write_output(&s, "classify", format, &spectrum_bytes(&result, format, &extra))?;
        }
        Command::Resolvent { symbol, lambda, h } => {
            let g = parse_symbol(&symbol)?;
            let f = resolvent_apply(&g, parse_complex(&lambda)?, &parse_polynomial(&h)?, s.degree)?;
            let format = fmt(ReportFormat::Json);
            write_output(&s, "resolvent", format, &series_bytes(&f, format))?;
        }
        Command::Apply { symbol, f, op, lambda, gamma, n } => {
            let f = parse_polynomial(&f)?;
            let need = |name: &str, v: Option<String>| v.ok_or_else(|| Failure::Usage(format!("--op {op} needs --{name}")));
            let out = match op.as_str() {
                "volterra" => apply_volterra(&parse_symbol(&need("symbol", symbol)?)?, &f).truncate(s.degree),
                "s" => s_operator_apply(
                    &parse_symbol(&need("symbol", symbol)?)?,
                    parse_complex(&need("lambda", lambda)?)?,
                    &f,
                    s.degree,
                )?,
                "t-gamma" => t_gamma_apply(n.unwrap_or(1), parse_complex(&need("gamma", gamma)?)?, &f, s.degree)?,
                other => return Err(Failure::Usage(format!("unknown operator `{other}` (volterra, s, t-gamma)"))),
            };
            let format = fmt(ReportFormat::Json);
            write_output(&s, "apply", format, &series_bytes(&out, format))?;
        }
        Command::Matrix { symbol, size } => {
            let a = finite_section(&parse_symbol(&symbol)?, size)?;
            let format = fmt(ReportFormat::Csv);
            let bytes = match format {
                ReportFormat::Json => format!("{}\n", a.to_json()),
                _ => a.to_csv(),
            };
            write_output(&s, "matrix", format, bytes.as_bytes())?;
        }
        Command::Ordertype { exp, series, window } => {
            let f = match (exp, series) {
                (Some(p), None) => parse_polynomial(&p)?.exp(s.degree),
                (None, Some(path)) => {
                    let text = fs::read_to_string(&path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
                    TruncatedSeries::from_json(&text)?
                }
                _ => return Err(Failure::Usage("ordertype needs --exp or --series".into())),
            };
            let window = match window {
                Some(w) => parse_window(&w)?,
                None => default_window(&f),
            };
            let est = order_type(&f, window)?;
            let format = fmt(ReportFormat::Json);
            let bytes = match format {
                ReportFormat::Json => format!("{}\n", serde_json::to_string(&est).expect("estimate serializes")),
                ReportFormat::Csv => format!(
                    "order,type,type_infinite,window_lo,window_hi,points\n{},{},{},{},{},{}\n",
                    est.order, est.type_val, est.type_infinite, est.window.0, est.window.1, est.points
                ),
                ReportFormat::Text => format!("order {} type {} (window {}..={})\n", est.order, est.type_val, est.window.0, est.window.1),
            };
            write_output(&s, "ordertype", format, bytes.as_bytes())?;
        }
        Command::Verify { kind, spec, perturb } => {
            let kind: ExperimentKind = kind.parse()?;
            let mut spec = match spec {
                Some(path) => {
                    let text = fs::read_to_string(&path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
                    let spec = ExperimentSpec::from_json(&text)?;
                    if spec.params.kind() != kind {
                        return Err(Failure::Usage(format!("spec file is a {} experiment, not {kind}", spec.params.kind())));
                    }
                    spec
                }
                None => ExperimentSpec::default_for(kind).with_degree(s.degree).with_seed(s.seed),
            };
            if let Some(d) = perturb {
                spec.perturbation = d;
            }
            let report = run_experiment(&spec)?;
            let format = fmt(ReportFormat::Json);
            write_output(&s, &format!("verify-{kind}"), format, &emit_report(&report, format))?;
            eprintln!(
                "{kind}: pass {} fail {} skip {} in {:.2?}",
                report.summary.pass, report.summary.fail, report.summary.skip, report.wall_time
            );
            if !report.all_passed() {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_window(text: &str) -> Result<std::ops::RangeInclusive<usize>, Failure> {
    let bad = || Failure::Usage(format!("window must look like 100..200, got `{text}`"));
    let (lo, hi) = text.split_once("..").ok_or_else(bad)?;
    let hi = hi.trim_start_matches('=');
    Ok(lo.trim().parse().map_err(|_| bad())?..=hi.trim().parse().map_err(|_| bad())?)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
