//! The `ihodge` command line.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::catalog::{ingest_spec_file, load_surface, validate, AlgebraSpec, Surface};
use crate::curvature::chern_data;
use crate::error::{Error, Result};
use crate::flow::{solve_flow, write_csv};
use crate::formality::{table1, verdict, verdict_along_flow, MetricChoice};
use crate::harmonic::Kind;
use crate::hodge::{HermitianSurface, Metric, MetricRecord};
use crate::scalar::{parse_rational, Rational};

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Format {
  Table,
  Json,
  Csv,
}

#[derive(Parser, Debug)]
#[command(name = "ihodge", version, about = "Invariant Hodge theory and Chern-Ricci flow on compact complex surfaces")]
pub struct Cli {
  #[command(subcommand)]
  pub command: Command,

  /// Output format.
  #[arg(long, global = true, value_enum, env = "IHODGE_FORMAT", default_value = "table")]
  pub format: Format,
}

#[derive(Subcommand, Debug)]
pub enum Command {
  /// List the built-in surfaces and their parameters.
  Catalog,
  /// Check antisymmetry, reality, Jacobi and integrability of a spec.
  Validate(Source),
  /// Harmonic bases of all four cohomologies.
  Harmonics(Pair),
  /// Chern connection, curvature and Ricci form.
  Curvature(Pair),
  /// Chern-Ricci flow from an invariant initial metric.
  Flow(FlowArgs),
  /// Formality verdicts.
  Report(ReportArgs),
}

#[derive(Args, Debug, Clone)]
pub struct Source {
  /// Built-in surface: hopf, inoue_sm, inoue_spm, kodaira_primary, kodaira_secondary.
  #[arg(long, conflicts_with = "spec_file", required_unless_present = "spec_file")]
  pub surface: Option<String>,

  /// Surface parameter, e.g. `alpha=1`. Repeatable; unset parameters take defaults.
  #[arg(long = "param", value_name = "K=V")]
  pub params: Vec<String>,

  /// JSON spec file with structure constants.
  #[arg(long)]
  pub spec_file: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct Pair {
  #[command(flatten)]
  pub source: Source,

  /// `r2,s2,u` as exact rationals, e.g. `1,1,1/2-1/3i`.
  #[arg(long, default_value = "1,1,0", allow_hyphen_values = true)]
  pub metric: String,
}

#[derive(Args, Debug, Clone)]
pub struct FlowArgs {
  #[command(flatten)]
  pub pair: Pair,

  /// Comma-separated sample times.
  #[arg(long, default_value = "0")]
  pub times: String,
}

#[derive(Args, Debug, Clone)]
pub struct ReportArgs {
  #[arg(long, conflicts_with_all = ["spec_file", "table1"], required_unless_present_any = ["spec_file", "table1"])]
  pub surface: Option<String>,

  #[arg(long = "param", value_name = "K=V")]
  pub params: Vec<String>,

  #[arg(long, conflicts_with = "table1")]
  pub spec_file: Option<PathBuf>,

  #[arg(long, default_value = "1,1,0", allow_hyphen_values = true)]
  pub metric: String,

  /// Summary table over seeded random metrics, diagonal and generic.
  #[arg(long)]
  pub table1: bool,

  /// Verdicts at each of `--times` along the flow.
  #[arg(long, conflicts_with = "table1")]
  pub along_flow: bool,

  #[arg(long, default_value = "0")]
  pub times: String,

  /// Seed for the metric sweep of `--table1`.
  #[arg(long, default_value_t = 0)]
  pub seed: u64,

  /// Metrics per surface for `--table1`.
  #[arg(long, default_value_t = 10)]
  pub samples: usize,
}

/// Exit status of a failed command.
pub fn exit_code(e: &Error) -> i32 {
  match e {
    Error::Parse { .. } | Error::SpecFile { .. } | Error::UnknownSurface(_) | Error::MissingParam { .. } | Error::Io(_) => 1,
    Error::OutOfInterval { .. } => 3,
    _ => 2,
  }
}

fn parse_params(raw: &[String]) -> Result<BTreeMap<String, Rational>> {
  let mut out = BTreeMap::new();
  for p in raw {
    let (k, v) = p.split_once('=').ok_or_else(|| Error::Parse { what: "parameter K=V", input: p.clone() })?;
    out.insert(k.trim().to_string(), parse_rational(v)?);
  }
  Ok(out)
}

fn resolve(surface: &Option<String>, params: &[String], spec_file: &Option<PathBuf>) -> Result<AlgebraSpec> {
  if let Some(path) = spec_file {
    return ingest_spec_file(path);
  }
  let name = surface.as_deref().ok_or_else(|| Error::Parse { what: "surface", input: String::new() })?;
  let s = Surface::from_name(name)?;
  let mut all = s.default_params();
  all.extend(parse_params(params)?);
  load_surface(name, &all)
}

fn parse_times(text: &str) -> Result<Vec<Rational>> {
  let times = text.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?;
  if times.windows(2).any(|w| w[0] > w[1]) {
    return Err(Error::Parse { what: "sorted times", input: text.to_string() });
  }
  Ok(times)
}

fn io(e: impl std::fmt::Display) -> Error { Error::Io(e.to_string()) }

fn emit_json<W: Write>(out: &mut W, value: &impl Serialize) -> Result<()> {
  serde_json::to_writer_pretty(&mut *out, value).map_err(io)?;
  writeln!(out).map_err(io)
}

fn no_csv(cmd: &str) -> Error { Error::Parse { what: "output format (csv is only available for flow)", input: cmd.to_string() } }

fn params_line(spec: &AlgebraSpec) -> String {
  let p: Vec<String> = spec.params().iter().map(|(k, v)| format!("{k}={v}")).collect();
  if p.is_empty() {
    spec.name().to_string()
  } else {
    format!("{} ({})", spec.name(), p.join(", "))
  }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T, W>(args: I, out: &mut W) -> Result<()>
where
  I: IntoIterator<Item = T>,
  T: Into<OsString> + Clone,
  W: Write,
{
  let cli = Cli::try_parse_from(args).map_err(|e| Error::Parse { what: "arguments", input: e.to_string() })?;
  execute(&cli, out)
}

pub fn execute<W: Write>(cli: &Cli, out: &mut W) -> Result<()> {
  let format = cli.format;
  match &cli.command {
    Command::Catalog => catalog(format, out),
    Command::Validate(src) => {
      let spec = match &src.spec_file {
        Some(path) => {
          let text = std::fs::read_to_string(path).map_err(|e| Error::SpecFile {
            line: 0,
            field: path.display().to_string(),
            message: e.to_string(),
          })?;
          let file = crate::catalog::SpecFile::parse(&text)?;
          let entries: Vec<_> = file.constants.iter().map(|e| (e.i, e.h, e.k, e.value.clone())).collect();
          let params = file.params.iter().map(|(k, v)| Ok((k.clone(), parse_rational(v)?))).collect::<Result<_>>()?;
          AlgebraSpec::complete(file.name.clone(), params, &entries)?
        }
        None => resolve(&src.surface, &src.params, &None)?,
      };
      let report = validate(&spec);
      match format {
        Format::Json => emit_json(out, &json!({ "spec": spec.name(), "passed": report.passed(), "report": report }))?,
        Format::Table => writeln!(out, "{}: {report}", params_line(&spec)).map_err(io)?,
        Format::Csv => return Err(no_csv("validate")),
      }
      if report.passed() {
        Ok(())
      } else {
        Err(Error::Validation(Box::new(report)))
      }
    }
    Command::Harmonics(pair) => {
      let hs = surface_pair(pair)?;
      harmonics(&hs, format, out)
    }
    Command::Curvature(pair) => {
      let (spec, m) = (resolve(&pair.source.surface, &pair.source.params, &pair.source.spec_file)?, pair.metric.parse::<Metric>()?);
      let data = chern_data(&spec, &m)?;
      match format {
        Format::Json => {
          let gamma: Vec<_> = data.connection.nonzero().into_iter().map(|((i, h, k), v)| json!({ "i": i, "h": h, "k": k, "value": v })).collect();
          let curv: Vec<_> = data
            .curvature
            .nonzero()
            .into_iter()
            .map(|([i, h, k, l], v)| json!({ "i": i, "h": h, "k": k, "l": l, "value": v }))
            .collect();
          emit_json(out, &json!({ "spec": spec.name(), "metric": MetricRecord::from(&m), "chern_christoffel": gamma, "curvature": curv, "ricci_form": data.form }))
        }
        Format::Table => {
          writeln!(out, "# {} at metric {m}", params_line(&spec)).map_err(io)?;
          writeln!(out, "Chern Christoffel symbols Γ_{{IH}}^K:").map_err(io)?;
          for ((i, h, k), v) in data.connection.nonzero() {
            writeln!(out, "  Γ_{{{i}{h}}}^{{{k}}} = {v}").map_err(io)?;
          }
          writeln!(out, "Chern curvature R_{{IHKL}}:").map_err(io)?;
          for ([i, h, k, l], v) in data.curvature.nonzero() {
            writeln!(out, "  R_{{{i}{h}{k}{l}}} = {v}").map_err(io)?;
          }
          writeln!(out, "Ricci form: {}", data.form).map_err(io)?;
          writeln!(out, "2Ric = {}", data.form.two_ric()).map_err(io)
        }
        Format::Csv => Err(no_csv("curvature")),
      }
    }
    Command::Flow(args) => {
      let spec = resolve(&args.pair.source.surface, &args.pair.source.params, &args.pair.source.spec_file)?;
      let m0: Metric = args.pair.metric.parse()?;
      let times = parse_times(&args.times)?;
      let sol = solve_flow(&spec, &m0)?;
      let samples = sol.sample_trajectory(&times)?;
      match format {
        Format::Csv => write_csv(out, &samples),
        Format::Json => {
          let traj: Vec<_> = samples.iter().map(|(t, m)| json!({ "t": t.to_string(), "metric": MetricRecord::from(m) })).collect();
          emit_json(out, &json!({ "spec": spec.name(), "flow": sol.record(), "stationary": sol.is_stationary(), "trajectory": traj }))
        }
        Format::Table => {
          writeln!(out, "# {} from {m0}", params_line(&spec)).map_err(io)?;
          writeln!(out, "rho: {}", sol.rho).map_err(io)?;
          writeln!(out, "t_max: {}", sol.t_max).map_err(io)?;
          writeln!(out, "{:>10} {:>12} {:>12} {:>16} {:>12}", "t", "r2", "s2", "u", "V").map_err(io)?;
          for (t, m) in &samples {
            writeln!(out, "{:>10} {:>12} {:>12} {:>16} {:>12}", t.to_string(), m.r2().to_string(), m.s2().to_string(), m.u().to_string(), m.v().to_string())
              .map_err(io)?;
          }
          Ok(())
        }
      }
    }
    Command::Report(args) => report(args, format, out),
  }
}

fn surface_pair(pair: &Pair) -> Result<HermitianSurface> {
  let spec = resolve(&pair.source.surface, &pair.source.params, &pair.source.spec_file)?;
  let m: Metric = pair.metric.parse()?;
  HermitianSurface::new(spec, m)
}

fn catalog<W: Write>(format: Format, out: &mut W) -> Result<()> {
  match format {
    Format::Json => {
      let rows: Vec<_> = Surface::ALL
        .iter()
        .map(|s| {
          let spec = load_surface(s.name(), &s.default_params()).expect("catalog surface loads");
          json!({ "name": s.name(), "title": s.title(), "params": s.params(), "defaults": s.default_params().iter().map(|(k, v)| (k.clone(), v.to_string())).collect::<BTreeMap<_, _>>(), "spec": spec.to_spec_file(false) })
        })
        .collect();
      emit_json(out, &rows)
    }
    Format::Table => {
      for s in Surface::ALL {
        let spec = load_surface(s.name(), &s.default_params())?;
        let params = if s.params().is_empty() { "-".to_string() } else { s.params().join(", ") };
        writeln!(out, "{:<18} {:<18} params: {params}", s.name(), s.title()).map_err(io)?;
        for k in crate::alphabet::Idx::HOLOMORPHIC {
          let terms: Vec<String> = spec.dphi_terms(k).iter().map(|(a, b, c)| format!("({c}) φ^{{{a}{b}}}")).collect();
          let rhs = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
          writeln!(out, "    dφ^{k} = {rhs}").map_err(io)?;
        }
      }
      Ok(())
    }
    Format::Csv => Err(no_csv("catalog")),
  }
}

fn harmonics<W: Write>(hs: &HermitianSurface, format: Format, out: &mut W) -> Result<()> {
  let kinds = [Kind::DeRham, Kind::Dolbeault, Kind::BottChern, Kind::Aeppli];
  match format {
    Format::Json => {
      let mut spaces = serde_json::Map::new();
      for k in kinds {
        let nonzero: Vec<_> = hs.harmonic_spaces(k).into_iter().filter(|b| b.dim() > 0).collect();
        spaces.insert(k.name().to_string(), serde_json::to_value(nonzero).map_err(io)?);
      }
      emit_json(
        out,
        &json!({ "spec": hs.spec().name(), "metric": MetricRecord::from(hs.metric()), "dims": hs.cohomology_dims(), "harmonic": spaces }),
      )
    }
    Format::Table => {
      writeln!(out, "# {} at metric {}", params_line(hs.spec()), hs.metric()).map_err(io)?;
      for k in kinds {
        writeln!(out, "{k}:").map_err(io)?;
        for b in hs.harmonic_spaces(k).into_iter().filter(|b| b.dim() > 0) {
          let forms: Vec<String> = b.basis.iter().map(|f| f.to_string()).collect();
          writeln!(out, "  {:<6} dim {}: {}", b.grading.to_string(), b.dim(), forms.join(" ; ")).map_err(io)?;
        }
      }
      Ok(())
    }
    Format::Csv => Err(no_csv("harmonics")),
  }
}

fn report<W: Write>(args: &ReportArgs, format: Format, out: &mut W) -> Result<()> {
  if format == Format::Csv {
    return Err(no_csv("report"));
  }
  if args.table1 {
    let tables = [table1(MetricChoice::Diagonal, args.seed, args.samples)?, table1(MetricChoice::Generic, args.seed, args.samples)?];
    return match format {
      Format::Json => emit_json(out, &tables),
      _ => {
        for t in &tables {
          writeln!(out, "{t}\n").map_err(io)?;
        }
        Ok(())
      }
    };
  }
  let spec = resolve(&args.surface, &args.params, &args.spec_file)?;
  let m: Metric = args.metric.parse()?;
  if args.along_flow {
    let fv = verdict_along_flow(&spec, &m, &parse_times(&args.times)?)?;
    return match format {
      Format::Json => emit_json(out, &json!({ "spec": spec.name(), "along_flow": fv })),
      _ => {
        writeln!(out, "# {} from {m}", params_line(&spec)).map_err(io)?;
        writeln!(out, "{:>10}  {:<28} verdict (Kotschick, Dolbeault, Bott-Chern, Aeppli algebra, Aeppli BC-module)", "t", "metric").map_err(io)?;
        for s in &fv.samples {
          let metric = format!("{},{},{}", s.metric.r2, s.metric.s2, s.metric.u);
          writeln!(out, "{:>10}  {:<28} {}", s.t.to_string(), metric, s.verdict.short()).map_err(io)?;
        }
        writeln!(out, "preserved: {}", fv.preserved).map_err(io)
      }
    };
  }
  let hs = HermitianSurface::new(spec, m)?;
  let v = verdict(&hs);
  match format {
    Format::Json => emit_json(out, &json!({ "spec": hs.spec().name(), "metric": MetricRecord::from(hs.metric()), "verdict": v })),
    _ => {
      writeln!(out, "# {} at metric {}", params_line(hs.spec()), hs.metric()).map_err(io)?;
      for p in crate::formality::Property::ALL {
        writeln!(out, "{:<18} {}", p.label(), v.get(p)).map_err(io)?;
      }
      for (p, w) in &v.witnesses {
        writeln!(out, "witness {}: ({}) ∧ ({}) = {}", p.label(), w.left, w.right, w.product).map_err(io)?;
      }
      writeln!(out, "{}", v.short()).map_err(io)
    }
  }
}

/// Entry point for the binary: prints errors to stderr and returns the exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
  I: IntoIterator<Item = T>,
  T: Into<OsString> + Clone,
{
  let parsed = match Cli::try_parse_from(args) {
    Ok(c) => c,
    Err(e) => {
      let code = if e.use_stderr() { 1 } else { 0 };
      let _ = e.print();
      return code;
    }
  };
  let stdout = std::io::stdout();
  let mut lock = stdout.lock();
  match execute(&parsed, &mut lock) {
    Ok(()) => 0,
    Err(e) => {
      let _ = lock.flush();
      eprintln!("error: {e}");
      exit_code(&e)
    }
  }
}
