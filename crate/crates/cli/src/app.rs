//! Subcommand implementations.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use inclined_core::catalog::{builtin, describe, BUILTIN_NAMES};
use inclined_core::curve::{parse_domain, realize_curve, CurveSpec, SampledCurve};
use inclined_core::export::{read_positions_csv, write_frames_csv};
use inclined_core::frames::{
    bishop_via_rotation_angle, compute_frenet, compute_pt_frame_with, random_normal_rotation,
    FrameField, PtInit, PtOptions,
};
use inclined_core::helix::{analyze_inclined, AnalysisOptions, InclinedStatus};
use inclined_core::numerics::ToleranceConfig;
use inclined_core::Error;

use crate::report::{vector, AnalysisReport};

#[derive(Debug, Parser)]
#[command(name = "inclined", version, about = "Inclined curves and generalized helices in E3 and E4")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the full analysis and print a report.
    Analyze {
        /// Spec file, CSV of positions, or built-in name.
        #[arg(required_unless_present = "batch")]
        spec: Option<String>,
        /// Analyse every spec and CSV file in a directory.
        #[arg(long, conflicts_with = "spec")]
        batch: Option<PathBuf>,
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Export a frame field as CSV, one row per node.
    Frames {
        spec: String,
        #[arg(long, value_enum, default_value_t = FrameChoice::Pt)]
        frame: FrameChoice,
        /// Output file (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Print a one-line verdict; the exit code encodes it.
    Detect {
        spec: String,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// List the built-in curves.
    Examples {
        /// Print the spec file of one built-in.
        #[arg(long)]
        show: Option<String>,
    },
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Number of samples.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Parameter domain as `a,b`.
    #[arg(long, value_parser = domain_arg, allow_hyphen_values = true)]
    pub domain: Option<(f64, f64)>,
    /// Relative residual below which a curve counts as inclined.
    #[arg(long)]
    pub tol_residual: Option<f64>,
    /// Relative spread below which a sampled quantity counts as constant.
    #[arg(long)]
    pub tol_constancy: Option<f64>,
    /// Rotate the initial normal frame by a random rotation from this seed.
    #[arg(long)]
    pub seed: Option<u64>,
}

fn domain_arg(text: &str) -> Result<(f64, f64), String> {
    parse_domain(text).ok_or_else(|| format!("expected `a,b`, got `{text}`"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FrameChoice {
    Frenet,
    Pt,
    BishopAngle,
}

/// Process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ExitCode {
    Success = 0,
    NotInclined = 1,
    SpecError = 2,
    Degenerate = 3,
    Inconclusive = 4,
}

impl ExitCode {
    pub fn for_status(status: InclinedStatus) -> Self {
        match status {
            InclinedStatus::Inclined => ExitCode::Success,
            InclinedStatus::NotInclined => ExitCode::NotInclined,
            InclinedStatus::Inconclusive => ExitCode::Inconclusive,
        }
    }

    pub fn for_error(e: &Error) -> Self {
        match e {
            Error::Parse(_)
            | Error::ComponentParse { .. }
            | Error::Domain { .. }
            | Error::InvalidSpec(_)
            | Error::InvalidGrid(_)
            | Error::GridTooShort { .. }
            | Error::InvalidTolerance { .. }
            | Error::Dimension { .. }
            | Error::UnknownBuiltin(_)
            | Error::Io(_) => ExitCode::SpecError,
            _ => ExitCode::Degenerate,
        }
    }
}

impl CommonArgs {
    fn tolerances(&self) -> ToleranceConfig {
        let mut tol = ToleranceConfig::default();
        if let Some(x) = self.tol_residual {
            tol.residual_tol = x;
        }
        if let Some(x) = self.tol_constancy {
            tol.constancy_tol = x;
        }
        tol
    }
}

/// A curve ready for analysis with the domain it was sampled on.
struct Loaded {
    curve: SampledCurve,
    domain: (f64, f64),
}

fn is_csv(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv"))
}

fn load(source: &str, common: &CommonArgs, tol: &ToleranceConfig) -> Result<Loaded, Error> {
    let path = Path::new(source);
    if is_csv(path) {
        if common.samples.is_some() || common.domain.is_some() {
            return Err(Error::InvalidSpec(
                "--samples and --domain apply to expression specs, not CSV samples".into(),
            ));
        }
        let name = path.file_stem().map_or(source.into(), |s| s.to_string_lossy().into_owned());
        let curve = read_positions_csv(File::open(path)?, &name)?;
        let domain = (curve.grid.start(), curve.grid.end());
        return Ok(Loaded { curve, domain });
    }
    let mut spec = if path.is_file() {
        CurveSpec::from_text(&std::fs::read_to_string(path)?)?
    } else if BUILTIN_NAMES.contains(&source) {
        builtin(source)?
    } else {
        return Err(Error::InvalidSpec(format!(
            "`{source}` is neither a readable file nor a built-in curve"
        )));
    };
    if let Some(n) = common.samples {
        spec = spec.with_samples(n)?;
    }
    if let Some(d) = common.domain {
        spec = spec.with_domain(d)?;
    }
    let curve = realize_curve(&spec, tol)?;
    Ok(Loaded {
        curve,
        domain: spec.domain,
    })
}

fn analyze_one(source: &str, common: &CommonArgs) -> Result<AnalysisReport, Error> {
    let tol = common.tolerances();
    tol.validate()?;
    let loaded = load(source, common, &tol)?;
    let options = AnalysisOptions {
        rotation_seed: common.seed,
        spherical: true,
    };
    let analysis = analyze_inclined(&loaded.curve, &tol, &options)?;
    Ok(AnalysisReport::new(
        loaded.domain,
        loaded.curve.unit_speed,
        &analysis,
        common.seed,
        tol,
    ))
}

fn render(report: &AnalysisReport, format: Format) -> String {
    match format {
        Format::Text => report.to_text(),
        Format::Structured => report.to_structured(),
    }
}

fn batch_sources(dir: &Path) -> io::Result<Vec<String>> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .filter(|p| {
            p.extension()
                .is_some_and(|e| ["csv", "spec", "txt"].iter().any(|x| e.eq_ignore_ascii_case(x)))
        })
        .collect();
    files.sort();
    Ok(files.into_iter().map(|p| p.to_string_lossy().into_owned()).collect())
}

/// Runs a parsed command, writing results to `out` and diagnostics to `err`.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> ExitCode {
    match cli.command {
        Command::Analyze {
            spec,
            batch,
            common,
            format,
        } => {
            let sources = match (spec, batch) {
                (Some(s), _) => vec![s],
                (None, Some(dir)) => match batch_sources(&dir) {
                    Ok(s) => s,
                    Err(e) => {
                        let _ = writeln!(err, "error: {}: {e}", dir.display());
                        return ExitCode::SpecError;
                    }
                },
                (None, None) => unreachable!("clap requires a spec or --batch"),
            };
            let results: Vec<_> = sources
                .par_iter()
                .map(|s| (s, analyze_one(s, &common)))
                .collect();
            let mut code = ExitCode::Success;
            let many = results.len() > 1;
            for (source, result) in results {
                match result {
                    Ok(report) => {
                        if many && format == Format::Text {
                            let _ = writeln!(out, "== {source}");
                        }
                        let _ = write!(out, "{}", render(&report, format));
                        if many {
                            let _ = writeln!(out);
                        }
                    }
                    Err(e) => {
                        let _ = writeln!(err, "error: {source}: {e}");
                        code = code.max(ExitCode::for_error(&e));
                    }
                }
            }
            code
        }
        Command::Frames {
            spec,
            frame,
            out: path,
            common,
        } => match export_frames(&spec, frame, path.as_deref(), &common, out) {
            Ok(()) => ExitCode::Success,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                ExitCode::for_error(&e)
            }
        },
        Command::Detect { spec, common } => match analyze_one(&spec, &common) {
            Ok(r) => {
                let v = &r.verdict;
                let _ = writeln!(
                    out,
                    "{}: {} axis={} varphi={:.6} residual={:.3e}",
                    r.name,
                    v.status.tag(),
                    vector(&v.axis),
                    v.varphi,
                    v.criterion_residual
                );
                ExitCode::for_status(v.status)
            }
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                ExitCode::for_error(&e)
            }
        },
        Command::Examples { show } => match show {
            Some(name) => match builtin(&name) {
                Ok(spec) => {
                    let _ = write!(out, "{}", spec.to_text());
                    ExitCode::Success
                }
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    ExitCode::SpecError
                }
            },
            None => {
                for name in BUILTIN_NAMES {
                    let spec = builtin(name).expect("built-in specs are valid");
                    let _ = writeln!(
                        out,
                        "{name:<10} E{}  [{}, {}]  {}",
                        spec.dimension(),
                        spec.domain.0,
                        spec.domain.1,
                        describe(name).unwrap_or("")
                    );
                }
                ExitCode::Success
            }
        },
    }
}

/// Frames are computed along the curve's own parameter.
fn frame_field(curve: &SampledCurve, choice: FrameChoice, seed: Option<u64>) -> Result<FrameField, Error> {
    match choice {
        FrameChoice::Frenet => compute_frenet(curve),
        FrameChoice::BishopAngle => {
            let frenet = compute_frenet(curve)?;
            Ok(bishop_via_rotation_angle(curve, &frenet)?.0)
        }
        FrameChoice::Pt => {
            let frenet = match compute_frenet(curve) {
                Ok(f) => Some(f),
                Err(Error::DegenerateFrame { order, .. }) if order >= 3 => None,
                Err(e) => return Err(e),
            };
            let init = frenet.as_ref().map_or(PtInit::Canonical, PtInit::Frenet);
            let rotation = seed.map(|s| random_normal_rotation(curve.dimension() - 1, s));
            compute_pt_frame_with(curve, &PtOptions { init, rotation })
        }
    }
}

fn export_frames(
    source: &str,
    choice: FrameChoice,
    path: Option<&Path>,
    common: &CommonArgs,
    stdout: &mut dyn Write,
) -> Result<(), Error> {
    let tol = common.tolerances();
    tol.validate()?;
    let loaded = load(source, common, &tol)?;
    let frame = frame_field(&loaded.curve, choice, common.seed)?;
    match path {
        Some(p) => {
            let file = BufWriter::new(File::create(p)?);
            write_frames_csv(file, &loaded.curve, &frame)
        }
        None => write_frames_csv(stdout, &loaded.curve, &frame),
    }
}
