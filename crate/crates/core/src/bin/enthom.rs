use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use enthom::classifier::barcode_count_bound;
use enthom::config::{OutputFormat, Overrides, RunConfig, StateSource};
use enthom::filtration::ComplexKind;
use enthom::homology::Barcode;
use enthom::monotones::MonotoneKind;
use enthom::pipeline::{analyze, classify};
use enthom::render::{render_ascii, render_svg, RenderSpec};
use enthom::semimetric::DistanceKind;
use enthom::survey::survey;
use enthom::Error;

#[derive(Parser)]
#[command(name = "enthom", version, about = "Persistent homology of multi-qubit entanglement")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Distance matrix, barcode and signature of one state.
    Analyze(Common),
    /// Separability and genuine-entanglement labels of one state.
    Classify(Common),
    /// Plot the barcode of one state (ASCII unless --output svg), or of a
    /// barcode JSON file.
    Render {
        #[command(flatten)]
        common: Common,
        /// Barcode JSON as printed by `analyze`; replaces the state.
        #[arg(long)]
        barcode_file: Option<PathBuf>,
        #[arg(long)]
        eps_max: Option<f64>,
    },
    /// Signature frequencies of random fully inseparable states.
    Survey {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Upper bound on the number of distinct barcodes for n points.
    Bound {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Args, Default)]
struct Common {
    /// Named state, e.g. ghz3, w3, F.
    #[arg(long, conflicts_with = "state_file")]
    state: Option<String>,
    /// JSON file with `n` and `amplitudes`.
    #[arg(long)]
    state_file: Option<PathBuf>,
    #[arg(long, value_parser = parse_with::<DistanceKind>)]
    distance: Option<DistanceKind>,
    #[arg(long, value_parser = parse_with::<ComplexKind>)]
    complex: Option<ComplexKind>,
    #[arg(long, value_parser = parse_with::<MonotoneKind>)]
    monotone: Option<MonotoneKind>,
    #[arg(long)]
    max_dim: Option<usize>,
    #[arg(long)]
    zero_eps: Option<f64>,
    #[arg(long, value_parser = parse_with::<OutputFormat>)]
    output: Option<OutputFormat>,
    #[arg(long)]
    seed: Option<u64>,
    /// TOML run configuration.
    #[arg(long)]
    config: Option<PathBuf>,
}

fn parse_with<T: std::str::FromStr<Err = Error>>(s: &str) -> Result<T, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

impl Common {
    fn resolve(&self) -> Result<RunConfig, Error> {
        let state = match (&self.state, &self.state_file) {
            (Some(name), _) => Some(StateSource::Named(name.clone())),
            (None, Some(path)) => Some(StateSource::File(path.clone())),
            (None, None) => None,
        };
        RunConfig::from_env(
            self.config.as_deref(),
            Overrides {
                state,
                distance: self.distance,
                monotone: self.monotone,
                complex: self.complex,
                max_dim: self.max_dim,
                zero_eps: self.zero_eps,
                output: self.output,
                seed: self.seed,
            },
        )
    }
}

fn render(bc: &Barcode, format: OutputFormat, eps_max: Option<f64>) -> String {
    let spec = RenderSpec {
        eps_max,
        ..Default::default()
    };
    match format {
        OutputFormat::Svg => render_svg(bc, &spec),
        _ => render_ascii(bc, &spec),
    }
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values always serialize")
}

fn run(cli: Cli) -> Result<String, Error> {
    match cli.command {
        Command::Analyze(common) => {
            let cfg = common.resolve()?;
            let a = analyze(
                &cfg.load_state()?,
                cfg.distance,
                &cfg.monotone,
                cfg.complex,
                cfg.max_dim,
            )?;
            Ok(match cfg.output {
                OutputFormat::Json => pretty(&a.to_json()),
                other => render(&a.barcode, other, None),
            })
        }
        Command::Classify(common) => {
            let cfg = common.resolve()?;
            let c = classify(&cfg.load_state()?, &cfg.monotone, cfg.max_dim)?;
            Ok(pretty(&c.to_json()))
        }
        Command::Render {
            common,
            barcode_file,
            eps_max,
        } => {
            let cfg = common.resolve()?;
            let bc = match barcode_file {
                Some(path) => {
                    let text = std::fs::read_to_string(&path).map_err(|e| {
                        Error::Config(format!("cannot read {}: {e}", path.display()))
                    })?;
                    let v: serde_json::Value = serde_json::from_str(&text)
                        .map_err(|e| Error::Config(format!("barcode file: {e}")))?;
                    // Accept both a bare barcode and a full `analyze` document.
                    let v = v.get("barcode").cloned().unwrap_or(v);
                    Barcode::from_json(&v).map_err(|e| Error::Config(e.to_string()))?
                }
                None => {
                    analyze(
                        &cfg.load_state()?,
                        cfg.distance,
                        &cfg.monotone,
                        cfg.complex,
                        cfg.max_dim,
                    )?
                    .barcode
                }
            };
            let format = common.output.unwrap_or(OutputFormat::Ascii);
            Ok(match format {
                OutputFormat::Json => pretty(&bc.to_json()),
                other => render(&bc, other, eps_max),
            })
        }
        Command::Survey { common, n, samples } => {
            let cfg = common.resolve()?;
            let report = survey(n, samples, cfg.seed, &cfg.monotone, cfg.complex, cfg.max_dim)?;
            Ok(pretty(&serde_json::to_value(&report).expect("report serializes")))
        }
        Command::Bound { n } => {
            let b = barcode_count_bound(n)?;
            Ok(pretty(&json!({ "n": n, "bound": b })))
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .target(env_logger::Target::Stderr)
        .init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let newline = if out.ends_with('\n') { "" } else { "\n" };
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let _ = write!(stdout, "{out}{newline}").and_then(|_| stdout.flush());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_input_error() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
