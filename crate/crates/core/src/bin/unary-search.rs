use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use unary_search::continuous::ContinuousProblem;
use unary_search::entangle::{
    grover_entanglement_trace, max_entanglement, DecompositionView, EntanglementReport, ViewKind,
};
use unary_search::grover::{optimal_iterations, run_search, Iterations, SearchConfig};
use unary_search::report::{
    compare, render_table, resource_profile, to_csv, to_json, write_output, CompareConfig,
    CsvRecord, DeviceKind, Format,
};
use unary_search::wave::{
    direct_search, interferometric_search, DetectionMode, DetectorModel, WaveConfig,
};
use unary_search::{Error, Result, SplitterNetwork};

#[derive(Parser)]
#[command(
    name = "unary-search",
    version,
    about = "Search a box of n slots with one particle or one wave"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Direct,
    Interferometric,
}

#[derive(Subcommand)]
enum Command {
    /// One particle through the splitter/box/splitter/inverter loop.
    Grover {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        target: usize,
        /// `auto` or a pass count.
        #[arg(long, default_value = "auto")]
        iterations: Iterations,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Include the per-pass target probability.
        #[arg(long)]
        trace: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
        /// Detectors sit behind the box; bill that transit too.
        #[arg(long)]
        bill_final_transit: bool,
    },
    /// Continuous-time search from the uniform state.
    Continuous {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        target: usize,
        /// A time or `peak`.
        #[arg(long, default_value = "peak")]
        time: String,
        #[arg(long, default_value_t = 1.0)]
        energy: f64,
        /// Split `[0, time]` into this many intervals and emit every endpoint.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
    },
    /// Classical wave search, direct or interferometric.
    Wave {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        target: usize,
        #[arg(long, value_enum, default_value = "interferometric")]
        strategy: StrategyArg,
        /// Detection factor κ.
        #[arg(long, default_value_t = 25.0)]
        kappa: f64,
        /// Noise variance σ².
        #[arg(long, default_value_t = 1.0)]
        noise: f64,
        /// Add sampled detector noise with this seed instead of a hard threshold.
        #[arg(long)]
        noise_seed: Option<u64>,
        #[arg(long)]
        photon_energy: Option<f64>,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
    },
    /// Schmidt spectra of the search states under a tensor view.
    Entangle {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        target: usize,
        #[arg(long, default_value = "qubit")]
        view: ViewKind,
        /// Entropy after every pass instead of the final state only.
        #[arg(long)]
        trace: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
    },
    /// Cost table across the five device classes.
    Compare {
        #[arg(long, value_delimiter = ',', default_value = "4,16,64,256")]
        n: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: FormatArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Resource and consultation orders for one device class.
    Profile {
        #[arg(long)]
        device: DeviceKind,
        #[arg(long)]
        n: usize,
    },
    /// Balanced splitter network as a text netlist.
    Netlist {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Serialize)]
struct GroverSummary {
    n: usize,
    target: usize,
    iterations: usize,
    measured_slot: usize,
    success: bool,
    transits: u64,
    success_probability: f64,
}

impl CsvRecord for GroverSummary {
    fn header() -> &'static [&'static str] {
        &[
            "n",
            "target",
            "iterations",
            "measured_slot",
            "success",
            "transits",
            "success_probability",
        ]
    }

    fn fields(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.target.to_string(),
            self.iterations.to_string(),
            self.measured_slot.to_string(),
            self.success.to_string(),
            self.transits.to_string(),
            unary_search::report::format_significant(self.success_probability, 12),
        ]
    }
}

#[derive(Serialize)]
struct ContinuousSummary {
    n: usize,
    target: usize,
    energy: f64,
    overlap: f64,
    time: f64,
    time_to_peak: Option<f64>,
    target_probability: f64,
    warning: Option<&'static str>,
}

#[derive(Serialize)]
struct EntangleSummary {
    n: usize,
    target: usize,
    view: ViewKind,
    iterations: usize,
    report: EntanglementReport,
}

fn run(command: Command) -> Result<String> {
    match command {
        Command::Grover {
            n,
            target,
            iterations,
            seed,
            trace,
            format,
            bill_final_transit,
        } => {
            let config = SearchConfig {
                iterations,
                seed,
                bill_final_transit,
            };
            let outcome = run_search(n, target, &config)?;
            match (format, trace) {
                (FormatArg::Csv, true) => Ok(to_csv(&outcome.trace)),
                (FormatArg::Json, true) => to_json(&outcome),
                (format, false) => {
                    let summary = GroverSummary {
                        n,
                        target,
                        iterations: outcome.iterations,
                        measured_slot: outcome.measured_slot,
                        success: outcome.success,
                        transits: outcome.transits,
                        success_probability: outcome.success_probability,
                    };
                    match format {
                        FormatArg::Json => to_json(&summary),
                        FormatArg::Csv => Ok(to_csv(&[summary])),
                    }
                }
            }
        }
        Command::Continuous {
            n,
            target,
            time,
            energy,
            samples,
            format,
        } => {
            let problem = ContinuousProblem::uniform(n, target, energy)?;
            let peak = problem.time_to_peak().ok();
            let t = if time == "peak" {
                problem.time_to_peak()?
            } else {
                time.parse::<f64>()
                    .ok()
                    .filter(|t| t.is_finite() && *t >= 0.0)
                    .ok_or_else(|| {
                        Error::Domain(format!(
                            "time must be `peak` or a finite t >= 0, got {time:?}"
                        ))
                    })?
            };
            if let Some(samples) = samples {
                let series = problem.series(t, samples)?;
                return match format {
                    FormatArg::Json => to_json(&series),
                    FormatArg::Csv => Ok(to_csv(&series)),
                };
            }
            if matches!(format, FormatArg::Csv) {
                return Err(Error::Domain("csv output needs --samples".into()));
            }
            to_json(&ContinuousSummary {
                n,
                target,
                energy,
                overlap: problem.x(),
                time: t,
                time_to_peak: peak,
                target_probability: problem.target_probability(t)?,
                warning: problem.warning(),
            })
        }
        Command::Wave {
            n,
            target,
            strategy,
            kappa,
            noise,
            noise_seed,
            photon_energy,
            format,
        } => {
            let detector = DetectorModel::new(noise, kappa)?;
            let config = WaveConfig {
                detection: noise_seed.map_or(DetectionMode::Threshold, |seed| {
                    DetectionMode::SampledNoise { seed }
                }),
                photon_energy,
            };
            let outcome = match strategy {
                StrategyArg::Direct => direct_search(n, target, &detector, &config)?,
                StrategyArg::Interferometric => {
                    interferometric_search(n, target, &detector, &config)?
                }
            };
            match format {
                FormatArg::Json => to_json(&outcome),
                FormatArg::Csv => Ok(to_csv(&[outcome])),
            }
        }
        Command::Entangle {
            n,
            target,
            view,
            trace,
            format,
        } => {
            if matches!(format, FormatArg::Csv) {
                return Err(Error::Domain("entangle only emits json".into()));
            }
            let k = if n >= 2 { optimal_iterations(n)?.k } else { 0 };
            if trace {
                if view != ViewKind::Qubit {
                    return Err(Error::Domain("--trace uses the qubit view".into()));
                }
                return to_json(&grover_entanglement_trace(n, target, k)?);
            }
            let decomposition = DecompositionView::new(view, n)?;
            let search =
                unary_search::grover::PreparedSearch::run(n, target, &SearchConfig::default())?;
            to_json(&EntangleSummary {
                n,
                target,
                view,
                iterations: search.iterations,
                report: max_entanglement(&search.final_state, &decomposition)?,
            })
        }
        Command::Compare {
            n,
            seed,
            trials,
            format,
            out,
        } => {
            let config = CompareConfig {
                seed,
                trials,
                ..CompareConfig::default()
            };
            let text = render_table(&compare(&n, &config)?, format.into())?;
            match out {
                Some(path) => {
                    write_output(&text, Some(&path))?;
                    Ok(String::new())
                }
                None => Ok(text),
            }
        }
        Command::Profile { device, n } => to_json(&resource_profile(device, n)?),
        Command::Netlist { n } => Ok(SplitterNetwork::synthesize_balanced(n)?.to_netlist()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command).and_then(|text| write_output(&text, None)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::Io { .. } => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}
