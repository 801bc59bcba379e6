use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gmorse::coherent::{mean_morse_trajectory, CoherentState};
use gmorse::duru_map::{build_chart, map_coords, sample_orbit, Direction, PhasePoint, PropagatorRegistry};
use gmorse::export::{
    complex_pair, fmt_f64, spectrum_json, to_json_string, write_coherent_csv, write_trajectory_csv,
    write_wavefunction_csv,
};
use gmorse::grid::UniformGrid;
use gmorse::numeric::quadrature::QuadConfig;
use gmorse::potential::classify_default;
use gmorse::spectrum::{bound_levels, energy_level, DEFAULT_REALITY_TOL};
use gmorse::validate::{validate, ValidationConfig};
use gmorse::wavefn::{normalize_spec, WaveSpec};
use gmorse::{Error, MorseParams};
use num_complex::Complex64;
use serde_json::{json, Value};

mod input;

use input::{parse_complex, ParamArgs};

const EXIT_INVALID: u8 = 2;
const EXIT_VALIDATION: u8 = 3;
const EXIT_NUMERICAL: u8 = 4;

#[derive(Parser, Debug)]
#[command(name = "gmorse", version, about = "Generalized Morse potential: spectra, wave functions and oscillator-map dynamics")]
struct Cli {
    #[command(flatten)]
    params: ParamArgs,

    /// Write output here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the symmetry class of the potential.
    Classify,
    /// Closed-form bound levels.
    Spectrum,
    /// Tabulate ψ_n on a uniform grid (normalized when square-integrable).
    Wavefunction {
        #[arg(long)]
        n: usize,
        /// `a:b:k`, k points from a to b inclusive.
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
    },
    /// Mean Morse trajectory of a two-oscillator coherent state.
    Coherent {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        au: Complex64,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        av: Complex64,
        /// Final parametric time.
        #[arg(long, allow_hyphen_values = true)]
        smax: f64,
        #[arg(long)]
        steps: usize,
    },
    /// Classical orbit through (x0, px0) via the oscillator map.
    Trajectory {
        #[arg(long, allow_hyphen_values = true)]
        x0: f64,
        #[arg(long, allow_hyphen_values = true)]
        px0: f64,
        #[arg(long, allow_hyphen_values = true)]
        smax: f64,
        #[arg(long)]
        steps: usize,
        #[arg(long, default_value = "exact")]
        propagator: String,
    },
    /// Check the closed-form spectrum against the grid oracle and ODE residuals.
    Validate {
        /// Label stored in the report.
        #[arg(long, default_value = "cli")]
        case: String,
        /// Eigen-solver override (`sturm` or `dense`).
        #[arg(long)]
        solver: Option<String>,
        /// Oracle grid size override.
        #[arg(long)]
        points: Option<usize>,
    },
}

enum Failure {
    Input(String),
    Numerical(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Numerical(_) => Failure::Numerical(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

/// Rendered command output plus whether it counts as a pass.
struct Output {
    body: Vec<u8>,
    pass: bool,
}

impl Output {
    fn ok(body: Vec<u8>) -> Self {
        Self { body, pass: true }
    }
}

fn json_bytes(value: &Value) -> Result<Vec<u8>, Failure> {
    Ok(to_json_string(value)?.into_bytes())
}

fn pick(format: Option<Format>, default: Format, allowed: &[Format], command: &str) -> Result<Format, Failure> {
    let f = format.unwrap_or(default);
    if !allowed.contains(&f) {
        return Err(Failure::Input(format!("`{command}` does not support --format {f:?}").to_lowercase()));
    }
    Ok(f)
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let params = cli.params.resolve()?;
    match &cli.command {
        Command::Classify => {
            let class = classify_default(&params);
            match cli.format {
                None => Ok(Output::ok(format!("{class}\n").into_bytes())),
                Some(Format::Json) => json_bytes(&json!({ "symmetry": class.as_str() })).map(Output::ok),
                Some(Format::Csv) => Err(Failure::Input("`classify` does not support --format csv".into())),
            }
        }
        Command::Spectrum => {
            let levels = bound_levels(&params, DEFAULT_REALITY_TOL);
            match pick(cli.format, Format::Json, &[Format::Json, Format::Csv], "spectrum")? {
                Format::Json => json_bytes(&spectrum_json(&levels)).map(Output::ok),
                Format::Csv => {
                    let mut body = b"n,re_E,im_E,re_s,im_s,real\n".to_vec();
                    for l in &levels {
                        let cells = [l.energy.re, l.energy.im, l.s_exponent.re, l.s_exponent.im].map(fmt_f64);
                        writeln!(body, "{},{},{}", l.n, cells.join(","), l.is_real)?;
                    }
                    Ok(Output::ok(body))
                }
            }
        }
        Command::Wavefunction { n, grid } => wavefunction(&params, *n, grid, cli.format),
        Command::Coherent { au, av, smax, steps } => coherent(&params, *au, *av, *smax, *steps, cli.format),
        Command::Trajectory {
            x0,
            px0,
            smax,
            steps,
            propagator,
        } => {
            let format = pick(cli.format, Format::Csv, &[Format::Csv], "trajectory")?;
            debug_assert_eq!(format, Format::Csv);
            let prop = PropagatorRegistry::default().get(propagator)?;
            let start = map_coords(&params, PhasePoint::morse(*x0, *px0), Direction::ToOscillator)?;
            let points = sample_orbit(&params, start, *smax, steps + 1, &*prop)?;
            let mut body = Vec::new();
            write_trajectory_csv(&mut body, &points)?;
            Ok(Output::ok(body))
        }
        Command::Validate { case, solver, points } => {
            pick(cli.format, Format::Json, &[Format::Json], "validate")?;
            let mut cfg = ValidationConfig {
                solver: solver.clone(),
                ..Default::default()
            };
            if let Some(n) = *points {
                cfg.oracle_points = n;
                cfg.complex_oracle_points = n;
            }
            let outcome = validate(&params, case, &cfg)?;
            Ok(Output {
                body: json_bytes(&outcome.report)?,
                pass: outcome.pass,
            })
        }
    }
}

fn wavefunction(params: &MorseParams, n: usize, grid: &str, format: Option<Format>) -> Result<Output, Failure> {
    let format = pick(format, Format::Csv, &[Format::Csv, Format::Json], "wavefunction")?;
    let grid = UniformGrid::parse(grid)?;
    let level = energy_level(params, n);
    let spec = normalize_spec(params, &WaveSpec::new(params, &level), &QuadConfig::default())?;
    let samples: Vec<(f64, Complex64)> = grid.points().into_iter().map(|x| (x, spec.eval(params, x).value)).collect();
    match format {
        Format::Csv => {
            let mut body = Vec::new();
            write_wavefunction_csv(&mut body, &samples)?;
            Ok(Output::ok(body))
        }
        Format::Json => json_bytes(&json!({
            "n": n,
            "E": complex_pair(level.energy),
            "s": complex_pair(level.s_exponent),
            "normalized": spec.normalizable,
            "x": samples.iter().map(|(x, _)| *x).collect::<Vec<_>>(),
            "psi": samples.iter().map(|(_, p)| complex_pair(*p)).collect::<Vec<_>>(),
        }))
        .map(Output::ok),
    }
}

fn coherent(
    params: &MorseParams,
    au: Complex64,
    av: Complex64,
    smax: f64,
    steps: usize,
    format: Option<Format>,
) -> Result<Output, Failure> {
    let format = pick(format, Format::Csv, &[Format::Csv, Format::Json], "coherent")?;
    if steps == 0 || !smax.is_finite() {
        return Err(Failure::Input("coherent needs --steps ≥ 1 and a finite --smax".into()));
    }
    // Ω is energy independent; the reference energy only fixes ℓ
    let probe = CoherentState::new(au, av, build_chart(params, Complex64::new(0.0, 0.0)))?;
    let energy = probe.mean_morse_energy(params)?;
    let state = CoherentState::new(au, av, build_chart(params, energy.into()))?;
    let s_grid: Vec<f64> = (0..=steps).map(|i| smax * i as f64 / steps as f64).collect();
    let traj = mean_morse_trajectory(&state, &s_grid, params)?;
    match format {
        Format::Csv => {
            let mut body = Vec::new();
            write_coherent_csv(&mut body, &traj)?;
            Ok(Output::ok(body))
        }
        Format::Json => json_bytes(&json!({
            "mapping": traj.mapping,
            "constraint_gap": traj.constraint_gap,
            "samples": traj.samples.iter().map(|m| json!({
                "s": m.s,
                "t": m.t,
                "x_mean": m.x_mean,
                "a_u": complex_pair(m.a_u),
                "a_v": complex_pair(m.a_v),
            })).collect::<Vec<_>>(),
        }))
        .map(Output::ok),
    }
}

fn emit(path: Option<&PathBuf>, body: &[u8]) -> io::Result<()> {
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p)?);
            w.write_all(body)?;
            w.flush()
        }
        None => {
            let mut out = io::stdout().lock();
            out.write_all(body)?;
            out.flush()
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(output) => {
            if let Err(e) = emit(cli.out.as_ref(), &output.body) {
                eprintln!("error: {e}");
                return ExitCode::from(EXIT_INVALID);
            }
            if output.pass {
                ExitCode::SUCCESS
            } else {
                eprintln!("validation failed");
                ExitCode::from(EXIT_VALIDATION)
            }
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INVALID)
        }
        Err(Failure::Numerical(msg)) => {
            eprintln!("numerical error: {msg}");
            ExitCode::from(EXIT_NUMERICAL)
        }
    }
}
