//! `scott`: relativistic Scott correction from the command line.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use scott_core::atomic_energy::{
    comparison_table, predict_energy, read_energy_table, ComparisonRow, PhysicalConstants,
};
use scott_core::report::{format_optional, format_sig};
use scott_core::shift::{default_tolerance, schwinger_shift, shift};
use scott_core::thomas_fermi::{solve_tf, tf_energy};
use scott_core::Coupling;

/// Default tolerance of the Thomas-Fermi solver and of the shift sums.
const DEFAULT_TOL: f64 = 1e-8;

#[derive(Debug, Parser)]
#[command(
    name = "scott",
    version,
    about = "Relativistic Scott correction of heavy atoms"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalOpts {
    /// Absolute tolerance [default: 1e-8; 1e-6 for shifts with gamma > 0.9]
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Fine-structure constant
    #[arg(long, global = true, default_value_t = PhysicalConstants::DEFAULT_ALPHA)]
    alpha: f64,
    /// Emit JSON instead of CSV
    #[arg(long, global = true)]
    json: bool,
    /// Write the result to PATH instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Spectral shift s(gamma) and the Scott coefficient at one coupling
    Shift {
        #[arg(long, allow_negative_numbers = true)]
        gamma: f64,
    },
    /// Scott coefficient on an evenly spaced coupling grid
    Curve {
        #[arg(long, allow_negative_numbers = true)]
        gamma_min: f64,
        #[arg(long, allow_negative_numbers = true)]
        gamma_max: f64,
        #[arg(long)]
        steps: usize,
    },
    /// Thomas-Fermi profile of the neutral atom
    Tf {
        /// Write the profile table `x,phi` to PATH
        #[arg(long, value_name = "PATH")]
        profile: Option<PathBuf>,
    },
    /// Predicted ground-state energy E_TF(Z) + (1/2 + s(gamma)) Z^2
    Energy {
        #[arg(long = "Z", allow_negative_numbers = true)]
        z: f64,
        /// Coupling; defaults to alpha * Z
        #[arg(long, allow_negative_numbers = true)]
        gamma: Option<f64>,
    },
    /// Empirical versus model Scott coefficients for a table of energies
    Compare {
        /// CSV with header `Z,E_total_Ha`
        #[arg(long, value_name = "PATH")]
        nist: PathBuf,
        /// Optional reference table with header `Z,E_ref_Ha`
        #[arg(long, value_name = "PATH")]
        reference: Option<PathBuf>,
    },
}

/// A row of command output with a fixed CSV layout.
trait Record: Serialize {
    const HEADER: &'static str;
    fn fields(&self) -> Vec<String>;
}

#[derive(Debug, Serialize)]
struct ShiftRow {
    gamma: f64,
    s_d: f64,
    scott_q: f64,
    schwinger_q: f64,
    tail_estimate: f64,
}

impl Record for ShiftRow {
    const HEADER: &'static str = "gamma,s_d,scott_q,schwinger_q,tail_estimate";
    fn fields(&self) -> Vec<String> {
        [
            self.gamma,
            self.s_d,
            self.scott_q,
            self.schwinger_q,
            self.tail_estimate,
        ]
        .map(format_sig)
        .to_vec()
    }
}

#[derive(Debug, Serialize)]
struct CurveRow {
    gamma: f64,
    s_d: f64,
    scott_q: f64,
    schwinger_q: f64,
}

impl Record for CurveRow {
    const HEADER: &'static str = "gamma,s_d,scott_q,schwinger_q";
    fn fields(&self) -> Vec<String> {
        [self.gamma, self.s_d, self.scott_q, self.schwinger_q]
            .map(format_sig)
            .to_vec()
    }
}

#[derive(Debug, Serialize)]
struct TfRow {
    initial_slope: f64,
    e_tf_1: f64,
}

impl Record for TfRow {
    const HEADER: &'static str = "initial_slope,e_tf_1";
    fn fields(&self) -> Vec<String> {
        [self.initial_slope, self.e_tf_1].map(format_sig).to_vec()
    }
}

#[derive(Debug, Serialize)]
struct EnergyRow {
    #[serde(rename = "Z")]
    z: f64,
    gamma: f64,
    e_tf: f64,
    scott_q: f64,
    energy: f64,
}

impl Record for EnergyRow {
    const HEADER: &'static str = "Z,gamma,e_tf,scott_q,energy";
    fn fields(&self) -> Vec<String> {
        [self.z, self.gamma, self.e_tf, self.scott_q, self.energy]
            .map(format_sig)
            .to_vec()
    }
}

impl Record for ComparisonRow {
    const HEADER: &'static str = scott_core::atomic_energy::COMPARISON_HEADER;
    fn fields(&self) -> Vec<String> {
        vec![
            self.z.to_string(),
            format_sig(self.gamma),
            format_sig(self.empirical_q),
            format_optional(self.model_q),
            format_sig(self.schwinger_q),
            format_optional(self.reference_q),
        ]
    }
}

/// Single-row commands emit a JSON object, table commands an array.
enum Shape {
    Object,
    Array,
}

fn render<R: Record>(rows: &[R], shape: Shape, json: bool) -> Result<String> {
    if json {
        let mut text = match shape {
            Shape::Object => serde_json::to_string_pretty(&rows[0])?,
            Shape::Array => serde_json::to_string_pretty(rows)?,
        };
        text.push('\n');
        return Ok(text);
    }
    let mut text = String::from(R::HEADER);
    text.push('\n');
    for row in rows {
        text.push_str(&row.fields().join(","));
        text.push('\n');
    }
    Ok(text)
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn shift_row(gamma: f64, tol: Option<f64>) -> Result<ShiftRow> {
    let g = Coupling::new(gamma).with_context(|| format!("gamma = {gamma}"))?;
    let s = shift(g, tol.unwrap_or_else(|| default_tolerance(g)))?;
    Ok(ShiftRow {
        gamma,
        s_d: s.value,
        scott_q: 0.5 + s.value,
        schwinger_q: 0.5 + schwinger_shift(g),
        tail_estimate: s.tail_estimate,
    })
}

fn curve(gamma_min: f64, gamma_max: f64, steps: usize, tol: Option<f64>) -> Result<Vec<CurveRow>> {
    if !(0.0..1.0).contains(&gamma_min) || !(0.0..1.0).contains(&gamma_max) {
        bail!("couplings must lie in [0, 1), got [{gamma_min}, {gamma_max}]");
    }
    if gamma_min >= gamma_max {
        bail!("gamma-min must be below gamma-max");
    }
    if steps < 2 {
        bail!("steps must be at least 2, got {steps}");
    }
    let width = gamma_max - gamma_min;
    let last = (steps - 1) as f64;
    (0..steps)
        .into_par_iter()
        .map(|i| {
            let gamma = if i == steps - 1 {
                gamma_max
            } else {
                gamma_min + width * i as f64 / last
            };
            let r = shift_row(gamma, tol)?;
            Ok(CurveRow {
                gamma: r.gamma,
                s_d: r.s_d,
                scott_q: r.scott_q,
                schwinger_q: r.schwinger_q,
            })
        })
        .collect()
}

fn run(cli: Cli) -> Result<()> {
    let opts = &cli.global;
    let constants = PhysicalConstants::new(opts.alpha)?;
    let tf_tol = opts.tol.unwrap_or(DEFAULT_TOL);
    let text = match &cli.command {
        Command::Shift { gamma } => {
            render(&[shift_row(*gamma, opts.tol)?], Shape::Object, opts.json)?
        }
        Command::Curve {
            gamma_min,
            gamma_max,
            steps,
        } => render(
            &curve(*gamma_min, *gamma_max, *steps, opts.tol)?,
            Shape::Array,
            opts.json,
        )?,
        Command::Tf { profile } => {
            let sol = solve_tf(tf_tol)?;
            if let Some(path) = profile {
                let file = fs::File::create(path)
                    .with_context(|| format!("creating {}", path.display()))?;
                let mut writer = std::io::BufWriter::new(file);
                sol.write_profile_csv(&mut writer)
                    .and_then(|_| writer.flush())
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            let row = TfRow {
                initial_slope: sol.initial_slope(),
                e_tf_1: sol.e_tf_1(),
            };
            render(&[row], Shape::Object, opts.json)?
        }
        Command::Energy { z, gamma } => {
            if !z.is_finite() || *z <= 0.0 {
                bail!("Z must be positive, got {z}");
            }
            let gamma = gamma.unwrap_or(constants.alpha() * z);
            let g = Coupling::new(gamma).with_context(|| format!("gamma = {gamma}"))?;
            let tol = opts.tol.unwrap_or_else(|| default_tolerance(g));
            let sol = solve_tf(tf_tol)?;
            let energy = predict_energy(*z, g, &sol, tol)?;
            let e_tf = tf_energy(*z, &sol)?;
            let row = EnergyRow {
                z: *z,
                gamma,
                e_tf,
                scott_q: (energy - e_tf) / (z * z),
                energy,
            };
            render(&[row], Shape::Object, opts.json)?
        }
        Command::Compare { nist, reference } => {
            let records = read_energy_table(nist)?;
            let reference = reference.as_deref().map(read_energy_table).transpose()?;
            let sol = solve_tf(tf_tol)?;
            let rows = comparison_table(
                &records,
                reference.as_deref(),
                constants,
                &sol,
                opts.tol.unwrap_or(DEFAULT_TOL),
            )?;
            for row in rows.iter().filter(|r| r.flagged()) {
                eprintln!(
                    "warning: Z = {}: alpha*Z = {} >= 1, no model value",
                    row.z, row.gamma
                );
            }
            render(&rows, Shape::Array, opts.json)?
        }
    };
    emit(&text, opts.out.as_ref())
}

fn main() -> std::process::ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => std::process::ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::ExitCode::FAILURE
        }
    }
}
