use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use radialft::quad::QuadratureSpec;
use radialft::verify::{run_all, run_suite, Suite};
use radialft_cli::{
    coeffs, kernel, lift, parse_complex, transform, write_records, CliError, EngineChoice, Format, Grid, KernelChoice,
    LiftOptions, Table,
};

#[derive(Parser)]
#[command(name = "radialft", version, about = "Fourier transforms of radial functions in any dimension")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Output format.
    #[arg(long, default_value_t = Format::Csv)]
    format: Format,
    /// Write results to FILE instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Tolerances {
    #[arg(long, default_value_t = 1e-10)]
    rel_tol: f64,
    #[arg(long, default_value_t = 1e-14)]
    abs_tol: f64,
    /// Inter-zero panels allowed per oscillatory integral.
    #[arg(long, default_value_t = 500)]
    max_oscillations: usize,
}

impl Tolerances {
    fn spec(&self) -> QuadratureSpec {
        QuadratureSpec::default()
            .with_rel_tol(self.rel_tol)
            .with_abs_tol(self.abs_tol)
            .with_max_oscillations(self.max_oscillations)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Radial Fourier transform F_n(f) by direct quadrature.
    Transform {
        /// Formula in `s`.
        #[arg(long)]
        profile: String,
        #[arg(long)]
        dim: u32,
        /// min:max:count[:linear|log]
        #[arg(long)]
        grid: Grid,
        /// Proceed when the integrability check fails.
        #[arg(long)]
        force: bool,
        #[command(flatten)]
        tol: Tolerances,
        #[command(flatten)]
        output: Output,
    },
    /// Lift a transform F_from (a formula in `s`) to F_to.
    Lift {
        #[arg(long)]
        profile: String,
        #[arg(long)]
        from: u32,
        #[arg(long)]
        to: u32,
        #[arg(long)]
        grid: Grid,
        #[arg(long, value_enum, default_value_t = EngineChoice::Analytic)]
        engine: EngineChoice,
        /// Chebyshev degree.
        #[arg(long, default_value_t = 24)]
        degree: usize,
        /// Relative half-width of the Chebyshev interval around each r.
        #[arg(long, default_value_t = 0.25)]
        width: f64,
        /// Finite-difference base step.
        #[arg(long, default_value_t = 1e-3)]
        step: f64,
        /// Richardson levels for finite differences.
        #[arg(long, default_value_t = 3)]
        levels: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Closed-form kernels of functions of the Laplacian.
    Kernel {
        /// Resolvent (-Δ - z)^{-1} at z, e.g. -1 or -2+i.
        #[arg(long, allow_hyphen_values = true, group = "family")]
        resolvent: Option<String>,
        /// Spectral projection onto [0, E].
        #[arg(long, group = "family")]
        projection: Option<f64>,
        /// Heat kernel at time t.
        #[arg(long, group = "family")]
        heat: Option<f64>,
        #[arg(long)]
        dim: u32,
        #[arg(long)]
        grid: Grid,
        #[command(flatten)]
        output: Output,
    },
    /// Exact coefficients c_{k,1}, ..., c_{k,k} of the k-step lift.
    Coeffs {
        k: usize,
    },
    /// Run a self-check battery.
    Verify {
        /// expr, bessel, quad, transform, recursion, coefficients, kernels or all.
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn emit(table: &Table, output: &Output) -> Result<ExitCode, CliError> {
    let sink: Box<dyn Write> = match &output.out {
        Some(path) => Box::new(File::create(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?),
        None => Box::new(io::stdout().lock()),
    };
    write_records(&table.records, output.format, BufWriter::new(sink))?;
    if table.converged {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("warning: some grid points did not converge");
        Ok(ExitCode::from(2))
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Transform {
            profile,
            dim,
            grid,
            force,
            tol,
            output,
        } => emit(&transform(&profile, dim, &grid, &tol.spec(), force)?, &output),
        Command::Lift {
            profile,
            from,
            to,
            grid,
            engine,
            degree,
            width,
            step,
            levels,
            output,
        } => {
            let opts = LiftOptions {
                engine,
                degree,
                width,
                step,
                levels,
            };
            emit(&lift(&profile, from, to, &grid, &opts)?, &output)
        }
        Command::Kernel {
            resolvent,
            projection,
            heat,
            dim,
            grid,
            output,
        } => {
            let choice = match (resolvent, projection, heat) {
                (Some(z), None, None) => KernelChoice::Resolvent(parse_complex(&z)?),
                (None, Some(e), None) => KernelChoice::Projection(e),
                (None, None, Some(t)) => KernelChoice::Heat(t),
                _ => return Err(CliError::Usage("give exactly one of --resolvent, --projection, --heat".into())),
            };
            emit(&kernel(choice, dim, &grid)?, &output)
        }
        Command::Coeffs { k } => {
            println!("{}", coeffs(k));
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { suite, seed } => {
            let checks = if suite == "all" {
                run_all(seed)
            } else {
                let s = Suite::from_name(&suite).ok_or_else(|| CliError::Usage(format!("unknown suite `{suite}`")))?;
                run_suite(s, seed)
            };
            for c in &checks {
                println!("{c}");
            }
            let failed = checks.iter().filter(|c| !c.passed).count();
            println!("{} checks, {failed} failed", checks.len());
            Ok(if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .target(env_logger::Target::Stderr)
        .init();
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
