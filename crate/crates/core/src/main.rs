use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{CommandFactory, Parser, Subcommand, ValueEnum};

use qenc::analysis::{self, fit_scaling, ScalingModel, SweepMethod};
use qenc::circuit::emit_text;
use qenc::converters::{build_converter, verify_converter, Direction, EvenMethod, VerifyCase};
use qenc::dicke::{build_binomial_pipeline, BinomialSpec, Target};
use qenc::{Granularity, Statevector};

#[derive(Parser)]
#[command(
    name = "qenc",
    version,
    about = "Encoding converters for level-indexed quantum states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a converter and write it as OpenQASM 2.0.
    Build {
        #[arg(long)]
        direction: Direction,
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
        n: u32,
        #[arg(long, default_value = "expand-pow2")]
        method: EvenMethod,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Simulate a converter on every basis level and on seeded random vectors.
    Verify {
        #[arg(long)]
        direction: Direction,
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
        n: u32,
        #[arg(long, default_value = "expand-pow2")]
        method: EvenMethod,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Depth, size and ancilla counts over a range of N, as CSV.
    Sweep {
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(2..))]
        n_min: u32,
        #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u32).range(2..))]
        n_max: u32,
        /// Comma-separated circuit families; all of them when absent.
        #[arg(long, value_delimiter = ',')]
        methods: Vec<SweepMethod>,
        /// Granularity used by the fit summary printed to stderr.
        #[arg(long, value_enum, default_value_t = GranularityArg::Basis)]
        granularity: GranularityArg,
        /// Only sweep N = 2^k + 1 within the range.
        #[arg(long)]
        pow2_plus1: bool,
        /// Record wall-clock build times instead of zeros.
        #[arg(long)]
        timing: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Prepare binomial amplitudes and report level probabilities as CSV.
    PrepareBinomial {
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
        n: u32,
        #[arg(long, value_parser = parse_probability)]
        p: f64,
        #[arg(long, value_enum, default_value_t = TargetArg::Binary)]
        target: TargetArg,
        #[arg(long, default_value = "expand-pow2")]
        method: EvenMethod,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GranularityArg {
    Logical,
    Basis,
}

impl From<GranularityArg> for Granularity {
    fn from(g: GranularityArg) -> Granularity {
        match g {
            GranularityArg::Logical => Granularity::Logical,
            GranularityArg::Basis => Granularity::TwoQubitBasis,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    Edick,
    Onehot,
    Binary,
}

impl From<TargetArg> for Target {
    fn from(t: TargetArg) -> Target {
        match t {
            TargetArg::Edick => Target::Edick,
            TargetArg::Onehot => Target::OneHot,
            TargetArg::Binary => Target::Binary,
        }
    }
}

fn parse_probability(s: &str) -> Result<f64, String> {
    let p: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if (0.0..=1.0).contains(&p) {
        Ok(p)
    } else {
        Err(format!("{p} is not in [0, 1]"))
    }
}

fn output(out: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn run(cli: Cli) -> Result<ExitCode, Box<dyn std::error::Error>> {
    match cli.command {
        Command::Build {
            direction,
            n,
            method,
            out,
        } => {
            let (circuit, plan) = build_converter(direction, n as usize, method)?;
            let mut w = output(&out)?;
            w.write_all(emit_text(&circuit).as_bytes())?;
            w.flush()?;
            eprintln!(
                "{direction} N={} qubits={} ancilla={} gates={} depth={}",
                plan.levels,
                plan.total_qubits,
                plan.ancilla,
                circuit.len(),
                circuit.depth()
            );
        }
        Command::Verify {
            direction,
            n,
            method,
            trials,
            seed,
        } => {
            let r = verify_converter(direction, n as usize, method, trials, seed)?;
            let case = match r.worst_case {
                VerifyCase::Level(i) => format!("level {i}"),
                VerifyCase::Random { trial, dominant } => {
                    format!("random trial {trial} (dominant level {dominant})")
                }
            };
            println!("direction: {direction}");
            println!("levels: {}", r.plan.levels);
            match r.plan.method {
                Some(m) => println!("method: {m}"),
                None => println!("method: none"),
            }
            println!("total_qubits: {}", r.plan.total_qubits);
            println!("ancilla: {}", r.plan.ancilla);
            println!("checks: {}", r.checks);
            println!("worst_fidelity: {:.15}", r.worst_fidelity);
            println!("worst_case: {case}");
            println!("max_stray_mass: {:.3e}", r.max_stray_mass);
            if r.passed() {
                println!("result: PASS");
            } else {
                println!("result: FAIL");
                return Ok(ExitCode::from(1));
            }
        }
        Command::Sweep {
            n_min,
            n_max,
            methods,
            granularity,
            pow2_plus1,
            timing,
            out,
        } => {
            if n_min > n_max {
                Cli::command()
                    .error(
                        ErrorKind::ValueValidation,
                        format!("--n-min {n_min} exceeds --n-max {n_max}"),
                    )
                    .exit();
            }
            let methods = if methods.is_empty() {
                SweepMethod::all()
            } else {
                methods
            };
            let ns: Vec<usize> = (n_min as usize..=n_max as usize)
                .filter(|&n| !pow2_plus1 || (n - 1).is_power_of_two())
                .collect();
            let rows = analysis::run_sweep(&ns, &methods, timing)?;
            let mut w = output(&out)?;
            analysis::write_csv(&rows, &mut w)?;
            w.flush()?;
            let g = Granularity::from(granularity);
            for &m in &methods {
                let pick = |f: fn(&analysis::SweepRow, Granularity) -> usize| -> Vec<(usize, f64)> {
                    rows.iter()
                        .filter(|r| r.method == m)
                        .map(|r| (r.n, f(r, g) as f64))
                        .collect()
                };
                let depth = fit_scaling(&pick(analysis::SweepRow::depth), ScalingModel::LogSquared);
                let size = fit_scaling(&pick(analysis::SweepRow::size), ScalingModel::Linear);
                if let (Ok(d), Ok(s)) = (depth, size) {
                    eprintln!(
                        "{m}: depth ~ {:.3}*log2(N)^2 (max rel residual {:.3}), size ~ {:.3}*N (max rel residual {:.3})",
                        d.coefficient, d.max_relative_residual, s.coefficient, s.max_relative_residual
                    );
                }
            }
        }
        Command::PrepareBinomial {
            n,
            p,
            target,
            method,
            out,
        } => {
            let spec = BinomialSpec::new(n as usize, p, target.into(), method)?;
            let (circuit, plan) = build_binomial_pipeline(&spec)?;
            let state = Statevector::zero(plan.total_qubits).evolved(&circuit)?;
            let mut w = output(&out)?;
            writeln!(w, "level,probability,pmf,abs_error")?;
            for k in 0..plan.levels {
                let prob = state.probability(plan.level_index(k)?);
                let pmf = spec.pmf(k);
                writeln!(w, "{k},{prob:.15e},{pmf:.15e},{:.3e}", (prob - pmf).abs())?;
            }
            w.flush()?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
