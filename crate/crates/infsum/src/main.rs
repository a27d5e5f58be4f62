use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use infsum::{check, expr, morphism_file};
use infsum_core::intsets::{int_compose, trace_injection, IntMorphism, IntObject, Mode};
use infsum_core::paradoxical::{zp_add, zp_k, zp_leq_witness, ZPElem};
use infsum_core::series::harness::HarnessConfig;
use infsum_core::ApproxLevel;

#[derive(Parser)]
#[command(name = "infsum", version, about = "Countable sums, halving and integer sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the expressions in a file, one result per line.
    Eval {
        file: PathBuf,
        #[arg(long, default_value_t = 32)]
        bits: u32,
    },
    /// Integer-set morphisms read from files.
    Intset {
        #[command(subcommand)]
        op: IntsetOp,
        /// Read the files as bijections (FB) or injections (FI).
        #[arg(long, global = true)]
        mode: Option<ModeArg>,
    },
    /// Arithmetic on paradoxical reals (`0`, `t:1.01`, `r:0.1(01)`).
    Paradox {
        #[command(subcommand)]
        op: ParadoxOp,
    },
    /// Run a seeded law suite.
    Check {
        #[arg(long)]
        instance: String,
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        cases: usize,
        #[arg(long, default_value_t = 32)]
        bits: u32,
    },
}

#[derive(Subcommand)]
enum IntsetOp {
    /// `second ∘ first`.
    Compose { first: PathBuf, second: PathBuf },
    /// Trace of `(X,U) -> (Y,U)` over `U`, as `(X,0) -> (Y,0)`.
    Trace { file: PathBuf },
    /// Cardinality `|X| - |U|` of the domain (or the codomain).
    Card {
        file: PathBuf,
        #[arg(long)]
        cod: bool,
    },
}

#[derive(Subcommand)]
enum ParadoxOp {
    Add { a: String, b: String },
    /// Whether `a <= b`, with a witness `u` such that `a + u = b`.
    Leq { a: String, b: String },
    K { a: String },
    Value { a: String },
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum ModeArg {
    #[value(name = "FB")]
    Fb,
    #[value(name = "FI")]
    Fi,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Fb => Mode::FB,
            ModeArg::Fi => Mode::FI,
        }
    }
}

/// An error message and the exit status that goes with it.
struct Failure(String, u8);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string(), 1)
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display()), 2))
}

fn read_morphism(path: &Path, mode: Option<Mode>) -> Result<IntMorphism, Failure> {
    morphism_file::parse(&read(path)?, mode).map_err(|e| Failure(format!("{}: {e}", path.display()), 1))
}

fn zp(s: &str) -> Result<ZPElem, Failure> {
    s.parse().map_err(|e| Failure(format!("{e}"), 2))
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Eval { file, bits } => {
            let src = read(&file)?;
            let lines = expr::eval_source(&src, ApproxLevel(bits))
                .map_err(|e| Failure(format!("{}:{e}", file.display()), 1))?;
            for line in lines {
                println!("{line}");
            }
        }
        Command::Intset { op, mode } => {
            let mode = mode.map(Mode::from);
            match op {
                IntsetOp::Compose { first, second } => {
                    let f = read_morphism(&first, mode)?;
                    let g = read_morphism(&second, mode)?;
                    print!("{}", morphism_file::to_text(&int_compose(&g, &f)?));
                }
                IntsetOp::Trace { file } => {
                    let f = read_morphism(&file, mode)?;
                    if f.dom().neg != f.cod().neg {
                        return Err(Failure(format!("trace needs (X,U) -> (Y,U), got {} -> {}", f.dom(), f.cod()), 1));
                    }
                    let t = trace_injection(f.map(), f.dom().neg)?;
                    let out = IntMorphism::new(
                        IntObject::new(f.dom().pos, 0),
                        IntObject::new(f.cod().pos, 0),
                        t,
                        f.mode(),
                    )?;
                    print!("{}", morphism_file::to_text(&out));
                }
                IntsetOp::Card { file, cod } => {
                    let f = read_morphism(&file, mode)?;
                    let obj = if cod { f.cod() } else { f.dom() };
                    println!("{}", obj.cardinality());
                }
            }
        }
        Command::Paradox { op } => match op {
            ParadoxOp::Add { a, b } => println!("{}", zp_add(&zp(&a)?, &zp(&b)?)),
            ParadoxOp::Leq { a, b } => match zp_leq_witness(&zp(&a)?, &zp(&b)?) {
                Some(u) => println!("true (u = {u})"),
                None => println!("false"),
            },
            ParadoxOp::K { a } => println!("{}", zp_k(&zp(&a)?)?),
            ParadoxOp::Value { a } => println!("{}", zp(&a)?.value()),
        },
        Command::Check { instance, suite, seed, cases, bits } => {
            let config = HarnessConfig { seed, cases, level: ApproxLevel(bits) };
            let report = check::run(&instance, &suite, config).map_err(|e| Failure(e.to_string(), 2))?;
            print!("{report}");
            return Ok(check::exit_code(&report));
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(msg, code)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
