//! `dcm`: JSON front end for decomposable-media analysis.

use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use dcmedia::cli::{self, Kind, Options};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CommandArg {
    Build,
    HoDecompose,
    DetectDcm,
    Dispersion,
    Planewave,
    Convert,
    ClassifyQuadratic,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    #[value(name = "raw6x6")]
    Raw6x6,
    Qdcm,
    Pdcm,
    Sdcm,
    #[value(name = "q_medium")]
    QMedium,
    #[value(name = "p_medium")]
    PMedium,
    Gibbsian,
    Uniaxial,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Kind {
        match k {
            KindArg::Raw6x6 => Kind::Raw6x6,
            KindArg::Qdcm => Kind::Qdcm,
            KindArg::Pdcm => Kind::Pdcm,
            KindArg::Sdcm => Kind::Sdcm,
            KindArg::QMedium => Kind::QMedium,
            KindArg::PMedium => Kind::PMedium,
            KindArg::Gibbsian => Kind::Gibbsian,
            KindArg::Uniaxial => Kind::Uniaxial,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "dcm", version, about = "Decomposable bi-anisotropic media: construction, detection and dispersion")]
struct Args {
    command: CommandArg,
    /// Input medium document (`-` for standard input).
    #[arg(long, default_value = "-")]
    input: String,
    /// Report destination (`-` for standard output).
    #[arg(long, default_value = "-")]
    output: String,
    /// Override for the classification and detection thresholds.
    #[arg(long)]
    tol: Option<f64>,
    /// Seed for sampled routines.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// `build`: emit a random document of this kind instead of reading input.
    #[arg(long, value_enum)]
    random: Option<KindArg>,
    /// `convert`: target kind.
    #[arg(long, value_enum, default_value = "raw6x6")]
    to: KindArg,
    /// `planewave`: number of sampled propagation directions.
    #[arg(long, default_value_t = 3)]
    directions: usize,
}

fn command_name(c: CommandArg) -> &'static str {
    match c {
        CommandArg::Build => "build",
        CommandArg::HoDecompose => "ho-decompose",
        CommandArg::DetectDcm => "detect-dcm",
        CommandArg::Dispersion => "dispersion",
        CommandArg::Planewave => "planewave",
        CommandArg::Convert => "convert",
        CommandArg::ClassifyQuadratic => "classify-quadratic",
    }
}

fn read_input(path: &str) -> std::io::Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path)
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let Format::Json = args.format;
    let opts = Options {
        tol: args.tol,
        seed: args.seed,
        random: args.random.map(Kind::from),
        to: args.to.into(),
        directions: args.directions,
    };
    let name = command_name(args.command);
    let needs_input = !(matches!(args.command, CommandArg::Build) && opts.random.is_some());
    let outcome = if needs_input {
        match read_input(&args.input) {
            Ok(text) => cli::run(name, Some(&text), &opts),
            Err(e) => cli::input_error(name, &format!("cannot read input '{}': {e}", args.input), &opts),
        }
    } else {
        cli::run(name, None, &opts)
    };
    let written = if args.output == "-" {
        std::io::stdout().write_all(outcome.report.as_bytes())
    } else {
        std::fs::write(&args.output, &outcome.report)
    };
    if let Err(e) = written {
        eprintln!("dcm: cannot write report to '{}': {e}", args.output);
        return ExitCode::from(cli::EXIT_VALIDATION as u8);
    }
    ExitCode::from(outcome.code as u8)
}
