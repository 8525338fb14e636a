//! `indexkit` command-line front end. Every run prints one JSON report on
//! stdout and a short summary on stderr.

mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use commands::{CliError, ErrorKind};

#[derive(Parser, Debug)]
#[command(name = "indexkit", version, about = "Index-theorem computations: meshes, Hodge theory, lattice counts, localization, resolution")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Total angle defect of a closed mesh against 2πχ.
    GaussBonnet(commands::MeshArgs),
    /// Exact Betti numbers and collapsed-operator index of a mesh.
    Betti(commands::ComplexArgs),
    /// Heat supertrace Σ(-1)^k Tr exp(-tΔ_k) at one or more times.
    HeatIndex(commands::HeatArgs),
    /// Double a bounded mesh along its boundary.
    Double(commands::MeshArgs),
    /// Circulation periods of harmonic 1-forms around the holes of a planar mesh.
    Periods(commands::MeshArgs),
    /// Count solutions of 5q+n+c = 5k in nonnegative integers.
    Jackpot(commands::JackpotArgs),
    /// Pick's theorem for a lattice polygon.
    Pick(commands::PickArgs),
    /// Fixed-point localization on a weighted projective plane.
    Localize(commands::LocalizeArgs),
    /// Index of the degree-k line bundle on CP¹.
    Cp1Index(commands::Cp1Args),
    /// Quadrature of the normalised curvature circulation on |z| = R.
    Curvature(commands::CurvatureArgs),
    /// Resolve a plane-curve germ by blow-ups and report the intersection form.
    Resolve(commands::ResolveArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::GaussBonnet(_) => "gauss-bonnet",
            Command::Betti(_) => "betti",
            Command::HeatIndex(_) => "heat-index",
            Command::Double(_) => "double",
            Command::Periods(_) => "periods",
            Command::Jackpot(_) => "jackpot",
            Command::Pick(_) => "pick",
            Command::Localize(_) => "localize",
            Command::Cp1Index(_) => "cp1-index",
            Command::Curvature(_) => "curvature",
            Command::Resolve(_) => "resolve",
        }
    }

    fn run(&self) -> Result<(Value, Value, String), CliError> {
        match self {
            Command::GaussBonnet(a) => commands::gauss_bonnet(a),
            Command::Betti(a) => commands::betti(a),
            Command::HeatIndex(a) => commands::heat_index(a),
            Command::Double(a) => commands::double(a),
            Command::Periods(a) => commands::periods(a),
            Command::Jackpot(a) => commands::jackpot(a),
            Command::Pick(a) => commands::pick(a),
            Command::Localize(a) => commands::localize(a),
            Command::Cp1Index(a) => commands::cp1_index(a),
            Command::Curvature(a) => commands::curvature(a),
            Command::Resolve(a) => commands::resolve(a),
        }
    }
}

fn emit(report: &Value) {
    let text = serde_json::to_string_pretty(report).expect("serialisable report");
    // a closed pipe is not worth a panic
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn error_report(command: &str, inputs: Value, kind: ErrorKind, message: &str) -> Value {
    json!({
        "schema_version": 1,
        "command": command,
        "inputs": inputs,
        "status": "error",
        "error": {"kind": kind.as_str(), "message": message},
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind as K;
            if matches!(e.kind(), K::DisplayHelp | K::DisplayVersion | K::DisplayHelpOnMissingArgumentOrSubcommand) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let message = e.render().to_string();
            emit(&error_report("", Value::Null, ErrorKind::Usage, message.trim()));
            eprint!("{message}");
            return ExitCode::from(ErrorKind::Usage.exit_code());
        }
    };
    let name = cli.command.name();
    match cli.command.run() {
        Ok((inputs, result, summary)) => {
            emit(&json!({
                "schema_version": 1,
                "command": name,
                "inputs": inputs,
                "status": "ok",
                "result": result,
            }));
            eprintln!("{name}: {summary}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            emit(&error_report(name, e.inputs.clone(), e.kind, &e.message));
            eprintln!("{name}: {} error: {}", e.kind.as_str(), e.message);
            ExitCode::from(e.kind.exit_code())
        }
    }
}
