use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use jetform::task::{run_task, run_verify_suite, FieldChoice, Options, Outcome, Profile, TaskError};
use serde_json::Value;

#[derive(Parser)]
#[command(
    name = "jetform",
    version,
    about = "Jets, divided differences, Hermite interpolation and coverings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simplex integrals and the face recurrence.
    Simplex(TaskArgs),
    /// Hermite interpolation and the interpolation operator.
    Interp(TaskArgs),
    /// Points of the ideal space: spectra, limits, codimension-3 types.
    Ideal(TaskArgs),
    /// Path splitting, reversal and concatenation.
    Path(TaskArgs),
    /// Resolution complex and spectral sequence of a covering.
    Resolve(TaskArgs),
    /// Randomized acceptance criteria.
    Verify {
        /// `all`, or comma-separated criterion numbers or names.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct TaskArgs {
    /// Task file (JSON).
    task: PathBuf,
    #[arg(long, value_enum)]
    profile: Option<ProfileArg>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_enum)]
    field: Option<FieldArg>,
    #[arg(long)]
    seed: Option<u64>,
    /// Report path; defaults to standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProfileArg {
    Exact,
    Float,
}

#[derive(Clone, Copy, ValueEnum)]
enum FieldArg {
    #[value(name = "Q")]
    Q,
    #[value(name = "F2")]
    F2,
}

fn load(path: &Path) -> Result<Value, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn emit(outcome: &Outcome, out: Option<&Path>) -> Result<(), String> {
    let text = serde_json::to_string_pretty(&outcome.report).expect("serializable report");
    match out {
        Some(path) => {
            fs::write(path, text + "\n").map_err(|e| format!("{}: {e}", path.display()))?;
            if let Some(csv) = &outcome.csv {
                let csv_path = path.with_extension("csv");
                fs::write(&csv_path, csv).map_err(|e| format!("{}: {e}", csv_path.display()))?;
            }
        }
        None => println!("{text}"),
    }
    Ok(())
}

fn run_file(verb: &str, args: TaskArgs) -> Result<Outcome, String> {
    let mut task = load(&args.task)?;
    match task.get("verb").and_then(Value::as_str) {
        Some(v) if v != verb => return Err(format!("task verb \"{v}\" does not match command \"{verb}\"")),
        Some(_) => {}
        None => {
            if let Value::Object(map) = &mut task {
                map.insert("verb".into(), verb.into());
            }
        }
    }
    let opts = Options {
        profile: args.profile.map(|p| match p {
            ProfileArg::Exact => Profile::Exact,
            ProfileArg::Float => Profile::Float,
        }),
        tol: args.tol,
        field: args.field.map(|f| match f {
            FieldArg::Q => FieldChoice::Q,
            FieldArg::F2 => FieldChoice::F2,
        }),
        seed: args.seed,
    };
    let outcome = run_task(&task, &opts).map_err(describe)?;
    emit(&outcome, args.out.as_deref())?;
    Ok(outcome)
}

fn describe(e: TaskError) -> String {
    e.to_string()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Simplex(a) => run_file("simplex", a),
        Command::Interp(a) => run_file("interp", a),
        Command::Ideal(a) => run_file("ideal", a),
        Command::Path(a) => run_file("path", a),
        Command::Resolve(a) => run_file("resolve", a),
        Command::Verify { suite, seed, out } => run_verify_suite(&suite, seed.unwrap_or(jetform::task::DEFAULT_SEED))
            .map_err(describe)
            .and_then(|o| {
                if out.is_none() {
                    for c in o.report["checks"].as_array().into_iter().flatten() {
                        let mark = if c["passed"] == Value::Bool(true) {
                            "PASS"
                        } else {
                            "FAIL"
                        };
                        eprintln!("{mark} {}", c["name"].as_str().unwrap_or(""));
                    }
                }
                emit(&o, out.as_deref()).map(|_| o)
            }),
    };
    match result {
        Ok(o) if o.passed => ExitCode::SUCCESS,
        Ok(_) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
