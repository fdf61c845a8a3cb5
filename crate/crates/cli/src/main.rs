mod suites;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use logdiff::arrangement::ArrangementJson;
use logdiff::error::Error;
use logdiff::symmetry::is_normal;
use logdiff::text::parse_element;
use logdiff::window::dims_report;
use logdiff::{Arrangement, TruncationWindow};
use serde::Serialize;
use serde_json::json;

use suites::{Settings, SuiteResult};

#[derive(Parser, Debug)]
#[command(
    name = "logdiff",
    version,
    about = "Verify the structure of the algebra of logarithmic differential operators of a line arrangement"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// JSON file `{"forms": [[a_num, a_den, b_num, b_den], ...]}`
    #[arg(long, global = true, conflicts_with = "r_example")]
    arrangement: Option<PathBuf>,

    /// Use the lines x, y, x−y, …, x−ry
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(3..=8))]
    r_example: Option<u32>,

    /// E-degree bound of the truncation window
    #[arg(long, global = true, default_value_t = 6, value_parser = clap::value_parser!(u32).range(2..))]
    window: u32,

    /// Depth cap for monomial sweeps
    #[arg(long, global = true, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..))]
    depth: u32,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Seed for the randomized samples
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,

    /// Write the report here instead of standard output
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run verification suites
    Verify {
        /// Run every suite
        #[arg(long, conflicts_with = "suite")]
        all: bool,
        /// Comma-separated suite names
        #[arg(long, value_delimiter = ',', value_parser = clap::builder::PossibleValuesParser::new(suites::ALL))]
        suite: Vec<String>,
    },
    /// Hochschild cohomology dimensions in the truncation window
    HhDims,
    /// Graded, inner and normal-element automorphisms
    VerifyAutos,
    /// The twisted Calabi–Yau structure
    VerifyCalabiYau,
    /// Decide whether an element is normal and give its witness
    NormalCheck { element: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Serialize)]
struct RunReport {
    arrangement: serde_json::Value,
    suites: Vec<SuiteResult>,
    pass: bool,
}

struct Failure {
    code: u8,
    message: String,
}

fn malformed(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

fn load(cli: &Cli) -> Result<Arc<Arrangement>, Failure> {
    match &cli.arrangement {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| malformed(format!("cannot read {}: {e}", path.display())))?;
            let json: ArrangementJson = serde_json::from_str(&text)
                .map_err(|e| malformed(format!("malformed arrangement JSON in {}: {e}", path.display())))?;
            Arrangement::from_json(&json).map_err(|e| malformed(format!("invalid arrangement: {e}")))
        }
        None => Arrangement::example(cli.r_example.unwrap_or(3)).map_err(|e| malformed(e.to_string())),
    }
}

fn describe(arr: &Arrangement) -> serde_json::Value {
    json!({
        "r": arr.r(),
        "lines": arr.num_lines(),
        "forms": arr.to_json().forms,
        "Q": arr.q().to_string(),
    })
}

fn emit(cli: &Cli, body: &str) -> Result<(), Failure> {
    match &cli.output {
        Some(path) => {
            fs::write(path, body).map_err(|e| Failure { code: 2, message: format!("cannot write {}: {e}", path.display()) })
        }
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn run_suites(cli: &Cli, arr: &Arc<Arrangement>, names: &[&str]) -> Result<bool, Failure> {
    let settings = Settings { window: cli.window, depth: cli.depth, seed: cli.seed };
    let mut results = Vec::new();
    for name in names {
        eprintln!("running suite {name}");
        results.push(suites::run(name, arr, &settings));
    }
    let report = RunReport { arrangement: describe(arr), pass: results.iter().all(|s| s.pass), suites: results };
    let body = match cli.format {
        Format::Json => serde_json::to_string_pretty(&report).expect("report serializes") + "\n",
        Format::Text => text_report(arr, &report),
    };
    emit(cli, &body)?;
    Ok(report.pass)
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn text_report(arr: &Arrangement, report: &RunReport) -> String {
    let mut out = format!("arrangement {arr} (r = {})\n", arr.r());
    for s in &report.suites {
        let failed = s.checks.iter().filter(|c| !c.pass).count();
        out += &format!("suite {}: {} ({} checks, {failed} failed)\n", s.name, verdict(s.pass), s.checks.len());
        for c in s.checks.iter().filter(|c| !c.pass) {
            out += &format!("  FAIL {} [{}]: {}\n", c.check, c.generator, c.residual.as_deref().unwrap_or(""));
        }
    }
    out += &format!("overall: {}\n", verdict(report.pass));
    out
}

fn hh_dims(cli: &Cli, arr: &Arc<Arrangement>) -> Result<bool, Failure> {
    eprintln!("computing window {} and {}", cli.window, cli.window + 2);
    let rep = dims_report(arr, &TruncationWindow::new(cli.window)).map_err(|e| malformed(e.to_string()))?;
    let pass = rep.stable && rep.dims == rep.expected;
    let body = match cli.format {
        Format::Json => serde_json::to_string_pretty(&rep).expect("report serializes") + "\n",
        Format::Text => format!(
            "r = {} window {}: dims {:?}, expected {:?}, stable {}\n",
            rep.r, rep.window, rep.dims, rep.expected, rep.stable
        ),
    };
    emit(cli, &body)?;
    Ok(pass)
}

fn normal_check(cli: &Cli, arr: &Arc<Arrangement>, element: &str) -> Result<bool, Failure> {
    let u = parse_element(arr, element).map_err(|e| malformed(e.to_string()))?;
    let (value, pass) = match is_normal(arr, &u) {
        Ok(w) => (json!({ "element": u.to_string(), "normal": true, "witness": w }), true),
        Err(Error::NotNormal { reason, .. }) => (json!({ "element": u.to_string(), "normal": false, "reason": reason }), false),
        Err(e) => return Err(malformed(e.to_string())),
    };
    let body = match cli.format {
        Format::Json => {
            serde_json::to_string_pretty(&json!({ "arrangement": describe(arr), "result": value })).expect("serializes") + "\n"
        }
        Format::Text => match (&value["witness"], &value["reason"]) {
            (w, _) if !w.is_null() => {
                format!("{u}: normal, λ = {}, exponents {}\n", w["lambda"].as_str().unwrap_or(""), w["exponents"])
            }
            (_, r) => format!("{u}: not normal ({})\n", r.as_str().unwrap_or("")),
        },
    };
    emit(cli, &body)?;
    Ok(pass)
}

fn run(cli: &Cli) -> Result<bool, Failure> {
    let arr = load(cli)?;
    match &cli.command {
        Command::Verify { all, suite } => {
            let names: Vec<&str> = if *all || suite.is_empty() {
                suites::ALL.to_vec()
            } else {
                suites::ALL.iter().copied().filter(|n| suite.iter().any(|s| s == n)).collect()
            };
            run_suites(cli, &arr, &names)
        }
        Command::HhDims => hh_dims(cli, &arr),
        Command::VerifyAutos => run_suites(cli, &arr, &["autos"]),
        Command::VerifyCalabiYau => run_suites(cli, &arr, &["calabi-yau"]),
        Command::NormalCheck { element } => normal_check(cli, &arr, element),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
