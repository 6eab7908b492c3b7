use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use unichaos::chaos_verdicts::{
    construct_sensitivity_main, construct_sensitivity_mixing, devaney_verdict, revalidate, verify_sensitivity,
    DeskSystem, FiniteSystemDoc, ParametersDoc, PointDoc, Revalidation, ScaleParameters, SensitivityCertificate,
    SensitivityReport, SystemDoc, VerdictError, VerdictReport,
};
use unichaos::relation_algebra::{check_base_axioms, is_hausdorff_base, AxiomReport, BaseDoc};
use unichaos::shift_spaces::ConfigurationDoc;

const TOOL: &str = "unichaos";
const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(name = "unichaos", version, about = "Sensitivity and chaos verdicts for group actions at desk scale")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct ScaleFlags {
    /// Depth of the neighborhood basis.
    #[arg(long)]
    scale: Option<usize>,
    /// Radius of the group ball quantified over.
    #[arg(long)]
    ball: Option<usize>,
    /// Largest orbit accepted as periodic.
    #[arg(long)]
    period_bound: Option<usize>,
}

impl ScaleFlags {
    fn doc(&self) -> ParametersDoc {
        ParametersDoc {
            scale: self.scale,
            ball: self.ball,
            period_bound: self.period_bound,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum RouteArg {
    Main,
    Mixing,
}

#[derive(Subcommand)]
enum Command {
    /// Run every verifier on a system file and report the verdicts.
    Analyze {
        file: PathBuf,
        #[command(flatten)]
        scale: ScaleFlags,
        /// Print the full JSON report.
        #[arg(long)]
        json: bool,
        /// Exit with status 2 unless the system is chaotic and sensitive.
        #[arg(long)]
        expect_chaotic: bool,
    },
    /// Build a sensitivity certificate, or revalidate one with --revalidate.
    Certify {
        /// A system file, or a certificate file with --revalidate.
        file: PathBuf,
        #[arg(long, value_enum, required_unless_present = "revalidate")]
        route: Option<RouteArg>,
        /// First point for the mixing route: a JSON point, a word, or a carrier name.
        #[arg(long)]
        x1: Option<String>,
        #[arg(long)]
        x2: Option<String>,
        #[command(flatten)]
        scale: ScaleFlags,
        /// Write the certificate document here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Re-check a stored certificate without rerunning any search.
        #[arg(long, conflicts_with_all = ["route", "x1", "x2", "out"])]
        revalidate: bool,
    },
    /// Check the uniform-structure axioms of a finite base.
    Axioms { file: PathBuf },
}

/// Failure with its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<VerdictError> for Failure {
    fn from(e: VerdictError) -> Self {
        let code = if matches!(e, VerdictError::Hypothesis(_)) { 2 } else { 1 };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

#[derive(Serialize)]
struct ReportDocument<'a> {
    tool: &'static str,
    version: &'static str,
    input: &'a Value,
    parameters: ScaleParameters,
    verdict: &'a VerdictReport,
    timing_ms: u128,
}

#[derive(Serialize, Deserialize)]
struct CertificateDocument {
    tool: String,
    version: String,
    certificate: SensitivityCertificate,
    sensitivity: Value,
    #[serde(default)]
    timing_ms: u128,
}

#[derive(Serialize)]
struct AxiomsDocument<'a> {
    tool: &'static str,
    version: &'static str,
    axioms: &'a AxiomReport,
    all_pass: bool,
    hausdorff: Option<bool>,
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn parse<T: for<'de> Deserialize<'de>>(path: &Path, value: &Value) -> Result<T, Failure> {
    T::deserialize(value).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load_system(path: &Path, flags: &ScaleFlags) -> Result<(Value, SystemDoc, DeskSystem), Failure> {
    let value = read_json(path)?;
    let doc: SystemDoc = parse(path, &value)?;
    let params = doc.parameters(flags.doc())?;
    let system = doc.build(params)?;
    Ok((value, doc, system))
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

fn mark(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "fail"
    }
}

fn summary(path: &Path, r: &VerdictReport) -> String {
    let p = r.parameters;
    let mut out = String::new();
    let _ = writeln!(out, "{}", path.display());
    let _ = writeln!(
        out,
        "  scale {}, ball {}, period bound {}, {} sampled points",
        p.scale, p.ball, p.period_bound, r.sample_size
    );
    let rows = [
        ("perfect", r.perfect.pass, r.perfect.isolated.clone().map(|n| format!("isolated {n}"))),
        (
            "transitive",
            r.transitive.pass,
            r.transitive.failure.as_ref().map(|(a, b)| format!("no g moves {a} onto {b}")),
        ),
        (
            "mixing",
            r.mixing.pass,
            r.mixing.failure.as_ref().map(|(a, b)| format!("exceptional set of ({a}, {b}) reaches the ball edge")),
        ),
        (
            "periodic dense",
            r.periodic_dense.pass,
            Some(format!("{}, {} gaps", r.periodic_dense.method, r.periodic_dense.gaps.len())),
        ),
        (
            "sensitive",
            r.sensitive.report.pass,
            Some(format!("entourage from the {} route", r.sensitive.source)),
        ),
        ("expansive", r.expansive.pass, None),
    ];
    for (name, pass, note) in rows {
        match note {
            Some(n) => {
                let _ = writeln!(out, "  {name:<16}{:<6}{n}", mark(pass));
            }
            None => {
                let _ = writeln!(out, "  {name:<16}{}", mark(pass));
            }
        }
    }
    let _ = writeln!(out, "  {:<16}{}", "devaney chaotic", if r.devaney_chaotic { "yes" } else { "no" });
    out
}

fn analyze(file: &Path, scale: &ScaleFlags, json: bool, expect_chaotic: bool) -> Result<(), Failure> {
    let start = Instant::now();
    let (input, _, system) = load_system(file, scale)?;
    let verdict = devaney_verdict(&system)?;
    if json {
        let doc = ReportDocument {
            tool: TOOL,
            version: VERSION,
            input: &input,
            parameters: system.params(),
            verdict: &verdict,
            timing_ms: start.elapsed().as_millis(),
        };
        println!("{}", to_json(&doc));
    } else {
        print!("{}", summary(file, &verdict));
    }
    if expect_chaotic && !(verdict.devaney_chaotic && verdict.sensitive.report.pass) {
        return Err(Failure {
            code: 2,
            message: "the system is not evidenced chaotic and sensitive at this scale".into(),
        });
    }
    Ok(())
}

/// A point given on the command line: JSON first, then a bare word for
/// subshifts or a carrier name for finite systems.
fn point_arg(system: &DeskSystem, spec: &str) -> PointDoc {
    let doc = serde_json::from_str::<PointDoc>(spec).unwrap_or_else(|_| PointDoc::Carrier(spec.to_string()));
    match (system, doc) {
        (DeskSystem::Shift(_), PointDoc::Carrier(w)) => PointDoc::Configuration(ConfigurationDoc::Word(w)),
        (_, doc) => doc,
    }
}

#[allow(clippy::too_many_arguments)]
fn certify(
    file: &Path,
    route: RouteArg,
    x1: Option<&str>,
    x2: Option<&str>,
    scale: &ScaleFlags,
    out: Option<&Path>,
) -> Result<(), Failure> {
    let start = Instant::now();
    let (_, doc, system) = load_system(file, scale)?;
    let mut cert = match route {
        RouteArg::Main => {
            if x1.is_some() || x2.is_some() {
                return Err(Failure::input("--x1 and --x2 belong to the mixing route"));
            }
            construct_sensitivity_main(&system)?
        }
        RouteArg::Mixing => {
            let (Some(x1), Some(x2)) = (x1, x2) else {
                return Err(Failure::input("the mixing route needs --x1 and --x2"));
            };
            construct_sensitivity_mixing(&system, &point_arg(&system, x1), &point_arg(&system, x2))?
        }
    };
    let u = cert.u.build(&system)?;
    let sensitivity: SensitivityReport = verify_sensitivity(&system, &u)?;
    cert.system = Some(SystemDoc {
        parameters: Some(ParametersDoc {
            scale: Some(cert.parameters.scale),
            ball: Some(cert.parameters.ball),
            period_bound: Some(cert.parameters.period_bound),
        }),
        ..doc
    });
    let document = CertificateDocument {
        tool: TOOL.into(),
        version: VERSION.into(),
        certificate: cert,
        sensitivity: serde_json::to_value(&sensitivity).expect("reports serialize"),
        timing_ms: start.elapsed().as_millis(),
    };
    let text = to_json(&document);
    match out {
        Some(path) => fs::write(path, text + "\n").map_err(|e| Failure::input(format!("{}: {e}", path.display())))?,
        None => println!("{text}"),
    }
    if sensitivity.pass {
        Ok(())
    } else {
        Err(Failure {
            code: 2,
            message: "the certified entourage has a cell without a sensitivity witness".into(),
        })
    }
}

fn revalidate_file(file: &Path) -> Result<(), Failure> {
    let value = read_json(file)?;
    let cert: SensitivityCertificate = match value.get("certificate") {
        Some(inner) => parse(file, inner)?,
        None => parse(file, &value)?,
    };
    let doc = cert
        .system
        .clone()
        .ok_or_else(|| Failure::input("the certificate does not record its system"))?;
    let system = doc.build(cert.parameters)?;
    let result: Revalidation = revalidate(&cert, &system)?;
    println!("{}", to_json(&result));
    if result.pass {
        Ok(())
    } else {
        Err(Failure {
            code: 2,
            message: "the certificate does not revalidate".into(),
        })
    }
}

/// A bare base, or a system file with a finite system.
#[derive(Deserialize)]
#[serde(untagged)]
enum AxiomsInput {
    Base(BaseDoc),
    System { finite_system: FiniteSystemDoc },
}

fn axioms(file: &Path) -> Result<(), Failure> {
    let value = read_json(file)?;
    let base = match AxiomsInput::deserialize(&value) {
        Ok(AxiomsInput::Base(doc)) => doc.into_base().map_err(|e| Failure::input(e.to_string()))?,
        Ok(AxiomsInput::System { finite_system }) => finite_system.base()?,
        Err(_) => {
            // report the base schema error, which names the offending key
            let doc: BaseDoc = parse(file, &value)?;
            doc.into_base().map_err(|e| Failure::input(e.to_string()))?
        }
    };
    let report = check_base_axioms(&base);
    let all_pass = report.all_pass();
    let hausdorff = if all_pass {
        Some(is_hausdorff_base(&base).map_err(|e| Failure::input(e.to_string()))?)
    } else {
        None
    };
    let doc = AxiomsDocument {
        tool: TOOL,
        version: VERSION,
        axioms: &report,
        all_pass,
        hausdorff,
    };
    println!("{}", to_json(&doc));
    if all_pass {
        Ok(())
    } else {
        Err(Failure {
            code: 2,
            message: "the base fails the uniform-structure axioms".into(),
        })
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Analyze {
            file,
            scale,
            json,
            expect_chaotic,
        } => analyze(file, scale, *json, *expect_chaotic),
        Command::Certify {
            file,
            revalidate: true,
            ..
        } => revalidate_file(file),
        Command::Certify {
            file,
            route,
            x1,
            x2,
            scale,
            out,
            ..
        } => certify(
            file,
            route.expect("clap requires a route"),
            x1.as_deref(),
            x2.as_deref(),
            scale,
            out.as_deref(),
        ),
        Command::Axioms { file } => axioms(file),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
