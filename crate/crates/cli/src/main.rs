use std::io::Read;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};
use supercardy::mf::{check_dao, mf_to_cf};
use supercardy::{
    build_elementary, classify, direct_sum_cf, verify_all, CFData, ElementaryParams, Rational,
};

use supercardy_cli::doc::{parse, parse_kind, CfAlgebraDoc, Document, ElementaryDoc, Q};
use supercardy_cli::report::{Report, EXIT_INPUT, EXIT_OK};

#[derive(Parser)]
#[command(
    name = "supercardy",
    version,
    about = "Verify and classify super Cardy-Frobenius algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Output {
    /// Emit the JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for the randomised splitting steps.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Check every axiom on a cf_algebra or elementary document.
    Verify {
        /// Input document, or "-" for stdin.
        file: String,
        #[command(flatten)]
        out: Output,
    },
    /// Decompose a cf_algebra document into elementary summands.
    Classify {
        file: String,
        #[command(flatten)]
        out: Output,
    },
    /// Work with a matrix_factorization document.
    #[command(group(ArgGroup::new("action").required(true).args(["dao", "verify", "classify", "emit_cf"])))]
    Mf {
        file: String,
        /// Compute chi(End R) for an odd number of variables.
        #[arg(long)]
        dao: bool,
        /// Build the Cardy-Frobenius data and check every axiom.
        #[arg(long)]
        verify: bool,
        /// Build the Cardy-Frobenius data and classify it.
        #[arg(long)]
        classify: bool,
        /// Print the Cardy-Frobenius data as a cf_algebra document.
        #[arg(long)]
        emit_cf: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Print an elementary document, or a cf_algebra document for a direct sum.
    ///
    /// Summands are written triv:LAMBDA, mat:N:M:LAMBDA:MU or q:N:LAMBDA:MU.
    Construct {
        #[arg(required = true)]
        summands: Vec<String>,
        /// Always emit a cf_algebra document, even for one summand.
        #[arg(long)]
        cf: bool,
        /// Apply a random graded change of basis with this seed.
        #[arg(long)]
        scramble: Option<u64>,
    },
}

fn read_input(file: &str) -> Result<String, String> {
    if file == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| format!("reading stdin: {e}"))?;
        Ok(s)
    } else {
        std::fs::read_to_string(file).map_err(|e| format!("reading {file}: {e}"))
    }
}

fn load_cf(doc: Document, allow_elementary: bool) -> Result<CFData<Rational>, String> {
    match doc {
        Document::CfAlgebra(d) => d.build(),
        Document::Elementary(d) if allow_elementary => {
            build_elementary(&d.params()?).map_err(|e| e.to_string())
        }
        Document::Elementary(_) => Err("expected a cf_algebra document, got elementary".into()),
        Document::MatrixFactorization(_) => {
            Err("matrix_factorization documents go through the mf subcommand".into())
        }
    }
}

fn run_verify(file: &str) -> Report {
    let cf = read_input(file)
        .and_then(|t| parse(&t))
        .and_then(|d| load_cf(d, true));
    match cf {
        Ok(cf) => Report::verification("verify", &verify_all(&cf)),
        Err(e) => Report::input_error("verify", e),
    }
}

fn run_classify(file: &str, seed: u64) -> Report {
    let cf = read_input(file)
        .and_then(|t| parse(&t))
        .and_then(|d| load_cf(d, false));
    match cf {
        Ok(cf) => Report::classification("classify", &classify(&cf, seed)),
        Err(e) => Report::input_error("classify", e),
    }
}

enum MfAction {
    Dao,
    Verify,
    Classify,
    EmitCf,
}

enum MfOutcome {
    Report(Report),
    Document(String),
}

fn run_mf(file: &str, action: MfAction, seed: u64) -> MfOutcome {
    let mf = read_input(file)
        .and_then(|t| parse(&t))
        .and_then(|d| match d {
            Document::MatrixFactorization(m) => m.build(),
            _ => Err("expected a matrix_factorization document".into()),
        });
    let mf = match mf {
        Ok(m) => m,
        Err(e) => return MfOutcome::Report(Report::input_error("mf", e)),
    };
    if let MfAction::Dao = action {
        return MfOutcome::Report(match check_dao(&mf) {
            Ok(d) => Report::dao("mf", &d),
            Err(e) => Report::input_error("mf", e.to_string()),
        });
    }
    let cf = match mf_to_cf(&mf) {
        Ok(cf) => cf,
        Err(e) => return MfOutcome::Report(Report::input_error("mf", e.to_string())),
    };
    match action {
        MfAction::Verify => MfOutcome::Report(Report::verification("mf", &verify_all(&cf))),
        MfAction::Classify => MfOutcome::Report(Report::classification("mf", &classify(&cf, seed))),
        MfAction::EmitCf => MfOutcome::Document(to_json(&CfAlgebraDoc::from_cf(&cf))),
        MfAction::Dao => unreachable!(),
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("document serializes");
    s.push('\n');
    s
}

fn parse_summand(summand: &str) -> Result<ElementaryParams<Rational>, String> {
    let parts: Vec<&str> = summand.split(':').collect();
    let kind = parse_kind(parts[0])?;
    let rat = |s: &str| -> Result<Rational, String> {
        serde_json::from_value::<Q>(serde_json::Value::String(s.into()))
            .map(|q| q.0)
            .map_err(|e| format!("{summand}: {e}"))
    };
    let size = |s: &str| s.parse::<usize>().map_err(|e| format!("{summand}: {e}"));
    let p = match (kind, parts.as_slice()) {
        (supercardy::ElementaryKind::Triv, [_, l]) => ElementaryParams::triv(rat(l)?),
        (supercardy::ElementaryKind::Mat, [_, n, m, l, mu]) => {
            ElementaryParams::mat(size(n)?, size(m)?, rat(l)?, rat(mu)?)
        }
        (supercardy::ElementaryKind::Q, [_, n, l, mu]) => {
            ElementaryParams::q(size(n)?, rat(l)?, rat(mu)?)
        }
        _ => {
            return Err(format!(
                "bad summand {summand:?}; use triv:LAMBDA, mat:N:M:LAMBDA:MU or q:N:LAMBDA:MU"
            ))
        }
    };
    p.validate().map_err(|e| format!("{summand}: {e}"))?;
    Ok(p)
}

fn run_construct(summands: &[String], cf: bool, scramble: Option<u64>) -> Result<String, String> {
    let params = summands
        .iter()
        .map(|s| parse_summand(s))
        .collect::<Result<Vec<_>, _>>()?;
    if params.len() == 1 && !cf && scramble.is_none() {
        return Ok(to_json(&ElementaryDoc::from_params(&params[0])));
    }
    let mut total: Option<CFData<Rational>> = None;
    for p in &params {
        let c = build_elementary(p).map_err(|e| e.to_string())?;
        total = Some(match total {
            None => c,
            Some(t) => direct_sum_cf(&t, &c),
        });
    }
    let mut total = total.expect("at least one summand");
    if let Some(seed) = scramble {
        total = total.scramble(seed);
    }
    Ok(to_json(&CfAlgebraDoc::from_cf(&total)))
}

fn emit(report: &Report, json: bool) -> ExitCode {
    if json {
        print!("{}", report.to_json());
    } else if report.exit_code == EXIT_INPUT {
        eprint!("{}", report.to_text());
    } else {
        print!("{}", report.to_text());
    }
    ExitCode::from(report.exit_code as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify { file, out } => emit(&run_verify(&file), out.json),
        Command::Classify { file, out } => emit(&run_classify(&file, out.seed), out.json),
        Command::Mf {
            file,
            dao,
            verify,
            classify,
            emit_cf: _,
            out,
        } => {
            let action = if dao {
                MfAction::Dao
            } else if verify {
                MfAction::Verify
            } else if classify {
                MfAction::Classify
            } else {
                MfAction::EmitCf
            };
            match run_mf(&file, action, out.seed) {
                MfOutcome::Report(r) => emit(&r, out.json),
                MfOutcome::Document(d) => {
                    print!("{d}");
                    ExitCode::from(EXIT_OK as u8)
                }
            }
        }
        Command::Construct {
            summands,
            cf,
            scramble,
        } => match run_construct(&summands, cf, scramble) {
            Ok(doc) => {
                print!("{doc}");
                ExitCode::from(EXIT_OK as u8)
            }
            Err(e) => {
                eprintln!("construct: input_error\n  {e}");
                ExitCode::from(EXIT_INPUT as u8)
            }
        },
    }
}
