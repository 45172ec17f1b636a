//! Command-line front end: reads symbol files, runs one check, writes a JSON
//! report to stdout and a one-line summary to stderr.
//!
//! Exit codes: 0 when a verdict was computed (whatever it is), 1 for input
//! errors, 2 for numeric failures.

pub mod report;
pub mod symbol_file;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use toeplitz_lab::blaschke::{hermite_witness, coprimality_test, FiniteBlaschke};
use toeplitz_lab::criteria::{
    classify, find_blaschke_witness, hyponormal_psd_test, nakazi_takahashi_check, operator_normality_test,
    symbol_normality_check, verify_coupled_family, witness_certify,
};
use toeplitz_lab::hardy::{hankel_kernel_inner, hankel_section, section_rank, MatrixSymbol};
use toeplitz_lab::shifts::cowen_long_report;
use toeplitz_lab::tol::DEFAULT_TOL;
use toeplitz_lab::{Complex64, Error};

use report::{emit_report, Format, Report};
use symbol_file::{check_expected, SymbolFile};

pub const TOL_ENV: &str = "TOEPLITZ_LAB_TOL";

#[derive(Parser, Debug)]
#[command(name = "toeplitz-lab", version, about = "Checks for block Toeplitz operators with rational symbols")]
struct Cli {
    /// Output format for stdout.
    #[arg(long, global = true, default_value = "json")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct SymbolArgs {
    /// Symbol file (JSON, schema_version 1).
    #[arg(long)]
    symbol: PathBuf,
    /// Section length N; defaults to the certified length for the symbol.
    #[arg(long)]
    section: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Symbol normality and operator normality of T_Phi.
    CheckNormal(SymbolArgs),
    /// PSD test of the self-commutator section.
    CheckHyponormal(SymbolArgs),
    /// Certify a witness K in E(Phi); for scalar symbols without a witness, search for a Blaschke one.
    CertifyWitness {
        #[command(flatten)]
        s: SymbolArgs,
        /// Witness symbol as inline JSON or a path; overrides the file's witness.
        #[arg(long)]
        witness: Option<String>,
    },
    /// Normal-or-analytic classification with all hypothesis checks.
    Classify(SymbolArgs),
    /// The 2x2 family built from theta, compared against its closed form.
    #[command(name = "remark311")]
    Coupled {
        /// Finite Blaschke product as inline JSON or a path.
        #[arg(long)]
        theta: String,
        #[arg(long, default_value_t = 32)]
        section: usize,
    },
    /// Rank of the Hankel section and the inner function of its kernel.
    KroneckerRank(SymbolArgs),
    /// Berger moment test for the Cowen-Long weighted shift.
    CowenLong {
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 8)]
        k: usize,
    },
    /// Coprimality of B and theta; without --theta, B and theta are extracted from the symbol.
    #[command(name = "lemma312")]
    Coprimality {
        #[arg(long)]
        symbol: PathBuf,
        #[arg(long)]
        theta: Option<String>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::CheckNormal(_) => "check-normal",
            Command::CheckHyponormal(_) => "check-hyponormal",
            Command::CertifyWitness { .. } => "certify-witness",
            Command::Classify(_) => "classify",
            Command::Coupled { .. } => "remark311",
            Command::KroneckerRank(_) => "kronecker-rank",
            Command::CowenLong { .. } => "cowen-long",
            Command::Coprimality { .. } => "lemma312",
        }
    }
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Numeric(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_input_error() {
            Failure::Input(e.to_string())
        } else {
            Failure::Numeric(e.to_string())
        }
    }
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Input(_) => 1,
            Failure::Numeric(_) => 2,
        }
    }
}

fn read_symbol_file(path: &PathBuf) -> Result<SymbolFile, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    SymbolFile::parse(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// Inline JSON when the argument starts with `{`, otherwise a path.
fn inline_or_file<T: serde::de::DeserializeOwned>(arg: &str) -> Result<T, Failure> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| Failure::Input(format!("{arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("schema violation: {e}")))
}

fn tolerance() -> Result<f64, Failure> {
    match std::env::var(TOL_ENV) {
        Err(_) => Ok(DEFAULT_TOL),
        Ok(s) => match s.trim().parse::<f64>() {
            Ok(t) if t > 0.0 && t.is_finite() => Ok(t),
            _ => Err(Failure::Input(format!("{TOL_ENV}={s:?} is not a positive number"))),
        },
    }
}

fn blaschke_json(b: &FiniteBlaschke) -> Value {
    serde_json::to_value(b).expect("plain data")
}

fn c2(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

struct Outcome {
    body: Value,
    summary: String,
    file: Option<SymbolFile>,
}

fn section_len(phi: &MatrixSymbol, requested: Option<usize>) -> usize {
    requested.unwrap_or_else(|| phi.certified_section_length())
}

fn with_id(file: &SymbolFile, mut body: Value) -> Value {
    if let (Some(id), Value::Object(m)) = (&file.id, &mut body) {
        let mut out = serde_json::Map::new();
        out.insert("symbol_id".into(), json!(id));
        out.extend(std::mem::take(m));
        return Value::Object(out);
    }
    body
}

fn execute(cmd: &Command, tol: f64) -> Result<Outcome, Failure> {
    match cmd {
        Command::CheckNormal(a) => {
            let f = read_symbol_file(&a.symbol)?;
            let len = section_len(&f.symbol, a.section);
            let sym = symbol_normality_check(&f.symbol)?;
            let op = operator_normality_test(&f.symbol, len, tol)?;
            let body = with_id(&f, json!({"section_length": len, "symbol": sym, "operator": op}));
            let summary = format!("symbol normal: {}, operator normal: {}", sym.normal, op.normal);
            Ok(Outcome { body, summary, file: Some(f) })
        }
        Command::CheckHyponormal(a) => {
            let f = read_symbol_file(&a.symbol)?;
            let len = section_len(&f.symbol, a.section);
            let v = hyponormal_psd_test(&f.symbol, len, tol)?;
            let summary = format!("{:?} (min eigenvalue {:.6e}, N = {len})", v.verdict, v.min_eigenvalue);
            let mut body = serde_json::to_value(&v).expect("plain data");
            body["section_length"] = json!(len);
            Ok(Outcome { body: with_id(&f, body), summary, file: Some(f) })
        }
        Command::CertifyWitness { s, witness } => {
            let f = read_symbol_file(&s.symbol)?;
            let k = match witness {
                Some(w) => Some(inline_or_file::<MatrixSymbol>(w)?),
                None => f.witness.clone(),
            };
            let body = match k {
                Some(k) => {
                    if k.n() != f.symbol.n() {
                        return Err(Failure::Input("witness and symbol sizes differ".into()));
                    }
                    let cert = witness_certify(&f.symbol, &k)?;
                    json!({"source": "supplied", "certificate": cert})
                }
                None if f.symbol.n() == 1 => match find_blaschke_witness(&f.symbol)? {
                    Some(b) => {
                        let nt = nakazi_takahashi_check(&f.symbol, &b, tol)?;
                        json!({"source": "search", "blaschke": blaschke_json(&b), "certificate": nt.certificate,
                               "rank": nt.rank, "degree": nt.degree, "rank_equals_degree": nt.holds})
                    }
                    None => json!({"source": "search", "blaschke": null, "certificate": null}),
                },
                None => return Err(Failure::Input("matrix symbols need a witness (--witness or file field)".into())),
            };
            let certified = body["certificate"]["certified"].as_bool().unwrap_or(false);
            let summary = format!("witness certified: {certified}");
            Ok(Outcome { body: with_id(&f, body), summary, file: Some(f) })
        }
        Command::Classify(a) => {
            let f = read_symbol_file(&a.symbol)?;
            let len = section_len(&f.symbol, a.section);
            let r = classify(&f.symbol, len, tol)?;
            let summary = format!("conclusion: {:?}", r.conclusion);
            let body = with_id(&f, serde_json::to_value(&r).expect("plain data"));
            Ok(Outcome { body, summary, file: Some(f) })
        }
        Command::Coupled { theta, section } => {
            let theta: FiniteBlaschke = inline_or_file(theta)?;
            let r = verify_coupled_family(&theta, *section, tol)?;
            let summary =
                format!("matches prediction: {} (rank {}, commutator error {:.3e})", r.matches_prediction, r.rank, r.commutator_error);
            let mut body = json!({"theta": blaschke_json(&theta)});
            body.as_object_mut().unwrap().extend(serde_json::to_value(&r).expect("plain data").as_object().unwrap().clone());
            Ok(Outcome { body, summary, file: None })
        }
        Command::KroneckerRank(a) => {
            let f = read_symbol_file(&a.symbol)?;
            let phi = &f.symbol;
            let theta = phi.coanalytic_inner()?;
            let len = a.section.unwrap_or(phi.n() * theta.degree() + 12).max(1);
            let h = hankel_section(phi, len)?;
            let rank = section_rank(&h, 1e-7);
            let kernel_inner = match hankel_kernel_inner(phi) {
                Ok(t) => blaschke_json(&t),
                Err(Error::NotReducible) => Value::Null,
                Err(e) => return Err(e.into()),
            };
            let body = with_id(
                &f,
                json!({"section_length": len, "rank": rank, "expected_rank": phi.n() * theta.degree(),
                       "tail_bound": h.tail_bound, "kernel_inner": kernel_inner}),
            );
            Ok(Outcome { body, summary: format!("Hankel rank {rank} at N = {len}"), file: Some(f) })
        }
        Command::CowenLong { alpha, k } => {
            let r = cowen_long_report(*alpha, *k)?;
            let summary = format!("{:?} (min eigenvalues {:.3e}, {:.3e})", r.verdict, r.min_eig_h0, r.min_eig_h1);
            Ok(Outcome { body: serde_json::to_value(&r).expect("plain data"), summary, file: None })
        }
        Command::Coprimality { symbol, theta } => {
            let f = read_symbol_file(symbol)?;
            let (b, theta) = match theta {
                Some(t) => (f.symbol.clone(), inline_or_file::<FiniteBlaschke>(t)?),
                None => {
                    let t = f.symbol.coanalytic_inner()?;
                    (f.symbol.coanalytic_cofactor(&t), t)
                }
            };
            let v = coprimality_test(&b, &theta)?;
            let mut witnesses = Vec::new();
            for a in &v.failing {
                let w = hermite_witness(&b, &theta, Complex64::new(a[0], a[1]))?;
                witnesses.push(json!({
                    "alpha": c2(w.alpha),
                    "multiplicity": w.multiplicity,
                    "components": w.components,
                    "hankel_residual": w.hankel_residual,
                    "angle": w.angle,
                }));
            }
            let summary = format!("coprime: {}", v.coprime);
            let body = with_id(&f, json!({"theta": blaschke_json(&theta), "verdict": v, "witnesses": witnesses}));
            Ok(Outcome { body, summary, file: Some(f) })
        }
    }
}

/// Parse `args` (including the program name), run the command and return the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return 1;
            }
            let _ = write!(out, "{e}");
            return 0;
        }
    };
    let result = tolerance().and_then(|tol| execute(&cli.command, tol).map(|o| (o, tol)));
    match result {
        Ok((o, tol)) => {
            let mut body = o.body;
            let mut summary = o.summary;
            if let Some(exp) = o.file.as_ref().and_then(|f| f.expected_for(cli.command.name())) {
                let mismatches = check_expected(exp, &body);
                let list: Vec<Value> = mismatches
                    .iter()
                    .map(|m| json!({"path": m.path, "expected": m.expected, "actual": m.actual}))
                    .collect();
                if !mismatches.is_empty() {
                    summary.push_str(&format!("; {} expectation(s) not met", mismatches.len()));
                }
                body["expectations"] = json!({"checked": exp.len(), "mismatches": list});
            }
            let r = Report::new(cli.command.name(), tol, body);
            let _ = out.write_all(emit_report(&r, cli.format).as_bytes());
            let _ = writeln!(err, "{}: {summary}", cli.command.name());
            0
        }
        Err(f) => {
            let (Failure::Input(msg) | Failure::Numeric(msg)) = &f;
            let kind = if f.code() == 1 { "input error" } else { "numeric failure" };
            let _ = writeln!(err, "{}: {kind}: {msg}", cli.command.name());
            f.code()
        }
    }
}
