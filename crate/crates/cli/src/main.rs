use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use conjclass::json::{
    analyze_report, matrix_from_json, mreport_to_json, oracle_to_csv, oracle_to_json,
    stable_report_to_json, witness_from_json, witness_to_json,
};
use conjclass::oracle::{sweep, DEFAULT_TABLE_CAP};
use conjclass::stable::{stable_m, StableElement};
use conjclass::{classify, verify_witness, witness, Error, FieldSpec, Mat};

#[derive(Parser)]
#[command(name = "conjclass", version, about = "Conjugacy classes of GL_n over Q and F_p: m(C), witnesses, oracle")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Args)]
struct Common {
    /// "Q" or "F<p>"; must match the matrix file when that names a field.
    #[arg(long)]
    field: Option<String>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct MatrixArgs {
    #[command(flatten)]
    common: Common,
    /// Matrix JSON file: {"field": ..., "entries": [[...], ...]}.
    #[arg(long)]
    matrix: PathBuf,
}

#[derive(Subcommand)]
enum Cmd {
    /// Invariant factors, Frobenius and Jordan forms with transforms.
    Analyze(MatrixArgs),
    /// The verdict on m(C).
    Mvalue(MatrixArgs),
    /// A verified decomposition of t_12(1).
    Witness(MatrixArgs),
    /// Re-checks a witness file against a matrix file.
    Verify {
        #[command(flatten)]
        m: MatrixArgs,
        #[arg(long)]
        witness: PathBuf,
    },
    /// Brute-force m_min for every noncentral E-class, compared with the classifier.
    Oracle {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Cap on p^(n^2), the size of the enumeration table.
        #[arg(long, default_value_t = DEFAULT_TABLE_CAP)]
        table_cap: u64,
    },
    /// The stable class in GL_infinity and its m(C).
    Stable(MatrixArgs),
}

/// Exit status: 0 success, 2 verification failure, 1 anything else.
enum Failure {
    Verification(Value),
    Other(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        match e.downcast_ref::<Error>() {
            Some(Error::VerificationFailed(_)) => Failure::Verification(error_json(&e)),
            _ => Failure::Other(e),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        anyhow::Error::from(e).into()
    }
}

fn error_json(e: &anyhow::Error) -> Value {
    let code = e.downcast_ref::<Error>().map_or("E_IO", |c| c.code());
    json!({ "error": code, "message": format!("{e:#}") })
}

fn parse_field(s: &Option<String>) -> Result<Option<FieldSpec>, Failure> {
    s.as_deref()
        .map(|s| s.parse::<FieldSpec>().map_err(Failure::from))
        .transpose()
}

fn read_json(path: &Path) -> anyhow::Result<Value> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
        .map_err(Into::into)
}

fn read_matrix(args: &MatrixArgs) -> Result<Mat, Failure> {
    let field = parse_field(&args.common.field)?;
    let v = read_json(&args.matrix)?;
    Ok(matrix_from_json(&v, field)?)
}

fn render_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            if let (Some(Value::String(f)), Some(Value::Array(rows))) = (map.get("field"), map.get("entries")) {
                out.push_str(&format!("{pad}[{f}]\n"));
                for r in rows {
                    let cells: Vec<String> = r
                        .as_array()
                        .map(|r| r.iter().map(|x| x.as_str().unwrap_or_default().to_string()).collect())
                        .unwrap_or_default();
                    out.push_str(&format!("{pad}  {}\n", cells.join(" ")));
                }
                return;
            }
            for (k, x) in map {
                match x {
                    Value::Object(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_text(x, indent + 1, out);
                    }
                    Value::Array(a) if a.iter().any(|e| e.is_object()) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        for e in a {
                            render_text(e, indent + 1, out);
                            out.push_str(&format!("{pad}  --\n"));
                        }
                    }
                    _ => out.push_str(&format!("{pad}{k}: {x}\n")),
                }
            }
        }
        _ => out.push_str(&format!("{pad}{v}\n")),
    }
}

fn emit(common: &Common, v: &Value, csv: Option<String>) -> anyhow::Result<()> {
    let text = match common.format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(v)?),
        Format::Text => {
            let mut s = String::new();
            render_text(v, 0, &mut s);
            s
        }
        Format::Csv => csv.ok_or_else(|| Error::Parse("csv output is only available for oracle".into()))?,
    };
    match &common.out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.cmd {
        Cmd::Analyze(a) => {
            let m = read_matrix(&a)?;
            emit(&a.common, &analyze_report(&m)?, None)?;
        }
        Cmd::Mvalue(a) => {
            let m = read_matrix(&a)?;
            emit(&a.common, &mreport_to_json(&classify(&m)?), None)?;
        }
        Cmd::Witness(a) => {
            let m = read_matrix(&a)?;
            match witness(&m) {
                Ok(w) => emit(&a.common, &witness_to_json(&w), None)?,
                Err(e @ Error::VerificationFailed(_)) => return Err(e.into()),
                Err(e) => {
                    let report = json!({
                        "error": "E_SYNTHESIS_FAILED",
                        "cause": e.code(),
                        "message": e.to_string(),
                    });
                    emit(&a.common, &report, None)?;
                    return Err(Failure::Other(anyhow::Error::from(e)));
                }
            }
        }
        Cmd::Verify { m, witness: wpath } => {
            let sigma = read_matrix(&m)?;
            let w = witness_from_json(&read_json(&wpath)?, &sigma)?;
            let ok = verify_witness(&w);
            let report = json!({ "verified": ok, "length": w.len(), "signs": w.signs() });
            emit(&m.common, &report, None)?;
            if !ok {
                return Err(Failure::Verification(report));
            }
        }
        Cmd::Oracle { common, n, table_cap } => {
            let field = parse_field(&common.field)?
                .ok_or_else(|| Failure::Other(Error::Parse("oracle needs --field".into()).into()))?;
            let s = sweep(field, n, table_cap)?;
            emit(&common, &oracle_to_json(&s), Some(oracle_to_csv(&s)))?;
            if s.rows.iter().any(|r| !r.agreement) {
                return Err(Failure::Verification(json!({ "error": "E_VERIFICATION_FAILED", "message": "oracle disagrees with the classifier" })));
            }
        }
        Cmd::Stable(a) => {
            let m = read_matrix(&a)?;
            let r = stable_m(&StableElement::new(&m)?)?;
            emit(&a.common, &stable_report_to_json(&r), None)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(v)) => {
            eprintln!("{v}");
            ExitCode::from(2)
        }
        Err(Failure::Other(e)) => {
            eprintln!("{}", error_json(&e));
            ExitCode::from(1)
        }
    }
}
