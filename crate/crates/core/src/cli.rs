//! Command-line front end.
//!
//! Machine output goes to standard output (or `--out`), diagnostics to the
//! error stream. Exit codes: 0 success, 1 invalid arguments, 2 violated
//! precondition, 3 failed verification.

use std::fs::File;
use std::io::{self, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::census::{
    brute_force_enumerate, census_run, count_formula, crt_enumerate, entropy_q, gv_quarter,
    inv_entropy_q, lemma7_audit_with_budget, round12, write_census_csv, CensusOptions,
    DEFAULT_AUDIT_BUDGET,
};
use crate::double_circulant::{CodeRecord, DoubleCirculantCode, DEFAULT_DISTANCE_BUDGET};
use crate::error::Error;
use crate::finite_field::{parse_field, FieldSpec};
use crate::polyring::{artin_condition, factor_profile, factor_xn_minus_1, Poly};
use crate::symmetry::{verify_constadihedral, verify_dihedral};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_VERIFICATION: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "dcc",
    version,
    about = "Self-dual double circulant codes over finite fields"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Factor x^n - 1 into self-reciprocal factors and reciprocal pairs.
    Factor(FieldLength),
    /// Closed-form number of self-dual double circulant codes of length 2n.
    Count(FieldLength),
    /// List every self-dual double circulant code of length 2n.
    Enumerate(EnumerateArgs),
    /// Check self-duality and the dihedral or constadihedral symmetry.
    Verify(CodeArgs),
    /// Minimum distance by exhaustive search.
    Distance(DistanceArgs),
    /// Count codes containing each word of length 2n.
    #[command(name = "lemma7-audit")]
    Lemma7Audit(AuditArgs),
    /// q-ary entropy values and the inverse at 1/4.
    Bound(BoundArgs),
    /// Sweep a range of n and tabulate counts and best distances.
    Census(CensusArgs),
}

#[derive(Args, Debug)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write machine output here instead of standard output.
    #[arg(long)]
    pub out: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
pub struct FieldLength {
    /// Field order as "p^m" or an integer prime power.
    #[arg(long)]
    pub q: String,
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Crt,
    Brute,
}

#[derive(Args, Debug)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub q: String,
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = Method::Crt)]
    pub method: Method,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct CodeArgs {
    #[arg(long, required_unless_present = "code")]
    pub q: Option<String>,
    #[arg(long, required_unless_present = "code")]
    pub n: Option<usize>,
    /// First row of the circulant, coefficients ascending: "c0,c1,...".
    #[arg(long, required_unless_present = "code")]
    pub a: Option<String>,
    /// A code record as emitted by `enumerate`: {"q":..,"n":..,"a":..}.
    #[arg(long, conflicts_with_all = ["q", "n", "a"])]
    pub code: Option<String>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct DistanceArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    /// Also report the weight distribution.
    #[arg(long)]
    pub distribution: bool,
    /// Cap on q^n messages.
    #[arg(long, default_value_t = DEFAULT_DISTANCE_BUDGET)]
    pub budget: u128,
}

#[derive(Args, Debug)]
pub struct AuditArgs {
    #[command(flatten)]
    pub target: FieldLength,
    /// Cap on q^{3n}.
    #[arg(long, default_value_t = DEFAULT_AUDIT_BUDGET)]
    pub budget: u128,
}

#[derive(Args, Debug)]
pub struct BoundArgs {
    #[arg(long)]
    pub q: u64,
    /// Evaluate H_q at this point.
    #[arg(long)]
    pub x: Option<f64>,
    /// Invert H_q at this value.
    #[arg(long)]
    pub y: Option<f64>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct CensusArgs {
    #[arg(long)]
    pub q: String,
    #[arg(long, requires = "n_max", conflicts_with = "n_list")]
    pub n_min: Option<usize>,
    #[arg(long, requires = "n_min")]
    pub n_max: Option<usize>,
    /// Comma-separated lengths.
    #[arg(long, value_delimiter = ',', required_unless_present = "n_min")]
    pub n_list: Option<Vec<usize>>,
    #[arg(long, default_value_t = CensusOptions::default().sample_size)]
    pub sample_size: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Cap on q^n messages per distance computation.
    #[arg(long, default_value_t = CensusOptions::default().budget)]
    pub budget: u128,
    /// Fill the ms column with wall-clock time (output is then no longer
    /// reproducible byte for byte).
    #[arg(long)]
    pub timing: bool,
    #[command(flatten)]
    pub output: Output,
}

/// A failed command: exit code and diagnostic.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Failure {
        Failure {
            code: EXIT_USAGE,
            message: message.to_string(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::Parse(_) => EXIT_USAGE,
            Error::NotSelfDual => EXIT_VERIFICATION,
            _ => EXIT_PRECONDITION,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Failure {
        Failure::usage(e)
    }
}

/// Command output, possibly alongside a verification failure that should
/// still print its report.
struct Emit {
    body: String,
    verdict: Option<String>,
}

fn field_arg(q: &str) -> Result<FieldSpec, Failure> {
    parse_field(q).map_err(Failure::usage)
}

fn code_arg(args: &CodeArgs) -> Result<DoubleCirculantCode, Failure> {
    let rec = match &args.code {
        Some(text) => serde_json::from_str::<CodeRecord>(text)
            .map_err(|e| Failure::usage(format!("--code: {e}")))?,
        None => CodeRecord {
            q: args.q.clone().expect("clap requires q"),
            n: args.n.expect("clap requires n"),
            a: args.a.clone().expect("clap requires a"),
        },
    };
    let field = field_arg(&rec.q)?;
    let a = Poly::parse(&field, &rec.a).map_err(Failure::usage)?;
    Ok(DoubleCirculantCode::new(&field, rec.n, a)?)
}

fn pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable output");
    s.push('\n');
    s
}

fn csv_string(header: &[&str], rows: &[Vec<String>]) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(io::Error::from)?;
    for r in rows {
        w.write_record(r).map_err(io::Error::from)?;
    }
    Ok(String::from_utf8(w.into_inner().map_err(|e| e.into_error())?).expect("csv is utf-8"))
}

fn factor(args: &FieldLength) -> Result<Emit, Failure> {
    let field = field_arg(&args.q)?;
    let profile = factor_profile(args.n, field.q() as u64)?;
    let artin = artin_condition(field.q() as u64, args.n).ok();
    // the full factorization needs the splitting field to fit in the table limit
    let factorization = match factor_xn_minus_1(args.n, &field) {
        Ok(f) => Some(f),
        Err(Error::FieldTooLarge { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    let body = match args.output.format {
        Format::Json => pretty(&json!({
            "n": args.n,
            "q": field,
            "profile": profile,
            "artin": artin,
            "factorization": factorization,
        })),
        Format::Csv => {
            let f = factorization.ok_or_else(|| Failure {
                code: EXIT_PRECONDITION,
                message: "splitting field too large for explicit factors; use --format json for the profile".into(),
            })?;
            let mut rows: Vec<Vec<String>> = f
                .self_reciprocal
                .iter()
                .map(|g| {
                    vec![
                        "self_reciprocal".into(),
                        g.poly.to_coeff_string(),
                        g.poly.degree().unwrap_or(0).to_string(),
                    ]
                })
                .collect();
            for p in &f.pairs {
                for h in [&p.h, &p.h_star] {
                    rows.push(vec![
                        "pair".into(),
                        h.to_coeff_string(),
                        p.degree.to_string(),
                    ]);
                }
            }
            csv_string(&["kind", "poly", "degree"], &rows)?
        }
    };
    Ok(Emit {
        body,
        verdict: None,
    })
}

fn count(args: &FieldLength) -> Result<Emit, Failure> {
    let field = field_arg(&args.q)?;
    let report = count_formula(args.n, &field)?;
    if !report.exists {
        return Err(Error::MinusOneNotSquare { q: field.q() }.into());
    }
    let body = match args.output.format {
        Format::Json => pretty(&report),
        Format::Csv => csv_string(
            &["n", "q", "count", "branch", "two_factor"],
            &[vec![
                report.n.to_string(),
                field.to_string(),
                report.formula_count.to_string(),
                serde_json::to_value(report.branch)
                    .expect("enum")
                    .as_str()
                    .unwrap_or_default()
                    .to_string(),
                report.two_factor.to_string(),
            ]],
        )?,
    };
    Ok(Emit {
        body,
        verdict: None,
    })
}

fn enumerate(args: &EnumerateArgs) -> Result<Emit, Failure> {
    let field = field_arg(&args.q)?;
    let polys = match args.method {
        Method::Crt => crt_enumerate(args.n, &field)?,
        Method::Brute => brute_force_enumerate(args.n, &field)?,
    };
    let records: Vec<CodeRecord> = polys
        .into_iter()
        .map(|a| CodeRecord {
            q: field.to_string(),
            n: args.n,
            a: a.to_coeff_string(),
        })
        .collect();
    let body = match args.output.format {
        // one record per line, each accepted verbatim by `verify --code`
        Format::Json => records
            .iter()
            .map(|r| serde_json::to_string(r).expect("record") + "\n")
            .collect(),
        Format::Csv => csv_string(
            &["q", "n", "a"],
            &records
                .iter()
                .map(|r| vec![r.q.clone(), r.n.to_string(), r.a.clone()])
                .collect::<Vec<_>>(),
        )?,
    };
    Ok(Emit {
        body,
        verdict: None,
    })
}

fn verify(args: &CodeArgs) -> Result<Emit, Failure> {
    let code = code_arg(args)?;
    let self_dual = code.is_self_dual();
    let symmetry = if !self_dual {
        None
    } else if code.field().is_even() {
        Some(verify_dihedral(&code)?)
    } else {
        Some(verify_constadihedral(&code)?)
    };
    let passed = self_dual && symmetry.as_ref().is_some_and(|s| s.passed());
    let verdict = if !self_dual {
        Some("code is not self-dual".to_string())
    } else if !passed {
        Some(format!(
            "symmetry checks failed: {}",
            symmetry.as_ref().expect("present").failed().join(", ")
        ))
    } else {
        None
    };
    let body = match args.output.format {
        Format::Json => pretty(&json!({
            "code": code.record(),
            "self_dual": self_dual,
            "symmetry": symmetry,
            "passed": passed,
        })),
        Format::Csv => {
            let mut rows = vec![vec!["self_dual".to_string(), self_dual.to_string()]];
            if let Some(s) = &symmetry {
                rows.push(vec![
                    "kind".into(),
                    serde_json::to_value(s.kind)
                        .expect("enum")
                        .as_str()
                        .unwrap_or_default()
                        .into(),
                ]);
                rows.extend(s.checks.iter().map(|(k, v)| vec![k.clone(), v.to_string()]));
            }
            rows.push(vec!["passed".into(), passed.to_string()]);
            csv_string(&["check", "value"], &rows)?
        }
    };
    Ok(Emit { body, verdict })
}

fn distance(args: &DistanceArgs) -> Result<Emit, Failure> {
    let code = code_arg(&args.code)?;
    let d = code.min_distance_with_budget(args.budget)?;
    let dist = if args.distribution {
        Some(code.weight_distribution_with_budget(args.budget)?)
    } else {
        None
    };
    let body = match args.code.output.format {
        Format::Json => pretty(
            &json!({ "code": code.record(), "length": code.length(), "min_distance": d, "weight_distribution": dist }),
        ),
        Format::Csv => match dist {
            Some(m) => csv_string(
                &["weight", "count"],
                &m.iter()
                    .map(|(w, c)| vec![w.to_string(), c.to_string()])
                    .collect::<Vec<_>>(),
            )?,
            None => csv_string(
                &["q", "n", "a", "min_distance"],
                &[{
                    let r = code.record();
                    vec![r.q, r.n.to_string(), r.a, d.to_string()]
                }],
            )?,
        },
    };
    Ok(Emit {
        body,
        verdict: None,
    })
}

fn audit(args: &AuditArgs) -> Result<Emit, Failure> {
    let field = field_arg(&args.target.q)?;
    let report = lemma7_audit_with_budget(args.target.n, &field, args.budget)?;
    let verdict = (!report.passed()).then(|| {
        format!(
            "{} words exceed the bound q - 1 = {}",
            report.violations, report.bound
        )
    });
    let body = match args.target.output.format {
        Format::Json => pretty(&json!({ "report": report, "passed": report.passed() })),
        Format::Csv => csv_string(
            &[
                "n",
                "q",
                "bound",
                "max_nonconstant_count",
                "violations",
                "max_constant_count",
            ],
            &[vec![
                report.n.to_string(),
                field.to_string(),
                report.bound.to_string(),
                report.max_nonconstant_count.to_string(),
                report.violations.to_string(),
                report.max_constant_count.to_string(),
            ]],
        )?,
    };
    Ok(Emit { body, verdict })
}

fn bound(args: &BoundArgs) -> Result<Emit, Failure> {
    let g = gv_quarter(args.q)?;
    let h_at_x = args
        .x
        .map(|x| entropy_q(args.q, x))
        .transpose()?
        .map(round12);
    let inv_at_y = args
        .y
        .map(|y| inv_entropy_q(args.q, y))
        .transpose()?
        .map(round12);
    let residual = (entropy_q(args.q, g)? - 0.25).abs();
    let fields: Vec<(&str, Option<f64>)> = vec![
        ("gv_quarter", Some(round12(g))),
        ("entropy_residual", Some(round12(residual))),
        ("entropy_at_x", h_at_x),
        ("inverse_at_y", inv_at_y),
    ];
    let body = match args.output.format {
        Format::Json => {
            let mut obj = serde_json::Map::new();
            obj.insert("q".into(), args.q.into());
            for (k, v) in &fields {
                obj.insert((*k).into(), json!(v));
            }
            pretty(&obj)
        }
        Format::Csv => {
            let mut header = vec!["q"];
            header.extend(fields.iter().map(|(k, _)| *k));
            let mut row = vec![args.q.to_string()];
            row.extend(
                fields
                    .iter()
                    .map(|(_, v)| v.map(|x| x.to_string()).unwrap_or_default()),
            );
            csv_string(&header, &[row])?
        }
    };
    Ok(Emit {
        body,
        verdict: None,
    })
}

fn census(args: &CensusArgs) -> Result<Emit, Failure> {
    let field = field_arg(&args.q)?;
    let ns: Vec<usize> = match (&args.n_list, args.n_min, args.n_max) {
        (Some(list), _, _) => list.clone(),
        (None, Some(lo), Some(hi)) if lo <= hi => (lo..=hi).collect(),
        _ => return Err(Failure::usage("expected --n-list or --n-min <= --n-max")),
    };
    let opts = CensusOptions {
        sample_size: args.sample_size,
        seed: args.seed,
        budget: args.budget,
        timing: args.timing,
    };
    let rows = census_run(&field, &ns, &opts);
    let body = match args.output.format {
        Format::Json => pretty(&rows),
        Format::Csv => {
            let mut buf = Vec::new();
            write_census_csv(&rows, &mut buf)?;
            String::from_utf8(buf).expect("csv is utf-8")
        }
    };
    Ok(Emit {
        body,
        verdict: None,
    })
}

fn output_of(cmd: &Command) -> &Output {
    match cmd {
        Command::Factor(a) | Command::Count(a) => &a.output,
        Command::Enumerate(a) => &a.output,
        Command::Verify(a) => &a.output,
        Command::Distance(a) => &a.code.output,
        Command::Lemma7Audit(a) => &a.target.output,
        Command::Bound(a) => &a.output,
        Command::Census(a) => &a.output,
    }
}

fn dispatch(cmd: &Command) -> Result<Emit, Failure> {
    match cmd {
        Command::Factor(a) => factor(a),
        Command::Count(a) => count(a),
        Command::Enumerate(a) => enumerate(a),
        Command::Verify(a) => verify(a),
        Command::Distance(a) => distance(a),
        Command::Lemma7Audit(a) => audit(a),
        Command::Bound(a) => bound(a),
        Command::Census(a) => census(a),
    }
}

/// Parses `argv` (program name first), runs the command and returns the exit
/// code. Machine output goes to `out` unless `--out` names a file.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let result = dispatch(&cli.command).and_then(|emit| {
        match &output_of(&cli.command).out {
            Some(path) => File::create(path)?.write_all(emit.body.as_bytes())?,
            None => out.write_all(emit.body.as_bytes())?,
        }
        match emit.verdict {
            Some(message) => Err(Failure {
                code: EXIT_VERIFICATION,
                message,
            }),
            None => Ok(()),
        }
    });
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
