//! Command-line front end: construct codes, run verifications, emit weight
//! distributions and parameter-space scans as JSON or CSV.
//!
//! Exit codes: 0 on success, 2 on invalid parameters or input, 3 when an
//! enumeration exceeds the cap. Every run echoes the fully resolved
//! parameters (including auto-generated scalars and support) so results are
//! reproducible, and output is byte-identical across runs and worker counts.

use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use sumrank::codes::{EnumOpts, LinearCode, DEFAULT_ENUM_CAP};
use sumrank::extend::{build_lattice, extended_distance_formula};
use sumrank::field::FieldTower;
use sumrank::json::{
    code_from_json, code_to_json, moore_from_json, moore_to_json, tower_to_json,
};
use sumrank::moore::{
    check_msrd_conditions, doubly_extend, doubly_extend_spec, moore_code, one_weight_verdict,
    predicted_triple_msrd, triply_extend, triply_extend_spec, MooreSpec,
};
use sumrank::Error;

#[derive(Parser)]
#[command(
    name = "sumrank",
    version,
    about = "Construct sum-rank metric codes and verify their distance properties by exhaustive computation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the canonical field tower for (p, e, m) as JSON
    Field(FieldArgs),
    /// Build a code construction and print it with its resolved parameters
    Construct(ConstructArgs),
    /// Verify distances and the Singleton bound for a construction document
    Verify(VerifyArgs),
    /// Print the exact weight distribution of a code or construction
    Weights(WeightsArgs),
    /// Sweep a parameter grid and print one verdict row per instance
    Scan(ScanArgs),
}

#[derive(Args)]
struct FieldArgs {
    /// Prime characteristic
    #[arg(long)]
    p: u64,
    /// Degree of F_q over F_p (q = p^e)
    #[arg(long, default_value_t = 1)]
    e: usize,
    /// Degree of F_{q^m} over F_q
    #[arg(long, default_value_t = 1)]
    m: usize,
    /// Write the JSON to a file instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConstructType {
    /// The plain Moore-matrix code
    Plain,
    /// Two appended columns, Hamming tail metric
    Doubly,
    /// Three appended columns, Hamming tail metric (k = 3)
    Triply,
}

impl ConstructType {
    fn name(self) -> &'static str {
        match self {
            ConstructType::Plain => "plain",
            ConstructType::Doubly => "doubly",
            ConstructType::Triply => "triply",
        }
    }
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long = "type", value_enum)]
    ctype: ConstructType,
    /// Prime characteristic (with --e this fixes q = p^e)
    #[arg(long)]
    p: Option<u64>,
    #[arg(long, default_value_t = 1)]
    e: usize,
    #[arg(long)]
    m: Option<usize>,
    /// Number of block scalars; defaults to the maximum q − 1
    #[arg(long)]
    ell: Option<usize>,
    #[arg(long)]
    mu: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    /// Code dimension (forced to 3 for the triple extension)
    #[arg(long)]
    k: Option<usize>,
    /// Read a Moore spec JSON document instead of the scalar flags
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VerifyMode {
    /// Exhaustive enumeration only
    Brute,
    /// Subset-lattice distance formula only
    Formula,
    /// Both routes; they must agree or the run fails
    Both,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = VerifyMode::Brute)]
    mode: VerifyMode,
    /// Read the construction document from a file instead of standard input
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Enumeration cap (projective codewords)
    #[arg(long, default_value_t = DEFAULT_ENUM_CAP)]
    cap: u64,
    /// Worker count for enumerations; results do not depend on it
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct WeightsArgs {
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_ENUM_CAP)]
    cap: u64,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ScanFormat {
    Json,
    Csv,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long = "type", value_enum)]
    ctype: ConstructType,
    /// Field sizes q (prime powers), comma-separated
    #[arg(long, visible_alias = "p")]
    q: String,
    /// Extension degrees m, comma-separated
    #[arg(long)]
    m: String,
    #[arg(long, default_value = "1")]
    mu: String,
    /// Block lengths, comma-separated; the token "m" means r = m per instance
    #[arg(long, default_value = "m")]
    r: String,
    /// Dimensions, comma-separated; defaults to 2 (doubly/plain) or 3 (triply)
    #[arg(long)]
    k: Option<String>,
    #[arg(long, value_enum, default_value_t = ScanFormat::Json)]
    format: ScanFormat,
    #[arg(long, default_value_t = DEFAULT_ENUM_CAP)]
    cap: u64,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Captured result of a CLI run.
#[derive(Debug, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::EnumerationCapExceeded { .. } => 3,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// Runs the CLI on the given argument vector (including the binary name).
/// `read_stdin` is only invoked when a command actually consumes input.
pub fn run(args: &[String], read_stdin: &mut dyn FnMut() -> std::io::Result<String>) -> Outcome {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.exit_code() == 0 {
                Outcome { code: 0, stdout: rendered, stderr: String::new() }
            } else {
                Outcome { code: 2, stdout: String::new(), stderr: rendered }
            };
        }
    };
    let result = match cli.command {
        Command::Field(a) => cmd_field(&a),
        Command::Construct(a) => cmd_construct(&a, read_stdin),
        Command::Verify(a) => cmd_verify(&a, read_stdin),
        Command::Weights(a) => cmd_weights(&a, read_stdin),
        Command::Scan(a) => cmd_scan(&a),
    };
    match result {
        Ok((text, out_path)) => match out_path {
            Some(path) => match std::fs::write(&path, &text) {
                Ok(()) => Outcome { code: 0, ..Default::default() },
                Err(e) => Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: format!("error: cannot write {}: {e}\n", path.display()),
                },
            },
            None => Outcome { code: 0, stdout: text, stderr: String::new() },
        },
        Err(f) => Outcome {
            code: f.code,
            stdout: String::new(),
            stderr: format!("error: {}\n", f.message),
        },
    }
}

fn read_document(
    input: &Option<PathBuf>,
    read_stdin: &mut dyn FnMut() -> std::io::Result<String>,
) -> CliResult<Value> {
    let text = match input {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| Failure::invalid(format!("cannot read {}: {e}", path.display())))?,
        None => read_stdin().map_err(|e| Failure::invalid(format!("cannot read stdin: {e}")))?,
    };
    serde_json::from_str(&text).map_err(|e| Failure::invalid(format!("invalid JSON input: {e}")))
}

fn cmd_field(args: &FieldArgs) -> CliResult<(String, Option<PathBuf>)> {
    let tower = FieldTower::new(args.p, args.e, args.m)?;
    Ok((format!("{}\n", tower_to_json(&tower)), args.out.clone()))
}

fn require<T: Copy>(v: Option<T>, flag: &str) -> CliResult<T> {
    v.ok_or_else(|| Failure::invalid(format!("--{flag} is required")))
}

fn resolve_spec(
    args: &ConstructArgs,
    read_stdin: &mut dyn FnMut() -> std::io::Result<String>,
) -> CliResult<MooreSpec> {
    if let Some(_path) = &args.input {
        let doc = read_document(&args.input, read_stdin)?;
        return Ok(moore_from_json(&doc)?);
    }
    let p = require(args.p, "p")?;
    let m = require(args.m, "m")?;
    let mu = require(args.mu, "mu")?;
    let r = require(args.r, "r")?;
    let tower = Arc::new(FieldTower::new(p, args.e, m)?);
    let ell = args.ell.unwrap_or((tower.q - 1) as usize);
    let k = match args.ctype {
        ConstructType::Triply => match args.k {
            None | Some(3) => 3,
            Some(other) => {
                return Err(Failure::invalid(format!(
                    "the triple extension is 3-dimensional, got --k {other}"
                )))
            }
        },
        _ => require(args.k, "k")?,
    };
    Ok(MooreSpec::with_defaults(tower, ell, mu, r, k)?)
}

fn build_code(ctype: ConstructType, spec: &MooreSpec) -> Result<LinearCode, Error> {
    match ctype {
        ConstructType::Plain => moore_code(spec),
        ConstructType::Doubly => doubly_extend(spec),
        ConstructType::Triply => triply_extend(spec),
    }
}

fn cmd_construct(
    args: &ConstructArgs,
    read_stdin: &mut dyn FnMut() -> std::io::Result<String>,
) -> CliResult<(String, Option<PathBuf>)> {
    let spec = resolve_spec(args, read_stdin)?;
    let code = build_code(args.ctype, &spec)?;
    let doc = json!({
        "type": args.ctype.name(),
        "spec": moore_to_json(&spec),
        "code": code_to_json(&code),
    });
    Ok((format!("{doc}\n"), args.out.clone()))
}

fn parse_construct_type(doc: &Value) -> CliResult<ConstructType> {
    match doc.get("type").and_then(Value::as_str) {
        Some("plain") => Ok(ConstructType::Plain),
        Some("doubly") => Ok(ConstructType::Doubly),
        Some("triply") => Ok(ConstructType::Triply),
        Some(other) => Err(Failure::invalid(format!("unknown construction type \"{other}\""))),
        None => Err(Failure::invalid("the document is missing a \"type\" field")),
    }
}

fn cmd_verify(
    args: &VerifyArgs,
    read_stdin: &mut dyn FnMut() -> std::io::Result<String>,
) -> CliResult<(String, Option<PathBuf>)> {
    let doc = read_document(&args.input, read_stdin)?;
    let ctype = parse_construct_type(&doc)?;
    let spec_json = doc
        .get("spec")
        .ok_or_else(|| Failure::invalid("the document is missing a \"spec\" field"))?;
    let spec = moore_from_json(spec_json)?;
    let opts = EnumOpts { cap: args.cap, jobs: args.jobs };
    let code = build_code(ctype, &spec)?;
    let bound = code.length() - code.dimension() + 1;

    let mut out = Map::new();
    out.insert("params".into(), json!({"type": ctype.name(), "spec": moore_to_json(&spec)}));
    out.insert("len".into(), json!(code.length()));
    out.insert("k".into(), json!(code.dimension()));
    out.insert("singleton".into(), json!(bound));

    let brute = match args.mode {
        VerifyMode::Brute | VerifyMode::Both => {
            let d = code.min_distance(&opts)?;
            out.insert("bruteforce".into(), json!(d));
            Some(d)
        }
        VerifyMode::Formula => None,
    };
    let formula = match args.mode {
        VerifyMode::Formula | VerifyMode::Both => {
            let ext = match ctype {
                ConstructType::Doubly => doubly_extend_spec(&spec),
                ConstructType::Triply => triply_extend_spec(&spec),
                ConstructType::Plain => {
                    return Err(Failure::invalid(
                        "the distance formula applies to extended constructions only",
                    ))
                }
            }
            .map_err(|e| match e {
                Error::DependentRows => Failure::invalid(
                    "the distance formula needs independent body rows; use --mode brute",
                ),
                other => Failure::from(other),
            })?;
            let lattice = build_lattice(&ext, &opts)?;
            let d = extended_distance_formula(&lattice);
            out.insert("formula".into(), json!(d));
            Some(d)
        }
        VerifyMode::Brute => None,
    };
    if let (Some(b), Some(f)) = (brute, formula) {
        if b != f {
            return Err(Failure {
                code: 1,
                message: format!(
                    "distance formula ({f}) disagrees with enumeration ({b}); this is a bug"
                ),
            });
        }
    }
    let d = brute.or(formula).expect("at least one mode ran");
    out.insert("msrd".into(), json!(d == bound));

    let predicted = match ctype {
        ConstructType::Plain | ConstructType::Doubly => Some(check_msrd_conditions(&spec)?.ok),
        ConstructType::Triply => predicted_triple_msrd(&spec)?,
    };
    if let Some(p) = predicted {
        out.insert("predicted".into(), json!(p));
    }
    Ok((format!("{}\n", Value::Object(out)), args.out.clone()))
}

fn cmd_weights(
    args: &WeightsArgs,
    read_stdin: &mut dyn FnMut() -> std::io::Result<String>,
) -> CliResult<(String, Option<PathBuf>)> {
    let doc = read_document(&args.input, read_stdin)?;
    let code = match doc.get("code") {
        Some(inner) => code_from_json(inner)?,
        None => code_from_json(&doc)?,
    };
    let opts = EnumOpts { cap: args.cap, jobs: args.jobs };
    let dist = code.weight_distribution(&opts)?;
    let mut counts = Map::new();
    for (w, c) in dist.counts() {
        counts.insert(w.to_string(), json!(c));
    }
    let mut out = Map::new();
    if let Some(params) = doc.get("type").and_then(|t| {
        doc.get("spec").map(|s| json!({"type": t, "spec": s}))
    }) {
        out.insert("params".into(), params);
    }
    out.insert("len".into(), json!(code.length()));
    out.insert("k".into(), json!(code.dimension()));
    out.insert("distribution".into(), Value::Object(counts));
    Ok((format!("{}\n", Value::Object(out)), args.out.clone()))
}

fn parse_list(text: &str, flag: &str) -> CliResult<Vec<u64>> {
    let mut out = Vec::new();
    for tok in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        out.push(
            tok.parse::<u64>()
                .map_err(|_| Failure::invalid(format!("--{flag}: \"{tok}\" is not an integer")))?,
        );
    }
    Ok(out)
}

enum RToken {
    Fixed(usize),
    MatchM,
}

fn parse_r_list(text: &str) -> CliResult<Vec<RToken>> {
    let mut out = Vec::new();
    for tok in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        if tok == "m" {
            out.push(RToken::MatchM);
        } else {
            out.push(RToken::Fixed(tok.parse::<usize>().map_err(|_| {
                Failure::invalid(format!("--r: \"{tok}\" is not an integer or \"m\""))
            })?));
        }
    }
    Ok(out)
}

fn factor_prime_power(q: u64) -> Result<(u64, usize), Error> {
    if q < 2 {
        return Err(Error::InvalidParameter(format!("{q} is not a prime power")));
    }
    let mut p = 2;
    while p * p <= q {
        if q.is_multiple_of(p) {
            break;
        }
        p += 1;
    }
    if p * p > q {
        return Ok((q, 1));
    }
    let mut e = 0;
    let mut rest = q;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    if rest != 1 {
        return Err(Error::InvalidParameter(format!("{q} is not a prime power")));
    }
    Ok((p, e))
}

struct ScanRow {
    q: u64,
    m: usize,
    mu: usize,
    r: usize,
    k: usize,
    ctype: ConstructType,
    n: Option<usize>,
    len: Option<usize>,
    d_formula: Option<usize>,
    d_brute: Option<usize>,
    msrd: Option<bool>,
    predicted: Option<bool>,
    one_weight: Option<bool>,
    error: Option<String>,
}

fn scan_instance(
    ctype: ConstructType,
    q: u64,
    m: usize,
    mu: usize,
    r: usize,
    k: usize,
    opts: &EnumOpts,
) -> ScanRow {
    let mut row = ScanRow {
        q,
        m,
        mu,
        r,
        k,
        ctype,
        n: None,
        len: None,
        d_formula: None,
        d_brute: None,
        msrd: None,
        predicted: None,
        one_weight: None,
        error: None,
    };
    match scan_instance_inner(ctype, q, m, mu, r, k, opts, &mut row) {
        Ok(()) => {}
        Err(e) => row.error = Some(e.to_string()),
    }
    row
}

#[allow(clippy::too_many_arguments)]
fn scan_instance_inner(
    ctype: ConstructType,
    q: u64,
    m: usize,
    mu: usize,
    r: usize,
    k: usize,
    opts: &EnumOpts,
    row: &mut ScanRow,
) -> Result<(), Error> {
    let (p, e) = factor_prime_power(q)?;
    let tower = Arc::new(FieldTower::new(p, e, m)?);
    let ell = (q - 1) as usize;
    let spec = MooreSpec::with_defaults(tower, ell, mu, r, k)?;
    row.n = Some(spec.n());
    let code = build_code(ctype, &spec)?;
    row.len = Some(code.length());
    let d = code.min_distance(opts)?;
    row.d_brute = Some(d);
    row.msrd = Some(d == code.length() - code.dimension() + 1);
    match ctype {
        ConstructType::Plain => {
            row.predicted = Some(check_msrd_conditions(&spec)?.ok);
        }
        ConstructType::Doubly => {
            let conditions = check_msrd_conditions(&spec)?.ok;
            row.predicted = Some(conditions);
            match doubly_extend_spec(&spec) {
                Ok(ext) => {
                    row.d_formula = Some(extended_distance_formula(&build_lattice(&ext, opts)?));
                }
                Err(Error::DependentRows) => {}
                Err(e) => return Err(e),
            }
            if k == 2 && conditions {
                row.one_weight = Some(one_weight_verdict(&spec)?);
            }
        }
        ConstructType::Triply => {
            row.predicted = predicted_triple_msrd(&spec)?;
            match triply_extend_spec(&spec) {
                Ok(ext) => {
                    row.d_formula = Some(extended_distance_formula(&build_lattice(&ext, opts)?));
                }
                Err(Error::DependentRows) => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(())
}

fn opt_json<T: Clone + Into<Value>>(v: &Option<T>) -> Value {
    v.clone().map_or(Value::Null, Into::into)
}

fn csv_cell_num(v: &Option<usize>) -> String {
    v.map_or(String::new(), |x| x.to_string())
}

fn csv_cell_bool(v: &Option<bool>) -> String {
    v.map_or(String::new(), |x| x.to_string())
}

fn cmd_scan(args: &ScanArgs) -> CliResult<(String, Option<PathBuf>)> {
    let qs = parse_list(&args.q, "q")?;
    let ms = parse_list(&args.m, "m")?;
    let mus = parse_list(&args.mu, "mu")?;
    let rs = parse_r_list(&args.r)?;
    let ks: Vec<u64> = match &args.k {
        Some(text) => parse_list(text, "k")?,
        None => match args.ctype {
            ConstructType::Triply => vec![3],
            _ => vec![2],
        },
    };
    let opts = EnumOpts { cap: args.cap, jobs: args.jobs };
    let mut rows = Vec::new();
    for &q in &qs {
        for &m in &ms {
            for &mu in &mus {
                for r_tok in &rs {
                    let r = match r_tok {
                        RToken::Fixed(r) => *r,
                        RToken::MatchM => m as usize,
                    };
                    for &k in &ks {
                        rows.push(scan_instance(
                            args.ctype, q, m as usize, mu as usize, r, k as usize, &opts,
                        ));
                    }
                }
            }
        }
    }
    let text = match args.format {
        ScanFormat::Csv => {
            let mut s = String::from(
                "q,m,mu,r,k,type,n,len,d_formula,d_brute,msrd,predicted,one_weight,error\n",
            );
            for row in &rows {
                let error = row
                    .error
                    .as_deref()
                    .unwrap_or("")
                    .replace(',', ";")
                    .replace('\n', " ");
                s.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
                    row.q,
                    row.m,
                    row.mu,
                    row.r,
                    row.k,
                    row.ctype.name(),
                    csv_cell_num(&row.n),
                    csv_cell_num(&row.len),
                    csv_cell_num(&row.d_formula),
                    csv_cell_num(&row.d_brute),
                    csv_cell_bool(&row.msrd),
                    csv_cell_bool(&row.predicted),
                    csv_cell_bool(&row.one_weight),
                    error,
                ));
            }
            s
        }
        ScanFormat::Json => {
            let arr: Vec<Value> = rows
                .iter()
                .map(|row| {
                    json!({
                        "q": row.q,
                        "m": row.m,
                        "mu": row.mu,
                        "r": row.r,
                        "k": row.k,
                        "type": row.ctype.name(),
                        "n": opt_json(&row.n),
                        "len": opt_json(&row.len),
                        "d_formula": opt_json(&row.d_formula),
                        "d_brute": opt_json(&row.d_brute),
                        "msrd": opt_json(&row.msrd),
                        "predicted": opt_json(&row.predicted),
                        "one_weight": opt_json(&row.one_weight),
                        "error": opt_json(&row.error),
                    })
                })
                .collect();
            format!("{}\n", Value::Array(arr))
        }
    };
    Ok((text, args.out.clone()))
}
