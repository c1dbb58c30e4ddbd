//! Batch front end for `tnlu-core`: parse a matrix, run one command, emit a
//! text or JSON report.
//!
//! [`run`] never panics on bad input and never touches the process; it
//! returns an [`Output`] with the exit status and both streams, so the
//! binary is a thin wrapper and tests can drive it directly.

use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;
use tnlu_core::identities::IdentityTally;
use tnlu_core::matrix::format_scalar;
use tnlu_core::{
    detect_class_with_limit, explicit_decompose_with, is_tnn_with_limit, neville_decompose_with,
    random_tnn, reconstruct_lu_with, selftest, ClassDesc, IndexSet, LUPair, Mat, MinorWitness,
    NevilleOptions, NevilleTrace, Precondition, SelftestConfig, DEFAULT_BRUTEFORCE_LIMIT,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Auto,
    Explicit,
    Neville,
    Reconstruct,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Structured,
}

/// Where the matrix comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Input {
    Path(PathBuf),
    Stdin,
    /// Rows separated by `;`, entries by whitespace or `,`.
    Inline(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Decompose {
        method: Method,
        trace: bool,
        class: Option<ClassDesc>,
    },
    Detect,
    CheckTnn,
    IdentitiesSelftest {
        seed: u64,
        instances: usize,
    },
    Generate {
        seed: u64,
        rows: usize,
        cols: usize,
        factors: Option<usize>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub input: Option<Input>,
    pub format: Format,
    pub max_bruteforce: usize,
    pub unchecked: bool,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            input: None,
            format: Format::Text,
            max_bruteforce: DEFAULT_BRUTEFORCE_LIMIT,
            unchecked: false,
        }
    }

    pub fn input(mut self, input: Input) -> Self {
        self.input = Some(input);
        self
    }

    pub fn format(mut self, format: Format) -> Self {
        self.format = format;
        self
    }
}

/// Machine-readable failure categories. Each has its own exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Category {
    Io,
    Parse,
    ClassNotFound,
    NotTnn,
    NotInClass,
    TooLarge,
    InvalidInput,
    IdentityFailure,
    CrossCheckMismatch,
}

impl Category {
    pub fn name(self) -> &'static str {
        match self {
            Category::Io => "io",
            Category::Parse => "parse",
            Category::ClassNotFound => "class-not-found",
            Category::NotTnn => "not-tnn",
            Category::NotInClass => "not-in-class",
            Category::TooLarge => "too-large",
            Category::InvalidInput => "invalid-input",
            Category::IdentityFailure => "identity-failure",
            Category::CrossCheckMismatch => "cross-check-mismatch",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Category::Io => 3,
            Category::Parse => 4,
            Category::ClassNotFound => 5,
            Category::NotTnn => 6,
            Category::NotInClass => 7,
            Category::TooLarge => 8,
            Category::InvalidInput => 9,
            Category::IdentityFailure => 10,
            Category::CrossCheckMismatch => 11,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{}: {message}", category.name())]
pub struct CliError {
    pub category: Category,
    pub message: String,
}

impl CliError {
    fn new(category: Category, message: impl Into<String>) -> Self {
        CliError {
            category,
            message: message.into(),
        }
    }
}

impl From<tnlu_core::Error> for CliError {
    fn from(e: tnlu_core::Error) -> Self {
        use tnlu_core::Error as E;
        let category = match &e {
            E::Parse { .. } => Category::Parse,
            E::NotTnn(_) => Category::NotTnn,
            E::NotInClass(_) | E::BadClass(_) => Category::NotInClass,
            E::TooLarge { .. } => Category::TooLarge,
            _ => Category::InvalidInput,
        };
        CliError::new(category, e.to_string())
    }
}

/// Exit status plus everything the command wrote.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassJson {
    pub r: Vec<usize>,
    pub c: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StageJson {
    #[serde(rename = "L")]
    pub l: Vec<Vec<String>>,
    #[serde(rename = "U")]
    pub u: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceJson {
    pub moves: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stages: Option<Vec<StageJson>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessJson {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TallyJson {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
}

/// The result of one successful command.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Report {
    Decompose {
        method: Method,
        shape: [usize; 2],
        /// `null` for the zero matrix (rank 0).
        class: Option<ClassJson>,
        #[serde(rename = "L")]
        l: Vec<Vec<String>>,
        #[serde(rename = "U")]
        u: Vec<Vec<String>>,
        /// The method whose result was compared against the primary one.
        cross_check: Option<Method>,
        #[serde(skip_serializing_if = "Option::is_none")]
        trace: Option<TraceJson>,
    },
    Detect {
        found: bool,
        class: Option<ClassJson>,
    },
    CheckTnn {
        is_tnn: bool,
        witness: Option<WitnessJson>,
    },
    IdentitiesSelftest {
        seed: u64,
        instances: usize,
        all_passed: bool,
        tallies: Vec<TallyJson>,
    },
    Generate {
        seed: u64,
        factors: usize,
        shape: [usize; 2],
        matrix: Vec<Vec<String>>,
    },
}

#[derive(Serialize)]
struct ErrorJson<'a> {
    error: ErrorBody<'a>,
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    category: &'static str,
    message: &'a str,
}

pub fn matrix_json(a: &Mat) -> Vec<Vec<String>> {
    a.row_vecs()
        .iter()
        .map(|row| row.iter().map(format_scalar).collect())
        .collect()
}

fn class_json(d: &ClassDesc) -> Option<ClassJson> {
    (d.rank() > 0).then(|| ClassJson {
        r: d.r.as_slice().to_vec(),
        c: d.c.as_slice().to_vec(),
    })
}

fn trace_json(t: &NevilleTrace) -> TraceJson {
    TraceJson {
        moves: t.moves.iter().map(|m| m.to_string()).collect(),
        stages: t.stages.as_ref().map(|s| {
            s.iter()
                .map(|(l, u)| StageJson {
                    l: matrix_json(l),
                    u: matrix_json(u),
                })
                .collect()
        }),
    }
}

fn witness_json(w: &MinorWitness) -> WitnessJson {
    WitnessJson {
        rows: w.rows.as_slice().to_vec(),
        cols: w.cols.as_slice().to_vec(),
        value: format_scalar(&w.value),
    }
}

fn tally_json(t: &IdentityTally) -> TallyJson {
    TallyJson {
        name: t.name,
        passed: t.passed,
        failed: t.failed,
    }
}

/// Pretty-printed JSON with a trailing newline. Field order is fixed by the
/// type definitions, so equal reports give byte-equal documents.
pub fn emit_structured(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serialises");
    s.push('\n');
    s
}

fn rows_text(rows: &[Vec<String>]) -> String {
    let n = rows.first().map_or(0, Vec::len);
    let mut s = format!("{} {}\n", rows.len(), n);
    for r in rows {
        s.push_str(&r.join(" "));
        s.push('\n');
    }
    s
}

fn class_text(c: &Option<ClassJson>) -> String {
    let fmt = |v: &[usize]| {
        let items: Vec<String> = v.iter().map(usize::to_string).collect();
        format!("{{{}}}", items.join(","))
    };
    match c {
        Some(c) => format!("r={}, c={}", fmt(&c.r), fmt(&c.c)),
        None => "r={}, c={}".to_string(),
    }
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Auto => "auto",
        Method::Explicit => "explicit",
        Method::Neville => "neville",
        Method::Reconstruct => "reconstruct",
    }
}

/// Plain-text report. Matrices use the input file format, so they can be
/// fed back into the tool.
pub fn emit_text(report: &Report) -> String {
    match report {
        Report::Decompose {
            method,
            class,
            l,
            u,
            cross_check,
            trace,
            shape,
        } => {
            let mut s = format!("method: {}\n", method_name(*method));
            if let Some(c) = cross_check {
                s.push_str(&format!("cross-check: {}\n", method_name(*c)));
            }
            s.push_str(&format!("class: {}\n", class_text(class)));
            // zero-rank factors have no columns or rows to print
            let t = class.as_ref().map_or(0, |c| c.r.len());
            s.push_str("L:\n");
            s.push_str(&if t == 0 { format!("{} 0\n", shape[0]) } else { rows_text(l) });
            s.push_str("U:\n");
            s.push_str(&if t == 0 { format!("0 {}\n", shape[1]) } else { rows_text(u) });
            if let Some(tr) = trace {
                s.push_str("trace:\n");
                for m in &tr.moves {
                    s.push_str(m);
                    s.push('\n');
                }
            }
            s
        }
        Report::Detect { found: false, .. } => "none\n".to_string(),
        Report::Detect { class, .. } => format!("{}\n", class_text(class)),
        Report::CheckTnn { is_tnn, witness } => {
            let mut s = format!("tnn: {is_tnn}\n");
            if let Some(w) = witness {
                let rows = IndexSet::new(w.rows.clone()).expect("witness rows ascending");
                let cols = IndexSet::new(w.cols.clone()).expect("witness cols ascending");
                s.push_str(&format!("witness: [{rows}|{cols}] = {}\n", w.value));
            }
            s
        }
        Report::IdentitiesSelftest { tallies, .. } => tallies
            .iter()
            .map(|t| format!("{}: {} passed, {} failed\n", t.name, t.passed, t.failed))
            .collect(),
        Report::Generate { matrix, shape, .. } => {
            if shape[1] == 0 {
                format!("{} 0\n", shape[0])
            } else {
                rows_text(matrix)
            }
        }
    }
}

/// Parses the inline form `"0 0 0; 1 0 1; 1 0 1"`.
pub fn parse_inline(s: &str) -> Result<Mat, CliError> {
    let rows: Vec<Vec<&str>> = s
        .split(';')
        .map(|r| r.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()).collect())
        .collect();
    if rows.iter().any(Vec::is_empty) {
        return Err(CliError::new(Category::Parse, "empty row in inline matrix"));
    }
    let n = rows[0].len();
    let mut text = format!("{} {}\n", rows.len(), n);
    for r in &rows {
        text.push_str(&r.join(" "));
        text.push('\n');
    }
    Ok(Mat::parse(&text)?)
}

/// Parses a class descriptor `R:C`, each side a comma-separated index list
/// (either may be empty, e.g. `:` for rank 0).
pub fn parse_class(s: &str) -> Result<ClassDesc, String> {
    let (r, c) = s.split_once(':').ok_or_else(|| format!("expected R:C, got {s:?}"))?;
    let list = |x: &str| -> Result<IndexSet, String> {
        let v = x
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|e| format!("{t:?}: {e}")))
            .collect::<Result<Vec<_>, _>>()?;
        IndexSet::new(v).map_err(|e| e.to_string())
    };
    ClassDesc::new(list(r)?, list(c)?).map_err(|e| e.to_string())
}

fn read_matrix(input: &Option<Input>, stdin: &mut dyn Read) -> Result<Mat, CliError> {
    let text = match input {
        None => return Err(CliError::new(Category::InvalidInput, "no input matrix given")),
        Some(Input::Inline(s)) => return parse_inline(s),
        Some(Input::Stdin) => {
            let mut s = String::new();
            stdin
                .read_to_string(&mut s)
                .map_err(|e| CliError::new(Category::Io, format!("stdin: {e}")))?;
            s
        }
        Some(Input::Path(p)) => std::fs::read_to_string(p)
            .map_err(|e| CliError::new(Category::Io, format!("{}: {e}", p.display())))?,
    };
    Ok(Mat::parse(&text)?)
}

fn precondition(cfg: &RunConfig) -> Precondition {
    if cfg.unchecked {
        Precondition::Skip
    } else {
        Precondition::Check(cfg.max_bruteforce)
    }
}

fn neville_options(cfg: &RunConfig, record_stages: bool) -> NevilleOptions {
    NevilleOptions {
        record_stages,
        tnn_precheck_limit: (!cfg.unchecked).then_some(cfg.max_bruteforce),
    }
}

fn find_class(a: &Mat, given: &Option<ClassDesc>, cfg: &RunConfig) -> Result<ClassDesc, CliError> {
    if let Some(d) = given {
        d.check_shape(a.rows(), a.cols())?;
        return Ok(d.clone());
    }
    detect_class_with_limit(a, cfg.max_bruteforce)?
        .ok_or_else(|| CliError::new(Category::ClassNotFound, "matrix lies in no class M_{r,c}"))
}

fn decompose(
    a: &Mat,
    method: Method,
    trace: bool,
    class: &Option<ClassDesc>,
    cfg: &RunConfig,
) -> Result<Report, CliError> {
    let mut nev: Option<(LUPair, NevilleTrace)> = None;
    let mut cross_check = None;
    let lu = match method {
        Method::Neville => {
            let run = neville_decompose_with(a, &neville_options(cfg, trace))?;
            if let Some(d) = class {
                if d != &run.0.class {
                    return Err(CliError::new(
                        Category::NotInClass,
                        format!("matrix lies in {}, not {d}", run.0.class),
                    ));
                }
            }
            let lu = run.0.clone();
            nev = Some(run);
            lu
        }
        Method::Explicit | Method::Reconstruct => {
            let d = find_class(a, class, cfg)?;
            let lu = if method == Method::Explicit {
                explicit_decompose_with(a, &d, precondition(cfg))?
            } else {
                reconstruct_lu_with(a, &d, precondition(cfg))?
            };
            if trace {
                nev = Some(neville_decompose_with(a, &neville_options(cfg, true))?);
            }
            lu
        }
        Method::Auto => {
            let d = find_class(a, class, cfg)?;
            let lu = explicit_decompose_with(a, &d, precondition(cfg))?;
            let tnn = match is_tnn_with_limit(a, cfg.max_bruteforce) {
                Ok(rep) => rep.is_tnn,
                Err(tnlu_core::Error::TooLarge { .. }) => false,
                Err(e) => return Err(e.into()),
            };
            if tnn {
                let run = neville_decompose_with(a, &neville_options(cfg, trace))?;
                if run.0 != lu {
                    return Err(CliError::new(
                        Category::CrossCheckMismatch,
                        "explicit and neville factorisations differ",
                    ));
                }
                cross_check = Some(Method::Neville);
                nev = Some(run);
            } else if trace {
                return Err(CliError::new(
                    Category::NotTnn,
                    "a trace needs a totally nonnegative input (brute-force check failed or was out of range)",
                ));
            }
            lu
        }
    };
    Ok(Report::Decompose {
        method: if method == Method::Auto { Method::Explicit } else { method },
        shape: [a.rows(), a.cols()],
        class: class_json(&lu.class),
        l: matrix_json(&lu.l),
        u: matrix_json(&lu.u),
        cross_check,
        trace: if trace { nev.map(|(_, t)| trace_json(&t)) } else { None },
    })
}

fn execute(cfg: &RunConfig, stdin: &mut dyn Read) -> Result<Report, CliError> {
    match &cfg.command {
        Command::Decompose { method, trace, class } => {
            let a = read_matrix(&cfg.input, stdin)?;
            decompose(&a, *method, *trace, class, cfg)
        }
        Command::Detect => {
            let a = read_matrix(&cfg.input, stdin)?;
            let d = detect_class_with_limit(&a, cfg.max_bruteforce)?;
            Ok(Report::Detect {
                found: d.is_some(),
                class: d.as_ref().and_then(class_json),
            })
        }
        Command::CheckTnn => {
            let a = read_matrix(&cfg.input, stdin)?;
            let rep = is_tnn_with_limit(&a, cfg.max_bruteforce)?;
            Ok(Report::CheckTnn {
                is_tnn: rep.is_tnn,
                witness: rep.witness.as_ref().map(witness_json),
            })
        }
        Command::IdentitiesSelftest { seed, instances } => {
            let rep = selftest(&SelftestConfig {
                seed: *seed,
                instances: *instances,
                ..SelftestConfig::default()
            })?;
            Ok(Report::IdentitiesSelftest {
                seed: *seed,
                instances: *instances,
                all_passed: rep.all_passed(),
                tallies: rep.tallies.iter().map(tally_json).collect(),
            })
        }
        Command::Generate {
            seed,
            rows,
            cols,
            factors,
        } => {
            let factors = factors.unwrap_or(2 * (rows + cols));
            let a = random_tnn(*rows, *cols, *seed, factors);
            Ok(Report::Generate {
                seed: *seed,
                factors,
                shape: [*rows, *cols],
                matrix: matrix_json(&a),
            })
        }
    }
}

/// Runs one command. `stdin` is only read for [`Input::Stdin`].
pub fn run_with_stdin(cfg: &RunConfig, stdin: &mut dyn Read) -> Output {
    match execute(cfg, stdin) {
        Ok(report) => {
            let stdout = emit(&report, cfg.format);
            if let Report::IdentitiesSelftest { all_passed: false, .. } = report {
                let cat = Category::IdentityFailure;
                return Output {
                    status: cat.exit_code(),
                    stdout,
                    stderr: format!("error: {}: some identity checks failed\n", cat.name()),
                };
            }
            Output {
                status: 0,
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => Output {
            status: e.category.exit_code(),
            stdout: match cfg.format {
                Format::Structured => error_structured(&e),
                Format::Text => String::new(),
            },
            stderr: format!("error: {e}\n"),
        },
    }
}

pub fn run(cfg: &RunConfig) -> Output {
    run_with_stdin(cfg, &mut std::io::stdin())
}

pub fn emit(report: &Report, format: Format) -> String {
    match format {
        Format::Text => emit_text(report),
        Format::Structured => emit_structured(report),
    }
}

fn error_structured(e: &CliError) -> String {
    let doc = ErrorJson {
        error: ErrorBody {
            category: e.category.name(),
            message: &e.message,
        },
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("error serialises");
    s.push('\n');
    s
}

// ---- command line ----

#[derive(Debug, Parser)]
#[command(name = "tnlu", version, about = "Exact LU decomposition of totally nonnegative matrices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Matrix file ("m n" header, then rows), or "-" for stdin.
    #[arg(conflicts_with = "matrix")]
    pub input: Option<String>,

    /// Inline matrix: rows separated by ';', entries by spaces or commas.
    #[arg(long, short = 'm')]
    pub matrix: Option<String>,

    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Size bound for exhaustive minor enumeration (min(m, n)).
    #[arg(long, default_value_t = DEFAULT_BRUTEFORCE_LIMIT)]
    pub max_bruteforce: usize,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Compute the unique L U factorisation.
    Decompose {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
        /// Include the Neville move sequence and the (L, U) stages.
        #[arg(long)]
        trace: bool,
        /// Use this class instead of detecting it, e.g. "1,3:2,4".
        #[arg(long, value_parser = parse_class)]
        class: Option<ClassDesc>,
        /// Skip the class and total nonnegativity prechecks.
        #[arg(long)]
        unchecked: bool,
    },
    /// Print the class (r, c) of a matrix, or "none".
    Detect {
        #[command(flatten)]
        common: Common,
    },
    /// Brute-force total nonnegativity test with a witness.
    CheckTnn {
        #[command(flatten)]
        common: Common,
    },
    /// Determinantal identity checks.
    Identities {
        #[command(subcommand)]
        action: IdentitiesAction,
    },
    #[command(name = "identities-selftest", hide = true)]
    IdentitiesSelftest {
        #[command(flatten)]
        opts: SelftestOpts,
    },
    /// Print a seeded random totally nonnegative matrix.
    Generate {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, num_args = 2, value_names = ["M", "N"], default_values_t = [4, 4])]
        size: Vec<usize>,
        /// Number of random bidiagonal/diagonal factors (default 2(m+n)).
        #[arg(long)]
        factors: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Debug, Subcommand)]
pub enum IdentitiesAction {
    /// Verify every identity on seeded random instances.
    Selftest {
        #[command(flatten)]
        opts: SelftestOpts,
    },
}

#[derive(Debug, Args)]
pub struct SelftestOpts {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub instances: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

impl Common {
    fn apply(self, command: Command) -> RunConfig {
        let input = match (self.input, self.matrix) {
            (_, Some(m)) => Some(Input::Inline(m)),
            (Some(p), None) if p == "-" => Some(Input::Stdin),
            (Some(p), None) => Some(Input::Path(p.into())),
            (None, None) => None,
        };
        RunConfig {
            command,
            input,
            format: self.format,
            max_bruteforce: self.max_bruteforce,
            unchecked: false,
        }
    }
}

impl SelftestOpts {
    fn config(self) -> RunConfig {
        RunConfig::new(Command::IdentitiesSelftest {
            seed: self.seed,
            instances: self.instances,
        })
        .format(self.format)
    }
}

impl From<Cli> for RunConfig {
    fn from(cli: Cli) -> Self {
        match cli.command {
            CliCommand::Decompose {
                common,
                method,
                trace,
                class,
                unchecked,
            } => RunConfig {
                unchecked,
                ..common.apply(Command::Decompose { method, trace, class })
            },
            CliCommand::Detect { common } => common.apply(Command::Detect),
            CliCommand::CheckTnn { common } => common.apply(Command::CheckTnn),
            CliCommand::Identities {
                action: IdentitiesAction::Selftest { opts },
            }
            | CliCommand::IdentitiesSelftest { opts } => opts.config(),
            CliCommand::Generate {
                seed,
                size,
                factors,
                format,
            } => RunConfig::new(Command::Generate {
                seed,
                rows: size[0],
                cols: size[1],
                factors,
            })
            .format(format),
        }
    }
}
