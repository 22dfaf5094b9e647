//! The `blockglue` command line.
//!
//! Results go to stdout, diagnostics to stderr. Exit codes: 0 on success,
//! 1 on a domain error (empty subshift, non-convergence, bad state file...),
//! 2 on a usage error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use crate::entropy::{
    entropy_profile, entropy_sft, entropy_sft_at, gluing_lower_bound, language_cap, ROUNDING_POLICY,
};
use crate::error::{Error, Result};
use crate::gluing::{
    find_periodic_point, gluing_by_oracle, gluing_evidence, is_block_gluing, min_gluing_constant,
    GluingReport, DEFAULT_EVIDENCE_EXTRA, DEFAULT_EVIDENCE_LENGTH,
};
use crate::language::{hausdorff_truncated, language, language_count};
use crate::maximality::{decide_maximal, gluing_floor_spec, DEFAULT_REFUTE_CAP};
use crate::numfmt::{format_dir, format_enclosure, format_real, round_sig, Direction};
use crate::rauzy::{build_rauzy, is_isomorphic};
use crate::spec::{parse_spec, SubshiftSpec};
use crate::spectrum::{
    candidates_csv, init_scan, init_scan_with_target, load_state, report_table, resume, save_state,
    step_order, verdict_report, Budget, SpectrumState, Verdict,
};

pub const THREADS_ENV: &str = "BLOCKGLUE_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
    Csv,
    Dot,
}

#[derive(Debug, Parser)]
#[command(
    name = "blockglue",
    version,
    about = "Block-gluing subshifts: languages, gluing, entropy, maximality, spectrum scan"
)]
pub struct Cli {
    /// Output format (default: dot for `rauzy`, json otherwise).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Entropy tolerance.
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub tol: f64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct SpecArg {
    /// Spec file (`alphabet: 01` then `forbid: ...` lines).
    pub spec: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Certified entropy enclosure of an SFT.
    Entropy {
        #[command(flatten)]
        spec: SpecArg,
        /// Rauzy graph order (default: the presentation order, at least 2).
        #[arg(long)]
        order: Option<usize>,
        /// Report log2 values as well.
        #[arg(long)]
        log2: bool,
    },
    /// log|L(n)|/n for n = 1..=max-n.
    Profile {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long, default_value_t = 10)]
        max_n: usize,
    },
    /// The words of L(n).
    Language {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long)]
        n: usize,
        /// Only the count.
        #[arg(long)]
        count: bool,
    },
    /// Decide c-block-gluing.
    Glue {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long)]
        c: usize,
        /// Use the brute-force filler search on words of length `--word-len`.
        #[arg(long)]
        brute_force: bool,
        #[arg(long, default_value_t = DEFAULT_EVIDENCE_LENGTH)]
        word_len: usize,
    },
    /// Least c for which an SFT is c-block-gluing.
    MinGlue {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long, default_value_t = 8)]
        c_max: usize,
    },
    /// A periodic point (its period word).
    Periodic {
        #[command(flatten)]
        spec: SpecArg,
    },
    /// The trimmed Rauzy graph G_n.
    Rauzy {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long)]
        n: usize,
    },
    /// Isomorphism of two Rauzy graphs.
    Iso {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        n_a: usize,
        #[arg(long)]
        n_b: usize,
    },
    /// Hausdorff distance from the languages up to length N.
    Hausdorff {
        a: PathBuf,
        b: PathBuf,
        #[arg(long = "N", short = 'N', default_value_t = 12)]
        max_len: usize,
    },
    /// Maximality of order n (sufficient condition, then bounded refutation).
    Maximal {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long)]
        c: usize,
        #[arg(long)]
        n: usize,
        /// Search order for a refutation when the condition is inconclusive.
        #[arg(long)]
        refute_order: Option<usize>,
    },
    /// log(count)/(c + k).
    Bound {
        #[arg(long)]
        count: u128,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        c: usize,
    },
    /// D_n = floor(exp((c + n) h)), with h the entropy of X_c unless given.
    Cap {
        #[arg(long)]
        c: usize,
        #[arg(long)]
        n: usize,
        /// Reference entropy (upper end).
        #[arg(long, conflicts_with = "spec")]
        h: Option<f64>,
        /// Reference subshift.
        #[arg(long)]
        spec: Option<PathBuf>,
    },
    /// Run the minimal-entropy search.
    Scan(ScanArgs),
    /// Print a saved scan state.
    Report { state: PathBuf },
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long, required_unless_present = "resume")]
    pub c: Option<usize>,
    #[arg(long)]
    pub max_order: Option<usize>,
    #[arg(long)]
    pub budget_seconds: Option<f64>,
    #[arg(long)]
    pub max_evaluations: Option<u64>,
    /// Continue from a state file.
    #[arg(long, conflicts_with_all = ["c", "target", "below"])]
    pub resume: Option<PathBuf>,
    /// Prove this subshift's entropy is the least above the `--below` ones.
    #[arg(long)]
    pub target: Option<PathBuf>,
    /// Known smaller entropies (default with --target: X_c).
    #[arg(long, requires = "target")]
    pub below: Vec<PathBuf>,
    /// Write the state here after every order.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads (fallback: BLOCKGLUE_THREADS).
    #[arg(long)]
    pub threads: Option<usize>,
}

/// Outcome of a command: the document to print, or an error with its exit
/// code.
enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type CmdResult = std::result::Result<String, Failure>;

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match execute(&cli, err) {
        Ok(text) => {
            let _ = write!(out, "{text}");
            if !text.ends_with('\n') {
                let _ = writeln!(out);
            }
            0
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn read_spec(path: &Path) -> Result<SubshiftSpec> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_spec(&text)
}

fn unsupported(format: Format, command: &str) -> Failure {
    Failure::Usage(format!("format {format:?} is not available for `{command}`").to_lowercase())
}

/// JSON with every real rounded to twelve significant digits; `lo`-like
/// keys round down and `hi`-like keys round up.
fn to_json<T: Serialize>(value: &T) -> String {
    let mut v = serde_json::to_value(value).expect("serializable");
    round_reals(&mut v, Direction::Nearest);
    let mut text = serde_json::to_string_pretty(&v).expect("json");
    text.push('\n');
    text
}

fn key_direction(key: &str) -> Direction {
    match key {
        "lo" | "lo_log2" | "gap_bound" | "d_term" | "lower_bound" => Direction::Down,
        "hi" | "hi_log2" | "value" => Direction::Up,
        _ => Direction::Nearest,
    }
}

fn round_reals(v: &mut Value, dir: Direction) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("f64");
            if let Some(r) = serde_json::Number::from_f64(round_sig(x, dir)) {
                *n = r;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(|x| round_reals(x, dir)),
        Value::Object(map) => {
            for (k, x) in map.iter_mut() {
                round_reals(x, key_direction(k));
            }
        }
        _ => {}
    }
}

fn execute(cli: &Cli, err: &mut dyn Write) -> CmdResult {
    let tol = cli.tol;
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Failure::Usage("--tol must be positive".into()));
    }
    let format = cli.format;
    match &cli.command {
        Command::Entropy { spec, order, log2 } => {
            cmd_entropy(&read_spec(&spec.spec)?, *order, *log2, tol, format)
        }
        Command::Profile { spec, max_n } => {
            let points = entropy_profile(&read_spec(&spec.spec)?, *max_n)?;
            match format.unwrap_or(Format::Json) {
                Format::Json => Ok(to_json(&points)),
                Format::Table => Ok(points
                    .iter()
                    .map(|p| {
                        format!(
                            "{}  {}  {}\n",
                            p.n,
                            p.count,
                            format_dir(p.value, Direction::Up)
                        )
                    })
                    .collect()),
                Format::Csv => {
                    let mut s = String::from("n,count,value\n");
                    for p in &points {
                        s.push_str(&format!(
                            "{},{},{}\n",
                            p.n,
                            p.count,
                            format_dir(p.value, Direction::Up)
                        ));
                    }
                    Ok(s)
                }
                f => Err(unsupported(f, "profile")),
            }
        }
        Command::Language { spec, n, count } => {
            let spec = read_spec(&spec.spec)?;
            if *count {
                let c = if spec.is_sft() {
                    language_count(&spec, *n)?
                } else {
                    language(&spec, *n)?.count() as u128
                };
                return match format.unwrap_or(Format::Json) {
                    Format::Json => Ok(to_json(
                        &serde_json::json!({ "n": n, "count": c.to_string() }),
                    )),
                    Format::Table | Format::Csv => Ok(format!("{c}\n")),
                    f => Err(unsupported(f, "language")),
                };
            }
            let entry = language(&spec, *n)?;
            let words: Vec<String> = entry
                .words
                .iter()
                .map(|w| spec.alphabet().render(w))
                .collect();
            match format.unwrap_or(Format::Json) {
                Format::Json => Ok(to_json(&serde_json::json!({
                    "n": entry.n,
                    "count": words.len(),
                    "exact": entry.exact,
                    "margin": entry.margin,
                    "words": words,
                }))),
                Format::Table | Format::Csv => Ok(words.iter().map(|w| format!("{w}\n")).collect()),
                f => Err(unsupported(f, "language")),
            }
        }
        Command::Glue {
            spec,
            c,
            brute_force,
            word_len,
        } => {
            let spec = read_spec(&spec.spec)?;
            let report = if *brute_force {
                if spec.is_sft() {
                    gluing_by_oracle(&spec, *c, *word_len)?
                } else {
                    gluing_evidence(&spec, *c, *word_len, DEFAULT_EVIDENCE_EXTRA)?
                }
            } else {
                is_block_gluing(&spec, *c)?
            };
            render_glue(&spec, &report, format)
        }
        Command::MinGlue { spec, c_max } => {
            let c = min_gluing_constant(&read_spec(&spec.spec)?, *c_max)?;
            match format.unwrap_or(Format::Json) {
                Format::Json => Ok(to_json(&serde_json::json!({ "c": c, "c_max": c_max }))),
                Format::Table | Format::Csv => Ok(c
                    .map(|c| format!("{c}\n"))
                    .unwrap_or_else(|| format!("none up to {c_max}\n"))),
                f => Err(unsupported(f, "min-glue")),
            }
        }
        Command::Periodic { spec } => {
            let spec = read_spec(&spec.spec)?;
            let w = spec.alphabet().render(&find_periodic_point(&spec)?);
            match format.unwrap_or(Format::Json) {
                Format::Json => Ok(to_json(
                    &serde_json::json!({ "period": w.len(), "word": w }),
                )),
                Format::Table | Format::Csv => Ok(format!("{w}\n")),
                f => Err(unsupported(f, "periodic")),
            }
        }
        Command::Rauzy { spec, n } => {
            if *n == 0 {
                return Err(Failure::Usage("--n must be at least 1".into()));
            }
            let spec = read_spec(&spec.spec)?;
            let g = build_rauzy(&spec, *n)?;
            let a = spec.alphabet();
            match format.unwrap_or(Format::Dot) {
                Format::Dot => Ok(g.to_dot()),
                Format::Json => Ok(to_json(&serde_json::json!({
                    "order": g.order(),
                    "vertices": g.vertices().iter().map(|v| a.render(v)).collect::<Vec<_>>(),
                    "edges": g.edge_words().iter().map(|w| a.render(w)).collect::<Vec<_>>(),
                }))),
                Format::Table | Format::Csv => Ok(g
                    .edges()
                    .iter()
                    .map(|e| {
                        format!(
                            "{},{},{}\n",
                            a.render(&g.vertices()[e.source]),
                            a.render(&g.vertices()[e.target]),
                            a.render(&g.edge_word(e))
                        )
                    })
                    .collect()),
            }
        }
        Command::Iso { a, b, n_a, n_b } => {
            let (sa, sb) = (read_spec(a)?, read_spec(b)?);
            let (ga, gb) = (build_rauzy(&sa, *n_a)?, build_rauzy(&sb, *n_b)?);
            let mapping = is_isomorphic(&ga, &gb);
            let pairs: Option<Vec<(String, String)>> = mapping.map(|m| {
                m.iter()
                    .enumerate()
                    .map(|(i, &j)| {
                        (
                            sa.alphabet().render(&ga.vertices()[i]),
                            sb.alphabet().render(&gb.vertices()[j]),
                        )
                    })
                    .collect()
            });
            match format.unwrap_or(Format::Json) {
                Format::Json => Ok(to_json(&serde_json::json!({
                    "isomorphic": pairs.is_some(),
                    "vertices": [ga.vertices().len(), gb.vertices().len()],
                    "edges": [ga.edges().len(), gb.edges().len()],
                    "mapping": pairs,
                }))),
                Format::Table | Format::Csv => Ok(match pairs {
                    Some(p) => p.iter().map(|(x, y)| format!("{x} -> {y}\n")).collect(),
                    None => "not isomorphic\n".into(),
                }),
                f => Err(unsupported(f, "iso")),
            }
        }
        Command::Hausdorff { a, b, max_len } => {
            let d = hausdorff_truncated(&read_spec(a)?, &read_spec(b)?, *max_len)?;
            match format.unwrap_or(Format::Json) {
                Format::Json => Ok(to_json(&serde_json::json!({
                    "distance": d,
                    "exact": d.is_exact(),
                    "exponent": d.exponent(),
                    "value": d.value(),
                    "display": d.to_string(),
                }))),
                Format::Table | Format::Csv => Ok(format!("{d}\n")),
                f => Err(unsupported(f, "hausdorff")),
            }
        }
        Command::Maximal {
            spec,
            c,
            n,
            refute_order,
        } => {
            let spec = read_spec(&spec.spec)?;
            let m = refute_order.unwrap_or(0);
            if m > DEFAULT_REFUTE_CAP {
                let _ = writeln!(err, "warning: refutation search at order {m} above {DEFAULT_REFUTE_CAP} may be slow");
            }
            let v = decide_maximal(&spec, *c, *n, m)?;
            match format.unwrap_or(Format::Json) {
                Format::Json => Ok(to_json(&v)),
                Format::Table | Format::Csv => {
                    let mut s = format!("{:?} at order {} for c={}\n", v.status, v.order, v.c)
                        .to_lowercase();
                    let a = spec.alphabet();
                    for f in &v.forcing {
                        s.push_str(&format!(
                            "{}{} forced by {} * {}\n",
                            a.render(&f.v),
                            a.symbol(f.a),
                            a.render(&f.v_prefix),
                            a.render(&f.u)
                        ));
                    }
                    if let Some(y) = &v.counterexample {
                        s.push_str(&format!("counterexample:\n{}", y.to_text()));
                    }
                    Ok(s)
                }
                f => Err(unsupported(f, "maximal")),
            }
        }
        Command::Bound { count, k, c } => {
            if *count == 0 || *k == 0 {
                return Err(Failure::Usage("--count and --k must be positive".into()));
            }
            let b = gluing_lower_bound(*count, *k, *c);
            match format.unwrap_or(Format::Json) {
                Format::Json => Ok(to_json(
                    &serde_json::json!({ "count": count.to_string(), "k": k, "c": c, "lower_bound": b }),
                )),
                Format::Table | Format::Csv => Ok(format!("{}\n", format_real(b))),
                f => Err(unsupported(f, "bound")),
            }
        }
        Command::Cap { c, n, h, spec } => {
            let h_hi = match (h, spec) {
                (Some(h), _) if h.is_finite() && *h >= 0.0 => *h,
                (Some(_), _) => {
                    return Err(Failure::Usage("--h must be a non-negative real".into()))
                }
                (None, Some(p)) => entropy_sft(&read_spec(p)?, tol)?.hi,
                (None, None) => entropy_sft(&gluing_floor_spec((*c).max(1)), tol)?.hi,
            };
            let d = language_cap(*c, *n, h_hi);
            match format.unwrap_or(Format::Json) {
                Format::Json => Ok(to_json(
                    &serde_json::json!({ "c": c, "n": n, "h_hi": h_hi, "d_n": d.to_string() }),
                )),
                Format::Table | Format::Csv => Ok(format!("{d}\n")),
                f => Err(unsupported(f, "cap")),
            }
        }
        Command::Scan(args) => cmd_scan(args, format, err),
        Command::Report { state } => render_state(&load_state(state)?, Some(state), format),
    }
}

#[derive(Serialize)]
struct EntropyOutput<'a> {
    lo: f64,
    hi: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    lo_log2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    hi_log2: Option<f64>,
    method: crate::entropy::EntropyMethod,
    iterations: u64,
    graph_order: usize,
    exact: bool,
    rounding: &'a str,
}

fn cmd_entropy(
    spec: &SubshiftSpec,
    order: Option<usize>,
    log2: bool,
    tol: f64,
    format: Option<Format>,
) -> CmdResult {
    let e = match order {
        Some(n) => entropy_sft_at(spec, tol, n)?,
        None => entropy_sft(spec, tol)?,
    };
    let ln2 = std::f64::consts::LN_2;
    let out = EntropyOutput {
        lo: e.lo,
        hi: e.hi,
        lo_log2: log2.then(|| e.lo / ln2),
        hi_log2: log2.then(|| e.hi / ln2),
        method: e.method,
        iterations: e.iterations,
        graph_order: e.graph_order,
        exact: e.exact,
        rounding: ROUNDING_POLICY,
    };
    match format.unwrap_or(Format::Json) {
        Format::Json => Ok(to_json(&out)),
        Format::Table => {
            let mut s = format!("h = {}\n", format_enclosure(e.lo, e.hi));
            if log2 {
                s.push_str(&format!(
                    "h/log 2 = {}\n",
                    format_enclosure(e.lo / ln2, e.hi / ln2)
                ));
            }
            Ok(s)
        }
        Format::Csv => Ok(format!(
            "lo,hi\n{},{}\n",
            format_dir(e.lo, Direction::Down),
            format_dir(e.hi, Direction::Up)
        )),
        f => Err(unsupported(f, "entropy")),
    }
}

#[derive(Serialize)]
struct GlueOutput<'a> {
    result: &'a str,
    method: crate::gluing::GluingMethod,
    c: usize,
    order: usize,
    empty_subshift: bool,
    witness_failure: Option<serde_json::Value>,
}

fn render_glue(spec: &SubshiftSpec, r: &GluingReport, format: Option<Format>) -> CmdResult {
    let a = spec.alphabet();
    let witness = r.witness_failure.as_ref().map(
        |w| serde_json::json!({ "u": a.render(&w.u), "v": a.render(&w.v), "distance": w.distance }),
    );
    let out = GlueOutput {
        result: if r.result { "yes" } else { "no" },
        method: r.method,
        c: r.c,
        order: r.order,
        empty_subshift: r.empty_subshift,
        witness_failure: witness,
    };
    match format.unwrap_or(Format::Json) {
        Format::Json => Ok(to_json(&out)),
        Format::Table | Format::Csv => {
            let mut s = format!("{}\n", out.result);
            if let Some(w) = &r.witness_failure {
                s.push_str(&format!(
                    "cannot glue {} and {} at distance {}\n",
                    a.render(&w.u),
                    a.render(&w.v),
                    w.distance
                ));
            }
            Ok(s)
        }
        f => Err(unsupported(f, "glue")),
    }
}

fn thread_count(args: &ScanArgs) -> std::result::Result<Option<usize>, Failure> {
    if let Some(t) = args.threads {
        return if t == 0 {
            Err(Failure::Usage("--threads must be positive".into()))
        } else {
            Ok(Some(t))
        };
    }
    match std::env::var(THREADS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(t) if t > 0 => Ok(Some(t)),
            _ => Err(Failure::Usage(format!(
                "{THREADS_ENV} must be a positive integer"
            ))),
        },
        Err(_) => Ok(None),
    }
}

fn cmd_scan(args: &ScanArgs, format: Option<Format>, err: &mut dyn Write) -> CmdResult {
    if let Some(s) = args.budget_seconds {
        if !s.is_finite() || s < 0.0 {
            return Err(Failure::Domain(Error::InvalidBudget));
        }
    }
    let threads = thread_count(args)?;
    let mut state = match &args.resume {
        Some(path) => {
            let state = load_state(path)?;
            let budget = budget_for(args, state.c, Some((&state.budget, state.elapsed_seconds)));
            resume(state, budget)?
        }
        None => {
            let c = args.c.expect("clap requires --c without --resume");
            let budget = budget_for(args, c, None);
            match &args.target {
                Some(t) => {
                    let target = read_spec(t)?;
                    let below = if args.below.is_empty() {
                        vec![gluing_floor_spec(c.max(1))]
                    } else {
                        args.below
                            .iter()
                            .map(|p| read_spec(p))
                            .collect::<Result<Vec<_>>>()?
                    };
                    init_scan_with_target(c, budget, &target, &below, true)?
                }
                None => init_scan(c, budget)?,
            }
        }
    };
    let started = std::time::Instant::now();
    let mut body = || -> Result<SpectrumState> {
        while state.verdict == Verdict::Running {
            state = step_order(&state)?;
            if let Some(out) = &args.out {
                save_state(&state, out)?;
            }
        }
        Ok(state.clone())
    };
    let state = match threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::InvalidArgument(e.to_string()))?
            .install(body)?,
        None => body()?,
    };
    if let Some(out) = &args.out {
        save_state(&state, out)?;
    }
    let _ = writeln!(
        err,
        "scan: {:?} after {:.3}s",
        state.verdict,
        started.elapsed().as_secs_f64()
    );
    render_state(&state, args.out.as_deref(), format)
}

fn budget_for(args: &ScanArgs, c: usize, previous: Option<(&Budget, f64)>) -> Budget {
    let spent = previous.map_or(0.0, |(_, t)| t);
    let mut b = previous
        .map(|(b, _)| b.clone())
        .unwrap_or_else(|| Budget::default_for(c));
    if let Some(s) = args.budget_seconds {
        // A resumed run gets the new allowance on top of the time spent.
        b.max_seconds = spent + s;
    }
    if let Some(e) = args.max_evaluations {
        b.max_evaluations = e;
    }
    if let Some(o) = args.max_order {
        b.max_order = o;
    }
    b
}

fn render_state(state: &SpectrumState, path: Option<&Path>, format: Option<Format>) -> CmdResult {
    let mut report = verdict_report(state);
    report.state_path = path.map(|p| p.display().to_string());
    match format.unwrap_or(Format::Json) {
        Format::Json => Ok(to_json(&report)),
        Format::Table => Ok(report_table(&report)),
        Format::Csv => Ok(candidates_csv(state)),
        f => Err(unsupported(f, "scan")),
    }
}
