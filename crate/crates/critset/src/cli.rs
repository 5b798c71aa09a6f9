//! Command-line interface.
//!
//! Exit codes: 0 success, 1 a check failed, 2 bad input or configuration,
//! 3 a limit-dependent field was requested beyond its limit.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};
use critset_core::critical::{build_hx, check_strict_subsets, ker};
use critset_core::unicyclic::{generate, generate_random, recognize, Recognition, Step};
use critset_core::{Error, Graph};
use serde_json::json;

use crate::checks::{registry, Limits};
use crate::corpus::Family;
use crate::format::{
    parse_graph, parse_script, write_edge_list, write_graph6, write_script, Coloring, FormatError,
    GraphFormat,
};
use crate::report::analyze;
use crate::sweep::{run_sweep, VerificationSweepConfig};

macro_rules! say {
    ($($t:tt)*) => { emit(&format!($($t)*)) };
}

macro_rules! sayln {
    ($($t:tt)*) => { emit(&(format!($($t)*) + "\n")) };
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

pub const EXIT_OK: u8 = 0;
pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_LIMIT: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "critset", version, about = "Critical independent sets, ker, core and diadem of small graphs")]
pub struct Cli {
    /// Emit JSON instead of a text summary.
    #[arg(long, global = true)]
    json: bool,
    /// Leave the timestamp out of reports.
    #[arg(long, global = true)]
    no_timestamp: bool,
    /// Seed for every random choice.
    #[arg(long, global = true, env = "CRITSET_SEED")]
    seed: Option<u64>,
    /// Largest n for subset enumeration (capped at 20).
    #[arg(long, global = true, env = "CRITSET_ENUM_LIMIT", default_value_t = 16)]
    enum_limit: usize,
    /// Largest n for enumerating all maximum independent sets (capped at 20).
    #[arg(long, global = true, env = "CRITSET_OMEGA_LIMIT", default_value_t = 20)]
    omega_limit: usize,
    /// Largest n for the exact independence number (capped at 64).
    #[arg(long, global = true, env = "CRITSET_ALPHA_LIMIT", default_value_t = 40)]
    alpha_limit: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute the full report for one graph.
    Analyze {
        path: PathBuf,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        /// Exit with code 3 when a limit forced a field to be skipped.
        #[arg(long)]
        require_exact: bool,
    },
    /// Build a unicyclic non-KE graph from a script or at random.
    Generate(GenerateArgs),
    /// Recognise a connected unicyclic graph and recover its colouring.
    Recognize {
        path: PathBuf,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        /// Compare against a colouring sidecar; exit 1 on mismatch.
        #[arg(long)]
        expect: Option<PathBuf>,
        /// Write the recovered colouring sidecar here.
        #[arg(long)]
        coloring_out: Option<PathBuf>,
    },
    /// Run verification checks over a corpus.
    Verify(VerifyArgs),
    /// Build the bipartite gadget on an independent set and analyse it.
    Hx {
        path: PathBuf,
        /// Comma-separated vertices, e.g. `0,2,4`.
        #[arg(long, value_delimiter = ',', required = true)]
        set: Vec<usize>,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
    },
}

#[derive(Clone, Copy, Debug, clap::ValueEnum)]
enum FormatArg {
    EdgeList,
    Graph6,
}

impl From<FormatArg> for GraphFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::EdgeList => GraphFormat::EdgeList,
            FormatArg::Graph6 => GraphFormat::Graph6,
        }
    }
}

#[derive(Args, Debug)]
struct GenerateArgs {
    /// Build script (`cycle k`, then `p2 v` / `leaf v` lines).
    #[arg(long, conflicts_with_all = ["cycle", "paths", "leaves"])]
    script: Option<PathBuf>,
    /// Odd cycle length for a random script.
    #[arg(long)]
    cycle: Option<usize>,
    /// Path steps in a random script.
    #[arg(long, default_value_t = 0)]
    paths: usize,
    /// Leaf steps in a random script.
    #[arg(long, default_value_t = 0)]
    leaves: usize,
    /// Write the graph6 line here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Colouring sidecar path; defaults to `<out>.coloring.json` with `--out`.
    #[arg(long)]
    coloring: Option<PathBuf>,
    /// Also write the (possibly random) script.
    #[arg(long)]
    script_out: Option<PathBuf>,
    /// Write an edge list instead of graph6.
    #[arg(long)]
    edge_list: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// JSON sweep configuration; flags below override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum)]
    family: Option<Family>,
    #[arg(long)]
    min_n: Option<usize>,
    #[arg(long)]
    max_n: Option<usize>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    edge_probability: Option<f64>,
    #[arg(long)]
    min_cycle: Option<usize>,
    #[arg(long)]
    max_cycle: Option<usize>,
    #[arg(long)]
    max_added: Option<usize>,
    /// Comma-separated check ids; default all.
    #[arg(long, value_delimiter = ',')]
    checks: Vec<String>,
    #[arg(long)]
    supermodular_pairs: Option<usize>,
    #[arg(long, env = "CRITSET_THREADS")]
    threads: Option<usize>,
    /// Counterexample certificate path, written when a check fails.
    #[arg(long, default_value = "counterexamples.cert")]
    cert: PathBuf,
    /// Testing aid: invert the verdicts of this check.
    #[arg(long)]
    inject_failure: Option<String>,
    /// Print the check ids and exit.
    #[arg(long)]
    list_checks: bool,
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        fail(EXIT_INPUT, e.to_string())
    }
}

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| fail(EXIT_INPUT, format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| fail(EXIT_INPUT, format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path, format: Option<FormatArg>) -> Result<(Graph, GraphFormat, Vec<u8>), Failure> {
    let bytes = read(path)?;
    let text = std::str::from_utf8(&bytes)
        .map_err(|e| fail(EXIT_INPUT, format!("{}: not UTF-8 ({e})", path.display())))?;
    let (g, f) = parse_graph(text, format.map(Into::into))
        .map_err(|e| fail(EXIT_INPUT, format!("{}: {e}", path.display())))?;
    Ok((g, f, bytes))
}

fn timestamp(cli: &Cli) -> Option<u64> {
    (!cli.no_timestamp).then(|| {
        SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0)
    })
}

impl Cli {
    fn limits(&self) -> Limits {
        Limits {
            enumeration: self.enum_limit,
            omega: self.omega_limit,
            alpha: self.alpha_limit,
        }
    }
}

/// Parses `args` and runs the command; returns the exit code.
pub fn main_with_args<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    match &cli.command {
        Command::Analyze {
            path,
            format,
            require_exact,
        } => cmd_analyze(cli, path, *format, *require_exact),
        Command::Generate(args) => cmd_generate(cli, args),
        Command::Recognize {
            path,
            format,
            expect,
            coloring_out,
        } => cmd_recognize(cli, path, *format, expect.as_deref(), coloring_out.as_deref()),
        Command::Verify(args) => cmd_verify(cli, args),
        Command::Hx { path, set, format } => cmd_hx(cli, path, set, *format),
    }
}

fn cmd_analyze(cli: &Cli, path: &Path, format: Option<FormatArg>, require_exact: bool) -> Result<u8, Failure> {
    let (g, f, bytes) = load_graph(path, format)?;
    let mut report = analyze(&g, &bytes, f, cli.limits(), cli.seed.unwrap_or(0));
    report.generated_at = timestamp(cli);
    if cli.json {
        say!("{}", report.to_json());
    } else {
        say!("{}", report.to_text());
    }
    if !report.failed_checks().is_empty() {
        return Ok(EXIT_CHECK_FAILED);
    }
    if require_exact && report.has_skipped_fields() {
        eprintln!("error: some fields were skipped because of size limits");
        return Ok(EXIT_LIMIT);
    }
    Ok(EXIT_OK)
}

fn script_failure(e: Error, lines: &[usize]) -> Failure {
    match e {
        Error::Script { step, fault } => {
            let line = lines.get(step).copied().unwrap_or(1);
            fail(EXIT_INPUT, format!("script line {line}: {fault}"))
        }
        other => fail(EXIT_INPUT, other.to_string()),
    }
}

fn cmd_generate(cli: &Cli, args: &GenerateArgs) -> Result<u8, Failure> {
    let (script, colored) = match (&args.script, args.cycle) {
        (Some(path), _) => {
            let bytes = read(path)?;
            let text = String::from_utf8_lossy(&bytes);
            let parsed = parse_script(&text)?;
            let colored = generate(&parsed.script).map_err(|e| {
                // cycle errors belong to the `cycle` line
                let mut lines = parsed.step_lines.clone();
                if matches!(e, Error::Script { fault: critset_core::ScriptFault::BadCycleLength(_), .. }) {
                    lines = vec![first_directive_line(&text)];
                }
                script_failure(e, &lines)
            })?;
            (parsed.script, colored)
        }
        (None, Some(k)) => generate_random(k, args.paths, args.leaves, cli.seed.unwrap_or(0))
            .map_err(|e| fail(EXIT_INPUT, e.to_string()))?,
        (None, None) => return Err(fail(EXIT_INPUT, "give --script or --cycle")),
    };
    let graph_text = if args.edge_list {
        write_edge_list(&colored.graph)
    } else {
        write_graph6(&colored.graph) + "\n"
    };
    let coloring = Coloring::from(&colored);
    let sidecar = args.coloring.clone().or_else(|| {
        args.out.as_ref().map(|o| {
            let mut s = o.clone().into_os_string();
            s.push(".coloring.json");
            PathBuf::from(s)
        })
    });
    if let Some(out) = &args.out {
        write(out, &graph_text)?;
    }
    if let Some(path) = &sidecar {
        write(path, &coloring.to_json())?;
    }
    if let Some(path) = &args.script_out {
        write(path, &write_script(&script))?;
    }
    if cli.json {
        let leaves = script.steps.iter().filter(|s| matches!(s, Step::AttachLeaf(_))).count();
        let value = json!({
            "n": colored.graph.order(),
            "m": colored.graph.edge_count(),
            "graph6": write_graph6(&colored.graph),
            "coloring": coloring,
            "leaf_steps": leaves,
            "script": write_script(&script),
        });
        sayln!("{}", serde_json::to_string_pretty(&value).expect("plain data"));
    } else if args.out.is_none() {
        say!("{graph_text}");
    } else {
        sayln!(
            "n = {}, blue {}, red {}, black {}",
            colored.graph.order(),
            colored.blue.len(),
            colored.red.len(),
            colored.black.len()
        );
    }
    Ok(EXIT_OK)
}

fn first_directive_line(text: &str) -> usize {
    text.lines()
        .position(|l| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        })
        .map_or(1, |i| i + 1)
}

fn cmd_recognize(
    cli: &Cli,
    path: &Path,
    format: Option<FormatArg>,
    expect: Option<&Path>,
    coloring_out: Option<&Path>,
) -> Result<u8, Failure> {
    let (g, _, _) = load_graph(path, format)?;
    let verdict = recognize(&g).map_err(|e| fail(EXIT_INPUT, e.to_string()))?;
    let expected = match expect {
        Some(p) => Some(Coloring::from_json(&String::from_utf8_lossy(&read(p)?))?),
        None => None,
    };
    let (value, found) = match &verdict {
        Recognition::NonKe(c) => {
            let coloring = Coloring::from(c);
            if let Some(p) = coloring_out {
                write(p, &coloring.to_json())?;
            }
            (json!({"verdict": "non-KE", "coloring": coloring}), Some(coloring))
        }
        Recognition::Ke(r) => (json!({"verdict": "KE", "reason": format!("{r:?}")}), None),
    };
    if cli.json {
        sayln!("{}", serde_json::to_string_pretty(&value).expect("plain data"));
    } else {
        match &found {
            Some(c) => sayln!(
                "non-KE: cycle {:?}, red {:?}, black {:?}",
                c.cycle, c.red, c.black
            ),
            None => sayln!("KE ({})", value["reason"].as_str().unwrap_or("")),
        }
    }
    if let Some(e) = expected {
        if found.as_ref() != Some(&e) {
            eprintln!("recovered colouring differs from the expected one");
            return Ok(EXIT_CHECK_FAILED);
        }
    }
    Ok(EXIT_OK)
}

fn cmd_verify(cli: &Cli, args: &VerifyArgs) -> Result<u8, Failure> {
    if args.list_checks {
        for c in registry() {
            sayln!("{:<36} {}", c.id, c.summary);
        }
        return Ok(EXIT_OK);
    }
    let mut config = match &args.config {
        Some(path) => {
            let bytes = read(path)?;
            serde_json::from_slice::<VerificationSweepConfig>(&bytes)
                .map_err(|e| fail(EXIT_INPUT, format!("{}: {e}", path.display())))?
        }
        None => VerificationSweepConfig {
            limits: cli.limits(),
            ..VerificationSweepConfig::default()
        },
    };
    macro_rules! take {
        ($($field:ident),*) => { $(if let Some(v) = args.$field { config.$field = v; })* };
    }
    take!(family, min_n, max_n, samples, min_cycle, max_cycle, max_added, supermodular_pairs);
    if args.edge_probability.is_some() {
        config.edge_probability = args.edge_probability;
    }
    if args.threads.is_some() {
        config.threads = args.threads;
    }
    if !args.checks.is_empty() {
        config.checks = args.checks.clone();
    }
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    if let Some(id) = &args.inject_failure {
        if crate::checks::find(id).is_none() {
            return Err(fail(EXIT_INPUT, format!("unknown check {id:?}")));
        }
    }
    let mut report =
        run_sweep(&config, args.inject_failure.as_deref()).map_err(|e| fail(EXIT_INPUT, e))?;
    report.generated_at = timestamp(cli);
    if cli.json {
        say!("{}", report.to_json());
    } else {
        say!("{}", report.to_text());
    }
    if report.passed() {
        return Ok(EXIT_OK);
    }
    write(&args.cert, &report.certificate())?;
    eprintln!(
        "{} check failures; certificate written to {}",
        report.failure_count,
        args.cert.display()
    );
    Ok(EXIT_CHECK_FAILED)
}

fn cmd_hx(cli: &Cli, path: &Path, set: &[usize], format: Option<FormatArg>) -> Result<u8, Failure> {
    let (g, _, _) = load_graph(path, format)?;
    let x = g
        .vertex_set(set.iter().copied())
        .map_err(|e| fail(EXIT_INPUT, e.to_string()))?;
    let hx = build_hx(&g, &x).map_err(|e| fail(EXIT_INPUT, e.to_string()))?;
    let gadget_ker = ker(&hx.gadget);
    let precondition = match check_strict_subsets(&g, &x) {
        Ok(_) => None,
        Err(e) => Some(e.to_string()),
    };
    let ker_is_x = gadget_ker == hx.embedded_x();
    let value = json!({
        "x": x.to_vec(),
        "difference": g.difference(&x).expect("same universe"),
        "gadget": {
            "n": hx.gadget.order(),
            "edges": hx.gadget.edges().collect::<Vec<_>>(),
            "graph6": write_graph6(&hx.gadget),
            "v": hx.v_label,
            "w": hx.w_label,
            "embedding": hx.embedding,
        },
        "gadget_ker": gadget_ker.to_vec(),
        "gadget_ker_in_host": hx.to_host(&gadget_ker).to_vec(),
        "ker_equals_x": ker_is_x,
        "precondition": match &precondition {
            None => json!("holds"),
            Some(reason) => json!({"violated": reason}),
        },
    });
    if cli.json {
        sayln!("{}", serde_json::to_string_pretty(&value).expect("plain data"));
    } else {
        sayln!(
            "H_X: {} vertices, {} edges ({})",
            hx.gadget.order(),
            hx.gadget.edge_count(),
            write_graph6(&hx.gadget)
        );
        sayln!("ker(H_X) in host labels: {:?}", hx.to_host(&gadget_ker).to_vec());
        sayln!("ker(H_X) = X: {ker_is_x}");
        match &precondition {
            None => sayln!("hypotheses hold"),
            Some(r) => sayln!("hypotheses fail: {r}"),
        }
    }
    // with the hypotheses in place the identity is guaranteed
    if precondition.is_none() && !ker_is_x {
        return Ok(EXIT_CHECK_FAILED);
    }
    Ok(EXIT_OK)
}
