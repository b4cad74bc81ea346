use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use coarsekit::coarse::{
    build_coarse_decomposition, builtin_corpus, conjecture_scan, lemma_control_unsubdivided, read_corpus_dir,
    verify_lemma_obsk2k, write_scan_csv, ConstructionParams,
};
use coarsekit::document::{Check, DecompositionDocument, DocumentKind, Provenance};
use coarsekit::graph::{generators, parse_graph, to_edge_list, to_graph6, two_subdivision, Graph};
use coarsekit::independence::alpha;
use coarsekit::laws::check_sep_tw_laws;
use coarsekit::separators::{
    admits_kr_balanced_separators_indicator, find_centred_balanced_separator, separation_number_indicator,
    WeightFunction, WEIGHTING_RESTRICTION,
};
use coarsekit::treedecomp::{decomposition_from_separator_oracle, exact_treewidth, ClassicOutcome};
use coarsekit::{CoarseError, Execution, Limits, VertexSet};

/// `println!` that tolerates a reader closing the pipe early.
macro_rules! say {
    ($($arg:tt)*) => {
        say(format_args!($($arg)*))
    };
}

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_HYPOTHESIS: u8 = 3;
const EXIT_INTERNAL: u8 = 4;

#[derive(Parser)]
#[command(
    name = "coarsekit",
    version,
    about = "Balanced separators and centred tree-decompositions of small graphs"
)]
struct Cli {
    /// Run every sweep on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph: path N | cycle N | complete N | grid R C | biclique S T |
    /// random N P | tree N | series-parallel N | two-subdivision-of:<family> ...
    Gen {
        family: String,
        args: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Graph6)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Report n, m, α, treewidth and indicator separation number as JSON.
    Analyze { graph: PathBuf },
    /// Search for a (k, r)-centred balanced separator.
    Sep {
        graph: PathBuf,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        r: usize,
        /// File of `vertex weight` lines.
        #[arg(long, group = "weighting")]
        weights: Option<PathBuf>,
        /// Comma-separated vertices, or `branch-vertices` (degree other than 2).
        #[arg(long, group = "weighting")]
        indicator: Option<String>,
        /// Check every indicator weighting.
        #[arg(long, group = "weighting")]
        all_indicators: bool,
    },
    /// Build a tree-decomposition document.
    Build {
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Coarse)]
        mode: Mode,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        t: usize,
        /// Base-case threshold on α.
        #[arg(long, default_value_t = 5)]
        base: usize,
        /// Cap on α(X); defaults to base / 2.
        #[arg(long)]
        cap: Option<usize>,
        /// Denominator of the Z thresholds; defaults to k.
        #[arg(long)]
        z_denominator: Option<u64>,
        /// Use the literal thresholds (every desk-scale graph becomes one bag).
        #[arg(long, conflicts_with_all = ["cap", "z_denominator"])]
        literal: bool,
        /// Comma-separated vertices whose closed neighbourhood must share a bag.
        #[arg(long, default_value = "")]
        x: String,
        /// Separator budget for classic mode; defaults to the indicator separation number.
        #[arg(long)]
        max_sep_size: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a decomposition document against a graph.
    Verify {
        graph: PathBuf,
        document: PathBuf,
        /// Comma-separated subset of valid,centred,hub; defaults to all that apply.
        #[arg(long, value_delimiter = ',')]
        check: Vec<CheckArg>,
    },
    /// Exhaustive obstruction checks plus the separator/treewidth laws.
    LemmaSuite {
        #[arg(long, value_delimiter = ',', default_value = "1,2")]
        k: Vec<usize>,
        /// Largest order of the labelled-graph law sweep.
        #[arg(long, default_value_t = 6)]
        law_max_n: usize,
    },
    /// Emit the admits / realized-centredness table as CSV.
    Scan {
        /// Directory of graph files (one graph per file).
        #[arg(long, conflicts_with = "corpus")]
        dir: Option<PathBuf>,
        /// Built-in corpus: trees-cycles or lemma.
        #[arg(long)]
        corpus: Option<String>,
        #[arg(long, value_delimiter = ',', default_value = "1")]
        k: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "5")]
        base: Vec<usize>,
        #[arg(long)]
        z_denominator: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Graph6,
    Edgelist,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Coarse,
    Classic,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckArg {
    Valid,
    Centred,
    Hub,
}

/// A failed run: exit code, human message, optional JSON for stdout.
struct Failure {
    code: u8,
    message: String,
    payload: Option<Value>,
}

impl From<CoarseError> for Failure {
    fn from(e: CoarseError) -> Self {
        let (code, payload) = match &e {
            CoarseError::Hypothesis(f) => (
                EXIT_HYPOTHESIS,
                Some(json!({
                    "error": "hypothesis-failure",
                    "k": f.k,
                    "subgraph": f.subgraph,
                    "independent_set": f.independent_set,
                })),
            ),
            CoarseError::Internal(_) => (EXIT_INTERNAL, None),
            _ => (EXIT_INPUT, None),
        };
        Failure {
            code,
            message: e.to_string(),
            payload,
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        input(e.to_string())
    }
}

fn input(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: message.into(),
        payload: None,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    match run(cli.command, exec) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            if let Some(payload) = f.payload {
                say!(
                    "{}",
                    serde_json::to_string_pretty(&payload).expect("payload serializes")
                );
            }
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command, exec: Execution) -> Result<u8, Failure> {
    let limits = Limits::from_env()?;
    match command {
        Command::Gen {
            family,
            args,
            seed,
            format,
            out,
        } => {
            let g = generate(&family, &args, seed)?;
            let text = match format {
                Format::Graph6 => format!("{}\n", to_graph6(&g)),
                Format::Edgelist => to_edge_list(&g),
            };
            emit(out.as_deref(), &text)?;
            Ok(0)
        }
        Command::Analyze { graph } => {
            let g = read_graph(&graph)?;
            let report = json!({
                "n": g.n(),
                "m": g.m(),
                "alpha": guarded(alpha(&g, None).map(|a| a.value))?,
                "treewidth": guarded(exact_treewidth(&g, &limits).map(|(w, _)| w))?,
                "separation_number_indicator": guarded(separation_number_indicator(&g, &limits, exec))?,
                "weighting": WEIGHTING_RESTRICTION,
            });
            say!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            Ok(0)
        }
        Command::Sep {
            graph,
            k,
            r,
            weights,
            indicator,
            all_indicators,
        } => {
            let g = read_graph(&graph)?;
            if all_indicators {
                let report = admits_kr_balanced_separators_indicator(&g, k, r, &limits, exec)?;
                say!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
                return Ok(0);
            }
            let mu = match (weights, indicator) {
                (Some(path), _) => WeightFunction::parse(&read_text(&path)?, g.n())?,
                (None, Some(spec)) => WeightFunction::indicator(g.n(), &indicator_set(&g, &spec)?),
                (None, None) => return Err(input("one of --weights, --indicator, --all-indicators is required")),
            };
            match find_centred_balanced_separator(&g, &mu, k, r)? {
                Some(w) => say!("{}", serde_json::to_string_pretty(&w).expect("witness serializes")),
                None => say!("none"),
            }
            Ok(0)
        }
        Command::Build {
            graph,
            mode,
            k,
            t,
            base,
            cap,
            z_denominator,
            literal,
            x,
            max_sep_size,
            out,
        } => {
            let g = read_graph(&graph)?;
            let provenance = Provenance {
                command_line: std::env::args().collect(),
                seed: None,
                guard_tripped: false,
            };
            let doc = match mode {
                Mode::Coarse => {
                    let params = if literal {
                        ConstructionParams::literal(k, t)
                    } else {
                        let mut p = ConstructionParams::desk(k, t, base);
                        if let Some(cap) = cap {
                            p.x_alpha_cap = cap.into();
                        }
                        if let Some(den) = z_denominator {
                            p.z_fraction_denominator = den;
                        }
                        p
                    };
                    let x = vertex_list(&x)?;
                    let built = build_coarse_decomposition(&g, &x, &params)?;
                    DecompositionDocument::coarse(&g, &built, &params, provenance)
                }
                Mode::Classic => {
                    let budget = match max_sep_size {
                        Some(b) => b,
                        None => separation_number_indicator(&g, &limits, exec)?.max(1),
                    };
                    match decomposition_from_separator_oracle(&g, budget, &limits)? {
                        ClassicOutcome::Built { decomposition, report } => {
                            DecompositionDocument::classic(&g, &decomposition, &report, provenance)
                        }
                        ClassicOutcome::OracleFailure { piece, tracked } => {
                            return Err(Failure {
                                code: EXIT_HYPOTHESIS,
                                message: format!("no balanced separator of size {budget} for the tracked set"),
                                payload: Some(json!({
                                    "error": "separator-oracle-failure",
                                    "max_sep_size": budget,
                                    "piece": piece,
                                    "tracked": tracked,
                                })),
                            })
                        }
                    }
                }
            };
            let text = doc.to_json();
            let reparsed = DecompositionDocument::from_json(&text)?;
            let violations = reparsed.verify(&g, default_checks(&reparsed))?;
            if reparsed != doc || !violations.is_empty() {
                return Err(Failure {
                    code: EXIT_INTERNAL,
                    message: format!("emitted document failed re-verification: {violations:?}"),
                    payload: None,
                });
            }
            emit(out.as_deref(), &text)?;
            Ok(0)
        }
        Command::Verify { graph, document, check } => {
            let g = read_graph(&graph)?;
            let doc = DecompositionDocument::from_json(&read_text(&document)?)?;
            let checks: Vec<Check> = if check.is_empty() {
                default_checks(&doc).to_vec()
            } else {
                check
                    .iter()
                    .map(|c| match c {
                        CheckArg::Valid => Check::Valid,
                        CheckArg::Centred => Check::Centred,
                        CheckArg::Hub => Check::Hub,
                    })
                    .collect()
            };
            let violations = doc.verify(&g, &checks)?;
            if violations.is_empty() {
                say!("ok");
                Ok(0)
            } else {
                for v in &violations {
                    say!("{v}");
                }
                Ok(EXIT_CHECK_FAILED)
            }
        }
        Command::LemmaSuite { k, law_max_n } => lemma_suite(&k, law_max_n, exec),
        Command::Scan {
            dir,
            corpus,
            k,
            base,
            z_denominator,
            out,
        } => {
            let entries = match (dir, corpus) {
                (Some(dir), _) => read_corpus_dir(&dir)?,
                (None, name) => {
                    let name = name.unwrap_or_else(|| "trees-cycles".into());
                    builtin_corpus(&name).ok_or_else(|| input(format!("unknown corpus {name:?}")))?
                }
            };
            let mut grid = Vec::new();
            for &k in &k {
                for &b in &base {
                    let mut p = ConstructionParams::desk(k, 1, b);
                    if let Some(den) = z_denominator {
                        p.z_fraction_denominator = den;
                    }
                    p.check()?;
                    grid.push(p);
                }
            }
            let rows = conjecture_scan(&entries, &grid, &limits, exec);
            let mut buffer = Vec::new();
            write_scan_csv(&rows, &mut buffer)?;
            emit(out.as_deref(), &String::from_utf8(buffer).expect("CSV is UTF-8"))?;
            Ok(0)
        }
    }
}

fn lemma_suite(ks: &[usize], law_max_n: usize, exec: Execution) -> Result<u8, Failure> {
    let mut failed = Vec::new();
    for &k in ks {
        let report = verify_lemma_obsk2k(k)?;
        say!(
            "k={k}: K_{}^(2) on {} vertices, {} centre sets checked, {} balanced separators found",
            2 * k + 2,
            report.host_vertices,
            report.centre_sets_checked,
            report.balanced_found
        );
        if report.balanced_found > 0 {
            failed.push(json!({ "check": "obstruction", "report": report }));
        }
        let control = lemma_control_unsubdivided(k)?;
        say!(
            "k={k} control: K_{} on {} vertices, {} centre sets checked, {} balanced",
            2 * k + 2,
            control.host_vertices,
            control.centre_sets_checked,
            control.balanced_found
        );
        if control.balanced_found == 0 {
            failed.push(json!({ "check": "control", "report": control }));
        }
    }
    let laws = check_sep_tw_laws(law_max_n, exec)?;
    say!(
        "laws: {} labelled graphs with n <= {} checked for sep <= tw + 1 and tw <= 4 sep ({}), {} violations",
        laws.graphs_checked,
        laws.max_n,
        laws.weighting,
        laws.violations.len()
    );
    if !laws.violations.is_empty() {
        failed.push(json!({ "check": "laws", "violations": laws.violations }));
    }
    if failed.is_empty() {
        Ok(0)
    } else {
        Err(Failure {
            code: EXIT_INTERNAL,
            message: format!("{} lemma-suite checks failed", failed.len()),
            payload: Some(Value::Array(failed)),
        })
    }
}

fn default_checks(doc: &DecompositionDocument) -> &'static [Check] {
    match doc.kind {
        DocumentKind::Coarse => &[Check::Valid, Check::Centred, Check::Hub],
        DocumentKind::Classic => &[Check::Valid],
    }
}

/// A number, or `{"omitted": reason}` when a scale guard refuses.
fn guarded(result: coarsekit::Result<usize>) -> Result<Value, Failure> {
    match result {
        Ok(v) => Ok(json!(v)),
        Err(e @ CoarseError::ScaleGuard { .. }) => Ok(json!({ "omitted": e.to_string() })),
        Err(e) => Err(e.into()),
    }
}

fn generate(family: &str, args: &[String], seed: u64) -> Result<Graph, Failure> {
    if let Some(inner) = family.strip_prefix("two-subdivision-of:") {
        return Ok(two_subdivision(&generate(inner, args, seed)?).graph);
    }
    let arity = |want: usize| -> Result<(), Failure> {
        if args.len() == want {
            Ok(())
        } else {
            Err(input(format!("{family} takes {want} arguments, got {}", args.len())))
        }
    };
    let int = |i: usize| -> Result<usize, Failure> {
        args[i]
            .parse()
            .map_err(|_| input(format!("{:?} is not a vertex count", args[i])))
    };
    let prob = |i: usize| -> Result<f64, Failure> {
        match args[i].parse::<f64>() {
            Ok(p) if (0.0..=1.0).contains(&p) => Ok(p),
            _ => Err(input(format!("{:?} is not a probability", args[i]))),
        }
    };
    Ok(match family {
        "path" => {
            arity(1)?;
            generators::path(int(0)?)
        }
        "cycle" => {
            arity(1)?;
            generators::cycle(int(0)?)
        }
        "complete" => {
            arity(1)?;
            generators::complete(int(0)?)
        }
        "grid" => {
            arity(2)?;
            generators::grid(int(0)?, int(1)?)
        }
        "biclique" => {
            arity(2)?;
            generators::complete_bipartite(int(0)?, int(1)?)
        }
        "random" => {
            arity(2)?;
            generators::random(int(0)?, prob(1)?, seed)
        }
        "tree" => {
            arity(1)?;
            generators::random_tree(int(0)?, seed)
        }
        "series-parallel" => {
            arity(1)?;
            generators::random_series_parallel(int(0)?, seed)
        }
        _ => return Err(input(format!("unknown family {family:?}"))),
    })
}

fn read_text(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        return Ok(text);
    }
    fs::read_to_string(path).map_err(|e| input(format!("cannot read {}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    Ok(parse_graph(&read_text(path)?)?)
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| input(format!("cannot write {}: {e}", path.display()))),
        None => match io::stdout().write_all(text.as_bytes()) {
            Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(e.into()),
            _ => Ok(()),
        },
    }
}

fn say(args: std::fmt::Arguments) {
    if let Err(e) = writeln!(io::stdout(), "{args}") {
        if e.kind() != io::ErrorKind::BrokenPipe {
            eprintln!("error: cannot write output: {e}");
        }
    }
}

fn vertex_list(spec: &str) -> Result<VertexSet, Failure> {
    spec.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| input(format!("{s:?} is not a vertex"))))
        .collect()
}

fn indicator_set(g: &Graph, spec: &str) -> Result<VertexSet, Failure> {
    if spec == "branch-vertices" {
        return Ok((0..g.n()).filter(|&v| g.degree(v) != 2).collect());
    }
    let set = vertex_list(spec)?;
    g.check_set(&set)?;
    Ok(set)
}
