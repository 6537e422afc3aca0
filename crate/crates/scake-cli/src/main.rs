//! Keyword extraction CLI: extract, evaluate, bench, and stats over plain
//! UTF-8 corpora.

use clap::{Args, Parser, Subcommand};
use scake::corpus::{ingest_corpus, Corpus, CorpusDoc};
use scake::pipeline::{
    extract_to_csv, extract_to_json, load_resources, report_to_json, run_bench, run_evaluate,
    run_extract, run_stats, Method, Resources, RunConfig, StatsSpec,
};
use scake::Error;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_USAGE: u8 = 1;
const EXIT_DATA: u8 = 2;

#[derive(Parser)]
#[command(name = "scake", version, about = "Graph-based keyword extraction and evaluation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Extract keywords from a text file or a directory of text files.
    Extract(ExtractArgs),
    /// Evaluate a method against gold-standard files, macro-averaged.
    Evaluate(EvaluateArgs),
    /// Time graph construction (including pre-processing) per document.
    Bench(BenchArgs),
    /// Average graph topology statistics per construction scheme.
    Stats(StatsArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Method: scake | lake | textrank | degext | kcore | positionrank
    #[arg(long)]
    method: Option<String>,
    /// Dataset label; sets the default k (hulth2003=25, krapivin2009=10,
    /// nlm500=30, semeval2010=30).
    #[arg(long)]
    dataset: Option<String>,
    /// Number of keywords to extract.
    #[arg(long)]
    k: Option<usize>,
    /// Candidate filter: sigma | pos | all
    #[arg(long)]
    candidate_mode: Option<String>,
    /// Fraction of the sigma-ranked vocabulary to retain (default 0.33).
    #[arg(long)]
    sigma_fraction: Option<f64>,
    /// Graph builder override: cag | window
    #[arg(long)]
    graph: Option<String>,
    /// Window size override for the window builder.
    #[arg(long)]
    window: Option<usize>,
    /// PageRank damping factor.
    #[arg(long)]
    damping: Option<f64>,
    /// PageRank convergence tolerance.
    #[arg(long)]
    tol: Option<f64>,
    /// PageRank iteration cap.
    #[arg(long)]
    max_iter: Option<usize>,
    /// Disable stemming.
    #[arg(long)]
    no_stemming: bool,
    /// Stopword file (one word per line, # comments).
    #[arg(long)]
    stopwords: Option<PathBuf>,
    /// POS annotation file: <doc-id><TAB><word> <word> ...
    #[arg(long)]
    annotations: Option<PathBuf>,
    /// Worker threads (0 = one per core).
    #[arg(long)]
    workers: Option<usize>,
    /// Flat key-value config file; CLI flags take precedence over it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format.
    #[arg(long, default_value = "json")]
    format: String,
}

#[derive(Args)]
struct ExtractArgs {
    /// Text file or directory of text files.
    input: PathBuf,
    /// Text file suffix used when INPUT is a directory.
    #[arg(long, default_value = ".txt")]
    text_suffix: String,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct EvaluateArgs {
    /// Directory with paired <id><text-suffix> and <id><gold-suffix> files.
    corpus: PathBuf,
    #[arg(long, default_value = ".txt")]
    text_suffix: String,
    #[arg(long, default_value = ".key")]
    gold_suffix: String,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct BenchArgs {
    /// Text file or directory of text files.
    input: PathBuf,
    #[arg(long, default_value = ".txt")]
    text_suffix: String,
    /// Comma-separated methods to time.
    #[arg(long, default_value = "scake,lake,textrank,degext,kcore,positionrank")]
    methods: String,
    /// Number of timing passes to average.
    #[arg(long, default_value_t = 3)]
    runs: usize,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct StatsArgs {
    /// Text file or directory of text files.
    input: PathBuf,
    #[arg(long, default_value = ".txt")]
    text_suffix: String,
    #[command(flatten)]
    common: CommonArgs,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version requests are success, anything else is usage
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Extract(args) => cmd_extract(args),
        Command::Evaluate(args) => cmd_evaluate(args),
        Command::Bench(args) => cmd_bench(args),
        Command::Stats(args) => cmd_stats(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::InvalidConfig(_)
        | Error::MissingAnnotations
        | Error::UnsupportedGraph(_)
        | Error::InvalidTeleport => EXIT_USAGE,
        Error::Document { source, .. } => exit_code_for(source),
        _ => EXIT_DATA,
    }
}

/// Layer a config: method defaults < config file < CLI flags.
fn build_config(common: &CommonArgs) -> Result<RunConfig, Error> {
    let mut config = RunConfig::new(Method::Lake);
    let mut have_method = false;
    if let Some(path) = &common.config {
        let applied = config.apply_file(path)?;
        have_method |= applied.iter().any(|k| k == "method");
    }
    if let Some(m) = &common.method {
        config.set("method", m)?;
        have_method = true;
    }
    if !have_method {
        return Err(Error::InvalidConfig(
            "no method given (use --method or a config file with 'method = ...')".to_string(),
        ));
    }
    if let Some(v) = &common.dataset {
        config.set("dataset", v)?;
    }
    if let Some(v) = common.k {
        config.set("k", &v.to_string())?;
    }
    if let Some(v) = &common.candidate_mode {
        config.set("candidate-mode", v)?;
    }
    if let Some(v) = common.sigma_fraction {
        config.set("sigma-fraction", &v.to_string())?;
    }
    if let Some(v) = &common.graph {
        config.set("graph", v)?;
    }
    if let Some(v) = common.window {
        config.set("window", &v.to_string())?;
    }
    if let Some(v) = common.damping {
        config.set("damping", &v.to_string())?;
    }
    if let Some(v) = common.tol {
        config.set("tol", &v.to_string())?;
    }
    if let Some(v) = common.max_iter {
        config.set("max-iter", &v.to_string())?;
    }
    if common.no_stemming {
        config.set("stemming", "false")?;
    }
    if let Some(v) = &common.stopwords {
        config.stopwords_path = Some(v.clone());
    }
    if let Some(v) = &common.annotations {
        config.annotations_path = Some(v.clone());
    }
    if let Some(v) = common.workers {
        config.set("workers", &v.to_string())?;
    }
    Ok(config)
}

/// A directory ingests as a suffix-filtered corpus; a single file becomes a
/// one-document corpus keyed by its file stem.
fn load_input(path: &Path, text_suffix: &str) -> Result<Corpus, Error> {
    if path.is_dir() {
        // gold suffix is irrelevant here; pass one that cannot match
        return ingest_corpus(path, text_suffix, ".__gold__");
    }
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    let id = path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("document")
        .to_string();
    let mut corpus = Corpus::default();
    corpus.docs.insert(id, CorpusDoc { text, gold: None });
    Ok(corpus)
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, content).map_err(|e| Error::Io {
            path: path.display().to_string(),
            source: e,
        }),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn print_warnings(res: &Resources, corpus: &Corpus) {
    for w in &corpus.warnings {
        eprintln!("warning: {w}");
    }
    if let Some(ann) = &res.annotations {
        if ann.is_empty() {
            eprintln!("warning: annotation file contains no entries");
        }
    }
}

fn cmd_extract(args: ExtractArgs) -> Result<(), Error> {
    let config = build_config(&args.common)?;
    let corpus = load_input(&args.input, &args.text_suffix)?;
    let res = load_resources(&config)?;
    print_warnings(&res, &corpus);
    let results = run_extract(&config, &corpus, &res)?;
    for r in &results {
        if let Some(w) = &r.warning {
            eprintln!("warning: document {}: {w}", r.id);
        }
    }
    let content = match args.common.format.as_str() {
        "json" => extract_to_json(&results),
        "csv" => extract_to_csv(&results),
        other => return Err(Error::InvalidConfig(format!("unknown format '{other}'"))),
    };
    emit(&args.common.out, &content)
}

fn cmd_evaluate(args: EvaluateArgs) -> Result<(), Error> {
    let config = build_config(&args.common)?;
    let corpus = ingest_corpus(&args.corpus, &args.text_suffix, &args.gold_suffix)?;
    let res = load_resources(&config)?;
    print_warnings(&res, &corpus);
    let outcome = run_evaluate(&config, &corpus, &res)?;
    for note in &outcome.notes {
        eprintln!("note: {note}");
    }
    let content = match args.common.format.as_str() {
        "json" => format!("{}\n", report_to_json(&outcome)),
        "csv" => format!(
            "{}\n{}\n",
            scake::eval::EvalReport::CSV_HEADER,
            outcome.report.csv_row()
        ),
        other => return Err(Error::InvalidConfig(format!("unknown format '{other}'"))),
    };
    emit(&args.common.out, &content)
}

fn cmd_bench(args: BenchArgs) -> Result<(), Error> {
    let mut config = build_config(&args.common)?;
    // clean per-document timings want a single worker
    config.workers = 1;
    let corpus = load_input(&args.input, &args.text_suffix)?;
    let res = load_resources(&config)?;
    print_warnings(&res, &corpus);
    let methods = args
        .methods
        .split(',')
        .map(|m| m.trim().parse::<Method>())
        .collect::<Result<Vec<_>, _>>()?;
    let rows = run_bench(&config, &corpus, &res, &methods, args.runs)?;
    let content = match args.common.format.as_str() {
        "json" => {
            let mut s = String::new();
            for row in &rows {
                s.push_str(&serde_json_row(row)?);
                s.push('\n');
            }
            s
        }
        "csv" => {
            let mut s = String::from("method,seconds_per_document,runs\n");
            for row in &rows {
                s.push_str(&format!(
                    "{},{:.6},{}\n",
                    row.method, row.seconds_per_document, row.runs
                ));
            }
            s
        }
        other => return Err(Error::InvalidConfig(format!("unknown format '{other}'"))),
    };
    emit(&args.common.out, &content)
}

fn serde_json_row<T: serde::Serialize>(row: &T) -> Result<String, Error> {
    serde_json::to_string(row).map_err(|e| Error::InvalidConfig(format!("serialization: {e}")))
}

fn cmd_stats(args: StatsArgs) -> Result<(), Error> {
    let config = build_config(&args.common)?;
    let corpus = load_input(&args.input, &args.text_suffix)?;
    let res = load_resources(&config)?;
    print_warnings(&res, &corpus);
    let rows = run_stats(&config, &corpus, &res, &StatsSpec::standard())?;
    let content = match args.common.format.as_str() {
        "json" => {
            let mut s = String::new();
            for row in &rows {
                s.push_str(&serde_json_row(row)?);
                s.push('\n');
            }
            s
        }
        "csv" => {
            let mut s =
                String::from("spec,documents,nodes,edges,clustering,avg_path_length,density\n");
            for row in &rows {
                s.push_str(&format!(
                    "{},{},{:.2},{:.2},{:.4},{:.4},{:.4}\n",
                    row.spec,
                    row.documents,
                    row.nodes,
                    row.edges,
                    row.clustering,
                    row.avg_path_length,
                    row.density
                ));
            }
            s
        }
        other => return Err(Error::InvalidConfig(format!("unknown format '{other}'"))),
    };
    emit(&args.common.out, &content)
}
