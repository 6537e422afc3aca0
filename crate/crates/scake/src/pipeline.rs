//! End-to-end wiring: run configuration with per-method defaults, corpus
//! extraction, evaluation, topology statistics, and timing runs.

use crate::candidates::{assemble_candidates, Annotations, CandidateMode, CandidateSet};
use crate::corpus::Corpus;
use crate::decompose::{truss_decompose, weighted_core_decompose};
use crate::error::{Error, Result};
use crate::eval::{explode_gold, macro_average, score_document, DocScore, EvalReport};
use crate::graph::{build_cag, build_window_graph, graph_stats, GraphStats, TextGraph, WindowSpec};
use crate::scoring::{
    biased_pagerank, degree_score, kcore_retain, pagerank, positional_weight, rank, scscore,
    RankedKeywords, ScoreVector,
};
use crate::textproc::{build_document, Document, StopwordList};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

/// Extraction method.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Scake,
    Lake,
    TextRank,
    DegExt,
    KCore,
    PositionRank,
}

impl Method {
    pub fn id(&self) -> &'static str {
        match self {
            Method::Scake => "scake",
            Method::Lake => "lake",
            Method::TextRank => "textrank",
            Method::DegExt => "degext",
            Method::KCore => "kcore",
            Method::PositionRank => "positionrank",
        }
    }

    pub const ALL: [Method; 6] = [
        Method::Scake,
        Method::Lake,
        Method::TextRank,
        Method::DegExt,
        Method::KCore,
        Method::PositionRank,
    ];
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Method> {
        match s.to_lowercase().as_str() {
            "scake" => Ok(Method::Scake),
            "lake" => Ok(Method::Lake),
            "textrank" => Ok(Method::TextRank),
            "degext" => Ok(Method::DegExt),
            "kcore" | "k-core" => Ok(Method::KCore),
            "positionrank" => Ok(Method::PositionRank),
            other => Err(Error::InvalidConfig(format!("unknown method '{other}'"))),
        }
    }
}

/// Which graph builder to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphChoice {
    Cag,
    Window,
}

impl FromStr for GraphChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<GraphChoice> {
        match s.to_lowercase().as_str() {
            "cag" => Ok(GraphChoice::Cag),
            "window" => Ok(GraphChoice::Window),
            other => Err(Error::InvalidConfig(format!("unknown graph '{other}'"))),
        }
    }
}

impl FromStr for CandidateMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<CandidateMode> {
        match s.to_lowercase().as_str() {
            "sigma" => Ok(CandidateMode::Sigma),
            "pos" | "pos-annotation" => Ok(CandidateMode::PosAnnotation),
            "all" | "all-nonstop" => Ok(CandidateMode::AllNonStop),
            other => Err(Error::InvalidConfig(format!(
                "unknown candidate mode '{other}'"
            ))),
        }
    }
}

/// Layered configuration: unset fields fall back to method defaults at
/// resolution time, so CLI flags override config-file values, which
/// override method defaults.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub method: Method,
    pub dataset: Option<String>,
    pub k: Option<usize>,
    pub candidate_mode: Option<CandidateMode>,
    pub sigma_fraction: f64,
    pub graph: Option<GraphChoice>,
    pub window_size: Option<usize>,
    pub damping: Option<f64>,
    pub tol: Option<f64>,
    pub max_iter: usize,
    pub stemming: bool,
    pub stopwords_path: Option<PathBuf>,
    pub annotations_path: Option<PathBuf>,
    pub workers: usize,
}

impl RunConfig {
    pub fn new(method: Method) -> RunConfig {
        RunConfig {
            method,
            dataset: None,
            k: None,
            candidate_mode: None,
            sigma_fraction: 0.33,
            graph: None,
            window_size: None,
            damping: None,
            tol: None,
            max_iter: 100,
            stemming: true,
            stopwords_path: None,
            annotations_path: None,
            workers: 0,
        }
    }

    /// Per-dataset default k (Hulth2003: 25, Krapivin2009: 10, NLM500 and
    /// SemEval2010: 30), or 10 when the dataset is unknown.
    pub fn resolved_k(&self) -> usize {
        if let Some(k) = self.k {
            return k;
        }
        match self.dataset.as_deref().map(str::to_lowercase).as_deref() {
            Some("hulth2003") => 25,
            Some("krapivin2009") => 10,
            Some("nlm500") | Some("semeval2010") => 30,
            _ => 10,
        }
    }

    pub fn resolved_candidate_mode(&self) -> CandidateMode {
        self.candidate_mode.unwrap_or(match self.method {
            Method::Lake => CandidateMode::Sigma,
            Method::DegExt => CandidateMode::AllNonStop,
            _ => CandidateMode::PosAnnotation,
        })
    }

    pub fn resolved_graph(&self) -> GraphChoice {
        self.graph.unwrap_or(match self.method {
            Method::Scake | Method::Lake => GraphChoice::Cag,
            _ => GraphChoice::Window,
        })
    }

    /// Window settings for the window builder, honoring a size override.
    pub fn resolved_window_spec(&self) -> WindowSpec {
        let mut spec = match self.method {
            Method::DegExt => WindowSpec::degext(),
            Method::KCore => WindowSpec::graph_of_words(),
            _ => WindowSpec::textrank(),
        };
        if let Some(size) = self.window_size {
            spec.size = size.max(2);
        }
        spec
    }

    pub fn resolved_damping(&self) -> f64 {
        self.damping.unwrap_or(match self.method {
            Method::TextRank => 0.95,
            _ => 0.85,
        })
    }

    pub fn resolved_tol(&self) -> f64 {
        self.tol.unwrap_or(match self.method {
            Method::PositionRank => 1e-3,
            _ => 1e-4,
        })
    }

    /// Apply one `key = value` pair (config file or CLI flag mapping).
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let bad = |what: &str| Error::InvalidConfig(format!("bad value for {what}: '{value}'"));
        match key {
            "method" => self.method = value.parse()?,
            "dataset" => self.dataset = Some(value.to_string()),
            "k" => self.k = Some(value.parse().map_err(|_| bad("k"))?),
            "candidate-mode" => self.candidate_mode = Some(value.parse()?),
            "sigma-fraction" => {
                self.sigma_fraction = value.parse().map_err(|_| bad("sigma-fraction"))?
            }
            "graph" => self.graph = Some(value.parse()?),
            "window" => self.window_size = Some(value.parse().map_err(|_| bad("window"))?),
            "damping" => self.damping = Some(value.parse().map_err(|_| bad("damping"))?),
            "tol" => self.tol = Some(value.parse().map_err(|_| bad("tol"))?),
            "max-iter" => self.max_iter = value.parse().map_err(|_| bad("max-iter"))?,
            "stemming" => self.stemming = value.parse().map_err(|_| bad("stemming"))?,
            "stopwords" => self.stopwords_path = Some(PathBuf::from(value)),
            "annotations" => self.annotations_path = Some(PathBuf::from(value)),
            "workers" => self.workers = value.parse().map_err(|_| bad("workers"))?,
            other => {
                return Err(Error::InvalidConfig(format!("unknown config key '{other}'")))
            }
        }
        Ok(())
    }

    /// Apply a flat key-value config file: `key = value` lines, `#` comments.
    /// Returns the keys that were set.
    pub fn apply_file(&mut self, path: impl AsRef<Path>) -> Result<Vec<String>> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::io(path.display().to_string(), e))?;
        let mut applied = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::InvalidConfig(format!(
                    "{}:{}: expected 'key = value'",
                    path.display(),
                    idx + 1
                ))
            })?;
            let key = key.trim();
            self.set(key, value.trim())?;
            applied.push(key.to_string());
        }
        Ok(applied)
    }
}

/// Shared inputs loaded once per run.
pub struct Resources {
    pub stopwords: StopwordList,
    pub annotations: Option<Annotations>,
}

pub fn load_resources(config: &RunConfig) -> Result<Resources> {
    let stopwords = match &config.stopwords_path {
        Some(path) => StopwordList::from_file(path)?,
        None => StopwordList::default_english(),
    };
    let annotations = match &config.annotations_path {
        Some(path) => Some(crate::candidates::load_pos_annotations(path)?),
        None => None,
    };
    Ok(Resources {
        stopwords,
        annotations,
    })
}

fn in_doc_context<T>(id: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| Error::Document {
        id: id.to_string(),
        source: Box::new(e),
    })
}

fn build_graph(config: &RunConfig, doc: &Document, cand: &CandidateSet) -> TextGraph {
    match config.resolved_graph() {
        GraphChoice::Cag => build_cag(doc, cand),
        GraphChoice::Window => build_window_graph(doc, cand, &config.resolved_window_spec()),
    }
}

fn candidate_set(
    config: &RunConfig,
    doc: &Document,
    doc_id: &str,
    res: &Resources,
) -> Result<CandidateSet> {
    let mode = config.resolved_candidate_mode();
    let words = match mode {
        CandidateMode::PosAnnotation => {
            let ann = res.annotations.as_ref().ok_or(Error::MissingAnnotations)?;
            Some(ann.get(doc_id).cloned().unwrap_or_default())
        }
        _ => None,
    };
    assemble_candidates(
        doc,
        mode,
        &res.stopwords,
        words.as_ref(),
        config.sigma_fraction,
    )
}

fn score_graph(
    config: &RunConfig,
    cand: &CandidateSet,
    graph: &TextGraph,
) -> Result<ScoreVector> {
    if graph.is_empty() {
        return Ok(ScoreVector {
            method: config.method.id().to_string(),
            scores: BTreeMap::new(),
            params: BTreeMap::new(),
        });
    }
    match config.method {
        Method::Scake | Method::Lake => {
            let td = truss_decompose(graph)?;
            let omega: BTreeMap<String, f64> = cand
                .iter()
                .map(|occ| (occ.term.clone(), positional_weight(occ)))
                .collect();
            Ok(scscore(graph, &td, &omega))
        }
        Method::TextRank => pagerank(
            graph,
            config.resolved_damping(),
            config.resolved_tol(),
            config.max_iter,
        ),
        Method::PositionRank => {
            let teleport: BTreeMap<String, f64> = cand
                .iter()
                .map(|occ| (occ.term.clone(), positional_weight(occ)))
                .collect();
            biased_pagerank(
                graph,
                &teleport,
                config.resolved_damping(),
                config.resolved_tol(),
                config.max_iter,
            )
        }
        Method::DegExt => Ok(degree_score(graph)),
        Method::KCore => {
            let cd = weighted_core_decompose(graph)?;
            let retained = kcore_retain(graph, &cd);
            let mut sv = ScoreVector {
                method: "kcore".to_string(),
                scores: BTreeMap::new(),
                params: BTreeMap::new(),
            };
            for term in retained {
                sv.scores.insert(term, cd.max_core() as f64);
            }
            Ok(sv)
        }
    }
}

/// Extract keywords from one document. The core retention method ignores k
/// and returns its whole structure-determined set.
pub fn extract_document(
    config: &RunConfig,
    id: &str,
    text: &str,
    res: &Resources,
) -> Result<RankedKeywords> {
    let doc = in_doc_context(id, build_document(text, &res.stopwords, config.stemming))?;
    let cand = in_doc_context(id, candidate_set(config, &doc, id, res))?;
    let graph = build_graph(config, &doc, &cand);
    let sv = in_doc_context(id, score_graph(config, &cand, &graph))?;
    let k = if config.method == Method::KCore {
        sv.len().max(1)
    } else {
        config.resolved_k()
    };
    Ok(rank(&sv, &doc, k))
}

/// One document's extraction output.
#[derive(Debug, Clone, Serialize)]
pub struct DocExtract {
    pub id: String,
    pub keywords: Vec<Keyword>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Keyword {
    pub term: String,
    pub score: f64,
}

fn round6(x: f64) -> f64 {
    (x * 1e6).round() / 1e6
}

fn thread_pool(workers: usize) -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if workers > 0 {
        builder = builder.num_threads(workers);
    }
    builder
        .build()
        .map_err(|e| Error::InvalidConfig(format!("cannot build worker pool: {e}")))
}

/// Extract from every corpus document, in parallel, results ordered by id.
/// Documents that are empty after tokenization yield an empty keyword list
/// and a warning instead of failing the run.
pub fn run_extract(
    config: &RunConfig,
    corpus: &Corpus,
    res: &Resources,
) -> Result<Vec<DocExtract>> {
    let pool = thread_pool(config.workers)?;
    let docs: Vec<(&str, &str)> = corpus
        .docs
        .iter()
        .map(|(id, d)| (id.as_str(), d.text.as_str()))
        .collect();
    let mut results: Vec<DocExtract> = pool.install(|| {
        docs.par_iter()
            .map(|(id, text)| match extract_document(config, id, text, res) {
                Ok(ranked) => Ok(DocExtract {
                    id: id.to_string(),
                    keywords: ranked
                        .iter()
                        .map(|(term, score)| Keyword {
                            term: term.clone(),
                            score: round6(*score),
                        })
                        .collect(),
                    warning: None,
                }),
                Err(Error::Document { id, source }) if matches!(*source, Error::EmptyDocument) => {
                    Ok(DocExtract {
                        id,
                        keywords: Vec::new(),
                        warning: Some("empty document".to_string()),
                    })
                }
                Err(e) => Err(e),
            })
            .collect::<Result<Vec<_>>>()
    })?;
    results.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(results)
}

/// Evaluation outcome: the macro report plus per-document rows.
#[derive(Debug, Clone, Serialize)]
pub struct EvalOutcome {
    pub report: EvalReport,
    pub per_document: Vec<PerDocEval>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PerDocEval {
    pub id: String,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub matched: usize,
    pub extracted: usize,
}

/// Evaluate a method over every corpus document that has gold annotations.
pub fn run_evaluate(config: &RunConfig, corpus: &Corpus, res: &Resources) -> Result<EvalOutcome> {
    let evaluable: Vec<(&str, &str, &str)> = corpus
        .docs
        .iter()
        .filter_map(|(id, d)| {
            d.gold
                .as_deref()
                .map(|g| (id.as_str(), d.text.as_str(), g))
        })
        .collect();
    if evaluable.is_empty() {
        return Err(Error::EmptyCorpus(
            "corpus has no documents with gold annotations".to_string(),
        ));
    }
    let pool = thread_pool(config.workers)?;
    let mut rows: Vec<(String, DocScore, usize)> = pool.install(|| {
        evaluable
            .par_iter()
            .map(|(id, text, gold_text)| {
                let gold = explode_gold(gold_text, config.stemming);
                let score = match extract_document(config, id, text, res) {
                    Ok(ranked) => {
                        let s = score_document(&ranked, &gold);
                        (s, ranked.len())
                    }
                    Err(Error::Document { source, .. })
                        if matches!(*source, Error::EmptyDocument) =>
                    {
                        (
                            DocScore {
                                precision: 0.0,
                                recall: 0.0,
                                f1: 0.0,
                                matched: 0,
                            },
                            0,
                        )
                    }
                    Err(e) => return Err(e),
                };
                Ok((id.to_string(), score.0, score.1))
            })
            .collect::<Result<Vec<_>>>()
    })?;
    rows.sort_by(|a, b| a.0.cmp(&b.0));
    let scores: Vec<DocScore> = rows.iter().map(|(_, s, _)| *s).collect();
    let dataset = config.dataset.clone().unwrap_or_else(|| "corpus".to_string());
    let report = macro_average(config.method.id(), &dataset, config.resolved_k(), &scores);
    let mut notes = Vec::new();
    if config.method == Method::KCore {
        notes.push(
            "core retention output size is structure-determined; k does not cap it".to_string(),
        );
    }
    Ok(EvalOutcome {
        report,
        per_document: rows
            .into_iter()
            .map(|(id, s, extracted)| PerDocEval {
                id,
                precision: s.precision,
                recall: s.recall,
                f1: s.f1,
                matched: s.matched,
                extracted,
            })
            .collect(),
        notes,
    })
}

/// A named graph construction for the stats table.
#[derive(Debug, Clone)]
pub struct StatsSpec {
    pub name: String,
    pub graph: GraphChoice,
    pub window: Option<WindowSpec>,
}

impl StatsSpec {
    /// The four standard constructions compared in the stats table.
    pub fn standard() -> Vec<StatsSpec> {
        vec![
            StatsSpec {
                name: "TG".into(),
                graph: GraphChoice::Window,
                window: Some(WindowSpec::textrank()),
            },
            StatsSpec {
                name: "DG".into(),
                graph: GraphChoice::Window,
                window: Some(WindowSpec::degext()),
            },
            StatsSpec {
                name: "GoW".into(),
                graph: GraphChoice::Window,
                window: Some(WindowSpec::graph_of_words()),
            },
            StatsSpec {
                name: "CAG".into(),
                graph: GraphChoice::Cag,
                window: None,
            },
        ]
    }
}

/// Averaged topology numbers for one graph construction.
#[derive(Debug, Clone, Serialize)]
pub struct StatsRow {
    pub spec: String,
    pub documents: usize,
    pub nodes: f64,
    pub edges: f64,
    pub clustering: f64,
    pub avg_path_length: f64,
    pub density: f64,
}

/// Average graph statistics per construction over the corpus. Documents
/// whose graphs come out empty are skipped.
pub fn run_stats(
    config: &RunConfig,
    corpus: &Corpus,
    res: &Resources,
    specs: &[StatsSpec],
) -> Result<Vec<StatsRow>> {
    let pool = thread_pool(config.workers)?;
    let docs: Vec<(&str, &str)> = corpus
        .docs
        .iter()
        .map(|(id, d)| (id.as_str(), d.text.as_str()))
        .collect();
    let mut rows = Vec::new();
    for spec in specs {
        let stats: Vec<GraphStats> = pool.install(|| {
            docs.par_iter()
                .map(|(id, text)| {
                    let doc = match build_document(text, &res.stopwords, config.stemming) {
                        Ok(d) => d,
                        Err(Error::EmptyDocument) => return Ok(None),
                        Err(e) => return Err(e),
                    };
                    let cand = in_doc_context(id, candidate_set(config, &doc, id, res))?;
                    let graph = match spec.graph {
                        GraphChoice::Cag => build_cag(&doc, &cand),
                        GraphChoice::Window => build_window_graph(
                            &doc,
                            &cand,
                            &spec.window.unwrap_or_else(WindowSpec::textrank),
                        ),
                    };
                    if graph.is_empty() {
                        return Ok(None);
                    }
                    Ok(Some(graph_stats(&graph)))
                })
                .collect::<Result<Vec<Option<GraphStats>>>>()
        })?
        .into_iter()
        .flatten()
        .collect();
        let n = stats.len();
        let mean = |f: &dyn Fn(&GraphStats) -> f64| {
            if n == 0 {
                0.0
            } else {
                stats.iter().map(f).sum::<f64>() / n as f64
            }
        };
        let apl_stats: Vec<&GraphStats> = stats.iter().filter(|s| s.apl_defined).collect();
        let apl = if apl_stats.is_empty() {
            0.0
        } else {
            apl_stats.iter().map(|s| s.avg_path_length).sum::<f64>() / apl_stats.len() as f64
        };
        rows.push(StatsRow {
            spec: spec.name.clone(),
            documents: n,
            nodes: mean(&|s: &GraphStats| s.nodes as f64),
            edges: mean(&|s: &GraphStats| s.edges as f64),
            clustering: mean(&|s: &GraphStats| s.clustering),
            avg_path_length: apl,
            density: mean(&|s: &GraphStats| s.density),
        });
    }
    Ok(rows)
}

/// Mean wall-clock seconds per document for pre-processing plus graph
/// construction, averaged over `runs` passes. Runs single-threaded.
#[derive(Debug, Clone, Serialize)]
pub struct BenchRow {
    pub method: String,
    pub seconds_per_document: f64,
    pub runs: usize,
}

pub fn run_bench(
    base: &RunConfig,
    corpus: &Corpus,
    res: &Resources,
    methods: &[Method],
    runs: usize,
) -> Result<Vec<BenchRow>> {
    let runs = runs.max(1);
    let mut rows = Vec::new();
    for &method in methods {
        let mut config = base.clone();
        config.method = method;
        let mut total = 0.0f64;
        for _ in 0..runs {
            let start = Instant::now();
            for (id, doc) in &corpus.docs {
                let document = match build_document(&doc.text, &res.stopwords, config.stemming) {
                    Ok(d) => d,
                    Err(Error::EmptyDocument) => continue,
                    Err(e) => return Err(e),
                };
                let cand = in_doc_context(id, candidate_set(&config, &document, id, res))?;
                let graph = build_graph(&config, &document, &cand);
                std::hint::black_box(graph.edge_count());
            }
            total += start.elapsed().as_secs_f64();
        }
        let per_doc = total / runs as f64 / corpus.len().max(1) as f64;
        rows.push(BenchRow {
            method: method.id().to_string(),
            seconds_per_document: per_doc,
            runs,
        });
    }
    Ok(rows)
}

/// JSON Lines: one `{"id": ..., "keywords": [...]}` object per document.
pub fn extract_to_json(results: &[DocExtract]) -> String {
    let mut out = String::new();
    for r in results {
        out.push_str(&serde_json::to_string(r).expect("serializable"));
        out.push('\n');
    }
    out
}

/// CSV: `id,term,score` rows with 6-decimal scores.
pub fn extract_to_csv(results: &[DocExtract]) -> String {
    let mut out = String::from("id,term,score\n");
    for r in results {
        for kw in &r.keywords {
            out.push_str(&format!("{},{},{:.6}\n", r.id, kw.term, kw.score));
        }
    }
    out
}

pub fn report_to_json(outcome: &EvalOutcome) -> String {
    let mut json = serde_json::to_value(outcome).expect("serializable");
    // Round macro numbers for stable output.
    if let Some(report) = json.get_mut("report") {
        for key in ["precision", "recall", "f1"] {
            if let Some(v) = report.get_mut(key) {
                let rounded = (v.as_f64().unwrap_or(0.0) * 100.0).round() / 100.0;
                *v = serde_json::json!(rounded);
            }
        }
    }
    if let Some(rows) = json.get_mut("per_document").and_then(|v| v.as_array_mut()) {
        for row in rows {
            for key in ["precision", "recall", "f1"] {
                if let Some(v) = row.get_mut(key) {
                    let rounded = (v.as_f64().unwrap_or(0.0) * 1e6).round() / 1e6;
                    *v = serde_json::json!(rounded);
                }
            }
        }
    }
    json.to_string()
}
