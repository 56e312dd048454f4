//! End-to-end recovery: code facts and requirements in, links, DOT graphs
//! and optional evaluation reports out.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::docs::{build_class_documents, load_requirement_documents, DocumentCorpus, QueryCorpus};
use crate::error::{Error, Result};
use crate::eval::{evaluate, recovered_links_from_json, EvaluationReport, GoldLinks};
use crate::fca::{binarize, build_aoc_poset, enumerate_concepts, AocPoset, FormalContext};
use crate::java::{parse_source_tree, ParseDiagnostic};
use crate::lsi::{
    build_tdm, build_tqm, build_vocabulary, cosine_similarity_matrix, truncated_svd, LsiSpace, SimilarityMatrix,
    TermDocumentMatrix, TermQueryMatrix,
};
use crate::model::{compute_metrics, load_facts_xml, save_facts_xml, CodeFacts, SoftwareMetrics};
use crate::text::{preprocess, StopWordList, TermBag};
use crate::trace::{assemble_links, emit_dot_poset, emit_dot_tracelinks, TraceLinkSet};

pub const DEFAULT_THRESHOLD: f64 = 0.70;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CodeSource {
    /// Java source tree to parse.
    Src(PathBuf),
    /// Previously extracted code-facts XML.
    Facts(PathBuf),
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    pub source: CodeSource,
    pub requirements_dir: PathBuf,
    pub threshold: f64,
    /// LSI topic count; full rank when absent.
    pub topics: Option<usize>,
    pub stopwords_file: Option<PathBuf>,
    pub output_dir: PathBuf,
    pub gold_file: Option<PathBuf>,
    pub dump_intermediates: bool,
}

impl PipelineConfig {
    pub fn new(source: CodeSource, requirements_dir: impl Into<PathBuf>, output_dir: impl Into<PathBuf>) -> Self {
        PipelineConfig {
            source,
            requirements_dir: requirements_dir.into(),
            threshold: DEFAULT_THRESHOLD,
            topics: None,
            stopwords_file: None,
            output_dir: output_dir.into(),
            gold_file: None,
            dump_intermediates: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_threshold(self.threshold)?;
        if self.topics == Some(0) {
            return Err(Error::Config("--topics must be at least 1".into()));
        }
        Ok(())
    }
}

pub fn check_threshold(threshold: f64) -> Result<()> {
    if !(threshold > -1.0 && threshold <= 1.0) {
        return Err(Error::Config(format!(
            "threshold {threshold} is outside the interval (-1, 1]"
        )));
    }
    Ok(())
}

/// Every intermediate product of one recovery run.
#[derive(Debug, Clone)]
pub struct TraceArtifacts {
    pub documents: DocumentCorpus,
    pub queries: QueryCorpus,
    pub document_bags: Vec<TermBag>,
    pub query_bags: Vec<TermBag>,
    pub tdm: TermDocumentMatrix,
    pub tqm: TermQueryMatrix,
    pub space: LsiSpace,
    pub csm: SimilarityMatrix,
    pub context: FormalContext,
    pub poset: AocPoset,
    pub links: TraceLinkSet,
}

/// Runs the in-memory pipeline from code facts and requirement documents.
pub fn recover_links(
    facts: &CodeFacts,
    queries: QueryCorpus,
    stops: &StopWordList,
    threshold: f64,
    topics: Option<usize>,
) -> Result<TraceArtifacts> {
    check_threshold(threshold)?;
    let documents = build_class_documents(facts);
    let document_bags: Vec<TermBag> = documents.documents.iter().map(|d| preprocess(d, stops)).collect();
    let query_bags: Vec<TermBag> = queries.queries.iter().map(|d| preprocess(d, stops)).collect();
    let vocab = build_vocabulary(&document_bags)?;
    let tdm = build_tdm(&document_bags, &vocab);
    let tqm = build_tqm(&query_bags, &vocab);
    let k = topics.unwrap_or_else(|| tdm.rows().min(tdm.cols()));
    let space = truncated_svd(&tdm, k)?;
    let csm = cosine_similarity_matrix(&space, &tqm);
    let context = binarize(&csm, threshold)?;
    let poset = build_aoc_poset(&enumerate_concepts(&context), &context);
    let links = assemble_links(&poset, &context);
    Ok(TraceArtifacts {
        documents,
        queries,
        document_bags,
        query_bags,
        tdm,
        tqm,
        space,
        csm,
        context,
        poset,
        links,
    })
}

/// Parses a source tree or loads a facts file.
pub fn load_code_facts(source: &CodeSource) -> Result<(CodeFacts, Vec<ParseDiagnostic>)> {
    match source {
        CodeSource::Src(root) => parse_source_tree(root),
        CodeSource::Facts(file) => {
            let bytes = fs::read(file).map_err(|e| Error::io(file, e))?;
            Ok((load_facts_xml(&bytes)?, Vec::new()))
        }
    }
}

/// Writes `bytes` to a temporary file beside `path`, then renames it over.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Error::io(dir, e))?;
    tmp.write_all(bytes).map_err(|e| Error::io(path, e))?;
    tmp.persist(path).map_err(|e| Error::io(path, e.error))?;
    Ok(())
}

fn csv_bytes(f: impl FnOnce(&mut Vec<u8>) -> Result<()>) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    f(&mut buf)?;
    Ok(buf)
}

fn write_report(report: &EvaluationReport, dir: &Path) -> Result<()> {
    write_atomic(&dir.join("report.json"), report.to_json().as_bytes())?;
    write_atomic(&dir.join("report.csv"), &csv_bytes(|b| report.write_csv(b))?)
}

#[derive(Debug)]
pub struct TraceOutcome {
    pub diagnostics: Vec<ParseDiagnostic>,
    pub artifacts: TraceArtifacts,
    pub report: Option<EvaluationReport>,
}

/// The `trace` command: runs the pipeline and writes its artifacts.
pub fn cmd_trace(config: &PipelineConfig) -> Result<TraceOutcome> {
    config.validate()?;
    let stops = match &config.stopwords_file {
        Some(p) => StopWordList::from_file(p)?,
        None => StopWordList::default(),
    };
    let gold = match &config.gold_file {
        Some(p) => Some(GoldLinks::from_json(&fs::read(p).map_err(|e| Error::io(p, e))?)?),
        None => None,
    };
    let (facts, diagnostics) = load_code_facts(&config.source)?;
    let queries = load_requirement_documents(&config.requirements_dir)?;
    let artifacts = recover_links(&facts, queries, &stops, config.threshold, config.topics)?;
    let report = gold.map(|g| evaluate(&artifacts.links, &g)).transpose()?;

    let out = &config.output_dir;
    fs::create_dir_all(out).map_err(|e| Error::io(out, e))?;
    write_atomic(&out.join("links.json"), artifacts.links.to_json().as_bytes())?;
    write_atomic(&out.join("poset.dot"), emit_dot_poset(&artifacts.poset).as_bytes())?;
    write_atomic(&out.join("tracelinks.dot"), emit_dot_tracelinks(&artifacts.links).as_bytes())?;
    if config.dump_intermediates {
        write_atomic(&out.join("tdm.csv"), &csv_bytes(|b| artifacts.tdm.write_csv(b))?)?;
        write_atomic(&out.join("tqm.csv"), &csv_bytes(|b| artifacts.tqm.write_csv(b))?)?;
        write_atomic(&out.join("csm.csv"), &csv_bytes(|b| artifacts.csm.write_csv(b))?)?;
        write_atomic(&out.join("context.csv"), &csv_bytes(|b| artifacts.context.write_csv(b))?)?;
    }
    if let Some(r) = &report {
        write_report(r, out)?;
    }
    Ok(TraceOutcome {
        diagnostics,
        artifacts,
        report,
    })
}

/// The `extract` command: parses `src` and writes the facts XML to `out`.
pub fn cmd_extract(src: &Path, out: &Path) -> Result<(SoftwareMetrics, Vec<ParseDiagnostic>)> {
    let (facts, diagnostics) = parse_source_tree(src)?;
    if let Some(dir) = out.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    write_atomic(out, &save_facts_xml(&facts))?;
    Ok((compute_metrics(&facts), diagnostics))
}

/// The `evaluate` command: scores a links file against a gold file and
/// writes `report.json` and `report.csv` into `out_dir`.
pub fn cmd_evaluate(links_file: &Path, gold_file: &Path, out_dir: &Path) -> Result<EvaluationReport> {
    let links = recovered_links_from_json(&fs::read(links_file).map_err(|e| Error::io(links_file, e))?)?;
    let gold = GoldLinks::from_json(&fs::read(gold_file).map_err(|e| Error::io(gold_file, e))?)?;
    let report = evaluate(&links, &gold)?;
    fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    write_report(&report, out_dir)?;
    Ok(report)
}
