//! Shared fixtures and independent oracles for the integration suites.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use nalgebra::{DMatrix, DVector};
use reqtrace::fca::FormalContext;

pub fn repo_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

pub fn fixture(rel: &str) -> PathBuf {
    repo_root().join("fixtures").join(rel)
}

pub fn read_context(rel: &str) -> FormalContext {
    let bytes = std::fs::read(fixture(rel)).unwrap();
    FormalContext::read_csv(bytes.as_slice()).unwrap()
}

pub fn run_cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_reqtrace"))
        .args(args)
        .output()
        .expect("spawn reqtrace")
}

pub fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Incident (object, attribute) name pairs; independent of row/column order.
pub fn incidence_pairs(ctx: &FormalContext) -> BTreeSet<(String, String)> {
    let mut out = BTreeSet::new();
    for (o, obj) in ctx.objects().iter().enumerate() {
        for (a, attr) in ctx.attributes().iter().enumerate() {
            if ctx.incident(o, a) {
                out.insert((obj.clone(), attr.clone()));
            }
        }
    }
    out
}

pub type NameConcept = (BTreeSet<String>, BTreeSet<String>);

/// Power-set closure: every attribute subset's extent, closed back to a
/// concept. Independent of the crate's enumeration code.
pub fn brute_force_concepts(ctx: &FormalContext) -> BTreeSet<NameConcept> {
    let (no, na) = (ctx.objects().len(), ctx.attributes().len());
    let mut out = BTreeSet::new();
    for mask in 0u64..(1 << na) {
        let attrs: Vec<usize> = (0..na).filter(|a| mask >> a & 1 == 1).collect();
        let extent: Vec<usize> = (0..no)
            .filter(|&o| attrs.iter().all(|&a| ctx.incident(o, a)))
            .collect();
        let intent: Vec<usize> = (0..na)
            .filter(|&a| extent.iter().all(|&o| ctx.incident(o, a)))
            .collect();
        out.insert((
            extent.iter().map(|&o| ctx.objects()[o].clone()).collect(),
            intent.iter().map(|&a| ctx.attributes()[a].clone()).collect(),
        ));
    }
    out
}

pub fn random_context(seed: u64, max_o: usize, max_a: usize) -> FormalContext {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let no = rng.random_range(0..=max_o);
    let na = rng.random_range(0..=max_a);
    let density: f64 = rng.random_range(0.1..0.9);
    let cells: Vec<Vec<bool>> = (0..no)
        .map(|_| (0..na).map(|_| rng.random_bool(density)).collect())
        .collect();
    FormalContext::from_matrix(
        (0..no).map(|i| format!("o{i}")).collect(),
        (0..na).map(|i| format!("a{i}")).collect(),
        &cells,
    )
    .unwrap()
}

/// Plain vector-space cosine between two raw term vectors.
pub fn vsm_cosine(a: &DVector<f64>, b: &DVector<f64>) -> f64 {
    let (na, nb) = (a.norm(), b.norm());
    if na == 0.0 || nb == 0.0 {
        0.0
    } else {
        a.dot(b) / (na * nb)
    }
}

pub fn random_count_matrix(seed: u64, max_t: usize, max_d: usize) -> DMatrix<f64> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let t = rng.random_range(2..=max_t);
    let d = rng.random_range(2..=max_d);
    loop {
        let m = DMatrix::from_fn(t, d, |_, _| {
            if rng.random_bool(0.4) {
                rng.random_range(1..6) as f64
            } else {
                0.0
            }
        });
        if m.iter().any(|&x| x != 0.0) {
            return m;
        }
    }
}

/// Set-based precision and recall written from the definitions.
pub fn oracle_precision(related: &BTreeSet<u32>, recovered: &BTreeSet<u32>) -> Option<f64> {
    if recovered.is_empty() {
        None
    } else {
        Some(related.intersection(recovered).count() as f64 / recovered.len() as f64)
    }
}

pub fn oracle_recall(related: &BTreeSet<u32>, recovered: &BTreeSet<u32>) -> Option<f64> {
    if related.is_empty() {
        None
    } else {
        Some(related.intersection(recovered).count() as f64 / related.len() as f64)
    }
}

/// Minimal DOT reader: node ids with labels and `a -> b` edges. Panics on
/// anything outside the subset the emitter produces.
#[derive(Debug, Default)]
pub struct Dot {
    pub name: String,
    pub nodes: BTreeMap<String, String>,
    pub edges: Vec<(String, String)>,
}

pub fn parse_dot(text: &str) -> Dot {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let head = lines.next().expect("empty DOT");
    let name = head
        .strip_prefix("digraph ")
        .and_then(|r| r.strip_suffix(" {"))
        .unwrap_or_else(|| panic!("bad header: {head}"))
        .to_string();
    let mut dot = Dot {
        name,
        ..Default::default()
    };
    let mut closed = false;
    for line in lines {
        assert!(!closed, "content after closing brace");
        if line == "}" {
            closed = true;
            continue;
        }
        let stmt = line.strip_suffix(';').unwrap_or_else(|| panic!("missing ';': {line}"));
        if stmt.starts_with("rankdir=") || stmt.starts_with("node [") {
            continue;
        }
        if let Some((a, b)) = stmt.split_once(" -> ") {
            assert!(is_id(a) && is_id(b), "bad edge: {line}");
            dot.edges.push((a.to_string(), b.to_string()));
            continue;
        }
        let (id, rest) = stmt.split_once(" [").unwrap_or_else(|| panic!("bad stmt: {line}"));
        assert!(is_id(id), "bad id: {id}");
        let label = rest
            .split_once("label=\"")
            .and_then(|(_, r)| r.split_once('"'))
            .map(|(l, _)| l.to_string())
            .unwrap_or_else(|| panic!("node without label: {line}"));
        assert!(dot.nodes.insert(id.to_string(), label).is_none(), "duplicate node {id}");
    }
    assert!(closed, "unterminated graph");
    for (a, b) in &dot.edges {
        assert!(dot.nodes.contains_key(a) && dot.nodes.contains_key(b), "dangling edge {a} -> {b}");
    }
    dot
}

fn is_id(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// One term bag per matrix column, terms named `t{row}`.
pub fn bags_from_columns(m: &DMatrix<f64>, prefix: &str) -> Vec<reqtrace::text::TermBag> {
    (0..m.ncols())
        .map(|j| reqtrace::text::TermBag {
            name: format!("{prefix}{j}"),
            counts: (0..m.nrows())
                .filter(|&i| m[(i, j)] != 0.0)
                .map(|i| (format!("t{i}"), m[(i, j)] as usize))
                .collect(),
        })
        .collect()
}

/// Largest gap between full-rank LSI cosines and raw vector-space cosines
/// for queries built as nonnegative integer mixes of the documents.
pub fn full_rank_vsm_gap(a: &DMatrix<f64>, mixes: &[Vec<u32>]) -> f64 {
    use reqtrace::lsi::{build_tdm, build_tqm, build_vocabulary, cosine_similarity_matrix, truncated_svd};
    let docs = bags_from_columns(a, "d");
    let queries: Vec<DVector<f64>> = mixes
        .iter()
        .map(|mix| {
            let mut q = DVector::zeros(a.nrows());
            for (j, &c) in mix.iter().enumerate() {
                q += a.column(j) * c as f64;
            }
            q
        })
        .collect();
    let qm = DMatrix::from_columns(&queries);
    let vocab = build_vocabulary(&docs).unwrap();
    let tdm = build_tdm(&docs, &vocab);
    let tqm = build_tqm(&bags_from_columns(&qm, "q"), &vocab);
    let space = truncated_svd(&tdm, tdm.rows().min(tdm.cols())).unwrap();
    let csm = cosine_similarity_matrix(&space, &tqm);
    let mut gap: f64 = 0.0;
    for r in 0..tqm.cols() {
        for j in 0..tdm.cols() {
            let want = vsm_cosine(&tqm.column_vector(r), &tdm.column_vector(j));
            gap = gap.max((csm.values[r][j] - want).abs());
        }
    }
    gap
}
