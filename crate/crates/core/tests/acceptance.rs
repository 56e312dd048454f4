//! Acceptance run: one PASS/FAIL line per criterion. Exits nonzero if any
//! criterion fails.

mod common;

use std::cell::RefCell;
use std::collections::BTreeSet;
use std::fs;
use std::panic;
use std::path::Path;
use std::time::{Duration, Instant};

use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use reqtrace::docs::{DocumentKind, RawDocument};
use reqtrace::eval::{precision, recall};
use reqtrace::fca::{build_aoc_poset, enumerate_concepts, FormalContext};
use reqtrace::lsi::{
    build_tdm, build_tqm, build_vocabulary, cosine_similarity_matrix, truncated_svd, truncated_svd_dense,
};
use reqtrace::model::save_facts_xml;
use reqtrace::text::{preprocess, split_camel_case, stem, StopWordList, REQUIRED_STOP_WORDS};
use serde_json::Value;

const DS_RUNTIME: Duration = Duration::from_secs(5);
const SUITE_RUNTIME: Duration = Duration::from_secs(30);
const RANDOM_CONTEXTS: u64 = 500;
const CONTEXT_MAX_DIM: usize = 8;
const RANDOM_MATRICES: u64 = 200;
const MATRIX_MAX_TERMS: usize = 12;
const MATRIX_MAX_DOCS: usize = 8;
const VSM_TOL: f64 = 1e-6;
const RECONSTRUCT_TOL: f64 = 1e-6;
const ORTHO_TOL: f64 = 1e-9;
const SCALE_TOL: f64 = 1e-9;
const SET_PAIRS: u64 = 5000;

type Check = fn() -> String;

thread_local! {
    static LAST_PANIC: RefCell<String> = const { RefCell::new(String::new()) };
}

fn main() {
    panic::set_hook(Box::new(|info| {
        let msg = match (info.payload().downcast_ref::<&str>(), info.payload().downcast_ref::<String>()) {
            (Some(s), _) => (*s).to_string(),
            (_, Some(s)) => s.clone(),
            _ => "panic".to_string(),
        };
        let at = info.location().map(|l| format!(" at line {}", l.line())).unwrap_or_default();
        LAST_PANIC.with(|p| *p.borrow_mut() = format!("{msg}{at}"));
    }));

    let criteria: [(&str, Check); 8] = [
        ("DS end-to-end regression", ds_end_to_end),
        ("FCA fixtures", fca_fixtures),
        ("FCA oracle equivalence", fca_oracle),
        ("LSI numerical suite", lsi_suite),
        ("preprocessing fixtures", preprocessing),
        ("evaluation laws", evaluation_laws),
        ("reproducibility", reproducibility),
        ("external corpus inputs", external_inputs),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match panic::catch_unwind(check) {
            Ok(detail) => println!("criterion {}: PASS {name} ({detail})", i + 1),
            Err(_) => {
                failed += 1;
                let why = LAST_PANIC.with(|p| p.borrow().clone());
                println!("criterion {}: FAIL {name} ({why})", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

fn trace_ds(out: &Path, gold: bool) {
    let (src, reqs, g) = (fixture("ds/src"), fixture("ds/requirements"), fixture("ds/gold.json"));
    let mut args = vec![
        "trace", "--src", path_str(&src), "--reqs", path_str(&reqs), "--threshold", "0.70", "--topics", "6", "--out",
        path_str(out), "--dump-intermediates",
    ];
    if gold {
        args.extend(["--gold", path_str(&g)]);
    }
    let o = run_cli(&args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}

fn ds_end_to_end() -> String {
    let tmp = tempfile::tempdir().unwrap();
    let start = Instant::now();
    trace_ds(tmp.path(), true);
    let elapsed = start.elapsed();
    let ctx = FormalContext::read_csv(fs::read(tmp.path().join("context.csv")).unwrap().as_slice()).unwrap();
    let want = read_context("fca/ds_context.csv");
    assert_eq!(ctx.objects().len() * ctx.attributes().len(), 18);
    assert_eq!(incidence_pairs(&ctx), incidence_pairs(&want));
    assert_eq!(ctx.incidence_count(), 3);
    let report: Value = serde_json::from_slice(&fs::read(tmp.path().join("report.json")).unwrap()).unwrap();
    let rows = report["per_requirement"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    for row in rows {
        assert_eq!(row["precision"].as_f64(), Some(1.0), "{row}");
        assert_eq!(row["recall"].as_f64(), Some(1.0), "{row}");
    }
    assert!(elapsed < DS_RUNTIME, "took {elapsed:?}");
    format!("3 positive cells, 15 zero, P=R=1.0 for 3 requirements, {elapsed:.2?}")
}

fn names<'a>(it: impl Iterator<Item = &'a str>) -> BTreeSet<&'a str> {
    it.collect()
}

fn fca_fixtures() -> String {
    let t1 = read_context("fca/release_requirements.csv");
    let p1 = build_aoc_poset(&enumerate_concepts(&t1), &t1);
    assert_eq!(p1.concepts.len(), 5);
    let top = p1.object_concept("Release_1").unwrap();
    assert!(p1.edges.iter().all(|&(sub, _)| sub != top), "Release_1 concept is not the top");
    assert_eq!(names(p1.introduced_object_names(top)), BTreeSet::from(["Release_1"]));
    assert_eq!(names(p1.introduced_attribute_names(top)), BTreeSet::from(["View map"]));

    let t2 = read_context("fca/requirement_classes.csv");
    let p2 = build_aoc_poset(&enumerate_concepts(&t2), &t2);
    let a = p2.object_concept("requirement A").unwrap();
    assert_eq!(Some(a), p2.attribute_concept("class F"));

    let t9 = read_context("fca/ds_context.csv");
    let p9 = build_aoc_poset(&enumerate_concepts(&t9), &t9);
    assert_eq!(p9.concepts.len(), 4);
    let c = p9.attribute_concept("MyShape").unwrap();
    assert_eq!(p9.introduced_object_names(c).count(), 0);
    assert_eq!(
        names(p9.introduced_attribute_names(c)),
        BTreeSet::from(["DrawingShapes", "MyShape", "PaintJPanel"])
    );
    "5-concept chain, A with F, 4 DS concepts".into()
}

fn fca_oracle() -> String {
    let start = Instant::now();
    let mut mismatches = 0;
    for seed in 0..RANDOM_CONTEXTS {
        let ctx = random_context(seed, CONTEXT_MAX_DIM, CONTEXT_MAX_DIM);
        let concepts = enumerate_concepts(&ctx);
        let got: BTreeSet<NameConcept> = concepts
            .iter()
            .map(|c| {
                (
                    c.extent_names(&ctx).map(str::to_owned).collect(),
                    c.intent_names(&ctx).map(str::to_owned).collect(),
                )
            })
            .collect();
        if got.len() != concepts.len() || got != brute_force_concepts(&ctx) {
            mismatches += 1;
            continue;
        }
        let poset = build_aoc_poset(&concepts, &ctx);
        let mut objs: Vec<usize> = poset.concepts.iter().flat_map(|c| c.introduced_objects.clone()).collect();
        let mut attrs: Vec<usize> = poset.concepts.iter().flat_map(|c| c.introduced_attributes.clone()).collect();
        objs.sort_unstable();
        attrs.sort_unstable();
        if objs != (0..ctx.objects().len()).collect::<Vec<_>>() || attrs != (0..ctx.attributes().len()).collect::<Vec<_>>()
        {
            mismatches += 1;
        }
    }
    let elapsed = start.elapsed();
    assert_eq!(mismatches, 0, "{mismatches} mismatching contexts");
    assert!(elapsed < SUITE_RUNTIME, "took {elapsed:?}");
    format!("{RANDOM_CONTEXTS} contexts up to {CONTEXT_MAX_DIM}x{CONTEXT_MAX_DIM}, 0 mismatches, {elapsed:.2?}")
}

fn lsi_suite() -> String {
    let start = Instant::now();
    let (mut vsm_gap, mut rec_gap, mut ortho_gap, mut scale_gap) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for seed in 0..RANDOM_MATRICES {
        let a = random_count_matrix(seed, MATRIX_MAX_TERMS, MATRIX_MAX_DOCS);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let mixes: Vec<Vec<u32>> = (0..3)
            .map(|_| loop {
                let m: Vec<u32> = (0..a.ncols()).map(|_| rng.random_range(0..3)).collect();
                if m.iter().any(|&c| c != 0) {
                    break m;
                }
            })
            .collect();
        // (a)
        vsm_gap = vsm_gap.max(full_rank_vsm_gap(&a, &mixes));

        // (b)
        let space = truncated_svd_dense(&a, a.nrows().min(a.ncols())).unwrap();
        rec_gap = rec_gap.max((space.reconstruct() - &a).amax());
        let k = space.k;
        let id = nalgebra::DMatrix::<f64>::identity(k, k);
        ortho_gap = ortho_gap
            .max((space.left_vectors.transpose() * &space.left_vectors - &id).amax())
            .max((space.doc_coords.transpose() * &space.doc_coords - &id).amax());

        // (c) and (d) at a random k, on an arbitrary query and its multiple
        let docs = bags_from_columns(&a, "d");
        let vocab = build_vocabulary(&docs).unwrap();
        let tdm = build_tdm(&docs, &vocab);
        let scale = rng.random_range(2..10) as f64;
        let q: Vec<f64> = (0..a.nrows()).map(|_| rng.random_range(0..4) as f64).collect();
        let qm = nalgebra::DMatrix::from_fn(a.nrows(), 2, |i, j| q[i] * if j == 0 { 1.0 } else { scale });
        let tqm = build_tqm(&bags_from_columns(&qm, "q"), &vocab);
        let k = rng.random_range(1..=tdm.rows().min(tdm.cols()));
        let csm = cosine_similarity_matrix(&truncated_svd(&tdm, k).unwrap(), &tqm);
        for row in &csm.values {
            for v in row {
                assert!((-1.0..=1.0).contains(v), "CSM value {v} out of range (seed {seed})");
            }
        }
        for (x, y) in csm.values[0].iter().zip(&csm.values[1]) {
            scale_gap = scale_gap.max((x - y).abs());
        }
    }
    let elapsed = start.elapsed();
    assert!(vsm_gap < VSM_TOL, "LSI vs VSM gap {vsm_gap:e}");
    assert!(rec_gap < RECONSTRUCT_TOL, "reconstruction gap {rec_gap:e}");
    assert!(ortho_gap < ORTHO_TOL, "orthonormality gap {ortho_gap:e}");
    assert!(scale_gap < SCALE_TOL, "scaling gap {scale_gap:e}");
    assert!(elapsed < SUITE_RUNTIME, "took {elapsed:?}");
    format!(
        "{RANDOM_MATRICES} matrices; max gaps vsm {vsm_gap:.1e}, reconstruct {rec_gap:.1e}, \
         ortho {ortho_gap:.1e}, scale {scale_gap:.1e}; {elapsed:.2?}"
    )
}

fn bag_terms(text: &str) -> BTreeSet<String> {
    let doc = RawDocument {
        name: "x".into(),
        text: text.into(),
        kind: DocumentKind::Class,
    };
    preprocess(&doc, &StopWordList::default()).counts.into_keys().collect()
}

fn set_of(words: &[&str]) -> BTreeSet<String> {
    words.iter().map(|w| (*w).to_owned()).collect()
}

fn preprocessing() -> String {
    assert_eq!(split_camel_case("fillRect"), ["fill", "Rect"]);
    assert_eq!(bag_terms("fillRect"), set_of(&["fill", "rect"]));
    assert_eq!(bag_terms("shapeColor"), set_of(&["shape", "color"]));
    assert_eq!(bag_terms("Shapes.coreElements"), set_of(&["shape", "core", "element"]));
    for (w, s) in [("drawing", "draw"), ("Drawing", "draw"), ("elements", "element"), ("declares", "declare")] {
        assert_eq!(bag_terms(w), set_of(&[s]), "{w}");
    }
    assert_eq!(stem("declares"), "declare");
    let survivors = bag_terms("My shape to an oval, a line; the Rectangle");
    for sw in REQUIRED_STOP_WORDS {
        assert!(!survivors.contains(sw), "{sw} survived");
    }
    // a custom list keeps the required words
    let custom = StopWordList::parse("zone\n");
    for sw in REQUIRED_STOP_WORDS {
        assert!(custom.contains(sw));
    }
    "camel-case, stems and stop words exact".into()
}

fn evaluation_laws() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let random_set = |rng: &mut ChaCha8Rng| -> BTreeSet<u32> {
        let n = rng.random_range(0..8);
        (0..n).map(|_| rng.random_range(0..12)).collect()
    };
    let mut violations = 0;
    for _ in 0..SET_PAIRS {
        let (a, b) = (random_set(&mut rng), random_set(&mut rng));
        let (p, r) = (precision(&a, &b), recall(&a, &b));
        let bounded = |v: Option<f64>| v.is_none_or(|x| (0.0..=1.0).contains(&x));
        let ok = bounded(p)
            && bounded(r)
            && p == oracle_precision(&a, &b)
            && r == oracle_recall(&a, &b)
            && precision(&a, &b) == recall(&b, &a)
            && ((p == Some(1.0) && r == Some(1.0)) == (!a.is_empty() && a == b));
        if !ok {
            violations += 1;
        }
    }
    assert_eq!(violations, 0, "{violations} law violations");
    let related: BTreeSet<u32> = (1..=4).collect();
    let recovered: BTreeSet<u32> = (1..=5).collect();
    assert_eq!(precision(&related, &recovered), Some(0.8));
    assert_eq!(recall(&related, &recovered), Some(1.0));
    format!("{SET_PAIRS} set pairs, 0 violations, 0.8/1.0 fixture")
}

fn reproducibility() -> String {
    let tmp = tempfile::tempdir().unwrap();
    let (a, b) = (tmp.path().join("a"), tmp.path().join("b"));
    trace_ds(&a, false);
    trace_ds(&b, false);
    for f in ["links.json", "poset.dot", "tracelinks.dot"] {
        assert_eq!(fs::read(a.join(f)).unwrap(), fs::read(b.join(f)).unwrap(), "{f} differs");
    }
    "links.json, poset.dot, tracelinks.dot byte-identical".into()
}

/// A stand-in for an externally supplied corpus: facts XML written by
/// another tool, requirement texts and a gold file from outside the repo.
fn external_inputs() -> String {
    let tmp = tempfile::tempdir().unwrap();
    let root = tmp.path();
    let facts = reqtrace::model::CodeFacts {
        provenance: "external".into(),
        packages: vec![reqtrace::model::PackageFact {
            name: "album".into(),
            classes: ["AlbumCreator", "PhotoViewer", "MediaStore"]
                .iter()
                .map(|n| reqtrace::model::ClassFact {
                    name: (*n).into(),
                    comments: vec![reqtrace::model::CommentFact {
                        text: format!("{n} handles album photo media"),
                        kind: reqtrace::model::CommentKind::Class,
                    }],
                    ..Default::default()
                })
                .collect(),
        }],
    };
    fs::write(root.join("facts.xml"), save_facts_xml(&facts)).unwrap();
    fs::create_dir(root.join("reqs")).unwrap();
    fs::write(root.join("reqs/Create_album.txt"), "The user shall create an album.").unwrap();
    fs::write(root.join("reqs/View_photo.txt"), "The user shall view a photo.").unwrap();
    fs::write(
        root.join("gold.json"),
        r#"{"Create album": ["AlbumCreator"], "View photo": ["PhotoViewer"]}"#,
    )
    .unwrap();
    let (f, r, g, o) = (root.join("facts.xml"), root.join("reqs"), root.join("gold.json"), root.join("out"));
    let out = run_cli(&[
        "trace", "--facts", path_str(&f), "--reqs", path_str(&r), "--gold", path_str(&g), "--out", path_str(&o),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: Value = serde_json::from_slice(&fs::read(o.join("report.json")).unwrap()).unwrap();
    assert_eq!(report["per_requirement"].as_array().unwrap().len(), 2);
    "--facts/--reqs/--gold accepted; no numeric target".into()
}
