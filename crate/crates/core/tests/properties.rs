mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use common::*;
use nalgebra::DMatrix;
use proptest::prelude::*;
use proptest::sample::select;
use reqtrace::docs::{build_class_documents, class_document_entries, DocumentKind, RawDocument};
use reqtrace::eval::{evaluate, precision, recall, GoldLinks};
use reqtrace::fca::{build_aoc_poset, enumerate_concepts, FormalContext};
use reqtrace::java::parse_compilation_unit;
use reqtrace::lsi::{
    build_tdm, build_tqm, build_vocabulary, cosine_similarity_matrix, truncated_svd, truncated_svd_dense,
};
use reqtrace::model::{
    compute_metrics, load_facts_xml, save_facts_xml, AttributeFact, ClassFact, CodeFacts, CommentFact, CommentKind,
    MethodFact, PackageFact, Variable,
};
use reqtrace::text::{preprocess, terms, StopWordList, REQUIRED_STOP_WORDS};
use reqtrace::trace::{assemble_links, emit_dot_poset, emit_dot_tracelinks};

// ---- code facts ----

fn ident() -> impl Strategy<Value = String> {
    "[A-Za-z_][A-Za-z0-9_]{0,6}"
}

fn type_name() -> impl Strategy<Value = String> {
    "[A-Z][a-z]{0,5}(\\[\\])?(<[A-Z][a-z]{0,3}>)?"
}

fn comment(kind: CommentKind) -> impl Strategy<Value = CommentFact> {
    "[ -~\n]{0,30}[!-~][ -~]{0,10}".prop_map(move |text| CommentFact { text, kind })
}

fn variables() -> impl Strategy<Value = Vec<Variable>> {
    prop::collection::btree_map(ident(), type_name(), 0..3).prop_map(|m| {
        m.into_iter()
            .map(|(name, declared_type)| Variable { name, declared_type })
            .collect()
    })
}

fn method(name: String) -> impl Strategy<Value = MethodFact> {
    (
        variables(),
        prop::collection::vec((ident(), type_name()), 0..3),
        prop::collection::vec(comment(CommentKind::Method), 0..2),
        prop::collection::vec(ident(), 0..3),
        prop::collection::vec(ident(), 0..3),
    )
        .prop_map(move |(parameters, locals, comments, accesses, invocations)| MethodFact {
            name: name.clone(),
            parameters,
            local_variables: locals
                .into_iter()
                .map(|(name, declared_type)| Variable { name, declared_type })
                .collect(),
            comments,
            attribute_accesses: accesses,
            method_invocations: invocations,
        })
}

fn class(name: String) -> impl Strategy<Value = ClassFact> {
    (
        prop::option::of(ident()),
        prop::collection::btree_map(ident(), type_name(), 0..3),
        prop::collection::btree_set(ident(), 0..3),
        prop::collection::vec(comment(CommentKind::Class), 0..2),
    )
        .prop_flat_map(move |(superclass, attrs, method_names, comments)| {
            let methods: Vec<_> = method_names.into_iter().map(method).collect();
            let name = name.clone();
            methods.prop_map(move |methods| ClassFact {
                name: name.clone(),
                superclass: superclass.clone(),
                attributes: attrs
                    .iter()
                    .map(|(n, t)| AttributeFact {
                        name: n.clone(),
                        declared_type: t.clone(),
                    })
                    .collect(),
                methods,
                comments: comments.clone(),
            })
        })
}

fn code_facts() -> impl Strategy<Value = CodeFacts> {
    (
        "[ -~]{0,12}",
        prop::collection::btree_set("([a-z]{1,4}(\\.[a-z]{1,4}){0,2})?", 0..3),
    )
        .prop_flat_map(|(provenance, package_names)| {
            let packages: Vec<_> = package_names
                .into_iter()
                .map(|pname| {
                    prop::collection::btree_set(ident(), 0..3).prop_flat_map(move |class_names| {
                        let classes: Vec<_> = class_names.into_iter().map(class).collect();
                        let pname = pname.clone();
                        classes.prop_map(move |classes| PackageFact {
                            name: pname.clone(),
                            classes,
                        })
                    })
                })
                .collect();
            packages.prop_map(move |packages| CodeFacts {
                provenance: provenance.clone(),
                packages,
            })
        })
}

#[derive(Debug, Clone)]
enum Growth {
    Package,
    Class,
    Attribute,
    Method,
    Local,
    Comment,
    Invocation,
    Access,
}

fn grow(facts: &mut CodeFacts, g: &Growth) {
    if facts.packages.is_empty() || matches!(g, Growth::Package) {
        facts.packages.push(PackageFact {
            name: "zz.extra".into(),
            classes: vec![],
        });
        return;
    }
    let package = facts.packages.last_mut().unwrap();
    if package.classes.is_empty() || matches!(g, Growth::Class) {
        package.classes.push(ClassFact {
            name: "ExtraClass".into(),
            ..Default::default()
        });
        return;
    }
    let class = package.classes.last_mut().unwrap();
    let extra_var = Variable {
        name: "extra".into(),
        declared_type: "int".into(),
    };
    match g {
        Growth::Attribute => class.attributes.push(AttributeFact {
            name: "extraAttr".into(),
            declared_type: "int".into(),
        }),
        Growth::Comment => class.comments.push(CommentFact {
            text: "more".into(),
            kind: CommentKind::Class,
        }),
        _ if class.methods.is_empty() || matches!(g, Growth::Method) => class.methods.push(MethodFact {
            name: "extraMethod".into(),
            ..Default::default()
        }),
        Growth::Local => class.methods[0].local_variables.push(extra_var),
        Growth::Invocation => class.methods[0].method_invocations.push("call".into()),
        _ => class.methods[0].attribute_accesses.push("field".into()),
    }
}

proptest! {
    #[test]
    fn facts_xml_round_trips(facts in code_facts()) {
        prop_assert!(facts.validate().is_ok());
        let xml = save_facts_xml(&facts);
        let back = load_facts_xml(&xml).unwrap();
        prop_assert_eq!(&back, &facts);
        prop_assert_eq!(save_facts_xml(&back), xml);
    }

    #[test]
    fn metrics_never_shrink_as_facts_grow(
        facts in code_facts(),
        g in select(vec![
            Growth::Package, Growth::Class, Growth::Attribute, Growth::Method,
            Growth::Local, Growth::Comment, Growth::Invocation, Growth::Access,
        ]),
    ) {
        let before = compute_metrics(&facts);
        prop_assert_eq!(compute_metrics(&facts), before);
        let mut grown = facts.clone();
        grow(&mut grown, &g);
        let after = compute_metrics(&grown);
        let pairs = [
            (before.nop, after.nop), (before.noc, after.noc), (before.noa, after.noa),
            (before.nom, after.nom), (before.identifiers, after.identifiers),
            (before.comments, after.comments), (before.locals, after.locals),
            (before.invocations, after.invocations), (before.accesses, after.accesses),
        ];
        prop_assert!(pairs.iter().all(|(b, a)| a >= b), "{:?} -> {:?}", before, after);
        prop_assert_ne!(after, before);
    }
}

// ---- java parser ----

#[derive(Debug, Clone)]
struct GenMethod {
    params: usize,
    locals: usize,
    accesses: Vec<usize>,
    calls: usize,
}

#[derive(Debug, Clone)]
struct GenClass {
    extends: bool,
    fields: usize,
    methods: Vec<GenMethod>,
}

fn gen_class() -> impl Strategy<Value = GenClass> {
    (0usize..4).prop_flat_map(|fields| {
        let method = (0usize..3, 0usize..3, prop::collection::vec(0..fields.max(1), 0..3), 0usize..3).prop_map(
            move |(params, locals, accesses, calls)| GenMethod {
                params,
                locals,
                accesses: if fields == 0 { vec![] } else { accesses },
                calls,
            },
        );
        (any::<bool>(), prop::collection::vec(method, 0..3)).prop_map(move |(extends, methods)| GenClass {
            extends,
            fields,
            methods,
        })
    })
}

/// Renders classes into one file. Names carry the class and member index so
/// they are never keywords and never collide across classes.
fn render(classes: &[GenClass]) -> String {
    let mut s = String::from("package gen.pkg;\n\nimport java.util.List;\n\n");
    for (c, class) in classes.iter().enumerate() {
        s.push_str(&format!("/** class {c} */\nclass K{c}"));
        if class.extends {
            s.push_str(&format!(" extends Base{c}"));
        }
        s.push_str(" {\n");
        for f in 0..class.fields {
            s.push_str(&format!("    private int f{c}x{f};\n"));
        }
        for (m, method) in class.methods.iter().enumerate() {
            let params: Vec<String> = (0..method.params).map(|p| format!("int p{c}x{m}x{p}")).collect();
            s.push_str(&format!("    // method {m}\n    public void m{c}x{m}({}) {{\n", params.join(", ")));
            for l in 0..method.locals {
                s.push_str(&format!("        int v{c}x{m}x{l} = {l};\n"));
            }
            for &f in &method.accesses {
                s.push_str(&format!("        this.f{c}x{f} = f{c}x{f} + 1;\n"));
            }
            for k in 0..method.calls {
                s.push_str(&format!("        call{c}x{m}x{k}(1, \"s)\");\n"));
            }
            s.push_str("    }\n");
        }
        s.push_str("}\n\n");
    }
    s
}

fn identifiers_of(package: &PackageFact) -> Vec<String> {
    let mut out = Vec::new();
    for class in &package.classes {
        out.push(class.name.clone());
        out.extend(class.superclass.clone());
        out.extend(class.attributes.iter().map(|a| a.name.clone()));
        for m in &class.methods {
            out.push(m.name.clone());
            out.extend(m.parameters.iter().map(|p| p.name.clone()));
            out.extend(m.local_variables.iter().map(|p| p.name.clone()));
            out.extend(m.attribute_accesses.iter().cloned());
            out.extend(m.method_invocations.iter().cloned());
        }
    }
    out
}

proptest! {
    #[test]
    fn parser_is_deterministic_and_invents_nothing(classes in prop::collection::vec(gen_class(), 1..4)) {
        let src = render(&classes);
        let file = Path::new("Gen.java");
        let (first, diags) = parse_compilation_unit(&src, file);
        let (second, diags2) = parse_compilation_unit(&src, file);
        prop_assert_eq!(&first, &second);
        prop_assert_eq!(diags.len(), diags2.len());

        let tokens: BTreeSet<&str> = src
            .split(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .filter(|t| !t.is_empty())
            .collect();
        for id in identifiers_of(&first) {
            prop_assert!(tokens.contains(id.as_str()), "{} not in source", id);
        }
    }

    #[test]
    fn members_stay_with_their_class(classes in prop::collection::vec(gen_class(), 1..4)) {
        let (package, _) = parse_compilation_unit(&render(&classes), Path::new("Gen.java"));
        prop_assert_eq!(&package.name, "gen.pkg");
        prop_assert_eq!(package.classes.len(), classes.len());
        for (c, (parsed, gen)) in package.classes.iter().zip(&classes).enumerate() {
            prop_assert_eq!(&parsed.name, &format!("K{c}"));
            prop_assert_eq!(parsed.superclass.clone(), gen.extends.then(|| format!("Base{c}")));
            let fields: Vec<String> = (0..gen.fields).map(|f| format!("f{c}x{f}")).collect();
            let parsed_fields: Vec<String> = parsed.attributes.iter().map(|a| a.name.clone()).collect();
            prop_assert_eq!(parsed_fields, fields);
            prop_assert_eq!(parsed.methods.len(), gen.methods.len());
            for (m, (pm, gm)) in parsed.methods.iter().zip(&gen.methods).enumerate() {
                prop_assert_eq!(&pm.name, &format!("m{c}x{m}"));
                prop_assert_eq!(pm.parameters.len(), gm.params);
                prop_assert_eq!(pm.local_variables.len(), gm.locals);
                let accessed: BTreeSet<String> = pm.attribute_accesses.iter().cloned().collect();
                let want: BTreeSet<String> = gm.accesses.iter().map(|f| format!("f{c}x{f}")).collect();
                prop_assert_eq!(accessed, want);
                let calls: BTreeSet<String> = pm.method_invocations.iter().cloned().collect();
                let want: BTreeSet<String> = (0..gm.calls).map(|k| format!("call{c}x{m}x{k}")).collect();
                prop_assert_eq!(calls, want);
            }
        }
    }
}

// ---- documents and text ----

proptest! {
    #[test]
    fn class_document_tokens_trace_to_fact_entries(facts in code_facts()) {
        let stops = StopWordList::default();
        let corpus = build_class_documents(&facts);
        prop_assert_eq!(corpus.documents.len(), facts.classes().count());
        for (doc, (package, class)) in corpus.documents.iter().zip(facts.classes()) {
            let mut from_entries: BTreeMap<String, usize> = BTreeMap::new();
            for entry in class_document_entries(package, class) {
                for t in terms(entry, &stops) {
                    *from_entries.entry(t).or_default() += 1;
                }
            }
            prop_assert_eq!(&preprocess(doc, &stops).counts, &from_entries);
        }
    }
}

const WORDS: &[&str] = &[
    "draw", "Drawing", "drawn", "lines", "Line", "shapeColor", "fillRect", "Shapes.coreElements", "the", "The",
    "my", "to", "an", "a", "declares", "getColor", "XMLFile", "x1", "42", "oval_s", "rectangles", "PaintJPanel",
    "user", "shall", "choose", "right", "color", "zone", "points", "between", "(", ");", "//", "&", "$5", "doing",
];

fn word() -> impl Strategy<Value = String> {
    prop_oneof![
        select(WORDS).prop_map(str::to_owned),
        "[A-Za-z0-9_.,;()$&/]{1,12}",
    ]
}

fn bag(text: &str) -> BTreeMap<String, usize> {
    preprocess(
        &RawDocument {
            name: "q".into(),
            text: text.into(),
            kind: DocumentKind::Requirement,
        },
        &StopWordList::default(),
    )
    .counts
}

proptest! {
    #[test]
    fn preprocessing_is_idempotent(words in prop::collection::vec(word(), 0..30)) {
        let first = preprocess(
            &RawDocument { name: "q".into(), text: words.join(" "), kind: DocumentKind::Class },
            &StopWordList::default(),
        );
        prop_assert_eq!(bag(&first.to_text()), first.counts);
    }

    #[test]
    fn token_order_does_not_matter(words in prop::collection::vec(word(), 0..30), seed in any::<u64>()) {
        use rand::{seq::SliceRandom, SeedableRng};
        let mut shuffled = words.clone();
        shuffled.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(bag(&words.join(" ")), bag(&shuffled.join("\t")));
    }

    #[test]
    fn surviving_terms_are_clean(words in prop::collection::vec(word(), 0..30)) {
        let stops = StopWordList::default();
        for term in bag(&words.join(" ")).keys() {
            prop_assert!(term.chars().all(|c| c.is_ascii_lowercase()), "{}", term);
            prop_assert!(!stops.contains(term));
            prop_assert!(!REQUIRED_STOP_WORDS.contains(&term.as_str()));
        }
    }
}

// ---- LSI ----

fn count_matrix() -> impl Strategy<Value = DMatrix<f64>> {
    (2usize..10, 2usize..8).prop_flat_map(|(t, d)| {
        prop::collection::vec(prop_oneof![3 => Just(0u32), 2 => 1u32..6], t * d)
            .prop_filter("not all zero", |v| v.iter().any(|&x| x != 0))
            .prop_map(move |v| DMatrix::from_iterator(t, d, v.into_iter().map(f64::from)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn full_rank_cosines_equal_vector_space_cosines(
        a in count_matrix(),
        mixes in prop::collection::vec(prop::collection::vec(0u32..3, 8), 1..4),
    ) {
        let mixes: Vec<Vec<u32>> = mixes
            .into_iter()
            .map(|m| m[..a.ncols()].to_vec())
            .filter(|m| m.iter().any(|&c| c != 0))
            .collect();
        prop_assume!(!mixes.is_empty());
        prop_assert!(full_rank_vsm_gap(&a, &mixes) < 1e-6);
    }

    #[test]
    fn svd_reconstructs_and_is_orthonormal(a in count_matrix()) {
        let space = truncated_svd_dense(&a, a.nrows().min(a.ncols())).unwrap();
        prop_assert!((space.reconstruct() - &a).amax() < 1e-6);
        let k = space.k;
        let ut_u = space.left_vectors.transpose() * &space.left_vectors;
        let vt_v = space.doc_coords.transpose() * &space.doc_coords;
        prop_assert!((ut_u - DMatrix::identity(k, k)).amax() < 1e-9);
        prop_assert!((vt_v - DMatrix::identity(k, k)).amax() < 1e-9);
        prop_assert!(space.singular_values.iter().all(|&s| s > 0.0));
        prop_assert!(space.singular_values.as_slice().windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn similarities_are_bounded_and_scale_free(
        a in count_matrix(),
        q in prop::collection::vec(0u32..4, 10),
        scale in 2u32..9,
        k_frac in 0.0f64..1.0,
    ) {
        let q = &q[..a.nrows()];
        let docs = bags_from_columns(&a, "d");
        let qm = DMatrix::from_fn(a.nrows(), 2, |i, j| f64::from(q[i] * if j == 0 { 1 } else { scale }));
        let vocab = build_vocabulary(&docs).unwrap();
        let tdm = build_tdm(&docs, &vocab);
        let tqm = build_tqm(&bags_from_columns(&qm, "q"), &vocab);
        let max_k = tdm.rows().min(tdm.cols());
        let k = 1 + ((max_k - 1) as f64 * k_frac) as usize;
        let csm = cosine_similarity_matrix(&truncated_svd(&tdm, k).unwrap(), &tqm);
        for row in &csm.values {
            prop_assert!(row.iter().all(|v| (-1.0..=1.0).contains(v)));
        }
        for (x, y) in csm.values[0].iter().zip(&csm.values[1]) {
            prop_assert!((x - y).abs() < 1e-9);
        }
    }
}

// ---- FCA and trace assembly ----

fn context() -> impl Strategy<Value = FormalContext> {
    (0usize..=8, 0usize..=8).prop_flat_map(|(no, na)| {
        prop::collection::vec(prop::collection::vec(any::<bool>(), na), no).prop_map(move |cells| {
            FormalContext::from_matrix(
                (0..no).map(|i| format!("r {i}")).collect(),
                (0..na).map(|i| format!("C.{i}")).collect(),
                &cells,
            )
            .unwrap()
        })
    })
}

fn name_set(it: impl Iterator<Item = impl Into<String>>) -> BTreeSet<String> {
    it.map(Into::into).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn concepts_match_power_set_oracle(ctx in context()) {
        let concepts = enumerate_concepts(&ctx);
        let got: BTreeSet<NameConcept> = concepts
            .iter()
            .map(|c| (name_set(c.extent_names(&ctx)), name_set(c.intent_names(&ctx))))
            .collect();
        prop_assert_eq!(got.len(), concepts.len(), "duplicate concepts");
        prop_assert_eq!(got, brute_force_concepts(&ctx));
        prop_assert!(concepts.windows(2).all(|w| w[0].extent.len() >= w[1].extent.len()));
    }

    #[test]
    fn concepts_are_closed(ctx in context()) {
        for c in enumerate_concepts(&ctx) {
            let intent: Vec<usize> = (0..ctx.attributes().len())
                .filter(|&a| c.extent.iter().all(|&o| ctx.incident(o, a)))
                .collect();
            let extent: Vec<usize> = (0..ctx.objects().len())
                .filter(|&o| c.intent.iter().all(|&a| ctx.incident(o, a)))
                .collect();
            prop_assert_eq!(&intent, &c.intent);
            prop_assert_eq!(&extent, &c.extent);
        }
    }

    #[test]
    fn poset_labels_partition_and_edges_cover(ctx in context()) {
        let poset = build_aoc_poset(&enumerate_concepts(&ctx), &ctx);
        let mut objs: Vec<usize> = poset.concepts.iter().flat_map(|c| c.introduced_objects.clone()).collect();
        let mut attrs: Vec<usize> = poset.concepts.iter().flat_map(|c| c.introduced_attributes.clone()).collect();
        objs.sort_unstable();
        attrs.sort_unstable();
        prop_assert_eq!(objs, (0..ctx.objects().len()).collect::<Vec<_>>());
        prop_assert_eq!(attrs, (0..ctx.attributes().len()).collect::<Vec<_>>());
        prop_assert!(poset.concepts.iter().all(|c| !c.introduced_objects.is_empty() || !c.introduced_attributes.is_empty()));

        let ext = |i: usize| -> BTreeSet<usize> { poset.concepts[i].concept.extent.iter().copied().collect() };
        let below = |x: usize, y: usize| ext(x).is_subset(&ext(y)) && ext(x) != ext(y);
        let n = poset.concepts.len();
        for &(sub, sup) in &poset.edges {
            prop_assert!(below(sub, sup));
            prop_assert!(!(0..n).any(|z| below(sub, z) && below(z, sup)));
        }
        // every covering pair is present
        for x in 0..n {
            for y in 0..n {
                if below(x, y) && !(0..n).any(|z| below(x, z) && below(z, y)) {
                    prop_assert!(poset.edges.contains(&(x, y)));
                }
            }
        }
    }

    #[test]
    fn links_are_context_rows(ctx in context()) {
        let poset = build_aoc_poset(&enumerate_concepts(&ctx), &ctx);
        let tls = assemble_links(&poset, &ctx);
        prop_assert_eq!(tls.links.len(), ctx.objects().len());
        for (o, name) in ctx.objects().iter().enumerate() {
            let row: Vec<String> = ctx.row(o).map(|a| ctx.attributes()[a].clone()).collect();
            prop_assert_eq!(tls.linked(name), row.as_slice());
        }
        prop_assert_eq!(tls.link_count(), ctx.incidence_count());
    }

    #[test]
    fn dot_output_parses_and_is_deterministic(ctx in context()) {
        let poset = build_aoc_poset(&enumerate_concepts(&ctx), &ctx);
        let tls = assemble_links(&poset, &ctx);
        let (p, t) = (emit_dot_poset(&poset), emit_dot_tracelinks(&tls));
        let pd = parse_dot(&p);
        prop_assert_eq!(pd.nodes.len(), poset.concepts.len());
        prop_assert_eq!(pd.edges.len(), poset.edges.len());
        let td = parse_dot(&t);
        prop_assert_eq!(td.nodes.len(), ctx.objects().len() + ctx.attributes().len());
        prop_assert_eq!(td.edges.len(), ctx.incidence_count());

        let again = build_aoc_poset(&enumerate_concepts(&ctx), &ctx);
        prop_assert_eq!(emit_dot_poset(&again), p);
        prop_assert_eq!(emit_dot_tracelinks(&assemble_links(&again, &ctx)), t);
    }
}

// ---- evaluation ----

fn set() -> impl Strategy<Value = BTreeSet<u32>> {
    prop::collection::btree_set(0u32..12, 0..8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn precision_recall_laws(a in set(), b in set()) {
        let (p, r) = (precision(&a, &b), recall(&a, &b));
        prop_assert_eq!(p, oracle_precision(&a, &b));
        prop_assert_eq!(r, oracle_recall(&a, &b));
        prop_assert!(p.is_none_or(|x| (0.0..=1.0).contains(&x)));
        prop_assert!(r.is_none_or(|x| (0.0..=1.0).contains(&x)));
        prop_assert_eq!(precision(&a, &b), recall(&b, &a));
        let perfect = p == Some(1.0) && r == Some(1.0);
        prop_assert_eq!(perfect, !a.is_empty() && a == b);
    }

    #[test]
    fn report_matches_pairwise_oracle(
        gold in prop::collection::vec(set(), 1..5),
        found in prop::collection::vec(set(), 5),
    ) {
        let cls = |s: &BTreeSet<u32>| -> Vec<String> { s.iter().map(|i| format!("C{i}")).collect() };
        let gold_links = GoldLinks {
            related: gold.iter().enumerate().map(|(i, s)| (format!("R{i}"), cls(s).into_iter().collect())).collect(),
        };
        let mut tls = reqtrace::trace::TraceLinkSet::default();
        for (i, s) in found.iter().take(gold.len()).enumerate() {
            tls.links.insert(format!("R{i}"), cls(s));
        }
        let report = evaluate(&tls, &gold_links).unwrap();
        let (mut correct, mut rec, mut rel) = (0usize, 0usize, 0usize);
        for (i, g) in gold.iter().enumerate() {
            let f = &found[i];
            let s = report.score(&format!("R{i}")).unwrap();
            prop_assert_eq!(s.precision, oracle_precision(g, f));
            prop_assert_eq!(s.recall, oracle_recall(g, f));
            correct += g.intersection(f).count();
            rec += f.len();
            rel += g.len();
        }
        let micro = |n: usize, d: usize| (d > 0).then(|| n as f64 / d as f64);
        prop_assert_eq!(report.precision, micro(correct, rec));
        prop_assert_eq!(report.recall, micro(correct, rel));
    }
}
