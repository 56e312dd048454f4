//! Turns a binarized context and its AOC-poset into requirement-to-class
//! links, and renders both as DOT.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::fca::{AocPoset, FormalContext};

/// Requirements and classes grouped by one poset concept.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cluster {
    pub requirements: Vec<String>,
    pub classes: Vec<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceLinkSet {
    /// Requirement name to linked classes (in context order). Every
    /// requirement is present, possibly with no classes.
    pub links: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub clusters: Vec<Cluster>,
    #[serde(default)]
    pub unlinked_classes: Vec<String>,
    #[serde(default)]
    pub unlinked_requirements: Vec<String>,
    /// Requirement and class order of the source context.
    #[serde(skip)]
    pub requirement_order: Vec<String>,
    #[serde(skip)]
    pub class_order: Vec<String>,
}

impl TraceLinkSet {
    pub fn linked(&self, requirement: &str) -> &[String] {
        self.links.get(requirement).map_or(&[], Vec::as_slice)
    }

    pub fn link_count(&self) -> usize {
        self.links.values().map(Vec::len).sum()
    }

    /// JSON report: the link map plus the unlinked lists.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Report<'a> {
            links: &'a BTreeMap<String, Vec<String>>,
            clusters: &'a [Cluster],
            unlinked_classes: &'a [String],
            unlinked_requirements: &'a [String],
        }
        let mut s = serde_json::to_string_pretty(&Report {
            links: &self.links,
            clusters: &self.clusters,
            unlinked_classes: &self.unlinked_classes,
            unlinked_requirements: &self.unlinked_requirements,
        })
        .expect("string maps always serialize");
        s.push('\n');
        s
    }
}

/// Links are the incidence rows of `ctx`; the poset supplies clusters.
pub fn assemble_links(poset: &AocPoset, ctx: &FormalContext) -> TraceLinkSet {
    let requirements = ctx.objects();
    let classes = ctx.attributes();
    let mut links = BTreeMap::new();
    let mut used = HashSet::new();
    let mut unlinked_requirements = Vec::new();
    for (o, name) in requirements.iter().enumerate() {
        let row: Vec<String> = ctx.row(o).map(|a| classes[a].clone()).collect();
        if row.is_empty() {
            unlinked_requirements.push(name.clone());
        }
        used.extend(ctx.row(o));
        links.insert(name.clone(), row);
    }
    let unlinked_classes = (0..classes.len())
        .filter(|a| !used.contains(a))
        .map(|a| classes[a].clone())
        .collect();
    let clusters = poset
        .concepts
        .iter()
        .filter(|c| !c.concept.extent.is_empty() && !c.concept.intent.is_empty())
        .map(|c| Cluster {
            requirements: c.concept.extent_names(ctx).map(str::to_owned).collect(),
            classes: c.concept.intent_names(ctx).map(str::to_owned).collect(),
        })
        .collect();
    TraceLinkSet {
        links,
        clusters,
        unlinked_classes,
        unlinked_requirements,
        requirement_order: requirements.to_vec(),
        class_order: classes.to_vec(),
    }
}

fn escape(label: &str) -> String {
    let mut out = String::with_capacity(label.len());
    for c in label.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            _ => out.push(c),
        }
    }
    out
}

/// Non-alphanumeric characters become `_`.
pub fn sanitize_id(name: &str) -> String {
    name.chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
        .collect()
}

/// Assigns `prefix + sanitized name`, suffixing a counter on clashes.
struct IdAllocator(HashSet<String>);

impl IdAllocator {
    fn id(&mut self, prefix: &str, name: &str) -> String {
        let base = format!("{prefix}{}", sanitize_id(name));
        let mut id = base.clone();
        let mut n = 2;
        while !self.0.insert(id.clone()) {
            id = format!("{base}_{n}");
            n += 1;
        }
        id
    }
}

pub fn emit_dot_poset(poset: &AocPoset) -> String {
    let mut out = String::from("digraph aoc_poset {\n  rankdir=BT;\n  node [shape=box, fontname=\"Helvetica\"];\n");
    for (i, _) in poset.concepts.iter().enumerate() {
        let mut label = format!("Concept_{i}");
        for o in poset.introduced_object_names(i) {
            label.push_str("\nE: ");
            label.push_str(o);
        }
        for a in poset.introduced_attribute_names(i) {
            label.push_str("\nI: ");
            label.push_str(a);
        }
        let _ = writeln!(out, "  Concept_{i} [label=\"{}\"];", escape(&label));
    }
    for (sub, sup) in &poset.edges {
        let _ = writeln!(out, "  Concept_{sub} -> Concept_{sup};");
    }
    out.push_str("}\n");
    out
}

/// Bipartite requirement/class graph; unlinked nodes stay isolated.
pub fn emit_dot_tracelinks(tls: &TraceLinkSet) -> String {
    let mut ids = IdAllocator(HashSet::new());
    let mut out = String::from("digraph trace_links {\n  rankdir=LR;\n");
    let requirements = ordered(&tls.requirement_order, tls.links.keys());
    let mut classes = ordered(&tls.class_order, tls.links.values().flatten().chain(&tls.unlinked_classes));
    classes.dedup();

    let mut req_ids = BTreeMap::new();
    for r in &requirements {
        let id = ids.id("req_", r);
        let _ = writeln!(
            out,
            "  {id} [label=\"{}\", shape=note, style=filled, fillcolor=\"#fde9b7\"];",
            escape(r)
        );
        req_ids.insert(r.as_str(), id);
    }
    let mut class_ids = BTreeMap::new();
    for c in &classes {
        let id = ids.id("cls_", c);
        let _ = writeln!(out, "  {id} [label=\"{}\", shape=box];", escape(c));
        class_ids.insert(c.as_str(), id);
    }
    for r in &requirements {
        for c in tls.linked(r) {
            let _ = writeln!(out, "  {} -> {};", req_ids[r.as_str()], class_ids[c.as_str()]);
        }
    }
    out.push_str("}\n");
    out
}

/// `order` when it is populated, otherwise the sorted distinct `names`.
fn ordered<'a>(order: &[String], names: impl Iterator<Item = &'a String>) -> Vec<String> {
    if !order.is_empty() {
        return order.to_vec();
    }
    let mut v: Vec<String> = names.cloned().collect();
    v.sort();
    v.dedup();
    v
}
