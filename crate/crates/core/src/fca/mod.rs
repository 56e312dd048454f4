//! Formal concept analysis: contexts, derivation, concept enumeration and
//! the AOC-poset with reduced labels.

use std::collections::{HashMap, HashSet};
use std::io::{Read, Write};

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lsi::SimilarityMatrix;

/// Contexts with at most this many objects are enumerated by closing every
/// subset of objects; larger ones use NextClosure.
const BRUTE_FORCE_MAX_OBJECTS: usize = 20;

/// Objects × attributes with a boolean incidence relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalContext {
    objects: Vec<String>,
    attributes: Vec<String>,
    /// One attribute bitset per object.
    rows: Vec<FixedBitSet>,
    /// One object bitset per attribute.
    cols: Vec<FixedBitSet>,
}

fn check_unique(names: &[String], what: &str) -> Result<()> {
    let mut seen = HashSet::new();
    for n in names {
        if !seen.insert(n.as_str()) {
            return Err(Error::Parameter(format!("duplicate {what} name '{n}'")));
        }
    }
    Ok(())
}

impl FormalContext {
    pub fn new(objects: Vec<String>, attributes: Vec<String>) -> Result<Self> {
        check_unique(&objects, "object")?;
        check_unique(&attributes, "attribute")?;
        let rows = vec![FixedBitSet::with_capacity(attributes.len()); objects.len()];
        let cols = vec![FixedBitSet::with_capacity(objects.len()); attributes.len()];
        Ok(FormalContext {
            objects,
            attributes,
            rows,
            cols,
        })
    }

    /// Builds a context from a dense boolean matrix (`objects × attributes`).
    pub fn from_matrix(objects: Vec<String>, attributes: Vec<String>, cells: &[Vec<bool>]) -> Result<Self> {
        let mut ctx = Self::new(objects, attributes)?;
        if cells.len() != ctx.objects.len() || cells.iter().any(|r| r.len() != ctx.attributes.len()) {
            return Err(Error::Parameter("incidence matrix shape does not match names".into()));
        }
        for (o, row) in cells.iter().enumerate() {
            for (a, &on) in row.iter().enumerate() {
                ctx.set(o, a, on);
            }
        }
        Ok(ctx)
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn attributes(&self) -> &[String] {
        &self.attributes
    }

    pub fn set(&mut self, object: usize, attribute: usize, on: bool) {
        self.rows[object].set(attribute, on);
        self.cols[attribute].set(object, on);
    }

    pub fn incident(&self, object: usize, attribute: usize) -> bool {
        self.rows[object].contains(attribute)
    }

    /// Attribute indices of one object.
    pub fn row(&self, object: usize) -> impl Iterator<Item = usize> + '_ {
        self.rows[object].ones()
    }

    pub fn incidence_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones(..)).sum()
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn attribute_index(&self, name: &str) -> Option<usize> {
        self.attributes.iter().position(|a| a == name)
    }

    /// Attributes shared by every object in `objects`; all attributes for the
    /// empty set.
    pub fn intent_of(&self, objects: &FixedBitSet) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.attributes.len());
        out.insert_range(..);
        for o in objects.ones() {
            out.intersect_with(&self.rows[o]);
        }
        out
    }

    /// Objects having every attribute in `attributes`; all objects for the
    /// empty set.
    pub fn extent_of(&self, attributes: &FixedBitSet) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.objects.len());
        out.insert_range(..);
        for a in attributes.ones() {
            out.intersect_with(&self.cols[a]);
        }
        out
    }

    fn closure(&self, objects: &FixedBitSet) -> FixedBitSet {
        self.extent_of(&self.intent_of(objects))
    }

    /// Reads a context CSV: the header holds attribute names after a corner
    /// cell, each following row an object name and 0/1 cells.
    pub fn read_csv<R: Read>(input: R) -> Result<Self> {
        let fmt = |message: String| Error::Format {
            what: "context CSV",
            message,
        };
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .from_reader(input);
        let mut records = rdr.records();
        let header = match records.next() {
            Some(h) => h.map_err(|e| fmt(e.to_string()))?,
            None => return Self::new(Vec::new(), Vec::new()),
        };
        let attributes: Vec<String> = header.iter().skip(1).map(str::to_owned).collect();
        let mut objects = Vec::new();
        let mut cells = Vec::new();
        for (line, rec) in records.enumerate() {
            let rec = rec.map_err(|e| fmt(e.to_string()))?;
            if rec.len() != attributes.len() + 1 {
                return Err(fmt(format!(
                    "row {} has {} cells, expected {}",
                    line + 2,
                    rec.len(),
                    attributes.len() + 1
                )));
            }
            objects.push(rec[0].to_owned());
            let row = rec
                .iter()
                .skip(1)
                .map(|c| match c {
                    "1" => Ok(true),
                    "0" | "" => Ok(false),
                    other => Err(fmt(format!("cell '{other}' in row {} is not 0 or 1", line + 2))),
                })
                .collect::<Result<Vec<bool>>>()?;
            cells.push(row);
        }
        Self::from_matrix(objects, attributes, &cells)
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let err = |e: csv::Error| Error::Format {
            what: "context CSV",
            message: e.to_string(),
        };
        let mut w = csv::Writer::from_writer(out);
        w.write_record(std::iter::once("").chain(self.attributes.iter().map(String::as_str)))
            .map_err(err)?;
        for (o, name) in self.objects.iter().enumerate() {
            let mut rec = vec![name.clone()];
            rec.extend((0..self.attributes.len()).map(|a| if self.incident(o, a) { "1" } else { "0" }.to_owned()));
            w.write_record(&rec).map_err(err)?;
        }
        w.flush().map_err(|e| Error::io("<csv>", e))?;
        Ok(())
    }
}

/// Marks each (query, document) pair whose similarity is at least `threshold`.
pub fn binarize(csm: &SimilarityMatrix, threshold: f64) -> Result<FormalContext> {
    let cells: Vec<Vec<bool>> = csm
        .values
        .iter()
        .map(|row| row.iter().map(|&v| v >= threshold).collect())
        .collect();
    FormalContext::from_matrix(csm.query_names.clone(), csm.doc_names.clone(), &cells)
}

fn names_to_set(names: &[&str], universe: &[String], what: &str) -> Result<FixedBitSet> {
    let mut set = FixedBitSet::with_capacity(universe.len());
    for n in names {
        let i = universe
            .iter()
            .position(|u| u == n)
            .ok_or_else(|| Error::Parameter(format!("unknown {what} '{n}'")))?;
        set.insert(i);
    }
    Ok(set)
}

fn set_to_names(set: &FixedBitSet, universe: &[String]) -> Vec<String> {
    set.ones().map(|i| universe[i].clone()).collect()
}

/// Attributes common to the named objects.
pub fn derive_intent(objects: &[&str], ctx: &FormalContext) -> Result<Vec<String>> {
    let set = names_to_set(objects, &ctx.objects, "object")?;
    Ok(set_to_names(&ctx.intent_of(&set), &ctx.attributes))
}

/// Objects having all the named attributes.
pub fn derive_extent(attributes: &[&str], ctx: &FormalContext) -> Result<Vec<String>> {
    let set = names_to_set(attributes, &ctx.attributes, "attribute")?;
    Ok(set_to_names(&ctx.extent_of(&set), &ctx.objects))
}

/// A closed (extent, intent) pair, as sorted index lists into the context.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FormalConcept {
    pub extent: Vec<usize>,
    pub intent: Vec<usize>,
}

impl FormalConcept {
    fn from_extent(extent: &FixedBitSet, ctx: &FormalContext) -> Self {
        FormalConcept {
            extent: extent.ones().collect(),
            intent: ctx.intent_of(extent).ones().collect(),
        }
    }

    pub fn extent_names<'a>(&'a self, ctx: &'a FormalContext) -> impl Iterator<Item = &'a str> + 'a {
        self.extent.iter().map(|&i| ctx.objects[i].as_str())
    }

    pub fn intent_names<'a>(&'a self, ctx: &'a FormalContext) -> impl Iterator<Item = &'a str> + 'a {
        self.intent.iter().map(|&i| ctx.attributes[i].as_str())
    }

    fn extent_subset_of(&self, other: &FormalConcept) -> bool {
        // both lists are sorted
        let mut it = other.extent.iter();
        self.extent.iter().all(|x| it.any(|y| y == x))
    }
}

/// Every formal concept of `ctx`, ordered by decreasing extent size and then
/// lexicographically by extent.
pub fn enumerate_concepts(ctx: &FormalContext) -> Vec<FormalConcept> {
    let extents = if ctx.objects.len() <= BRUTE_FORCE_MAX_OBJECTS {
        closed_extents_by_subsets(ctx)
    } else {
        closed_extents_next_closure(ctx)
    };
    let mut concepts: Vec<FormalConcept> = extents
        .iter()
        .map(|e| FormalConcept::from_extent(e, ctx))
        .collect();
    concepts.sort_by(|a, b| b.extent.len().cmp(&a.extent.len()).then_with(|| a.extent.cmp(&b.extent)));
    concepts
}

fn closed_extents_by_subsets(ctx: &FormalContext) -> Vec<FixedBitSet> {
    let n = ctx.objects.len();
    let found: HashSet<FixedBitSet> = (0u64..1 << n)
        .into_par_iter()
        .fold(HashSet::new, |mut acc, mask| {
            let mut subset = FixedBitSet::with_capacity(n);
            for i in 0..n {
                if mask >> i & 1 == 1 {
                    subset.insert(i);
                }
            }
            acc.insert(ctx.closure(&subset));
            acc
        })
        .reduce(HashSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    found.into_iter().collect()
}

/// Ganter's NextClosure over object sets in lectic order.
fn closed_extents_next_closure(ctx: &FormalContext) -> Vec<FixedBitSet> {
    let n = ctx.objects.len();
    let mut current = ctx.closure(&FixedBitSet::with_capacity(n));
    let mut out = vec![current.clone()];
    loop {
        let mut next = None;
        for i in (0..n).rev() {
            if current.contains(i) {
                continue;
            }
            let mut seed = FixedBitSet::with_capacity(n);
            seed.extend(current.ones().filter(|&j| j < i));
            seed.insert(i);
            let candidate = ctx.closure(&seed);
            // lectic successor: nothing new below i
            if candidate.ones().take_while(|&j| j < i).all(|j| current.contains(j)) {
                next = Some(candidate);
                break;
            }
        }
        match next {
            Some(c) => {
                out.push(c.clone());
                current = c;
            }
            None => break,
        }
    }
    out
}

/// A kept concept of the AOC-poset with its reduced labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosetConcept {
    pub concept: FormalConcept,
    pub introduced_objects: Vec<usize>,
    pub introduced_attributes: Vec<usize>,
}

/// Object- and attribute-concepts of a context with covering edges
/// `(sub, super)` given as indices into `concepts`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AocPoset {
    pub object_names: Vec<String>,
    pub attribute_names: Vec<String>,
    pub concepts: Vec<PosetConcept>,
    pub edges: Vec<(usize, usize)>,
}

impl AocPoset {
    pub fn introduced_object_names(&self, c: usize) -> impl Iterator<Item = &str> {
        self.concepts[c].introduced_objects.iter().map(|&i| self.object_names[i].as_str())
    }

    pub fn introduced_attribute_names(&self, c: usize) -> impl Iterator<Item = &str> {
        self.concepts[c]
            .introduced_attributes
            .iter()
            .map(|&i| self.attribute_names[i].as_str())
    }

    /// Index of the concept introducing the named object.
    pub fn object_concept(&self, name: &str) -> Option<usize> {
        let o = self.object_names.iter().position(|n| n == name)?;
        self.concepts.iter().position(|c| c.introduced_objects.contains(&o))
    }

    /// Index of the concept introducing the named attribute.
    pub fn attribute_concept(&self, name: &str) -> Option<usize> {
        let a = self.attribute_names.iter().position(|n| n == name)?;
        self.concepts.iter().position(|c| c.introduced_attributes.contains(&a))
    }
}

/// Restricts `concepts` (the full concept set of `ctx`, in enumeration
/// order) to object- and attribute-concepts.
pub fn build_aoc_poset(concepts: &[FormalConcept], ctx: &FormalContext) -> AocPoset {
    let by_extent: HashMap<&[usize], usize> = concepts
        .iter()
        .enumerate()
        .map(|(i, c)| (c.extent.as_slice(), i))
        .collect();
    let lookup = |extent: &FixedBitSet| -> usize {
        let key: Vec<usize> = extent.ones().collect();
        *by_extent
            .get(key.as_slice())
            .expect("concept list is incomplete for this context")
    };

    let mut objects_at: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut attributes_at: HashMap<usize, Vec<usize>> = HashMap::new();
    for o in 0..ctx.objects.len() {
        let mut single = FixedBitSet::with_capacity(ctx.objects.len());
        single.insert(o);
        objects_at.entry(lookup(&ctx.closure(&single))).or_default().push(o);
    }
    for a in 0..ctx.attributes.len() {
        attributes_at.entry(lookup(&ctx.cols[a])).or_default().push(a);
    }

    let mut kept: Vec<usize> = objects_at.keys().chain(attributes_at.keys()).copied().collect();
    kept.sort_unstable();
    kept.dedup();

    let poset_concepts: Vec<PosetConcept> = kept
        .iter()
        .map(|&i| PosetConcept {
            concept: concepts[i].clone(),
            introduced_objects: objects_at.remove(&i).unwrap_or_default(),
            introduced_attributes: attributes_at.remove(&i).unwrap_or_default(),
        })
        .collect();

    let n = poset_concepts.len();
    let below = |x: usize, y: usize| {
        let (cx, cy) = (&poset_concepts[x].concept, &poset_concepts[y].concept);
        cx.extent.len() < cy.extent.len() && cx.extent_subset_of(cy)
    };
    let mut edges = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if below(x, y) && !(0..n).any(|z| below(x, z) && below(z, y)) {
                edges.push((x, y));
            }
        }
    }

    AocPoset {
        object_names: ctx.objects.clone(),
        attribute_names: ctx.attributes.clone(),
        concepts: poset_concepts,
        edges,
    }
}
