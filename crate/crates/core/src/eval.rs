//! Precision and recall of recovered links against a gold standard.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::trace::TraceLinkSet;

/// `|related ∩ recovered| / |recovered|`, undefined for an empty recovered set.
pub fn precision<T: Ord>(related: &BTreeSet<T>, recovered: &BTreeSet<T>) -> Option<f64> {
    ratio(related.intersection(recovered).count(), recovered.len())
}

/// `|related ∩ recovered| / |related|`, undefined for an empty related set.
pub fn recall<T: Ord>(related: &BTreeSet<T>, recovered: &BTreeSet<T>) -> Option<f64> {
    ratio(related.intersection(recovered).count(), related.len())
}

fn ratio(num: usize, den: usize) -> Option<f64> {
    (den > 0).then(|| num as f64 / den as f64)
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GoldLinks {
    pub related: BTreeMap<String, BTreeSet<String>>,
}

impl GoldLinks {
    /// Parses `{"requirement": ["Class", ...], ...}`.
    pub fn from_json(bytes: &[u8]) -> Result<Self> {
        let related: BTreeMap<String, BTreeSet<String>> = serde_json::from_slice(bytes).map_err(|e| Error::Format {
            what: "gold links JSON",
            message: e.to_string(),
        })?;
        if related.keys().any(|k| k.trim().is_empty()) {
            return Err(Error::Format {
                what: "gold links JSON",
                message: "empty requirement name".into(),
            });
        }
        Ok(GoldLinks { related })
    }
}

/// Reads recovered links either as a full link report (with a `links`
/// object) or as a bare `{"requirement": [...]}` map.
pub fn recovered_links_from_json(bytes: &[u8]) -> Result<TraceLinkSet> {
    let err = |message: String| Error::Format {
        what: "links JSON",
        message,
    };
    let value: serde_json::Value = serde_json::from_slice(bytes).map_err(|e| err(e.to_string()))?;
    let map = match value.get("links") {
        Some(links) if links.is_object() => links.clone(),
        _ => value,
    };
    let links: BTreeMap<String, Vec<String>> = serde_json::from_value(map).map_err(|e| err(e.to_string()))?;
    Ok(TraceLinkSet {
        links,
        ..TraceLinkSet::default()
    })
}

fn na_as_string<S: Serializer>(v: &Option<f64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.serialize_f64(*x),
        None => s.serialize_str("N/A"),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RequirementScore {
    pub requirement: String,
    #[serde(serialize_with = "na_as_string")]
    pub precision: Option<f64>,
    #[serde(serialize_with = "na_as_string")]
    pub recall: Option<f64>,
    pub recovered: usize,
    pub related: usize,
    pub correct: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvaluationReport {
    pub per_requirement: Vec<RequirementScore>,
    /// Micro average over all (requirement, class) pairs.
    #[serde(serialize_with = "na_as_string")]
    pub precision: Option<f64>,
    #[serde(serialize_with = "na_as_string")]
    pub recall: Option<f64>,
}

fn fmt_metric(v: Option<f64>) -> String {
    v.map_or_else(|| "N/A".to_owned(), |x| format!("{x:.6}"))
}

impl EvaluationReport {
    pub fn score(&self, requirement: &str) -> Option<&RequirementScore> {
        self.per_requirement.iter().find(|s| s.requirement == requirement)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report always serializes");
        s.push('\n');
        s
    }

    /// One row per requirement plus a final `(micro)` row.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let err = |e: csv::Error| Error::Format {
            what: "report CSV",
            message: e.to_string(),
        };
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["requirement", "precision", "recall"]).map_err(err)?;
        for s in &self.per_requirement {
            w.write_record([s.requirement.clone(), fmt_metric(s.precision), fmt_metric(s.recall)])
                .map_err(err)?;
        }
        w.write_record(["(micro)".to_owned(), fmt_metric(self.precision), fmt_metric(self.recall)])
            .map_err(err)?;
        w.flush().map_err(|e| Error::io("<csv>", e))?;
        Ok(())
    }
}

/// Scores every requirement of `tls`; each must appear in `gold`.
pub fn evaluate(tls: &TraceLinkSet, gold: &GoldLinks) -> Result<EvaluationReport> {
    let mut per_requirement = Vec::with_capacity(tls.links.len());
    let (mut correct, mut recovered_total, mut related_total) = (0, 0, 0);
    for (req, classes) in &tls.links {
        let related = gold
            .related
            .get(req)
            .ok_or_else(|| Error::Config(format!("gold links have no entry for requirement '{req}'")))?;
        let recovered: BTreeSet<String> = classes.iter().cloned().collect();
        let hit = related.intersection(&recovered).count();
        correct += hit;
        recovered_total += recovered.len();
        related_total += related.len();
        per_requirement.push(RequirementScore {
            requirement: req.clone(),
            precision: precision(related, &recovered),
            recall: recall(related, &recovered),
            recovered: recovered.len(),
            related: related.len(),
            correct: hit,
        });
    }
    Ok(EvaluationReport {
        per_requirement,
        precision: ratio(correct, recovered_total),
        recall: ratio(correct, related_total),
    })
}
