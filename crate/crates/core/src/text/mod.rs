//! Turns raw documents into term bags: noise removal, camel-case splitting,
//! lowercasing, stop-word filtering and stemming.

mod porter;
mod stopwords;

use std::collections::BTreeMap;

pub use porter::stem;
pub use stopwords::{StopWordList, REQUIRED_STOP_WORDS};

use crate::docs::RawDocument;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TermBag {
    pub name: String,
    pub counts: BTreeMap<String, usize>,
}

impl TermBag {
    pub fn count(&self, term: &str) -> usize {
        self.counts.get(term).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    /// Every occurrence of every term, space separated, in term order.
    pub fn to_text(&self) -> String {
        let mut words = Vec::with_capacity(self.total());
        for (term, &n) in &self.counts {
            words.extend(std::iter::repeat_n(term.as_str(), n));
        }
        words.join(" ")
    }
}

/// Replaces every character outside `[A-Za-z]` (digits included) with one
/// space.
pub fn strip_noise(text: &str) -> String {
    text.chars()
        .map(|c| if c.is_ascii_alphabetic() { c } else { ' ' })
        .collect()
}

/// Splits at lower-to-upper transitions, and before the last capital of an
/// upper-case run that is followed by a lower-case letter (`XMLFile` ->
/// `XML`, `File`).
pub fn split_camel_case(token: &str) -> Vec<String> {
    let chars: Vec<char> = token.chars().collect();
    let mut parts = Vec::new();
    let mut start = 0;
    for i in 1..chars.len() {
        let (prev, cur) = (chars[i - 1], chars[i]);
        let lower_upper = prev.is_lowercase() && cur.is_uppercase();
        let acronym_end = prev.is_uppercase()
            && cur.is_uppercase()
            && chars.get(i + 1).is_some_and(|c| c.is_lowercase());
        if lower_upper || acronym_end {
            parts.push(chars[start..i].iter().collect());
            start = i;
        }
    }
    if start < chars.len() {
        parts.push(chars[start..].iter().collect());
    }
    parts
}

/// Normalized terms of `text` in occurrence order.
pub fn terms(text: &str, stops: &StopWordList) -> Vec<String> {
    let cleaned = strip_noise(text);
    let mut out = Vec::new();
    for token in cleaned.split_whitespace() {
        for part in split_camel_case(token) {
            let lower = part.to_ascii_lowercase();
            if stops.contains(&lower) {
                continue;
            }
            let stemmed = stem(&lower);
            // a stem can coincide with a stop word ("doing" -> "do")
            if stops.contains(&stemmed) {
                continue;
            }
            out.push(stemmed);
        }
    }
    out
}

pub fn preprocess(doc: &RawDocument, stops: &StopWordList) -> TermBag {
    let mut counts = BTreeMap::new();
    for term in terms(&doc.text, stops) {
        *counts.entry(term).or_insert(0) += 1;
    }
    TermBag {
        name: doc.name.clone(),
        counts,
    }
}
