//! Latent semantic indexing over raw term counts: vocabulary, term-document
//! and term-query matrices, rank-k SVD, query folding and the cosine
//! similarity matrix.

mod svd;

use std::collections::HashMap;
use std::io::Write;

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

pub use svd::{jacobi_svd, Svd};

use crate::error::{Error, Result};
use crate::text::TermBag;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Vocabulary {
    terms: Vec<String>,
    index: HashMap<String, usize>,
}

impl Vocabulary {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[String] {
        &self.terms
    }

    pub fn position(&self, term: &str) -> Option<usize> {
        self.index.get(term).copied()
    }
}

/// Sorted union of all terms in the document bags.
pub fn build_vocabulary(bags: &[TermBag]) -> Result<Vocabulary> {
    let mut terms: Vec<String> = bags
        .iter()
        .flat_map(|b| b.counts.keys().cloned())
        .collect();
    terms.sort();
    terms.dedup();
    if terms.is_empty() {
        return Err(Error::EmptyVocabulary);
    }
    let index = terms
        .iter()
        .enumerate()
        .map(|(i, t)| (t.clone(), i))
        .collect();
    Ok(Vocabulary { terms, index })
}

/// Term-by-column occurrence counts (`t × n`, row-major).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountMatrix {
    pub vocab: Vocabulary,
    /// Document names for a TDM, query names for a TQM.
    pub columns: Vec<String>,
    cells: Vec<u32>,
}

pub type TermDocumentMatrix = CountMatrix;
pub type TermQueryMatrix = CountMatrix;

impl CountMatrix {
    fn from_bags(bags: &[TermBag], vocab: &Vocabulary) -> Self {
        let cols = bags.len();
        let mut cells = vec![0u32; vocab.len() * cols];
        for (j, bag) in bags.iter().enumerate() {
            for (term, &n) in &bag.counts {
                if let Some(i) = vocab.position(term) {
                    cells[i * cols + j] = n as u32;
                }
            }
        }
        CountMatrix {
            vocab: vocab.clone(),
            columns: bags.iter().map(|b| b.name.clone()).collect(),
            cells,
        }
    }

    pub fn rows(&self) -> usize {
        self.vocab.len()
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn get(&self, row: usize, col: usize) -> u32 {
        self.cells[row * self.cols() + col]
    }

    /// Count of `term` in the column called `column`.
    pub fn cell(&self, term: &str, column: &str) -> Option<u32> {
        let i = self.vocab.position(term)?;
        let j = self.columns.iter().position(|c| c == column)?;
        Some(self.get(i, j))
    }

    pub fn column_vector(&self, col: usize) -> DVector<f64> {
        DVector::from_iterator(self.rows(), (0..self.rows()).map(|i| self.get(i, col) as f64))
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.rows(), self.cols(), |i, j| self.get(i, j) as f64)
    }

    /// CSV with the column names as header and one row per term.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let header = std::iter::once("term").chain(self.columns.iter().map(String::as_str));
        w.write_record(header).map_err(csv_error)?;
        for (i, term) in self.vocab.terms().iter().enumerate() {
            let mut record = vec![term.clone()];
            record.extend((0..self.cols()).map(|j| self.get(i, j).to_string()));
            w.write_record(&record).map_err(csv_error)?;
        }
        w.flush().map_err(|e| Error::io("<csv>", e))?;
        Ok(())
    }
}

/// Raw occurrence counts of the vocabulary terms in each class document.
pub fn build_tdm(bags: &[TermBag], vocab: &Vocabulary) -> TermDocumentMatrix {
    CountMatrix::from_bags(bags, vocab)
}

/// Raw occurrence counts of the document vocabulary in each query; terms
/// that occur only in queries are dropped.
pub fn build_tqm(queries: &[TermBag], vocab: &Vocabulary) -> TermQueryMatrix {
    CountMatrix::from_bags(queries, vocab)
}

/// Rank-k topic space of a term-document matrix.
#[derive(Debug, Clone)]
pub struct LsiSpace {
    pub k: usize,
    /// `t × k`, orthonormal columns.
    pub left_vectors: DMatrix<f64>,
    /// `k` values, strictly positive and nonincreasing.
    pub singular_values: DVector<f64>,
    /// `d × k`; row j holds the topic coordinates of document j.
    pub doc_coords: DMatrix<f64>,
    pub doc_names: Vec<String>,
}

pub fn truncated_svd(tdm: &TermDocumentMatrix, k: usize) -> Result<LsiSpace> {
    let mut space = truncated_svd_dense(&tdm.to_dense(), k)?;
    space.doc_names = tdm.columns.clone();
    Ok(space)
}

/// Truncated SVD of an arbitrary dense matrix. `k` must lie in
/// `1..=min(t, d)`; when it exceeds the numerical rank it is lowered to the
/// rank so every kept singular value is positive.
pub fn truncated_svd_dense(a: &DMatrix<f64>, k: usize) -> Result<LsiSpace> {
    let (t, d) = a.shape();
    let max_k = t.min(d);
    if k == 0 || k > max_k {
        return Err(Error::Parameter(format!(
            "topic count {k} outside 1..={max_k} for a {t}×{d} matrix"
        )));
    }
    if a.iter().all(|&x| x == 0.0) {
        return Err(Error::Degenerate("term-document matrix is all zero".into()));
    }
    let svd = jacobi_svd(a);
    let k = k.min(svd.rank());
    Ok(LsiSpace {
        k,
        left_vectors: svd.u.columns(0, k).into_owned(),
        singular_values: svd.s.rows(0, k).into_owned(),
        doc_coords: svd.v.columns(0, k).into_owned(),
        doc_names: (0..d).map(|j| j.to_string()).collect(),
    })
}

impl LsiSpace {
    /// `U_k · diag(s_k) · V_kᵀ`.
    pub fn reconstruct(&self) -> DMatrix<f64> {
        &self.left_vectors * DMatrix::from_diagonal(&self.singular_values) * self.doc_coords.transpose()
    }

    /// Document j in the singular-value-scaled topic space.
    fn scaled_doc(&self, j: usize) -> DVector<f64> {
        self.doc_coords.row(j).transpose().component_mul(&self.singular_values)
    }
}

/// Standard folding-in: `q̂ = qᵀ · U_k · diag(s_k)⁻¹`.
pub fn fold_in_query(q: &DVector<f64>, space: &LsiSpace) -> DVector<f64> {
    (space.left_vectors.transpose() * q).component_div(&space.singular_values)
}

fn cosine(a: &DVector<f64>, b: &DVector<f64>) -> f64 {
    let (na, nb) = (a.norm(), b.norm());
    if na == 0.0 || nb == 0.0 {
        return 0.0;
    }
    (a.dot(b) / (na * nb)).clamp(-1.0, 1.0)
}

/// Query (rows) by document (columns) cosine similarities.
#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityMatrix {
    pub query_names: Vec<String>,
    pub doc_names: Vec<String>,
    pub values: Vec<Vec<f64>>,
}

impl SimilarityMatrix {
    pub fn get(&self, query: &str, doc: &str) -> Option<f64> {
        let r = self.query_names.iter().position(|q| q == query)?;
        let c = self.doc_names.iter().position(|d| d == doc)?;
        Some(self.values[r][c])
    }

    /// Reads the layout written by [`SimilarityMatrix::write_csv`].
    pub fn read_csv<R: std::io::Read>(input: R) -> Result<Self> {
        let fmt = |message: String| Error::Format {
            what: "similarity CSV",
            message,
        };
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .from_reader(input);
        let mut records = rdr.records();
        let header = match records.next() {
            Some(h) => h.map_err(|e| fmt(e.to_string()))?,
            None => return Err(fmt("missing header row".into())),
        };
        let doc_names: Vec<String> = header.iter().skip(1).map(str::to_owned).collect();
        let (mut query_names, mut values) = (Vec::new(), Vec::new());
        for rec in records {
            let rec = rec.map_err(|e| fmt(e.to_string()))?;
            if rec.len() != doc_names.len() + 1 {
                return Err(fmt(format!("row '{}' has {} cells", &rec[0], rec.len())));
            }
            query_names.push(rec[0].to_owned());
            let row = rec
                .iter()
                .skip(1)
                .map(|c| c.parse::<f64>().map_err(|_| fmt(format!("'{c}' is not a number"))))
                .collect::<Result<Vec<f64>>>()?;
            values.push(row);
        }
        Ok(SimilarityMatrix {
            query_names,
            doc_names,
            values,
        })
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let header = std::iter::once("query").chain(self.doc_names.iter().map(String::as_str));
        w.write_record(header).map_err(csv_error)?;
        for (name, row) in self.query_names.iter().zip(&self.values) {
            let mut record = vec![name.clone()];
            record.extend(row.iter().map(|v| format!("{v:.9}")));
            w.write_record(&record).map_err(csv_error)?;
        }
        w.flush().map_err(|e| Error::io("<csv>", e))?;
        Ok(())
    }
}

/// Cosine between each folded query and each document, both taken in the
/// topic space scaled by the singular values. At full rank this is the
/// plain vector-space cosine for any query inside the span of the
/// documents.
pub fn cosine_similarity_matrix(space: &LsiSpace, tqm: &TermQueryMatrix) -> SimilarityMatrix {
    let docs: Vec<DVector<f64>> = (0..space.doc_coords.nrows())
        .map(|j| space.scaled_doc(j))
        .collect();
    let values = (0..tqm.cols())
        .into_par_iter()
        .map(|r| {
            let q = fold_in_query(&tqm.column_vector(r), space).component_mul(&space.singular_values);
            docs.iter().map(|d| cosine(&q, d)).collect()
        })
        .collect();
    SimilarityMatrix {
        query_names: tqm.columns.clone(),
        doc_names: space.doc_names.clone(),
        values,
    }
}

fn csv_error(e: csv::Error) -> Error {
    Error::Format {
        what: "CSV",
        message: e.to_string(),
    }
}
