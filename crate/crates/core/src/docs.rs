//! Class documents (one per class, built from code facts) and requirement
//! query documents (one per `.txt` file).

use std::collections::HashSet;
use std::path::Path;

use crate::error::{Error, Result};
use crate::model::{ClassFact, CodeFacts, PackageFact};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DocumentKind {
    Class,
    Requirement,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawDocument {
    pub name: String,
    pub text: String,
    pub kind: DocumentKind,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DocumentCorpus {
    pub documents: Vec<RawDocument>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct QueryCorpus {
    pub queries: Vec<RawDocument>,
}

impl DocumentCorpus {
    pub fn names(&self) -> Vec<String> {
        self.documents.iter().map(|d| d.name.clone()).collect()
    }
}

impl QueryCorpus {
    pub fn names(&self) -> Vec<String> {
        self.queries.iter().map(|d| d.name.clone()).collect()
    }
}

/// The raw entries of one class document, in document order: package,
/// class, superclass, attributes, methods, parameters, locals, accesses,
/// invocations, then class and method comments. Declared types are not
/// included.
pub fn class_document_entries<'a>(package: &'a PackageFact, class: &'a ClassFact) -> Vec<&'a str> {
    let mut out = Vec::new();
    if !package.name.is_empty() {
        out.push(package.name.as_str());
    }
    out.push(class.name.as_str());
    if let Some(sup) = &class.superclass {
        out.push(sup.as_str());
    }
    out.extend(class.attributes.iter().map(|a| a.name.as_str()));
    out.extend(class.methods.iter().map(|m| m.name.as_str()));
    for m in &class.methods {
        out.extend(m.parameters.iter().map(|p| p.name.as_str()));
    }
    for m in &class.methods {
        out.extend(m.local_variables.iter().map(|l| l.name.as_str()));
    }
    for m in &class.methods {
        out.extend(m.attribute_accesses.iter().map(String::as_str));
    }
    for m in &class.methods {
        out.extend(m.method_invocations.iter().map(String::as_str));
    }
    out.extend(class.comments.iter().map(|c| c.text.as_str()));
    for m in &class.methods {
        out.extend(m.comments.iter().map(|c| c.text.as_str()));
    }
    out
}

/// One document per class, named after the class. A class name that occurs
/// in more than one package is qualified with its package to keep names
/// unique.
pub fn build_class_documents(facts: &CodeFacts) -> DocumentCorpus {
    let mut seen = HashSet::new();
    let mut clashing = HashSet::new();
    for (_, class) in facts.classes() {
        if !seen.insert(class.name.as_str()) {
            clashing.insert(class.name.as_str());
        }
    }
    let documents = facts
        .classes()
        .map(|(package, class)| {
            let name = if clashing.contains(class.name.as_str()) && !package.name.is_empty() {
                format!("{}.{}", package.name, class.name)
            } else {
                class.name.clone()
            };
            RawDocument {
                name,
                text: class_document_entries(package, class).join("\n"),
                kind: DocumentKind::Class,
            }
        })
        .collect();
    DocumentCorpus { documents }
}

/// Reads every `.txt` file in `dir` (sorted by file name). The query name is
/// the file stem with underscores turned into spaces; the query text is the
/// name followed by the file contents.
pub fn load_requirement_documents(dir: &Path) -> Result<QueryCorpus> {
    let entries = std::fs::read_dir(dir).map_err(|e| Error::io(dir, e))?;
    let mut files = Vec::new();
    for entry in entries {
        let entry = entry.map_err(|e| Error::io(dir, e))?;
        let path = entry.path();
        if path.is_file() && path.extension().is_some_and(|x| x == "txt") {
            files.push(path);
        }
    }
    if files.is_empty() {
        return Err(Error::Config(format!(
            "no requirement documents (*.txt) in {}",
            dir.display()
        )));
    }
    files.sort();

    let mut names = HashSet::new();
    let mut queries = Vec::with_capacity(files.len());
    for path in files {
        let bytes = std::fs::read(&path).map_err(|e| Error::io(&path, e))?;
        let body = String::from_utf8(bytes).map_err(|e| {
            Error::io(
                &path,
                std::io::Error::new(std::io::ErrorKind::InvalidData, e.utf8_error()),
            )
        })?;
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().replace('_', " "))
            .unwrap_or_default();
        if !names.insert(name.clone()) {
            return Err(Error::Config(format!("duplicate requirement name `{name}`")));
        }
        let text = if body.trim().is_empty() {
            name.clone()
        } else {
            format!("{name}\n{}", body.trim_end())
        };
        queries.push(RawDocument {
            name,
            text,
            kind: DocumentKind::Requirement,
        });
    }
    Ok(QueryCorpus { queries })
}
