//! Static analysis front end for a subset of Java: package declarations,
//! top-level classes with `extends`, fields, methods and constructors,
//! parameters, locals, and comments. Everything else is skipped with a
//! warning diagnostic.

mod lexer;
mod parser;

use std::fmt;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use walkdir::WalkDir;

pub use parser::parse_compilation_unit;

use crate::error::{Error, Result};
use crate::model::{CodeFacts, PackageFact};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Severity {
    Warning,
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseDiagnostic {
    pub severity: Severity,
    pub file: PathBuf,
    /// 1-based.
    pub line: u32,
    pub message: String,
}

impl fmt::Display for ParseDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Warning => "warning",
            Severity::Error => "error",
        };
        write!(f, "{}:{}: {sev}: {}", self.file.display(), self.line, self.message)
    }
}

/// Parses every `.java` file under `root`. Files are parsed in parallel and
/// merged in sorted path order, so the result does not depend on scheduling.
pub fn parse_source_tree(root: &Path) -> Result<(CodeFacts, Vec<ParseDiagnostic>)> {
    let meta = std::fs::metadata(root).map_err(|e| Error::io(root, e))?;
    if !meta.is_dir() {
        return Err(Error::io(
            root,
            std::io::Error::new(std::io::ErrorKind::NotADirectory, "not a directory"),
        ));
    }
    let mut files = Vec::new();
    for entry in WalkDir::new(root).follow_links(true) {
        let entry = entry.map_err(|e| {
            let path = e.path().unwrap_or(root).to_path_buf();
            Error::io(path, e.into())
        })?;
        if entry.file_type().is_file() && entry.path().extension().is_some_and(|x| x == "java") {
            files.push(entry.into_path());
        }
    }
    files.sort();

    let units: Vec<(PathBuf, PackageFact, Vec<ParseDiagnostic>)> = files
        .par_iter()
        .map(|path| {
            let rel = path.strip_prefix(root).unwrap_or(path).to_path_buf();
            let (fragment, diags) = match std::fs::read(path) {
                Ok(bytes) => parse_compilation_unit(&String::from_utf8_lossy(&bytes), &rel),
                Err(e) => (
                    PackageFact::default(),
                    vec![ParseDiagnostic {
                        severity: Severity::Error,
                        file: rel.clone(),
                        line: 1,
                        message: format!("cannot read file: {e}"),
                    }],
                ),
            };
            (rel, fragment, diags)
        })
        .collect();

    let mut facts = CodeFacts::new(root.display().to_string());
    let mut diagnostics = Vec::new();
    for (file, fragment, diags) in units {
        let failed = diags.iter().any(|d| d.severity == Severity::Error);
        diagnostics.extend(diags);
        if failed {
            continue;
        }
        merge(&mut facts, fragment, file, &mut diagnostics);
    }
    Ok((facts, diagnostics))
}

fn merge(
    facts: &mut CodeFacts,
    fragment: PackageFact,
    file: PathBuf,
    diagnostics: &mut Vec<ParseDiagnostic>,
) {
    let idx = match facts.packages.iter().position(|p| p.name == fragment.name) {
        Some(i) => i,
        None => {
            facts.packages.push(PackageFact {
                name: fragment.name.clone(),
                classes: Vec::new(),
            });
            facts.packages.len() - 1
        }
    };
    let package = &mut facts.packages[idx];
    for class in fragment.classes {
        if package.classes.iter().any(|c| c.name == class.name) {
            diagnostics.push(ParseDiagnostic {
                severity: Severity::Warning,
                file: file.clone(),
                line: 1,
                message: format!(
                    "class `{}` already declared in package `{}`; skipped",
                    class.name, package.name
                ),
            });
            continue;
        }
        package.classes.push(class);
    }
}
