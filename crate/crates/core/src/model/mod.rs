//! Structural code facts: packages, classes, members, comments and the
//! relations (inheritance, attribute access, method invocation) that feed
//! class documents.

mod metrics;
mod xml;

use std::collections::HashSet;

pub use metrics::{compute_metrics, SoftwareMetrics};
pub use xml::{load_facts_xml, save_facts_xml};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CodeFacts {
    pub provenance: String,
    pub packages: Vec<PackageFact>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PackageFact {
    /// Dotted package name; the default package has an empty name.
    pub name: String,
    pub classes: Vec<ClassFact>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ClassFact {
    pub name: String,
    pub superclass: Option<String>,
    pub attributes: Vec<AttributeFact>,
    pub methods: Vec<MethodFact>,
    pub comments: Vec<CommentFact>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttributeFact {
    pub name: String,
    pub declared_type: String,
}

/// A named, typed slot inside a method: a parameter or a local variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Variable {
    pub name: String,
    pub declared_type: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MethodFact {
    pub name: String,
    pub parameters: Vec<Variable>,
    pub local_variables: Vec<Variable>,
    pub comments: Vec<CommentFact>,
    pub attribute_accesses: Vec<String>,
    pub method_invocations: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CommentKind {
    Class,
    Method,
}

impl CommentKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CommentKind::Class => "class",
            CommentKind::Method => "method",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommentFact {
    pub text: String,
    pub kind: CommentKind,
}

impl CodeFacts {
    pub fn new(provenance: impl Into<String>) -> Self {
        CodeFacts {
            provenance: provenance.into(),
            packages: Vec::new(),
        }
    }

    /// All classes in file order, paired with their package.
    pub fn classes(&self) -> impl Iterator<Item = (&PackageFact, &ClassFact)> {
        self.packages
            .iter()
            .flat_map(|p| p.classes.iter().map(move |c| (p, c)))
    }

    /// Checks every structural invariant. The first violation is reported
    /// as a schema error naming the element kind it concerns.
    pub fn validate(&self) -> Result<()> {
        let mut packages = HashSet::new();
        for package in &self.packages {
            if !packages.insert(package.name.as_str()) {
                return Err(schema("package", format!("duplicate package `{}`", package.name)));
            }
            let mut classes = HashSet::new();
            for class in &package.classes {
                if class.name.is_empty() {
                    return Err(schema("class", "empty class name"));
                }
                if !classes.insert(class.name.as_str()) {
                    return Err(schema(
                        "class",
                        format!("duplicate class `{}` in package `{}`", class.name, package.name),
                    ));
                }
                class.validate()?;
            }
        }
        Ok(())
    }
}

impl ClassFact {
    fn validate(&self) -> Result<()> {
        let mut attributes = HashSet::new();
        for attribute in &self.attributes {
            if attribute.name.is_empty() {
                return Err(schema("attribute", format!("empty attribute name in `{}`", self.name)));
            }
            if !attributes.insert(attribute.name.as_str()) {
                return Err(schema(
                    "attribute",
                    format!("duplicate attribute `{}` in `{}`", attribute.name, self.name),
                ));
            }
        }
        let mut signatures = HashSet::new();
        for method in &self.methods {
            if method.name.is_empty() {
                return Err(schema("method", format!("empty method name in `{}`", self.name)));
            }
            if !signatures.insert((method.name.as_str(), method.parameters.len())) {
                return Err(schema(
                    "method",
                    format!(
                        "duplicate method `{}/{}` in `{}`",
                        method.name,
                        method.parameters.len(),
                        self.name
                    ),
                ));
            }
            let mut params = HashSet::new();
            for param in &method.parameters {
                if param.name.is_empty() || !params.insert(param.name.as_str()) {
                    return Err(schema(
                        "param",
                        format!("empty or duplicate parameter `{}` in `{}`", param.name, method.name),
                    ));
                }
            }
            if method.local_variables.iter().any(|l| l.name.is_empty()) {
                return Err(schema("local", format!("empty local name in `{}`", method.name)));
            }
            if method
                .attribute_accesses
                .iter()
                .chain(&method.method_invocations)
                .any(String::is_empty)
            {
                return Err(schema("method", format!("empty relation target in `{}`", method.name)));
            }
            check_comments(&method.comments, CommentKind::Method)?;
        }
        check_comments(&self.comments, CommentKind::Class)
    }
}

fn check_comments(comments: &[CommentFact], kind: CommentKind) -> Result<()> {
    for comment in comments {
        if comment.text.trim().is_empty() {
            return Err(schema("comment", "comment text is empty"));
        }
        if comment.kind != kind {
            return Err(schema(
                "comment",
                format!("`{}` comment found at {} level", comment.kind.as_str(), kind.as_str()),
            ));
        }
    }
    Ok(())
}

fn schema(element: &str, message: impl Into<String>) -> Error {
    Error::Schema {
        element: element.to_owned(),
        message: message.into(),
    }
}
