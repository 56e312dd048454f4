//! Code-facts XML interchange.
//!
//! ```xml
//! <codefacts provenance="...">
//!   <package name="a.b">
//!     <class name="C" superclass="S">
//!       <comment kind="class">...</comment>
//!       <attribute name="x" type="int"/>
//!       <method name="m">
//!         <param name="p" type="T"/>
//!         <local name="l" type="T"/>
//!         <access name="x"/>
//!         <invoke name="f"/>
//!         <comment kind="method">...</comment>
//!       </method>
//!     </class>
//!   </package>
//! </codefacts>
//! ```
//!
//! The writer is canonical: fixed element order inside each parent, two-space
//! indentation, UTF-8, trailing newline.

use std::fmt::Write as _;

use roxmltree::{Document, Node, ParsingOptions};

use super::{
    AttributeFact, ClassFact, CodeFacts, CommentFact, CommentKind, MethodFact, PackageFact,
    Variable,
};
use crate::error::{Error, Result};

pub fn load_facts_xml(bytes: &[u8]) -> Result<CodeFacts> {
    let text = std::str::from_utf8(bytes).map_err(|e| {
        let line = bytes[..e.valid_up_to()].iter().filter(|&&b| b == b'\n').count() + 1;
        Error::Xml {
            line: line as u32,
            message: format!("invalid UTF-8: {e}"),
        }
    })?;
    let opts = ParsingOptions {
        allow_dtd: false,
        ..Default::default()
    };
    let doc = Document::parse_with_options(text, opts).map_err(|e| Error::Xml {
        line: e.pos().row,
        message: e.to_string(),
    })?;

    let root = doc.root_element();
    if root.tag_name().name() != "codefacts" {
        return Err(schema(root, "root element must be <codefacts>"));
    }
    check_attributes(root, &["provenance"])?;
    let mut facts = CodeFacts::new(root.attribute("provenance").unwrap_or_default());
    for child in element_children(root)? {
        match child.tag_name().name() {
            "package" => facts.packages.push(read_package(child)?),
            _ => return Err(unknown(child)),
        }
    }
    facts.validate()?;
    Ok(facts)
}

fn read_package(node: Node) -> Result<PackageFact> {
    check_attributes(node, &["name"])?;
    let mut package = PackageFact {
        name: required(node, "name")?,
        classes: Vec::new(),
    };
    for child in element_children(node)? {
        match child.tag_name().name() {
            "class" => package.classes.push(read_class(child)?),
            _ => return Err(unknown(child)),
        }
    }
    Ok(package)
}

fn read_class(node: Node) -> Result<ClassFact> {
    check_attributes(node, &["name", "superclass"])?;
    let mut class = ClassFact {
        name: required(node, "name")?,
        superclass: node.attribute("superclass").map(str::to_owned),
        ..Default::default()
    };
    for child in element_children(node)? {
        match child.tag_name().name() {
            "attribute" => {
                check_attributes(child, &["name", "type"])?;
                class.attributes.push(AttributeFact {
                    name: required(child, "name")?,
                    declared_type: required(child, "type")?,
                });
            }
            "method" => class.methods.push(read_method(child)?),
            "comment" => class.comments.push(read_comment(child, CommentKind::Class)?),
            _ => return Err(unknown(child)),
        }
    }
    Ok(class)
}

fn read_method(node: Node) -> Result<MethodFact> {
    check_attributes(node, &["name"])?;
    let mut method = MethodFact {
        name: required(node, "name")?,
        ..Default::default()
    };
    for child in element_children(node)? {
        match child.tag_name().name() {
            "param" => method.parameters.push(read_variable(child)?),
            "local" => method.local_variables.push(read_variable(child)?),
            "access" => {
                check_attributes(child, &["name"])?;
                method.attribute_accesses.push(required(child, "name")?);
            }
            "invoke" => {
                check_attributes(child, &["name"])?;
                method.method_invocations.push(required(child, "name")?);
            }
            "comment" => method.comments.push(read_comment(child, CommentKind::Method)?),
            _ => return Err(unknown(child)),
        }
    }
    Ok(method)
}

fn read_variable(node: Node) -> Result<Variable> {
    check_attributes(node, &["name", "type"])?;
    Ok(Variable {
        name: required(node, "name")?,
        declared_type: required(node, "type")?,
    })
}

fn read_comment(node: Node, position: CommentKind) -> Result<CommentFact> {
    check_attributes(node, &["kind"])?;
    if let Some(kind) = node.attribute("kind") {
        if kind != position.as_str() {
            return Err(schema(
                node,
                format!("kind=\"{kind}\" not allowed at {} level", position.as_str()),
            ));
        }
    }
    let mut text = String::new();
    for child in node.children() {
        if child.is_element() {
            return Err(schema(node, "comments hold text only"));
        }
        if let Some(t) = child.text() {
            text.push_str(t);
        }
    }
    Ok(CommentFact {
        text,
        kind: position,
    })
}

/// Element children of `node`; non-whitespace text outside `<comment>` is a
/// schema violation.
fn element_children<'a, 'i>(node: Node<'a, 'i>) -> Result<Vec<Node<'a, 'i>>> {
    let mut out = Vec::new();
    for child in node.children() {
        if child.is_element() {
            out.push(child);
        } else if child.is_text() && !child.text().unwrap_or_default().trim().is_empty() {
            return Err(schema(node, "unexpected text content"));
        }
    }
    Ok(out)
}

fn check_attributes(node: Node, allowed: &[&str]) -> Result<()> {
    for attr in node.attributes() {
        if !allowed.contains(&attr.name()) {
            return Err(schema(node, format!("unknown attribute `{}`", attr.name())));
        }
    }
    Ok(())
}

fn required(node: Node, attr: &str) -> Result<String> {
    node.attribute(attr)
        .map(str::to_owned)
        .ok_or_else(|| schema(node, format!("missing `{attr}` attribute")))
}

fn unknown(node: Node) -> Error {
    let line = node.document().text_pos_at(node.range().start).row;
    Error::Schema {
        element: node.tag_name().name().to_owned(),
        message: format!("unknown element at line {line}"),
    }
}

fn schema(node: Node, message: impl Into<String>) -> Error {
    Error::Schema {
        element: node.tag_name().name().to_owned(),
        message: message.into(),
    }
}

pub fn save_facts_xml(facts: &CodeFacts) -> Vec<u8> {
    let mut out = String::from("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = write!(out, "<codefacts provenance=\"{}\"", attr(&facts.provenance));
    if facts.packages.is_empty() {
        out.push_str("/>\n");
        return out.into_bytes();
    }
    out.push_str(">\n");
    for package in &facts.packages {
        let _ = write!(out, "  <package name=\"{}\"", attr(&package.name));
        if package.classes.is_empty() {
            out.push_str("/>\n");
            continue;
        }
        out.push_str(">\n");
        for class in &package.classes {
            write_class(&mut out, class);
        }
        out.push_str("  </package>\n");
    }
    out.push_str("</codefacts>\n");
    out.into_bytes()
}

fn write_class(out: &mut String, class: &ClassFact) {
    let _ = write!(out, "    <class name=\"{}\"", attr(&class.name));
    if let Some(sup) = &class.superclass {
        let _ = write!(out, " superclass=\"{}\"", attr(sup));
    }
    if class.comments.is_empty() && class.attributes.is_empty() && class.methods.is_empty() {
        out.push_str("/>\n");
        return;
    }
    out.push_str(">\n");
    for c in &class.comments {
        write_comment(out, 6, c);
    }
    for a in &class.attributes {
        let _ = writeln!(
            out,
            "      <attribute name=\"{}\" type=\"{}\"/>",
            attr(&a.name),
            attr(&a.declared_type)
        );
    }
    for m in &class.methods {
        write_method(out, m);
    }
    out.push_str("    </class>\n");
}

fn write_method(out: &mut String, m: &MethodFact) {
    let _ = write!(out, "      <method name=\"{}\"", attr(&m.name));
    let empty = m.parameters.is_empty()
        && m.local_variables.is_empty()
        && m.attribute_accesses.is_empty()
        && m.method_invocations.is_empty()
        && m.comments.is_empty();
    if empty {
        out.push_str("/>\n");
        return;
    }
    out.push_str(">\n");
    for p in &m.parameters {
        let _ = writeln!(
            out,
            "        <param name=\"{}\" type=\"{}\"/>",
            attr(&p.name),
            attr(&p.declared_type)
        );
    }
    for l in &m.local_variables {
        let _ = writeln!(
            out,
            "        <local name=\"{}\" type=\"{}\"/>",
            attr(&l.name),
            attr(&l.declared_type)
        );
    }
    for a in &m.attribute_accesses {
        let _ = writeln!(out, "        <access name=\"{}\"/>", attr(a));
    }
    for i in &m.method_invocations {
        let _ = writeln!(out, "        <invoke name=\"{}\"/>", attr(i));
    }
    for c in &m.comments {
        write_comment(out, 8, c);
    }
    out.push_str("      </method>\n");
}

fn write_comment(out: &mut String, indent: usize, c: &CommentFact) {
    let _ = writeln!(
        out,
        "{:indent$}<comment kind=\"{}\">{}</comment>",
        "",
        c.kind.as_str(),
        text(&c.text),
    );
}

fn text(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '\r' => out.push_str("&#13;"),
            _ => out.push(ch),
        }
    }
    out
}

fn attr(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\n' => out.push_str("&#10;"),
            '\r' => out.push_str("&#13;"),
            '\t' => out.push_str("&#9;"),
            _ => out.push(ch),
        }
    }
    out
}
