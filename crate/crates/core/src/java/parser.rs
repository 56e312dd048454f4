use std::collections::HashSet;
use std::path::{Path, PathBuf};

use super::lexer::{lex, Token, TokenKind};
use super::{ParseDiagnostic, Severity};
use crate::model::{
    AttributeFact, ClassFact, CommentFact, CommentKind, MethodFact, PackageFact, Variable,
};

const KEYWORDS: &[&str] = &[
    "abstract", "assert", "break", "case", "catch", "class", "const", "continue", "default", "do",
    "else", "enum", "extends", "final", "finally", "for", "goto", "if", "implements", "import",
    "instanceof", "interface", "native", "new", "package", "private", "protected", "public",
    "return", "static", "strictfp", "super", "switch", "synchronized", "this", "throw", "throws",
    "transient", "try", "volatile", "while", "true", "false", "null", "yield",
];

const PRIMITIVES: &[&str] = &[
    "boolean", "byte", "char", "short", "int", "long", "float", "double", "void",
];

const MODIFIERS: &[&str] = &[
    "public", "protected", "private", "static", "final", "abstract", "native", "synchronized",
    "transient", "volatile", "strictfp", "default", "sealed",
];

fn is_keyword(word: &str) -> bool {
    KEYWORDS.contains(&word)
}

fn is_type_start(tok: &Token) -> bool {
    tok.is_ident() && (!is_keyword(&tok.text) || PRIMITIVES.contains(&tok.text.as_str()))
}

fn is_name(tok: &Token) -> bool {
    tok.is_ident() && !is_keyword(&tok.text) && !PRIMITIVES.contains(&tok.text.as_str())
}

/// Parses one source file into the classes it declares. Unsupported
/// constructs are skipped with a warning; a file that cannot be tokenized
/// yields a single error diagnostic and no classes.
pub fn parse_compilation_unit(text: &str, file: &Path) -> (PackageFact, Vec<ParseDiagnostic>) {
    let tokens = match lex(text) {
        Ok(t) => t,
        Err(e) => {
            let diag = ParseDiagnostic {
                severity: Severity::Error,
                file: file.to_path_buf(),
                line: e.line.max(1),
                message: e.message,
            };
            return (PackageFact::default(), vec![diag]);
        }
    };

    let mut code = Vec::with_capacity(tokens.len());
    let mut comments = Vec::new();
    for tok in tokens {
        if tok.kind == TokenKind::Comment {
            comments.push((code.len(), tok));
        } else {
            code.push(tok);
        }
    }

    let mut parser = UnitParser {
        code: &code,
        pos: 0,
        file: file.to_path_buf(),
        diags: Vec::new(),
    };
    let (package_name, mut classes) = parser.parse_unit();
    for class in &mut classes {
        parser.scan_bodies(class);
    }
    parser.attach_comments(&mut classes, comments);

    let package = PackageFact {
        name: package_name,
        classes: classes.into_iter().map(|c| c.fact).collect(),
    };
    (package, parser.diags)
}

struct RawClass {
    fact: ClassFact,
    body_open: usize,
    body_close: usize,
    /// Parallel to `fact.methods`.
    methods: Vec<RawMethod>,
}

struct RawMethod {
    start: usize,
    last: usize,
    body: Option<(usize, usize)>,
}

struct UnitParser<'t> {
    code: &'t [Token],
    pos: usize,
    file: PathBuf,
    diags: Vec<ParseDiagnostic>,
}

impl<'t> UnitParser<'t> {
    fn peek(&self) -> Option<&'t Token> {
        self.code.get(self.pos)
    }

    fn peek_at(&self, offset: usize) -> Option<&'t Token> {
        self.code.get(self.pos + offset)
    }

    fn at(&self, punct: &str) -> bool {
        self.peek().is_some_and(|t| t.is(punct))
    }

    fn at_word(&self, word: &str) -> bool {
        self.peek().is_some_and(|t| t.is_word(word))
    }

    fn line(&self) -> u32 {
        self.peek()
            .or_else(|| self.code.last())
            .map_or(1, |t| t.line)
    }

    fn warn(&mut self, line: u32, message: impl Into<String>) {
        self.diags.push(ParseDiagnostic {
            severity: Severity::Warning,
            file: self.file.clone(),
            line: line.max(1),
            message: message.into(),
        });
    }

    /// Advances past the bracketed group starting at the current token.
    fn skip_group(&mut self, open: &str, close: &str) {
        let mut depth = 0usize;
        while let Some(t) = self.peek() {
            self.pos += 1;
            if t.is(open) {
                depth += 1;
            } else if t.is(close) {
                depth = depth.saturating_sub(1);
                if depth == 0 {
                    return;
                }
            }
        }
    }

    /// Skips to the end of the current declaration: through a `;` at depth
    /// zero, or through a `{...}` block.
    fn skip_declaration(&mut self) {
        let mut depth = 0i32;
        while let Some(t) = self.peek() {
            if depth == 0 && t.is("{") {
                self.skip_group("{", "}");
                return;
            }
            if depth == 0 && (t.is("}")) {
                return;
            }
            self.pos += 1;
            if t.is("(") || t.is("[") {
                depth += 1;
            } else if t.is(")") || t.is("]") {
                depth -= 1;
            } else if depth <= 0 && t.is(";") {
                return;
            }
        }
    }

    fn skip_annotation(&mut self) {
        let line = self.line();
        self.pos += 1; // '@'
        let mut name = String::new();
        while let Some(t) = self.peek() {
            if !t.is_ident() {
                break;
            }
            name.push_str(&t.text);
            self.pos += 1;
            if self.at(".") && self.peek_at(1).is_some_and(Token::is_ident) {
                name.push('.');
                self.pos += 1;
            } else {
                break;
            }
        }
        if self.at("(") {
            self.skip_group("(", ")");
        }
        self.warn(line, format!("annotation @{name} skipped"));
    }

    fn skip_modifiers(&mut self) {
        while self
            .peek()
            .is_some_and(|t| t.is_ident() && MODIFIERS.contains(&t.text.as_str()))
        {
            // `non-sealed`
            self.pos += 1;
        }
        if self.at_word("non") && self.peek_at(1).is_some_and(|t| t.is("-")) {
            self.pos += 3;
        }
    }

    fn parse_dotted(&mut self) -> String {
        let mut name = String::new();
        while let Some(t) = self.peek() {
            if t.is_ident() && (name.is_empty() || name.ends_with('.')) {
                name.push_str(&t.text);
            } else if t.is(".") && !name.is_empty() && !name.ends_with('.') {
                name.push('.');
            } else {
                break;
            }
            self.pos += 1;
        }
        name
    }

    /// Parses a type reference. Generic arguments are consumed with a
    /// warning and kept in the returned text.
    fn parse_type(&mut self) -> Option<String> {
        if !self.peek().is_some_and(is_type_start) {
            return None;
        }
        let mut ty = self.parse_dotted();
        if self.at("<") {
            let line = self.line();
            let start = self.pos;
            self.skip_group("<", ">");
            for t in &self.code[start..self.pos] {
                ty.push_str(&t.text);
            }
            self.warn(line, format!("generic type `{ty}` not analysed"));
        }
        loop {
            if self.at("[") && self.peek_at(1).is_some_and(|t| t.is("]")) {
                ty.push_str("[]");
                self.pos += 2;
            } else if self.at("...") {
                ty.push_str("...");
                self.pos += 1;
            } else {
                break;
            }
        }
        Some(ty)
    }

    fn parse_unit(&mut self) -> (String, Vec<RawClass>) {
        let mut package = String::new();
        let mut classes: Vec<RawClass> = Vec::new();
        while let Some(t) = self.peek() {
            if t.is_word("package") {
                let line = t.line;
                self.pos += 1;
                let name = self.parse_dotted();
                if !package.is_empty() {
                    self.warn(line, "second package declaration ignored");
                } else {
                    package = name;
                }
                self.skip_declaration();
            } else if t.is_word("import") {
                self.skip_declaration();
            } else if t.is(";") {
                self.pos += 1;
            } else if t.is("@") && self.peek_at(1).is_some_and(|n| n.is_word("interface")) {
                let line = t.line;
                self.skip_type_declaration();
                self.warn(line, "annotation type skipped");
            } else if t.is("@") {
                self.skip_annotation();
            } else if t.is_ident() && MODIFIERS.contains(&t.text.as_str()) || t.is_word("non") {
                self.skip_modifiers();
            } else if t.is_word("class") {
                if let Some(class) = self.parse_class() {
                    if classes.iter().any(|c| c.fact.name == class.fact.name) {
                        self.warn(t.line, format!("duplicate class `{}` skipped", class.fact.name));
                    } else {
                        classes.push(class);
                    }
                }
            } else if t.is_word("interface") || t.is_word("enum") || t.is_word("record") {
                let line = t.line;
                let kind = t.text.clone();
                self.skip_type_declaration();
                self.warn(line, format!("{kind} declaration skipped"));
            } else {
                let line = t.line;
                let text = t.text.clone();
                self.pos += 1;
                self.skip_declaration();
                self.warn(line, format!("unrecognized top-level construct at `{text}` skipped"));
            }
        }
        (package, classes)
    }

    fn skip_type_declaration(&mut self) {
        while let Some(t) = self.peek() {
            if t.is("{") {
                self.skip_group("{", "}");
                return;
            }
            self.pos += 1;
        }
    }

    fn parse_class(&mut self) -> Option<RawClass> {
        let line = self.line();
        self.pos += 1; // 'class'
        let Some(name_tok) = self.peek().filter(|t| is_name(t)) else {
            self.warn(line, "class declaration without a name skipped");
            self.skip_type_declaration();
            return None;
        };
        self.pos += 1;
        let mut fact = ClassFact {
            name: name_tok.text.clone(),
            ..Default::default()
        };
        if self.at("<") {
            let l = self.line();
            self.skip_group("<", ">");
            self.warn(l, format!("type parameters of `{}` skipped", fact.name));
        }
        while let Some(t) = self.peek() {
            if t.is("{") {
                break;
            }
            if t.is_word("extends") {
                self.pos += 1;
                fact.superclass = self.parse_type().map(|ty| match ty.find('<') {
                    Some(i) => ty[..i].to_owned(),
                    None => ty,
                });
            } else {
                // implements / permits lists
                self.pos += 1;
            }
        }
        if self.peek().is_none() {
            self.warn(line, format!("class `{}` has no body", fact.name));
            return None;
        }
        let body_open = self.pos;
        self.pos += 1;
        let mut methods = Vec::new();
        let mut fields = HashSet::new();
        loop {
            let Some(t) = self.peek() else {
                self.warn(line, format!("class `{}` is not closed", fact.name));
                break;
            };
            if t.is("}") {
                break;
            }
            self.parse_member(&mut fact, &mut methods, &mut fields);
        }
        let body_close = self.pos.min(self.code.len().saturating_sub(1));
        self.pos += 1;
        Some(RawClass {
            fact,
            body_open,
            body_close,
            methods,
        })
    }

    fn parse_member(
        &mut self,
        class: &mut ClassFact,
        methods: &mut Vec<RawMethod>,
        fields: &mut HashSet<String>,
    ) {
        let start = self.pos;
        let line = self.line();
        loop {
            if self.at("@") {
                if self.peek_at(1).is_some_and(|t| t.is_word("interface")) {
                    self.skip_type_declaration();
                    self.warn(line, "nested annotation type skipped");
                    return;
                }
                self.skip_annotation();
            } else if self
                .peek()
                .is_some_and(|t| t.is_ident() && MODIFIERS.contains(&t.text.as_str()))
                || self.at_word("non")
            {
                self.skip_modifiers();
            } else {
                break;
            }
        }
        let Some(t) = self.peek() else { return };

        if t.is(";") {
            self.pos += 1;
            return;
        }
        if t.is("{") {
            self.skip_group("{", "}");
            self.warn(line, "initializer block skipped");
            return;
        }
        if t.is_word("class") || t.is_word("interface") || t.is_word("enum") || t.is_word("record")
        {
            let kind = t.text.clone();
            self.skip_type_declaration();
            self.warn(line, format!("inner {kind} skipped"));
            return;
        }
        if t.is("<") {
            self.skip_group("<", ">");
            self.warn(line, "generic method type parameters skipped");
        }

        // constructor
        if self.peek().is_some_and(|t| t.text == class.name)
            && self.peek_at(1).is_some_and(|t| t.is("("))
        {
            let name = class.name.clone();
            self.pos += 1;
            self.parse_method(name, start, class, methods);
            return;
        }

        let Some(ty) = self.parse_type() else {
            let text = self.peek().map(|t| t.text.clone()).unwrap_or_default();
            self.skip_declaration();
            if self.pos == start {
                self.pos += 1;
            }
            self.warn(line, format!("unrecognized member at `{text}` skipped"));
            return;
        };
        let Some(name_tok) = self.peek().filter(|t| is_name(t)) else {
            self.skip_declaration();
            self.warn(line, format!("unrecognized member after type `{ty}` skipped"));
            return;
        };
        self.pos += 1;

        if self.at("(") {
            self.parse_method(name_tok.text.clone(), start, class, methods);
            return;
        }

        // field declarators: name [= init] {, name [= init]} ;
        let mut name = name_tok;
        loop {
            let mut field_ty = ty.clone();
            while self.at("[") && self.peek_at(1).is_some_and(|t| t.is("]")) {
                field_ty.push_str("[]");
                self.pos += 2;
            }
            if fields.insert(name.text.clone()) {
                class.attributes.push(AttributeFact {
                    name: name.text.clone(),
                    declared_type: field_ty,
                });
            } else {
                self.warn(name.line, format!("duplicate field `{}` skipped", name.text));
            }
            if self.at("=") {
                self.skip_expression();
            }
            if self.at(",") && self.peek_at(1).is_some_and(is_name) {
                name = self.peek_at(1).expect("checked");
                self.pos += 2;
                continue;
            }
            if self.at(";") {
                self.pos += 1;
            } else {
                self.skip_declaration();
                self.warn(line, "malformed field declaration");
            }
            return;
        }
    }

    /// Skips an initializer expression up to a `,` or `;` at depth zero.
    fn skip_expression(&mut self) {
        let mut depth = 0i32;
        while let Some(t) = self.peek() {
            if depth == 0 && (t.is(",") || t.is(";")) {
                return;
            }
            if t.is("(") || t.is("[") || t.is("{") {
                depth += 1;
            } else if t.is(")") || t.is("]") || t.is("}") {
                if depth == 0 {
                    return;
                }
                depth -= 1;
            }
            self.pos += 1;
        }
    }

    fn parse_method(
        &mut self,
        name: String,
        start: usize,
        class: &mut ClassFact,
        methods: &mut Vec<RawMethod>,
    ) {
        let line = self.line();
        let mut method = MethodFact {
            name,
            ..Default::default()
        };
        self.pos += 1; // '('
        let mut seen = HashSet::new();
        while let Some(t) = self.peek() {
            if t.is(")") {
                self.pos += 1;
                break;
            }
            if t.is(",") {
                self.pos += 1;
                continue;
            }
            if t.is("@") {
                self.skip_annotation();
                continue;
            }
            if t.is_word("final") {
                self.pos += 1;
                continue;
            }
            let before = self.pos;
            match (self.parse_type(), self.peek().filter(|t| is_name(t))) {
                (Some(ty), Some(pname)) => {
                    self.pos += 1;
                    let mut ty = ty;
                    while self.at("[") && self.peek_at(1).is_some_and(|t| t.is("]")) {
                        ty.push_str("[]");
                        self.pos += 2;
                    }
                    if seen.insert(pname.text.clone()) {
                        method.parameters.push(Variable {
                            name: pname.text.clone(),
                            declared_type: ty,
                        });
                    }
                }
                _ => {
                    if self.pos == before {
                        self.pos += 1;
                    }
                    self.warn(line, format!("unrecognized parameter in `{}`", method.name));
                }
            }
        }
        while self.at("[") {
            self.pos += 2;
        }
        if self.at_word("throws") {
            while let Some(t) = self.peek() {
                if t.is("{") || t.is(";") {
                    break;
                }
                self.pos += 1;
            }
        }
        let body = if self.at("{") {
            let open = self.pos;
            self.skip_group("{", "}");
            Some((open, self.pos - 1))
        } else {
            if self.at(";") {
                self.pos += 1;
            } else {
                self.warn(line, format!("method `{}` has no body", method.name));
            }
            None
        };
        let last = self.pos.saturating_sub(1);

        let arity = method.parameters.len();
        if class
            .methods
            .iter()
            .any(|m| m.name == method.name && m.parameters.len() == arity)
        {
            self.warn(
                line,
                format!("overload `{}/{}` with the same arity skipped", method.name, arity),
            );
            return;
        }
        class.methods.push(method);
        methods.push(RawMethod { start, last, body });
    }

    /// Fills locals, accesses and invocations from each method body.
    fn scan_bodies(&mut self, class: &mut RawClass) {
        let fields: HashSet<&str> = class
            .fact
            .attributes
            .iter()
            .map(|a| a.name.as_str())
            .collect();
        for (raw, method) in class.methods.iter().zip(class.fact.methods.iter_mut()) {
            let Some((open, close)) = raw.body else {
                continue;
            };
            let mut scan = BodyScan {
                code: self.code,
                fields: &fields,
                method,
                declared: HashSet::new(),
                warned_lambda: false,
                warnings: Vec::new(),
            };
            scan.run(open, close);
            for (line, msg) in scan.warnings {
                self.warn(line, msg);
            }
        }
    }

    fn attach_comments(&mut self, classes: &mut [RawClass], comments: Vec<(usize, Token)>) {
        for (pos, tok) in comments {
            let text = comment_text(&tok.text);
            if text.is_empty() {
                continue;
            }
            let Some(ci) = classes.iter().position(|c| pos <= c.body_close) else {
                self.warn(tok.line, "comment not attached to any class");
                continue;
            };
            let class = &mut classes[ci];
            if pos <= class.body_open {
                class.fact.comments.push(CommentFact {
                    text,
                    kind: CommentKind::Class,
                });
                continue;
            }
            let target = class
                .methods
                .iter()
                .position(|m| pos > m.start && pos <= m.last)
                .or_else(|| class.methods.iter().position(|m| m.start >= pos));
            match target {
                Some(mi) => class.fact.methods[mi].comments.push(CommentFact {
                    text,
                    kind: CommentKind::Method,
                }),
                None => class.fact.comments.push(CommentFact {
                    text,
                    kind: CommentKind::Class,
                }),
            }
        }
    }
}

/// Comment body with javadoc stars and surrounding blanks removed; lines
/// joined by single spaces.
fn comment_text(raw: &str) -> String {
    raw.lines()
        .map(|l| l.trim().trim_start_matches('*').trim())
        .filter(|l| !l.is_empty())
        .collect::<Vec<_>>()
        .join(" ")
}

struct BodyScan<'a, 't> {
    code: &'t [Token],
    fields: &'a HashSet<&'a str>,
    method: &'a mut MethodFact,
    declared: HashSet<usize>,
    warned_lambda: bool,
    warnings: Vec<(u32, String)>,
}

impl BodyScan<'_, '_> {
    fn run(&mut self, open: usize, close: usize) {
        let code = self.code;
        let mut stmt_start = true;
        let mut start_at = None;
        let mut j = open + 1;
        while j < close {
            if stmt_start || start_at == Some(j) {
                self.try_local(j, close);
            }
            stmt_start = false;
            let t = &code[j];
            if t.is("{") || t.is("}") || t.is(";") || t.is(":") {
                stmt_start = true;
            } else if t.is("->") && !self.warned_lambda {
                self.warned_lambda = true;
                self.warnings.push((
                    t.line,
                    format!("lambda in `{}` not analysed", self.method.name),
                ));
            } else if t.is_word("for") && code.get(j + 1).is_some_and(|n| n.is("(")) {
                start_at = Some(j + 2);
            } else if t.is_ident() && !self.declared.contains(&j) {
                let next_is_call = code.get(j + 1).is_some_and(|n| n.is("("));
                let prev = j.checked_sub(1).map(|p| &code[p]);
                let after_dot = prev.is_some_and(|p| p.is("."));
                if next_is_call {
                    if !is_keyword(&t.text) && !PRIMITIVES.contains(&t.text.as_str()) {
                        self.method.method_invocations.push(t.text.clone());
                    }
                } else if !is_keyword(&t.text) {
                    let via_this = after_dot && j >= 2 && code[j - 2].is_word("this");
                    if via_this || (!after_dot && self.fields.contains(t.text.as_str())) {
                        self.method.attribute_accesses.push(t.text.clone());
                    }
                }
            }
            j += 1;
        }
    }

    /// Recognizes `Type name [= ...] {, name [= ...]}` at a statement start.
    fn try_local(&mut self, mut j: usize, close: usize) {
        let code = self.code;
        while j < close && code[j].is_word("final") {
            j += 1;
        }
        if j >= close || !is_type_start(&code[j]) {
            return;
        }
        let type_start = j;
        let mut ty = String::new();
        loop {
            ty.push_str(&code[j].text);
            j += 1;
            if j + 1 < close && code[j].is(".") && code[j + 1].is_ident() {
                ty.push('.');
                j += 1;
                continue;
            }
            break;
        }
        if j < close && code[j].is("<") {
            // `a < b` is never a statement, so a `<` here opens type arguments
            // only when a declarator follows the matching `>`.
            let mut depth = 0;
            let mut k = j;
            while k < close {
                if code[k].is("<") {
                    depth += 1;
                } else if code[k].is(">") {
                    depth -= 1;
                    if depth == 0 {
                        break;
                    }
                } else if !(code[k].is_ident() || code[k].is(",") || code[k].is(".") || code[k].is("?") || code[k].is("[") || code[k].is("]")) {
                    return;
                }
                k += 1;
            }
            if k + 1 < close && is_name(&code[k + 1]) {
                self.warnings.push((
                    code[type_start].line,
                    format!("generic local declaration in `{}` skipped", self.method.name),
                ));
            }
            return;
        }
        while j + 1 < close && code[j].is("[") && code[j + 1].is("]") {
            ty.push_str("[]");
            j += 2;
        }
        if j + 1 >= close || !is_name(&code[j]) {
            return;
        }
        let terminator = |t: &Token| t.is("=") || t.is(";") || t.is(",") || t.is(":") || t.is("[");
        if !terminator(&code[j + 1]) {
            return;
        }
        if type_start > 0 && code[type_start - 1].is(".") {
            return;
        }
        self.declare(j, &ty);

        // further declarators
        let mut depth = 0i32;
        let mut k = j + 1;
        while k < close {
            let t = &code[k];
            if t.is("(") || t.is("[") || t.is("{") {
                depth += 1;
            } else if t.is(")") || t.is("]") || t.is("}") {
                depth -= 1;
                if depth < 0 {
                    return;
                }
            } else if depth == 0 && (t.is(";") || t.is(":")) {
                return;
            } else if depth == 0
                && t.is(",")
                && k + 2 < close
                && is_name(&code[k + 1])
                && terminator(&code[k + 2])
            {
                self.declare(k + 1, &ty);
                k += 1;
            }
            k += 1;
        }
    }

    fn declare(&mut self, idx: usize, ty: &str) {
        if self.declared.insert(idx) {
            self.method.local_variables.push(Variable {
                name: self.code[idx].text.clone(),
                declared_type: ty.to_owned(),
            });
        }
    }
}
