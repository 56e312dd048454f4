//! Tokenizer for the recognized Java subset. Comments are kept as tokens so
//! the parser can attach them to the surrounding declarations.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum TokenKind {
    Ident,
    Number,
    Str,
    Char,
    Punct,
    Comment,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Token {
    pub kind: TokenKind,
    /// Source text, or the comment body without its delimiters.
    pub text: String,
    pub line: u32,
}

impl Token {
    pub fn is(&self, punct: &str) -> bool {
        self.kind == TokenKind::Punct && self.text == punct
    }

    pub fn is_ident(&self) -> bool {
        self.kind == TokenKind::Ident
    }

    pub fn is_word(&self, word: &str) -> bool {
        self.kind == TokenKind::Ident && self.text == word
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct LexError {
    pub line: u32,
    pub message: String,
}

const MULTI_PUNCT: [&str; 13] = [
    "...", "->", "::", "==", "!=", "<=", ">=", "&&", "||", "++", "--", "+=", "-=",
];

pub(crate) fn lex(src: &str) -> Result<Vec<Token>, LexError> {
    let chars: Vec<char> = src.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    let mut line = 1u32;

    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            line += 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start_line = line;

        if c == '/' && chars.get(i + 1) == Some(&'/') {
            let start = i + 2;
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            tokens.push(Token {
                kind: TokenKind::Comment,
                text: chars[start..i].iter().collect(),
                line: start_line,
            });
            continue;
        }
        if c == '/' && chars.get(i + 1) == Some(&'*') {
            let start = i + 2;
            i += 2;
            loop {
                if i + 1 >= chars.len() {
                    return Err(LexError {
                        line: start_line,
                        message: "unterminated block comment".into(),
                    });
                }
                if chars[i] == '*' && chars[i + 1] == '/' {
                    break;
                }
                if chars[i] == '\n' {
                    line += 1;
                }
                i += 1;
            }
            tokens.push(Token {
                kind: TokenKind::Comment,
                text: chars[start..i].iter().collect(),
                line: start_line,
            });
            i += 2;
            continue;
        }
        if c == '"' {
            let text_block = chars.get(i + 1) == Some(&'"') && chars.get(i + 2) == Some(&'"');
            let start = i;
            i += if text_block { 3 } else { 1 };
            loop {
                match chars.get(i) {
                    None => {
                        return Err(LexError {
                            line: start_line,
                            message: "unterminated string literal".into(),
                        })
                    }
                    Some('\\') => i += 2,
                    Some('\n') if !text_block => {
                        return Err(LexError {
                            line: start_line,
                            message: "unterminated string literal".into(),
                        })
                    }
                    Some('\n') => {
                        line += 1;
                        i += 1;
                    }
                    Some('"') if !text_block => {
                        i += 1;
                        break;
                    }
                    Some('"')
                        if chars.get(i + 1) == Some(&'"') && chars.get(i + 2) == Some(&'"') =>
                    {
                        i += 3;
                        break;
                    }
                    Some(_) => i += 1,
                }
            }
            tokens.push(Token {
                kind: TokenKind::Str,
                text: chars[start..i.min(chars.len())].iter().collect(),
                line: start_line,
            });
            continue;
        }
        if c == '\'' {
            let start = i;
            i += 1;
            loop {
                match chars.get(i) {
                    None | Some('\n') => {
                        return Err(LexError {
                            line: start_line,
                            message: "unterminated character literal".into(),
                        })
                    }
                    Some('\\') => i += 2,
                    Some('\'') => {
                        i += 1;
                        break;
                    }
                    Some(_) => i += 1,
                }
            }
            tokens.push(Token {
                kind: TokenKind::Char,
                text: chars[start..i.min(chars.len())].iter().collect(),
                line: start_line,
            });
            continue;
        }
        if c.is_alphabetic() || c == '_' || c == '$' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '$')
            {
                i += 1;
            }
            tokens.push(Token {
                kind: TokenKind::Ident,
                text: chars[start..i].iter().collect(),
                line: start_line,
            });
            continue;
        }
        if c.is_ascii_digit()
            || (c == '.' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit()))
        {
            let start = i;
            while i < chars.len()
                && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '.')
            {
                // exponent sign: 1e-5
                if (chars[i] == 'e' || chars[i] == 'E')
                    && matches!(chars.get(i + 1), Some('+') | Some('-'))
                    && !chars[start..i].iter().any(|&c| c == 'x' || c == 'X')
                {
                    i += 1;
                }
                i += 1;
            }
            tokens.push(Token {
                kind: TokenKind::Number,
                text: chars[start..i].iter().collect(),
                line: start_line,
            });
            continue;
        }

        let multi = MULTI_PUNCT.iter().find(|p| {
            p.chars()
                .enumerate()
                .all(|(k, pc)| chars.get(i + k) == Some(&pc))
        });
        let text = match multi {
            Some(p) => (*p).to_owned(),
            None => c.to_string(),
        };
        i += text.chars().count();
        tokens.push(Token {
            kind: TokenKind::Punct,
            text,
            line: start_line,
        });
    }
    Ok(tokens)
}
