//! Tokenizer for the `.stpa` notation.
//!
//! Produces words, string literals, arrows, and commas with 1-based
//! line/column spans measured in characters. Newlines are LF or CRLF (a lone
//! CR also counts, so files from any platform report sane line numbers).

use crate::model::SourceSpan;

use super::ParseDiagnostic;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TokenKind {
    /// Bare word: keyword, identifier, or value token such as `S3`.
    Word(String),
    /// String literal, unescaped.
    Str(String),
    /// `->`
    Arrow,
    /// `,`
    Comma,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub span: SourceSpan,
}

impl Token {
    /// The word if this token is one.
    pub fn word(&self) -> Option<&str> {
        match &self.kind {
            TokenKind::Word(w) => Some(w),
            _ => None,
        }
    }

    /// How the token reads in a diagnostic message.
    pub fn describe(&self) -> String {
        match &self.kind {
            TokenKind::Word(w) => format!("`{w}`"),
            TokenKind::Str(_) => "string literal".to_string(),
            TokenKind::Arrow => "`->`".to_string(),
            TokenKind::Comma => "`,`".to_string(),
        }
    }
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    file: &'a str,
    line: u32,
    column: u32,
}

impl<'a> Lexer<'a> {
    fn new(source: &'a str, file: &'a str) -> Self {
        // A leading BOM is tolerated and does not count toward column 1.
        let source = source.strip_prefix('\u{feff}').unwrap_or(source);
        Self {
            chars: source.chars().peekable(),
            file,
            line: 1,
            column: 1,
        }
    }

    fn span(&self, line: u32, column: u32, length: u32) -> SourceSpan {
        SourceSpan::new(self.file, line, column, length)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        match c {
            '\n' => {
                self.line += 1;
                self.column = 1;
            }
            '\r' => {
                // CRLF counts as one newline; a lone CR also starts a new line.
                if self.chars.peek() == Some(&'\n') {
                    self.chars.next();
                }
                self.line += 1;
                self.column = 1;
            }
            _ => self.column += 1,
        }
        Some(c)
    }

    fn skip_trivia(&mut self) {
        while let Some(&c) = self.chars.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '/' {
                let mut ahead = self.chars.clone();
                ahead.next();
                if ahead.peek() == Some(&'/') {
                    while let Some(&c) = self.chars.peek() {
                        if c == '\n' || c == '\r' {
                            break;
                        }
                        self.bump();
                    }
                } else {
                    break;
                }
            } else {
                break;
            }
        }
    }

    fn lex_string(&mut self, diagnostics: &mut Vec<ParseDiagnostic>) -> Option<Token> {
        let (line, column) = (self.line, self.column);
        self.bump(); // opening quote
        let mut value = String::new();
        let mut length = 1u32; // the quote itself
        loop {
            match self.chars.peek() {
                None => {
                    diagnostics.push(ParseDiagnostic {
                        span: self.span(line, column, 1),
                        message: "unterminated string literal".into(),
                        expected: Some("closing `\"`".into()),
                    });
                    return None;
                }
                Some('\n') | Some('\r') => {
                    diagnostics.push(ParseDiagnostic {
                        span: self.span(line, column, length),
                        message: "string literal may not contain a newline".into(),
                        expected: Some("closing `\"` on the same line".into()),
                    });
                    return None;
                }
                Some('"') => {
                    self.bump();
                    length += 1;
                    return Some(Token {
                        kind: TokenKind::Str(value),
                        span: self.span(line, column, length),
                    });
                }
                Some('\\') => {
                    let esc_line = self.line;
                    let esc_column = self.column;
                    self.bump();
                    length += 1;
                    match self.chars.peek() {
                        Some('"') => {
                            value.push('"');
                            self.bump();
                            length += 1;
                        }
                        Some('\\') => {
                            value.push('\\');
                            self.bump();
                            length += 1;
                        }
                        Some(&other) if other != '\n' && other != '\r' => {
                            diagnostics.push(ParseDiagnostic {
                                span: self.span(esc_line, esc_column, 2),
                                message: format!("unknown escape sequence `\\{other}`"),
                                expected: Some("`\\\"` or `\\\\`".into()),
                            });
                            // Keep the character so the rest of the string
                            // still lexes and later errors stay meaningful.
                            value.push(other);
                            self.bump();
                            length += 1;
                        }
                        _ => {
                            diagnostics.push(ParseDiagnostic {
                                span: self.span(line, column, 1),
                                message: "unterminated string literal".into(),
                                expected: Some("closing `\"`".into()),
                            });
                            return None;
                        }
                    }
                }
                Some(_) => {
                    value.push(self.bump().unwrap());
                    length += 1;
                }
            }
        }
    }

    fn lex_word(&mut self) -> Token {
        let (line, column) = (self.line, self.column);
        let mut word = String::new();
        while let Some(&c) = self.chars.peek() {
            if c.is_alphanumeric() || c == '_' {
                word.push(c);
                self.bump();
            } else {
                break;
            }
        }
        let length = word.chars().count() as u32;
        Token {
            kind: TokenKind::Word(word),
            span: self.span(line, column, length),
        }
    }
}

/// Tokenize the whole source. Lexical errors are collected and the offending
/// characters skipped, so the parser still sees everything that did lex.
pub fn tokenize(
    source: &str,
    file: &str,
) -> (Vec<Token>, Vec<ParseDiagnostic>) {
    let mut lexer = Lexer::new(source, file);
    let mut tokens = Vec::new();
    let mut diagnostics = Vec::new();
    loop {
        lexer.skip_trivia();
        let Some(&c) = lexer.chars.peek() else { break };
        match c {
            '"' => {
                if let Some(token) = lexer.lex_string(&mut diagnostics) {
                    tokens.push(token);
                }
            }
            ',' => {
                let span = lexer.span(lexer.line, lexer.column, 1);
                lexer.bump();
                tokens.push(Token {
                    kind: TokenKind::Comma,
                    span,
                });
            }
            '-' => {
                let (line, column) = (lexer.line, lexer.column);
                lexer.bump();
                if lexer.chars.peek() == Some(&'>') {
                    lexer.bump();
                    tokens.push(Token {
                        kind: TokenKind::Arrow,
                        span: lexer.span(line, column, 2),
                    });
                } else {
                    diagnostics.push(ParseDiagnostic {
                        span: lexer.span(line, column, 1),
                        message: "unexpected character `-`".into(),
                        expected: Some("`->`".into()),
                    });
                }
            }
            c if c.is_alphanumeric() || c == '_' => {
                tokens.push(lexer.lex_word());
            }
            other => {
                diagnostics.push(ParseDiagnostic {
                    span: lexer.span(lexer.line, lexer.column, 1),
                    message: format!("unexpected character `{other}`"),
                    expected: None,
                });
                lexer.bump();
            }
        }
    }
    (tokens, diagnostics)
}
