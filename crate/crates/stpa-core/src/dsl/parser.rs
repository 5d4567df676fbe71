//! Recursive-descent parser for the `.stpa` grammar.
//!
//! Recovery is panic-mode: on any error inside a declaration the parser
//! records one diagnostic and skips to the next declaration keyword, so a
//! single malformed item does not hide problems in the rest of the file.

use std::collections::HashMap;

use crate::model::{
    Accident, CausalFactor, CausalScenario, Component, ComponentKind, ControlAction,
    FeedbackSignal, Hazard, LoopElement, Qualifier, Rating, SafeAssessment, SafetyConstraint,
    SafetyModel, SourceSpan, UcaCategory, UcaClass, UnsafeControlAction, Asil,
};

use super::lexer::{tokenize, Token, TokenKind};
use super::ParseDiagnostic;

const ITEM_KEYWORDS: [&str; 10] = [
    "accident",
    "hazard",
    "constraint",
    "component",
    "action",
    "feedback",
    "uca",
    "safe",
    "cause",
    "scenario",
];

const CLAUSE_KEYWORDS: [&str; 12] = [
    "model",
    "from",
    "kind",
    "on",
    "category",
    "qualifier",
    "context",
    "hazards",
    "rating",
    "justification",
    "element",
    "requires",
];

// `asil` is reserved too; the level words QM/A/B/C/D stay contextual so that
// component ids like `A` remain expressible.
fn is_reserved(word: &str) -> bool {
    ITEM_KEYWORDS.contains(&word)
        || CLAUSE_KEYWORDS.contains(&word)
        || word == "asil"
        || ComponentKind::from_keyword(word).is_some()
        || UcaClass::from_keyword(word).is_some()
        || Qualifier::from_keyword(word).is_some()
        || LoopElement::from_keyword(word).is_some()
}

fn is_identifier(word: &str) -> bool {
    let mut chars = word.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// `prefix` followed by one or more digits, e.g. `UCA12`.
fn matches_pattern(word: &str, prefix: &str) -> bool {
    word.strip_prefix(prefix)
        .is_some_and(|rest| !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()))
}

pub fn parse(source: &str, file: &str) -> Result<SafetyModel, Vec<ParseDiagnostic>> {
    let (tokens, mut diagnostics) = tokenize(source, file);
    let mut parser = Parser {
        tokens,
        pos: 0,
        file,
        diagnostics: Vec::new(),
        model: SafetyModel::default(),
        declared: HashMap::new(),
    };
    parser.parse_model();
    diagnostics.append(&mut parser.diagnostics);
    diagnostics.sort_by_key(|d| (d.span.line, d.span.column));
    if diagnostics.is_empty() {
        Ok(parser.model)
    } else {
        Err(diagnostics)
    }
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    file: &'a str,
    diagnostics: Vec<ParseDiagnostic>,
    model: SafetyModel,
    /// First-declaration span per id, for duplicate reporting.
    declared: HashMap<String, SourceSpan>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn bump(&mut self) -> Option<Token> {
        let token = self.tokens.get(self.pos).cloned();
        if token.is_some() {
            self.pos += 1;
        }
        token
    }

    /// Span to blame when input ends too early: the last consumed token, per
    /// convention (a trailing `->` is reported at the arrow itself).
    fn eof_span(&self) -> SourceSpan {
        match self.pos.checked_sub(1).and_then(|i| self.tokens.get(i)) {
            Some(token) => token.span.clone(),
            None => SourceSpan::new(self.file, 1, 1, 0),
        }
    }

    fn error(&mut self, span: SourceSpan, message: impl Into<String>, expected: Option<String>) {
        self.diagnostics.push(ParseDiagnostic {
            span,
            message: message.into(),
            expected,
        });
    }

    /// Skip to the next declaration keyword after a failed item.
    fn recover(&mut self) {
        while let Some(token) = self.peek() {
            if token.word().is_some_and(|w| ITEM_KEYWORDS.contains(&w)) {
                return;
            }
            self.pos += 1;
        }
    }

    // -- expectation helpers -------------------------------------------------

    fn expect_keyword(&mut self, keyword: &str) -> Option<()> {
        match self.peek() {
            Some(token) if token.word() == Some(keyword) => {
                self.bump();
                Some(())
            }
            Some(token) => {
                let (span, found) = (token.span.clone(), token.describe());
                self.error(
                    span,
                    format!("expected `{keyword}`, found {found}"),
                    Some(format!("`{keyword}`")),
                );
                None
            }
            None => {
                let span = self.eof_span();
                self.error(span, "unexpected end of input", Some(format!("`{keyword}`")));
                None
            }
        }
    }

    fn expect_identifier(&mut self, what: &str) -> Option<(String, SourceSpan)> {
        match self.peek() {
            Some(token) => match token.word() {
                Some(word) if is_reserved(word) => {
                    let (span, word) = (token.span.clone(), word.to_string());
                    self.error(
                        span,
                        format!("`{word}` is a reserved keyword and cannot be used as {what}"),
                        Some(what.to_string()),
                    );
                    None
                }
                Some(word) if is_identifier(word) => {
                    let result = (word.to_string(), token.span.clone());
                    self.bump();
                    Some(result)
                }
                _ => {
                    let (span, found) = (token.span.clone(), token.describe());
                    self.error(
                        span,
                        format!("expected {what}, found {found}"),
                        Some(what.to_string()),
                    );
                    None
                }
            },
            None => {
                let span = self.eof_span();
                self.error(span, "unexpected end of input", Some(what.to_string()));
                None
            }
        }
    }

    /// A declared id that must follow the `{prefix}<digits>` pattern.
    fn expect_declared_id(&mut self, what: &str, prefix: &str) -> Option<(String, SourceSpan)> {
        let (word, span) = self.expect_identifier(&format!("{what} id"))?;
        if matches_pattern(&word, prefix) {
            Some((word, span))
        } else {
            self.error(
                span,
                format!("{what} id `{word}` does not match pattern `{prefix}<digits>`"),
                None,
            );
            None
        }
    }

    fn expect_string(&mut self, what: &str) -> Option<(String, SourceSpan)> {
        match self.peek() {
            Some(token) => match &token.kind {
                TokenKind::Str(value) => {
                    let result = (value.clone(), token.span.clone());
                    self.bump();
                    Some(result)
                }
                _ => {
                    let (span, found) = (token.span.clone(), token.describe());
                    self.error(
                        span,
                        format!("expected {what}, found {found}"),
                        Some("string literal".to_string()),
                    );
                    None
                }
            },
            None => {
                let span = self.eof_span();
                self.error(span, "unexpected end of input", Some(format!("{what} (string literal)")));
                None
            }
        }
    }

    fn expect_nonempty_string(&mut self, what: &str) -> Option<(String, SourceSpan)> {
        let (value, span) = self.expect_string(what)?;
        if value.is_empty() {
            self.error(span, format!("{what} must not be empty"), None);
            None
        } else {
            Some((value, span))
        }
    }

    fn expect_arrow(&mut self) -> Option<()> {
        match self.peek() {
            Some(token) if token.kind == TokenKind::Arrow => {
                self.bump();
                Some(())
            }
            Some(token) => {
                let (span, found) = (token.span.clone(), token.describe());
                self.error(span, format!("expected `->`, found {found}"), Some("`->`".to_string()));
                None
            }
            None => {
                let span = self.eof_span();
                self.error(span, "unexpected end of input", Some("`->`".to_string()));
                None
            }
        }
    }

    /// `ID (',' ID)*`
    fn expect_ref_list(&mut self, what: &str) -> Option<Vec<String>> {
        let mut refs = vec![self.expect_identifier(what)?.0];
        while self.peek().is_some_and(|t| t.kind == TokenKind::Comma) {
            self.bump();
            refs.push(self.expect_identifier(what)?.0);
        }
        Some(refs)
    }

    /// One keyword token from a closed word set, mapped through `decode`.
    fn expect_word_of<T>(
        &mut self,
        what: &str,
        options: &str,
        decode: impl Fn(&str) -> Option<T>,
    ) -> Option<(T, SourceSpan)> {
        match self.peek() {
            Some(token) => {
                let found = token.describe();
                let span = token.span.clone();
                if let Some(value) = token.word().and_then(&decode) {
                    self.bump();
                    Some((value, span))
                } else {
                    self.error(
                        span,
                        format!("expected {what}, found {found}"),
                        Some(options.to_string()),
                    );
                    None
                }
            }
            None => {
                let span = self.eof_span();
                self.error(span, "unexpected end of input", Some(options.to_string()));
                None
            }
        }
    }

    /// One `S<digit>` / `E<digit>` / `C<digit>` rating token.
    fn expect_rating_token(&mut self, letter: char) -> Option<u8> {
        let what = format!("`{letter}<digit>` rating token");
        match self.peek() {
            Some(token) => {
                let span = token.span.clone();
                let found = token.describe();
                let digit = token.word().and_then(|w| {
                    let mut chars = w.chars();
                    (chars.next() == Some(letter))
                        .then_some(chars.as_str())
                        .filter(|rest| rest.len() == 1)
                        .and_then(|rest| rest.chars().next())
                        .and_then(|c| c.to_digit(10))
                });
                match digit {
                    Some(d) => {
                        self.bump();
                        Some(d as u8)
                    }
                    None => {
                        self.error(span, format!("expected {what}, found {found}"), None);
                        None
                    }
                }
            }
            None => {
                let span = self.eof_span();
                self.error(span, "unexpected end of input", Some(what));
                None
            }
        }
    }

    /// Record a declared id; duplicate ids get one diagnostic at the second
    /// declaration and the first declaration stays in the model.
    fn register(&mut self, id: &str, span: SourceSpan) -> bool {
        if let Some(first) = self.declared.get(id) {
            let message = format!(
                "duplicate id `{id}`; first declared at {}:{}",
                first.line, first.column
            );
            self.error(span, message, None);
            false
        } else {
            self.declared.insert(id.to_string(), span.clone());
            self.model.spans.entities.insert(id.to_string(), span);
            true
        }
    }

    // -- grammar productions -------------------------------------------------

    fn parse_model(&mut self) {
        let header_ok = self.expect_keyword("model").is_some();
        if header_ok {
            if let Some((name, _)) = self.expect_string("model name") {
                self.model.name = name;
            } else {
                self.recover();
            }
        } else {
            // Still walk whatever items exist so its errors surface too.
            self.recover();
        }
        while let Some(token) = self.peek() {
            let span = token.span.clone();
            match token.word() {
                Some("accident") => self.item(Self::parse_accident),
                Some("hazard") => self.item(Self::parse_hazard),
                Some("constraint") => self.item(Self::parse_constraint),
                Some("component") => self.item(Self::parse_component),
                Some("action") => self.item(Self::parse_action),
                Some("feedback") => self.item(Self::parse_feedback),
                Some("uca") => self.item(Self::parse_uca),
                Some("safe") => self.item(Self::parse_safe),
                Some("cause") => self.item(Self::parse_cause),
                Some("scenario") => self.item(Self::parse_scenario),
                Some(other) => {
                    let message = format!("unknown declaration keyword `{other}`");
                    self.error(span, message, Some("a declaration keyword".to_string()));
                    self.bump();
                    self.recover();
                }
                None => {
                    let found = token.describe();
                    self.error(
                        span,
                        format!("expected a declaration keyword, found {found}"),
                        Some("a declaration keyword".to_string()),
                    );
                    self.bump();
                    self.recover();
                }
            }
        }
    }

    fn item(&mut self, production: fn(&mut Self) -> Option<()>) {
        self.bump(); // the declaration keyword, already matched
        if production(self).is_none() {
            self.recover();
        }
    }

    fn parse_accident(&mut self) -> Option<()> {
        let (id, span) = self.expect_declared_id("accident", "A")?;
        let (description, _) = self.expect_nonempty_string("accident description")?;
        if self.register(&id, span) {
            self.model.accidents.push(Accident { id, description });
        }
        Some(())
    }

    fn parse_hazard(&mut self) -> Option<()> {
        let (id, span) = self.expect_declared_id("hazard", "H")?;
        let (description, _) = self.expect_string("hazard description")?;
        self.expect_arrow()?;
        let accidents = self.expect_ref_list("accident reference")?;
        if self.register(&id, span) {
            self.model.hazards.push(Hazard {
                id,
                description,
                accidents,
            });
        }
        Some(())
    }

    fn parse_constraint(&mut self) -> Option<()> {
        let (id, span) = self.expect_declared_id("constraint", "SC")?;
        self.expect_keyword("from")?;
        let (source, _) = self.expect_identifier("source reference")?;
        let (text, _) = self.expect_nonempty_string("constraint text")?;
        let asil = if self.peek().is_some_and(|t| t.word() == Some("asil")) {
            self.bump();
            let (level, _) = self.expect_word_of(
                "ASIL level",
                "`QM`, `A`, `B`, `C`, or `D`",
                Asil::from_keyword,
            )?;
            Some(level)
        } else {
            None
        };
        if self.register(&id, span) {
            self.model.constraints.push(SafetyConstraint {
                id,
                source,
                text,
                asil,
            });
        }
        Some(())
    }

    fn parse_component(&mut self) -> Option<()> {
        let (id, span) = self.expect_identifier("component id")?;
        self.expect_keyword("kind")?;
        let (kind, _) = self.expect_word_of(
            "component kind",
            "`controller`, `actuator`, `sensor`, or `controlled_process`",
            ComponentKind::from_keyword,
        )?;
        let (label, _) = self.expect_string("component label")?;
        if self.register(&id, span) {
            self.model.components.push(Component { id, kind, label });
        }
        Some(())
    }

    fn parse_action(&mut self) -> Option<()> {
        let (id, span) = self.expect_declared_id("action", "CA")?;
        let (source, _) = self.expect_identifier("source component reference")?;
        self.expect_arrow()?;
        let (target, _) = self.expect_identifier("target component reference")?;
        let (label, _) = self.expect_string("action label")?;
        if self.register(&id, span) {
            self.model.actions.push(ControlAction {
                id,
                source,
                target,
                label,
            });
        }
        Some(())
    }

    fn parse_feedback(&mut self) -> Option<()> {
        let (id, span) = self.expect_declared_id("feedback", "FB")?;
        let (source, _) = self.expect_identifier("source component reference")?;
        self.expect_arrow()?;
        let (target, _) = self.expect_identifier("target component reference")?;
        let (label, _) = self.expect_string("feedback label")?;
        if self.register(&id, span) {
            self.model.feedbacks.push(FeedbackSignal {
                id,
                source,
                target,
                label,
            });
        }
        Some(())
    }

    fn parse_uca(&mut self) -> Option<()> {
        let (id, span) = self.expect_declared_id("uca", "UCA")?;
        self.expect_keyword("on")?;
        let (action, _) = self.expect_identifier("action reference")?;
        self.expect_keyword("category")?;
        let (class, _) = self.expect_word_of(
            "UCA category",
            "`provided`, `not_provided`, `wrong_timing`, or `wrong_duration`",
            UcaClass::from_keyword,
        )?;
        let qualifier = if self.peek().is_some_and(|t| t.word() == Some("qualifier")) {
            self.bump();
            let (qualifier, q_span) = self.expect_word_of(
                "qualifier",
                "`too_early`, `too_late`, `out_of_sequence`, `too_long`, or `stopped_too_soon`",
                Qualifier::from_keyword,
            )?;
            if !qualifier.allowed_for(class) {
                self.error(
                    q_span,
                    format!("qualifier `{qualifier}` is not valid for category `{class}`"),
                    None,
                );
                return None;
            }
            Some(qualifier)
        } else {
            None
        };
        self.expect_keyword("context")?;
        let (context, _) = self.expect_string("context")?;
        self.expect_keyword("hazards")?;
        let hazards = self.expect_ref_list("hazard reference")?;
        let rating = if self.peek().is_some_and(|t| t.word() == Some("rating")) {
            self.bump();
            let severity = self.expect_rating_token('S')?;
            let exposure = self.expect_rating_token('E')?;
            let controllability = self.expect_rating_token('C')?;
            Some(Rating::new(severity, exposure, controllability))
        } else {
            None
        };
        if self.register(&id, span) {
            self.model.ucas.push(UnsafeControlAction {
                id,
                action,
                category: UcaCategory { class, qualifier },
                context,
                hazards,
                rating,
            });
        }
        Some(())
    }

    fn parse_safe(&mut self) -> Option<()> {
        // Safe assessments have no id of their own; the leading ID names the
        // assessed control action.
        let (action, action_span) = self.expect_identifier("action reference")?;
        self.expect_keyword("category")?;
        let (category, _) = self.expect_word_of(
            "UCA category",
            "`provided`, `not_provided`, `wrong_timing`, or `wrong_duration`",
            UcaClass::from_keyword,
        )?;
        self.expect_keyword("justification")?;
        let (justification, _) = self.expect_nonempty_string("justification")?;
        self.model.safe_assessments.push(SafeAssessment {
            action,
            category,
            justification,
        });
        self.model.spans.safes.push(action_span);
        Some(())
    }

    fn parse_cause(&mut self) -> Option<()> {
        let (id, span) = self.expect_declared_id("cause", "CF")?;
        self.expect_keyword("on")?;
        let (uca, _) = self.expect_identifier("uca reference")?;
        self.expect_keyword("element")?;
        let (element, _) = self.expect_word_of(
            "loop element",
            "a loop element keyword such as `feedback_path`",
            LoopElement::from_keyword,
        )?;
        let (description, _) = self.expect_string("cause description")?;
        if self.register(&id, span) {
            self.model.causal_factors.push(CausalFactor {
                id,
                uca,
                element,
                description,
            });
        }
        Some(())
    }

    fn parse_scenario(&mut self) -> Option<()> {
        let (id, span) = self.expect_declared_id("scenario", "SCN")?;
        self.expect_keyword("on")?;
        let (uca, _) = self.expect_identifier("uca reference")?;
        self.expect_keyword("requires")?;
        let factors = self.expect_ref_list("causal factor reference")?;
        let (description, _) = self.expect_string("scenario description")?;
        if self.register(&id, span) {
            self.model.scenarios.push(CausalScenario {
                id,
                uca,
                factors,
                description,
            });
        }
        Some(())
    }
}
