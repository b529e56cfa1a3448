//! The `.skn` text format: lexer, parser, canonical renderer, elaboration
//! into engine values, and JSON result emission.

pub mod ast;
mod elaborate;
mod eval;
pub mod json;
mod lexer;
mod parser;
mod render;

use std::fmt;

use thiserror::Error;

pub use ast::Document;
pub use elaborate::{elaborate, parse_assignment, parse_builtin, Entry, Value, Workspace};
pub use eval::Scope;
pub use render::{render, render_system};

/// 1-based line and column (in characters).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Severity {
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub message: String,
    pub pos: Pos,
}

impl Diagnostic {
    pub fn error(pos: Pos, message: String) -> Self {
        Self { severity: Severity::Error, message, pos }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Error => "error",
        };
        write!(f, "{}:{}: {sev}: {}", self.pos.line, self.pos.col, self.message)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DslError {
    #[error("{}", .0.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("\n"))]
    Parse(Vec<Diagnostic>),
    #[error("{0}")]
    Domain(String),
}

impl DslError {
    pub fn domain(msg: impl fmt::Display) -> Self {
        DslError::Domain(msg.to_string())
    }

    /// Process exit code: 2 for source errors, 1 for domain errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            DslError::Parse(_) => 2,
            DslError::Domain(_) => 1,
        }
    }
}

/// Parse and resolve a document. Every failure carries a position.
pub fn parse(src: &str) -> Result<Document, Vec<Diagnostic>> {
    let mut p = parser::Parser::new(src).map_err(|d| vec![d])?;
    let doc = p.document().map_err(|d| vec![d])?;
    let diags = parser::check(&doc);
    if diags.is_empty() {
        Ok(doc)
    } else {
        Err(diags)
    }
}

/// [`parse`] on raw bytes, rejecting invalid UTF-8 with a position.
pub fn parse_bytes(bytes: &[u8]) -> Result<Document, Vec<Diagnostic>> {
    parse(lexer::decode(bytes).map_err(|d| vec![d])?)
}

/// Parse a standalone expression such as a command-line tensor.
pub fn parse_expr(src: &str) -> Result<ast::Expr, Diagnostic> {
    let mut p = parser::Parser::new(src)?;
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

/// Parse and elaborate in one step.
pub fn load(src: &[u8]) -> Result<Workspace, DslError> {
    let doc = parse_bytes(src).map_err(DslError::Parse)?;
    elaborate(&doc).map_err(DslError::Parse)
}
