//! The `.lca` text format.
//!
//! ```text
//! # Virasoro
//! confalg Vir { generators L; bracket [L ~ L] = (D + 2*lam) L; }
//!
//! liealg g { basis e, f, h; [e, f] = h; [h, e] = 2 e; [h, f] = -2 f; }
//! confalg C = cur(g);
//! confalg CC = C (+) C;
//! map dL : C -> C { e |-> (D + x) e; f |-> (D + x) f; h |-> (D + x) h; }
//! modmap diag : C -> CC { e |-> e_1 - e_2; f |-> f_1 - f_2; h |-> h_1 - h_2; }
//! ```
//!
//! Brackets not written down are filled in by antisymmetry (Lie) or
//! skew-symmetry (conformal); everything else is zero.

mod lexer;
mod parser;
mod render;

use std::fmt;

use crate::confalgebra::ConformalAlgebra;
use crate::confmap::{ConformalMap, ModuleMap};
use crate::liealgebra::LieAlgebra;
use crate::Rational;

pub use parser::parse;
pub use render::{render_confalg, render_file, render_lie, render_map, render_modmap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Severity {
    Error,
    Warning,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
        })
    }
}

/// A message tied to a token; `line` and `column` are 1-based and the
/// snippet is the source line with the token underlined.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Diagnostic {
    pub severity: Severity,
    pub message: String,
    pub line: usize,
    pub column: usize,
    pub snippet: String,
}

impl Diagnostic {
    pub(crate) fn at(
        severity: Severity,
        message: impl Into<String>,
        src: &str,
        line: usize,
        column: usize,
        len: usize,
    ) -> Self {
        let text = src.lines().nth(line - 1).unwrap_or("");
        let snippet = format!(
            "{}\n{}{}",
            text,
            " ".repeat(column - 1),
            "^".repeat(len.max(1))
        );
        Diagnostic {
            severity,
            message: message.into(),
            line,
            column,
            snippet,
        }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {}", self.severity, self.message)?;
        writeln!(f, " --> {}:{}", self.line, self.column)?;
        for l in self.snippet.lines() {
            writeln!(f, "  | {l}")?;
        }
        Ok(())
    }
}

/// How a conformal algebra declaration was written.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConfAlgDef {
    Table,
    Cur(String),
    Sum(String, String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decl {
    LieAlg {
        name: String,
        alg: LieAlgebra<Rational>,
    },
    ConfAlg {
        name: String,
        def: ConfAlgDef,
        alg: ConformalAlgebra<Rational>,
    },
    Map {
        name: String,
        source: String,
        target: String,
        map: ConformalMap<Rational>,
    },
    ModMap {
        name: String,
        source: String,
        target: String,
        map: ModuleMap<Rational>,
    },
}

impl Decl {
    pub fn name(&self) -> &str {
        match self {
            Decl::LieAlg { name, .. }
            | Decl::ConfAlg { name, .. }
            | Decl::Map { name, .. }
            | Decl::ModMap { name, .. } => name,
        }
    }

    pub fn keyword(&self) -> &'static str {
        match self {
            Decl::LieAlg { .. } => "liealg",
            Decl::ConfAlg { .. } => "confalg",
            Decl::Map { .. } => "map",
            Decl::ModMap { .. } => "modmap",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SourceFile {
    pub declarations: Vec<Decl>,
    /// Non-fatal diagnostics collected while parsing.
    pub warnings: Vec<Diagnostic>,
}

impl SourceFile {
    pub fn get(&self, name: &str) -> Option<&Decl> {
        self.declarations.iter().find(|d| d.name() == name)
    }

    pub fn lie_algebra(&self, name: &str) -> Option<&LieAlgebra<Rational>> {
        match self.get(name)? {
            Decl::LieAlg { alg, .. } => Some(alg),
            _ => None,
        }
    }

    pub fn conf_algebra(&self, name: &str) -> Option<&ConformalAlgebra<Rational>> {
        match self.get(name)? {
            Decl::ConfAlg { alg, .. } => Some(alg),
            _ => None,
        }
    }

    pub fn conf_algebras(&self) -> impl Iterator<Item = (&str, &ConformalAlgebra<Rational>)> {
        self.declarations.iter().filter_map(|d| match d {
            Decl::ConfAlg { name, alg, .. } => Some((name.as_str(), alg)),
            _ => None,
        })
    }

    /// `(source, target, map)` of a `map` declaration.
    pub fn map(&self, name: &str) -> Option<(&str, &str, &ConformalMap<Rational>)> {
        match self.get(name)? {
            Decl::Map {
                source,
                target,
                map,
                ..
            } => Some((source, target, map)),
            _ => None,
        }
    }

    /// `(source, target, map)` of a `modmap` declaration.
    pub fn modmap(&self, name: &str) -> Option<(&str, &str, &ModuleMap<Rational>)> {
        match self.get(name)? {
            Decl::ModMap {
                source,
                target,
                map,
                ..
            } => Some((source, target, map)),
            _ => None,
        }
    }
}
