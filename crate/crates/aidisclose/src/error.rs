//! Error types for every fallible operation in the crate.

use thiserror::Error;

use crate::facet::FacetKind;
use crate::scope::ScopePath;

/// Violations of the facet model raised at construction time.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FacetError {
    #[error("level {level} is out of range for {facet} (maximum {})", facet.max_level())]
    LevelOutOfRange { facet: FacetKind, level: u8 },

    #[error("qualifier suffix {0:?} is not a single uppercase letter A-Z")]
    InvalidSuffix(char),

    #[error("expected a {expected} level in this slot, found {found}")]
    FacetMismatch {
        expected: FacetKind,
        found: FacetKind,
    },
}

/// Errors from parsing grid notation or scoped lines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GridError {
    #[error("malformed grid: {0}")]
    Malformed(String),

    #[error("unknown facet letter {0:?} (expected one of F, G, E, I, C, T)")]
    UnknownFacet(char),

    #[error("level {level} is out of range for {facet} (maximum {})", facet.max_level())]
    LevelOutOfRange { facet: FacetKind, level: u8 },

    #[error(
        "facet {found} out of order at position {position} (canonical order is F, G, E, I, C, T)"
    )]
    WrongFacetOrder { position: usize, found: FacetKind },

    #[error("grid has {0} cells; a grid carries exactly 3 (core) or 6 (extended)")]
    WrongArity(usize),

    #[error("facet {0} appears more than once")]
    DuplicateFacet(FacetKind),

    #[error("scoped line has no ':' separating the scope label from the grid")]
    MissingColon,

    #[error("invalid scope label: {0}")]
    InvalidScope(#[from] ScopeError),
}

/// Errors from parsing scope labels or assembling scope paths.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScopeError {
    #[error("empty scope label")]
    EmptyLabel,

    #[error("unknown segment kind {0:?}")]
    UnknownKind(String),

    #[error("segment kind '{0}' does not take an index or identifier")]
    IdNotAllowed(&'static str),

    #[error("invalid segment identifier {0:?}")]
    InvalidId(String),

    #[error("'document' may only appear as the first segment")]
    DocumentNotFirst,

    #[error("segment '{inner}' cannot contain segment '{outer}'")]
    RankOrder { outer: String, inner: String },

    #[error("'{0}' is a leaf segment and cannot contain further segments")]
    LeafNotLast(String),
}

/// Errors from document tree operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("scope '{0}' does not resolve to a node in the tree")]
    ScopeNotFound(ScopePath),

    #[error("scope '{0}' is ambiguous: several nodes of that kind exist")]
    AmbiguousScope(ScopePath),

    #[error("an unscoped record cannot be placed in a document tree")]
    Unscoped,

    #[error("the tree carries no annotations")]
    NoAnnotations,
}

/// Errors from loading an extension registry file.
#[derive(Debug, Error)]
pub enum RegistryError {
    #[error("failed to read registry: {0}")]
    Io(#[from] std::io::Error),

    #[error("registry line {line}: {message}")]
    Syntax { line: usize, message: String },
}

/// Errors from the render module.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RenderError {
    #[error("the LaTeX command has six argument slots; core records are not supported")]
    CoreNotSupported,
}

/// Errors from importing the JSON export format.
#[derive(Debug, Error)]
pub enum ImportError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error("unsupported document version {0:?} (expected \"1\")")]
    UnsupportedVersion(String),

    #[error("annotation {index}: {message}")]
    Annotation { index: usize, message: String },
}

/// Errors from citation generation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CiteError {
    #[error("accessed date {0:?} is not a calendar date (expected YYYY-MM-DD)")]
    InvalidDate(String),

    #[error("cite key {0:?} is empty or contains whitespace")]
    InvalidCiteKey(String),
}
