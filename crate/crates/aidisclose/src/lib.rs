//! Faceted AI-use annotations for text.
//!
//! This crate models how AI participated in producing a piece of text as a
//! small tuple of facet levels — Form, Generation, Evaluation, and optionally
//! Intent, Control, Traceability — attached to a document, chapter, section,
//! subsection, paragraph, figure, table, code fragment or reference list.
//! Around that model it provides:
//!
//! - a bit-exact parser and serializer for the grid notation
//!   (`|F4|G4|E3|I4|C2|T3|`), including scoped lines and qualifier suffixes;
//! - a document tree with nearest-ancestor inheritance and per-facet-maximum
//!   aggregation;
//! - template-based prose disclosure statements in three audience profiles;
//! - deterministic renderers: SVG badges, the LaTeX command, HTML with
//!   accessibility text, and a versioned JSON export;
//! - BibTeX citation entries for the AI systems used;
//! - scanning of Markdown, LaTeX and grid-file sources for embedded
//!   annotations.
//!
//! ```
//! use aidisclose::{parse_grid, serialize_grid};
//!
//! let record = parse_grid("|F4|G4|E3|I4|C2|T3|").unwrap();
//! assert!(record.is_extended());
//! assert_eq!(serialize_grid(&record), "|F4|G4|E3|I4|C2|T3|");
//! ```

#![forbid(unsafe_code)]

pub mod cite;
pub mod disclosure;
pub mod error;
pub mod facet;
pub mod grid;
pub mod record;
pub mod registry;
pub mod render;
pub mod scan;
pub mod scope;
pub mod tree;

pub use cite::{make_bibtex, make_bibtex_all};
pub use disclosure::{
    default_registry, generate_disclosure, DisclosureProfile, TemplateRegistry,
    RESPONSIBILITY_STATEMENT, UNSPECIFIED_EXTENDED_SENTENCE,
};
pub use error::{
    CiteError, FacetError, GridError, ImportError, RegistryError, RenderError, ScopeError,
    TreeError,
};
pub use facet::{
    level_definition, max_level, Annotation, CoreAnnotation, ExtendedAnnotation, FacetKind,
    FacetLevel, Qualifier,
};
pub use grid::{grid_tokens, parse_grid, parse_scoped_line, serialize_grid, GridToken};
pub use record::{
    validate_record, AnnotationRecord, EvidenceRef, Finding, FindingKind, Severity, ToolRef,
    ValidationReport,
};
pub use registry::ExtensionRegistry;
pub use render::{
    export_json, import_json, render_badge, render_html, render_latex, to_grid_file, BadgeSpec,
    BadgeStyle, EXPORT_VERSION,
};
pub use scan::{
    scan_document, IssueSeverity, ScanIssue, ScanReport, ScannedAnnotation, SourceFormat,
};
pub use scope::{ScopePath, ScopeSegment, SegmentId, SegmentKind};
pub use tree::{aggregate_records, AggregationPolicy, AttachIssue, DocumentTree, SegmentNode};
