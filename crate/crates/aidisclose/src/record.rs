//! Complete annotation records and their validation.
//!
//! An [`AnnotationRecord`] ties a level tuple to a scope and optionally to
//! qualifiers, the AI tools used, and supporting evidence. Validation is
//! report-based: [`validate_record`] never aborts on the first problem, it
//! collects every finding and distinguishes errors (model violations) from
//! warnings (allowed but discouraged).

use std::fmt;

use crate::facet::{Annotation, FacetKind, Qualifier};
use crate::registry::ExtensionRegistry;
use crate::scope::ScopePath;

/// Reference to an AI system used in producing the text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToolRef {
    /// Author or vendor of the system, e.g. `OpenAI`.
    pub author: String,
    pub title: String,
    pub year: i32,
    /// Empty when no URL is available.
    pub url: String,
    /// Access date in `YYYY-MM-DD` form.
    pub accessed: String,
    /// Citation key; non-empty, no whitespace.
    pub cite_key: String,
}

impl ToolRef {
    pub fn cite_key_is_valid(&self) -> bool {
        !self.cite_key.is_empty() && !self.cite_key.chars().any(char::is_whitespace)
    }
}

/// Pointer to supporting material: prompts, logs, drafts, disclosure notes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvidenceRef {
    pub description: String,
    /// URI or file path, when the material has a fixed location.
    pub location: Option<String>,
}

impl EvidenceRef {
    pub fn new(description: impl Into<String>, location: Option<String>) -> EvidenceRef {
        EvidenceRef {
            description: description.into(),
            location,
        }
    }
}

/// A complete annotation: scope, level tuple, qualifiers, tools, evidence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnotationRecord {
    pub scope: ScopePath,
    pub levels: Annotation,
    pub qualifiers: Vec<Qualifier>,
    pub tools: Vec<ToolRef>,
    pub evidence: Vec<EvidenceRef>,
}

impl AnnotationRecord {
    /// A record carrying only a level tuple, unscoped.
    pub fn new(levels: impl Into<Annotation>) -> AnnotationRecord {
        AnnotationRecord {
            scope: ScopePath::unscoped(),
            levels: levels.into(),
            qualifiers: Vec::new(),
            tools: Vec::new(),
            evidence: Vec::new(),
        }
    }

    pub fn with_scope(mut self, scope: ScopePath) -> AnnotationRecord {
        self.scope = scope;
        self
    }

    pub fn with_qualifiers(mut self, qualifiers: Vec<Qualifier>) -> AnnotationRecord {
        self.qualifiers = qualifiers;
        self
    }

    pub fn with_tools(mut self, tools: Vec<ToolRef>) -> AnnotationRecord {
        self.tools = tools;
        self
    }

    pub fn with_evidence(mut self, evidence: Vec<EvidenceRef>) -> AnnotationRecord {
        self.evidence = evidence;
        self
    }

    pub fn is_extended(&self) -> bool {
        self.levels.is_extended()
    }

    /// The qualifier attached to `facet`, if any.
    pub fn qualifier_for(&self, facet: FacetKind) -> Option<&Qualifier> {
        self.qualifiers.iter().find(|q| q.facet() == facet)
    }
}

/// How serious a validation finding is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Severity {
    /// Violates the model; the record must not be published as-is.
    Error,
    /// Allowed but discouraged, e.g. a qualifier with no registry entry.
    Warning,
}

/// What a validation finding is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FindingKind {
    LevelOutOfRange,
    DuplicateFacet,
    QualifierMismatch,
    InvalidCiteKey,
    EmptyEvidence,
    UnregisteredQualifier,
}

/// One validation finding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Finding {
    pub severity: Severity,
    pub kind: FindingKind,
    pub message: String,
}

impl Finding {
    fn error(kind: FindingKind, message: String) -> Finding {
        Finding {
            severity: Severity::Error,
            kind,
            message,
        }
    }

    fn warning(kind: FindingKind, message: String) -> Finding {
        Finding {
            severity: Severity::Warning,
            kind,
            message,
        }
    }
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{tag}: {}", self.message)
    }
}

/// The outcome of validating a record: all findings, in detection order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub findings: Vec<Finding>,
}

impl ValidationReport {
    pub fn errors(&self) -> impl Iterator<Item = &Finding> {
        self.findings
            .iter()
            .filter(|f| f.severity == Severity::Error)
    }

    pub fn warnings(&self) -> impl Iterator<Item = &Finding> {
        self.findings
            .iter()
            .filter(|f| f.severity == Severity::Warning)
    }

    pub fn error_count(&self) -> usize {
        self.errors().count()
    }

    pub fn warning_count(&self) -> usize {
        self.warnings().count()
    }

    pub fn has_errors(&self) -> bool {
        self.error_count() > 0
    }

    pub fn is_clean(&self) -> bool {
        self.findings.is_empty()
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.findings.extend(other.findings);
    }
}

/// Validates a record against the facet model.
///
/// Level bounds are normally enforced at construction; they are re-checked
/// here so that records assembled through the unchecked constructors (or
/// deserialized from foreign data) are still caught. Qualifiers must match a
/// level actually present in the record, at most one qualifier per facet, and
/// each must be declared in the extension registry to pass without warning.
pub fn validate_record(
    record: &AnnotationRecord,
    registry: Option<&ExtensionRegistry>,
) -> ValidationReport {
    let mut report = ValidationReport::default();

    for fl in record.levels.facet_levels() {
        if !fl.is_in_range() {
            report.findings.push(Finding::error(
                FindingKind::LevelOutOfRange,
                format!(
                    "level {} is out of range for {} ({}); maximum is {}",
                    fl.level(),
                    fl.facet(),
                    fl.code(),
                    fl.facet().max_level()
                ),
            ));
        }
    }

    let mut seen: Vec<FacetKind> = Vec::new();
    for qualifier in &record.qualifiers {
        let facet = qualifier.facet();
        if seen.contains(&facet) {
            report.findings.push(Finding::error(
                FindingKind::DuplicateFacet,
                format!("facet {facet} carries more than one qualifier"),
            ));
            continue;
        }
        seen.push(facet);

        match record.levels.level(facet) {
            Some(level) if level == qualifier.facet_level() => {}
            Some(level) => {
                report.findings.push(Finding::error(
                    FindingKind::QualifierMismatch,
                    format!(
                        "qualifier {} does not match the record level {}",
                        qualifier.code(),
                        level.code()
                    ),
                ));
                continue;
            }
            None => {
                report.findings.push(Finding::error(
                    FindingKind::QualifierMismatch,
                    format!(
                        "qualifier {} refers to {}, which this core record does not carry",
                        qualifier.code(),
                        facet
                    ),
                ));
                continue;
            }
        }

        let registered = registry
            .map(|r| r.is_registered(qualifier))
            .unwrap_or(false);
        if !registered {
            report.findings.push(Finding::warning(
                FindingKind::UnregisteredQualifier,
                format!(
                    "qualifier {} is not declared in any loaded extension registry",
                    qualifier.code()
                ),
            ));
        }
    }

    for tool in &record.tools {
        if !tool.cite_key_is_valid() {
            report.findings.push(Finding::error(
                FindingKind::InvalidCiteKey,
                format!(
                    "tool {:?} has an empty or whitespace-containing cite key {:?}",
                    tool.title, tool.cite_key
                ),
            ));
        }
    }

    for evidence in &record.evidence {
        if evidence.description.trim().is_empty() {
            report.findings.push(Finding::error(
                FindingKind::EmptyEvidence,
                "evidence entry has an empty description".to_string(),
            ));
        }
    }

    report
}
