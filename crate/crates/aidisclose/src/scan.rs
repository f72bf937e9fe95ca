//! Annotation extraction from document sources.
//!
//! Scanning is line- and command-pattern based, not a full parse of the host
//! format. Three source formats are supported:
//!
//! - **Markdown** — scoped lines inside `<!-- aidisclose: ... -->` comments.
//! - **LaTeX** — `\aitextsection{F.}{G.}{E.}{I.}{C.}{T.}` occurrences (the
//!   scope is inferred from the most recent sectioning command) and
//!   `% aidisclose: ...` comment lines.
//! - **GridFile** — one annotation per line, with `#` comments and optional
//!   `@context <scope>` headers that give bare labels something to bind to.
//!
//! Parse problems never abort the scan: they are collected with their line
//! numbers and scanning continues.

use std::sync::OnceLock;

use regex::Regex;

use crate::grid::{parse_grid, parse_scoped_line};
use crate::record::AnnotationRecord;
use crate::scope::{ScopePath, ScopeSegment, SegmentId, SegmentKind};

/// Input formats understood by [`scan_document`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SourceFormat {
    /// One annotation line per non-comment line.
    #[default]
    GridFile,
    Markdown,
    LaTeX,
}

impl SourceFormat {
    pub fn label(self) -> &'static str {
        match self {
            SourceFormat::GridFile => "grid",
            SourceFormat::Markdown => "markdown",
            SourceFormat::LaTeX => "latex",
        }
    }

    pub fn from_label(label: &str) -> Option<SourceFormat> {
        match label {
            "grid" | "gridfile" => Some(SourceFormat::GridFile),
            "markdown" | "md" => Some(SourceFormat::Markdown),
            "latex" | "tex" => Some(SourceFormat::LaTeX),
            _ => None,
        }
    }
}

/// How serious a scan issue is.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IssueSeverity {
    /// The occurrence could not be parsed and yielded no annotation.
    Error,
    /// The occurrence parsed but is discouraged or context-dependent.
    Warning,
}

/// A problem found while scanning, tied to a 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanIssue {
    pub line: usize,
    pub severity: IssueSeverity,
    pub message: String,
}

/// One extracted annotation with its source line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScannedAnnotation {
    pub line: usize,
    pub scope: ScopePath,
    pub record: AnnotationRecord,
}

/// Everything a scan produced: annotations in source order, issues, and the
/// structural segments the source revealed (LaTeX sectioning commands,
/// grid-file `@context` headers).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ScanReport {
    pub annotations: Vec<ScannedAnnotation>,
    pub issues: Vec<ScanIssue>,
    pub structure: Vec<ScopePath>,
}

impl ScanReport {
    /// The extracted (scope, record) pairs in source order.
    pub fn pairs(&self) -> Vec<(ScopePath, AnnotationRecord)> {
        self.annotations
            .iter()
            .map(|a| (a.scope.clone(), a.record.clone()))
            .collect()
    }

    pub fn has_errors(&self) -> bool {
        self.issues
            .iter()
            .any(|i| i.severity == IssueSeverity::Error)
    }

    /// Builds a document tree from the scan: structural segments first, so
    /// unannotated sections exist and can inherit, then the annotations
    /// (last-writer-wins on duplicates, reported as warnings). Unscoped
    /// records land at the document root.
    pub fn to_tree(&self) -> (crate::tree::DocumentTree, Vec<ScanIssue>) {
        let mut tree = crate::tree::DocumentTree::new();
        let mut issues = Vec::new();
        for path in &self.structure {
            match tree.ensure_path(path) {
                Ok(grown) => tree = grown,
                Err(err) => issues.push(ScanIssue {
                    line: 0,
                    severity: IssueSeverity::Warning,
                    message: format!("structural scope '{path}' not usable: {err}"),
                }),
            }
        }
        for scanned in &self.annotations {
            let scope = if scanned.scope.is_unscoped() {
                ScopePath::document()
            } else {
                scanned.scope.clone()
            };
            let grown = match tree.ensure_path(&scope) {
                Ok(grown) => grown,
                Err(err) => {
                    issues.push(ScanIssue {
                        line: scanned.line,
                        severity: IssueSeverity::Error,
                        message: format!("cannot place scope '{scope}': {err}"),
                    });
                    continue;
                }
            };
            match grown.attach_reporting(&scope, scanned.record.clone()) {
                Ok((next, replaced)) => {
                    if replaced {
                        issues.push(ScanIssue {
                            line: scanned.line,
                            severity: IssueSeverity::Warning,
                            message: format!(
                                "scope '{scope}' annotated more than once; keeping the last record"
                            ),
                        });
                    }
                    tree = next;
                }
                Err(err) => issues.push(ScanIssue {
                    line: scanned.line,
                    severity: IssueSeverity::Error,
                    message: format!("cannot place scope '{scope}': {err}"),
                }),
            }
        }
        (tree, issues)
    }

    fn observe_structure(&mut self, path: ScopePath) {
        if !self.structure.contains(&path) {
            self.structure.push(path);
        }
    }

    fn error(&mut self, line: usize, message: impl Into<String>) {
        self.issues.push(ScanIssue {
            line,
            severity: IssueSeverity::Error,
            message: message.into(),
        });
    }

    fn warning(&mut self, line: usize, message: impl Into<String>) {
        self.issues.push(ScanIssue {
            line,
            severity: IssueSeverity::Warning,
            message: message.into(),
        });
    }

    fn annotation(&mut self, line: usize, scope: ScopePath, record: AnnotationRecord) {
        self.annotations.push(ScannedAnnotation {
            line,
            scope,
            record,
        });
    }
}

/// Extracts every annotation in `source`, in source order.
pub fn scan_document(source: &str, format: SourceFormat) -> ScanReport {
    match format {
        SourceFormat::GridFile => scan_grid_file(source),
        SourceFormat::Markdown => scan_markdown(source),
        SourceFormat::LaTeX => scan_latex(source),
    }
}

/// Parses one annotation line: a bare grid binds to the document scope, a
/// scoped line to its stated scope.
fn parse_annotation_line(
    text: &str,
) -> Result<(ScopePath, AnnotationRecord), crate::error::GridError> {
    let trimmed = text.trim();
    if trimmed.starts_with('|') {
        let record = parse_grid(trimmed)?.with_scope(ScopePath::document());
        return Ok((ScopePath::document(), record));
    }
    parse_scoped_line(trimmed)
}

fn scan_grid_file(source: &str) -> ScanReport {
    let mut report = ScanReport::default();
    let mut context: Option<ScopePath> = None;

    for (idx, raw) in source.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix('@') {
            let (directive, arg) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
            if directive != "context" {
                report.error(line_no, format!("unknown directive @{directive}"));
                continue;
            }
            match ScopePath::parse_label(arg) {
                Ok(path) if path.has_indexless_segment() => {
                    report.error(line_no, "@context scope must carry explicit indices");
                }
                Ok(path) => {
                    report.observe_structure(path.clone());
                    context = Some(path);
                }
                Err(err) => report.error(line_no, format!("invalid @context scope: {err}")),
            }
            continue;
        }

        match parse_annotation_line(line) {
            Ok((scope, record)) => {
                let (resolved, warning) = resolve_in_context(&scope, context.as_ref());
                if let Some(message) = warning {
                    report.warning(line_no, message);
                }
                let record = record.with_scope(resolved.clone());
                report.annotation(line_no, resolved, record);
            }
            Err(err) => report.error(line_no, err.to_string()),
        }
    }
    report
}

/// Resolves a parsed scope against the active `@context`, if any.
///
/// Within a context, a bare label like `section` binds to the context's
/// segment of that kind, and indexed labels are placed relative to the
/// context (climbing until the structural ranks fit). Without a context,
/// indexless labels are kept as parsed and flagged as a warning: nothing in a
/// flat grid file says which section they mean.
fn resolve_in_context(
    scope: &ScopePath,
    context: Option<&ScopePath>,
) -> (ScopePath, Option<String>) {
    if scope.is_document_root() || scope.is_unscoped() {
        return (scope.clone(), None);
    }
    let Some(context) = context else {
        if scope.has_indexless_segment() {
            return (
                scope.clone(),
                Some(format!(
                    "scope '{scope}' has no index and no @context is in effect; \
it binds only if the document has exactly one such segment"
                )),
            );
        }
        return (scope.clone(), None);
    };

    let tail = &scope.segments()[1..];
    // A single bare label binds to the context's segment of the same kind.
    if tail.len() == 1 && tail[0].kind.takes_id() && tail[0].id.is_none() {
        if let Some(pos) = context
            .segments()
            .iter()
            .position(|s| s.kind == tail[0].kind)
        {
            let bound = ScopePath::from_segments(context.segments()[..=pos].to_vec())
                .expect("prefix of a valid path is valid");
            return (bound, None);
        }
        return (
            scope.clone(),
            Some(format!(
                "scope '{scope}' has no index and the @context has no {} segment",
                tail[0].kind
            )),
        );
    }

    // Indexed labels nest under the context: climb to the deepest context
    // segment that can contain the label's first segment, then append.
    let first_rank = tail[0].kind.rank();
    let mut base: Vec<ScopeSegment> = context
        .segments()
        .iter()
        .take_while(|s| s.kind.rank() < first_rank)
        .cloned()
        .collect();
    base.extend(tail.iter().cloned());
    match ScopePath::from_segments(base) {
        Ok(path) => (path, None),
        Err(err) => (
            scope.clone(),
            Some(format!("scope '{scope}' does not fit the @context: {err}")),
        ),
    }
}

fn scan_markdown(source: &str) -> ScanReport {
    let mut report = ScanReport::default();
    for (idx, line) in source.lines().enumerate() {
        let line_no = idx + 1;
        let mut rest = line;
        while let Some(start) = rest.find("<!--") {
            let after = &rest[start + 4..];
            let Some(end) = after.find("-->") else { break };
            let body = after[..end].trim();
            if let Some(directive) = body.strip_prefix("aidisclose:") {
                match parse_annotation_line(directive) {
                    Ok((scope, record)) => report.annotation(line_no, scope, record),
                    Err(err) => report.error(line_no, err.to_string()),
                }
            }
            rest = &after[end + 3..];
        }
    }
    report
}

fn latex_section_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"\\(chapter|section|subsection)\*?\s*\{").expect("valid regex"))
}

fn latex_command_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| {
        Regex::new(
            r"\\aitextsection\s*\{([^{}]*)\}\s*\{([^{}]*)\}\s*\{([^{}]*)\}\s*\{([^{}]*)\}\s*\{([^{}]*)\}\s*\{([^{}]*)\}",
        )
        .expect("valid regex")
    })
}

/// Tracks the position established by LaTeX sectioning commands.
#[derive(Debug, Default)]
struct SectionCursor {
    chapter: u32,
    section: u32,
    subsection: u32,
}

impl SectionCursor {
    fn enter(&mut self, kind: SegmentKind) {
        match kind {
            SegmentKind::Chapter => {
                self.chapter += 1;
                self.section = 0;
                self.subsection = 0;
            }
            SegmentKind::Section => {
                self.section += 1;
                self.subsection = 0;
            }
            SegmentKind::Subsection => {
                self.subsection += 1;
            }
            _ => {}
        }
    }

    fn scope(&self) -> ScopePath {
        let mut path = ScopePath::document();
        if self.chapter > 0 {
            path = path
                .push(SegmentKind::Chapter, Some(SegmentId::Index(self.chapter)))
                .expect("chapter under document");
        }
        if self.section > 0 {
            path = path
                .push(SegmentKind::Section, Some(SegmentId::Index(self.section)))
                .expect("section under chapter or document");
        }
        if self.subsection > 0 {
            path = path
                .push(
                    SegmentKind::Subsection,
                    Some(SegmentId::Index(self.subsection)),
                )
                .expect("subsection under section");
        }
        path
    }
}

fn scan_latex(source: &str) -> ScanReport {
    let mut report = ScanReport::default();
    let mut cursor = SectionCursor::default();

    for (idx, line) in source.lines().enumerate() {
        let line_no = idx + 1;

        // Split off the LaTeX comment, honoring escaped \%.
        let (code, comment) = split_latex_comment(line);

        if let Some(body) = comment.and_then(|c| c.trim().strip_prefix("aidisclose:")) {
            match parse_annotation_line(body) {
                Ok((scope, record)) => report.annotation(line_no, scope, record),
                Err(err) => report.error(line_no, err.to_string()),
            }
        }

        // Sectioning commands and \aitextsection occurrences, in positional
        // order, so a command after a heading lands in the new scope.
        let mut events: Vec<(usize, LatexEvent)> = Vec::new();
        for caps in latex_section_re().captures_iter(code) {
            let kind = match &caps[1] {
                "chapter" => SegmentKind::Chapter,
                "section" => SegmentKind::Section,
                _ => SegmentKind::Subsection,
            };
            events.push((
                caps.get(0).expect("match").start(),
                LatexEvent::Heading(kind),
            ));
        }
        for caps in latex_command_re().captures_iter(code) {
            let cells: Vec<String> = (1..=6).map(|i| caps[i].to_string()).collect();
            events.push((
                caps.get(0).expect("match").start(),
                LatexEvent::Annotation(cells),
            ));
        }
        events.sort_by_key(|(pos, _)| *pos);

        for (_, event) in events {
            match event {
                LatexEvent::Heading(kind) => {
                    cursor.enter(kind);
                    report.observe_structure(cursor.scope());
                }
                LatexEvent::Annotation(cells) => {
                    let grid = format!("|{}|", cells.join("|"));
                    match parse_grid(&grid) {
                        Ok(record) => {
                            let scope = cursor.scope();
                            report.annotation(line_no, scope.clone(), record.with_scope(scope));
                        }
                        Err(err) => report.error(line_no, err.to_string()),
                    }
                }
            }
        }
    }
    report
}

enum LatexEvent {
    Heading(SegmentKind),
    Annotation(Vec<String>),
}

/// Splits a LaTeX line at the first unescaped `%`.
fn split_latex_comment(line: &str) -> (&str, Option<&str>) {
    let bytes = line.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i] == b'%' && (i == 0 || bytes[i - 1] != b'\\') {
            return (&line[..i], Some(&line[i + 1..]));
        }
        i += 1;
    }
    (line, None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_file_with_scoped_lines_yields_two_pairs() {
        let source = "section: |F3|G4|E2|I3|C2|T2|\nparagraph 12: |F2|G1|E3|I1|C1|T1|\n";
        let report = scan_document(source, SourceFormat::GridFile);
        assert_eq!(report.annotations.len(), 2);
        assert_eq!(report.annotations[0].scope.to_string(), "section");
        assert_eq!(report.annotations[1].scope.to_string(), "paragraph 12");
        assert!(!report.has_errors());
        // The bare section label is context-dependent: flagged, not rejected.
        assert_eq!(report.issues.len(), 1);
        assert_eq!(report.issues[0].severity, IssueSeverity::Warning);
    }

    #[test]
    fn grid_file_comments_blanks_and_bare_grids() {
        let source = "# a comment\n\n|F4|G4|E3|I4|C2|T3|\n";
        let report = scan_document(source, SourceFormat::GridFile);
        assert_eq!(report.annotations.len(), 1);
        assert_eq!(report.annotations[0].line, 3);
        assert!(report.annotations[0].scope.is_document_root());
        assert!(report.issues.is_empty());
    }

    #[test]
    fn empty_file_scans_to_nothing() {
        let report = scan_document("", SourceFormat::GridFile);
        assert!(report.annotations.is_empty());
        assert!(report.issues.is_empty());
    }

    #[test]
    fn context_binds_bare_and_indexed_labels() {
        let source = "\
@context chapter 1/section 2
section: |F1|G1|E1|
paragraph 3: |F2|G2|E2|
section 5: |F3|G3|E3|
";
        let report = scan_document(source, SourceFormat::GridFile);
        assert!(!report.has_errors());
        let scopes: Vec<String> = report
            .annotations
            .iter()
            .map(|a| a.scope.to_string())
            .collect();
        assert_eq!(
            scopes,
            vec![
                "chapter 1/section 2",
                "chapter 1/section 2/paragraph 3",
                "chapter 1/section 5",
            ]
        );
        assert!(report.issues.is_empty());
    }

    #[test]
    fn errors_carry_line_numbers_and_scanning_continues() {
        let source = "|F9|G0|E0|\nsection 1: |F1|G1|E1|\nbroken\n";
        let report = scan_document(source, SourceFormat::GridFile);
        assert_eq!(report.annotations.len(), 1);
        assert_eq!(report.annotations[0].line, 2);
        let error_lines: Vec<usize> = report
            .issues
            .iter()
            .filter(|i| i.severity == IssueSeverity::Error)
            .map(|i| i.line)
            .collect();
        assert_eq!(error_lines, vec![1, 3]);
    }

    #[test]
    fn markdown_comment_directives() {
        let source = "\
# Title

<!-- aidisclose: document: |F4|G4|E3|I4|C2|T3| -->

Some prose. <!-- aidisclose: paragraph 2: |F1|G0|E3| --> More prose.
<!-- an unrelated comment -->
";
        let report = scan_document(source, SourceFormat::Markdown);
        assert_eq!(report.annotations.len(), 2);
        assert!(report.annotations[0].scope.is_document_root());
        assert_eq!(report.annotations[1].scope.to_string(), "paragraph 2");
        assert_eq!(report.annotations[1].line, 5);
        assert!(report.issues.is_empty());
    }

    #[test]
    fn latex_command_with_section_inference() {
        let source = "\
\\section{Introduction}
\\aitextsection{F4}{G4}{E2}{I4}{C2}{T2}
\\section{Methods}
\\subsection{Setup}
\\aitextsection{F1}{G0}{E3}{I1}{C0}{T1}
";
        let report = scan_document(source, SourceFormat::LaTeX);
        assert_eq!(report.annotations.len(), 2);
        assert_eq!(report.annotations[0].scope.to_string(), "section 1");
        assert!(report.annotations[0].record.is_extended());
        assert_eq!(
            report.annotations[1].scope.to_string(),
            "section 2/subsection 1"
        );
    }

    #[test]
    fn latex_annotation_before_any_heading_is_document_scope() {
        let report = scan_document(
            "\\aitextsection{F4}{G4}{E2}{I4}{C2}{T2}\n",
            SourceFormat::LaTeX,
        );
        assert_eq!(report.annotations.len(), 1);
        assert!(report.annotations[0].scope.is_document_root());
    }

    #[test]
    fn latex_comment_directives_and_commented_out_commands() {
        let source = "\
% aidisclose: section 2: |F3|G4|E2|I3|C2|T2|
text % aidisclose: |F0|G0|E0|
% \\aitextsection{F4}{G4}{E2}{I4}{C2}{T2} is ignored as a command
100\\% done
";
        let report = scan_document(source, SourceFormat::LaTeX);
        assert_eq!(report.annotations.len(), 2);
        assert_eq!(report.annotations[0].scope.to_string(), "section 2");
        assert!(report.annotations[1].scope.is_document_root());
    }

    #[test]
    fn latex_bad_cells_are_reported_with_lines() {
        let report = scan_document(
            "\\aitextsection{F9}{G4}{E2}{I4}{C2}{T2}\n",
            SourceFormat::LaTeX,
        );
        assert!(report.annotations.is_empty());
        assert_eq!(report.issues.len(), 1);
        assert_eq!(report.issues[0].line, 1);
    }

    #[test]
    fn scan_recovers_grid_file_written_by_renderer() {
        let pairs = vec![
            crate::grid::parse_scoped_line("section 1: |F3|G4|E2|I3|C2|T2|").unwrap(),
            crate::grid::parse_scoped_line("paragraph 12: |F2|G1|E3|I1|C1|T1|").unwrap(),
            {
                let record = parse_grid("|F1|G0|E3|")
                    .unwrap()
                    .with_scope(ScopePath::document());
                (ScopePath::document(), record)
            },
        ];
        let file = crate::render::to_grid_file(&pairs);
        let report = scan_document(&file, SourceFormat::GridFile);
        assert!(!report.has_errors());
        assert_eq!(report.pairs(), pairs);
    }
}
