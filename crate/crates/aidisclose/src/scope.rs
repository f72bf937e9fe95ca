//! Locations in the document hierarchy.
//!
//! A [`ScopePath`] names the structural unit an annotation describes, from the
//! whole document down to a single paragraph, figure, table, code fragment or
//! the reference list. Paths are written as labels like `paragraph 12` or
//! `chapter 2/section 3`; the leading `document` segment is implicit.

use std::fmt;
use std::str::FromStr;

use crate::error::ScopeError;

/// Kinds of document segments, from the whole document down to leaf units.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SegmentKind {
    Document,
    Chapter,
    Section,
    Subsection,
    Paragraph,
    Figure,
    Table,
    Code,
    References,
}

impl SegmentKind {
    pub const ALL: [SegmentKind; 9] = [
        SegmentKind::Document,
        SegmentKind::Chapter,
        SegmentKind::Section,
        SegmentKind::Subsection,
        SegmentKind::Paragraph,
        SegmentKind::Figure,
        SegmentKind::Table,
        SegmentKind::Code,
        SegmentKind::References,
    ];

    /// Lowercase label used in scope grammar and displays.
    pub fn label(self) -> &'static str {
        match self {
            SegmentKind::Document => "document",
            SegmentKind::Chapter => "chapter",
            SegmentKind::Section => "section",
            SegmentKind::Subsection => "subsection",
            SegmentKind::Paragraph => "paragraph",
            SegmentKind::Figure => "figure",
            SegmentKind::Table => "table",
            SegmentKind::Code => "code",
            SegmentKind::References => "references",
        }
    }

    /// Structural depth: document contains chapters, chapters contain
    /// sections, and so on down to the leaf units at rank 4.
    pub fn rank(self) -> u8 {
        match self {
            SegmentKind::Document => 0,
            SegmentKind::Chapter => 1,
            SegmentKind::Section => 2,
            SegmentKind::Subsection => 3,
            SegmentKind::Paragraph
            | SegmentKind::Figure
            | SegmentKind::Table
            | SegmentKind::Code
            | SegmentKind::References => 4,
        }
    }

    /// Leaf segments cannot contain further segments.
    pub fn is_leaf(self) -> bool {
        self.rank() == 4
    }

    /// Whether the kind accepts an index or identifier (`section 3`,
    /// `subsection intro`). `document` and `references` never do.
    pub fn takes_id(self) -> bool {
        !matches!(self, SegmentKind::Document | SegmentKind::References)
    }

    pub fn from_label(label: &str) -> Option<SegmentKind> {
        SegmentKind::ALL
            .iter()
            .copied()
            .find(|k| k.label() == label)
    }
}

impl fmt::Display for SegmentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A segment's index (`paragraph 12`) or identifier (`subsection intro`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SegmentId {
    Index(u32),
    Name(String),
}

impl SegmentId {
    /// Parses a digits-only token as an index, anything else as a name.
    /// Names are restricted to alphanumerics plus `_ - .`.
    pub fn parse(token: &str) -> Result<SegmentId, ScopeError> {
        if token.is_empty() {
            return Err(ScopeError::InvalidId(token.to_string()));
        }
        if token.bytes().all(|b| b.is_ascii_digit()) {
            return token
                .parse::<u32>()
                .map(SegmentId::Index)
                .map_err(|_| ScopeError::InvalidId(token.to_string()));
        }
        let ok = token
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.'));
        if ok {
            Ok(SegmentId::Name(token.to_string()))
        } else {
            Err(ScopeError::InvalidId(token.to_string()))
        }
    }
}

impl fmt::Display for SegmentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SegmentId::Index(n) => write!(f, "{n}"),
            SegmentId::Name(s) => f.write_str(s),
        }
    }
}

/// One step in a scope path: a kind plus an optional index or identifier.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ScopeSegment {
    pub kind: SegmentKind,
    pub id: Option<SegmentId>,
}

impl ScopeSegment {
    pub fn new(kind: SegmentKind, id: Option<SegmentId>) -> Result<ScopeSegment, ScopeError> {
        if id.is_some() && !kind.takes_id() {
            return Err(ScopeError::IdNotAllowed(kind.label()));
        }
        Ok(ScopeSegment { kind, id })
    }

    fn parse(text: &str) -> Result<ScopeSegment, ScopeError> {
        let text = text.trim();
        if text.is_empty() {
            return Err(ScopeError::EmptyLabel);
        }
        let (kind_token, id_token) = match text.split_once(char::is_whitespace) {
            Some((k, rest)) => (k, Some(rest.trim())),
            None => (text, None),
        };
        let kind = SegmentKind::from_label(kind_token)
            .ok_or_else(|| ScopeError::UnknownKind(kind_token.to_string()))?;
        let id = id_token.map(SegmentId::parse).transpose()?;
        ScopeSegment::new(kind, id)
    }
}

impl fmt::Display for ScopeSegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.id {
            Some(id) => write!(f, "{} {}", self.kind, id),
            None => write!(f, "{}", self.kind),
        }
    }
}

/// A location in the document hierarchy.
///
/// The empty path denotes "unscoped": an annotation not yet attached to any
/// structural unit. A non-empty path always starts at the document root and
/// descends in structural rank.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ScopePath {
    segments: Vec<ScopeSegment>,
}

impl ScopePath {
    /// The unscoped (empty) path.
    pub fn unscoped() -> ScopePath {
        ScopePath {
            segments: Vec::new(),
        }
    }

    /// The document root path.
    pub fn document() -> ScopePath {
        ScopePath {
            segments: vec![ScopeSegment {
                kind: SegmentKind::Document,
                id: None,
            }],
        }
    }

    /// Builds a path from segments, enforcing the structural invariants:
    /// the first segment is `document`, ranks never decrease, leaves are
    /// terminal.
    pub fn from_segments(segments: Vec<ScopeSegment>) -> Result<ScopePath, ScopeError> {
        if let Some(first) = segments.first() {
            if first.kind != SegmentKind::Document {
                return Err(ScopeError::DocumentNotFirst);
            }
        }
        for window in segments.windows(2) {
            let (outer, inner) = (&window[0], &window[1]);
            if inner.kind == SegmentKind::Document {
                return Err(ScopeError::DocumentNotFirst);
            }
            if outer.kind.is_leaf() {
                return Err(ScopeError::LeafNotLast(outer.to_string()));
            }
            if inner.kind.rank() < outer.kind.rank() {
                return Err(ScopeError::RankOrder {
                    outer: outer.to_string(),
                    inner: inner.to_string(),
                });
            }
        }
        Ok(ScopePath { segments })
    }

    /// Extends the path by one segment, enforcing the same invariants as
    /// [`ScopePath::from_segments`].
    pub fn push(&self, kind: SegmentKind, id: Option<SegmentId>) -> Result<ScopePath, ScopeError> {
        let mut segments = self.segments.clone();
        segments.push(ScopeSegment::new(kind, id)?);
        ScopePath::from_segments(segments)
    }

    pub fn is_unscoped(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn is_document_root(&self) -> bool {
        self.segments.len() == 1 && self.segments[0].kind == SegmentKind::Document
    }

    pub fn segments(&self) -> &[ScopeSegment] {
        &self.segments
    }

    pub fn last(&self) -> Option<&ScopeSegment> {
        self.segments.last()
    }

    /// The enclosing path, or `None` for the root and for unscoped paths.
    pub fn parent(&self) -> Option<ScopePath> {
        if self.segments.len() <= 1 {
            return None;
        }
        Some(ScopePath {
            segments: self.segments[..self.segments.len() - 1].to_vec(),
        })
    }

    /// True when any segment that takes an index lacks one. Such paths come
    /// from bare labels like `section:` and only bind once context is known.
    pub fn has_indexless_segment(&self) -> bool {
        self.segments
            .iter()
            .any(|s| s.kind.takes_id() && s.id.is_none())
    }

    /// Parses a scope label.
    ///
    /// Accepts the literal `unscoped`, the single label `document`, and
    /// `/`-separated descents like `chapter 2/section 3`. A missing leading
    /// `document` segment is implied.
    pub fn parse_label(text: &str) -> Result<ScopePath, ScopeError> {
        let text = text.trim();
        if text.is_empty() {
            return Err(ScopeError::EmptyLabel);
        }
        if text == "unscoped" {
            return Ok(ScopePath::unscoped());
        }
        let mut segments = Vec::new();
        for part in text.split('/') {
            segments.push(ScopeSegment::parse(part)?);
        }
        if segments.first().map(|s| s.kind) != Some(SegmentKind::Document) {
            let mut rooted = Vec::with_capacity(segments.len() + 1);
            rooted.push(ScopeSegment {
                kind: SegmentKind::Document,
                id: None,
            });
            rooted.extend(segments);
            segments = rooted;
        }
        ScopePath::from_segments(segments)
    }
}

impl FromStr for ScopePath {
    type Err = ScopeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ScopePath::parse_label(s)
    }
}

impl fmt::Display for ScopePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.segments.is_empty() {
            return f.write_str("unscoped");
        }
        if self.is_document_root() {
            return f.write_str("document");
        }
        // The implicit document root is dropped from the label.
        let mut first = true;
        for segment in &self.segments[1..] {
            if !first {
                f.write_str("/")?;
            }
            write!(f, "{segment}")?;
            first = false;
        }
        Ok(())
    }
}
