//! The document hierarchy: attachment, inheritance, and aggregation.
//!
//! A [`DocumentTree`] is an immutable value; every mutating operation returns
//! a new tree and leaves the input untouched. Inheritance follows the
//! nearest-annotated-ancestor rule: a segment with no record of its own is
//! governed by the closest ancestor that carries one, the way a document-level
//! disclosure is conventionally read as covering the whole text.

use std::collections::BTreeMap;

use crate::error::TreeError;
use crate::facet::{Annotation, CoreAnnotation, ExtendedAnnotation, FacetKind};
use crate::record::{AnnotationRecord, EvidenceRef, ToolRef};
use crate::scope::{ScopePath, ScopeSegment, SegmentId, SegmentKind};

/// One node in the document hierarchy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegmentNode {
    pub kind: SegmentKind,
    pub id: Option<SegmentId>,
    pub record: Option<AnnotationRecord>,
    pub children: Vec<SegmentNode>,
}

impl SegmentNode {
    fn new(kind: SegmentKind, id: Option<SegmentId>) -> SegmentNode {
        SegmentNode {
            kind,
            id,
            record: None,
            children: Vec::new(),
        }
    }

    fn find_child(&self, segment: &ScopeSegment) -> Result<Option<usize>, ()> {
        if segment.kind.takes_id() && segment.id.is_none() {
            // A bare label binds to the one child of that kind, if unique.
            let matches: Vec<usize> = self
                .children
                .iter()
                .enumerate()
                .filter(|(_, c)| c.kind == segment.kind)
                .map(|(i, _)| i)
                .collect();
            return match matches.len() {
                0 => Ok(None),
                1 => Ok(Some(matches[0])),
                _ => Err(()),
            };
        }
        Ok(self
            .children
            .iter()
            .position(|c| c.kind == segment.kind && c.id == segment.id))
    }
}

/// How segment annotations combine into a document summary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AggregationPolicy {
    /// Per-facet maximum over every attached record: the summary never
    /// understates AI involvement anywhere in the document.
    #[default]
    MaxPerFacet,
}

/// A note produced while assembling a tree from scanned annotations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttachIssue {
    /// Index into the input annotation list.
    pub index: usize,
    pub scope: ScopePath,
    pub message: String,
}

/// An immutable document hierarchy carrying annotation records.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DocumentTree {
    root: SegmentNode,
}

impl Default for DocumentTree {
    fn default() -> Self {
        DocumentTree::new()
    }
}

impl DocumentTree {
    /// A tree holding only the document root.
    pub fn new() -> DocumentTree {
        DocumentTree {
            root: SegmentNode::new(SegmentKind::Document, None),
        }
    }

    pub fn root(&self) -> &SegmentNode {
        &self.root
    }

    /// The node at `scope`, if it resolves.
    pub fn node_at(&self, scope: &ScopePath) -> Result<&SegmentNode, TreeError> {
        if scope.is_unscoped() {
            return Err(TreeError::Unscoped);
        }
        let mut node = &self.root;
        for segment in &scope.segments()[1..] {
            let idx = node
                .find_child(segment)
                .map_err(|()| TreeError::AmbiguousScope(scope.clone()))?
                .ok_or_else(|| TreeError::ScopeNotFound(scope.clone()))?;
            node = &node.children[idx];
        }
        Ok(node)
    }

    /// Adds a child segment under `parent`, returning the extended tree.
    pub fn insert_child(
        &self,
        parent: &ScopePath,
        kind: SegmentKind,
        id: Option<SegmentId>,
    ) -> Result<DocumentTree, TreeError> {
        let mut tree = self.clone();
        let node = tree.node_mut(parent)?;
        node.children.push(SegmentNode::new(kind, id));
        Ok(tree)
    }

    fn node_mut(&mut self, scope: &ScopePath) -> Result<&mut SegmentNode, TreeError> {
        if scope.is_unscoped() {
            return Err(TreeError::Unscoped);
        }
        let mut node = &mut self.root;
        for segment in &scope.segments()[1..] {
            let idx = node
                .find_child(segment)
                .map_err(|()| TreeError::AmbiguousScope(scope.clone()))?
                .ok_or_else(|| TreeError::ScopeNotFound(scope.clone()))?;
            node = &mut node.children[idx];
        }
        Ok(node)
    }

    /// Creates any missing nodes along `scope`, binding bare labels to
    /// existing unique nodes where possible.
    pub fn ensure_path(&self, scope: &ScopePath) -> Result<DocumentTree, TreeError> {
        if scope.is_unscoped() {
            return Err(TreeError::Unscoped);
        }
        let mut tree = self.clone();
        let mut node = &mut tree.root;
        for segment in &scope.segments()[1..] {
            let idx = match node
                .find_child(segment)
                .map_err(|()| TreeError::AmbiguousScope(scope.clone()))?
            {
                Some(idx) => idx,
                None => {
                    node.children
                        .push(SegmentNode::new(segment.kind, segment.id.clone()));
                    node.children.len() - 1
                }
            };
            node = &mut node.children[idx];
        }
        Ok(tree)
    }

    /// Returns a tree identical to this one except that the node at `scope`
    /// carries `record`, replacing any prior record there.
    pub fn attach(
        &self,
        scope: &ScopePath,
        record: AnnotationRecord,
    ) -> Result<DocumentTree, TreeError> {
        let mut tree = self.clone();
        let node = tree.node_mut(scope)?;
        node.record = Some(record);
        Ok(tree)
    }

    /// Like [`DocumentTree::attach`], also reporting whether a prior record
    /// was replaced (last-writer-wins).
    pub fn attach_reporting(
        &self,
        scope: &ScopePath,
        record: AnnotationRecord,
    ) -> Result<(DocumentTree, bool), TreeError> {
        let mut tree = self.clone();
        let node = tree.node_mut(scope)?;
        let replaced = node.record.is_some();
        node.record = Some(record);
        Ok((tree, replaced))
    }

    /// Builds a tree from scanned annotations, creating segments on demand.
    ///
    /// Duplicate attachments to one node follow last-writer-wins and are
    /// reported as issues; records are never silently merged. Unscoped
    /// records are treated as document-level.
    pub fn from_annotations(
        annotations: &[(ScopePath, AnnotationRecord)],
    ) -> (DocumentTree, Vec<AttachIssue>) {
        let mut tree = DocumentTree::new();
        let mut issues = Vec::new();
        for (index, (scope, record)) in annotations.iter().enumerate() {
            let scope = if scope.is_unscoped() {
                ScopePath::document()
            } else {
                scope.clone()
            };
            let grown = match tree.ensure_path(&scope) {
                Ok(t) => t,
                Err(err) => {
                    issues.push(AttachIssue {
                        index,
                        scope,
                        message: err.to_string(),
                    });
                    continue;
                }
            };
            match grown.attach_reporting(&scope, record.clone()) {
                Ok((next, replaced)) => {
                    if replaced {
                        issues.push(AttachIssue {
                            index,
                            scope: scope.clone(),
                            message: format!(
                                "scope '{scope}' annotated more than once; keeping the last record"
                            ),
                        });
                    }
                    tree = next;
                }
                Err(err) => {
                    issues.push(AttachIssue {
                        index,
                        scope,
                        message: err.to_string(),
                    });
                }
            }
        }
        (tree, issues)
    }

    /// The record governing `scope`: its own, else the nearest annotated
    /// ancestor's, else `None`.
    pub fn resolve_effective(
        &self,
        scope: &ScopePath,
    ) -> Result<Option<&AnnotationRecord>, TreeError> {
        if scope.is_unscoped() {
            return Err(TreeError::Unscoped);
        }
        let mut effective = None;
        let mut node = &self.root;
        if let Some(record) = &node.record {
            effective = Some(record);
        }
        for segment in &scope.segments()[1..] {
            let idx = node
                .find_child(segment)
                .map_err(|()| TreeError::AmbiguousScope(scope.clone()))?
                .ok_or_else(|| TreeError::ScopeNotFound(scope.clone()))?;
            node = &node.children[idx];
            if let Some(record) = &node.record {
                effective = Some(record);
            }
        }
        Ok(effective)
    }

    /// Every attached record with its scope, in depth-first document order.
    pub fn annotations(&self) -> Vec<(ScopePath, &AnnotationRecord)> {
        fn walk<'t>(
            node: &'t SegmentNode,
            path: &ScopePath,
            out: &mut Vec<(ScopePath, &'t AnnotationRecord)>,
        ) {
            if let Some(record) = &node.record {
                out.push((path.clone(), record));
            }
            for child in &node.children {
                let child_path = path
                    .push(child.kind, child.id.clone())
                    .expect("tree nodes satisfy path invariants");
                walk(child, &child_path, out);
            }
        }
        let mut out = Vec::new();
        walk(&self.root, &ScopePath::document(), &mut out);
        out
    }

    /// Summarizes every attached record into a single document-scope record.
    pub fn aggregate(&self, policy: AggregationPolicy) -> Result<AnnotationRecord, TreeError> {
        let records: Vec<&AnnotationRecord> =
            self.annotations().into_iter().map(|(_, r)| r).collect();
        aggregate_records(records.into_iter(), policy)
    }
}

/// Folds a set of records into one document-scope summary record.
///
/// Under [`AggregationPolicy::MaxPerFacet`] each facet of the result is the
/// maximum level of that facet over the inputs. Core records abstain on
/// Intent, Control and Traceability; the result is extended iff any input is.
/// Qualifiers are dropped (the model defines no qualifier algebra); tools and
/// evidence are unioned, deduplicated by cite key and description.
pub fn aggregate_records<'a>(
    records: impl Iterator<Item = &'a AnnotationRecord>,
    policy: AggregationPolicy,
) -> Result<AnnotationRecord, TreeError> {
    let AggregationPolicy::MaxPerFacet = policy;

    let mut max_levels: BTreeMap<char, u8> = BTreeMap::new();
    let mut any = false;
    let mut any_extended = false;
    let mut tools: Vec<ToolRef> = Vec::new();
    let mut evidence: Vec<EvidenceRef> = Vec::new();

    for record in records {
        any = true;
        any_extended |= record.is_extended();
        for fl in record.levels.facet_levels() {
            let slot = max_levels.entry(fl.facet().code()).or_insert(0);
            *slot = (*slot).max(fl.level());
        }
        for tool in &record.tools {
            if !tools.iter().any(|t| t.cite_key == tool.cite_key) {
                tools.push(tool.clone());
            }
        }
        for item in &record.evidence {
            if !evidence.iter().any(|e| e.description == item.description) {
                evidence.push(item.clone());
            }
        }
    }
    if !any {
        return Err(TreeError::NoAnnotations);
    }

    let level = |facet: FacetKind| max_levels.get(&facet.code()).copied().unwrap_or(0);
    let levels: Annotation = if any_extended {
        ExtendedAnnotation::new(
            level(FacetKind::Form),
            level(FacetKind::Generation),
            level(FacetKind::Evaluation),
            level(FacetKind::Intent),
            level(FacetKind::Control),
            level(FacetKind::Traceability),
        )
        .expect("maxima of valid levels stay in range")
        .into()
    } else {
        CoreAnnotation::new(
            level(FacetKind::Form),
            level(FacetKind::Generation),
            level(FacetKind::Evaluation),
        )
        .expect("maxima of valid levels stay in range")
        .into()
    };

    Ok(AnnotationRecord::new(levels)
        .with_scope(ScopePath::document())
        .with_tools(tools)
        .with_evidence(evidence))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::parse_grid;

    fn scope(label: &str) -> ScopePath {
        ScopePath::parse_label(label).unwrap()
    }

    fn three_section_tree() -> DocumentTree {
        let mut tree = DocumentTree::new();
        for i in 1..=3 {
            tree = tree
                .insert_child(
                    &scope("document"),
                    SegmentKind::Section,
                    Some(SegmentId::Index(i)),
                )
                .unwrap();
        }
        tree
    }

    #[test]
    fn attach_replaces_and_preserves_input() {
        let tree = DocumentTree::new();
        let record = parse_grid("|F4|G4|E3|I4|C2|T3|").unwrap();
        let annotated = tree.attach(&scope("document"), record.clone()).unwrap();
        assert_eq!(annotated.root().record.as_ref(), Some(&record));
        // Value semantics: the original tree is untouched.
        assert!(tree.root().record.is_none());
    }

    #[test]
    fn attach_to_missing_scope_fails() {
        let tree = three_section_tree();
        let record = parse_grid("|F0|G0|E0|").unwrap();
        let err = tree.attach(&scope("section 99"), record).unwrap_err();
        assert!(matches!(err, TreeError::ScopeNotFound(_)));
    }

    #[test]
    fn paragraph_override_beats_document_record() {
        let doc_record = parse_grid("|F4|G4|E3|I4|C2|T3|").unwrap();
        let para_record = parse_grid("|F2|G1|E3|I1|C1|T1|").unwrap();

        let tree = three_section_tree()
            .insert_child(
                &scope("section 1"),
                SegmentKind::Paragraph,
                Some(SegmentId::Index(3)),
            )
            .unwrap()
            .insert_child(
                &scope("document"),
                SegmentKind::Paragraph,
                Some(SegmentId::Index(12)),
            )
            .unwrap()
            .attach(&scope("document"), doc_record.clone())
            .unwrap()
            .attach(&scope("paragraph 12"), para_record.clone())
            .unwrap();

        // Unannotated paragraph inherits from the document root.
        let inherited = tree
            .resolve_effective(&scope("section 1/paragraph 3"))
            .unwrap();
        assert_eq!(inherited, Some(&doc_record));
        // Locally annotated paragraph wins.
        let local = tree.resolve_effective(&scope("paragraph 12")).unwrap();
        assert_eq!(local, Some(&para_record));
    }

    #[test]
    fn empty_tree_resolves_to_none() {
        let tree = three_section_tree();
        assert_eq!(tree.resolve_effective(&scope("document")).unwrap(), None);
        assert_eq!(tree.resolve_effective(&scope("section 2")).unwrap(), None);
    }

    #[test]
    fn bare_label_binds_to_unique_node_only() {
        let one_section = DocumentTree::new()
            .insert_child(
                &scope("document"),
                SegmentKind::Section,
                Some(SegmentId::Index(1)),
            )
            .unwrap();
        assert!(one_section.resolve_effective(&scope("section")).is_ok());

        let three = three_section_tree();
        assert!(matches!(
            three.resolve_effective(&scope("section")),
            Err(TreeError::AmbiguousScope(_))
        ));
    }

    #[test]
    fn aggregate_single_record_is_identity_at_document_scope() {
        let record = parse_grid("|F4|G4|E3|I4|C2|T3|").unwrap();
        let tree = DocumentTree::new()
            .attach(&scope("document"), record.clone())
            .unwrap();
        let summary = tree.aggregate(AggregationPolicy::MaxPerFacet).unwrap();
        assert_eq!(summary.levels, record.levels);
        assert!(summary.scope.is_document_root());
    }

    #[test]
    fn aggregate_takes_per_facet_maximum() {
        let a = parse_grid("|F3|G4|E2|I3|C2|T2|").unwrap();
        let b = parse_grid("|F2|G1|E3|I1|C1|T1|").unwrap();
        let summary =
            aggregate_records([&a, &b].into_iter(), AggregationPolicy::MaxPerFacet).unwrap();
        assert_eq!(crate::grid::serialize_grid(&summary), "|F3|G4|E3|I3|C2|T2|");
    }

    #[test]
    fn core_records_abstain_on_extended_facets() {
        let core = parse_grid("|F1|G0|E4|").unwrap();
        let ext = parse_grid("|F0|G5|E0|I4|C4|T0|").unwrap();
        let summary =
            aggregate_records([&core, &ext].into_iter(), AggregationPolicy::MaxPerFacet).unwrap();
        assert!(summary.is_extended());
        assert_eq!(crate::grid::serialize_grid(&summary), "|F1|G5|E4|I4|C4|T0|");
    }

    #[test]
    fn aggregate_of_core_records_stays_core() {
        let a = parse_grid("|F1|G0|E4|").unwrap();
        let b = parse_grid("|F0|G2|E1|").unwrap();
        let summary =
            aggregate_records([&a, &b].into_iter(), AggregationPolicy::MaxPerFacet).unwrap();
        assert!(!summary.is_extended());
        assert_eq!(crate::grid::serialize_grid(&summary), "|F1|G2|E4|");
    }

    #[test]
    fn aggregate_requires_annotations() {
        let tree = three_section_tree();
        assert!(matches!(
            tree.aggregate(AggregationPolicy::MaxPerFacet),
            Err(TreeError::NoAnnotations)
        ));
    }

    #[test]
    fn aggregate_is_idempotent_and_permutation_invariant() {
        let a = parse_grid("|F3|G4|E2|I3|C2|T2|").unwrap();
        let b = parse_grid("|F2|G1|E3|I1|C1|T1|").unwrap();
        let c = parse_grid("|F1|G5|E0|").unwrap();

        let forward =
            aggregate_records([&a, &b, &c].into_iter(), AggregationPolicy::MaxPerFacet).unwrap();
        let reversed =
            aggregate_records([&c, &b, &a].into_iter(), AggregationPolicy::MaxPerFacet).unwrap();
        assert_eq!(forward.levels, reversed.levels);

        let again =
            aggregate_records([&forward].into_iter(), AggregationPolicy::MaxPerFacet).unwrap();
        assert_eq!(again.levels, forward.levels);
    }

    #[test]
    fn aggregate_unions_tools_and_evidence() {
        let tool = ToolRef {
            author: "OpenAI".into(),
            title: "GPT Models".into(),
            year: 2026,
            url: "https://developers.openai.com".into(),
            accessed: "2026-04-25".into(),
            cite_key: "openai2026".into(),
        };
        let a = parse_grid("|F1|G2|E3|")
            .unwrap()
            .with_tools(vec![tool.clone()])
            .with_evidence(vec![EvidenceRef::new("prompt log", None)]);
        let b = parse_grid("|F2|G1|E0|")
            .unwrap()
            .with_tools(vec![tool.clone()])
            .with_evidence(vec![EvidenceRef::new("prompt log", None)]);
        let summary =
            aggregate_records([&a, &b].into_iter(), AggregationPolicy::MaxPerFacet).unwrap();
        assert_eq!(summary.tools.len(), 1);
        assert_eq!(summary.evidence.len(), 1);
    }

    #[test]
    fn qualifiers_are_dropped_by_aggregation() {
        let a = parse_grid("|F4|G4|E2|I4Z|C2|T2|").unwrap();
        let summary = aggregate_records([&a].into_iter(), AggregationPolicy::MaxPerFacet).unwrap();
        assert!(summary.qualifiers.is_empty());
    }

    #[test]
    fn from_annotations_reports_duplicates_last_writer_wins() {
        let first = parse_grid("|F1|G1|E1|").unwrap();
        let second = parse_grid("|F2|G2|E2|").unwrap();
        let pairs = vec![
            (scope("document"), first),
            (scope("document"), second.clone()),
        ];
        let (tree, issues) = DocumentTree::from_annotations(&pairs);
        assert_eq!(issues.len(), 1);
        assert_eq!(issues[0].index, 1);
        assert_eq!(tree.root().record.as_ref(), Some(&second));
    }

    #[test]
    fn from_annotations_treats_unscoped_as_document() {
        let record = parse_grid("|F4|G4|E3|I4|C2|T3|").unwrap();
        let pairs = vec![(ScopePath::unscoped(), record.clone())];
        let (tree, issues) = DocumentTree::from_annotations(&pairs);
        assert!(issues.is_empty());
        assert_eq!(
            tree.resolve_effective(&scope("document"))
                .unwrap()
                .map(|r| &r.levels),
            Some(&record.levels)
        );
    }
}
