//! Non-prose renderings: SVG badges, the LaTeX command, HTML snippets, the
//! JSON export, and the grid-file writer.
//!
//! Every rendering embeds the canonical grid string of its record verbatim,
//! so the textual representation survives whatever medium the annotation
//! travels through. All renderers are deterministic pure functions.

use serde::{Deserialize, Serialize};

use crate::disclosure::{default_registry, DisclosureProfile};
use crate::error::{ImportError, RenderError};
use crate::facet::{
    Annotation, CoreAnnotation, ExtendedAnnotation, FacetKind, FacetLevel, Qualifier,
};
use crate::grid::{grid_tokens, parse_grid, serialize_grid, GridToken};
use crate::record::{AnnotationRecord, EvidenceRef, ToolRef};
use crate::scope::ScopePath;

/// Badge layout variants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BadgeStyle {
    /// One boxed cell per facet showing the cell code.
    #[default]
    Compact,
    /// Adds the facet name under each cell.
    Labeled,
}

/// The resolved geometry and cells of a badge, prior to SVG emission.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BadgeSpec {
    pub tokens: Vec<GridToken>,
    pub style: BadgeStyle,
    pub width: u32,
    pub height: u32,
    cell_width: u32,
    cell_height: u32,
    grid: String,
}

impl BadgeSpec {
    pub fn for_record(record: &AnnotationRecord, style: BadgeStyle) -> BadgeSpec {
        let tokens = grid_tokens(record);
        let (cell_width, cell_height) = match style {
            BadgeStyle::Compact => (36, 24),
            BadgeStyle::Labeled => (88, 40),
        };
        let width = cell_width * tokens.len() as u32;
        BadgeSpec {
            width,
            height: cell_height,
            cell_width,
            cell_height,
            grid: serialize_grid(record),
            tokens,
            style,
        }
    }

    /// Emits the badge as an SVG 1.1 document. The `<title>` element carries
    /// the canonical grid string as the badge's accessible text.
    pub fn to_svg(&self) -> String {
        let mut svg = String::new();
        svg.push_str(&format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" \
viewBox=\"0 0 {w} {h}\" role=\"img\" aria-label=\"{grid}\">\n",
            w = self.width,
            h = self.height,
            grid = escape_xml(&self.grid),
        ));
        svg.push_str(&format!("  <title>{}</title>\n", escape_xml(&self.grid)));
        for (i, token) in self.tokens.iter().enumerate() {
            let x = self.cell_width * i as u32;
            svg.push_str(&format!(
                "  <rect x=\"{x}\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"#f6f8fa\" \
stroke=\"#24292f\" stroke-width=\"1\"/>\n",
                self.cell_width, self.cell_height,
            ));
            let code_y = match self.style {
                BadgeStyle::Compact => 16,
                BadgeStyle::Labeled => 18,
            };
            svg.push_str(&format!(
                "  <text x=\"{}\" y=\"{code_y}\" font-family=\"monospace\" font-size=\"12\" \
text-anchor=\"middle\" fill=\"#24292f\">{}</text>\n",
                x + self.cell_width / 2,
                escape_xml(&token.code()),
            ));
            if self.style == BadgeStyle::Labeled {
                svg.push_str(&format!(
                    "  <text x=\"{}\" y=\"32\" font-family=\"sans-serif\" font-size=\"9\" \
text-anchor=\"middle\" fill=\"#57606a\">{}</text>\n",
                    x + self.cell_width / 2,
                    token.facet.name(),
                ));
            }
        }
        svg.push_str("</svg>\n");
        svg
    }
}

/// Renders a record as a deterministic SVG badge.
pub fn render_badge(record: &AnnotationRecord, style: BadgeStyle) -> String {
    BadgeSpec::for_record(record, style).to_svg()
}

/// Emits the six-argument LaTeX command for an extended record, e.g.
/// `\aitextsection{F4}{G4}{E2}{I4}{C2}{T2}`. Qualifier suffixes are kept
/// inside the braces. Core records are rejected: the command has exactly six
/// argument slots, and emitting a different arity would break downstream
/// macros silently.
pub fn render_latex(record: &AnnotationRecord) -> Result<String, RenderError> {
    if !record.is_extended() {
        return Err(RenderError::CoreNotSupported);
    }
    let mut out = String::from("\\aitextsection");
    for token in grid_tokens(record) {
        out.push('{');
        out.push_str(&token.code());
        out.push('}');
    }
    Ok(out)
}

/// Emits a span-structured HTML snippet.
///
/// The `data-grid` attribute carries the canonical grid string; each cell's
/// `title` is the Explanatory fragment for that facet level; tool cite keys
/// are listed in a trailing span.
pub fn render_html(record: &AnnotationRecord) -> String {
    let grid = serialize_grid(record);
    let registry = default_registry();
    let alt: Vec<&str> = record
        .levels
        .facet_levels()
        .iter()
        .map(|fl| {
            registry
                .fragment_for(fl.facet(), fl.level(), DisclosureProfile::Explanatory)
                .expect("fragment table is total")
        })
        .collect();

    let mut html = String::new();
    html.push_str(&format!(
        "<span class=\"aidisclose\" data-grid=\"{}\" role=\"img\" aria-label=\"{}\">\n",
        escape_html(&grid),
        escape_html(&alt.join(" ")),
    ));
    for (token, sentence) in grid_tokens(record).iter().zip(&alt) {
        html.push_str(&format!(
            "  <span class=\"aidisclose-cell\" title=\"{}\">{}</span>\n",
            escape_html(sentence),
            escape_html(&token.code()),
        ));
    }
    html.push_str(&format!(
        "  <span class=\"aidisclose-grid\">{}</span>\n",
        escape_html(&grid)
    ));
    if !record.tools.is_empty() {
        let keys: Vec<&str> = record.tools.iter().map(|t| t.cite_key.as_str()).collect();
        html.push_str(&format!(
            "  <span class=\"aidisclose-tools\">{}</span>\n",
            escape_html(&keys.join(" ")),
        ));
    }
    html.push_str("</span>\n");
    html
}

fn escape_xml(text: &str) -> String {
    escape_html(text)
}

fn escape_html(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            other => out.push(other),
        }
    }
    out
}

// ---------------------------------------------------------------------------
// JSON export / import
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize, Deserialize)]
struct JsonDocument {
    aidisclose_version: String,
    annotations: Vec<JsonAnnotation>,
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonAnnotation {
    scope: String,
    grid: String,
    levels: JsonLevels,
    qualifiers: Vec<String>,
    tools: Vec<JsonTool>,
    evidence: Vec<JsonEvidence>,
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonLevels {
    #[serde(rename = "F")]
    form: u8,
    #[serde(rename = "G")]
    generation: u8,
    #[serde(rename = "E")]
    evaluation: u8,
    #[serde(rename = "I", skip_serializing_if = "Option::is_none", default)]
    intent: Option<u8>,
    #[serde(rename = "C", skip_serializing_if = "Option::is_none", default)]
    control: Option<u8>,
    #[serde(rename = "T", skip_serializing_if = "Option::is_none", default)]
    traceability: Option<u8>,
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonTool {
    author: String,
    title: String,
    year: i32,
    #[serde(skip_serializing_if = "String::is_empty", default)]
    url: String,
    accessed: String,
    cite_key: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonEvidence {
    description: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    location: Option<String>,
}

/// The version tag written by [`export_json`].
pub const EXPORT_VERSION: &str = "1";

/// Exports annotations as a versioned JSON document with fixed key order.
pub fn export_json(annotations: &[(ScopePath, AnnotationRecord)]) -> String {
    let doc = JsonDocument {
        aidisclose_version: EXPORT_VERSION.to_string(),
        annotations: annotations
            .iter()
            .map(|(scope, record)| {
                let level = |facet: FacetKind| record.levels.level(facet).map(|fl| fl.level());
                JsonAnnotation {
                    scope: scope.to_string(),
                    grid: serialize_grid(record),
                    levels: JsonLevels {
                        form: level(FacetKind::Form).unwrap_or(0),
                        generation: level(FacetKind::Generation).unwrap_or(0),
                        evaluation: level(FacetKind::Evaluation).unwrap_or(0),
                        intent: level(FacetKind::Intent),
                        control: level(FacetKind::Control),
                        traceability: level(FacetKind::Traceability),
                    },
                    qualifiers: record.qualifiers.iter().map(|q| q.code()).collect(),
                    tools: record
                        .tools
                        .iter()
                        .map(|t| JsonTool {
                            author: t.author.clone(),
                            title: t.title.clone(),
                            year: t.year,
                            url: t.url.clone(),
                            accessed: t.accessed.clone(),
                            cite_key: t.cite_key.clone(),
                        })
                        .collect(),
                    evidence: record
                        .evidence
                        .iter()
                        .map(|e| JsonEvidence {
                            description: e.description.clone(),
                            location: e.location.clone(),
                        })
                        .collect(),
                }
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("export structs always serialize") + "\n"
}

/// Imports a document written by [`export_json`].
///
/// The grid string is the source of truth for levels and qualifiers; the
/// redundant `levels` map is cross-checked and any disagreement is an error.
pub fn import_json(text: &str) -> Result<Vec<(ScopePath, AnnotationRecord)>, ImportError> {
    let doc: JsonDocument = serde_json::from_str(text)?;
    if doc.aidisclose_version != EXPORT_VERSION {
        return Err(ImportError::UnsupportedVersion(doc.aidisclose_version));
    }

    let mut out = Vec::with_capacity(doc.annotations.len());
    for (index, entry) in doc.annotations.into_iter().enumerate() {
        let fail = |message: String| ImportError::Annotation { index, message };

        let scope = ScopePath::parse_label(&entry.scope).map_err(|e| fail(e.to_string()))?;
        let parsed = parse_grid(&entry.grid).map_err(|e| fail(e.to_string()))?;

        let check = |facet: FacetKind, stated: Option<u8>| -> Result<(), ImportError> {
            let from_grid = parsed.levels.level(facet).map(|fl| fl.level());
            if stated != from_grid {
                return Err(fail(format!(
                    "levels entry for {facet} ({stated:?}) disagrees with grid {:?}",
                    entry.grid
                )));
            }
            Ok(())
        };
        check(FacetKind::Form, Some(entry.levels.form))?;
        check(FacetKind::Generation, Some(entry.levels.generation))?;
        check(FacetKind::Evaluation, Some(entry.levels.evaluation))?;
        check(FacetKind::Intent, entry.levels.intent)?;
        check(FacetKind::Control, entry.levels.control)?;
        check(FacetKind::Traceability, entry.levels.traceability)?;

        let grid_qualifiers: Vec<String> = parsed.qualifiers.iter().map(|q| q.code()).collect();
        if grid_qualifiers != entry.qualifiers {
            return Err(fail(format!(
                "qualifiers {:?} disagree with grid {:?}",
                entry.qualifiers, entry.grid
            )));
        }

        let record = parsed
            .with_scope(scope.clone())
            .with_tools(
                entry
                    .tools
                    .into_iter()
                    .map(|t| ToolRef {
                        author: t.author,
                        title: t.title,
                        year: t.year,
                        url: t.url,
                        accessed: t.accessed,
                        cite_key: t.cite_key,
                    })
                    .collect(),
            )
            .with_evidence(
                entry
                    .evidence
                    .into_iter()
                    .map(|e| EvidenceRef {
                        description: e.description,
                        location: e.location,
                    })
                    .collect(),
            );
        out.push((scope, record));
    }
    Ok(out)
}

/// Writes annotations as a grid file: one canonical scoped line per record,
/// unscoped records as bare grids. [`scan_document`](crate::scan::scan_document)
/// on the output recovers exactly the input pairs.
pub fn to_grid_file(annotations: &[(ScopePath, AnnotationRecord)]) -> String {
    let mut out = String::new();
    for (scope, record) in annotations {
        if scope.is_unscoped() {
            out.push_str(&serialize_grid(record));
        } else {
            out.push_str(&format!("{}: {}", scope, serialize_grid(record)));
        }
        out.push('\n');
    }
    out
}

// Used by proptest strategies and the acceptance suite to build arbitrary
// valid records.
#[doc(hidden)]
pub fn record_from_levels(
    levels: &[(FacetKind, u8)],
    qualifiers: &[(FacetKind, u8, char)],
) -> AnnotationRecord {
    let level = |facet: FacetKind| {
        levels
            .iter()
            .find(|(f, _)| *f == facet)
            .map(|(_, l)| *l)
            .expect("facet present")
    };
    let annotation: Annotation = if levels.len() == 3 {
        CoreAnnotation::new(
            level(FacetKind::Form),
            level(FacetKind::Generation),
            level(FacetKind::Evaluation),
        )
        .expect("valid levels")
        .into()
    } else {
        ExtendedAnnotation::new(
            level(FacetKind::Form),
            level(FacetKind::Generation),
            level(FacetKind::Evaluation),
            level(FacetKind::Intent),
            level(FacetKind::Control),
            level(FacetKind::Traceability),
        )
        .expect("valid levels")
        .into()
    };
    let qualifiers = qualifiers
        .iter()
        .map(|&(facet, lvl, suffix)| {
            Qualifier::new(FacetLevel::new(facet, lvl).expect("valid level"), suffix)
                .expect("uppercase suffix")
        })
        .collect();
    AnnotationRecord::new(annotation).with_qualifiers(qualifiers)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::parse_grid;

    #[test]
    fn badge_contains_cells_and_grid_title() {
        let record = parse_grid("|F4|G4|E3|I4|C2|T3|").unwrap();
        let svg = render_badge(&record, BadgeStyle::Compact);
        assert!(svg.contains("<title>|F4|G4|E3|I4|C2|T3|</title>"));
        for code in ["F4", "G4", "E3", "I4", "C2", "T3"] {
            assert!(
                svg.contains(&format!(">{code}</text>")),
                "missing cell {code}"
            );
        }
    }

    #[test]
    fn badge_for_core_record_has_three_cells() {
        let record = parse_grid("|F0|G0|E0|").unwrap();
        let spec = BadgeSpec::for_record(&record, BadgeStyle::Compact);
        assert_eq!(spec.tokens.len(), 3);
        assert!(spec.to_svg().contains("<title>|F0|G0|E0|</title>"));
    }

    #[test]
    fn badge_renders_qualifier_cell() {
        let record = parse_grid("|F4|G4|E2|I4Z|C2|T2|").unwrap();
        let svg = render_badge(&record, BadgeStyle::Compact);
        assert!(svg.contains(">I4Z</text>"));
    }

    #[test]
    fn labeled_badge_names_facets() {
        let record = parse_grid("|F1|G2|E3|").unwrap();
        let svg = render_badge(&record, BadgeStyle::Labeled);
        for name in ["Form", "Generation", "Evaluation"] {
            assert!(svg.contains(name));
        }
    }

    #[test]
    fn badges_are_deterministic() {
        let record = parse_grid("|F4|G4|E3|I4|C2|T3|").unwrap();
        assert_eq!(
            render_badge(&record, BadgeStyle::Compact),
            render_badge(&record, BadgeStyle::Compact)
        );
    }

    #[test]
    fn latex_command_is_exact() {
        let record = parse_grid("|F4|G4|E2|I4|C2|T2|").unwrap();
        assert_eq!(
            render_latex(&record).unwrap(),
            "\\aitextsection{F4}{G4}{E2}{I4}{C2}{T2}"
        );
        let worked = parse_grid("|F4|G4|E3|I4|C2|T3|").unwrap();
        assert_eq!(
            render_latex(&worked).unwrap(),
            "\\aitextsection{F4}{G4}{E3}{I4}{C2}{T3}"
        );
    }

    #[test]
    fn latex_keeps_qualifiers_in_braces() {
        let record = parse_grid("|F4|G4|E2|I4Z|C2|T2|").unwrap();
        assert_eq!(
            render_latex(&record).unwrap(),
            "\\aitextsection{F4}{G4}{E2}{I4Z}{C2}{T2}"
        );
    }

    #[test]
    fn latex_rejects_core_records() {
        let record = parse_grid("|F1|G0|E3|").unwrap();
        assert_eq!(render_latex(&record), Err(RenderError::CoreNotSupported));
    }

    #[test]
    fn html_preserves_grid_and_cites_tools() {
        let record = parse_grid("|F4|G4|E2|I4|C2|T2|")
            .unwrap()
            .with_tools(vec![ToolRef {
                author: "OpenAI".into(),
                title: "GPT Models".into(),
                year: 2026,
                url: "https://developers.openai.com".into(),
                accessed: "2026-04-25".into(),
                cite_key: "openai2026".into(),
            }]);
        let html = render_html(&record);
        assert!(html.contains("|F4|G4|E2|I4|C2|T2|"));
        assert!(html.contains("openai2026"));
        assert!(html.contains("The text underwent global rhetorical or structural restructuring."));

        let zero = parse_grid("|F0|G0|E0|").unwrap();
        assert!(render_html(&zero).contains("|F0|G0|E0|"));
    }

    #[test]
    fn export_shape_and_golden_grid() {
        let record = parse_grid("|F4|G4|E3|I4|C2|T3|").unwrap();
        let json = export_json(&[(ScopePath::document(), record)]);
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(value["aidisclose_version"], "1");
        assert_eq!(value["annotations"][0]["grid"], "|F4|G4|E3|I4|C2|T3|");
        assert_eq!(value["annotations"][0]["scope"], "document");
        assert_eq!(value["annotations"][0]["levels"]["F"], 4);
        assert_eq!(value["annotations"][0]["levels"]["T"], 3);
    }

    #[test]
    fn export_empty_list() {
        let json = export_json(&[]);
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(value["aidisclose_version"], "1");
        assert_eq!(value["annotations"].as_array().unwrap().len(), 0);
    }

    #[test]
    fn export_import_round_trip() {
        let scoped = crate::grid::parse_scoped_line("section: |F3|G4|E2|I3|C2|T2|").unwrap();
        let para = crate::grid::parse_scoped_line("paragraph 12: |F2|G1|E3|I1|C1|T1|").unwrap();
        let core = (
            ScopePath::document(),
            parse_grid("|F1|G0|E3|")
                .unwrap()
                .with_scope(ScopePath::document()),
        );
        let annotations = vec![scoped, para, core];
        let json = export_json(&annotations);
        let imported = import_json(&json).unwrap();
        assert_eq!(imported, annotations);
    }

    #[test]
    fn import_rejects_wrong_version_and_inconsistency() {
        assert!(matches!(
            import_json("{\"aidisclose_version\": \"2\", \"annotations\": []}"),
            Err(ImportError::UnsupportedVersion(_))
        ));
        let json = "{\"aidisclose_version\": \"1\", \"annotations\": [{\
\"scope\": \"document\", \"grid\": \"|F1|G0|E3|\", \
\"levels\": {\"F\": 2, \"G\": 0, \"E\": 3}, \
\"qualifiers\": [], \"tools\": [], \"evidence\": []}]}";
        assert!(matches!(
            import_json(json),
            Err(ImportError::Annotation { .. })
        ));
    }

    #[test]
    fn core_extended_distinction_survives_json() {
        let core = parse_grid("|F0|G0|E0|")
            .unwrap()
            .with_scope(ScopePath::document());
        let json = export_json(&[(ScopePath::document(), core)]);
        let imported = import_json(&json).unwrap();
        assert!(!imported[0].1.is_extended());

        let ext = parse_grid("|F0|G0|E0|I0|C0|T0|")
            .unwrap()
            .with_scope(ScopePath::document());
        let json = export_json(&[(ScopePath::document(), ext)]);
        let imported = import_json(&json).unwrap();
        assert!(imported[0].1.is_extended());
    }
}
