//! Template-based generation of prose disclosure statements.
//!
//! Every facet-level pair maps to a controlled textual fragment; disclosure
//! statements are assembled from those fragments, never free-generated, and
//! certainly never model-generated. Three audience profiles are supported:
//! explanatory prose, a condensed publisher paragraph, and a compliance
//! listing that embeds the level codes verbatim.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::facet::{Annotation, FacetKind};
use crate::record::AnnotationRecord;
use crate::registry::ExtensionRegistry;

/// The audience style of a generated disclosure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DisclosureProfile {
    /// One explanatory sentence per facet, closing with the responsibility
    /// statement.
    Explanatory,
    /// A condensed paragraph suitable for publisher disclosure forms.
    Publisher,
    /// A per-facet listing that embeds the level codes, for audit use.
    Compliance,
}

impl DisclosureProfile {
    pub const ALL: [DisclosureProfile; 3] = [
        DisclosureProfile::Explanatory,
        DisclosureProfile::Publisher,
        DisclosureProfile::Compliance,
    ];

    pub fn label(self) -> &'static str {
        match self {
            DisclosureProfile::Explanatory => "explanatory",
            DisclosureProfile::Publisher => "publisher",
            DisclosureProfile::Compliance => "compliance",
        }
    }

    pub fn from_label(label: &str) -> Option<DisclosureProfile> {
        DisclosureProfile::ALL
            .iter()
            .copied()
            .find(|p| p.label() == label)
    }
}

/// Default responsibility statement, mandatory in scholarly contexts.
pub const RESPONSIBILITY_STATEMENT: &str =
    "The human author remains responsible for the accuracy, integrity, originality, and final form of the text.";

/// Sentence appended when a core record says nothing about the extended facets.
pub const UNSPECIFIED_EXTENDED_SENTENCE: &str =
    "Intent, Control, and Traceability are unspecified.";

// One explanatory sentence per facet-level pair.
const EXPLANATORY_FRAGMENTS: &[(FacetKind, u8, &str)] = &[
    (FacetKind::Form, 0, "The text underwent no form modification."),
    (FacetKind::Form, 1, "The text underwent orthographic correction."),
    (FacetKind::Form, 2, "The text underwent grammatical correction."),
    (FacetKind::Form, 3, "The text underwent local stylistic refinement."),
    (FacetKind::Form, 4, "The text underwent global rhetorical or structural restructuring."),
    (FacetKind::Generation, 0, "The text was fully human-authored."),
    (FacetKind::Generation, 1, "The text was produced with AI-assisted completion."),
    (FacetKind::Generation, 2, "The text was AI-generated from a simple prompt."),
    (FacetKind::Generation, 3, "The text was AI-generated from a detailed prompt."),
    (FacetKind::Generation, 4, "The text was produced through iterative human-AI conversation."),
    (
        FacetKind::Generation,
        5,
        "The text was AI-generated through a structured multi-step conversational or computational pipeline.",
    ),
    (FacetKind::Evaluation, 0, "The text received no revision."),
    (FacetKind::Evaluation, 1, "The text received automated review only."),
    (FacetKind::Evaluation, 2, "The text received partial human review."),
    (FacetKind::Evaluation, 3, "The text received full human review."),
    (FacetKind::Evaluation, 4, "The text received multi-stage or independent validation."),
    (FacetKind::Intent, 0, "No specific AI intent is declared for this text."),
    (FacetKind::Intent, 1, "AI was used for linguistic correction."),
    (FacetKind::Intent, 2, "AI was used for transformation of existing text."),
    (FacetKind::Intent, 3, "AI was used for generation of new textual content."),
    (
        FacetKind::Intent,
        4,
        "AI was used for conceptual support, ideation, framing, or argument development.",
    ),
    (FacetKind::Control, 0, "The process was fully human-controlled."),
    (FacetKind::Control, 1, "The process used AI under narrow constraints."),
    (
        FacetKind::Control,
        2,
        "The process was guided by human-AI interaction with substantial human direction.",
    ),
    (FacetKind::Control, 3, "The process was AI-dominant with human selection or approval."),
    (FacetKind::Control, 4, "The process ran as a largely autonomous pipeline."),
    (FacetKind::Traceability, 0, "No traceability records are available."),
    (FacetKind::Traceability, 1, "Partial informal notes are available."),
    (FacetKind::Traceability, 2, "Prompts or interaction excerpts are available."),
    (
        FacetKind::Traceability,
        3,
        "Full logs, model identification, and intermediate versions are available.",
    ),
    (FacetKind::Traceability, 4, "Provenance is independently verifiable."),
];

// Publisher clauses. F, G and I rows are noun phrases for the opening
// sentence; E rows are verb phrases with "the author" as subject; C rows are
// full clauses; T rows are standalone sentences without the final period.
const PUBLISHER_FRAGMENTS: &[(FacetKind, u8, &str)] = &[
    (FacetKind::Form, 0, "no changes to its form"),
    (FacetKind::Form, 1, "spelling and punctuation correction"),
    (FacetKind::Form, 2, "grammatical correction"),
    (FacetKind::Form, 3, "local stylistic refinement"),
    (FacetKind::Form, 4, "global restructuring"),
    (FacetKind::Generation, 0, "no AI drafting"),
    (FacetKind::Generation, 1, "AI-assisted completion"),
    (FacetKind::Generation, 2, "drafting from a simple prompt"),
    (FacetKind::Generation, 3, "drafting from a detailed prompt"),
    (FacetKind::Generation, 4, "iterative conversational drafting"),
    (FacetKind::Generation, 5, "pipeline-based drafting"),
    (FacetKind::Evaluation, 0, "accepted the output without review"),
    (FacetKind::Evaluation, 1, "relied on automated checks only"),
    (FacetKind::Evaluation, 2, "reviewed selected parts of the output"),
    (FacetKind::Evaluation, 3, "reviewed the entire output"),
    (FacetKind::Evaluation, 4, "validated the output through multiple stages"),
    (FacetKind::Intent, 0, "no declared purpose"),
    (FacetKind::Intent, 1, "linguistic correction"),
    (FacetKind::Intent, 2, "transformation of existing text"),
    (FacetKind::Intent, 3, "drafting of new content"),
    (FacetKind::Intent, 4, "conceptual support"),
    (FacetKind::Control, 0, "The author retained full control of the process"),
    (FacetKind::Control, 1, "The author used AI only under narrow constraints"),
    (FacetKind::Control, 2, "The author guided the process"),
    (
        FacetKind::Control,
        3,
        "The AI system produced most of the content, with the author selecting or approving the result",
    ),
    (FacetKind::Control, 4, "The process ran as a largely autonomous pipeline"),
    (FacetKind::Traceability, 0, "No interaction records are available"),
    (FacetKind::Traceability, 1, "Informal notes about the process are available"),
    (FacetKind::Traceability, 2, "Partial interaction records are available"),
    (FacetKind::Traceability, 3, "Full interaction logs are available"),
    (FacetKind::Traceability, 4, "Independently verifiable provenance records are available"),
];

const COMPLIANCE_FRAGMENTS: &[(FacetKind, u8, &str)] = &[
    (FacetKind::Form, 0, "Form is classified as F0: no form modification."),
    (FacetKind::Form, 1, "Form is classified as F1: orthographic correction."),
    (FacetKind::Form, 2, "Form is classified as F2: grammatical correction."),
    (FacetKind::Form, 3, "Form is classified as F3: local stylistic refinement."),
    (FacetKind::Form, 4, "Form is classified as F4: global rhetorical or structural restructuring."),
    (FacetKind::Generation, 0, "Generation is classified as G0: fully human-authored."),
    (FacetKind::Generation, 1, "Generation is classified as G1: AI-assisted completion."),
    (FacetKind::Generation, 2, "Generation is classified as G2: AI-generated with a simple prompt."),
    (FacetKind::Generation, 3, "Generation is classified as G3: AI-generated with a detailed prompt."),
    (
        FacetKind::Generation,
        4,
        "Generation is classified as G4: AI-generated through iterative conversation.",
    ),
    (
        FacetKind::Generation,
        5,
        "Generation is classified as G5: AI-generated through a structured multi-step conversational or computational pipeline.",
    ),
    (FacetKind::Evaluation, 0, "Evaluation is classified as E0: no revision."),
    (FacetKind::Evaluation, 1, "Evaluation is classified as E1: automated review only."),
    (FacetKind::Evaluation, 2, "Evaluation is classified as E2: partial human review."),
    (FacetKind::Evaluation, 3, "Evaluation is classified as E3: full human review."),
    (
        FacetKind::Evaluation,
        4,
        "Evaluation is classified as E4: multi-stage or independent validation.",
    ),
    (FacetKind::Intent, 0, "Intent is classified as I0: no AI intent or unspecified use."),
    (FacetKind::Intent, 1, "Intent is classified as I1: linguistic correction."),
    (FacetKind::Intent, 2, "Intent is classified as I2: transformation of existing text."),
    (FacetKind::Intent, 3, "Intent is classified as I3: generation of new textual content."),
    (
        FacetKind::Intent,
        4,
        "Intent is classified as I4: conceptual support, ideation, framing, or argument development.",
    ),
    (FacetKind::Control, 0, "Control is classified as C0: fully human-controlled."),
    (FacetKind::Control, 1, "Control is classified as C1: AI used under narrow constraints."),
    (FacetKind::Control, 2, "Control is classified as C2: guided human-AI interaction."),
    (
        FacetKind::Control,
        3,
        "Control is classified as C3: AI-dominant production with human selection or approval.",
    ),
    (FacetKind::Control, 4, "Control is classified as C4: largely autonomous pipeline."),
    (FacetKind::Traceability, 0, "Traceability is classified as T0: no traceability."),
    (FacetKind::Traceability, 1, "Traceability is classified as T1: partial informal notes."),
    (FacetKind::Traceability, 2, "Traceability is classified as T2: prompts or excerpts available."),
    (
        FacetKind::Traceability,
        3,
        "Traceability is classified as T3: full logs, model identification, and intermediate versions available.",
    ),
    (
        FacetKind::Traceability,
        4,
        "Traceability is classified as T4: independently verifiable provenance.",
    ),
];

/// The fragment table behind disclosure generation.
///
/// Total by construction: a fragment exists for every valid facet-level pair
/// in every profile. Extension registries may override individual fragments
/// and the responsibility statement.
#[derive(Debug, Clone)]
pub struct TemplateRegistry {
    fragments: HashMap<(DisclosureProfile, FacetKind, u8), String>,
    responsibility: String,
}

impl Default for TemplateRegistry {
    fn default() -> Self {
        let mut fragments = HashMap::new();
        for (profile, table) in [
            (DisclosureProfile::Explanatory, EXPLANATORY_FRAGMENTS),
            (DisclosureProfile::Publisher, PUBLISHER_FRAGMENTS),
            (DisclosureProfile::Compliance, COMPLIANCE_FRAGMENTS),
        ] {
            for &(facet, level, text) in table {
                fragments.insert((profile, facet, level), text.to_string());
            }
        }
        TemplateRegistry {
            fragments,
            responsibility: RESPONSIBILITY_STATEMENT.to_string(),
        }
    }
}

impl TemplateRegistry {
    /// The default registry with overrides from an extension registry applied.
    pub fn with_extensions(extensions: &ExtensionRegistry) -> TemplateRegistry {
        let mut registry = TemplateRegistry::default();
        for profile in DisclosureProfile::ALL {
            for facet in FacetKind::ALL {
                for level in 0..=facet.max_level() {
                    if let Some(text) = extensions.fragment_override(profile, facet, level) {
                        registry
                            .fragments
                            .insert((profile, facet, level), text.to_string());
                    }
                }
            }
        }
        if let Some(statement) = extensions.responsibility_override() {
            registry.responsibility = statement.to_string();
        }
        registry
    }

    /// The fragment for one facet-level pair in one profile.
    ///
    /// Returns `None` only for out-of-range levels; the table is total over
    /// valid pairs.
    pub fn fragment_for(
        &self,
        facet: FacetKind,
        level: u8,
        profile: DisclosureProfile,
    ) -> Option<&str> {
        self.fragments
            .get(&(profile, facet, level))
            .map(String::as_str)
    }

    pub fn responsibility_statement(&self) -> &str {
        &self.responsibility
    }
}

/// The process-wide default registry, shared by renderers.
pub fn default_registry() -> &'static TemplateRegistry {
    static REGISTRY: OnceLock<TemplateRegistry> = OnceLock::new();
    REGISTRY.get_or_init(TemplateRegistry::default)
}

/// Expands a record into a prose disclosure statement.
///
/// Deterministic: identical inputs produce byte-identical output. Core
/// records omit the extended-facet sentences and state instead that Intent,
/// Control and Traceability are unspecified.
pub fn generate_disclosure(
    record: &AnnotationRecord,
    profile: DisclosureProfile,
    registry: &TemplateRegistry,
) -> String {
    match profile {
        DisclosureProfile::Explanatory => explanatory(record, registry),
        DisclosureProfile::Publisher => publisher(record, registry),
        DisclosureProfile::Compliance => compliance(record, registry),
    }
}

fn fragment<'r>(
    registry: &'r TemplateRegistry,
    record: &AnnotationRecord,
    facet: FacetKind,
    profile: DisclosureProfile,
) -> &'r str {
    let level = record
        .levels
        .level(facet)
        .expect("caller only asks for facets present in the record");
    registry
        .fragment_for(facet, level.level(), profile)
        .expect("fragment table is total over valid pairs")
}

fn explanatory(record: &AnnotationRecord, registry: &TemplateRegistry) -> String {
    let mut sentences: Vec<&str> = record
        .levels
        .facets()
        .iter()
        .map(|&facet| fragment(registry, record, facet, DisclosureProfile::Explanatory))
        .collect();
    if !record.is_extended() {
        sentences.push(UNSPECIFIED_EXTENDED_SENTENCE);
    }
    sentences.push(registry.responsibility_statement());
    sentences.join(" ")
}

fn publisher(record: &AnnotationRecord, registry: &TemplateRegistry) -> String {
    let clause = |facet| fragment(registry, record, facet, DisclosureProfile::Publisher);

    let mut sentences: Vec<String> = Vec::with_capacity(3);
    match &record.levels {
        Annotation::Extended(ext) => {
            sentences.push(format!(
                "Generative AI was used in the preparation of this text for {}, {}, and {}.",
                clause(FacetKind::Intent),
                clause(FacetKind::Generation),
                clause(FacetKind::Form),
            ));
            // Control clauses up to C2 put the author in charge, so the
            // evaluation clause can share their subject.
            if ext.control().level() <= 2 {
                sentences.push(format!(
                    "{}, {}, and remains responsible for the final content.",
                    clause(FacetKind::Control),
                    clause(FacetKind::Evaluation),
                ));
            } else {
                sentences.push(format!(
                    "{}; the author {} and remains responsible for the final content.",
                    clause(FacetKind::Control),
                    clause(FacetKind::Evaluation),
                ));
            }
            sentences.push(format!("{}.", clause(FacetKind::Traceability)));
        }
        Annotation::Core(_) => {
            sentences.push(format!(
                "Generative AI was used in the preparation of this text for {} and {}.",
                clause(FacetKind::Generation),
                clause(FacetKind::Form),
            ));
            sentences.push(format!(
                "The author {} and remains responsible for the final content.",
                clause(FacetKind::Evaluation),
            ));
            sentences.push(UNSPECIFIED_EXTENDED_SENTENCE.to_string());
        }
    }
    sentences.join(" ")
}

fn compliance(record: &AnnotationRecord, registry: &TemplateRegistry) -> String {
    let mut sentences: Vec<String> = record
        .levels
        .facets()
        .iter()
        .map(|&facet| fragment(registry, record, facet, DisclosureProfile::Compliance).to_string())
        .collect();
    if !record.is_extended() {
        sentences.push(UNSPECIFIED_EXTENDED_SENTENCE.to_string());
    }
    for facet in record.levels.facets() {
        if let Some(qualifier) = record.qualifier_for(*facet) {
            sentences.push(format!(
                "Qualifier {} applies as defined by a local extension.",
                qualifier.code()
            ));
        }
    }
    sentences.push(registry.responsibility_statement().to_string());
    sentences.join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::facet::{CoreAnnotation, ExtendedAnnotation};
    use crate::grid::parse_grid;

    #[test]
    fn reference_pair_fragments_are_stable() {
        let registry = TemplateRegistry::default();
        let explanatory = DisclosureProfile::Explanatory;
        assert_eq!(
            registry.fragment_for(FacetKind::Form, 4, explanatory),
            Some("The text underwent global rhetorical or structural restructuring.")
        );
        assert_eq!(
            registry.fragment_for(FacetKind::Generation, 4, explanatory),
            Some("The text was produced through iterative human-AI conversation.")
        );
        assert_eq!(
            registry.fragment_for(FacetKind::Evaluation, 2, explanatory),
            Some("The text received partial human review.")
        );
        assert_eq!(
            registry.fragment_for(FacetKind::Intent, 4, explanatory),
            Some("AI was used for conceptual support, ideation, framing, or argument development.")
        );
        assert_eq!(
            registry.fragment_for(FacetKind::Control, 2, explanatory),
            Some(
                "The process was guided by human-AI interaction with substantial human direction."
            )
        );
        assert_eq!(
            registry.fragment_for(FacetKind::Traceability, 2, explanatory),
            Some("Prompts or interaction excerpts are available.")
        );
    }

    #[test]
    fn fragments_are_total_and_distinct_per_facet() {
        let registry = TemplateRegistry::default();
        for profile in DisclosureProfile::ALL {
            for facet in FacetKind::ALL {
                let mut seen = Vec::new();
                for level in 0..=facet.max_level() {
                    let text = registry
                        .fragment_for(facet, level, profile)
                        .unwrap_or_else(|| {
                            panic!("missing fragment {facet:?} {level} {profile:?}")
                        });
                    assert!(!text.is_empty());
                    assert!(
                        !seen.contains(&text),
                        "duplicate fragment for {facet:?} in {profile:?}: {text}"
                    );
                    seen.push(text);
                }
                assert!(registry
                    .fragment_for(facet, facet.max_level() + 1, profile)
                    .is_none());
            }
        }
    }

    #[test]
    fn explanatory_block_for_reference_record() {
        let record = parse_grid("|F4|G4|E2|I4|C2|T2|").unwrap();
        let text = generate_disclosure(&record, DisclosureProfile::Explanatory, default_registry());
        let expected = "The text underwent global rhetorical or structural restructuring. \
The text was produced through iterative human-AI conversation. \
The text received partial human review. \
AI was used for conceptual support, ideation, framing, or argument development. \
The process was guided by human-AI interaction with substantial human direction. \
Prompts or interaction excerpts are available. \
The human author remains responsible for the accuracy, integrity, originality, and final form of the text.";
        assert_eq!(text, expected);
    }

    #[test]
    fn explanatory_zero_core_record() {
        let record = AnnotationRecord::new(CoreAnnotation::new(0, 0, 0).unwrap());
        let text = generate_disclosure(&record, DisclosureProfile::Explanatory, default_registry());
        assert!(text.contains("The text underwent no form modification."));
        assert!(text.contains("The text was fully human-authored."));
        assert!(text.contains("The text received no revision."));
        assert!(text.contains(UNSPECIFIED_EXTENDED_SENTENCE));
        assert!(text.ends_with(RESPONSIBILITY_STATEMENT));
    }

    #[test]
    fn compliance_embeds_every_present_code() {
        let record = parse_grid("|F4|G4|E2|I4|C2|T2|").unwrap();
        let text = generate_disclosure(&record, DisclosureProfile::Compliance, default_registry());
        for code in ["F4", "G4", "E2", "I4", "C2", "T2"] {
            assert!(text.contains(code), "missing {code} in: {text}");
        }
        assert!(text.contains("classified as C2"));
    }

    #[test]
    fn publisher_paragraph_shape() {
        let record = parse_grid("|F4|G4|E2|I4|C2|T2|").unwrap();
        let text = generate_disclosure(&record, DisclosureProfile::Publisher, default_registry());
        assert!(text.starts_with(
            "Generative AI was used in the preparation of this text for conceptual support"
        ));
        assert!(text.contains(
            "The author guided the process, reviewed selected parts of the output, \
and remains responsible for the final content."
        ));
        assert!(text.ends_with("Partial interaction records are available."));
    }

    #[test]
    fn disclosure_is_deterministic() {
        let record = AnnotationRecord::new(ExtendedAnnotation::new(3, 5, 4, 1, 3, 4).unwrap());
        for profile in DisclosureProfile::ALL {
            let a = generate_disclosure(&record, profile, default_registry());
            let b = generate_disclosure(&record, profile, default_registry());
            assert_eq!(a, b);
        }
    }

    #[test]
    fn registry_overrides_apply() {
        let extensions = ExtensionRegistry::parse(
            "fragment explanatory F0 Nothing at all happened to the form.\n\
             responsibility The undersigned answers for this text.",
        )
        .unwrap();
        let registry = TemplateRegistry::with_extensions(&extensions);
        assert_eq!(
            registry.fragment_for(FacetKind::Form, 0, DisclosureProfile::Explanatory),
            Some("Nothing at all happened to the form.")
        );
        let record = AnnotationRecord::new(CoreAnnotation::new(0, 0, 0).unwrap());
        let text = generate_disclosure(&record, DisclosureProfile::Explanatory, &registry);
        assert!(text.starts_with("Nothing at all happened to the form."));
        assert!(text.ends_with("The undersigned answers for this text."));
    }

    #[test]
    fn compliance_mentions_qualifiers() {
        let record = parse_grid("|F4|G4|E2|I4Z|C2|T2|").unwrap();
        let text = generate_disclosure(&record, DisclosureProfile::Compliance, default_registry());
        assert!(text.contains("Qualifier I4Z applies as defined by a local extension."));
    }
}
