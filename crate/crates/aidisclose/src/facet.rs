//! The six facets, their level ranges, and validated annotation values.
//!
//! Everything else in the crate is built on these types. A [`FacetLevel`] is
//! the atom of the model: one facet letter plus a bounded level. Levels are
//! range-checked at construction, so a `FacetLevel` obtained through [`FacetLevel::new`]
//! is always valid.

use std::fmt;

use crate::error::FacetError;

/// The six annotation dimensions.
///
/// Declaration order is the canonical order used by the grid notation and
/// every renderer: F, G, E, I, C, T.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FacetKind {
    /// What happened to the wording and structure of the text.
    Form,
    /// How the text came into existence.
    Generation,
    /// How the resulting text was reviewed.
    Evaluation,
    /// Why AI was used.
    Intent,
    /// Who directed the production process.
    Control,
    /// Whether the production process can be reconstructed.
    Traceability,
}

impl FacetKind {
    /// All facets in canonical order.
    pub const ALL: [FacetKind; 6] = [
        FacetKind::Form,
        FacetKind::Generation,
        FacetKind::Evaluation,
        FacetKind::Intent,
        FacetKind::Control,
        FacetKind::Traceability,
    ];

    /// The core subset (F, G, E) in canonical order.
    pub const CORE: [FacetKind; 3] = [
        FacetKind::Form,
        FacetKind::Generation,
        FacetKind::Evaluation,
    ];

    /// The extension subset (I, C, T) in canonical order.
    pub const EXTENDED: [FacetKind; 3] = [
        FacetKind::Intent,
        FacetKind::Control,
        FacetKind::Traceability,
    ];

    /// Single-letter code: F, G, E, I, C or T.
    pub fn code(self) -> char {
        match self {
            FacetKind::Form => 'F',
            FacetKind::Generation => 'G',
            FacetKind::Evaluation => 'E',
            FacetKind::Intent => 'I',
            FacetKind::Control => 'C',
            FacetKind::Traceability => 'T',
        }
    }

    /// Full facet name, capitalized.
    pub fn name(self) -> &'static str {
        match self {
            FacetKind::Form => "Form",
            FacetKind::Generation => "Generation",
            FacetKind::Evaluation => "Evaluation",
            FacetKind::Intent => "Intent",
            FacetKind::Control => "Control",
            FacetKind::Traceability => "Traceability",
        }
    }

    /// Highest valid level for this facet.
    ///
    /// Generation runs to 5 (pipeline production); every other facet to 4.
    pub fn max_level(self) -> u8 {
        match self {
            FacetKind::Generation => 5,
            _ => 4,
        }
    }

    /// Looks a facet up by its letter code, case-insensitively.
    pub fn from_code(code: char) -> Option<FacetKind> {
        match code.to_ascii_uppercase() {
            'F' => Some(FacetKind::Form),
            'G' => Some(FacetKind::Generation),
            'E' => Some(FacetKind::Evaluation),
            'I' => Some(FacetKind::Intent),
            'C' => Some(FacetKind::Control),
            'T' => Some(FacetKind::Traceability),
            _ => None,
        }
    }
}

impl fmt::Display for FacetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Convenience alias for [`FacetKind::max_level`].
pub fn max_level(facet: FacetKind) -> u8 {
    facet.max_level()
}

// Canonical short definitions, one per valid (facet, level) pair. Kept as a
// table rather than match arms so the full level vocabulary is visible (and
// auditable) in one place.
const LEVEL_DEFINITIONS: &[(FacetKind, u8, &str)] = &[
    (FacetKind::Form, 0, "no form modification"),
    (FacetKind::Form, 1, "orthographic correction"),
    (FacetKind::Form, 2, "grammatical correction"),
    (FacetKind::Form, 3, "local stylistic refinement"),
    (
        FacetKind::Form,
        4,
        "global rhetorical or structural restructuring",
    ),
    (FacetKind::Generation, 0, "fully human-authored"),
    (FacetKind::Generation, 1, "AI-assisted completion"),
    (
        FacetKind::Generation,
        2,
        "AI-generated with a simple prompt",
    ),
    (
        FacetKind::Generation,
        3,
        "AI-generated with a detailed prompt",
    ),
    (
        FacetKind::Generation,
        4,
        "AI-generated through iterative conversation",
    ),
    (
        FacetKind::Generation,
        5,
        "AI-generated through a structured multi-step conversational or computational pipeline",
    ),
    (FacetKind::Evaluation, 0, "no revision"),
    (FacetKind::Evaluation, 1, "automated review only"),
    (FacetKind::Evaluation, 2, "partial human review"),
    (FacetKind::Evaluation, 3, "full human review"),
    (
        FacetKind::Evaluation,
        4,
        "multi-stage or independent validation",
    ),
    (FacetKind::Intent, 0, "no AI intent or unspecified use"),
    (FacetKind::Intent, 1, "linguistic correction"),
    (FacetKind::Intent, 2, "transformation of existing text"),
    (FacetKind::Intent, 3, "generation of new textual content"),
    (
        FacetKind::Intent,
        4,
        "conceptual support, ideation, framing, or argument development",
    ),
    (FacetKind::Control, 0, "fully human-controlled"),
    (FacetKind::Control, 1, "AI used under narrow constraints"),
    (FacetKind::Control, 2, "guided human-AI interaction"),
    (
        FacetKind::Control,
        3,
        "AI-dominant production with human selection or approval",
    ),
    (FacetKind::Control, 4, "largely autonomous pipeline"),
    (FacetKind::Traceability, 0, "no traceability"),
    (FacetKind::Traceability, 1, "partial informal notes"),
    (FacetKind::Traceability, 2, "prompts or excerpts available"),
    (
        FacetKind::Traceability,
        3,
        "full logs, model identification, and intermediate versions available",
    ),
    (
        FacetKind::Traceability,
        4,
        "independently verifiable provenance",
    ),
];

/// Total number of valid (facet, level) pairs across all six facets.
pub const LEVEL_PAIR_COUNT: usize = LEVEL_DEFINITIONS.len();

/// One facet with a validated level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FacetLevel {
    facet: FacetKind,
    level: u8,
}

impl FacetLevel {
    /// Builds a facet level, rejecting levels above the facet maximum.
    pub fn new(facet: FacetKind, level: u8) -> Result<FacetLevel, FacetError> {
        if level > facet.max_level() {
            return Err(FacetError::LevelOutOfRange { facet, level });
        }
        Ok(FacetLevel { facet, level })
    }

    /// Builds a facet level without the range check.
    ///
    /// Records assembled through this constructor can carry out-of-range
    /// levels; [`validate_record`](crate::record::validate_record) reports
    /// them as errors instead of the constructor rejecting them.
    pub fn new_unchecked(facet: FacetKind, level: u8) -> FacetLevel {
        FacetLevel { facet, level }
    }

    pub fn facet(self) -> FacetKind {
        self.facet
    }

    pub fn level(self) -> u8 {
        self.level
    }

    /// True when the level is within the facet's valid range.
    pub fn is_in_range(self) -> bool {
        self.level <= self.facet.max_level()
    }

    /// Two-character code such as `F4` or `T2`.
    pub fn code(self) -> String {
        format!("{}{}", self.facet.code(), self.level)
    }

    /// The canonical short definition of this facet-level pair.
    ///
    /// Total over every valid pair; out-of-range levels yield `None`.
    pub fn definition(self) -> Option<&'static str> {
        LEVEL_DEFINITIONS
            .iter()
            .find(|(f, l, _)| *f == self.facet && *l == self.level)
            .map(|(_, _, text)| *text)
    }
}

impl fmt::Display for FacetLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.facet.code(), self.level)
    }
}

/// The canonical short definition for a valid facet-level pair.
pub fn level_definition(fl: FacetLevel) -> &'static str {
    fl.definition().unwrap_or("")
}

/// A single-uppercase-letter suffix attached to one facet level, e.g. `I4Z`.
///
/// Suffix meanings are not part of the baseline model; a suffix is only
/// considered registered when an extension registry declares its
/// (facet, level, suffix) triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Qualifier {
    facet_level: FacetLevel,
    suffix: char,
}

impl Qualifier {
    pub fn new(facet_level: FacetLevel, suffix: char) -> Result<Qualifier, FacetError> {
        if !suffix.is_ascii_uppercase() {
            return Err(FacetError::InvalidSuffix(suffix));
        }
        Ok(Qualifier {
            facet_level,
            suffix,
        })
    }

    pub fn facet_level(self) -> FacetLevel {
        self.facet_level
    }

    pub fn facet(self) -> FacetKind {
        self.facet_level.facet()
    }

    pub fn suffix(self) -> char {
        self.suffix
    }

    /// Three-character code such as `I4Z`.
    pub fn code(self) -> String {
        format!("{}{}", self.facet_level.code(), self.suffix)
    }
}

impl fmt::Display for Qualifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.facet_level, self.suffix)
    }
}

/// The minimal annotation: Form, Generation, Evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CoreAnnotation {
    form: FacetLevel,
    generation: FacetLevel,
    evaluation: FacetLevel,
}

impl CoreAnnotation {
    /// Builds a core annotation from raw levels, range-checking each.
    pub fn new(form: u8, generation: u8, evaluation: u8) -> Result<CoreAnnotation, FacetError> {
        Ok(CoreAnnotation {
            form: FacetLevel::new(FacetKind::Form, form)?,
            generation: FacetLevel::new(FacetKind::Generation, generation)?,
            evaluation: FacetLevel::new(FacetKind::Evaluation, evaluation)?,
        })
    }

    /// Assembles a core annotation from facet levels, checking only that each
    /// slot holds the right facet. Used to carry deliberately invalid levels
    /// into validation.
    pub fn from_parts(
        form: FacetLevel,
        generation: FacetLevel,
        evaluation: FacetLevel,
    ) -> Result<CoreAnnotation, FacetError> {
        for (fl, expected) in [
            (form, FacetKind::Form),
            (generation, FacetKind::Generation),
            (evaluation, FacetKind::Evaluation),
        ] {
            if fl.facet() != expected {
                return Err(FacetError::FacetMismatch {
                    expected,
                    found: fl.facet(),
                });
            }
        }
        Ok(CoreAnnotation {
            form,
            generation,
            evaluation,
        })
    }

    pub fn form(self) -> FacetLevel {
        self.form
    }

    pub fn generation(self) -> FacetLevel {
        self.generation
    }

    pub fn evaluation(self) -> FacetLevel {
        self.evaluation
    }

    /// The level for one of the three core facets; `None` for I, C, T.
    pub fn level(self, facet: FacetKind) -> Option<FacetLevel> {
        match facet {
            FacetKind::Form => Some(self.form),
            FacetKind::Generation => Some(self.generation),
            FacetKind::Evaluation => Some(self.evaluation),
            _ => None,
        }
    }

    /// Every valid core tuple, in lexicographic level order.
    pub fn enumerate_all() -> impl Iterator<Item = CoreAnnotation> {
        (0..=FacetKind::Form.max_level()).flat_map(move |f| {
            (0..=FacetKind::Generation.max_level()).flat_map(move |g| {
                (0..=FacetKind::Evaluation.max_level())
                    .map(move |e| CoreAnnotation::new(f, g, e).expect("enumerated levels in range"))
            })
        })
    }
}

/// The six-facet annotation: core plus Intent, Control, Traceability.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ExtendedAnnotation {
    core: CoreAnnotation,
    intent: FacetLevel,
    control: FacetLevel,
    traceability: FacetLevel,
}

impl ExtendedAnnotation {
    /// Builds an extended annotation from raw levels, range-checking each.
    #[allow(clippy::many_single_char_names)]
    pub fn new(
        form: u8,
        generation: u8,
        evaluation: u8,
        intent: u8,
        control: u8,
        traceability: u8,
    ) -> Result<ExtendedAnnotation, FacetError> {
        Ok(ExtendedAnnotation {
            core: CoreAnnotation::new(form, generation, evaluation)?,
            intent: FacetLevel::new(FacetKind::Intent, intent)?,
            control: FacetLevel::new(FacetKind::Control, control)?,
            traceability: FacetLevel::new(FacetKind::Traceability, traceability)?,
        })
    }

    /// Assembles from parts, checking slot facets only (see
    /// [`CoreAnnotation::from_parts`]).
    pub fn from_parts(
        core: CoreAnnotation,
        intent: FacetLevel,
        control: FacetLevel,
        traceability: FacetLevel,
    ) -> Result<ExtendedAnnotation, FacetError> {
        for (fl, expected) in [
            (intent, FacetKind::Intent),
            (control, FacetKind::Control),
            (traceability, FacetKind::Traceability),
        ] {
            if fl.facet() != expected {
                return Err(FacetError::FacetMismatch {
                    expected,
                    found: fl.facet(),
                });
            }
        }
        Ok(ExtendedAnnotation {
            core,
            intent,
            control,
            traceability,
        })
    }

    pub fn core(self) -> CoreAnnotation {
        self.core
    }

    pub fn intent(self) -> FacetLevel {
        self.intent
    }

    pub fn control(self) -> FacetLevel {
        self.control
    }

    pub fn traceability(self) -> FacetLevel {
        self.traceability
    }

    /// The level for any of the six facets.
    pub fn level(self, facet: FacetKind) -> FacetLevel {
        match facet {
            FacetKind::Intent => self.intent,
            FacetKind::Control => self.control,
            FacetKind::Traceability => self.traceability,
            core => self.core.level(core).expect("core facet"),
        }
    }

    /// Every valid extended tuple, each exactly once.
    pub fn enumerate_all() -> impl Iterator<Item = ExtendedAnnotation> {
        CoreAnnotation::enumerate_all().flat_map(move |core| {
            (0..=FacetKind::Intent.max_level()).flat_map(move |i| {
                (0..=FacetKind::Control.max_level()).flat_map(move |c| {
                    (0..=FacetKind::Traceability.max_level()).map(move |t| ExtendedAnnotation {
                        core,
                        intent: FacetLevel::new_unchecked(FacetKind::Intent, i),
                        control: FacetLevel::new_unchecked(FacetKind::Control, c),
                        traceability: FacetLevel::new_unchecked(FacetKind::Traceability, t),
                    })
                })
            })
        })
    }
}

/// Either a core (F, G, E) or an extended (F, G, E, I, C, T) level tuple.
///
/// The two forms stay distinct through every parse/serialize round-trip:
/// a core annotation never reports levels for the extended facets, because
/// "unspecified" is not the same claim as level 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Annotation {
    Core(CoreAnnotation),
    Extended(ExtendedAnnotation),
}

impl Annotation {
    pub fn is_extended(&self) -> bool {
        matches!(self, Annotation::Extended(_))
    }

    /// The level recorded for `facet`, if the annotation carries that facet.
    pub fn level(&self, facet: FacetKind) -> Option<FacetLevel> {
        match self {
            Annotation::Core(core) => core.level(facet),
            Annotation::Extended(ext) => Some(ext.level(facet)),
        }
    }

    /// The facets present, in canonical order.
    pub fn facets(&self) -> &'static [FacetKind] {
        match self {
            Annotation::Core(_) => &FacetKind::CORE,
            Annotation::Extended(_) => &FacetKind::ALL,
        }
    }

    /// The facet levels present, in canonical order.
    pub fn facet_levels(&self) -> Vec<FacetLevel> {
        self.facets()
            .iter()
            .map(|&f| self.level(f).expect("facet listed as present"))
            .collect()
    }
}

impl From<CoreAnnotation> for Annotation {
    fn from(core: CoreAnnotation) -> Self {
        Annotation::Core(core)
    }
}

impl From<ExtendedAnnotation> for Annotation {
    fn from(ext: ExtendedAnnotation) -> Self {
        Annotation::Extended(ext)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn max_levels_match_model() {
        assert_eq!(max_level(FacetKind::Generation), 5);
        assert_eq!(max_level(FacetKind::Form), 4);
        assert_eq!(max_level(FacetKind::Evaluation), 4);
        assert_eq!(max_level(FacetKind::Intent), 4);
        assert_eq!(max_level(FacetKind::Control), 4);
        assert_eq!(max_level(FacetKind::Traceability), 4);
    }

    #[test]
    fn level_bounds_enforced_at_construction() {
        // Negative levels are unrepresentable (u8); probe the stated window
        // of integers around the valid range anyway.
        for facet in FacetKind::ALL {
            for candidate in -2i32..=7 {
                let built = u8::try_from(candidate)
                    .ok()
                    .and_then(|l| FacetLevel::new(facet, l).ok());
                let expected_ok = candidate >= 0 && candidate <= i32::from(facet.max_level());
                assert_eq!(built.is_some(), expected_ok, "{facet:?} level {candidate}");
            }
        }
    }

    #[test]
    fn definitions_are_total_and_injective_per_facet() {
        let mut count = 0usize;
        for facet in FacetKind::ALL {
            let mut seen = HashSet::new();
            for level in 0..=facet.max_level() {
                let fl = FacetLevel::new(facet, level).unwrap();
                let def = fl.definition().expect("definition missing");
                assert!(!def.is_empty());
                assert!(
                    seen.insert(def),
                    "duplicate definition under {facet:?}: {def}"
                );
                count += 1;
            }
        }
        assert_eq!(count, LEVEL_PAIR_COUNT);
        // 5 + 6 + 5 + 5 + 5 + 5 levels across the six facets.
        assert_eq!(count, 31);
    }

    #[test]
    fn definition_examples() {
        let e1 = FacetLevel::new(FacetKind::Evaluation, 1).unwrap();
        assert_eq!(level_definition(e1), "automated review only");
        let f0 = FacetLevel::new(FacetKind::Form, 0).unwrap();
        assert_eq!(level_definition(f0), "no form modification");
        let t2 = FacetLevel::new(FacetKind::Traceability, 2).unwrap();
        assert_eq!(level_definition(t2), "prompts or excerpts available");
    }

    #[test]
    fn qualifier_suffix_must_be_uppercase_ascii() {
        let i4 = FacetLevel::new(FacetKind::Intent, 4).unwrap();
        assert!(Qualifier::new(i4, 'Z').is_ok());
        assert!(Qualifier::new(i4, 'z').is_err());
        assert!(Qualifier::new(i4, '9').is_err());
        assert_eq!(Qualifier::new(i4, 'Z').unwrap().code(), "I4Z");
    }

    #[test]
    fn enumeration_is_exhaustive_and_duplicate_free() {
        let core: Vec<_> = CoreAnnotation::enumerate_all().collect();
        assert_eq!(core.len(), 150);
        assert_eq!(core.iter().collect::<HashSet<_>>().len(), 150);

        let extended: Vec<_> = ExtendedAnnotation::enumerate_all().collect();
        // 5 * 6 * 5 * 5 * 5 * 5 distinct tuples.
        assert_eq!(extended.len(), 18_750);
        assert_eq!(extended.iter().collect::<HashSet<_>>().len(), 18_750);
    }

    #[test]
    fn from_parts_rejects_slot_mismatch() {
        let f4 = FacetLevel::new(FacetKind::Form, 4).unwrap();
        let g4 = FacetLevel::new(FacetKind::Generation, 4).unwrap();
        assert!(CoreAnnotation::from_parts(g4, g4, f4).is_err());
    }

    #[test]
    fn annotation_level_lookup() {
        let core = CoreAnnotation::new(1, 0, 3).unwrap();
        let ann = Annotation::from(core);
        assert_eq!(ann.level(FacetKind::Form).unwrap().level(), 1);
        assert_eq!(ann.level(FacetKind::Intent), None);
        assert!(!ann.is_extended());

        let ext = ExtendedAnnotation::new(4, 4, 3, 4, 2, 3).unwrap();
        let ann = Annotation::from(ext);
        assert_eq!(ann.level(FacetKind::Traceability).unwrap().level(), 3);
        assert!(ann.is_extended());
        assert_eq!(ann.facet_levels().len(), 6);
    }
}
