//! The textual grid notation: `|F4|G4|E3|I4|C2|T3|`.
//!
//! Grammar, applied bit-exactly:
//!
//! ```text
//! grid         := '|' token ( '|' token )* '|'    with token count 3 or 6
//! token        := facet_letter level_digit qualifier?
//! facet_letter := 'F' | 'G' | 'E' | 'I' | 'C' | 'T'   (case-insensitive on input)
//! level_digit  := '0'..'9'                            (range-checked per facet)
//! qualifier    := 'A'..'Z'
//! scoped_line  := scope_label ':' ws* grid
//! ```
//!
//! Parsing accepts lowercase facet letters and whitespace *around* the grid,
//! nothing else: interior whitespace, multi-digit levels, out-of-order facets
//! and partial extended grids are all rejected rather than repaired.
//! Serialization always emits the canonical uppercase, whitespace-free form.

use crate::error::GridError;
use crate::facet::{
    Annotation, CoreAnnotation, ExtendedAnnotation, FacetKind, FacetLevel, Qualifier,
};
use crate::record::AnnotationRecord;
use crate::scope::ScopePath;

/// One parsed grid cell: facet letter, level digit, optional suffix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GridToken {
    pub facet: FacetKind,
    pub level: u8,
    pub suffix: Option<char>,
}

impl GridToken {
    /// The cell text, e.g. `F4` or `I4Z`.
    pub fn code(&self) -> String {
        match self.suffix {
            Some(s) => format!("{}{}{}", self.facet.code(), self.level, s),
            None => format!("{}{}", self.facet.code(), self.level),
        }
    }
}

/// The grid tokens of a record, in canonical facet order.
pub fn grid_tokens(record: &AnnotationRecord) -> Vec<GridToken> {
    record
        .levels
        .facet_levels()
        .into_iter()
        .map(|fl| GridToken {
            facet: fl.facet(),
            level: fl.level(),
            suffix: record.qualifier_for(fl.facet()).map(|q| q.suffix()),
        })
        .collect()
}

/// Parses a grid into an unscoped annotation record.
///
/// A 3-cell grid yields a core record, a 6-cell grid an extended record;
/// any other arity is rejected.
pub fn parse_grid(text: &str) -> Result<AnnotationRecord, GridError> {
    let tokens = tokenize(text)?;

    let expected: &[FacetKind] = match tokens.len() {
        3 => &FacetKind::CORE,
        6 => &FacetKind::ALL,
        n => return Err(GridError::WrongArity(n)),
    };
    for (position, token) in tokens.iter().enumerate() {
        if token.facet != expected[position] {
            if tokens[..position].iter().any(|t| t.facet == token.facet) {
                return Err(GridError::DuplicateFacet(token.facet));
            }
            return Err(GridError::WrongFacetOrder {
                position,
                found: token.facet,
            });
        }
    }

    let level_of = |facet: FacetKind| {
        tokens
            .iter()
            .find(|t| t.facet == facet)
            .map(|t| t.level)
            .expect("token order verified")
    };
    let levels: Annotation = if tokens.len() == 3 {
        CoreAnnotation::new(
            level_of(FacetKind::Form),
            level_of(FacetKind::Generation),
            level_of(FacetKind::Evaluation),
        )
        .expect("levels range-checked during tokenization")
        .into()
    } else {
        ExtendedAnnotation::new(
            level_of(FacetKind::Form),
            level_of(FacetKind::Generation),
            level_of(FacetKind::Evaluation),
            level_of(FacetKind::Intent),
            level_of(FacetKind::Control),
            level_of(FacetKind::Traceability),
        )
        .expect("levels range-checked during tokenization")
        .into()
    };

    let qualifiers = tokens
        .iter()
        .filter_map(|t| {
            t.suffix.map(|s| {
                let fl = FacetLevel::new(t.facet, t.level).expect("range-checked");
                Qualifier::new(fl, s).expect("suffix checked during tokenization")
            })
        })
        .collect();

    Ok(AnnotationRecord::new(levels).with_qualifiers(qualifiers))
}

fn tokenize(text: &str) -> Result<Vec<GridToken>, GridError> {
    let grid = text.trim();
    if grid.chars().any(char::is_whitespace) {
        return Err(GridError::Malformed(
            "whitespace inside the grid".to_string(),
        ));
    }
    if grid.len() < 2 || !grid.starts_with('|') || !grid.ends_with('|') {
        return Err(GridError::Malformed(
            "a grid starts and ends with '|'".to_string(),
        ));
    }

    let interior = &grid[1..grid.len() - 1];
    let mut tokens = Vec::new();
    for cell in interior.split('|') {
        if cell.is_empty() {
            return Err(GridError::Malformed("empty cell".to_string()));
        }
        tokens.push(parse_cell(cell)?);
    }
    Ok(tokens)
}

fn parse_cell(cell: &str) -> Result<GridToken, GridError> {
    let mut chars = cell.chars();

    let letter = chars.next().expect("cell checked non-empty");
    if !letter.is_ascii_alphabetic() {
        return Err(GridError::Malformed(format!(
            "cell {cell:?} does not start with a facet letter"
        )));
    }
    let facet = FacetKind::from_code(letter).ok_or(GridError::UnknownFacet(letter))?;

    let level = match chars.next() {
        Some(d) if d.is_ascii_digit() => d.to_digit(10).expect("ascii digit") as u8,
        _ => {
            return Err(GridError::Malformed(format!(
                "cell {cell:?} has no level digit after the facet letter"
            )))
        }
    };

    let suffix = match chars.next() {
        None => None,
        Some(s) if s.is_ascii_digit() => {
            return Err(GridError::Malformed(format!(
                "cell {cell:?} has a multi-digit level; levels are single digits"
            )))
        }
        Some(s) if s.is_ascii_uppercase() => Some(s),
        Some(s) => {
            return Err(GridError::Malformed(format!(
                "cell {cell:?} has an invalid qualifier suffix {s:?} (A-Z only)"
            )))
        }
    };
    if chars.next().is_some() {
        return Err(GridError::Malformed(format!(
            "cell {cell:?} is longer than letter + digit + optional suffix"
        )));
    }

    if level > facet.max_level() {
        return Err(GridError::LevelOutOfRange { facet, level });
    }

    Ok(GridToken {
        facet,
        level,
        suffix,
    })
}

/// Serializes a record's levels and qualifiers into the canonical grid.
///
/// Uppercase letters, no whitespace, leading and trailing pipe, facets in
/// canonical order; the output re-parses to an equal (unscoped) record.
pub fn serialize_grid(record: &AnnotationRecord) -> String {
    let mut out = String::with_capacity(record.levels.facets().len() * 4 + 1);
    out.push('|');
    for token in grid_tokens(record) {
        out.push_str(&token.code());
        out.push('|');
    }
    out
}

/// Parses a `scope_label: grid` line.
///
/// The split happens at the first colon; whitespace around both halves is
/// tolerated. The returned record carries the parsed scope.
pub fn parse_scoped_line(text: &str) -> Result<(ScopePath, AnnotationRecord), GridError> {
    let (label, grid) = text.split_once(':').ok_or(GridError::MissingColon)?;
    let scope = ScopePath::parse_label(label)?;
    let record = parse_grid(grid)?.with_scope(scope.clone());
    Ok((scope, record))
}
