//! Extension registries: local declarations of qualifier suffixes, fragment
//! overrides, and tool references.
//!
//! The registry file format is experimental; qualifier semantics beyond the
//! baseline model are not standardized. One directive per line:
//!
//! ```text
//! # comment
//! qualifier I4Z Institutional variant of conceptual support
//! fragment explanatory F4 The text was rebuilt around a new argument.
//! responsibility The human author remains responsible for the final text.
//! tool openai2026 | OpenAI | GPT Models | 2026 | https://developers.openai.com | 2026-04-25
//! ```
//!
//! `qualifier` declares a (facet, level, suffix) triple; validation treats
//! undeclared suffixes as warnings. `fragment` overrides one disclosure
//! fragment for a profile (`explanatory`, `publisher` or `compliance`).
//! `responsibility` replaces the default responsibility statement. `tool`
//! declares a citable AI system (pipe-separated fields: key, author, title,
//! year, url, accessed; the url may be left empty).

use std::collections::HashMap;
use std::path::Path;

use crate::disclosure::DisclosureProfile;
use crate::error::RegistryError;
use crate::facet::{FacetKind, Qualifier};
use crate::record::ToolRef;

/// Declarations loaded from zero or more registry files.
#[derive(Debug, Clone, Default)]
pub struct ExtensionRegistry {
    qualifiers: HashMap<(FacetKind, u8, char), String>,
    fragments: HashMap<(DisclosureProfile, FacetKind, u8), String>,
    responsibility: Option<String>,
    tools: Vec<ToolRef>,
}

impl ExtensionRegistry {
    /// Parses registry text. Line numbers in errors are 1-based.
    pub fn parse(text: &str) -> Result<ExtensionRegistry, RegistryError> {
        let mut registry = ExtensionRegistry::default();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (directive, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            let rest = rest.trim();
            match directive {
                "qualifier" => registry.parse_qualifier(line_no, rest)?,
                "fragment" => registry.parse_fragment(line_no, rest)?,
                "responsibility" => {
                    if rest.is_empty() {
                        return Err(syntax(line_no, "responsibility directive needs a sentence"));
                    }
                    registry.responsibility = Some(rest.to_string());
                }
                "tool" => registry.parse_tool(line_no, rest)?,
                other => {
                    return Err(syntax(line_no, format!("unknown directive {other:?}")));
                }
            }
        }
        Ok(registry)
    }

    /// Loads and parses a registry file.
    pub fn load(path: impl AsRef<Path>) -> Result<ExtensionRegistry, RegistryError> {
        let text = std::fs::read_to_string(path)?;
        ExtensionRegistry::parse(&text)
    }

    fn parse_qualifier(&mut self, line_no: usize, rest: &str) -> Result<(), RegistryError> {
        let (code, description) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
        let triple = parse_qualifier_code(code)
            .ok_or_else(|| syntax(line_no, format!("invalid qualifier code {code:?}")))?;
        self.qualifiers
            .insert(triple, description.trim().to_string());
        Ok(())
    }

    fn parse_fragment(&mut self, line_no: usize, rest: &str) -> Result<(), RegistryError> {
        let mut parts = rest.splitn(3, char::is_whitespace);
        let profile_token = parts.next().unwrap_or("");
        let code_token = parts.next().unwrap_or("");
        let text = parts.next().unwrap_or("").trim();
        let profile = DisclosureProfile::from_label(profile_token).ok_or_else(|| {
            syntax(
                line_no,
                format!("unknown disclosure profile {profile_token:?}"),
            )
        })?;
        let (facet, level) = parse_level_code(code_token)
            .ok_or_else(|| syntax(line_no, format!("invalid facet-level code {code_token:?}")))?;
        if text.is_empty() {
            return Err(syntax(line_no, "fragment directive needs replacement text"));
        }
        self.fragments
            .insert((profile, facet, level), text.to_string());
        Ok(())
    }

    fn parse_tool(&mut self, line_no: usize, rest: &str) -> Result<(), RegistryError> {
        let fields: Vec<&str> = rest.split('|').map(str::trim).collect();
        if fields.len() != 6 {
            return Err(syntax(
                line_no,
                "tool directive takes six pipe-separated fields: key | author | title | year | url | accessed",
            ));
        }
        let year: i32 = fields[3]
            .parse()
            .map_err(|_| syntax(line_no, format!("invalid year {:?}", fields[3])))?;
        let tool = ToolRef {
            cite_key: fields[0].to_string(),
            author: fields[1].to_string(),
            title: fields[2].to_string(),
            year,
            url: fields[4].to_string(),
            accessed: fields[5].to_string(),
        };
        if !tool.cite_key_is_valid() {
            return Err(syntax(
                line_no,
                format!("invalid cite key {:?}", tool.cite_key),
            ));
        }
        self.tools.push(tool);
        Ok(())
    }

    /// Declares a qualifier triple programmatically.
    pub fn register_qualifier(
        &mut self,
        facet: FacetKind,
        level: u8,
        suffix: char,
        description: impl Into<String>,
    ) {
        self.qualifiers
            .insert((facet, level, suffix), description.into());
    }

    /// Whether the (facet, level, suffix) triple of `qualifier` is declared.
    pub fn is_registered(&self, qualifier: &Qualifier) -> bool {
        let fl = qualifier.facet_level();
        self.qualifiers
            .contains_key(&(fl.facet(), fl.level(), qualifier.suffix()))
    }

    /// The fragment override for one profile and facet-level pair, if any.
    pub fn fragment_override(
        &self,
        profile: DisclosureProfile,
        facet: FacetKind,
        level: u8,
    ) -> Option<&str> {
        self.fragments
            .get(&(profile, facet, level))
            .map(String::as_str)
    }

    /// The responsibility-statement override, if any.
    pub fn responsibility_override(&self) -> Option<&str> {
        self.responsibility.as_deref()
    }

    /// Tools declared by `tool` directives, in file order.
    pub fn tools(&self) -> &[ToolRef] {
        &self.tools
    }
}

fn syntax(line: usize, message: impl Into<String>) -> RegistryError {
    RegistryError::Syntax {
        line,
        message: message.into(),
    }
}

/// Parses a two-character code like `F4` into a (facet, level) pair.
fn parse_level_code(code: &str) -> Option<(FacetKind, u8)> {
    let mut chars = code.chars();
    let facet = FacetKind::from_code(chars.next()?)?;
    let level = chars.next()?.to_digit(10)? as u8;
    if chars.next().is_some() || level > facet.max_level() {
        return None;
    }
    Some((facet, level))
}

/// Parses a three-character code like `I4Z` into a qualifier triple.
fn parse_qualifier_code(code: &str) -> Option<(FacetKind, u8, char)> {
    let mut chars = code.chars();
    let facet = FacetKind::from_code(chars.next()?)?;
    let level = chars.next()?.to_digit(10)? as u8;
    let suffix = chars.next()?;
    if chars.next().is_some() || level > facet.max_level() || !suffix.is_ascii_uppercase() {
        return None;
    }
    Some((facet, level, suffix))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::facet::FacetLevel;

    #[test]
    fn parses_all_directives() {
        let text = "\
# local extensions
qualifier I4Z Institutional variant of conceptual support

fragment explanatory F4 The text was rebuilt around a new argument.
responsibility The human author answers for everything here.
tool openai2026 | OpenAI | GPT Models | 2026 | https://developers.openai.com | 2026-04-25
";
        let registry = ExtensionRegistry::parse(text).unwrap();
        let i4 = FacetLevel::new(FacetKind::Intent, 4).unwrap();
        assert!(registry.is_registered(&Qualifier::new(i4, 'Z').unwrap()));
        assert!(!registry.is_registered(&Qualifier::new(i4, 'Q').unwrap()));
        assert_eq!(
            registry.fragment_override(DisclosureProfile::Explanatory, FacetKind::Form, 4),
            Some("The text was rebuilt around a new argument.")
        );
        assert_eq!(
            registry.responsibility_override(),
            Some("The human author answers for everything here.")
        );
        assert_eq!(registry.tools().len(), 1);
        assert_eq!(registry.tools()[0].cite_key, "openai2026");
        assert_eq!(registry.tools()[0].url, "https://developers.openai.com");
    }

    #[test]
    fn rejects_bad_lines_with_line_numbers() {
        let err = ExtensionRegistry::parse("qualifier I9Z nope").unwrap_err();
        match err {
            RegistryError::Syntax { line, .. } => assert_eq!(line, 1),
            other => panic!("unexpected error: {other}"),
        }
        assert!(ExtensionRegistry::parse("qualifier I4ZZ long").is_err());
        assert!(ExtensionRegistry::parse("fragment poetic F4 text").is_err());
        assert!(ExtensionRegistry::parse("mystery directive").is_err());
        assert!(ExtensionRegistry::parse("tool k | a | t | year | u | d").is_err());
    }

    #[test]
    fn tool_url_may_be_empty() {
        let registry =
            ExtensionRegistry::parse("tool k1 | Vendor | Title | 2025 |  | 2025-01-31").unwrap();
        assert_eq!(registry.tools()[0].url, "");
    }
}
