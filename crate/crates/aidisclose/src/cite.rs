//! BibTeX citation entries for AI systems used as tools.

use chrono::NaiveDate;

use crate::error::CiteError;
use crate::record::ToolRef;

/// Emits a `@misc` BibTeX entry for one tool.
///
/// Field order is fixed (author, title, year, url, note) so entries diff
/// deterministically; an empty url omits the url field. The access date goes
/// into the note as `Accessed: YYYY-MM-DD` and must be a real calendar date.
pub fn make_bibtex(tool: &ToolRef) -> Result<String, CiteError> {
    if !tool.cite_key_is_valid() {
        return Err(CiteError::InvalidCiteKey(tool.cite_key.clone()));
    }
    if NaiveDate::parse_from_str(&tool.accessed, "%Y-%m-%d").is_err() {
        return Err(CiteError::InvalidDate(tool.accessed.clone()));
    }

    let mut entry = String::new();
    entry.push_str(&format!("@misc{{{},\n", tool.cite_key));
    entry.push_str(&format!("  author = {{{}}},\n", tool.author));
    entry.push_str(&format!("  title = {{{}}},\n", tool.title));
    entry.push_str(&format!("  year = {{{}}},\n", tool.year));
    if !tool.url.is_empty() {
        entry.push_str(&format!("  url = {{{}}},\n", tool.url));
    }
    entry.push_str(&format!("  note = {{Accessed: {}}}\n", tool.accessed));
    entry.push('}');
    Ok(entry)
}

/// Emits entries for several tools, in input order, separated by blank lines.
pub fn make_bibtex_all(tools: &[ToolRef]) -> Result<String, CiteError> {
    let entries: Result<Vec<String>, CiteError> = tools.iter().map(make_bibtex).collect();
    Ok(entries?.join("\n\n"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn openai_tool() -> ToolRef {
        ToolRef {
            author: "OpenAI".into(),
            title: "GPT Models".into(),
            year: 2026,
            url: "https://developers.openai.com".into(),
            accessed: "2026-04-25".into(),
            cite_key: "openai2026".into(),
        }
    }

    #[test]
    fn openai_entry_is_exact() {
        let expected = "@misc{openai2026,\n  author = {OpenAI},\n  title = {GPT Models},\n  year = {2026},\n  url = {https://developers.openai.com},\n  note = {Accessed: 2026-04-25}\n}";
        assert_eq!(make_bibtex(&openai_tool()).unwrap(), expected);
    }

    #[test]
    fn empty_url_is_omitted() {
        let mut tool = openai_tool();
        tool.url = String::new();
        let entry = make_bibtex(&tool).unwrap();
        assert!(!entry.contains("url"));
        for field in ["author", "title", "year", "note"] {
            assert!(entry.contains(field));
        }
    }

    #[test]
    fn invalid_dates_are_rejected() {
        for bad in ["2026-02-30", "2026-13-01", "not-a-date", "2026/04/25", ""] {
            let mut tool = openai_tool();
            tool.accessed = bad.to_string();
            assert!(
                matches!(make_bibtex(&tool), Err(CiteError::InvalidDate(_))),
                "accepted {bad:?}"
            );
        }
        // Leap day in a leap year is fine.
        let mut tool = openai_tool();
        tool.accessed = "2024-02-29".to_string();
        assert!(make_bibtex(&tool).is_ok());
    }

    #[test]
    fn invalid_cite_keys_are_rejected() {
        for bad in ["", "has space"] {
            let mut tool = openai_tool();
            tool.cite_key = bad.to_string();
            assert!(matches!(
                make_bibtex(&tool),
                Err(CiteError::InvalidCiteKey(_))
            ));
        }
    }

    #[test]
    fn multiple_entries_preserve_order() {
        let mut second = openai_tool();
        second.cite_key = "anthropic2026".into();
        second.author = "Anthropic".into();
        let text = make_bibtex_all(&[openai_tool(), second]).unwrap();
        let first_pos = text.find("openai2026").unwrap();
        let second_pos = text.find("anthropic2026").unwrap();
        assert!(first_pos < second_pos);
        assert_eq!(text.matches("@misc").count(), 2);
    }

    #[test]
    fn entries_have_balanced_braces_and_one_key() {
        let entry = make_bibtex(&openai_tool()).unwrap();
        let open = entry.matches('{').count();
        let close = entry.matches('}').count();
        assert_eq!(open, close);
        assert_eq!(entry.matches("openai2026").count(), 1);
    }
}
