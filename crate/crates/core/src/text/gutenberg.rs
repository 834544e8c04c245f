//! Project Gutenberg header/footer removal.

fn is_marker(line: &str, kind: &str) -> bool {
    let line = line.trim();
    line.starts_with("***") && line.to_ascii_uppercase().contains(kind)
}

/// Returns the literary content between the `*** START OF …` and
/// `*** END OF …` marker lines.
///
/// With only a start marker, everything after it is kept; with only an end
/// marker, everything before it. Without markers the input is returned
/// unchanged.
pub fn strip_gutenberg_boilerplate(text: &str) -> &str {
    let mut start: Option<usize> = None;
    let mut end: Option<usize> = None;
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        if start.is_none() && end.is_none() && is_marker(line, "START OF") {
            start = Some(offset + line.len());
        } else if end.is_none() && is_marker(line, "END OF") {
            end = Some(offset);
            break;
        }
        offset += line.len();
    }
    match (start, end) {
        (None, None) => text,
        (Some(s), Some(e)) => &text[s..e],
        (Some(s), None) => {
            log::warn!("Gutenberg START marker without END marker; keeping the rest of the text");
            &text[s..]
        }
        (None, Some(e)) => {
            log::warn!("Gutenberg END marker without START marker; keeping the text before it");
            &text[..e]
        }
    }
}

/// The `Title:` field of a Gutenberg header, when present.
pub fn gutenberg_title(text: &str) -> Option<String> {
    text.lines()
        .take(400)
        .take_while(|l| !is_marker(l, "START OF"))
        .find_map(|l| l.trim().strip_prefix("Title:"))
        .map(|t| t.trim().to_string())
        .filter(|t| !t.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;

    const WRAPPED: &str = "The Project Gutenberg eBook of Hamlet\nTitle: Hamlet\n\n\
*** START OF THE PROJECT GUTENBERG EBOOK HAMLET ***\nTo be, or not to be.\nThat is the question.\n\
*** END OF THE PROJECT GUTENBERG EBOOK HAMLET ***\nLicense text here.\n";

    #[test]
    fn no_markers_is_identity() {
        let t = "Once upon a time.\n*not a marker*\n";
        assert_eq!(strip_gutenberg_boilerplate(t), t);
    }

    #[test]
    fn both_markers() {
        assert_eq!(
            strip_gutenberg_boilerplate(WRAPPED),
            "To be, or not to be.\nThat is the question.\n"
        );
    }

    #[test]
    fn start_marker_only() {
        let t = "header\n*** START OF THIS PROJECT GUTENBERG EBOOK X ***\nbody\nmore\n";
        assert_eq!(strip_gutenberg_boilerplate(t), "body\nmore\n");
    }

    #[test]
    fn end_marker_only() {
        let t = "body\n***END OF THE PROJECT GUTENBERG EBOOK X***\nlicense\n";
        assert_eq!(strip_gutenberg_boilerplate(t), "body\n");
    }

    #[test]
    fn title_from_header() {
        assert_eq!(gutenberg_title(WRAPPED).as_deref(), Some("Hamlet"));
        assert_eq!(gutenberg_title("no header"), None);
    }
}
