use std::borrow::Cow;

use serde::{Deserialize, Serialize};

/// Latest publication year accepted from a record.
pub const MAX_YEAR: u16 = 2100;

/// A normalized 5-gram with its per-year occurrence count.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NgramRecord {
    pub tokens: [String; 5],
    pub year: u16,
    /// Occurrences in books published that year.
    pub match_count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NgramParseError {
    #[error("expected at least 3 tab-separated fields, found {0}")]
    FieldCount(usize),
    #[error("expected 5 tokens, found {0}")]
    TokenCount(usize),
    #[error("year `{0}` is not an integer")]
    BadYear(String),
    #[error("year {0} is outside 0..=2100")]
    YearOutOfRange(u64),
    #[error("match count `{0}` is not an integer")]
    BadMatchCount(String),
    #[error("match count must be at least 1")]
    ZeroMatchCount,
    #[error("line is not valid UTF-8")]
    NotUtf8,
}

/// Borrowed view of a line: tokens have their POS suffix removed but are not
/// case-folded yet.
#[derive(Debug, Clone, Copy)]
pub(crate) struct NgramLine<'a> {
    pub tokens: [&'a str; 5],
    pub year: u16,
    pub match_count: u64,
}

/// Drops a part-of-speech tag such as `_NOUN` or `_.` from a token. Tokens
/// that are only a tag (`_START_`, `_NOUN_`) are left alone.
#[inline]
pub fn strip_pos_suffix(token: &str) -> &str {
    let bytes = token.as_bytes();
    // tags end in an uppercase letter or '.', so most tokens exit here
    match bytes.last() {
        Some(b) if b.is_ascii_uppercase() || *b == b'.' => {}
        _ => return token,
    }
    match bytes.iter().rposition(|&b| b == b'_') {
        Some(pos) if pos > 0 && pos + 1 < bytes.len() => {
            if bytes[pos + 1..].iter().all(|b| b.is_ascii_uppercase() || *b == b'.') {
                &token[..pos]
            } else {
                token
            }
        }
        _ => token,
    }
}

/// POS suffix removal plus case folding.
pub fn normalize_token(raw: &str) -> Cow<'_, str> {
    let t = strip_pos_suffix(raw);
    if t.is_ascii() && !t.bytes().any(|b| b.is_ascii_uppercase()) {
        Cow::Borrowed(t)
    } else {
        Cow::Owned(t.to_lowercase())
    }
}

#[inline]
pub(crate) fn parse_line(line: &str) -> Result<NgramLine<'_>, NgramParseError> {
    let bytes = line.as_bytes();
    let mut tabs = [0usize; 3];
    let mut found = 0;
    for (i, &b) in bytes.iter().enumerate() {
        if b == b'\t' {
            tabs[found] = i;
            found += 1;
            if found == 3 {
                break;
            }
        }
    }
    let (ngram, year, count) = match found {
        0 | 1 => {
            let fields = if line.is_empty() { 0 } else { found + 1 };
            return Err(NgramParseError::FieldCount(fields));
        }
        2 => (&line[..tabs[0]], &line[tabs[0] + 1..tabs[1]], &line[tabs[1] + 1..]),
        _ => (&line[..tabs[0]], &line[tabs[0] + 1..tabs[1]], &line[tabs[1] + 1..tabs[2]]),
    };

    let mut tokens = [""; 5];
    let mut n = 0;
    let bytes = ngram.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i].is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        while i < bytes.len() && !bytes[i].is_ascii_whitespace() {
            i += 1;
        }
        if n < 5 {
            tokens[n] = strip_pos_suffix(&ngram[start..i]);
        }
        n += 1;
    }
    if n != 5 {
        return Err(NgramParseError::TokenCount(n));
    }

    let year_value = parse_u64(year).ok_or_else(|| NgramParseError::BadYear(year.to_string()))?;
    if year_value > u64::from(MAX_YEAR) {
        return Err(NgramParseError::YearOutOfRange(year_value));
    }
    let match_count = parse_u64(count).ok_or_else(|| NgramParseError::BadMatchCount(count.to_string()))?;
    if match_count == 0 {
        return Err(NgramParseError::ZeroMatchCount);
    }
    Ok(NgramLine {
        tokens,
        year: year_value as u16,
        match_count,
    })
}

/// Unsigned decimal, surrounding whitespace allowed.
#[inline]
fn parse_u64(field: &str) -> Option<u64> {
    let digits = field.trim_ascii().as_bytes();
    if digits.is_empty() {
        return None;
    }
    digits.iter().try_fold(0u64, |acc, &b| {
        let d = b.wrapping_sub(b'0');
        if d > 9 {
            return None;
        }
        acc.checked_mul(10)?.checked_add(u64::from(d))
    })
}

/// Parses `w1 w2 w3 w4 w5 TAB year TAB match_count [TAB …]`. Fields after the
/// match count (volume counts) are ignored.
pub fn parse_5gram_line(line: &str) -> Result<NgramRecord, NgramParseError> {
    let line = line.trim_end_matches(['\n', '\r']);
    let parsed = parse_line(line)?;
    Ok(NgramRecord {
        tokens: parsed.tokens.map(|t| normalize_token(t).into_owned()),
        year: parsed.year,
        match_count: parsed.match_count,
    })
}
