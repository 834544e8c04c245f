use serde::{Deserialize, Serialize};

/// Tag stored alongside persisted profiles so they are never mixed with
/// profiles produced by a different tokenization rule.
pub const TOKENIZER_VERSION: &str = "letters-apostrophe-lower/1";

/// Ordered, case-folded word tokens of one document.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TokenStream {
    tokens: Vec<String>,
}

impl TokenStream {
    /// Wraps already-normalized tokens. Nothing is re-tokenized.
    pub fn from_tokens<I, S>(tokens: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        TokenStream {
            tokens: tokens.into_iter().map(Into::into).collect(),
        }
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    /// N, the total number of word tokens.
    pub fn total_count(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.tokens.iter().map(String::as_str)
    }

    pub fn concat(&self, other: &TokenStream) -> TokenStream {
        let mut tokens = Vec::with_capacity(self.tokens.len() + other.tokens.len());
        tokens.extend_from_slice(&self.tokens);
        tokens.extend_from_slice(&other.tokens);
        TokenStream { tokens }
    }
}

#[inline]
fn is_apostrophe(ch: char) -> bool {
    ch == '\'' || ch == '\u{2019}'
}

/// Splits text into lowercase word tokens.
///
/// A token is a maximal run of letters, where a single apostrophe (ASCII or
/// U+2019) directly between two letters is kept as `'`. Everything else,
/// digits included, separates tokens. No stemming.
pub fn tokenize(text: &str) -> TokenStream {
    let mut tokens = Vec::new();
    let mut current = String::new();
    let mut pending_apostrophe = false;

    for ch in text.chars() {
        if ch.is_alphabetic() {
            if pending_apostrophe {
                current.push('\'');
                pending_apostrophe = false;
            }
            current.extend(ch.to_lowercase());
        } else if is_apostrophe(ch) && !current.is_empty() && !pending_apostrophe {
            pending_apostrophe = true;
        } else {
            pending_apostrophe = false;
            if !current.is_empty() {
                tokens.push(std::mem::take(&mut current));
            }
        }
    }
    if !current.is_empty() {
        tokens.push(current);
    }
    TokenStream { tokens }
}
