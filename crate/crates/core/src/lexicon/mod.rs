//! Word–emotion association lexicon.
//!
//! The lexicon maps surface word types to the set of affect categories they
//! are associated with. It is the single source of category membership for
//! every other module, and it is immutable once built.
//!
//! The on-disk format is the NRC word-level layout: one association per line,
//! `word TAB category TAB 0|1`.

mod aggregate;
mod category;

use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::Path;

use rustc_hash::FxHashMap;
use sha2::{Digest, Sha256};

pub use aggregate::{
    aggregate_votes, agreement_stats, read_annotations, union_senses, AgreementStats, SenseAnnotation,
    SenseEntry,
};
pub use category::{AffectCategory, CategorySet, UnknownCategory};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EmotionLexicon {
    entries: FxHashMap<String, CategorySet>,
}

impl EmotionLexicon {
    /// Parses an NRC-format association stream.
    ///
    /// Blank lines are skipped. A word whose flags are all zero is kept with an
    /// empty category set, so "known and neutral" stays distinguishable from
    /// "unknown".
    pub fn from_reader<R: BufRead>(reader: R) -> Result<Self> {
        let mut entries: FxHashMap<String, CategorySet> = FxHashMap::default();
        for (idx, line) in reader.lines().enumerate() {
            let line_no = idx + 1;
            let line = line?;
            let line = line.trim_end_matches(['\r', '\n']);
            if line.trim().is_empty() {
                continue;
            }
            let malformed = |reason: &str| Error::MalformedLexiconLine {
                line: line_no,
                reason: reason.to_string(),
            };
            let mut fields = line.split('\t');
            let (Some(word), Some(label), Some(flag), None) =
                (fields.next(), fields.next(), fields.next(), fields.next())
            else {
                return Err(malformed("expected `word TAB category TAB 0|1`"));
            };
            let word = normalize_word(word).ok_or_else(|| malformed("word is empty or contains whitespace"))?;
            let category: AffectCategory = label.parse().map_err(|_| Error::UnknownCategory {
                line: line_no,
                label: label.to_string(),
            })?;
            let set = entries.entry(word).or_default();
            match flag.trim() {
                "1" => set.insert(category),
                "0" => {}
                _ => return Err(malformed("association flag must be 0 or 1")),
            }
        }
        Ok(EmotionLexicon { entries })
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let file = File::open(path)?;
        Self::from_reader(BufReader::new(file))
    }

    /// Builds a lexicon from `(word, categories)` pairs. Words are case-folded;
    /// repeated words have their category sets united.
    pub fn from_entries<I, S>(entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, CategorySet)>,
        S: AsRef<str>,
    {
        let mut map: FxHashMap<String, CategorySet> = FxHashMap::default();
        for (word, cats) in entries {
            let word = word.as_ref();
            let key = normalize_word(word).ok_or_else(|| Error::InvalidWord(word.to_string()))?;
            let slot = map.entry(key).or_default();
            *slot = slot.union(cats);
        }
        Ok(EmotionLexicon { entries: map })
    }

    /// Categories associated with `word`. Lookup is case-insensitive and an
    /// absent word yields the empty set.
    #[inline]
    pub fn associations(&self, word: &str) -> CategorySet {
        if !needs_folding(word) {
            return self.entries.get(word).copied().unwrap_or_default();
        }
        let mut buf = [0u8; 64];
        if word.is_ascii() && word.len() <= buf.len() {
            let folded = &mut buf[..word.len()];
            folded.copy_from_slice(word.as_bytes());
            folded.make_ascii_lowercase();
            let folded = std::str::from_utf8(folded).expect("ASCII stays UTF-8");
            return self.entries.get(folded).copied().unwrap_or_default();
        }
        self.entries.get(&word.to_lowercase()).copied().unwrap_or_default()
    }

    pub fn contains_word(&self, word: &str) -> bool {
        if needs_folding(word) {
            self.entries.contains_key(&word.to_lowercase())
        } else {
            self.entries.contains_key(word)
        }
    }

    /// Number of word types.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, CategorySet)> {
        self.entries.iter().map(|(w, c)| (w.as_str(), *c))
    }

    /// Words associated with `category`, sorted.
    pub fn words_for(&self, category: AffectCategory) -> Vec<&str> {
        let mut words: Vec<&str> = self
            .entries
            .iter()
            .filter(|(_, c)| c.contains(category))
            .map(|(w, _)| w.as_str())
            .collect();
        words.sort_unstable();
        words
    }

    /// Writes the canonical serialization: every word with all ten flags,
    /// sorted by word and then by category label.
    pub fn write_tsv<W: Write>(&self, mut out: W) -> io::Result<()> {
        let mut words: Vec<(&String, &CategorySet)> = self.entries.iter().collect();
        words.sort_unstable_by(|a, b| a.0.cmp(b.0));
        for (word, cats) in words {
            for c in AffectCategory::ALL {
                writeln!(out, "{}\t{}\t{}", word, c.as_str(), u8::from(cats.contains(c)))?;
            }
        }
        Ok(())
    }

    pub fn to_tsv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_tsv(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("lexicon words are UTF-8")
    }

    /// SHA-256 of the canonical serialization, hex encoded. Two lexicons have
    /// the same fingerprint iff they hold the same associations.
    pub fn fingerprint(&self) -> String {
        let mut hasher = Sha256::new();
        self.write_tsv(HashWriter(&mut hasher)).expect("hashing cannot fail");
        hex::encode(hasher.finalize())
    }
}

struct HashWriter<'a>(&'a mut Sha256);

impl Write for HashWriter<'_> {
    fn write(&mut self, buf: &[u8]) -> io::Result<usize> {
        self.0.update(buf);
        Ok(buf.len())
    }

    fn flush(&mut self) -> io::Result<()> {
        Ok(())
    }
}

#[inline]
fn needs_folding(word: &str) -> bool {
    word.bytes().any(|b| !b.is_ascii_lowercase() && (b.is_ascii_uppercase() || !b.is_ascii()))
}

fn normalize_word(word: &str) -> Option<String> {
    let word = word.trim();
    if word.is_empty() || word.chars().any(char::is_whitespace) {
        return None;
    }
    Some(word.to_lowercase())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn load(text: &str) -> Result<EmotionLexicon> {
        EmotionLexicon::from_reader(text.as_bytes())
    }

    #[test]
    fn reads_flags() {
        let lex = load("abandon\tfear\t1\nabandon\tjoy\t0\n").unwrap();
        let a = lex.associations("abandon");
        assert!(a.contains(AffectCategory::Fear));
        assert!(!a.contains(AffectCategory::Joy));
        assert_eq!(lex.len(), 1);
    }

    #[test]
    fn empty_stream_is_empty_lexicon() {
        let lex = load("").unwrap();
        assert_eq!(lex.len(), 0);
        assert!(lex.is_empty());
    }

    #[test]
    fn all_zero_word_is_known_but_neutral() {
        let text: String = AffectCategory::ALL
            .iter()
            .map(|c| format!("aback\t{}\t0\n", c))
            .collect();
        let lex = load(&text).unwrap();
        assert!(lex.contains_word("aback"));
        assert!(lex.associations("aback").is_empty());
        assert!(!lex.contains_word("abacus"));
    }

    #[test]
    fn malformed_line_reports_line_number() {
        let err = load("abandon\tfear\t1\n\nabandon fear 1\n").unwrap_err();
        match err {
            Error::MalformedLexiconLine { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected error {other:?}"),
        }
        assert!(matches!(
            load("abandon\tfear\t2\n").unwrap_err(),
            Error::MalformedLexiconLine { line: 1, .. }
        ));
        assert!(matches!(
            load("abandon\tfear\t1\textra\n").unwrap_err(),
            Error::MalformedLexiconLine { line: 1, .. }
        ));
    }

    #[test]
    fn unknown_category_is_rejected() {
        match load("abandon\tboredom\t1\n").unwrap_err() {
            Error::UnknownCategory { line, label } => {
                assert_eq!(line, 1);
                assert_eq!(label, "boredom");
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn lookup_is_case_insensitive_and_total() {
        let lex = load("Abandon\tfear\t1\n").unwrap();
        assert_eq!(lex.associations("ABANDON"), lex.associations("abandon"));
        assert!(lex.associations("").is_empty());
        assert!(lex.associations("zzz").is_empty());
        assert!(lex.iter().all(|(w, _)| w == w.to_lowercase()));
    }

    #[test]
    fn crlf_lines_are_accepted() {
        let lex = load("abandon\tfear\t1\r\nabandon\tjoy\t0\r\n").unwrap();
        assert!(lex.associations("abandon").contains(AffectCategory::Fear));
    }

    #[test]
    fn fingerprint_tracks_content() {
        let a = load("abandon\tfear\t1\n").unwrap();
        let b = load("abandon\tfear\t1\nabandon\tjoy\t0\n").unwrap();
        let c = load("abandon\tjoy\t1\n").unwrap();
        assert_eq!(a.fingerprint(), b.fingerprint());
        assert_ne!(a.fingerprint(), c.fingerprint());
    }

    fn arb_lexicon() -> impl Strategy<Value = EmotionLexicon> {
        prop::collection::hash_map("[a-z][a-z']{0,8}", 0u16..1024, 0..40).prop_map(|m| {
            EmotionLexicon::from_entries(m.into_iter().map(|(w, bits)| {
                let set: CategorySet = AffectCategory::ALL
                    .into_iter()
                    .filter(|c| bits & (1 << c.index()) != 0)
                    .collect();
                (w, set)
            }))
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn serialize_then_load_is_identity(lex in arb_lexicon()) {
            let text = lex.to_tsv_string();
            let back = load(&text).unwrap();
            prop_assert_eq!(&back, &lex);
            prop_assert_eq!(back.to_tsv_string(), text);
        }
    }
}
