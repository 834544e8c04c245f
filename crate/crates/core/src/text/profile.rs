use std::collections::{BTreeMap, HashMap};
use std::ops::{Index, IndexMut};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::TokenStream;
use crate::error::{Error, Result};
use crate::lexicon::{AffectCategory, EmotionLexicon};

/// Per-category counters, serialized as a `{category: count}` map.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CategoryCounts([u64; AffectCategory::COUNT]);

impl CategoryCounts {
    pub fn iter(&self) -> impl Iterator<Item = (AffectCategory, u64)> + '_ {
        AffectCategory::ALL.into_iter().map(|c| (c, self.0[c.index()]))
    }

    pub fn add(&mut self, other: &CategoryCounts) {
        for (a, b) in self.0.iter_mut().zip(other.0) {
            *a += b;
        }
    }
}

impl Index<AffectCategory> for CategoryCounts {
    type Output = u64;

    fn index(&self, c: AffectCategory) -> &u64 {
        &self.0[c.index()]
    }
}

impl IndexMut<AffectCategory> for CategoryCounts {
    fn index_mut(&mut self, c: AffectCategory) -> &mut u64 {
        &mut self.0[c.index()]
    }
}

impl Serialize for CategoryCounts {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_map(self.iter())
    }
}

impl<'de> Deserialize<'de> for CategoryCounts {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let map = BTreeMap::<AffectCategory, u64>::deserialize(d)?;
        let mut counts = CategoryCounts::default();
        for (c, n) in map {
            counts[c] = n;
        }
        Ok(counts)
    }
}

/// Emotion word counts for one document.
///
/// Counts are token-frequency weighted: a word occurring five times adds five
/// to each of its categories. Only words with at least one category are
/// recorded in `word_counts_per_category`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmotionProfile {
    pub doc_id: String,
    pub total_tokens: u64,
    pub category_counts: CategoryCounts,
    /// Tokens associated with at least one of the eight emotions.
    pub emotion_token_count: u64,
    /// Tokens associated with at least one polarity.
    pub polar_token_count: u64,
    pub word_counts_per_category: BTreeMap<AffectCategory, BTreeMap<String, u64>>,
}

impl EmotionProfile {
    /// Occurrences of `word` in the document, as recorded by the profile.
    /// Words without any category association are not tracked and report 0.
    pub fn word_frequency(&self, word: &str) -> u64 {
        let word = word.to_lowercase();
        self.word_counts_per_category
            .values()
            .find_map(|m| m.get(&word).copied())
            .unwrap_or(0)
    }

    pub fn count(&self, category: AffectCategory) -> u64 {
        self.category_counts[category]
    }
}

/// Counts lexicon hits in `tokens`.
pub fn analyze(doc_id: impl Into<String>, tokens: &TokenStream, lexicon: &EmotionLexicon) -> EmotionProfile {
    let mut freq: HashMap<&str, u64> = HashMap::new();
    for t in tokens.iter() {
        *freq.entry(t).or_insert(0) += 1;
    }

    let mut category_counts = CategoryCounts::default();
    let mut emotion_token_count = 0;
    let mut polar_token_count = 0;
    let mut word_counts_per_category: BTreeMap<AffectCategory, BTreeMap<String, u64>> =
        AffectCategory::ALL.into_iter().map(|c| (c, BTreeMap::new())).collect();

    for (word, n) in freq {
        let cats = lexicon.associations(word);
        if cats.is_empty() {
            continue;
        }
        if cats.has_emotion() {
            emotion_token_count += n;
        }
        if cats.has_polarity() {
            polar_token_count += n;
        }
        for c in cats.iter() {
            category_counts[c] += n;
            word_counts_per_category
                .get_mut(&c)
                .expect("all categories present")
                .insert(word.to_string(), n);
        }
    }

    EmotionProfile {
        doc_id: doc_id.into(),
        total_tokens: tokens.total_count() as u64,
        category_counts,
        emotion_token_count,
        polar_token_count,
        word_counts_per_category,
    }
}

/// Share of the document's emotion tokens associated with `emotion`, as a
/// fraction in `[0, 1]`. Documents without emotion tokens give 0.
pub fn emotion_percentage(profile: &EmotionProfile, emotion: AffectCategory) -> Result<f64> {
    if !emotion.is_emotion() {
        return Err(Error::NotAnEmotion(emotion));
    }
    Ok(share(profile.category_counts[emotion], profile.emotion_token_count))
}

/// Like [`emotion_percentage`], but polarities are measured against the
/// polar-token count instead of the emotion-token count.
pub fn category_share(profile: &EmotionProfile, category: AffectCategory) -> f64 {
    let denom = if category.is_polarity() {
        profile.polar_token_count
    } else {
        profile.emotion_token_count
    };
    share(profile.category_counts[category], denom)
}

fn share(num: u64, den: u64) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

/// Density scale: how many tokens a density is expressed "per".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityConfig {
    per_tokens: u64,
}

impl DensityConfig {
    pub const DEFAULT_PER_TOKENS: u64 = 10_000;

    pub fn new(per_tokens: u64) -> Result<Self> {
        if per_tokens == 0 {
            return Err(Error::InvalidArgument("density window must be at least 1 token".into()));
        }
        Ok(DensityConfig { per_tokens })
    }

    pub fn per_tokens(&self) -> u64 {
        self.per_tokens
    }
}

impl Default for DensityConfig {
    fn default() -> Self {
        DensityConfig {
            per_tokens: Self::DEFAULT_PER_TOKENS,
        }
    }
}

/// Occurrences of `category` per `cfg.per_tokens()` tokens. Polarities are
/// handled the same way as emotions.
pub fn emotion_density(profile: &EmotionProfile, category: AffectCategory, cfg: &DensityConfig) -> Result<f64> {
    if profile.total_tokens == 0 {
        return Err(Error::EmptyDocument {
            doc_id: profile.doc_id.clone(),
        });
    }
    Ok(profile.category_counts[category] as f64 / profile.total_tokens as f64 * cfg.per_tokens as f64)
}

/// All ten densities of one document.
pub fn densities(profile: &EmotionProfile, cfg: &DensityConfig) -> Result<BTreeMap<AffectCategory, f64>> {
    AffectCategory::ALL
        .into_iter()
        .map(|c| emotion_density(profile, c, cfg).map(|d| (c, d)))
        .collect()
}

/// Signed percentage-point difference `100 * (pct_a - pct_b)` for each of
/// the eight emotions.
pub fn diff_percentages(a: &EmotionProfile, b: &EmotionProfile) -> Result<BTreeMap<AffectCategory, f64>> {
    for p in [a, b] {
        if p.emotion_token_count == 0 {
            return Err(Error::NoEmotionTokens {
                doc_id: p.doc_id.clone(),
            });
        }
    }
    AffectCategory::EMOTIONS
        .into_iter()
        .map(|e| Ok((e, 100.0 * (emotion_percentage(a, e)? - emotion_percentage(b, e)?))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexicon::CategorySet;
    use crate::text::tokenize;
    use proptest::prelude::*;
    use AffectCategory::*;

    fn lex() -> EmotionLexicon {
        EmotionLexicon::from_entries([
            ("death", [Fear, Sadness, Negative].into_iter().collect::<CategorySet>()),
            ("joyful", [Joy, Positive].into_iter().collect()),
            ("good", [Positive].into_iter().collect()),
            ("aback", CategorySet::EMPTY),
        ])
        .unwrap()
    }

    fn profile(words: &[&str]) -> EmotionProfile {
        analyze("doc", &TokenStream::from_tokens(words.iter().copied()), &lex())
    }

    #[test]
    fn counts_are_frequency_weighted() {
        let p = profile(&["death", "death", "joyful"]);
        assert_eq!(p.count(Fear), 2);
        assert_eq!(p.count(Sadness), 2);
        assert_eq!(p.count(Negative), 2);
        assert_eq!(p.count(Joy), 1);
        assert_eq!(p.count(Positive), 1);
        assert_eq!(p.count(Trust), 0);
        assert_eq!(p.emotion_token_count, 3);
        assert_eq!(p.polar_token_count, 3);
        assert_eq!(p.word_frequency("DEATH"), 2);
        assert_eq!(p.word_frequency("aback"), 0);
        assert!((emotion_percentage(&p, Fear).unwrap() - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn empty_stream_is_all_zero() {
        let p = profile(&[]);
        assert_eq!(p.total_tokens, 0);
        assert!(p.category_counts.iter().all(|(_, n)| n == 0));
        assert!(matches!(emotion_density(&p, Fear, &DensityConfig::default()), Err(Error::EmptyDocument { .. })));
    }

    #[test]
    fn neutral_text_has_zero_percentages() {
        let p = profile(&["the", "aback", "good"]);
        for e in AffectCategory::EMOTIONS {
            assert_eq!(emotion_percentage(&p, e).unwrap(), 0.0);
        }
        assert_eq!(category_share(&p, Positive), 1.0);
    }

    #[test]
    fn polarity_is_not_an_emotion() {
        let p = profile(&["death"]);
        assert!(matches!(emotion_percentage(&p, Negative), Err(Error::NotAnEmotion(Negative))));
    }

    #[test]
    fn density_arithmetic() {
        let mut p = profile(&[]);
        p.total_tokens = 600;
        p.category_counts[Fear] = 3;
        assert_eq!(emotion_density(&p, Fear, &DensityConfig::default()).unwrap(), 50.0);
        assert_eq!(emotion_density(&p, Joy, &DensityConfig::default()).unwrap(), 0.0);
        assert!(DensityConfig::new(0).is_err());
        assert_eq!(emotion_density(&p, Fear, &DensityConfig::new(100).unwrap()).unwrap(), 0.5);
    }

    #[test]
    fn diff_identity_and_errors() {
        let p = profile(&["death", "joyful", "joyful"]);
        assert!(diff_percentages(&p, &p).unwrap().values().all(|v| *v == 0.0));
        let neutral = profile(&["good"]);
        assert!(matches!(diff_percentages(&p, &neutral), Err(Error::NoEmotionTokens { .. })));
    }

    #[test]
    fn profile_serializes_with_category_names() {
        let p = profile(&["death"]);
        let json = serde_json::to_value(&p).unwrap();
        assert_eq!(json["category_counts"]["fear"], 1);
        let back: EmotionProfile = serde_json::from_value(json).unwrap();
        assert_eq!(back, p);
    }

    fn word() -> impl Strategy<Value = &'static str> {
        prop::sample::select(vec!["death", "joyful", "good", "aback", "the", "storm"])
    }

    proptest! {
        #[test]
        fn word_counts_reproduce_category_counts(words in prop::collection::vec(word(), 0..200)) {
            let p = profile(&words);
            for c in AffectCategory::ALL {
                let sum: u64 = p.word_counts_per_category[&c].values().sum();
                prop_assert_eq!(sum, p.count(c));
                prop_assert!(p.count(c) <= p.total_tokens);
            }
            let emo_sum: u64 = AffectCategory::EMOTIONS.iter().map(|e| p.count(*e)).sum();
            prop_assert!(p.emotion_token_count <= emo_sum);
        }

        #[test]
        fn concatenation_adds_counts(a in prop::collection::vec(word(), 0..100), b in prop::collection::vec(word(), 0..100)) {
            let ta = TokenStream::from_tokens(a.iter().copied());
            let tb = TokenStream::from_tokens(b.iter().copied());
            let pa = analyze("a", &ta, &lex());
            let pb = analyze("b", &tb, &lex());
            let pab = analyze("ab", &ta.concat(&tb), &lex());
            let mut sum = pa.category_counts;
            sum.add(&pb.category_counts);
            prop_assert_eq!(pab.category_counts, sum);
            prop_assert_eq!(pab.emotion_token_count, pa.emotion_token_count + pb.emotion_token_count);
        }

        #[test]
        fn doubling_text_preserves_densities(words in prop::collection::vec(word(), 1..100)) {
            let text = words.join(" ");
            let once = analyze("x", &tokenize(&text), &lex());
            let twice = analyze("x", &tokenize(&format!("{text} {text}")), &lex());
            let cfg = DensityConfig::default();
            for c in AffectCategory::ALL {
                prop_assert_eq!(emotion_density(&once, c, &cfg).unwrap(), emotion_density(&twice, c, &cfg).unwrap());
            }
        }

        #[test]
        fn diff_is_antisymmetric_and_bounded(a in prop::collection::vec(word(), 1..100), b in prop::collection::vec(word(), 1..100)) {
            let mut a = a; a.push("death");
            let mut b = b; b.push("joyful");
            let pa = profile(&a);
            let pb = profile(&b);
            let ab = diff_percentages(&pa, &pb).unwrap();
            let ba = diff_percentages(&pb, &pa).unwrap();
            for e in AffectCategory::EMOTIONS {
                prop_assert_eq!(ab[&e], -ba[&e]);
                prop_assert!((-100.0..=100.0).contains(&ab[&e]));
            }
        }
    }
}
