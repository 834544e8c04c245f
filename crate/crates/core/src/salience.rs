//! Relative salience of words across two texts, and the ranked word lists
//! behind comparison word clouds.
//!
//! The relative salience of `w` with respect to texts T1 and T2 is
//! `f1/N1 - f2/N2`, where `f` is the frequency of `w` and `N` the token count
//! of each text. A cloud for "T1 − T2" shows the words most over-represented
//! in T1.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lexicon::AffectCategory;
use crate::text::EmotionProfile;

pub const DEFAULT_CLOUD_SIZE: usize = 50;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SalienceEntry {
    pub word: String,
    pub f1: u64,
    pub f2: u64,
    pub n1: u64,
    pub n2: u64,
    pub score: f64,
}

fn score(f1: u64, n1: u64, f2: u64, n2: u64) -> f64 {
    f1 as f64 / n1 as f64 - f2 as f64 / n2 as f64
}

fn require_tokens(p: &EmotionProfile) -> Result<()> {
    if p.total_tokens == 0 {
        return Err(Error::EmptyDocument {
            doc_id: p.doc_id.clone(),
        });
    }
    Ok(())
}

/// Relative salience of one word. Frequencies come from the profiles, so a
/// word with no lexicon association scores 0 in both texts.
pub fn relative_salience(word: &str, p1: &EmotionProfile, p2: &EmotionProfile) -> Result<SalienceEntry> {
    require_tokens(p1)?;
    require_tokens(p2)?;
    let (f1, f2) = (p1.word_frequency(word), p2.word_frequency(word));
    Ok(SalienceEntry {
        word: word.to_lowercase(),
        f1,
        f2,
        n1: p1.total_tokens,
        n2: p2.total_tokens,
        score: score(f1, p1.total_tokens, f2, p2.total_tokens),
    })
}

/// Up to `k` words of `category` with the largest positive salience toward
/// `p1`, by descending score and then by word.
pub fn salience_cloud(
    p1: &EmotionProfile,
    p2: &EmotionProfile,
    category: AffectCategory,
    k: usize,
) -> Result<Vec<SalienceEntry>> {
    if k == 0 {
        return Err(Error::InvalidArgument("cloud size k must be at least 1".into()));
    }
    require_tokens(p1)?;
    require_tokens(p2)?;
    let (n1, n2) = (p1.total_tokens, p2.total_tokens);
    let empty = Default::default();
    let in_second = p2.word_counts_per_category.get(&category).unwrap_or(&empty);

    // only words present in p1 can have a positive score
    let mut entries: Vec<SalienceEntry> = p1
        .word_counts_per_category
        .get(&category)
        .into_iter()
        .flatten()
        .filter_map(|(word, &f1)| {
            let f2 = in_second.get(word).copied().unwrap_or(0);
            let s = score(f1, n1, f2, n2);
            (s > 0.0).then(|| SalienceEntry {
                word: word.clone(),
                f1,
                f2,
                n1,
                n2,
                score: s,
            })
        })
        .collect();

    entries.sort_by(|a, b| {
        b.score
            .partial_cmp(&a.score)
            .unwrap_or(Ordering::Equal)
            .then_with(|| a.word.cmp(&b.word))
    });
    entries.truncate(k);
    Ok(entries)
}

/// A cloud word ready for rendering: `weight` is the score divided by the
/// largest score in the list, so the top word has weight 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CloudWord {
    pub word: String,
    pub score: f64,
    pub weight: f64,
}

pub fn cloud_weights(entries: &[SalienceEntry]) -> Vec<CloudWord> {
    let max = entries.iter().map(|e| e.score).fold(0.0_f64, f64::max);
    entries
        .iter()
        .map(|e| CloudWord {
            word: e.word.clone(),
            score: e.score,
            weight: if max > 0.0 { (e.score / max).clamp(0.0, 1.0) } else { 0.0 },
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexicon::{CategorySet, EmotionLexicon};
    use crate::text::{analyze, TokenStream};
    use AffectCategory::*;

    fn lex() -> EmotionLexicon {
        EmotionLexicon::from_entries([
            ("death", [Fear, Sadness].into_iter().collect::<CategorySet>()),
            ("devil", [Fear, Anger].into_iter().collect()),
            ("risk", [Fear].into_iter().collect()),
            ("happy", [Joy].into_iter().collect()),
        ])
        .unwrap()
    }

    fn profile(id: &str, words: &[(&str, usize)], filler: usize) -> EmotionProfile {
        let mut toks: Vec<&str> = Vec::new();
        for (w, n) in words {
            toks.extend(std::iter::repeat_n(*w, *n));
        }
        toks.extend(std::iter::repeat_n("the", filler));
        analyze(id, &TokenStream::from_tokens(toks), &lex())
    }

    #[test]
    fn direct_evaluation() {
        let a = profile("a", &[("death", 5)], 995);
        let b = profile("b", &[("death", 1)], 1999);
        let e = relative_salience("death", &a, &b).unwrap();
        assert_eq!((e.f1, e.n1, e.f2, e.n2), (5, 1000, 1, 2000));
        assert!((e.score - 0.0045).abs() < 1e-15);
        assert_eq!(relative_salience("death", &b, &a).unwrap().score, -e.score);
        assert_eq!(relative_salience("absent", &a, &b).unwrap().score, 0.0);
    }

    #[test]
    fn zero_token_profile_is_an_error() {
        let a = profile("a", &[("death", 1)], 0);
        let empty = profile("e", &[], 0);
        assert!(relative_salience("death", &a, &empty).is_err());
        assert!(salience_cloud(&empty, &a, Fear, 5).is_err());
        assert!(salience_cloud(&a, &a, Fear, 0).is_err());
    }

    #[test]
    fn identical_profiles_give_empty_cloud() {
        let a = profile("a", &[("death", 3), ("risk", 2)], 10);
        assert!(salience_cloud(&a, &a, Fear, 10).unwrap().is_empty());
    }

    #[test]
    fn cloud_ranking_and_ties() {
        let a = profile("a", &[("death", 4), ("devil", 2), ("risk", 2), ("happy", 9)], 83);
        let b = profile("b", &[("death", 1)], 99);
        let cloud = salience_cloud(&a, &b, Fear, 10).unwrap();
        let words: Vec<&str> = cloud.iter().map(|e| e.word.as_str()).collect();
        assert_eq!(words, ["death", "devil", "risk"]);
        assert_eq!(salience_cloud(&a, &b, Fear, 2).unwrap().len(), 2);
        let w = cloud_weights(&cloud);
        assert_eq!(w[0].weight, 1.0);
        assert!((w[1].weight - 2.0 / 3.0).abs() < 1e-12);
    }
}
