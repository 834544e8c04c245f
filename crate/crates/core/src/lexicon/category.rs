use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// One of the eight basic emotions or one of the two polarities.
///
/// Variants are declared in label order, so the derived `Ord` sorts the same
/// way the label strings do. Lexicon serialization relies on that.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AffectCategory {
    Anger,
    Anticipation,
    Disgust,
    Fear,
    Joy,
    Negative,
    Positive,
    Sadness,
    Surprise,
    Trust,
}

impl AffectCategory {
    pub const COUNT: usize = 10;

    /// All ten categories in label order.
    pub const ALL: [AffectCategory; 10] = [
        AffectCategory::Anger,
        AffectCategory::Anticipation,
        AffectCategory::Disgust,
        AffectCategory::Fear,
        AffectCategory::Joy,
        AffectCategory::Negative,
        AffectCategory::Positive,
        AffectCategory::Sadness,
        AffectCategory::Surprise,
        AffectCategory::Trust,
    ];

    /// The eight basic emotions, in label order.
    pub const EMOTIONS: [AffectCategory; 8] = [
        AffectCategory::Anger,
        AffectCategory::Anticipation,
        AffectCategory::Disgust,
        AffectCategory::Fear,
        AffectCategory::Joy,
        AffectCategory::Sadness,
        AffectCategory::Surprise,
        AffectCategory::Trust,
    ];

    pub const POLARITIES: [AffectCategory; 2] = [AffectCategory::Negative, AffectCategory::Positive];

    /// Dense index in `0..10`, stable across releases.
    #[inline]
    pub const fn index(self) -> usize {
        self as usize
    }

    #[inline]
    pub fn from_index(idx: usize) -> Option<Self> {
        Self::ALL.get(idx).copied()
    }

    pub const fn as_str(self) -> &'static str {
        match self {
            AffectCategory::Anger => "anger",
            AffectCategory::Anticipation => "anticipation",
            AffectCategory::Disgust => "disgust",
            AffectCategory::Fear => "fear",
            AffectCategory::Joy => "joy",
            AffectCategory::Negative => "negative",
            AffectCategory::Positive => "positive",
            AffectCategory::Sadness => "sadness",
            AffectCategory::Surprise => "surprise",
            AffectCategory::Trust => "trust",
        }
    }

    #[inline]
    pub const fn is_polarity(self) -> bool {
        matches!(self, AffectCategory::Negative | AffectCategory::Positive)
    }

    #[inline]
    pub const fn is_emotion(self) -> bool {
        !self.is_polarity()
    }
}

impl fmt::Display for AffectCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Returned when a string is not one of the ten category labels.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown affect category `{0}`")]
pub struct UnknownCategory(pub String);

impl FromStr for AffectCategory {
    type Err = UnknownCategory;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let label = s.trim();
        AffectCategory::ALL
            .iter()
            .copied()
            .find(|c| c.as_str().eq_ignore_ascii_case(label))
            // "anticip." is the abbreviation used in published density tables
            .or_else(|| label.eq_ignore_ascii_case("anticip").then_some(AffectCategory::Anticipation))
            .ok_or_else(|| UnknownCategory(s.to_string()))
    }
}

/// A set of affect categories packed into a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct CategorySet(u16);

const EMOTION_MASK: u16 = {
    let mut mask = 0u16;
    let mut i = 0;
    while i < AffectCategory::EMOTIONS.len() {
        mask |= 1 << AffectCategory::EMOTIONS[i].index();
        i += 1;
    }
    mask
};

const POLARITY_MASK: u16 = (1 << AffectCategory::Negative.index()) | (1 << AffectCategory::Positive.index());

impl CategorySet {
    pub const EMPTY: CategorySet = CategorySet(0);

    #[inline]
    pub const fn contains(self, category: AffectCategory) -> bool {
        self.0 & (1 << category.index()) != 0
    }

    #[inline]
    pub fn insert(&mut self, category: AffectCategory) {
        self.0 |= 1 << category.index();
    }

    #[inline]
    pub fn remove(&mut self, category: AffectCategory) {
        self.0 &= !(1 << category.index());
    }

    #[inline]
    pub const fn union(self, other: CategorySet) -> CategorySet {
        CategorySet(self.0 | other.0)
    }

    #[inline]
    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// True when at least one of the eight emotions is present.
    #[inline]
    pub const fn has_emotion(self) -> bool {
        self.0 & EMOTION_MASK != 0
    }

    /// True when at least one polarity is present.
    #[inline]
    pub const fn has_polarity(self) -> bool {
        self.0 & POLARITY_MASK != 0
    }

    pub fn is_subset(self, other: CategorySet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = AffectCategory> {
        AffectCategory::ALL.into_iter().filter(move |c| self.contains(*c))
    }
}

impl FromIterator<AffectCategory> for CategorySet {
    fn from_iter<I: IntoIterator<Item = AffectCategory>>(iter: I) -> Self {
        let mut set = CategorySet::EMPTY;
        for c in iter {
            set.insert(c);
        }
        set
    }
}

impl fmt::Debug for CategorySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ten_categories_split_eight_and_two() {
        assert_eq!(AffectCategory::ALL.len(), 10);
        assert_eq!(AffectCategory::EMOTIONS.len(), 8);
        assert_eq!(AffectCategory::POLARITIES.len(), 2);
        for e in AffectCategory::EMOTIONS {
            assert!(!AffectCategory::POLARITIES.contains(&e));
            assert!(e.is_emotion());
        }
        for (i, c) in AffectCategory::ALL.iter().enumerate() {
            assert_eq!(c.index(), i);
            assert_eq!(AffectCategory::from_index(i), Some(*c));
        }
    }

    #[test]
    fn label_order_matches_ord() {
        let mut labels: Vec<&str> = AffectCategory::ALL.iter().map(|c| c.as_str()).collect();
        let declared = labels.clone();
        labels.sort_unstable();
        assert_eq!(labels, declared);
    }

    #[test]
    fn parse_labels() {
        for c in AffectCategory::ALL {
            assert_eq!(c.as_str().parse::<AffectCategory>().unwrap(), c);
            assert_eq!(c.as_str().to_uppercase().parse::<AffectCategory>().unwrap(), c);
        }
        assert_eq!("anticip".parse::<AffectCategory>().unwrap(), AffectCategory::Anticipation);
        assert!("happiness".parse::<AffectCategory>().is_err());
    }

    #[test]
    fn set_ops() {
        let mut s = CategorySet::EMPTY;
        assert!(s.is_empty());
        s.insert(AffectCategory::Fear);
        s.insert(AffectCategory::Negative);
        assert!(s.has_emotion() && s.has_polarity());
        assert_eq!(s.len(), 2);
        let only_pol: CategorySet = [AffectCategory::Positive].into_iter().collect();
        assert!(!only_pol.has_emotion());
        assert_eq!(s.union(only_pol).len(), 3);
        s.remove(AffectCategory::Fear);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![AffectCategory::Negative]);
    }
}
