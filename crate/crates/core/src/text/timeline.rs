use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::TokenStream;
use crate::error::{Error, Result};
use crate::lexicon::{AffectCategory, EmotionLexicon};

/// What a timeline percentage is a share of.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PercentageMode {
    /// Share of the window's emotion tokens (polarities: share of its polar
    /// tokens).
    #[default]
    EmotionShare,
    /// Share of every token in the window.
    TokenShare,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TimelineConfig {
    pub window_tokens: usize,
    pub stride_tokens: usize,
    pub mode: PercentageMode,
}

impl Default for TimelineConfig {
    fn default() -> Self {
        TimelineConfig {
            window_tokens: 2_000,
            stride_tokens: 200,
            mode: PercentageMode::EmotionShare,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimelinePoint {
    /// Window centre as a fraction of the document length.
    pub progress: f64,
    pub values: BTreeMap<AffectCategory, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimelineSeries {
    pub doc_id: String,
    pub window_tokens: usize,
    pub stride_tokens: usize,
    pub mode: PercentageMode,
    pub points: Vec<TimelinePoint>,
}

impl TimelineSeries {
    /// `(progress, value)` pairs for one category.
    pub fn series(&self, category: AffectCategory) -> Vec<(f64, f64)> {
        self.points
            .iter()
            .filter_map(|p| p.values.get(&category).map(|v| (p.progress, *v)))
            .collect()
    }
}

const EMOTION_SLOT: usize = AffectCategory::COUNT;
const POLAR_SLOT: usize = AffectCategory::COUNT + 1;
type Counters = [u32; AffectCategory::COUNT + 2];

/// Emotion flow through a document: one point per window start
/// `0, stride, 2·stride, …` while the window still fits.
///
/// An empty `categories` slice means all ten categories.
pub fn timeline(
    doc_id: impl Into<String>,
    tokens: &TokenStream,
    lexicon: &EmotionLexicon,
    cfg: &TimelineConfig,
    categories: &[AffectCategory],
) -> Result<TimelineSeries> {
    let total = tokens.total_count();
    if cfg.window_tokens == 0 || cfg.stride_tokens == 0 {
        return Err(Error::InvalidArgument("window and stride must be at least 1 token".into()));
    }
    if cfg.window_tokens > total {
        return Err(Error::WindowTooLarge {
            window: cfg.window_tokens,
            total,
        });
    }
    let categories: &[AffectCategory] = if categories.is_empty() {
        &AffectCategory::ALL
    } else {
        categories
    };

    // prefix[i] holds counters over tokens[..i]
    let mut prefix: Vec<Counters> = Vec::with_capacity(total + 1);
    let mut running: Counters = [0; AffectCategory::COUNT + 2];
    prefix.push(running);
    for t in tokens.iter() {
        let cats = lexicon.associations(t);
        for c in cats.iter() {
            running[c.index()] += 1;
        }
        running[EMOTION_SLOT] += u32::from(cats.has_emotion());
        running[POLAR_SLOT] += u32::from(cats.has_polarity());
        prefix.push(running);
    }

    let window = cfg.window_tokens;
    let points = (0..=total - window)
        .step_by(cfg.stride_tokens)
        .map(|start| {
            let hi = &prefix[start + window];
            let lo = &prefix[start];
            let in_window = |slot: usize| hi[slot] - lo[slot];
            let values = categories
                .iter()
                .map(|&c| {
                    let denom = match cfg.mode {
                        PercentageMode::TokenShare => window as u32,
                        PercentageMode::EmotionShare if c.is_polarity() => in_window(POLAR_SLOT),
                        PercentageMode::EmotionShare => in_window(EMOTION_SLOT),
                    };
                    let v = if denom == 0 {
                        0.0
                    } else {
                        100.0 * f64::from(in_window(c.index())) / f64::from(denom)
                    };
                    (c, v)
                })
                .collect();
            TimelinePoint {
                progress: (start as f64 + window as f64 / 2.0) / total as f64,
                values,
            }
        })
        .collect();

    Ok(TimelineSeries {
        doc_id: doc_id.into(),
        window_tokens: cfg.window_tokens,
        stride_tokens: cfg.stride_tokens,
        mode: cfg.mode,
        points,
    })
}
