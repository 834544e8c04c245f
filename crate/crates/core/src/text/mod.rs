//! Document processing: boilerplate removal, tokenization, emotion profiles,
//! densities, percentage differences and windowed timelines.

mod gutenberg;
mod profile;
mod timeline;
mod tokenize;

pub use gutenberg::{gutenberg_title, strip_gutenberg_boilerplate};
pub use profile::{
    analyze, category_share, densities, diff_percentages, emotion_density, emotion_percentage, CategoryCounts,
    DensityConfig, EmotionProfile,
};
pub use timeline::{timeline, PercentageMode, TimelineConfig, TimelinePoint, TimelineSeries};
pub use tokenize::{tokenize, TokenStream, TOKENIZER_VERSION};

use crate::lexicon::EmotionLexicon;

/// Strips Gutenberg boilerplate, tokenizes and analyzes in one step.
pub fn analyze_text(doc_id: impl Into<String>, text: &str, lexicon: &EmotionLexicon) -> EmotionProfile {
    let tokens = tokenize(strip_gutenberg_boilerplate(text));
    analyze(doc_id, &tokens, lexicon)
}
