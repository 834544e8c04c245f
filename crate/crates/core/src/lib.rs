//! # emolit-core
//!
//! Lexicon-driven emotion analysis for literary texts and large corpora.
//!
//! The crate is organized by capability:
//!
//! - [`lexicon`]: the word–emotion association lexicon (NRC word-level TSV),
//!   plus majority-vote and sense-union aggregation of raw annotations.
//! - [`text`]: tokenization, per-document emotion profiles, percentages,
//!   densities, percentage differences and windowed emotion timelines.
//! - [`salience`]: relative salience of words across two texts and the ranked
//!   lists behind comparison word clouds.
//! - [`ngram`]: streaming scans of Google Books 5-gram shards that track the
//!   emotion words co-occurring with target entities, in 5-year bins.
//! - [`stats`]: corpus summaries (mean and σ of densities), Welch and F tests,
//!   density histograms and density rankings.
//!
//! Runnable walkthroughs of each capability live in `examples/`:
//!
//! ```bash
//! cargo run -p emolit-core --example profile_document
//! cargo run -p emolit-core --example compare_texts
//! cargo run -p emolit-core --example emotion_timeline
//! cargo run -p emolit-core --example entity_scan
//! cargo run -p emolit-core --example corpus_statistics
//! cargo run -p emolit-core --example lexicon_aggregation
//! ```
//!
//! ```
//! use emolit_core::lexicon::{AffectCategory, EmotionLexicon};
//! use emolit_core::text::{analyze_text, emotion_density, DensityConfig};
//!
//! let lexicon = EmotionLexicon::from_reader("death\tfear\t1\ndeath\tsadness\t1\n".as_bytes()).unwrap();
//! let profile = analyze_text("note", "Death came, and death went.", &lexicon);
//! assert_eq!(profile.count(AffectCategory::Fear), 2);
//! let d = emotion_density(&profile, AffectCategory::Fear, &DensityConfig::default()).unwrap();
//! assert_eq!(d, 4_000.0);
//! ```

pub mod error;
pub mod lexicon;
pub mod ngram;
pub mod salience;
pub mod stats;
pub mod text;

pub use error::{Error, Result};
pub use lexicon::{AffectCategory, CategorySet, EmotionLexicon};
pub use text::{DensityConfig, EmotionProfile, TokenStream};
