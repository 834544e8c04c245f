//! Collection-level statistics over per-document emotion densities.

mod histogram;
mod summary;
mod two_sample;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use histogram::{histogram, HistogramBin, HistogramSpec, DEFAULT_BIN_WIDTH};
pub use summary::{category_densities, corpus_summary, mean_std, CorpusSummary, MeanStd};
pub use two_sample::{mean_difference_test, variance_ratio_test, TestKind, TwoSampleTest};

use crate::error::Result;
use crate::lexicon::AffectCategory;
use crate::text::{emotion_density, DensityConfig, EmotionProfile};

/// Density histogram of one category over a collection.
pub fn category_histogram(
    profiles: &[EmotionProfile],
    category: AffectCategory,
    cfg: &DensityConfig,
    bin_width: f64,
) -> Result<HistogramSpec> {
    let d = category_densities(profiles, category, cfg)?;
    let mut h = histogram(&d, bin_width)?;
    h.category = Some(category);
    Ok(h)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedDocument {
    pub doc_id: String,
    pub density: f64,
}

/// Documents in increasing order of `category` density; ties by doc id.
pub fn rank_by_density(
    profiles: &[EmotionProfile],
    category: AffectCategory,
    cfg: &DensityConfig,
) -> Result<Vec<RankedDocument>> {
    let mut ranked = profiles
        .iter()
        .map(|p| {
            Ok(RankedDocument {
                doc_id: p.doc_id.clone(),
                density: emotion_density(p, category, cfg)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    ranked.sort_by(|a, b| a.density.total_cmp(&b.density).then_with(|| a.doc_id.cmp(&b.doc_id)));
    Ok(ranked)
}

/// Both tests for one category, first corpus against second.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CategoryComparison {
    pub mean_difference: TwoSampleTest,
    pub variance_ratio: TwoSampleTest,
}

/// Runs the mean and variance tests for every category. Categories where a
/// test is undefined (too few documents, zero variance) are left out.
pub fn compare_corpora(
    a: &[EmotionProfile],
    b: &[EmotionProfile],
    cfg: &DensityConfig,
) -> Result<BTreeMap<AffectCategory, CategoryComparison>> {
    let mut out = BTreeMap::new();
    for c in AffectCategory::ALL {
        let da = category_densities(a, c, cfg)?;
        let db = category_densities(b, c, cfg)?;
        match (mean_difference_test(&da, &db), variance_ratio_test(&da, &db)) {
            (Ok(mean_difference), Ok(variance_ratio)) => {
                out.insert(
                    c,
                    CategoryComparison {
                        mean_difference,
                        variance_ratio,
                    },
                );
            }
            (Err(e), _) | (_, Err(e)) => log::warn!("skipping {c}: {e}"),
        }
    }
    Ok(out)
}
