use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lexicon::AffectCategory;
use crate::text::{emotion_density, DensityConfig, EmotionProfile};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeanStd {
    pub mean: f64,
    /// Sample standard deviation (n − 1 denominator); 0 for a single value.
    pub std_dev: f64,
}

/// Mean and sample standard deviation by Welford's update. `None` for an
/// empty slice.
pub fn mean_std(values: &[f64]) -> Option<MeanStd> {
    if values.is_empty() {
        return None;
    }
    let mut mean = 0.0;
    let mut m2 = 0.0;
    for (i, &x) in values.iter().enumerate() {
        let delta = x - mean;
        mean += delta / (i + 1) as f64;
        m2 += delta * (x - mean);
    }
    let n = values.len();
    let std_dev = if n > 1 { (m2 / (n - 1) as f64).sqrt() } else { 0.0 };
    Some(MeanStd { mean, std_dev })
}

/// Per-category density mean and σ over a collection of documents.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusSummary {
    pub corpus_id: String,
    pub doc_count: usize,
    pub per_tokens: u64,
    pub categories: BTreeMap<AffectCategory, MeanStd>,
    /// Set when the corpus has one document, whose σ is reported as 0.
    pub single_document: bool,
}

/// Densities of `category` for every profile, in input order.
pub fn category_densities(profiles: &[EmotionProfile], category: AffectCategory, cfg: &DensityConfig) -> Result<Vec<f64>> {
    profiles.iter().map(|p| emotion_density(p, category, cfg)).collect()
}

pub fn corpus_summary(corpus_id: impl Into<String>, profiles: &[EmotionProfile], cfg: &DensityConfig) -> Result<CorpusSummary> {
    if profiles.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let corpus_id = corpus_id.into();
    if profiles.len() == 1 {
        log::warn!("corpus `{corpus_id}` has a single document; standard deviations are reported as 0");
    }
    let categories = AffectCategory::ALL
        .into_iter()
        .map(|c| {
            let d = category_densities(profiles, c, cfg)?;
            Ok((c, mean_std(&d).expect("non-empty")))
        })
        .collect::<Result<_>>()?;
    Ok(CorpusSummary {
        corpus_id,
        doc_count: profiles.len(),
        per_tokens: cfg.per_tokens(),
        categories,
        single_document: profiles.len() == 1,
    })
}
