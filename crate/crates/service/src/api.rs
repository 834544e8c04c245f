//! Queries shared by the HTTP routes and the command line. Every function
//! reads one index snapshot and returns a serializable view.

use std::collections::BTreeMap;

use emolit_core::ngram::EntityTimeline;
use emolit_core::salience::{cloud_weights, salience_cloud, CloudWord, DEFAULT_CLOUD_SIZE};
use emolit_core::stats::{
    category_histogram, compare_corpora, corpus_summary, rank_by_density, CategoryComparison, CorpusSummary,
    HistogramSpec, RankedDocument, DEFAULT_BIN_WIDTH,
};
use emolit_core::text::{category_share, densities, diff_percentages, timeline, PercentageMode, TimelineConfig, TimelineSeries};
use emolit_core::{AffectCategory, DensityConfig, EmotionLexicon, EmotionProfile, TokenStream};
use serde::{Deserialize, Serialize};

use crate::store::{DocumentRecord, Index, StoreError};

/// Version of the response layout. Bumped on any breaking change.
pub const API_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorCode {
    NotFound,
    BadRequest,
    Forbidden,
    Internal,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, thiserror::Error)]
#[error("{message}")]
pub struct ApiError {
    pub code: ErrorCode,
    pub message: String,
}

impl ApiError {
    pub fn not_found(message: impl Into<String>) -> Self {
        ApiError {
            code: ErrorCode::NotFound,
            message: message.into(),
        }
    }

    pub fn bad_request(message: impl Into<String>) -> Self {
        ApiError {
            code: ErrorCode::BadRequest,
            message: message.into(),
        }
    }

    pub fn internal(message: impl Into<String>) -> Self {
        ApiError {
            code: ErrorCode::Internal,
            message: message.into(),
        }
    }
}

impl From<emolit_core::Error> for ApiError {
    fn from(e: emolit_core::Error) -> Self {
        use emolit_core::Error as E;
        match e {
            E::Io(_) => ApiError::internal(e.to_string()),
            _ => ApiError::bad_request(e.to_string()),
        }
    }
}

impl From<StoreError> for ApiError {
    fn from(e: StoreError) -> Self {
        match e {
            StoreError::InvalidEntity(_) => ApiError::bad_request(e.to_string()),
            _ => ApiError::internal(e.to_string()),
        }
    }
}

pub type ApiResult<T> = Result<T, ApiError>;

/// Success wrapper carried by every response.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub schema_version: u32,
    pub data: T,
}

impl<T> Envelope<T> {
    pub fn new(data: T) -> Self {
        Envelope {
            schema_version: API_SCHEMA_VERSION,
            data,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ErrorEnvelope {
    pub schema_version: u32,
    pub error: ApiError,
}

impl From<ApiError> for ErrorEnvelope {
    fn from(error: ApiError) -> Self {
        ErrorEnvelope {
            schema_version: API_SCHEMA_VERSION,
            error,
        }
    }
}

pub fn parse_category(s: &str) -> ApiResult<AffectCategory> {
    s.trim().parse().map_err(|_| {
        ApiError::bad_request(format!(
            "unknown category `{s}`; expected one of {}",
            AffectCategory::ALL.map(|c| c.as_str()).join(", ")
        ))
    })
}

/// Comma-separated categories; empty or absent means all.
pub fn parse_categories(s: Option<&str>) -> ApiResult<Vec<AffectCategory>> {
    match s {
        None => Ok(Vec::new()),
        Some(s) => s
            .split(',')
            .filter(|p| !p.trim().is_empty())
            .map(parse_category)
            .collect(),
    }
}

pub fn parse_mode(s: &str) -> ApiResult<PercentageMode> {
    match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
        "emotion_share" | "emotion" => Ok(PercentageMode::EmotionShare),
        "token_share" | "token" => Ok(PercentageMode::TokenShare),
        _ => Err(ApiError::bad_request(format!(
            "unknown timeline mode `{s}`; expected emotion_share or token_share"
        ))),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TextSummary {
    pub doc_id: String,
    pub title: String,
    pub collection: String,
    pub token_count: u64,
    /// Occurrences per `per_tokens` tokens for all ten categories.
    pub densities: BTreeMap<AffectCategory, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TextList {
    pub per_tokens: u64,
    pub texts: Vec<TextSummary>,
}

pub fn list_texts(index: &Index) -> ApiResult<TextList> {
    let texts = index
        .records()
        .iter()
        .map(|r| {
            let profile = stored_profile(index, &r.doc_id)?;
            Ok(TextSummary {
                doc_id: r.doc_id.clone(),
                title: r.title.clone(),
                collection: r.collection.clone(),
                token_count: r.token_count,
                densities: densities(profile, index.density())?,
            })
        })
        .collect::<ApiResult<_>>()?;
    Ok(TextList {
        per_tokens: index.density().per_tokens(),
        texts,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileView {
    pub record: Option<DocumentRecord>,
    pub per_tokens: u64,
    pub densities: BTreeMap<AffectCategory, f64>,
    /// Emotions as a percentage of emotion tokens, polarities as a
    /// percentage of polar tokens.
    pub percentages: BTreeMap<AffectCategory, f64>,
    pub profile: EmotionProfile,
}

pub fn profile_view(profile: &EmotionProfile, record: Option<DocumentRecord>, cfg: &DensityConfig) -> ApiResult<ProfileView> {
    Ok(ProfileView {
        record,
        per_tokens: cfg.per_tokens(),
        densities: densities(profile, cfg)?,
        percentages: AffectCategory::ALL
            .into_iter()
            .map(|c| (c, 100.0 * category_share(profile, c)))
            .collect(),
        profile: profile.clone(),
    })
}

pub fn text_profile(index: &Index, doc_id: &str) -> ApiResult<ProfileView> {
    let profile = stored_profile(index, doc_id)?;
    profile_view(profile, index.record(doc_id).cloned(), index.density())
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize)]
pub struct TimelineQuery {
    pub window: Option<usize>,
    pub stride: Option<usize>,
    pub categories: Option<String>,
    pub mode: Option<String>,
}

impl TimelineQuery {
    pub fn config(&self) -> ApiResult<(TimelineConfig, Vec<AffectCategory>)> {
        let mut cfg = TimelineConfig::default();
        if let Some(w) = self.window {
            cfg.window_tokens = w;
        }
        if let Some(s) = self.stride {
            cfg.stride_tokens = s;
        }
        if let Some(m) = &self.mode {
            cfg.mode = parse_mode(m)?;
        }
        Ok((cfg, parse_categories(self.categories.as_deref())?))
    }
}

pub fn timeline_for_tokens(
    doc_id: &str,
    tokens: &TokenStream,
    lexicon: &EmotionLexicon,
    query: &TimelineQuery,
) -> ApiResult<TimelineSeries> {
    let (cfg, cats) = query.config()?;
    Ok(timeline(doc_id, tokens, lexicon, &cfg, &cats)?)
}

pub fn text_timeline(index: &Index, doc_id: &str, query: &TimelineQuery) -> ApiResult<TimelineSeries> {
    let tokens = index
        .tokens(doc_id)?
        .ok_or_else(|| ApiError::not_found(format!("no text with id `{doc_id}`")))?;
    timeline_for_tokens(doc_id, &tokens, index.lexicon(), query)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub a: String,
    pub b: String,
    /// `100 * (pct_a - pct_b)` for each emotion.
    pub diff_percentages: BTreeMap<AffectCategory, f64>,
    /// Words more salient in `a`, per emotion.
    pub clouds_a: BTreeMap<AffectCategory, Vec<CloudWord>>,
    /// Words more salient in `b`, per emotion.
    pub clouds_b: BTreeMap<AffectCategory, Vec<CloudWord>>,
}

pub fn compare_profiles(a: &EmotionProfile, b: &EmotionProfile, cloud_size: usize) -> ApiResult<Comparison> {
    let mut clouds_a = BTreeMap::new();
    let mut clouds_b = BTreeMap::new();
    for e in AffectCategory::EMOTIONS {
        clouds_a.insert(e, cloud_weights(&salience_cloud(a, b, e, cloud_size)?));
        clouds_b.insert(e, cloud_weights(&salience_cloud(b, a, e, cloud_size)?));
    }
    Ok(Comparison {
        a: a.doc_id.clone(),
        b: b.doc_id.clone(),
        diff_percentages: diff_percentages(a, b)?,
        clouds_a,
        clouds_b,
    })
}

pub fn compare_texts(index: &Index, a: &str, b: &str, cloud_size: Option<usize>) -> ApiResult<Comparison> {
    let pa = stored_profile(index, a)?;
    let pb = stored_profile(index, b)?;
    compare_profiles(pa, pb, cloud_size.unwrap_or(DEFAULT_CLOUD_SIZE))
}

fn collection(index: &Index, tag: &str) -> ApiResult<Vec<EmotionProfile>> {
    let docs: Vec<EmotionProfile> = index.collection(tag).into_iter().cloned().collect();
    if docs.is_empty() {
        return Err(ApiError::not_found(format!("no collection `{tag}`")));
    }
    Ok(docs)
}

pub fn collection_summary(index: &Index, tag: &str) -> ApiResult<CorpusSummary> {
    Ok(corpus_summary(tag, &collection(index, tag)?, index.density())?)
}

pub fn collection_histogram(index: &Index, tag: &str, category: AffectCategory, width: Option<f64>) -> ApiResult<HistogramSpec> {
    let docs = collection(index, tag)?;
    Ok(category_histogram(&docs, category, index.density(), width.unwrap_or(DEFAULT_BIN_WIDTH))?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ranking {
    pub collection: String,
    pub category: AffectCategory,
    pub per_tokens: u64,
    pub documents: Vec<RankedDocument>,
}

pub fn collection_ranking(index: &Index, tag: &str, category: AffectCategory) -> ApiResult<Ranking> {
    let docs = collection(index, tag)?;
    Ok(Ranking {
        collection: tag.to_string(),
        category,
        per_tokens: index.density().per_tokens(),
        documents: rank_by_density(&docs, category, index.density())?,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CollectionComparison {
    pub first: CorpusSummary,
    pub second: CorpusSummary,
    /// Categories where a test is undefined are absent.
    pub tests: BTreeMap<AffectCategory, CategoryComparison>,
}

pub fn compare_collections(index: &Index, first: &str, second: &str) -> ApiResult<CollectionComparison> {
    let a = collection(index, first)?;
    let b = collection(index, second)?;
    let cfg = index.density();
    Ok(CollectionComparison {
        first: corpus_summary(first, &a, cfg)?,
        second: corpus_summary(second, &b, cfg)?,
        tests: compare_corpora(&a, &b, cfg)?,
    })
}

pub fn entity_timeline(index: &Index, word: &str) -> ApiResult<EntityTimeline> {
    index
        .entity(word)?
        .ok_or_else(|| ApiError::not_found(format!("no entity timeline for `{word}`")))
}

fn stored_profile<'a>(index: &'a Index, doc_id: &str) -> ApiResult<&'a EmotionProfile> {
    index
        .profile(doc_id)
        .ok_or_else(|| ApiError::not_found(format!("no text with id `{doc_id}`")))
}
