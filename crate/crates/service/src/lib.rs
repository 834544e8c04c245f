//! Persistent document index, HTTP API and command line for `emolit-core`.
//!
//! An [`store::Index`] is a directory holding one manifest plus one file per
//! document. [`api`] holds the queries; [`http`] and [`cli`] are thin layers
//! over it, so a query answers identically from either front end.
//!
//! ```no_run
//! use std::sync::Arc;
//! use emolit_core::{DensityConfig, EmotionLexicon};
//! use emolit_service::{api, store::Index};
//!
//! let lex = Arc::new(EmotionLexicon::from_path("lexicon.tsv")?);
//! let mut index = Index::open_or_create("grimm.idx", lex, DensityConfig::default())?;
//! index.ingest("tales/".as_ref(), "grimm")?;
//! let ranked = api::collection_ranking(&index, "grimm", "negative".parse()?)?;
//! println!("{} tales", ranked.documents.len());
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod api;
pub mod cli;
pub mod format;
pub mod http;
pub mod store;
