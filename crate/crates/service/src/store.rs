//! On-disk document index.
//!
//! Layout of an index directory:
//!
//! ```text
//! manifest.json           lexicon fingerprint, density config, tokenizer tag, records
//! docs/<doc_id>.json      stored emotion profile
//! texts/<doc_id>.txt      boilerplate-stripped text, for on-demand timelines
//! entities/<word>.json    entity timelines written by `ngram-scan --index`
//! ```
//!
//! Document files are written before the manifest, and the manifest is
//! replaced atomically, so a reader always sees a complete committed state.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::{SystemTime, UNIX_EPOCH};

use emolit_core::ngram::EntityTimeline;
use emolit_core::text::{analyze, gutenberg_title, strip_gutenberg_boilerplate, tokenize, TokenStream, TOKENIZER_VERSION};
use emolit_core::{DensityConfig, EmotionLexicon, EmotionProfile};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use walkdir::WalkDir;

pub const SCHEMA_VERSION: u32 = 1;
const MANIFEST: &str = "manifest.json";

#[derive(Debug, thiserror::Error)]
pub enum StoreError {
    #[error("no index at {0} (manifest.json missing)")]
    Missing(PathBuf),
    #[error("index at {0} already exists")]
    AlreadyExists(PathBuf),
    #[error("index was built with lexicon {stored}, but the supplied lexicon is {supplied}; re-ingest into a new index")]
    LexiconMismatch { stored: String, supplied: String },
    #[error("index was built with tokenizer `{stored}`, this build uses `{current}`")]
    TokenizerMismatch { stored: String, current: String },
    #[error("index schema version {0} is not supported")]
    Schema(u32),
    #[error("corrupt index file {path}: {reason}")]
    Corrupt { path: PathBuf, reason: String },
    #[error("invalid entity name `{0}`")]
    InvalidEntity(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type StoreResult<T> = Result<T, StoreError>;

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> StoreError + '_ {
    move |source| StoreError::Io {
        path: path.to_path_buf(),
        source,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DocumentRecord {
    pub doc_id: String,
    pub title: String,
    pub collection: String,
    pub source_path: String,
    pub token_count: u64,
    /// SHA-256 of the source file bytes.
    pub content_hash: String,
    /// Seconds since the Unix epoch.
    pub ingested_at: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexManifest {
    pub schema_version: u32,
    pub lexicon_fingerprint: String,
    pub density: DensityConfig,
    pub tokenizer_version: String,
    pub documents: Vec<DocumentRecord>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IngestStatus {
    Added,
    Updated,
    Unchanged,
}

#[derive(Debug, Clone, Serialize)]
pub struct IngestOutcome {
    pub record: DocumentRecord,
    pub status: IngestStatus,
}

#[derive(Debug, Clone, Serialize)]
pub struct IngestFailure {
    pub path: String,
    pub error: String,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct IngestReport {
    pub outcomes: Vec<IngestOutcome>,
    pub failures: Vec<IngestFailure>,
}

/// An opened index. Cloning is cheap enough to build the next committed
/// state while readers keep using the current one.
#[derive(Debug, Clone)]
pub struct Index {
    root: PathBuf,
    manifest: IndexManifest,
    profiles: BTreeMap<String, EmotionProfile>,
    lexicon: Arc<EmotionLexicon>,
}

impl Index {
    pub fn create(root: impl Into<PathBuf>, lexicon: Arc<EmotionLexicon>, density: DensityConfig) -> StoreResult<Self> {
        let root = root.into();
        if root.join(MANIFEST).exists() {
            return Err(StoreError::AlreadyExists(root));
        }
        for sub in ["docs", "texts", "entities"] {
            let dir = root.join(sub);
            fs::create_dir_all(&dir).map_err(io_err(&dir))?;
        }
        let index = Index {
            manifest: IndexManifest {
                schema_version: SCHEMA_VERSION,
                lexicon_fingerprint: lexicon.fingerprint(),
                density,
                tokenizer_version: TOKENIZER_VERSION.to_string(),
                documents: Vec::new(),
            },
            root,
            profiles: BTreeMap::new(),
            lexicon,
        };
        index.write_manifest()?;
        Ok(index)
    }

    /// Opens an existing index, refusing it if it was built under a different
    /// lexicon or tokenizer.
    pub fn open(root: impl Into<PathBuf>, lexicon: Arc<EmotionLexicon>) -> StoreResult<Self> {
        let root = root.into();
        let manifest_path = root.join(MANIFEST);
        if !manifest_path.exists() {
            return Err(StoreError::Missing(root));
        }
        let manifest: IndexManifest = read_json(&manifest_path)?;
        if manifest.schema_version != SCHEMA_VERSION {
            return Err(StoreError::Schema(manifest.schema_version));
        }
        let supplied = lexicon.fingerprint();
        if manifest.lexicon_fingerprint != supplied {
            return Err(StoreError::LexiconMismatch {
                stored: manifest.lexicon_fingerprint,
                supplied,
            });
        }
        if manifest.tokenizer_version != TOKENIZER_VERSION {
            return Err(StoreError::TokenizerMismatch {
                stored: manifest.tokenizer_version,
                current: TOKENIZER_VERSION.to_string(),
            });
        }
        let mut profiles = BTreeMap::new();
        for rec in &manifest.documents {
            let profile: EmotionProfile = read_json(&root.join("docs").join(format!("{}.json", rec.doc_id)))?;
            profiles.insert(rec.doc_id.clone(), profile);
        }
        Ok(Index {
            root,
            manifest,
            profiles,
            lexicon,
        })
    }

    pub fn open_or_create(root: impl Into<PathBuf>, lexicon: Arc<EmotionLexicon>, density: DensityConfig) -> StoreResult<Self> {
        let root = root.into();
        if root.join(MANIFEST).exists() {
            Self::open(root, lexicon)
        } else {
            Self::create(root, lexicon, density)
        }
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn manifest(&self) -> &IndexManifest {
        &self.manifest
    }

    pub fn lexicon(&self) -> &EmotionLexicon {
        &self.lexicon
    }

    pub fn density(&self) -> &DensityConfig {
        &self.manifest.density
    }

    /// Records sorted by doc id.
    pub fn records(&self) -> &[DocumentRecord] {
        &self.manifest.documents
    }

    pub fn record(&self, doc_id: &str) -> Option<&DocumentRecord> {
        self.manifest.documents.iter().find(|r| r.doc_id == doc_id)
    }

    pub fn profile(&self, doc_id: &str) -> Option<&EmotionProfile> {
        self.profiles.get(doc_id)
    }

    /// Profiles of one collection, in doc id order.
    pub fn collection(&self, tag: &str) -> Vec<&EmotionProfile> {
        self.manifest
            .documents
            .iter()
            .filter(|r| r.collection == tag)
            .filter_map(|r| self.profiles.get(&r.doc_id))
            .collect()
    }

    pub fn collections(&self) -> Vec<String> {
        let mut tags: Vec<String> = self.manifest.documents.iter().map(|r| r.collection.clone()).collect();
        tags.sort();
        tags.dedup();
        tags
    }

    /// Re-tokenizes the stored text of a document.
    pub fn tokens(&self, doc_id: &str) -> StoreResult<Option<TokenStream>> {
        if self.record(doc_id).is_none() {
            return Ok(None);
        }
        let path = self.root.join("texts").join(format!("{doc_id}.txt"));
        let text = fs::read_to_string(&path).map_err(io_err(&path))?;
        Ok(Some(tokenize(&text)))
    }

    /// Ingests one file or every file under a directory. Per-file problems are
    /// collected in the report; the batch carries on.
    pub fn ingest(&mut self, path: &Path, collection: &str) -> StoreResult<IngestReport> {
        let mut files: Vec<PathBuf> = if path.is_dir() {
            WalkDir::new(path)
                .follow_links(true)
                .into_iter()
                .filter_map(|e| e.ok())
                .filter(|e| e.file_type().is_file())
                .filter(|e| !e.file_name().to_string_lossy().starts_with('.'))
                .map(|e| e.into_path())
                .collect()
        } else {
            vec![path.to_path_buf()]
        };
        files.sort();

        let mut report = IngestReport::default();
        let mut changed = false;
        for file in files {
            match self.ingest_file(&file, collection) {
                Ok(outcome) => {
                    changed |= outcome.status != IngestStatus::Unchanged;
                    report.outcomes.push(outcome);
                }
                Err(error) => {
                    log::warn!("skipping {}: {error}", file.display());
                    report.failures.push(IngestFailure {
                        path: file.display().to_string(),
                        error,
                    });
                }
            }
        }
        if changed {
            self.manifest.documents.sort_by(|a, b| a.doc_id.cmp(&b.doc_id));
            self.write_manifest()?;
        }
        Ok(report)
    }

    fn ingest_file(&mut self, file: &Path, collection: &str) -> Result<IngestOutcome, String> {
        let bytes = fs::read(file).map_err(|e| format!("unreadable: {e}"))?;
        let text = std::str::from_utf8(&bytes).map_err(|e| format!("not valid UTF-8: {e}"))?;
        let source = fs::canonicalize(file)
            .unwrap_or_else(|_| file.to_path_buf())
            .display()
            .to_string();
        let content_hash = hex::encode(Sha256::digest(&bytes));

        let existing = self.manifest.documents.iter().position(|r| r.source_path == source);
        if let Some(i) = existing {
            let rec = &self.manifest.documents[i];
            if rec.content_hash == content_hash && rec.collection == collection {
                return Ok(IngestOutcome {
                    record: rec.clone(),
                    status: IngestStatus::Unchanged,
                });
            }
        }

        let body = strip_gutenberg_boilerplate(text);
        let tokens = tokenize(body);
        if tokens.is_empty() {
            return Err("document has zero tokens".into());
        }
        let doc_id = match existing {
            Some(i) => self.manifest.documents[i].doc_id.clone(),
            None => self.unique_doc_id(file),
        };
        let profile = analyze(doc_id.clone(), &tokens, &self.lexicon);
        let title = gutenberg_title(text).unwrap_or_else(|| {
            file.file_stem()
                .map(|s| s.to_string_lossy().replace(['_', '-'], " "))
                .unwrap_or_else(|| doc_id.clone())
        });
        let record = DocumentRecord {
            doc_id: doc_id.clone(),
            title,
            collection: collection.to_string(),
            source_path: source,
            token_count: tokens.total_count() as u64,
            content_hash,
            ingested_at: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        };

        let store_err = |e: StoreError| e.to_string();
        write_atomic(&self.root.join("texts").join(format!("{doc_id}.txt")), body.as_bytes()).map_err(store_err)?;
        write_json(&self.root.join("docs").join(format!("{doc_id}.json")), &profile).map_err(store_err)?;
        self.profiles.insert(doc_id.clone(), profile);

        let status = match existing {
            Some(i) => {
                self.manifest.documents[i] = record.clone();
                IngestStatus::Updated
            }
            None => {
                self.manifest.documents.push(record.clone());
                IngestStatus::Added
            }
        };
        Ok(IngestOutcome { record, status })
    }

    fn unique_doc_id(&self, file: &Path) -> String {
        let base = slug(&file.file_stem().map(|s| s.to_string_lossy()).unwrap_or_default());
        let taken = |id: &str| self.manifest.documents.iter().any(|r| r.doc_id == id);
        if !taken(&base) {
            return base;
        }
        (2..)
            .map(|n| format!("{base}-{n}"))
            .find(|id| !taken(id))
            .expect("unbounded suffixes")
    }

    fn write_manifest(&self) -> StoreResult<()> {
        write_json(&self.root.join(MANIFEST), &self.manifest)
    }

    pub fn store_entity(&self, timeline: &EntityTimeline) -> StoreResult<()> {
        let name = entity_file_name(&timeline.target)?;
        let dir = self.root.join("entities");
        fs::create_dir_all(&dir).map_err(io_err(&dir))?;
        write_json(&dir.join(name), timeline)
    }

    pub fn entity(&self, word: &str) -> StoreResult<Option<EntityTimeline>> {
        let name = entity_file_name(&word.to_lowercase())?;
        let path = self.root.join("entities").join(name);
        if !path.exists() {
            return Ok(None);
        }
        read_json(&path).map(Some)
    }
}

fn entity_file_name(word: &str) -> StoreResult<String> {
    if word.is_empty() || word.contains(['/', '\\']) || word.starts_with('.') || word.chars().any(char::is_control) {
        return Err(StoreError::InvalidEntity(word.to_string()));
    }
    Ok(format!("{word}.json"))
}

/// Lowercase ASCII-alphanumeric runs joined by `-`.
pub fn slug(name: &str) -> String {
    let mut out = String::new();
    for part in name
        .split(|c: char| !c.is_alphanumeric())
        .filter(|p| !p.is_empty())
    {
        if !out.is_empty() {
            out.push('-');
        }
        out.extend(part.chars().flat_map(char::to_lowercase));
    }
    if out.is_empty() {
        "doc".into()
    } else {
        out
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> StoreResult<T> {
    let bytes = fs::read(path).map_err(io_err(path))?;
    serde_json::from_slice(&bytes).map_err(|e| StoreError::Corrupt {
        path: path.to_path_buf(),
        reason: e.to_string(),
    })
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> StoreResult<()> {
    let mut bytes = serde_json::to_vec_pretty(value).expect("index types serialize");
    bytes.push(b'\n');
    write_atomic(path, &bytes)
}

fn write_atomic(path: &Path, bytes: &[u8]) -> StoreResult<()> {
    let tmp = path.with_extension("tmp");
    let mut f = fs::File::create(&tmp).map_err(io_err(&tmp))?;
    f.write_all(bytes).map_err(io_err(&tmp))?;
    f.sync_all().map_err(io_err(&tmp))?;
    fs::rename(&tmp, path).map_err(io_err(path))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lexicon() -> Arc<EmotionLexicon> {
        Arc::new(EmotionLexicon::from_reader("death\tfear\t1\nglad\tjoy\t1\n".as_bytes()).unwrap())
    }

    #[test]
    fn slugs() {
        assert_eq!(slug("Godfather Death"), "godfather-death");
        assert_eq!(slug("  The_Frog--King!! "), "the-frog-king");
        assert_eq!(slug("..."), "doc");
    }

    #[test]
    fn ingest_is_idempotent() {
        let dir = tempfile::tempdir().unwrap();
        let src = dir.path().join("src");
        fs::create_dir(&src).unwrap();
        for (name, body) in [("a.txt", "death and glad"), ("b.txt", "glad glad"), ("c.txt", "nothing here")] {
            fs::write(src.join(name), body).unwrap();
        }
        let root = dir.path().join("idx");
        let mut idx = Index::create(&root, lexicon(), DensityConfig::default()).unwrap();
        let first = idx.ingest(&src, "demo").unwrap();
        assert_eq!(first.outcomes.len(), 3);
        assert!(first.outcomes.iter().all(|o| o.status == IngestStatus::Added));
        let second = idx.ingest(&src, "demo").unwrap();
        assert!(second.outcomes.iter().all(|o| o.status == IngestStatus::Unchanged));
        assert_eq!(idx.records().len(), 3);

        fs::write(src.join("b.txt"), "death death").unwrap();
        let third = idx.ingest(&src.join("b.txt"), "demo").unwrap();
        assert_eq!(third.outcomes[0].status, IngestStatus::Updated);
        assert_eq!(idx.profile("b").unwrap().count(emolit_core::AffectCategory::Fear), 2);
    }

    #[test]
    fn per_file_errors_do_not_stop_the_batch() {
        let dir = tempfile::tempdir().unwrap();
        let src = dir.path().join("src");
        fs::create_dir(&src).unwrap();
        fs::write(src.join("empty.txt"), "  12 34 ").unwrap();
        fs::write(src.join("binary.txt"), [0xff, 0xfe, 0x00]).unwrap();
        fs::write(src.join("ok.txt"), "glad").unwrap();
        let mut idx = Index::create(dir.path().join("idx"), lexicon(), DensityConfig::default()).unwrap();
        let report = idx.ingest(&src, "demo").unwrap();
        assert_eq!(report.outcomes.len(), 1);
        assert_eq!(report.failures.len(), 2);
        assert!(report.failures.iter().any(|f| f.error.contains("zero tokens")));
        assert!(report.failures.iter().any(|f| f.error.contains("UTF-8")));
    }

    #[test]
    fn duplicate_stems_get_suffixes() {
        let dir = tempfile::tempdir().unwrap();
        for sub in ["x", "y"] {
            fs::create_dir(dir.path().join(sub)).unwrap();
            fs::write(dir.path().join(sub).join("tale.txt"), "glad").unwrap();
        }
        let mut idx = Index::create(dir.path().join("idx"), lexicon(), DensityConfig::default()).unwrap();
        idx.ingest(&dir.path().join("x"), "c").unwrap();
        idx.ingest(&dir.path().join("y"), "c").unwrap();
        let ids: Vec<&str> = idx.records().iter().map(|r| r.doc_id.as_str()).collect();
        assert_eq!(ids, ["tale", "tale-2"]);
    }

    #[test]
    fn reopen_with_other_lexicon_is_refused() {
        let dir = tempfile::tempdir().unwrap();
        let root = dir.path().join("idx");
        Index::create(&root, lexicon(), DensityConfig::default()).unwrap();
        assert!(Index::open(&root, lexicon()).is_ok());
        let other = Arc::new(EmotionLexicon::from_reader("death\tanger\t1\n".as_bytes()).unwrap());
        assert!(matches!(Index::open(&root, other), Err(StoreError::LexiconMismatch { .. })));
        assert!(matches!(Index::open(dir.path().join("nope"), lexicon()), Err(StoreError::Missing(_))));
        assert!(matches!(
            Index::create(&root, lexicon(), DensityConfig::default()),
            Err(StoreError::AlreadyExists(_))
        ));
    }

    #[test]
    fn entity_names_are_checked() {
        let dir = tempfile::tempdir().unwrap();
        let idx = Index::create(dir.path().join("idx"), lexicon(), DensityConfig::default()).unwrap();
        assert!(idx.entity("../manifest").is_err());
        assert!(idx.entity("nobody").unwrap().is_none());
    }
}
