#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::sync::Arc;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use emolit_core::{DensityConfig, EmotionLexicon};
use emolit_service::store::Index;
use http_body_util::BodyExt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tower::ServiceExt;

pub fn demo_data() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/examples/data")
}

pub fn demo_lexicon() -> Arc<EmotionLexicon> {
    Arc::new(EmotionLexicon::from_path(demo_data().join("demo_lexicon.tsv")).unwrap())
}

const BRIGHT: &[&str] = &["hope", "love", "feast", "smile", "friend", "dance", "gold", "wonder", "kind", "wedding"];
const DARK: &[&str] = &["terror", "dead", "grave", "murder", "scream", "afraid", "grief", "storm", "poison", "weep"];
const FILLER: &[&str] = &["the", "and", "a", "of", "in", "she", "he", "went", "to", "forest", "house", "was", "old"];

/// Ten seeded documents, five per collection, written as
/// `<root>/bright/*.txt` and `<root>/dark/*.txt`.
pub fn write_fixture_collection(root: &Path) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for (tag, main, other) in [("bright", BRIGHT, DARK), ("dark", DARK, BRIGHT)] {
        let dir = root.join(tag);
        std::fs::create_dir_all(&dir).unwrap();
        for i in 0..5 {
            let len = rng.gen_range(600..900);
            let words: Vec<&str> = (0..len)
                .map(|_| {
                    let x: f64 = rng.gen();
                    if x < 0.08 {
                        *main.choose(&mut rng).unwrap()
                    } else if x < 0.10 {
                        *other.choose(&mut rng).unwrap()
                    } else {
                        *FILLER.choose(&mut rng).unwrap()
                    }
                })
                .collect();
            let text = words.chunks(12).map(|c| c.join(" ")).collect::<Vec<_>>().join(".\n");
            std::fs::write(dir.join(format!("{tag} tale {i}.txt")), text).unwrap();
        }
    }
}

pub fn fixture_index(tmp: &Path) -> Index {
    let src = tmp.join("src");
    write_fixture_collection(&src);
    let mut index = Index::create(tmp.join("index"), demo_lexicon(), DensityConfig::default()).unwrap();
    for tag in ["bright", "dark"] {
        let report = index.ingest(&src.join(tag), tag).unwrap();
        assert!(report.failures.is_empty());
    }
    index
}

pub async fn send(app: &Router, req: Request<Body>) -> (StatusCode, Vec<u8>) {
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    let body = resp.into_body().collect().await.unwrap().to_bytes().to_vec();
    (status, body)
}

pub async fn get(app: &Router, uri: &str) -> (StatusCode, serde_json::Value) {
    let (status, body) = send(app, Request::get(uri).body(Body::empty()).unwrap()).await;
    (status, serde_json::from_slice(&body).unwrap_or_else(|e| panic!("{uri}: {e}")))
}
