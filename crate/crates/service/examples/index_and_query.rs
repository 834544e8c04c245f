// Build an index from the demo tales and run the same queries the HTTP
// service answers.

use std::error::Error;
use std::path::PathBuf;
use std::sync::Arc;

use emolit_core::{AffectCategory, DensityConfig, EmotionLexicon};
use emolit_service::api;
use emolit_service::format::{render, OutputFormat};
use emolit_service::store::Index;

fn demo_data() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/examples/data")
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let dir = tempfile::tempdir()?;
    let lexicon = Arc::new(EmotionLexicon::from_path(demo_data().join("demo_lexicon.tsv"))?);

    let mut index = Index::create(dir.path().join("index"), lexicon.clone(), DensityConfig::default())?;
    let report = index.ingest(&demo_data().join("tales"), "tales")?;
    println!("ingested {} documents", report.outcomes.len());
    print!("{}", render(&api::list_texts(&index)?, OutputFormat::Table));

    let ranking = api::collection_ranking(&index, "tales", AffectCategory::Negative)?;
    println!("\nleast to most negative:");
    print!("{}", render(&ranking, OutputFormat::Table));

    let cmp = api::compare_texts(&index, "the-glass-orchard", "the-salt-widow", Some(3))?;
    println!("\njoy cloud toward the orchard: {:?}", cmp.clouds_a[&AffectCategory::Joy].iter().map(|w| &w.word).collect::<Vec<_>>());

    // a second ingest of the same files changes nothing
    let again = index.ingest(&demo_data().join("tales"), "tales")?;
    println!("re-ingest: {:?}", again.outcomes.iter().map(|o| o.status).collect::<Vec<_>>());

    drop(index);
    let reopened = Index::open(dir.path().join("index"), lexicon)?;
    let summary = api::collection_summary(&reopened, "tales")?;
    println!("\nreopened index, collection summary as tree:");
    print!("{}", render(&summary, OutputFormat::Tree));
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
