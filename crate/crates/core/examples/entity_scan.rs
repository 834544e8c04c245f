// Track the emotion words around target entities in a 5-gram shard, binned
// by five-year periods.
//
// ```bash
// cargo run -p emolit-core --example entity_scan [SHARD...]
// ```

use std::error::Error;
use std::path::PathBuf;

use emolit_core::lexicon::{AffectCategory, EmotionLexicon};
use emolit_core::ngram::{EntityScanner, ScanConfig};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/data").join(name)
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let lexicon = EmotionLexicon::from_path(data("demo_lexicon.tsv"))?;
    let mut shards: Vec<PathBuf> = std::env::args().skip(1).map(PathBuf::from).collect();
    if shards.is_empty() {
        shards.push(data("demo_5grams.tsv"));
    }

    let scanner = EntityScanner::new(&lexicon, ["war", "garden"], ScanConfig::default())?;
    let acc = scanner.scan_paths(&shards, 2)?;
    println!(
        "{} lines, {} matched, {} before 1800, {} malformed",
        acc.stats.lines, acc.stats.matched_records, acc.stats.skipped_before_min_year, acc.stats.parse_errors
    );

    for tl in scanner.finish(&acc) {
        println!("\n{}: fear% and joy% of co-occurring words", tl.target);
        for bin in tl.bins.iter().step_by(4) {
            let fear = bin.percentages[&AffectCategory::Fear];
            println!(
                "{}-{}  fear {:>5.2}  joy {:>5.2}  {}",
                bin.bin_start,
                bin.bin_start + tl.bin_width - 1,
                fear,
                bin.percentages[&AffectCategory::Joy],
                "*".repeat(fear.round() as usize)
            );
        }
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
