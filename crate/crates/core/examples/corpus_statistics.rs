// Collection-level statistics: density means and standard deviations, a
// Welch t-test and F-test between two collections, a histogram and a
// density ranking.

use std::error::Error;
use std::path::PathBuf;

use emolit_core::lexicon::{AffectCategory, EmotionLexicon};
use emolit_core::stats::{category_histogram, compare_corpora, corpus_summary, rank_by_density};
use emolit_core::text::{analyze_text, DensityConfig, EmotionProfile};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/data").join(name)
}

/// Cuts each tale into paragraphs so two small "collections" exist.
fn paragraphs(file: &str, lexicon: &EmotionLexicon) -> Result<Vec<EmotionProfile>, Box<dyn Error>> {
    let text = std::fs::read_to_string(data(file))?;
    let body = emolit_core::text::strip_gutenberg_boilerplate(&text);
    Ok(body
        .split("\n\n")
        .filter(|p| !p.trim().is_empty())
        .enumerate()
        .map(|(i, p)| analyze_text(format!("{file}#{i}"), p, lexicon))
        .collect())
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let lexicon = EmotionLexicon::from_path(data("demo_lexicon.tsv"))?;
    let cfg = DensityConfig::new(1_000)?;
    let mut bright = paragraphs("tales/the_glass_orchard.txt", &lexicon)?;
    bright.extend(paragraphs("tales/the_tinker_and_the_moon.txt", &lexicon)?);
    let dark = paragraphs("tales/the_salt_widow.txt", &lexicon)?;

    let (a, b) = (corpus_summary("bright", &bright, &cfg)?, corpus_summary("dark", &dark, &cfg)?);
    println!("per {} tokens        bright mean (sd)     dark mean (sd)", cfg.per_tokens());
    for c in AffectCategory::ALL {
        let (x, y) = (a.categories[&c], b.categories[&c]);
        println!("{:<13} {:>9.1} ({:>6.1})   {:>9.1} ({:>6.1})", c.as_str(), x.mean, x.std_dev, y.mean, y.std_dev);
    }

    println!("\ncategory      t        p(t)      F        p(F)");
    for (c, cmp) in compare_corpora(&bright, &dark, &cfg)? {
        println!(
            "{:<13}{:>7.3}  {:>9.3e}  {:>7.3}  {:>9.3e}",
            c.as_str(),
            cmp.mean_difference.statistic,
            cmp.mean_difference.p_value,
            cmp.variance_ratio.statistic,
            cmp.variance_ratio.p_value
        );
    }

    let mut all = bright;
    all.extend(dark);
    let hist = category_histogram(&all, AffectCategory::Negative, &cfg, 25.0)?;
    println!("\nnegative density histogram, width 25:");
    for bin in &hist.bins {
        println!("[{:>4}, {:>4})  {}", bin.lower, bin.upper, "#".repeat(bin.count));
    }

    println!("\nparagraphs from least to most negative:");
    for r in rank_by_density(&all, AffectCategory::Negative, &cfg)?.iter().take(4) {
        println!("  {:>7.1}  {}", r.density, r.doc_id);
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
