// Emotion flow through a text with a sliding window.

use std::error::Error;
use std::path::PathBuf;

use emolit_core::lexicon::{AffectCategory, EmotionLexicon};
use emolit_core::text::{strip_gutenberg_boilerplate, timeline, tokenize, PercentageMode, TimelineConfig};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/data").join(name)
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let lexicon = EmotionLexicon::from_path(data("demo_lexicon.tsv"))?;
    let text = std::fs::read_to_string(data("tales/the_tinker_and_the_moon.txt"))?;
    let tokens = tokenize(strip_gutenberg_boilerplate(&text));

    // a short tale needs a much smaller window than the 2000-token default
    let cfg = TimelineConfig {
        window_tokens: 60,
        stride_tokens: 20,
        mode: PercentageMode::TokenShare,
    };
    let cats = [AffectCategory::Joy, AffectCategory::Fear, AffectCategory::Negative];
    let series = timeline("tinker", &tokens, &lexicon, &cfg, &cats)?;

    println!("{} tokens, {} windows of {}", tokens.total_count(), series.points.len(), cfg.window_tokens);
    println!("progress    joy%   fear%   negative%");
    for p in &series.points {
        println!(
            "{:>7.2}  {:>6.2}  {:>6.2}  {:>9.2}",
            p.progress,
            p.values[&AffectCategory::Joy],
            p.values[&AffectCategory::Fear],
            p.values[&AffectCategory::Negative]
        );
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
