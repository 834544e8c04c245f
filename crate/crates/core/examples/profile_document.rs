// Profile a single text: emotion counts, percentages and densities.
//
// ```bash
// cargo run -p emolit-core --example profile_document [TEXT] [LEXICON]
// ```

use std::error::Error;
use std::path::PathBuf;

use emolit_core::lexicon::{AffectCategory, EmotionLexicon};
use emolit_core::text::{analyze_text, category_share, emotion_density, gutenberg_title, DensityConfig};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/data").join(name)
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let mut args = std::env::args().skip(1);
    let text_path = args.next().map(PathBuf::from).unwrap_or_else(|| data("tales/the_glass_orchard.txt"));
    let lex_path = args.next().map(PathBuf::from).unwrap_or_else(|| data("demo_lexicon.tsv"));

    let lexicon = EmotionLexicon::from_path(&lex_path)?;
    let text = std::fs::read_to_string(&text_path)?;
    let title = gutenberg_title(&text).unwrap_or_else(|| text_path.display().to_string());
    let profile = analyze_text(&title, &text, &lexicon);
    let cfg = DensityConfig::default();

    println!("{title}: {} tokens, {} emotion tokens", profile.total_tokens, profile.emotion_token_count);
    println!("{:<13}{:>6}{:>9}{:>12}", "category", "count", "share%", "per 10k");
    for c in AffectCategory::ALL {
        println!(
            "{:<13}{:>6}{:>9.2}{:>12.1}",
            c.as_str(),
            profile.count(c),
            100.0 * category_share(&profile, c),
            emotion_density(&profile, c, &cfg)?
        );
    }

    let joy = &profile.word_counts_per_category[&AffectCategory::Joy];
    let mut top: Vec<_> = joy.iter().collect();
    top.sort_by(|a, b| b.1.cmp(a.1).then(a.0.cmp(b.0)));
    let top: Vec<String> = top.iter().take(5).map(|(w, n)| format!("{w}×{n}")).collect();
    println!("most frequent joy words: {}", top.join(", "));
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
