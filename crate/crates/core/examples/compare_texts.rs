// Compare two texts: percentage-point differences per emotion and the
// relative-salience word clouds in both directions.

use std::error::Error;
use std::path::PathBuf;

use emolit_core::lexicon::{AffectCategory, EmotionLexicon};
use emolit_core::salience::{cloud_weights, relative_salience, salience_cloud};
use emolit_core::text::{analyze_text, diff_percentages};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/data").join(name)
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let lexicon = EmotionLexicon::from_path(data("demo_lexicon.tsv"))?;
    let bright = analyze_text("glass-orchard", &std::fs::read_to_string(data("tales/the_glass_orchard.txt"))?, &lexicon);
    let dark = analyze_text("salt-widow", &std::fs::read_to_string(data("tales/the_salt_widow.txt"))?, &lexicon);

    println!("emotion        {} - {} (percentage points)", bright.doc_id, dark.doc_id);
    for (emotion, diff) in diff_percentages(&bright, &dark)? {
        let bar = "#".repeat((diff.abs() / 2.0).round() as usize);
        let sign = if diff < 0.0 { '-' } else { '+' };
        println!("{:<13}{diff:>+8.2}  {sign}{bar}", emotion.as_str());
    }

    for (first, second) in [(&bright, &dark), (&dark, &bright)] {
        for emotion in [AffectCategory::Joy, AffectCategory::Fear] {
            let cloud = cloud_weights(&salience_cloud(first, second, emotion, 5)?);
            let words: Vec<String> = cloud.iter().map(|w| format!("{} ({:.2})", w.word, w.weight)).collect();
            println!("{emotion} words salient in {}: {}", first.doc_id, words.join(", "));
        }
    }

    let s = relative_salience("dark", &dark, &bright)?;
    println!("salience of `dark`: {}/{} - {}/{} = {:.5}", s.f1, s.n1, s.f2, s.n2, s.score);
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
