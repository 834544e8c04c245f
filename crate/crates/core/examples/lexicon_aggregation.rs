// Build a word-level lexicon from raw per-annotator sense judgements:
// majority vote per sense, then the union of a word's senses.

use std::error::Error;
use std::fs::File;
use std::io::BufReader;
use std::path::PathBuf;

use emolit_core::lexicon::{agreement_stats, aggregate_votes, read_annotations, union_senses};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/data").join(name)
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let annotations = read_annotations(BufReader::new(File::open(data("annotations.tsv"))?))?;
    let senses = aggregate_votes(&annotations);
    for s in &senses {
        let cats: Vec<&str> = s.categories.iter().map(|c| c.as_str()).collect();
        println!("{:<20} {} annotators -> {}", s.sense_id, s.annotator_count, cats.join(" "));
    }

    let lexicon = union_senses(&senses)?;
    println!("\nword-level lexicon ({} words, fingerprint {}):", lexicon.len(), &lexicon.fingerprint()[..12]);
    print!("{}", lexicon.to_tsv_string().lines().filter(|l| l.ends_with('1')).collect::<Vec<_>>().join("\n"));
    println!();

    let agree = agreement_stats(&annotations);
    println!(
        "\n{} instances: {:.1}% unanimous, {:.1}% with a single dissent",
        agree.instances,
        100.0 * agree.unanimous_fraction(),
        100.0 * agree.one_dissent_fraction()
    );
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
