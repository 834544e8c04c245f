//! Turning raw per-annotator judgements into a word-level lexicon.
//!
//! Annotations whose sense-check question was answered incorrectly are
//! dropped, the survivors of each (word, sense) pair are combined by strict
//! majority vote, and the senses of a word are then united.

use std::collections::{BTreeMap, HashMap};
use std::io::BufRead;

use super::{AffectCategory, CategorySet, EmotionLexicon};
use crate::error::{Error, Result};

/// One annotator's answers for one sense of one word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SenseAnnotation {
    pub word: String,
    pub sense_id: String,
    pub annotator_id: String,
    /// Categories this annotator answered "associated" for. Every category not
    /// in the set counts as a "not associated" vote.
    pub votes: CategorySet,
    pub q1_correct: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SenseEntry {
    pub word: String,
    pub sense_id: String,
    pub categories: CategorySet,
    /// Surviving annotators behind this entry.
    pub annotator_count: u32,
}

#[derive(Default)]
struct VoteTally {
    survivors: u32,
    trues: [u32; AffectCategory::COUNT],
}

fn tally(annotations: &[SenseAnnotation]) -> BTreeMap<(&str, &str), VoteTally> {
    let mut groups: BTreeMap<(&str, &str), VoteTally> = BTreeMap::new();
    for a in annotations.iter().filter(|a| a.q1_correct) {
        let t = groups.entry((a.word.as_str(), a.sense_id.as_str())).or_default();
        t.survivors += 1;
        for c in a.votes.iter() {
            t.trues[c.index()] += 1;
        }
    }
    groups
}

/// Majority vote per (word, sense). A category is kept only when strictly
/// more than half of the surviving annotators marked it; ties are dropped.
/// Output is sorted by word, then sense id.
pub fn aggregate_votes(annotations: &[SenseAnnotation]) -> Vec<SenseEntry> {
    tally(annotations)
        .into_iter()
        .map(|((word, sense), t)| SenseEntry {
            word: word.to_lowercase(),
            sense_id: sense.to_string(),
            categories: AffectCategory::ALL
                .into_iter()
                .filter(|c| 2 * t.trues[c.index()] > t.survivors)
                .collect(),
            annotator_count: t.survivors,
        })
        .collect()
}

/// Word-level lexicon: each word gets the union of its senses' categories.
pub fn union_senses(entries: &[SenseEntry]) -> Result<EmotionLexicon> {
    EmotionLexicon::from_entries(entries.iter().map(|e| (e.word.as_str(), e.categories)))
}

/// Inter-annotator agreement over (word, sense, category) instances.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct AgreementStats {
    pub instances: usize,
    /// Instances where every surviving annotator gave the same answer.
    pub unanimous: usize,
    /// Instances with at least three annotators where exactly one dissented.
    pub one_dissent: usize,
}

impl AgreementStats {
    pub fn unanimous_fraction(&self) -> f64 {
        ratio(self.unanimous, self.instances)
    }

    pub fn one_dissent_fraction(&self) -> f64 {
        ratio(self.one_dissent, self.instances)
    }
}

fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

pub fn agreement_stats(annotations: &[SenseAnnotation]) -> AgreementStats {
    let mut stats = AgreementStats::default();
    for t in tally(annotations).values() {
        for c in AffectCategory::ALL {
            let yes = t.trues[c.index()];
            let agreeing = yes.max(t.survivors - yes);
            stats.instances += 1;
            if agreeing == t.survivors {
                stats.unanimous += 1;
            } else if t.survivors >= 3 && agreeing + 1 == t.survivors {
                stats.one_dissent += 1;
            }
        }
    }
    stats
}

/// Reads the raw annotation layout:
/// `word TAB sense_id TAB annotator_id TAB q1_correct TAB category TAB 0|1`.
///
/// Lines are grouped by (word, sense, annotator); each group must cover all
/// ten categories exactly once and agree on `q1_correct`. Groups are returned
/// in first-seen order.
pub fn read_annotations<R: BufRead>(reader: R) -> Result<Vec<SenseAnnotation>> {
    struct Pending {
        annotation: SenseAnnotation,
        seen: CategorySet,
        first_line: usize,
    }

    let mut order: Vec<Pending> = Vec::new();
    let mut index: HashMap<(String, String, String), usize> = HashMap::new();

    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        let bad = |reason: String| Error::MalformedAnnotation { line: line_no, reason };
        let fields: Vec<&str> = line.split('\t').collect();
        let [word, sense, annotator, q1, label, flag] = fields[..] else {
            return Err(bad(format!("expected 6 tab-separated fields, found {}", fields.len())));
        };
        let q1 = parse_bool(q1).ok_or_else(|| bad(format!("q1_correct `{q1}` is not 0/1")))?;
        let category: AffectCategory = label.parse().map_err(|_| Error::UnknownCategory {
            line: line_no,
            label: label.to_string(),
        })?;
        let vote = parse_bool(flag).ok_or_else(|| bad(format!("vote `{flag}` is not 0/1")))?;
        let word = word.trim().to_lowercase();
        if word.is_empty() || word.chars().any(char::is_whitespace) {
            return Err(bad("word is empty or contains whitespace".into()));
        }

        let key = (word.clone(), sense.to_string(), annotator.to_string());
        let slot = *index.entry(key).or_insert_with(|| {
            order.push(Pending {
                annotation: SenseAnnotation {
                    word,
                    sense_id: sense.to_string(),
                    annotator_id: annotator.to_string(),
                    votes: CategorySet::EMPTY,
                    q1_correct: q1,
                },
                seen: CategorySet::EMPTY,
                first_line: line_no,
            });
            order.len() - 1
        });
        let pending = &mut order[slot];
        if pending.annotation.q1_correct != q1 {
            return Err(bad("q1_correct disagrees with earlier lines of the same annotation".into()));
        }
        if pending.seen.contains(category) {
            return Err(bad(format!("duplicate vote for `{category}`")));
        }
        pending.seen.insert(category);
        if vote {
            pending.annotation.votes.insert(category);
        }
    }

    order
        .into_iter()
        .map(|p| {
            if p.seen.len() == AffectCategory::COUNT {
                Ok(p.annotation)
            } else {
                Err(Error::MalformedAnnotation {
                    line: p.first_line,
                    reason: format!(
                        "annotation of `{}`/{} by {} covers {} of 10 categories",
                        p.annotation.word,
                        p.annotation.sense_id,
                        p.annotation.annotator_id,
                        p.seen.len()
                    ),
                })
            }
        })
        .collect()
}

fn parse_bool(s: &str) -> Option<bool> {
    match s.trim() {
        "1" | "true" | "TRUE" | "True" => Some(true),
        "0" | "false" | "FALSE" | "False" => Some(false),
        _ => None,
    }
}
