//! Output renderers: `tree` is the JSON envelope served over HTTP, `table`
//! is tab-separated text for terminals and spreadsheets.

use std::fmt::Write;

use emolit_core::ngram::EntityTimeline;
use emolit_core::stats::{CorpusSummary, HistogramSpec};
use emolit_core::text::TimelineSeries;
use emolit_core::AffectCategory;
use serde::Serialize;

use crate::api::{CollectionComparison, Comparison, Envelope, ProfileView, Ranking, TextList};
use crate::store::IngestReport;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Table,
    Tree,
}

pub trait Table {
    fn table(&self) -> String;
}

pub fn render<T: Serialize + Table>(value: &T, format: OutputFormat) -> String {
    match format {
        OutputFormat::Table => value.table(),
        OutputFormat::Tree => {
            let mut s = serde_json::to_string_pretty(&Envelope::new(value)).expect("views serialize");
            s.push('\n');
            s
        }
    }
}

fn header(out: &mut String, first: &[&str], cats: &[AffectCategory]) {
    let cols: Vec<&str> = first.iter().copied().chain(cats.iter().map(|c| c.as_str())).collect();
    writeln!(out, "{}", cols.join("\t")).unwrap();
}

fn num(x: f64) -> String {
    format!("{x:.4}")
}

impl Table for TextList {
    fn table(&self) -> String {
        let mut out = String::new();
        header(&mut out, &["doc_id", "collection", "tokens", "title"], &AffectCategory::ALL);
        for t in &self.texts {
            let dens: Vec<String> = t.densities.values().map(|d| num(*d)).collect();
            writeln!(out, "{}\t{}\t{}\t{}\t{}", t.doc_id, t.collection, t.token_count, t.title, dens.join("\t")).unwrap();
        }
        out
    }
}

impl Table for ProfileView {
    fn table(&self) -> String {
        let p = &self.profile;
        let mut out = format!(
            "doc_id\t{}\ntokens\t{}\nemotion_tokens\t{}\npolar_tokens\t{}\n\ncategory\tcount\tpercent\tper_{}\n",
            p.doc_id, p.total_tokens, p.emotion_token_count, p.polar_token_count, self.per_tokens
        );
        for c in AffectCategory::ALL {
            writeln!(
                out,
                "{c}\t{}\t{}\t{}",
                p.category_counts[c],
                num(self.percentages[&c]),
                num(self.densities[&c])
            )
            .unwrap();
        }
        out
    }
}

impl Table for TimelineSeries {
    fn table(&self) -> String {
        let cats: Vec<AffectCategory> = self.points.first().map(|p| p.values.keys().copied().collect()).unwrap_or_default();
        let mut out = String::new();
        header(&mut out, &["progress"], &cats);
        for p in &self.points {
            let vals: Vec<String> = p.values.values().map(|v| num(*v)).collect();
            writeln!(out, "{}\t{}", num(p.progress), vals.join("\t")).unwrap();
        }
        out
    }
}

impl Table for Comparison {
    fn table(&self) -> String {
        let mut out = format!("emotion\tdiff_pct({} - {})\n", self.a, self.b);
        for (c, d) in &self.diff_percentages {
            writeln!(out, "{c}\t{}", num(*d)).unwrap();
        }
        for (side, clouds) in [(&self.a, &self.clouds_a), (&self.b, &self.clouds_b)] {
            writeln!(out, "\nsalient_in\temotion\tword\tscore\tweight").unwrap();
            for (c, words) in clouds {
                for w in words {
                    writeln!(out, "{side}\t{c}\t{}\t{:.6e}\t{}", w.word, w.score, num(w.weight)).unwrap();
                }
            }
        }
        out
    }
}

impl Table for CorpusSummary {
    fn table(&self) -> String {
        let mut out = format!(
            "corpus\t{}\ndocuments\t{}\n\ncategory\tmean_per_{}\tsd\n",
            self.corpus_id, self.doc_count, self.per_tokens
        );
        for (c, ms) in &self.categories {
            writeln!(out, "{c}\t{}\t{}", num(ms.mean), num(ms.std_dev)).unwrap();
        }
        if self.single_document {
            out.push_str("# single document: sd reported as 0\n");
        }
        out
    }
}

impl Table for HistogramSpec {
    fn table(&self) -> String {
        let mut out = String::from("bin\tlower\tupper\tcount\n");
        for b in &self.bins {
            writeln!(out, "{}\t{}\t{}\t{}", b.index, b.lower, b.upper, b.count).unwrap();
        }
        out
    }
}

impl Table for Ranking {
    fn table(&self) -> String {
        let mut out = format!("rank\tdoc_id\t{}_per_{}\n", self.category, self.per_tokens);
        for (i, d) in self.documents.iter().enumerate() {
            writeln!(out, "{}\t{}\t{}", i + 1, d.doc_id, num(d.density)).unwrap();
        }
        out
    }
}

impl Table for CollectionComparison {
    fn table(&self) -> String {
        let mut out = format!(
            "category\t{a}_mean\t{a}_sd\t{b}_mean\t{b}_sd\tt\tdf\tp_t\tF\tp_F\n",
            a = self.first.corpus_id,
            b = self.second.corpus_id
        );
        for c in AffectCategory::ALL {
            let (a, b) = (self.first.categories[&c], self.second.categories[&c]);
            let tests = match self.tests.get(&c) {
                Some(t) => format!(
                    "{}\t{}\t{:.3e}\t{}\t{:.3e}",
                    num(t.mean_difference.statistic),
                    num(t.mean_difference.degrees_of_freedom),
                    t.mean_difference.p_value,
                    num(t.variance_ratio.statistic),
                    t.variance_ratio.p_value
                ),
                None => "-\t-\t-\t-\t-".into(),
            };
            writeln!(out, "{c}\t{}\t{}\t{}\t{}\t{tests}", num(a.mean), num(a.std_dev), num(b.mean), num(b.std_dev)).unwrap();
        }
        out
    }
}

impl Table for EntityTimeline {
    fn table(&self) -> String {
        let mut out = String::new();
        header(&mut out, &["target", "bin_start", "support"], &AffectCategory::ALL);
        for b in &self.bins {
            let vals: Vec<String> = AffectCategory::ALL.iter().map(|c| num(b.percentages[c])).collect();
            writeln!(out, "{}\t{}\t{}\t{}", self.target, b.bin_start, b.support_weight, vals.join("\t")).unwrap();
        }
        out
    }
}

impl Table for Vec<EntityTimeline> {
    fn table(&self) -> String {
        let mut out = String::new();
        for (i, tl) in self.iter().enumerate() {
            let t = tl.table();
            // one header for the whole listing
            out.push_str(if i == 0 { &t } else { t.split_once('\n').map_or("", |(_, rest)| rest) });
        }
        out
    }
}

impl Table for IngestReport {
    fn table(&self) -> String {
        let mut out = String::from("status\tdoc_id\tcollection\ttokens\tsource\n");
        for o in &self.outcomes {
            let status = serde_json::to_value(o.status).unwrap();
            writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}",
                status.as_str().unwrap_or(""),
                o.record.doc_id,
                o.record.collection,
                o.record.token_count,
                o.record.source_path
            )
            .unwrap();
        }
        for f in &self.failures {
            writeln!(out, "failed\t-\t-\t-\t{}: {}", f.path, f.error).unwrap();
        }
        out
    }
}
