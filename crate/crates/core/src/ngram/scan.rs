use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, BufRead, BufReader};
use std::path::{Path, PathBuf};

use flate2::read::MultiGzDecoder;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::record::{normalize_token, parse_line, NgramParseError, NgramRecord};
use crate::error::{Error, Result};
use crate::lexicon::{AffectCategory, EmotionLexicon};
use crate::text::CategoryCounts;

/// Denominator of entity percentages.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Denominator {
    /// Every non-target token of the matching 5-grams.
    #[default]
    NonTargetTokens,
    /// Only non-target tokens with an emotion association (polar tokens for
    /// the two polarities).
    EmotionTokens,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanConfig {
    pub min_year: u16,
    pub bin_width: u16,
    pub denominator: Denominator,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            min_year: 1800,
            bin_width: 5,
            denominator: Denominator::NonTargetTokens,
        }
    }
}

/// Match-count weighted sums for one (target, bin).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinWeights {
    pub non_target: u64,
    pub emotion: u64,
    pub polar: u64,
    pub categories: CategoryCounts,
}

impl BinWeights {
    fn add(&mut self, other: &BinWeights) {
        self.non_target += other.non_target;
        self.emotion += other.emotion;
        self.polar += other.polar;
        self.categories.add(&other.categories);
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanStats {
    pub lines: u64,
    pub bytes: u64,
    pub matched_records: u64,
    pub skipped_before_min_year: u64,
    pub parse_errors: u64,
}

impl ScanStats {
    fn add(&mut self, o: &ScanStats) {
        self.lines += o.lines;
        self.bytes += o.bytes;
        self.matched_records += o.matched_records;
        self.skipped_before_min_year += o.skipped_before_min_year;
        self.parse_errors += o.parse_errors;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineError {
    pub source: String,
    pub line: u64,
    pub error: NgramParseError,
}

/// How many malformed lines are kept verbatim; the rest are only counted.
pub const MAX_ERROR_SAMPLES: usize = 32;

/// Partial scan result. Accumulators from different shards merge by plain
/// integer addition, so merge order never changes the outcome.
#[derive(Debug, Clone, Default)]
pub struct ScanAccumulator {
    bins: Vec<BTreeMap<u16, BinWeights>>,
    pub stats: ScanStats,
    pub error_samples: Vec<LineError>,
}

impl ScanAccumulator {
    /// Per-target bins, in the scanner's target order.
    pub fn bins(&self) -> &[BTreeMap<u16, BinWeights>] {
        &self.bins
    }

    pub fn merge(&mut self, other: ScanAccumulator) {
        if self.bins.len() < other.bins.len() {
            self.bins.resize_with(other.bins.len(), BTreeMap::new);
        }
        for (mine, theirs) in self.bins.iter_mut().zip(other.bins) {
            for (bin, w) in theirs {
                mine.entry(bin).or_default().add(&w);
            }
        }
        self.stats.add(&other.stats);
        self.error_samples.extend(other.error_samples);
        self.error_samples
            .sort_by(|a, b| (&a.source, a.line).cmp(&(&b.source, b.line)));
        self.error_samples.truncate(MAX_ERROR_SAMPLES);
    }

    fn record_error(&mut self, source: &str, line: u64, error: NgramParseError) {
        self.stats.parse_errors += 1;
        if self.error_samples.len() < MAX_ERROR_SAMPLES {
            self.error_samples.push(LineError {
                source: source.to_string(),
                line,
                error,
            });
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntityBin {
    pub bin_start: u16,
    pub percentages: BTreeMap<AffectCategory, f64>,
    /// Total match-count weight of non-target tokens in the bin.
    pub support_weight: u64,
    pub zero_support: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntityTimeline {
    pub target: String,
    pub min_year: u16,
    pub bin_width: u16,
    pub denominator: Denominator,
    pub bins: Vec<EntityBin>,
}

impl EntityTimeline {
    /// `(bin_start, percentage)` pairs for one category.
    pub fn series(&self, category: AffectCategory) -> Vec<(u16, f64)> {
        self.bins
            .iter()
            .map(|b| (b.bin_start, b.percentages[&category]))
            .collect()
    }
}

/// Streams 5-gram lines and accumulates, per target word, the emotion
/// associations of the words that co-occur with it.
///
/// Every non-target position of a 5-gram containing the target adds the
/// record's match count to its bin's total and to each category of that
/// token. Several targets are tracked in one pass.
#[derive(Debug, Clone)]
pub struct EntityScanner<'a> {
    lexicon: &'a EmotionLexicon,
    targets: Vec<String>,
    target_len: (usize, usize),
    config: ScanConfig,
}

#[inline]
fn matches_target(raw: &str, target: &str) -> bool {
    if raw.len() == target.len() && raw.eq_ignore_ascii_case(target) {
        return true;
    }
    // non-ASCII case folding can change the byte length
    !raw.is_ascii() && raw.to_lowercase() == target
}

impl<'a> EntityScanner<'a> {
    pub fn new<I, S>(lexicon: &'a EmotionLexicon, targets: I, config: ScanConfig) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        if config.bin_width == 0 {
            return Err(Error::InvalidArgument("bin width must be at least 1 year".into()));
        }
        let mut normalized: Vec<String> = Vec::new();
        for t in targets {
            let t = t.as_ref().trim();
            if t.is_empty() || t.chars().any(char::is_whitespace) {
                return Err(Error::InvalidArgument(format!("target `{t}` must be a single token")));
            }
            let t = normalize_token(t).into_owned();
            if !normalized.contains(&t) {
                normalized.push(t);
            }
        }
        if normalized.is_empty() {
            return Err(Error::InvalidArgument("at least one target is required".into()));
        }
        if normalized.len() > 64 {
            return Err(Error::InvalidArgument("at most 64 targets per scan".into()));
        }
        let lens = normalized.iter().map(String::len);
        let target_len = (lens.clone().min().unwrap_or(0), lens.max().unwrap_or(0));
        Ok(EntityScanner {
            lexicon,
            targets: normalized,
            target_len,
            config,
        })
    }

    pub fn targets(&self) -> &[String] {
        &self.targets
    }

    pub fn config(&self) -> &ScanConfig {
        &self.config
    }

    pub fn new_accumulator(&self) -> ScanAccumulator {
        ScanAccumulator {
            bins: vec![BTreeMap::new(); self.targets.len()],
            ..Default::default()
        }
    }

    #[inline]
    fn bin_start(&self, year: u16) -> u16 {
        let ScanConfig { min_year, bin_width, .. } = self.config;
        min_year + (year - min_year) / bin_width * bin_width
    }

    #[inline]
    fn accumulate(&self, acc: &mut ScanAccumulator, tokens: [&str; 5], year: u16, match_count: u64) {
        if year < self.config.min_year {
            acc.stats.skipped_before_min_year += 1;
            return;
        }
        // bit `ti` of hits[pos] is set when token `pos` is target `ti`
        let mut hits = [0u64; 5];
        let mut any = 0u64;
        for (pos, tok) in tokens.iter().enumerate() {
            if tok.len() < self.target_len.0 || (tok.len() > self.target_len.1 && tok.is_ascii()) {
                continue;
            }
            for (ti, target) in self.targets.iter().enumerate() {
                if matches_target(tok, target) {
                    hits[pos] |= 1 << ti;
                }
            }
            any |= hits[pos];
        }
        if any == 0 {
            return;
        }
        acc.stats.matched_records += 1;
        let cats = tokens.map(|t| self.lexicon.associations(t));
        let bin = self.bin_start(year);
        for (ti, bins) in acc.bins.iter_mut().enumerate() {
            if any & (1 << ti) == 0 {
                continue;
            }
            let weights = bins.entry(bin).or_default();
            for (pos, set) in cats.iter().enumerate() {
                if hits[pos] & (1 << ti) != 0 {
                    continue;
                }
                weights.non_target += match_count;
                for c in set.iter() {
                    weights.categories[c] += match_count;
                }
                if set.has_emotion() {
                    weights.emotion += match_count;
                }
                if set.has_polarity() {
                    weights.polar += match_count;
                }
            }
        }
    }

    /// Adds an already-parsed record.
    pub fn add_record(&self, acc: &mut ScanAccumulator, record: &NgramRecord) {
        let tokens = [0, 1, 2, 3, 4].map(|i| record.tokens[i].as_str());
        self.accumulate(acc, tokens, record.year, record.match_count);
    }

    /// Parses and adds one line. Malformed lines are recorded and skipped.
    pub fn scan_line(&self, acc: &mut ScanAccumulator, line: &str, source: &str, line_no: u64) {
        acc.stats.lines += 1;
        match parse_line(line) {
            Ok(rec) => self.accumulate(acc, rec.tokens, rec.year, rec.match_count),
            Err(e) => acc.record_error(source, line_no, e),
        }
    }

    pub fn scan_reader<R: BufRead>(&self, mut reader: R, source: &str) -> io::Result<ScanAccumulator> {
        self.scan_dyn(&mut reader, source)
    }

    // kept non-generic so the hot loop is compiled (and optimized) here
    fn scan_dyn(&self, reader: &mut dyn BufRead, source: &str) -> io::Result<ScanAccumulator> {
        let mut acc = self.new_accumulator();
        let mut buf: Vec<u8> = Vec::with_capacity(512);
        let mut line_no = 0u64;
        loop {
            buf.clear();
            let n = reader.read_until(b'\n', &mut buf)?;
            if n == 0 {
                break;
            }
            line_no += 1;
            acc.stats.bytes += n as u64;
            let mut bytes = buf.as_slice();
            while let [rest @ .., b'\n' | b'\r'] = bytes {
                bytes = rest;
            }
            if bytes.is_empty() {
                continue;
            }
            match std::str::from_utf8(bytes) {
                Ok(line) => self.scan_line(&mut acc, line, source, line_no),
                Err(_) => {
                    acc.stats.lines += 1;
                    acc.record_error(source, line_no, NgramParseError::NotUtf8);
                }
            }
        }
        Ok(acc)
    }

    /// Scans one shard; `.gz` files are decompressed on the fly.
    pub fn scan_path(&self, path: &Path) -> Result<ScanAccumulator> {
        let reader = open_shard(path)?;
        Ok(self.scan_reader(reader, &path.display().to_string())?)
    }

    /// Scans shards on `workers` threads and merges the partial sums.
    pub fn scan_paths(&self, paths: &[PathBuf], workers: usize) -> Result<ScanAccumulator> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers.max(1))
            .build()
            .map_err(|e| Error::InvalidArgument(format!("cannot start scan workers: {e}")))?;
        pool.install(|| {
            paths
                .par_iter()
                .map(|p| self.scan_path(p))
                .try_reduce(
                    || self.new_accumulator(),
                    |mut a, b| {
                        a.merge(b);
                        Ok(a)
                    },
                )
        })
    }

    /// Converts weighted sums into per-bin percentages. Bins between the first
    /// and last observed bin are filled in with zero support.
    pub fn finish(&self, acc: &ScanAccumulator) -> Vec<EntityTimeline> {
        self.targets
            .iter()
            .enumerate()
            .map(|(ti, target)| {
                let empty = BTreeMap::new();
                let bins = acc.bins.get(ti).unwrap_or(&empty);
                let out = match (bins.keys().next(), bins.keys().next_back()) {
                    (Some(&first), Some(&last)) => (first..=last)
                        .step_by(self.config.bin_width as usize)
                        .map(|start| self.finish_bin(start, bins.get(&start).copied().unwrap_or_default()))
                        .collect(),
                    _ => Vec::new(),
                };
                EntityTimeline {
                    target: target.clone(),
                    min_year: self.config.min_year,
                    bin_width: self.config.bin_width,
                    denominator: self.config.denominator,
                    bins: out,
                }
            })
            .collect()
    }

    fn finish_bin(&self, bin_start: u16, w: BinWeights) -> EntityBin {
        let percentages = AffectCategory::ALL
            .into_iter()
            .map(|c| {
                let denom = match self.config.denominator {
                    Denominator::NonTargetTokens => w.non_target,
                    Denominator::EmotionTokens if c.is_polarity() => w.polar,
                    Denominator::EmotionTokens => w.emotion,
                };
                let pct = if denom == 0 {
                    0.0
                } else {
                    100.0 * w.categories[c] as f64 / denom as f64
                };
                (c, pct)
            })
            .collect();
        EntityBin {
            bin_start,
            percentages,
            support_weight: w.non_target,
            zero_support: w.non_target == 0,
        }
    }
}

/// One-target scan over parsed records.
pub fn scan_entity<I>(records: I, target: &str, lexicon: &EmotionLexicon, config: ScanConfig) -> Result<EntityTimeline>
where
    I: IntoIterator<Item = NgramRecord>,
{
    let scanner = EntityScanner::new(lexicon, [target], config)?;
    let mut acc = scanner.new_accumulator();
    for r in records {
        scanner.add_record(&mut acc, &r);
    }
    Ok(scanner.finish(&acc).pop().expect("one target"))
}

pub fn open_shard(path: &Path) -> io::Result<Box<dyn BufRead + Send>> {
    const BUF: usize = 1 << 20;
    let file = File::open(path)?;
    if path.extension().is_some_and(|e| e == "gz") {
        Ok(Box::new(BufReader::with_capacity(BUF, MultiGzDecoder::new(file))))
    } else {
        Ok(Box::new(BufReader::with_capacity(BUF, file)))
    }
}

/// Reads a shard manifest: one path per line, relative paths resolved
/// against the manifest's directory, `#` comments and blank lines ignored.
pub fn read_shard_manifest(path: &Path) -> Result<Vec<PathBuf>> {
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    let text = std::fs::read_to_string(path)?;
    Ok(text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let p = PathBuf::from(l);
            if p.is_absolute() {
                p
            } else {
                base.join(p)
            }
        })
        .collect())
}
