//! Command-line front end. `run` returns an exit code so the binary stays a
//! one-liner and tests can drive it in-process.

use std::net::{IpAddr, Ipv4Addr, SocketAddr};
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use emolit_core::ngram::{read_shard_manifest, Denominator, EntityScanner, EntityTimeline, ScanConfig};
use emolit_core::text::{analyze_text, strip_gutenberg_boilerplate, tokenize, TimelineSeries};
use emolit_core::{DensityConfig, EmotionLexicon, EmotionProfile};
use serde::Serialize;

use crate::api::{self, ApiError, ErrorCode, ProfileView, TimelineQuery};
use crate::format::{render, OutputFormat, Table};
use crate::http::{self, AppState};
use crate::store::{Index, StoreError};

#[derive(Debug, Parser)]
#[command(name = "emolit", version, about = "Emotion-lexicon analysis of literary texts")]
pub struct Cli {
    /// Word-emotion lexicon, TSV `word<TAB>category<TAB>0|1`.
    #[arg(long, global = true, env = "EMOLIT_LEXICON")]
    pub lexicon: Option<PathBuf>,
    /// Index directory.
    #[arg(long, global = true, env = "EMOLIT_INDEX")]
    pub index: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Table)]
    pub format: OutputFormat,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Add a file or a directory of files to the index.
    Ingest {
        path: PathBuf,
        #[arg(long)]
        collection: String,
        /// Density scale used when the index is created.
        #[arg(long, default_value_t = DensityConfig::DEFAULT_PER_TOKENS)]
        per_tokens: u64,
    },
    /// Profile one file without touching an index.
    Analyze {
        file: PathBuf,
        /// Also print the windowed emotion timeline.
        #[arg(long)]
        timeline: bool,
        #[command(flatten)]
        window: WindowArgs,
        #[arg(long, default_value_t = DensityConfig::DEFAULT_PER_TOKENS)]
        per_tokens: u64,
    },
    /// Percentage differences and salience clouds for two texts (index ids or files).
    Compare {
        a: String,
        b: String,
        /// Words per cloud.
        #[arg(long, default_value_t = emolit_core::salience::DEFAULT_CLOUD_SIZE)]
        k: usize,
    },
    /// Documents of a collection in increasing density of one category.
    Rank {
        collection: String,
        #[arg(long)]
        category: String,
    },
    /// Per-category density mean and sd, optionally tested against a second collection.
    Stats {
        collection: String,
        #[arg(long)]
        against: Option<String>,
    },
    /// Density histogram of one category.
    Hist {
        collection: String,
        #[arg(long)]
        category: String,
        #[arg(long, default_value_t = emolit_core::stats::DEFAULT_BIN_WIDTH)]
        width: f64,
    },
    /// Emotion timelines of target words from 5-gram shards.
    NgramScan(NgramArgs),
    /// Serve the index over HTTP.
    Serve {
        #[arg(long, env = "EMOLIT_PORT", default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value_t = IpAddr::V4(Ipv4Addr::LOCALHOST))]
        host: IpAddr,
        /// Enable POST /ingest.
        #[arg(long)]
        allow_ingest: bool,
    },
}

#[derive(Debug, Args)]
pub struct WindowArgs {
    #[arg(long)]
    pub window: Option<usize>,
    #[arg(long)]
    pub stride: Option<usize>,
    /// Comma-separated categories (default: all).
    #[arg(long)]
    pub categories: Option<String>,
    /// emotion_share or token_share.
    #[arg(long)]
    pub mode: Option<String>,
}

#[derive(Debug, Args)]
pub struct NgramArgs {
    /// Comma-separated target words.
    #[arg(long, value_delimiter = ',', required = true)]
    pub targets: Vec<String>,
    #[arg(long, default_value_t = 1800)]
    pub min_year: u16,
    /// Bin width in years.
    #[arg(long, default_value_t = 5)]
    pub bin: u16,
    #[arg(long, value_enum, default_value_t = DenominatorArg::NonTarget)]
    pub denominator: DenominatorArg,
    /// File listing shard paths, one per line.
    #[arg(long)]
    pub manifest: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    /// Shard files (`.gz` is decompressed).
    pub shards: Vec<PathBuf>,
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
pub enum DenominatorArg {
    NonTarget,
    Emotion,
}

/// Failure of a command, grouped by the exit code it maps to.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Io(String),
    #[error("lexicon: {0}")]
    Lexicon(String),
    #[error("index: {0}")]
    Index(String),
    #[error("{0}")]
    NotFound(String),
    #[error("{0}")]
    Invalid(String),
    #[error("server: {0}")]
    Server(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => 3,
            CliError::Lexicon(_) => 4,
            CliError::Index(_) => 5,
            CliError::NotFound(_) => 6,
            CliError::Invalid(_) => 7,
            CliError::Server(_) => 8,
        }
    }
}

impl From<ApiError> for CliError {
    fn from(e: ApiError) -> Self {
        match e.code {
            ErrorCode::NotFound => CliError::NotFound(e.message),
            ErrorCode::BadRequest | ErrorCode::Forbidden => CliError::Invalid(e.message),
            ErrorCode::Internal => CliError::Index(e.message),
        }
    }
}

impl From<StoreError> for CliError {
    fn from(e: StoreError) -> Self {
        CliError::Index(e.to_string())
    }
}

impl From<emolit_core::Error> for CliError {
    fn from(e: emolit_core::Error) -> Self {
        match e {
            emolit_core::Error::Io(io) => CliError::Io(io.to_string()),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

pub fn run(cli: Cli) -> i32 {
    match execute(cli) {
        Ok(out) => {
            print!("{out}");
            0
        }
        Err(e) => {
            eprintln!("emolit: {e}");
            e.exit_code()
        }
    }
}

/// Runs a command and returns what it would print.
pub fn execute(cli: Cli) -> CliResult<String> {
    let fmt = cli.format;
    match cli.command {
        Command::Ingest {
            ref path,
            ref collection,
            per_tokens,
        } => {
            let lex = load_lexicon(&cli)?;
            let density = DensityConfig::new(per_tokens)?;
            let mut index = Index::open_or_create(index_dir(&cli)?, lex, density)?;
            let report = index.ingest(path, collection)?;
            if !report.failures.is_empty() {
                eprintln!("emolit: {} file(s) could not be ingested", report.failures.len());
            }
            Ok(render(&report, fmt))
        }
        Command::Analyze {
            ref file,
            timeline,
            ref window,
            per_tokens,
        } => {
            let lex = load_lexicon(&cli)?;
            let text = read_text(file)?;
            let id = file_id(file);
            let profile = analyze_text(&id, &text, &lex);
            if profile.total_tokens == 0 {
                return Err(CliError::Invalid(format!("{} has zero tokens", file.display())));
            }
            let profile = api::profile_view(&profile, None, &DensityConfig::new(per_tokens)?)?;
            let timeline = if timeline {
                let tokens = tokenize(strip_gutenberg_boilerplate(&text));
                Some(api::timeline_for_tokens(&id, &tokens, &lex, &window.query())?)
            } else {
                None
            };
            Ok(render(&Analysis { profile, timeline }, fmt))
        }
        Command::Compare { ref a, ref b, k } => {
            let cmp = if Path::new(a).is_file() && Path::new(b).is_file() {
                let lex = load_lexicon(&cli)?;
                let pa = profile_file(Path::new(a), &lex)?;
                let pb = profile_file(Path::new(b), &lex)?;
                api::compare_profiles(&pa, &pb, k)?
            } else {
                api::compare_texts(&open_index(&cli)?, a, b, Some(k))?
            };
            Ok(render(&cmp, fmt))
        }
        Command::Rank {
            ref collection,
            ref category,
        } => {
            let category = api::parse_category(category)?;
            Ok(render(&api::collection_ranking(&open_index(&cli)?, collection, category)?, fmt))
        }
        Command::Stats {
            ref collection,
            ref against,
        } => {
            let index = open_index(&cli)?;
            Ok(match against {
                None => render(&api::collection_summary(&index, collection)?, fmt),
                Some(other) => render(&api::compare_collections(&index, collection, other)?, fmt),
            })
        }
        Command::Hist {
            ref collection,
            ref category,
            width,
        } => {
            let category = api::parse_category(category)?;
            Ok(render(&api::collection_histogram(&open_index(&cli)?, collection, category, Some(width))?, fmt))
        }
        Command::NgramScan(ref args) => {
            let lex = load_lexicon(&cli)?;
            let timelines = ngram_scan(&lex, args)?;
            if cli.index.is_some() {
                let index = Index::open(index_dir(&cli)?, lex)?;
                for tl in &timelines {
                    index.store_entity(tl)?;
                }
            }
            Ok(render(&timelines, fmt))
        }
        Command::Serve {
            port,
            host,
            allow_ingest,
        } => {
            let index = open_index(&cli)?;
            serve_blocking(index, SocketAddr::new(host, port), allow_ingest)?;
            Ok(String::new())
        }
    }
}

impl WindowArgs {
    fn query(&self) -> TimelineQuery {
        TimelineQuery {
            window: self.window,
            stride: self.stride,
            categories: self.categories.clone(),
            mode: self.mode.clone(),
        }
    }
}

#[derive(Debug, Serialize)]
struct Analysis {
    profile: ProfileView,
    #[serde(skip_serializing_if = "Option::is_none")]
    timeline: Option<TimelineSeries>,
}

impl Table for Analysis {
    fn table(&self) -> String {
        let mut out = self.profile.table();
        if let Some(t) = &self.timeline {
            out.push('\n');
            out.push_str(&t.table());
        }
        out
    }
}

fn ngram_scan(lex: &EmotionLexicon, args: &NgramArgs) -> CliResult<Vec<EntityTimeline>> {
    let cfg = ScanConfig {
        min_year: args.min_year,
        bin_width: args.bin,
        denominator: match args.denominator {
            DenominatorArg::NonTarget => Denominator::NonTargetTokens,
            DenominatorArg::Emotion => Denominator::EmotionTokens,
        },
    };
    let mut shards = args.shards.clone();
    if let Some(m) = &args.manifest {
        shards.extend(read_shard_manifest(m)?);
    }
    if shards.is_empty() {
        return Err(CliError::Invalid("no shards given (pass paths or --manifest)".into()));
    }
    let scanner = EntityScanner::new(lex, &args.targets, cfg)?;
    let started = Instant::now();
    let acc = scanner.scan_paths(&shards, args.workers)?;
    let secs = started.elapsed().as_secs_f64();
    let s = &acc.stats;
    log::info!(
        "{} lines, {} matched, {} before {}, {} malformed; {:.1} MB/s",
        s.lines,
        s.matched_records,
        s.skipped_before_min_year,
        cfg.min_year,
        s.parse_errors,
        s.bytes as f64 / 1e6 / secs.max(1e-9)
    );
    for e in &acc.error_samples {
        log::warn!("{e:?}");
    }
    Ok(scanner.finish(&acc))
}

fn serve_blocking(index: Index, addr: SocketAddr, allow_ingest: bool) -> CliResult<()> {
    let rt = tokio::runtime::Builder::new_multi_thread()
        .enable_all()
        .build()
        .map_err(|e| CliError::Server(e.to_string()))?;
    rt.block_on(async {
        let listener = http::bind(addr)
            .await
            .map_err(|e| CliError::Server(format!("cannot listen on {addr}: {e}")))?;
        log::info!("serving {} documents on http://{addr}", index.records().len());
        eprintln!("listening on http://{}", listener.local_addr().unwrap_or(addr));
        http::serve(listener, AppState::new(index, allow_ingest))
            .await
            .map_err(|e| CliError::Server(e.to_string()))
    })
}

fn load_lexicon(cli: &Cli) -> CliResult<Arc<EmotionLexicon>> {
    let path = cli
        .lexicon
        .as_ref()
        .ok_or_else(|| CliError::Lexicon("no lexicon given (use --lexicon or EMOLIT_LEXICON)".into()))?;
    EmotionLexicon::from_path(path)
        .map(Arc::new)
        .map_err(|e| CliError::Lexicon(format!("{}: {e}", path.display())))
}

fn index_dir(cli: &Cli) -> CliResult<PathBuf> {
    cli.index
        .clone()
        .ok_or_else(|| CliError::Index("no index given (use --index or EMOLIT_INDEX)".into()))
}

fn open_index(cli: &Cli) -> CliResult<Index> {
    let dir = index_dir(cli)?;
    Ok(Index::open(dir, load_lexicon(cli)?)?)
}

fn read_text(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn file_id(path: &Path) -> String {
    crate::store::slug(&path.file_stem().map(|s| s.to_string_lossy()).unwrap_or_default())
}

fn profile_file(path: &Path, lex: &EmotionLexicon) -> CliResult<EmotionProfile> {
    Ok(analyze_text(file_id(path), &read_text(path)?, lex))
}
