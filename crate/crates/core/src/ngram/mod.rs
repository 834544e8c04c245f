//! Entity emotion tracking over Google Books style 5-gram shards.

mod record;
mod scan;

pub use record::{normalize_token, parse_5gram_line, strip_pos_suffix, NgramParseError, NgramRecord, MAX_YEAR};
pub use scan::{
    open_shard, read_shard_manifest, scan_entity, BinWeights, Denominator, EntityBin, EntityScanner,
    EntityTimeline, LineError, ScanAccumulator, ScanConfig, ScanStats, MAX_ERROR_SAMPLES,
};
