use crate::lexicon::AffectCategory;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("lexicon line {line}: {reason}")]
    MalformedLexiconLine { line: usize, reason: String },

    #[error("lexicon line {line}: unknown affect category `{label}`")]
    UnknownCategory { line: usize, label: String },

    #[error("annotation line {line}: {reason}")]
    MalformedAnnotation { line: usize, reason: String },

    #[error("invalid lexicon word `{0}`: must be non-empty and contain no whitespace")]
    InvalidWord(String),

    #[error("`{0}` is a polarity, not one of the eight emotions")]
    NotAnEmotion(AffectCategory),

    #[error("document `{doc_id}` has no tokens; density is undefined")]
    EmptyDocument { doc_id: String },

    #[error("document `{doc_id}` has no emotion-associated tokens")]
    NoEmotionTokens { doc_id: String },

    #[error("window of {window} tokens does not fit a document of {total} tokens")]
    WindowTooLarge { window: usize, total: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("empty corpus")]
    EmptyCorpus,

    #[error("sample of size {got} is too small; at least {needed} values required")]
    SampleTooSmall { needed: usize, got: usize },

    #[error("sample variance is zero; the test statistic is undefined")]
    ZeroVariance,

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
