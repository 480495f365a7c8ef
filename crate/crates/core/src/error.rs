use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate symbol `{0}` in alphabet")]
    DuplicateSymbol(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("involution is not involutive at `{0}`")]
    NotInvolutive(String),
    #[error("symbol `{0}` is not covered by the involution")]
    MissingTau(String),
    #[error("ground alphabets differ")]
    AlphabetMismatch,
    #[error("invalid occurrence counts: {0}")]
    Occurrences(String),
    #[error("letter {0} is not in the alphabet of this word")]
    UnknownLetter(usize),
    #[error("operation needs a nonempty word")]
    EmptyWord,
    #[error("map is not equivariant at `{0}`")]
    NotEquivariant(String),
    #[error("subset is not invariant under the involution at `{0}`")]
    NotInvariant(String),
    #[error("invalid move site: {0}")]
    InvalidSite(String),
    #[error("invalid factor: {0}")]
    InvalidFactor(String),
    #[error("invalid phi: {0}")]
    InvalidPhi(String),
    #[error("alphabet has fixed points; {0} needs a fixed-point-free involution")]
    FixedPoints(&'static str),
    #[error("s_bound must be at least 1")]
    BadBound,
    #[error("invalid pairing: {0}")]
    InvalidPairing(String),
    #[error("enumeration too large: {0} (pass an explicit override)")]
    TooLarge(String),
    #[error("malformed move log line `{0}`")]
    BadLog(String),
    #[error("soundness violation: {0}")]
    Soundness(String),
}
