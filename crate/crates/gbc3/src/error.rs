//! Crate-wide error type.

use thiserror::Error;

/// Errors raised by constructors and fallible operations.
#[derive(Debug, Error)]
pub enum Error {
    /// A side-information matrix had an entry outside {0,1} or a nonzero diagonal.
    #[error("invalid side-information matrix: {0}")]
    InvalidMatrix(String),

    /// A config id was outside 0..=63 or a bit string was malformed.
    #[error("invalid config id: {0}")]
    InvalidConfigId(String),

    /// A receiver label was outside 1..=3.
    #[error("receiver label {0} out of range 1..=3")]
    InvalidReceiver(usize),

    /// Channel parameters violated 0 < N1 < N2 < N3 or P > 0.
    #[error("invalid channel: {0}")]
    InvalidChannel(String),

    /// A power split was negative or did not sum to the channel power.
    #[error("invalid power split: {0}")]
    InvalidSplit(String),

    /// A candidate degraded sequence violated disjointness, acyclicity, or
    /// the weaker-set relation.
    #[error("invalid degraded sequence: {0}")]
    InvalidSequence(String),

    /// A rate-region operation was asked about an unbounded region.
    #[error("region is unbounded in direction of receiver {0}")]
    UnboundedRegion(usize),

    /// A projected system contained a row that is neither a subset bound nor
    /// implied by nonnegativity.
    #[error("projection produced a non-subset row: {0}")]
    NonSubsetRow(String),

    /// An infeasible inequality system where a feasible one was required.
    #[error("inequality system is infeasible")]
    InfeasibleSystem,

    /// A weight vector was all-zero or had a negative component.
    #[error("invalid weight vector: {0}")]
    InvalidWeight(String),

    /// A layered-region request used a set that is not complete.
    #[error("set {0} is not complete under this config")]
    NotComplete(String),

    /// Message-index recovery was attempted without the required side information.
    #[error("receiver {receiver} cannot recover its message without the message of receiver {missing}")]
    MissingSideInformation { receiver: usize, missing: usize },

    /// A message tuple component was outside its alphabet.
    #[error("message {value} of receiver {receiver} exceeds alphabet size {size}")]
    MessageOutOfRange { receiver: usize, value: u64, size: u64 },

    /// Message alphabet sizes were zero or their product overflowed.
    #[error("invalid message sizes: {0}")]
    InvalidMessageSizes(String),

    /// A broadcast index was outside the subcodebook range.
    #[error("index {value} exceeds subcodebook count {count}")]
    IndexOutOfRange { value: u64, count: u64 },

    /// A receiver was asked for a per-layer rate on a layer it does not decode.
    #[error("receiver {receiver} does not decode layer {layer}")]
    NotAParticipant { receiver: usize, layer: usize },

    /// Hull support of an empty point cloud.
    #[error("empty point cloud has no support value")]
    EmptyCloud,
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
