//! Inner and outer bounds on the capacity region of 3-receiver Gaussian
//! broadcast channels with receiver message side information.
//!
//! The channel sends one signal `X` of power `P` to three receivers, where
//! receiver `i` sees `Y_i = X + Z_i` with noise variance `N_i`
//! (`N1 < N2 < N3`) and may already hold some of the other receivers'
//! messages. Which receiver knows which message is a [`RoutingMatrix`] — a
//! 3×3 binary matrix with zero diagonal, 64 configurations in all — and the
//! question is what rate triples `(R1, R2, R3)` are simultaneously
//! achievable.
//!
//! The crate computes, verifies, and compares two bounds on that region:
//!
//! * an **achievable (inner) bound** from layered dirty-paper coding with
//!   index-coded message bundles ([`inner::direct_region`],
//!   [`inner::max_weighted_sum_utility`], [`gaussian::build_layer_plan`],
//!   [`index_coding::MessageSpace`]), and
//! * a **converse (outer) bound** from degraded-sequence power accounting
//!   ([`outer::is_achievable_outer`], [`outer::outer_radial`]),
//!
//! together with the combinatorics driving both (acyclic and complete
//! receiver sets, layer assignment, tightness classification in
//! [`config`]), Fourier–Motzkin projection cross-checks ([`geometry`],
//! [`inner::region_via_fm`]), and deterministic reporting ([`report`]).
//!
//! ```
//! use gbc3::{Channel, LogBase, PowerSplit, RateTuple, RoutingMatrix, WeaknessScope};
//!
//! // Receivers 1 and 3 know each other's messages (configuration 18).
//! let a = RoutingMatrix::from_id(18)?;
//! let ch = Channel::new(10.0, [0.2, 0.5, 1.0], LogBase::Two)?;
//!
//! // One full-power layer serves the mutual pair: both of its members reach
//! // their single-receiver capacities at once …
//! let split = PowerSplit::new(10.0, vec![10.0, 0.0, 0.0])?;
//! let region = gbc3::inner::direct_region(&a, &ch, &split)?;
//! let corner = RateTuple([ch.cap(50.0), 0.0, ch.cap(10.0)]);
//! assert!(region.contains(corner, 1e-9));
//!
//! // … and the converse certifies that no rate pair above the pair's
//! // single-receiver capacities is achievable.
//! let outside = RateTuple([1.001 * ch.cap(50.0), 0.0, ch.cap(10.0)]);
//! assert!(!gbc3::outer::is_achievable_outer(&a, &ch, outside, 1e-9, WeaknessScope::default()));
//! # Ok::<(), gbc3::Error>(())
//! ```
//!
//! # Where to start
//!
//! The `examples/` directory is the primary tour; each file is runnable with
//! `cargo run --example <name>`:
//!
//! * `classify` — the combinatorial anatomy of one configuration.
//! * `census` — tightness classification of all 64 configurations.
//! * `inner_region` — subset-bound regions of the layered scheme.
//! * `weighted_sum_rate` — the exact weighted-sum-rate optimizer.
//! * `fm_projection` — Fourier–Motzkin elimination reproducing the region.
//! * `outer_membership` — converse membership and minimal chain powers.
//! * `frontier_sweep` — inner/outer boundary comparison along directions.
//! * `index_roundtrip` — message-level index coding and recovery.
//!
//! The same capabilities are scriptable through the `gbc3` binary
//! (`classify`, `bounds`, `inner`, `outer`, `report-all`, `verify`,
//! `index`).

pub mod config;
pub mod error;
pub mod gaussian;
pub mod geometry;
pub mod index_coding;
pub mod inner;
pub mod outer;
pub mod report;

pub use config::{ReceiverSet, RoutingMatrix, WeaknessScope};
pub use error::{Error, Result};
pub use gaussian::{Channel, LogBase, PowerSplit};
pub use geometry::{RateTuple, SubsetBoundRegion, WeightVector};
pub use index_coding::{IndexCase, MessageSpace};
