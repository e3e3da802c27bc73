//! Gaussian signal model: channel parameters, power splits, dirty-paper
//! coding rates, and the layered transmission plans built from them.
//!
//! The channel is `Y_i = X + Z_i` with input power budget `P` and receiver
//! noise variances `N1 < N2 < N3`, so receiver 1 is the strongest. Codewords
//! are stacked in layers: each layer carries one (network-coded) message
//! bundle at some share of the power, treats earlier layers as noise, and is
//! precoded against later layers with a dirty-paper scaling `alpha` tuned for
//! one designated receiver. For that receiver the precoding is exactly
//! optimal, so the layer looks interference-free:
//!
//! ```rust
//! use gbc3::gaussian::{DpcLayer, LogBase, cap};
//!
//! let layer = DpcLayer { signal_power: 4.0, interference_power: 6.0, noise_power: 0.7, alpha: 4.0 / 4.7 };
//! let direct = layer.dpc_rate(LogBase::Two);
//! assert!((direct - cap(4.0 / 0.7, LogBase::Two)).abs() < 1e-12);
//! ```

use crate::config::{layer_assignment, maximum_complete_sets, ReceiverSet, RoutingMatrix};
use crate::error::{Error, Result};

// ---------------------------------------------------------------------------
// Rates and capacities
// ---------------------------------------------------------------------------

/// Logarithm base for all rate expressions: bits (base 2) or nats (base e).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum LogBase {
    #[default]
    Two,
    E,
}

impl LogBase {
    /// Natural log of the base, the denominator scale in `ln(x) / ln(b)`.
    pub fn ln_base(self) -> f64 {
        match self {
            LogBase::Two => std::f64::consts::LN_2,
            LogBase::E => 1.0,
        }
    }
}

impl std::fmt::Display for LogBase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LogBase::Two => write!(f, "2"),
            LogBase::E => write!(f, "e"),
        }
    }
}

impl std::str::FromStr for LogBase {
    type Err = Error;
    fn from_str(s: &str) -> Result<LogBase> {
        match s {
            "2" => Ok(LogBase::Two),
            "e" | "E" => Ok(LogBase::E),
            other => Err(Error::InvalidChannel(format!(
                "log base must be \"2\" or \"e\", got {other:?}"
            ))),
        }
    }
}

/// Point-to-point Gaussian capacity `log(1 + snr) / 2` in the given base.
pub fn cap(snr: f64, base: LogBase) -> f64 {
    assert!(snr >= 0.0, "negative snr {snr}");
    snr.ln_1p() / (2.0 * base.ln_base())
}

/// The dirty-paper scaling that makes known interference invisible to a
/// receiver with effective noise `noise`: `signal / (signal + noise)`.
pub fn alpha_star(signal: f64, noise: f64) -> f64 {
    if signal == 0.0 {
        0.0
    } else {
        signal / (signal + noise)
    }
}

// ---------------------------------------------------------------------------
// Channel
// ---------------------------------------------------------------------------

/// Channel parameters: power budget, ordered noise variances, log base.
#[derive(Clone, Copy, Debug)]
pub struct Channel {
    p: f64,
    n: [f64; 3],
    base: LogBase,
}

impl Channel {
    /// Validates `p > 0` and `0 < n1 < n2 < n3` (receivers are indexed from
    /// strongest to weakest, strictly).
    pub fn new(p: f64, noises: [f64; 3], base: LogBase) -> Result<Channel> {
        if !(p > 0.0 && p.is_finite()) {
            return Err(Error::InvalidChannel(format!("power {p} must be positive")));
        }
        if !(noises[0] > 0.0 && noises[0] < noises[1] && noises[1] < noises[2]) {
            return Err(Error::InvalidChannel(format!(
                "noises {noises:?} must satisfy 0 < N1 < N2 < N3"
            )));
        }
        if noises.iter().any(|n| !n.is_finite()) {
            return Err(Error::InvalidChannel(format!("noises {noises:?} must be finite")));
        }
        Ok(Channel { p, n: noises, base })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// Noise variance of receiver `i` (1-based).
    pub fn noise(&self, i: usize) -> f64 {
        assert!((1..=3).contains(&i), "receiver label {i} out of range");
        self.n[i - 1]
    }

    pub fn noises(&self) -> [f64; 3] {
        self.n
    }

    pub fn base(&self) -> LogBase {
        self.base
    }

    /// Capacity of this channel's base for a given snr.
    pub fn cap(&self, snr: f64) -> f64 {
        cap(snr, self.base)
    }
}

// ---------------------------------------------------------------------------
// Power splits
// ---------------------------------------------------------------------------

/// A division of the power budget across layers. Parts are nonnegative and
/// must sum to the declared total (within 1e-12 relative).
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSplit {
    total: f64,
    parts: Vec<f64>,
}

impl PowerSplit {
    pub fn new(total: f64, parts: Vec<f64>) -> Result<PowerSplit> {
        if parts.is_empty() {
            return Err(Error::InvalidSplit("no parts".into()));
        }
        if let Some(bad) = parts.iter().find(|&&x| !x.is_finite() || x < 0.0) {
            return Err(Error::InvalidSplit(format!("part {bad} is not a nonnegative number")));
        }
        let sum: f64 = parts.iter().sum();
        if (sum - total).abs() > 1e-12 * total.abs().max(1.0) {
            return Err(Error::InvalidSplit(format!(
                "parts sum to {sum}, expected total {total}"
            )));
        }
        Ok(PowerSplit { total, parts })
    }

    /// Equal share for each of `layers` layers.
    pub fn even(total: f64, layers: usize) -> PowerSplit {
        PowerSplit::new(total, vec![total / layers as f64; layers])
            .expect("even split is always valid")
    }

    pub fn total(&self) -> f64 {
        self.total
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn parts(&self) -> &[f64] {
        &self.parts
    }

    /// Power of layer `l` (1-based).
    pub fn part(&self, l: usize) -> f64 {
        self.parts[l - 1]
    }

    /// Power of all layers before `l`: the interference a layer-`l` decoder
    /// treats as extra noise.
    pub fn prefix(&self, l: usize) -> f64 {
        self.parts[..l - 1].iter().sum()
    }

    /// Power of all layers after `l`: the interference a layer-`l` encoder
    /// knows and can precode against.
    pub fn suffix_after(&self, l: usize) -> f64 {
        self.parts[l..].iter().sum()
    }
}

// ---------------------------------------------------------------------------
// Dirty-paper rates
// ---------------------------------------------------------------------------

/// One Gaussian layer as a decoder sees it: signal power, power of the
/// interference the encoder knew in advance, effective noise power (receiver
/// noise plus any layers treated as noise), and the precoding scale `alpha`
/// the encoder used (`u = alpha * s + x`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DpcLayer {
    pub signal_power: f64,
    pub interference_power: f64,
    pub noise_power: f64,
    pub alpha: f64,
}

impl DpcLayer {
    /// Achievable rate of the precoded layer when the decoder treats the
    /// known interference through the auxiliary `u = alpha*s + x`:
    ///
    /// ```text
    /// r = log[ px (px + q + n) / (px q (1-alpha)^2 + n (px + alpha^2 q)) ] / 2
    /// ```
    ///
    /// The denominator is the expanded determinant of cov(u, y), which avoids
    /// the cancellation the textbook determinant form suffers near the
    /// optimal alpha. A mistuned alpha can drive the expression negative; the
    /// encoder can always fall back to sending nothing, so the result is
    /// clamped at zero.
    pub fn dpc_rate(&self, base: LogBase) -> f64 {
        let DpcLayer { signal_power: px, interference_power: q, noise_power: n, alpha } = *self;
        assert!(px >= 0.0 && q >= 0.0 && n > 0.0, "invalid layer {self:?}");
        if px == 0.0 {
            return 0.0;
        }
        let num = px * (px + q + n);
        let den = px * q * (1.0 - alpha) * (1.0 - alpha) + n * (px + alpha * alpha * q);
        ((num / den).ln() / (2.0 * base.ln_base())).max(0.0)
    }

    /// Rate when the decoder itself knows the interfering codewords and
    /// subtracts them before decoding: the clean `cap(px / n)`, independent
    /// of how the encoder precoded.
    pub fn known_interference_rate(&self, base: LogBase) -> f64 {
        assert!(self.noise_power > 0.0, "invalid layer {self:?}");
        cap(self.signal_power / self.noise_power, base)
    }
}

// ---------------------------------------------------------------------------
// Layered transmission plans
// ---------------------------------------------------------------------------

/// How a receiver handles one layer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecodeMode {
    /// Decodes the layer relying on the encoder-side precoding; earlier
    /// layers are noise. Only the receiver the layer is tuned for sees the
    /// full interference-free rate.
    Direct,
    /// Decodes the layer after stripping all later layers (it decodes those
    /// too, or already holds their messages), so only earlier layers remain
    /// as noise.
    InterferenceKnown,
    /// Ignores the layer.
    NotDecoding,
}

/// One layer of a transmission plan.
#[derive(Clone, Copy, Debug)]
pub struct PlanLayer {
    /// The complete set whose message bundle this layer carries.
    pub target: ReceiverSet,
    /// Power share of the layer.
    pub power: f64,
    /// Dirty-paper scaling used by the encoder for this layer.
    pub alpha: f64,
    /// Receiver the precoding is tuned for: `alpha` is optimal for its
    /// effective noise (own noise plus all earlier layers).
    pub tuned_receiver: usize,
    /// Per-receiver decode modes, indexed by receiver label minus one.
    pub modes: [DecodeMode; 3],
}

/// A complete layered strategy for one configuration: one layer per maximum
/// complete set slot (a single layer when the whole set {1,2,3} is complete,
/// three layers otherwise, in which case consecutive layers may target the
/// same set).
#[derive(Clone, Debug)]
pub struct LayerPlan {
    layers: Vec<PlanLayer>,
}

impl LayerPlan {
    pub fn layers(&self) -> &[PlanLayer] {
        &self.layers
    }

    /// Layer `l`, 1-based.
    pub fn layer(&self, l: usize) -> &PlanLayer {
        &self.layers[l - 1]
    }

    pub fn num_layers(&self) -> usize {
        self.layers.len()
    }

    /// Total power of layers before `l`.
    pub fn prefix_power(&self, l: usize) -> f64 {
        self.layers[..l - 1].iter().map(|x| x.power).sum()
    }

    /// Total power of layers after `l`.
    pub fn suffix_power(&self, l: usize) -> f64 {
        self.layers[l..].iter().map(|x| x.power).sum()
    }
}

/// Number of layers a plan for this configuration uses: 1 when {1,2,3} is
/// complete, 3 otherwise.
pub fn plan_layer_count(a: &RoutingMatrix) -> usize {
    if maximum_complete_sets(a) == [ReceiverSet::ALL] {
        1
    } else {
        3
    }
}

/// Builds the layered strategy for a configuration.
///
/// The layer targets come from the per-receiver layer assignment; the tuned
/// receiver, precoding scales, and decode modes depend on the shape of the
/// maximum complete family:
///
/// - `{1,2,3}` complete: a single layer carries one bundle, no precoding,
///   every receiver decodes it directly against its own noise.
/// - two overlapping pairs: the shared receiver decodes all three layers
///   (stripping later ones); each layer is tuned for its non-shared member.
/// - a pair containing receiver 1 plus a singleton: receiver 1 decodes all
///   three layers; each pair layer is tuned for the weaker pair member, the
///   singleton layer for its owner.
/// - `{1}` plus the pair `{2,3}`: receiver 1 decodes only its own first
///   layer; receivers 2 and 3 both decode layers 2 and 3, tuned for
///   receiver 2.
/// - three singletons: classic successive precoding, layer `l` tuned for and
///   decoded by receiver `l` alone.
///
/// The split must carry exactly [`plan_layer_count`] parts summing to the
/// channel power.
pub fn build_layer_plan(a: &RoutingMatrix, ch: &Channel, split: &PowerSplit) -> Result<LayerPlan> {
    let want_layers = plan_layer_count(a);
    if split.len() != want_layers {
        return Err(Error::InvalidSplit(format!(
            "this configuration uses {want_layers} layer(s), split has {}",
            split.len()
        )));
    }
    if (split.total() - ch.p()).abs() > 1e-9 * ch.p().max(1.0) {
        return Err(Error::InvalidSplit(format!(
            "split total {} does not match channel power {}",
            split.total(),
            ch.p()
        )));
    }

    let fam = layer_assignment(a);
    use DecodeMode::{Direct, InterferenceKnown as Known, NotDecoding as Skip};

    // Tuned receiver and per-receiver modes for each of the three layers.
    let (tuned, modes): ([usize; 3], [[DecodeMode; 3]; 3]) = match fam.sets() {
        [v] if *v == ReceiverSet::ALL => {
            // Single bundle, no interference below or above: one layer, no
            // precoding needed. Tune for receiver 1 by convention.
            let layer = PlanLayer {
                target: ReceiverSet::ALL,
                power: split.part(1),
                alpha: 0.0,
                tuned_receiver: 1,
                modes: [Direct; 3],
            };
            return Ok(LayerPlan { layers: vec![layer] });
        }
        [v1, v2] if v1.len() == 2 && v2.len() == 2 => {
            let shared = v1.intersection(*v2).smallest().expect("pairs overlap");
            let mut tuned = [0usize; 3];
            let mut modes = [[Skip; 3]; 3];
            for l in 1..=3 {
                let k = fam.layer(l);
                tuned[l - 1] = k.iter().find(|&r| r != shared).expect("pair has a non-shared member");
                for r in 1..=3 {
                    modes[l - 1][r - 1] = if r == shared {
                        Known
                    } else if k.contains(r) {
                        Direct
                    } else {
                        Skip
                    };
                }
            }
            (tuned, modes)
        }
        [v1, v2] => {
            // One pair plus a singleton; the singleton's label determines
            // the whole shape.
            let single = if v1.len() == 1 { *v1 } else { *v2 };
            match single.smallest().unwrap() {
                // Pair {2,3}: receiver 1 keeps to itself on layer 1; 2 and 3
                // jointly handle layers 2 and 3, tuned for receiver 2.
                1 => (
                    [1, 2, 2],
                    [
                        [Direct, Skip, Skip],
                        [Skip, Known, Known],
                        [Skip, Known, Known],
                    ],
                ),
                // Pair {1,3}: layers 1 and 3 carry the pair bundle tuned for
                // receiver 3; receiver 1 strips later layers everywhere.
                2 => (
                    [3, 2, 3],
                    [
                        [Known, Skip, Direct],
                        [Known, Direct, Skip],
                        [Known, Skip, Direct],
                    ],
                ),
                // Pair {1,2}: layers 1 and 2 tuned for receiver 2; the
                // singleton {3} gets the last layer.
                3 => (
                    [2, 2, 3],
                    [
                        [Known, Direct, Skip],
                        [Known, Direct, Skip],
                        [Known, Skip, Direct],
                    ],
                ),
                _ => unreachable!(),
            }
        }
        [_, _, _] => (
            [1, 2, 3],
            [
                [Direct, Skip, Skip],
                [Skip, Direct, Skip],
                [Skip, Skip, Direct],
            ],
        ),
        other => unreachable!("impossible maximum complete family {other:?}"),
    };

    let mut layers = Vec::with_capacity(3);
    for l in 1..=3 {
        let t = tuned[l - 1];
        let p_l = split.part(l);
        let n_eff = ch.noise(t) + split.prefix(l);
        layers.push(PlanLayer {
            target: fam.layer(l),
            power: p_l,
            alpha: alpha_star(p_l, n_eff),
            tuned_receiver: t,
            modes: modes[l - 1],
        });
    }
    Ok(LayerPlan { layers })
}

/// Rate receiver `i` gets from layer `l` of a plan (both 1-based), given the
/// channel the plan was built for.
///
/// `Direct` uses the dirty-paper expression with the plan's alpha, so only
/// the tuned receiver sees the interference-free rate; `InterferenceKnown`
/// strips later layers and pays only for earlier ones. Asking about a layer
/// the receiver ignores is an error.
pub fn layer_receiver_rate(plan: &LayerPlan, l: usize, i: usize, ch: &Channel) -> Result<f64> {
    if !(1..=3).contains(&i) {
        return Err(Error::InvalidReceiver(i));
    }
    assert!(
        (1..=plan.num_layers()).contains(&l),
        "layer index {l} out of range"
    );
    let layer = plan.layer(l);
    let n_eff = ch.noise(i) + plan.prefix_power(l);
    match layer.modes[i - 1] {
        DecodeMode::Direct => {
            let dpc = DpcLayer {
                signal_power: layer.power,
                interference_power: plan.suffix_power(l),
                noise_power: n_eff,
                alpha: layer.alpha,
            };
            Ok(dpc.dpc_rate(ch.base()))
        }
        DecodeMode::InterferenceKnown => Ok(cap(layer.power / n_eff, ch.base())),
        DecodeMode::NotDecoding => Err(Error::NotAParticipant { receiver: i, layer: l }),
    }
}

// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    // Reference implementation straight from the mutual-information
    // definition: I(u;y) - I(u;s) with u = alpha*s + x via 2x2 covariance
    // determinants. Numerically worse than the expanded form near the
    // optimal alpha, but an independent derivation.
    fn dpc_rate_by_covariance(px: f64, q: f64, n: f64, alpha: f64, base: LogBase) -> f64 {
        let var_u = alpha * alpha * q + px;
        let var_y = px + q + n;
        let cov_uy = px + alpha * q;
        let det_uy = var_u * var_y - cov_uy * cov_uy;
        // I(u;s) reduces to log(var_u / px) / 2.
        let i_uy = (var_u * var_y / det_uy).ln() / 2.0;
        let i_us = (var_u / px).ln() / 2.0;
        ((i_uy - i_us) / base.ln_base()).max(0.0)
    }

    #[test]
    fn cap_values() {
        assert_eq!(cap(0.0, LogBase::Two), 0.0);
        assert!((cap(10.0, LogBase::Two) - 1.729716) < 1e-6);
        assert!((cap(3.0, LogBase::Two) - 1.0).abs() < 1e-12);
        // Nats and bits differ by ln 2.
        let x = 4.2;
        assert!((cap(x, LogBase::E) - cap(x, LogBase::Two) * std::f64::consts::LN_2).abs() < 1e-12);
    }

    #[test]
    fn channel_validation() {
        assert!(Channel::new(10.0, [0.2, 0.5, 1.0], LogBase::Two).is_ok());
        assert!(Channel::new(0.0, [0.2, 0.5, 1.0], LogBase::Two).is_err());
        assert!(Channel::new(10.0, [0.5, 0.2, 1.0], LogBase::Two).is_err());
        assert!(Channel::new(10.0, [0.2, 0.2, 1.0], LogBase::Two).is_err());
        assert!(Channel::new(10.0, [0.0, 0.5, 1.0], LogBase::Two).is_err());
        assert!(Channel::new(f64::NAN, [0.2, 0.5, 1.0], LogBase::Two).is_err());
    }

    #[test]
    fn power_split_accounting() {
        let s = PowerSplit::new(10.0, vec![2.0, 3.0, 5.0]).unwrap();
        assert_eq!(s.prefix(1), 0.0);
        assert_eq!(s.prefix(2), 2.0);
        assert_eq!(s.prefix(3), 5.0);
        assert_eq!(s.suffix_after(1), 8.0);
        assert_eq!(s.suffix_after(3), 0.0);
        for l in 1..=3 {
            assert!((s.prefix(l) + s.part(l) + s.suffix_after(l) - s.total()).abs() < 1e-12);
        }
        assert!(PowerSplit::new(10.0, vec![2.0, 3.0]).is_err());
        assert!(PowerSplit::new(10.0, vec![-1.0, 11.0]).is_err());
        assert_eq!(PowerSplit::even(9.0, 3).parts(), &[3.0, 3.0, 3.0]);
    }

    #[test]
    fn dpc_rate_worked_values() {
        // px=1, q=5, n=1 at the optimal alpha 1/2: the interference
        // disappears entirely.
        let layer = DpcLayer { signal_power: 1.0, interference_power: 5.0, noise_power: 1.0, alpha: 0.5 };
        assert!((layer.dpc_rate(LogBase::Two) - 0.5).abs() < 1e-12);
        // Same layer with no precoding: interference is just more noise.
        let layer = DpcLayer { alpha: 0.0, ..layer };
        assert!((layer.dpc_rate(LogBase::Two) - cap(1.0 / 6.0, LogBase::Two)).abs() < 1e-12);
        assert!((layer.dpc_rate(LogBase::Two) - 0.1112) < 1e-4);
    }

    #[test]
    fn dpc_rate_matches_covariance_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..100 {
            let px = rng.gen_range(0.1..10.0);
            let q = rng.gen_range(0.0..10.0);
            let n = rng.gen_range(0.1..5.0);
            let alpha = rng.gen_range(0.0..1.2);
            let layer = DpcLayer { signal_power: px, interference_power: q, noise_power: n, alpha };
            let got = layer.dpc_rate(LogBase::Two);
            let want = dpc_rate_by_covariance(px, q, n, alpha, LogBase::Two);
            assert!(
                (got - want).abs() <= 1e-9 * want.max(1.0),
                "px={px} q={q} n={n} alpha={alpha}: {got} vs {want}"
            );
        }
    }

    #[test]
    fn dpc_identities() {
        let mut rng = ChaCha8Rng::seed_from_u64(18);
        for _ in 0..100 {
            let px = rng.gen_range(0.1..10.0);
            let q = rng.gen_range(0.0..10.0);
            let n = rng.gen_range(0.1..5.0);
            // Tuned alpha removes the interference exactly.
            let tuned = DpcLayer {
                signal_power: px,
                interference_power: q,
                noise_power: n,
                alpha: alpha_star(px, n),
            };
            assert!((tuned.dpc_rate(LogBase::Two) - cap(px / n, LogBase::Two)).abs() < 1e-12);
            // Zero alpha folds the interference into the noise.
            let plain = DpcLayer { alpha: 0.0, ..tuned };
            assert!(
                (plain.dpc_rate(LogBase::Two) - cap(px / (q + n), LogBase::Two)).abs() < 1e-12
            );
            // Decoder-side knowledge beats any precoding scale.
            assert!((tuned.known_interference_rate(LogBase::Two) - cap(px / n, LogBase::Two)).abs() < 1e-15);
            // No interference: alpha is irrelevant.
            let clean = DpcLayer {
                signal_power: px,
                interference_power: 0.0,
                noise_power: n,
                alpha: rng.gen_range(-1.0..2.0),
            };
            assert!((clean.dpc_rate(LogBase::Two) - cap(px / n, LogBase::Two)).abs() < 1e-12);
        }
        // Zero signal sends nothing.
        let silent = DpcLayer { signal_power: 0.0, interference_power: 3.0, noise_power: 1.0, alpha: 0.4 };
        assert_eq!(silent.dpc_rate(LogBase::Two), 0.0);
    }

    proptest! {
        // The tuned scale is optimal: scanning alpha never beats it.
        #[test]
        fn tuned_alpha_dominates(
            px in 0.05f64..20.0,
            q in 0.0f64..20.0,
            n in 0.05f64..5.0,
            alpha in -0.5f64..2.0,
        ) {
            let at = |alpha| DpcLayer { signal_power: px, interference_power: q, noise_power: n, alpha }
                .dpc_rate(LogBase::Two);
            let best = at(alpha_star(px, n));
            prop_assert!(at(alpha) <= best + 1e-9);
            prop_assert!(at(alpha) >= 0.0);
        }
    }

    #[test]
    fn successive_rates_telescope() {
        // Splitting the power budget never changes a single receiver's total
        // when every layer is decoded against the same noise with later
        // layers stripped.
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        for _ in 0..50 {
            let n = rng.gen_range(0.1..3.0);
            let p = rng.gen_range(1.0..20.0);
            let a = rng.gen_range(0.0..1.0);
            let b = rng.gen_range(0.0..1.0 - a);
            let parts = [p * a, p * b, p * (1.0 - a - b)];
            let total: f64 = (0..3)
                .map(|l| {
                    let prefix: f64 = parts[..l].iter().sum();
                    cap(parts[l] / (n + prefix), LogBase::Two)
                })
                .sum();
            assert!(
                (total - cap(p / n, LogBase::Two)).abs() < 1e-12,
                "n={n} parts={parts:?}"
            );
        }
    }

    #[test]
    fn plan_shapes_by_family() {
        let ch = Channel::new(10.0, [0.2, 0.5, 1.0], LogBase::Two).unwrap();
        // Complete triple: one layer, everyone direct.
        let a = RoutingMatrix::new([[0, 0, 0], [1, 0, 0], [1, 1, 0]]).unwrap();
        assert_eq!(plan_layer_count(&a), 1);
        let plan = build_layer_plan(&a, &ch, &PowerSplit::new(10.0, vec![10.0]).unwrap()).unwrap();
        assert_eq!(plan.num_layers(), 1);
        assert_eq!(plan.layer(1).modes, [DecodeMode::Direct; 3]);
        assert_eq!(plan.layer(1).alpha, 0.0);
        // A three-part split is rejected for the single-layer family.
        assert!(build_layer_plan(&a, &ch, &PowerSplit::even(10.0, 3)).is_err());

        // No side information: successive precoding, one owner per layer.
        let a = RoutingMatrix::from_id(0).unwrap();
        let plan = build_layer_plan(&a, &ch, &PowerSplit::new(10.0, vec![2.0, 3.0, 5.0]).unwrap()).unwrap();
        for l in 1..=3 {
            assert_eq!(plan.layer(l).tuned_receiver, l);
            for r in 1..=3 {
                let want = if r == l { DecodeMode::Direct } else { DecodeMode::NotDecoding };
                assert_eq!(plan.layer(l).modes[r - 1], want);
            }
        }
    }

    #[test]
    fn plan_alphas_for_lone_bottom_pair() {
        // Only receiver 3 knows message 2: family {1}, {2,3}. Layers 2 and 3
        // are tuned for receiver 2, so their scales use its noise.
        let a = RoutingMatrix::new([[0, 0, 0], [0, 0, 0], [0, 1, 0]]).unwrap();
        let ch = Channel::new(10.0, [0.2, 0.5, 1.0], LogBase::Two).unwrap();
        let split = PowerSplit::new(10.0, vec![2.0, 3.0, 5.0]).unwrap();
        let plan = build_layer_plan(&a, &ch, &split).unwrap();
        assert_eq!(plan.layer(1).tuned_receiver, 1);
        assert_eq!(plan.layer(2).tuned_receiver, 2);
        assert_eq!(plan.layer(3).tuned_receiver, 2);
        assert!((plan.layer(1).alpha - 2.0 / (0.2 + 2.0)).abs() < 1e-15);
        assert!((plan.layer(2).alpha - 3.0 / (0.5 + 2.0 + 3.0)).abs() < 1e-15);
        assert!((plan.layer(3).alpha - 5.0 / (0.5 + 2.0 + 3.0 + 5.0)).abs() < 1e-15);
        assert_eq!(plan.layer(1).modes, [DecodeMode::Direct, DecodeMode::NotDecoding, DecodeMode::NotDecoding]);
        assert_eq!(plan.layer(2).modes, [DecodeMode::NotDecoding, DecodeMode::InterferenceKnown, DecodeMode::InterferenceKnown]);
    }

    #[test]
    fn tuned_receiver_sees_clean_rate_on_every_plan() {
        // The precoding scale is exactly optimal for the tuned receiver on
        // every layer of every configuration's plan.
        let ch = Channel::new(10.0, [0.2, 0.5, 1.0], LogBase::Two).unwrap();
        let splits = [
            vec![2.0, 3.0, 5.0],
            vec![10.0, 0.0, 0.0],
            vec![1.0, 1.0, 8.0],
        ];
        for id in 0u8..64 {
            let a = RoutingMatrix::from_id(id).unwrap();
            let parts: Vec<Vec<f64>> = if plan_layer_count(&a) == 1 {
                vec![vec![10.0]]
            } else {
                splits.to_vec()
            };
            for p in parts {
                let split = PowerSplit::new(10.0, p).unwrap();
                let plan = build_layer_plan(&a, &ch, &split).unwrap();
                for l in 1..=plan.num_layers() {
                    let layer = plan.layer(l);
                    let t = layer.tuned_receiver;
                    let clean = ch.cap(layer.power / (ch.noise(t) + plan.prefix_power(l)));
                    let dpc = DpcLayer {
                        signal_power: layer.power,
                        interference_power: plan.suffix_power(l),
                        noise_power: ch.noise(t) + plan.prefix_power(l),
                        alpha: layer.alpha,
                    };
                    assert!(
                        (dpc.dpc_rate(ch.base()) - clean).abs() < 1e-12,
                        "config {id} layer {l}"
                    );
                    // The tuned receiver actually decodes its layer.
                    assert_ne!(layer.modes[t - 1], DecodeMode::NotDecoding, "config {id} layer {l}");
                }
            }
        }
    }

    #[test]
    fn per_receiver_layer_rates() {
        let ch = Channel::new(10.0, [0.2, 0.5, 1.0], LogBase::Two).unwrap();
        // Receivers 2 and 3 both know message 1: pairs {1,2} and {1,3}.
        let a = RoutingMatrix::new([[0, 0, 0], [1, 0, 0], [1, 0, 0]]).unwrap();
        let split = PowerSplit::new(10.0, vec![2.0, 3.0, 5.0]).unwrap();
        let plan = build_layer_plan(&a, &ch, &split).unwrap();

        // The shared receiver 1 strips later layers on every layer; over all
        // three layers its rates telescope to the full single-user capacity.
        let total: f64 = (1..=3)
            .map(|l| layer_receiver_rate(&plan, l, 1, &ch).unwrap())
            .sum();
        assert!((total - ch.cap(10.0 / 0.2)).abs() < 1e-12);

        // Tuned receivers see their clean rates.
        let r2 = layer_receiver_rate(&plan, 1, 2, &ch).unwrap();
        assert!((r2 - ch.cap(2.0 / 0.5)).abs() < 1e-12);
        let r3 = layer_receiver_rate(&plan, 3, 3, &ch).unwrap();
        assert!((r3 - ch.cap(5.0 / (1.0 + 5.0))).abs() < 1e-12);

        // Receiver 3 ignores layer 1.
        assert!(matches!(
            layer_receiver_rate(&plan, 1, 3, &ch),
            Err(Error::NotAParticipant { receiver: 3, layer: 1 })
        ));
    }
}
