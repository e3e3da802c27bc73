//! Converse (outer-bound) rate regions.
//!
//! Every degraded sequence — an ordered chain of disjoint acyclic groups,
//! each weaker than the groups before it — yields a necessary condition on
//! achievable rates: some power split must carry each group's sum rate over
//! the strongest noise in that group, with all earlier groups' power acting
//! as interference. The outer region is the set of rate tuples that survive
//! this test for *every* sequence.
//!
//! Because later groups pay for earlier groups' power, the split that serves
//! a chain with the least total power is greedy: give each group exactly the
//! power its sum rate demands on top of what has already been spent. That
//! makes membership a closed-form check ([`minimal_power_for_sequence`]
//! against the budget) rather than a search over splits.
//!
//! [`sequence_region`] exposes the region a single chain carves out at one
//! fixed split; [`outer_radial`] and [`outer_frontier`] trace the boundary of
//! the full outer region along given directions.

use crate::config::{degraded_sequences, DegradedSequence, RoutingMatrix, WeaknessScope};
use crate::error::{Error, Result};
use crate::gaussian::{Channel, PowerSplit};
use crate::geometry::{RateTuple, SubsetBoundRegion, WeightVector};

// ---------------------------------------------------------------------------
// Minimal power for a chain
// ---------------------------------------------------------------------------

/// SNR that a sum rate demands per unit of effective noise: `b^(2r) - 1`.
fn snr_for_rate(rate: f64, ch: &Channel) -> f64 {
    (2.0 * rate * ch.base().ln_base()).exp_m1()
}

/// Sum of `r` over the members of `group`, with negative entries treated as
/// zero (a negative rate demands no power).
fn group_rate(group: crate::config::ReceiverSet, r: RateTuple) -> f64 {
    group.iter().map(|k| r.rate(k).max(0.0)).sum()
}

/// Strongest (smallest) noise among the members of `group`.
fn group_noise_floor(group: crate::config::ReceiverSet, ch: &Channel) -> f64 {
    group
        .iter()
        .map(|i| ch.noise(i))
        .fold(f64::INFINITY, f64::min)
}

/// Least power each group of `seq` needs to carry `r`, in chain order.
///
/// Group `j` must push its sum rate past its strongest member's noise plus
/// everything spent on earlier groups, so its minimal power is
///
/// ```text
/// P_j = (b^(2 * sum_{k in D_j} r_k) - 1) * (min_{i in D_j} N_i + P_1 + .. + P_{j-1})
/// ```
///
/// Spending more than `P_j` on an early group only inflates every later
/// group's effective noise, so the greedy assignment is the cheapest split
/// overall; the test suite checks this against deliberate overshoots.
pub fn minimal_powers_for_sequence(
    seq: &DegradedSequence,
    ch: &Channel,
    r: RateTuple,
) -> Vec<f64> {
    let mut powers = Vec::with_capacity(seq.len());
    let mut spent = 0.0;
    for &group in seq.groups() {
        let need = snr_for_rate(group_rate(group, r), ch) * (group_noise_floor(group, ch) + spent);
        powers.push(need);
        spent += need;
    }
    powers
}

/// Total of [`minimal_powers_for_sequence`]: the least power budget under
/// which the chain `seq` can carry `r` at all.
pub fn minimal_power_for_sequence(seq: &DegradedSequence, ch: &Channel, r: RateTuple) -> f64 {
    minimal_powers_for_sequence(seq, ch, r).iter().sum()
}

// ---------------------------------------------------------------------------
// Membership and boundary tracing
// ---------------------------------------------------------------------------

/// Whether `r` lies inside the outer bound for configuration `a`: every
/// degraded sequence under `scope` must be able to carry `r` within the power
/// budget, with `tol` of absolute slack on that budget.
///
/// This is a *necessary* condition for achievability — the outer region is a
/// superset of the capacity region — so a `false` certifies `r` unachievable
/// while a `true` certifies nothing on its own. Rates below `-tol` or
/// non-finite rates are rejected outright.
pub fn is_achievable_outer(
    a: &RoutingMatrix,
    ch: &Channel,
    r: RateTuple,
    tol: f64,
    scope: WeaknessScope,
) -> bool {
    if !(1..=3).all(|k| r.rate(k).is_finite() && r.rate(k) >= -tol) {
        return false;
    }
    clears_every_chain(&degraded_sequences(a, scope), ch, r, tol)
}

/// Membership check against a pre-enumerated sequence list, so boundary
/// searches do not re-enumerate chains at every probe.
fn clears_every_chain(seqs: &[DegradedSequence], ch: &Channel, r: RateTuple, tol: f64) -> bool {
    seqs.iter()
        .all(|seq| minimal_power_for_sequence(seq, ch, r) <= ch.p() + tol)
}

/// Largest `t` such that `t * dir` stays inside the outer bound, to an
/// absolute accuracy of `1e-9` in `t`.
///
/// Minimal power is strictly increasing in every positive rate, so
/// membership along a ray is monotone and bisection applies. Every label is
/// a singleton chain, which caps any direction with a positive component;
/// the initial doubling therefore always brackets the boundary.
pub fn outer_radial(
    a: &RoutingMatrix,
    ch: &Channel,
    dir: &WeightVector,
    scope: WeaknessScope,
) -> f64 {
    outer_radial_to(a, ch, dir, scope, 1e-9)
}

/// [`outer_radial`] with a caller-chosen bisection width `eps`. Reports that
/// compare the result against exactly-computed achievable points tighten
/// `eps` so the bisection residue stays below their own tolerance.
pub fn outer_radial_to(
    a: &RoutingMatrix,
    ch: &Channel,
    dir: &WeightVector,
    scope: WeaknessScope,
    eps: f64,
) -> f64 {
    assert!(eps > 0.0, "bisection width must be positive");
    let seqs = degraded_sequences(a, scope);
    let ray = RateTuple(dir.components());
    let inside = |t: f64| clears_every_chain(&seqs, ch, ray.scale(t), 0.0);
    let mut lo = 0.0;
    let mut hi = 1.0;
    while inside(hi) {
        lo = hi;
        hi *= 2.0;
        assert!(
            hi < 1e15,
            "failed to bracket the outer boundary along {:?}",
            dir.components()
        );
    }
    while hi - lo > eps {
        let mid = 0.5 * (lo + hi);
        if inside(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Boundary points of the outer bound along each direction in `dirs`.
pub fn outer_frontier(
    a: &RoutingMatrix,
    ch: &Channel,
    dirs: &[WeightVector],
    scope: WeaknessScope,
) -> Vec<RateTuple> {
    dirs.iter()
        .map(|d| RateTuple(d.components()).scale(outer_radial(a, ch, d, scope)))
        .collect()
}

// ---------------------------------------------------------------------------
// Region of a single chain at a fixed split
// ---------------------------------------------------------------------------

/// Rate region the chain `seq` permits when group `j` is granted
/// `split.part(j)` of the power: for each group,
///
/// ```text
/// sum_{k in D_j} R_k <= cap( P_j / (min_{i in D_j} N_i + P_1 + .. + P_{j-1}) )
/// ```
///
/// Receivers outside the chain are unconstrained — the chain says nothing
/// about them. The full outer bound is the intersection over all chains of
/// the union over all splits, which is what [`is_achievable_outer`] decides
/// pointwise via minimal powers.
pub fn sequence_region(
    seq: &DegradedSequence,
    ch: &Channel,
    split: &PowerSplit,
) -> Result<SubsetBoundRegion> {
    if split.len() != seq.len() {
        return Err(Error::InvalidSplit(format!(
            "{} groups but {} split parts",
            seq.len(),
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
    let mut region = SubsetBoundRegion::new();
    for (idx, &group) in seq.groups().iter().enumerate() {
        let j = idx + 1;
        let snr = split.part(j) / (group_noise_floor(group, ch) + split.prefix(j));
        region.tighten(group, ch.cap(snr));
    }
    Ok(region)
}
