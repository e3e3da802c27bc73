//! Inner/outer boundary comparison along directions.
//!
//! Sweeping rays through the positive octant and measuring how far each
//! bound reaches along them turns two three-dimensional regions into one
//! comparable table. Two inner estimates are swept side by side: the best
//! split on a fixed simplex grid, and a split *tuned to the ray* so that
//! every receiver's bound binds at once — the grid alone under-reaches on
//! facets the full inner bound only attains by time sharing between splits,
//! while the tuned split recovers the stacked optimum exactly. On a provably
//! tight configuration the remaining gap collapses to bisection residue; on
//! an open configuration a genuine plateau survives every refinement.
//!
//!     cargo run --example frontier_sweep

use gbc3::config::tightness_classify;
use gbc3::inner::direct_region;
use gbc3::outer::outer_radial;
use gbc3::report::{directions, inner_radial_grid};
use gbc3::{Channel, LogBase, PowerSplit, RoutingMatrix, WeaknessScope, WeightVector};

/// Largest `t` with a *single* split carrying `t * d`, choosing the split
/// that exhausts the budget with every receiver's own bound binding: layer
/// `i` gets `p_i = (b^(2 t d_i) - 1) * (N_i + p_1 + .. + p_{i-1})`. Total
/// spend grows monotonically in `t`, so bisect on it; whatever power is
/// left over at the solution is poured into the last layer.
fn tuned_radial(a: &RoutingMatrix, ch: &Channel, d: &WeightVector) -> gbc3::Result<f64> {
    let snr = |rate: f64| (2.0 * rate * ch.base().ln_base()).exp_m1();
    let parts = |t: f64| -> [f64; 3] {
        let mut out = [0.0f64; 3];
        let mut prefix = 0.0;
        for i in 1..=3 {
            out[i - 1] = snr(t * d.weight(i)) * (ch.noise(i) + prefix);
            prefix += out[i - 1];
        }
        out
    };
    let total = |t: f64| parts(t).iter().sum::<f64>();
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while total(hi) < ch.p() {
        hi *= 2.0;
    }
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if total(mid) <= ch.p() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut ps = parts(lo);
    ps[2] += (ch.p() - ps.iter().sum::<f64>()).max(0.0);
    let split = PowerSplit::new(ch.p(), ps.to_vec())?;
    Ok(direct_region(a, ch, &split)?.radial_max(d))
}

fn sweep(id: u8, ch: &Channel, grid: usize, dirs: &[WeightVector]) -> gbc3::Result<f64> {
    let a = RoutingMatrix::from_id(id)?;
    println!(
        "configuration {} ({}, {}):",
        id,
        a.bit_string(),
        tightness_classify(&a).case
    );
    println!(
        "  {:<24} {:>9}  {:>9}  {:>9}  {:>10}",
        "direction", "grid t*", "tuned t*", "outer t*", "gap"
    );
    // One pass over the split grid covers every direction at once.
    let grid_t = inner_radial_grid(&a, ch, grid, dirs)?;
    let mut worst = 0.0f64;
    for (d, &grid_t) in dirs.iter().zip(&grid_t) {
        let tuned_t = tuned_radial(&a, ch, d)?;
        let outer_t = outer_radial(&a, ch, d, WeaknessScope::AllPredecessors);
        let gap = outer_t - grid_t.max(tuned_t);
        worst = worst.max(gap);
        let c = d.components();
        println!(
            "  ({:.3}, {:.3}, {:.3})    {grid_t:>9.6}  {tuned_t:>9.6}  {outer_t:>9.6}  {gap:>10.3e}",
            c[0], c[1], c[2]
        );
    }
    println!("  worst gap: {worst:.3e} bits");
    println!();
    Ok(worst)
}

fn main() -> gbc3::Result<()> {
    let ch = Channel::new(10.0, [0.2, 0.5, 1.0], LogBase::Two)?;
    let dirs = directions(12); // 12 octant rays plus the 3 axes
    let grid = 200;

    // Tight: three singletons, where the stacked chain meets the converse.
    let tight = sweep(0, &ch, grid, &dirs)?;
    // Open: the mutual pair {1,3}, where a real plateau separates the bounds.
    let open = sweep(18, &ch, grid, &dirs)?;

    println!(
        "summary: the tight configuration closes to {tight:.1e} bits, \
         the open one keeps a {open:.3}-bit plateau no refinement removes"
    );
    Ok(())
}
