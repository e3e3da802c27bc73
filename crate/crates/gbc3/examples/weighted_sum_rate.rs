//! The exact weighted-sum-rate optimizer.
//!
//! Maximizing `mu . R` over every layered scheme and power split reduces to
//! a pointwise contest between marginal-utility curves, one per complete
//! receiver set: whichever curve is highest at cumulative power `z` owns
//! that stretch of power. This example prints the curves, the winning
//! schedule, and the optimum for configuration 18, then cross-checks the
//! exact answer against a brute-force scan over a simplex grid of splits.
//!
//!     cargo run --example weighted_sum_rate

use gbc3::inner::{direct_region, max_weighted_sum_utility, simplex_splits, utility_curves};
use gbc3::{Channel, LogBase, RoutingMatrix, WeightVector};

fn main() -> gbc3::Result<()> {
    let a = RoutingMatrix::from_id(18)?;
    let ch = Channel::new(10.0, [0.2, 0.5, 1.0], LogBase::Two)?;
    let mu = WeightVector::new([0.7, 2.0, 1.0])?;

    println!(
        "configuration {}, weights {:?}",
        a.id(),
        mu.components()
    );
    println!();

    println!("marginal-utility curves (coefficient on 1/(N_i + z) per receiver):");
    for curve in utility_curves(&a, &mu) {
        println!("  set {}: coeffs {:?}", curve.set, curve.coeffs);
    }
    println!();

    let sol = max_weighted_sum_utility(&a, &ch, &mu)?;
    println!("optimal schedule (cumulative power intervals):");
    for seg in &sol.segments {
        println!(
            "  z in [{:.4}, {:.4}]  ({:.4} power) -> set {}",
            seg.z_lo,
            seg.z_hi,
            seg.power(),
            seg.set
        );
    }
    println!();
    println!(
        "J* = {:.9} at rates ({:.6}, {:.6}, {:.6})",
        sol.j_star,
        sol.rates.rate(1),
        sol.rates.rate(2),
        sol.rates.rate(3)
    );
    println!();

    // Brute force: best support over a grid of three-way splits. The grid
    // can only undershoot the exact optimum.
    let grid = 200;
    let mut best = 0.0f64;
    for split in simplex_splits(ch.p(), grid) {
        let (value, _) = direct_region(&a, &ch, &split)?.support(&mu)?;
        best = best.max(value);
    }
    println!("grid scan over {grid}-step splits: {best:.9}");
    println!(
        "exact beats grid by {:.3e} (grid converges from below as it refines)",
        sol.j_star - best
    );
    Ok(())
}
