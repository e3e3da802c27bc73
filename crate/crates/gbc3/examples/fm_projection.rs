//! Fourier–Motzkin elimination reproducing the region.
//!
//! The layered scheme's region at a fixed split can be written two ways:
//! directly, as subset bounds on `(R1, R2, R3)`, or as a larger linear
//! system over per-layer rate shares `x_i_l` whose projection onto the rate
//! coordinates must give the same polytope. This example builds the share
//! system, eliminates the shares, and confirms the projected region matches
//! the direct construction bound for bound and vertex for vertex.
//!
//!     cargo run --example fm_projection

use gbc3::inner::{direct_region, region_via_fm, split_rate_system};
use gbc3::{Channel, LogBase, PowerSplit, RoutingMatrix, WeightVector};

fn main() -> gbc3::Result<()> {
    let a = RoutingMatrix::from_id(22)?;
    let ch = Channel::new(10.0, [0.2, 0.5, 1.0], LogBase::Two)?;
    let split = PowerSplit::new(10.0, vec![5.0, 3.0, 2.0])?;

    println!(
        "configuration {} (bits {}), split {:?}",
        a.id(),
        a.bit_string(),
        split.parts()
    );
    println!();

    let sys = split_rate_system(&a, &ch, &split)?;
    println!(
        "share system: {} variables ({}), {} inequality rows",
        sys.vars().len(),
        sys.vars().join(" "),
        sys.rows().len()
    );

    let projected = region_via_fm(&a, &ch, &split)?;
    let direct = direct_region(&a, &ch, &split)?;

    // The two row lists need not match entry for entry — either side may
    // leave a bound implicit when tighter rows already enforce it — so
    // compare what matters: the largest subset sum each polytope allows.
    println!();
    println!("effective subset bounds (max of the subset sum over each polytope):");
    let mut worst = 0.0f64;
    for set in gbc3::ReceiverSet::all_nonempty() {
        let mut indicator = [0.0; 3];
        for i in set.iter() {
            indicator[i - 1] = 1.0;
        }
        let mu = WeightVector::new(indicator)?;
        let (b_direct, _) = direct.support(&mu)?;
        let (b_fm, _) = projected.support(&mu)?;
        worst = worst.max((b_direct - b_fm).abs());
        println!("  {set}: direct {b_direct:.9}  projected {b_fm:.9}");
    }
    println!("  largest discrepancy: {worst:.3e}");

    // Same support function in arbitrary directions, i.e. the same polytope.
    println!();
    println!("support cross-check:");
    for w in [[1.0, 1.0, 1.0], [2.0, 0.5, 1.0], [0.1, 1.0, 3.0]] {
        let mu = WeightVector::new(w)?;
        let (s_direct, _) = direct.support(&mu)?;
        let (s_fm, _) = projected.support(&mu)?;
        println!(
            "  mu = {w:?}: direct {s_direct:.9}  projected {s_fm:.9}  (|diff| {:.3e})",
            (s_direct - s_fm).abs()
        );
    }
    Ok(())
}
