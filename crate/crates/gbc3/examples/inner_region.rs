//! Subset-bound regions of the layered scheme.
//!
//! At a fixed three-way power split, the layered scheme achieves every rate
//! tuple satisfying a handful of subset sum bounds. This example builds that
//! region for configuration 18 — receivers 1 and 3 know each other's
//! messages — at two splits, prints the bounds and the vertices, and checks
//! one hallmark of the mutual pair: a single full-power layer lets receivers
//! 1 and 3 each reach their single-receiver capacity *simultaneously*.
//!
//!     cargo run --example inner_region

use gbc3::inner::direct_region;
use gbc3::{Channel, LogBase, PowerSplit, RateTuple, RoutingMatrix};

fn show(region: &gbc3::SubsetBoundRegion, split: &PowerSplit) -> gbc3::Result<()> {
    println!("split {:?}:", split.parts());
    for (set, bound) in region.rows() {
        println!("  sum over {set} of R_i <= {bound:.6}");
    }
    let vertices = region.vertices()?;
    println!("  {} vertices:", vertices.len());
    for v in &vertices {
        // `+ 0.0` keeps clamped coordinates from printing as -0.0000.
        println!(
            "    ({:.4}, {:.4}, {:.4})",
            v.rate(1) + 0.0,
            v.rate(2) + 0.0,
            v.rate(3) + 0.0
        );
    }
    println!();
    Ok(())
}

fn main() -> gbc3::Result<()> {
    let a = RoutingMatrix::from_id(18)?;
    let ch = Channel::new(10.0, [0.2, 0.5, 1.0], LogBase::Two)?;

    println!(
        "configuration {} (bits {}), P = {}, noises {:?}",
        a.id(),
        a.bit_string(),
        ch.p(),
        ch.noises()
    );
    println!();

    // All power in the first layer: the mutual pair {1,3} shares one index,
    // so each member decodes against only its own noise.
    let full = PowerSplit::new(10.0, vec![10.0, 0.0, 0.0])?;
    let region = direct_region(&a, &ch, &full)?;
    show(&region, &full)?;

    let corner = RateTuple([ch.cap(50.0), 0.0, ch.cap(10.0)]);
    println!(
        "  corner (cap(P/N1), 0, cap(P/N3)) = ({:.6}, 0, {:.6}): contained = {}",
        corner.rate(1),
        corner.rate(3),
        region.contains(corner, 1e-9)
    );
    println!();

    // A generic split trades the pair's rates against receiver 2's.
    let mixed = PowerSplit::new(10.0, vec![5.0, 4.0, 1.0])?;
    let region = direct_region(&a, &ch, &mixed)?;
    show(&region, &mixed)?;

    println!("the full inner bound is the convex hull of these regions over all splits");
    Ok(())
}
