//! Tightness classification of all 64 configurations.
//!
//! Every configuration falls into one of four families whose inner and outer
//! bounds provably coincide — complete triple, linked pairs, pair plus
//! singleton, three singletons — or stays open. This example classifies all
//! 64, prints the verdict grid, and tallies the census: 46 tight, 18 open.
//!
//!     cargo run --example census

use std::collections::BTreeMap;

use gbc3::config::{tightness_classify, TightnessCase};
use gbc3::RoutingMatrix;

/// One-letter tag for the verdict grid.
fn tag(case: TightnessCase) -> char {
    match case {
        TightnessCase::CompleteTriple => 'T',
        TightnessCase::LinkedPairs => 'L',
        TightnessCase::PairAndSingleton => 'P',
        TightnessCase::ThreeSingletons => 'S',
        TightnessCase::Open => '.',
    }
}

fn main() -> gbc3::Result<()> {
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    let mut open = Vec::new();
    let mut grid = Vec::new();

    for id in 0..64u8 {
        let a = RoutingMatrix::from_id(id)?;
        let verdict = tightness_classify(&a);
        *counts.entry(verdict.case.to_string()).or_default() += 1;
        if !verdict.is_tight() {
            open.push(id);
        }
        grid.push(tag(verdict.case));
    }

    println!("verdicts by id (rows of 16; T=triple L=linked P=pair+singleton S=singletons .=open):");
    for row in 0..4 {
        let lo = row * 16;
        let line: String = grid[lo..lo + 16].iter().collect();
        println!("  {lo:>2}..{:<2}  {line}", lo + 15);
    }

    println!();
    println!("census:");
    let tight: usize = counts
        .iter()
        .filter(|(case, _)| case.as_str() != "open")
        .map(|(_, n)| n)
        .sum();
    for (case, n) in &counts {
        println!("  {case:<20} {n:>2}");
    }
    println!("  {:<20} {tight:>2} of 64", "tight total");

    println!();
    let labels: Vec<String> = open.iter().map(|id| id.to_string()).collect();
    println!("open configurations: {}", labels.join(" "));
    Ok(())
}
