//! Deterministic reporting: direction sampling, classification documents,
//! frontier-sweep tables, the all-configuration summary, and the self-check
//! suites behind the `verify` command.
//!
//! Everything here is reproducible byte for byte: direction sampling is a
//! closed-form Fibonacci lattice, randomized suites take an explicit seed,
//! and numbers are printed through [`fmt_sig`] with a fixed 12 significant
//! digits and a `.` decimal separator.

use crate::config::{
    acyclic_family, degraded_sequences, layer_assignment, maximum_complete_sets,
    tightness_classify, ReceiverSet, RoutingMatrix, TightnessVerdict, WeaknessScope,
};
use crate::error::Result;
use crate::gaussian::{Channel, PowerSplit};
use crate::index_coding::{IndexCase, MessageSpace};
use crate::inner::{direct_region, max_weighted_sum_utility, region_via_fm, simplex_splits};
use crate::outer::{is_achievable_outer, outer_radial_to};
use crate::geometry::{RateTuple, WeightVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

// ---------------------------------------------------------------------------
// Number and set formatting
// ---------------------------------------------------------------------------

/// Formats `x` to 12 significant digits: positional notation over the
/// everyday exponent range, scientific outside it, `.` decimal everywhere.
/// Pure function of the bits of `x`, so repeated runs emit identical bytes.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let exp = x.abs().log10().floor() as i32;
    if !(-9..=15).contains(&exp) {
        return format!("{x:.11e}");
    }
    let decimals = (11 - exp).max(0) as usize;
    format!("{x:.decimals$}")
}

/// Compact comma-free label for a receiver set: `{1,3}` prints as `13`.
fn set_label(v: ReceiverSet) -> String {
    v.iter().map(|i| i.to_string()).collect()
}

/// Comma-free label for a family of sets: `13|2`.
fn family_label(sets: &[ReceiverSet]) -> String {
    sets.iter()
        .map(|&v| set_label(v))
        .collect::<Vec<_>>()
        .join("|")
}

// ---------------------------------------------------------------------------
// Direction sampling
// ---------------------------------------------------------------------------

/// `n` unit directions spread over the nonnegative octant by a Fibonacci
/// lattice (uniform in `cos θ`, golden-ratio steps in azimuth), followed by
/// the three axes. Deterministic: no randomness enters.
pub fn directions(n: usize) -> Vec<WeightVector> {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut out = Vec::with_capacity(n + 3);
    for k in 0..n {
        let cos_theta = (k as f64 + 0.5) / n as f64;
        let sin_theta = (1.0 - cos_theta * cos_theta).sqrt();
        let phi = (k as f64 * inv_phi).fract() * std::f64::consts::FRAC_PI_2;
        out.push(
            WeightVector::new([sin_theta * phi.cos(), sin_theta * phi.sin(), cos_theta])
                .expect("octant lattice directions are valid weights"),
        );
    }
    for axis in 0..3 {
        let mut e = [0.0; 3];
        e[axis] = 1.0;
        out.push(WeightVector::new(e).expect("axes are valid weights"));
    }
    out
}

// ---------------------------------------------------------------------------
// Classification document
// ---------------------------------------------------------------------------

/// Everything the combinatorial layer knows about one configuration, in a
/// schema-stable shape (field order below is the JSON order). Receiver sets
/// serialize as sorted label arrays.
#[derive(Clone, Debug, Serialize)]
pub struct ClassifyDocument {
    /// Configuration id, 0..=63.
    pub config: u8,
    /// The six side-information bits, least significant first.
    pub bits: String,
    /// Which weaker-set reading produced the degraded sequences.
    pub weakness_scope: &'static str,
    /// All acyclic receiver sets, including the empty set.
    pub acyclic_sets: Vec<ReceiverSet>,
    /// The maximum complete family (ordered by smallest, then largest member).
    pub maximum_complete_sets: Vec<ReceiverSet>,
    /// The complete set carrying each of the three layers.
    pub layer_map: [ReceiverSet; 3],
    /// Every degraded sequence, each a chain of receiver groups.
    pub degraded_sequences: Vec<Vec<ReceiverSet>>,
    /// Structural tightness verdict.
    pub tightness: TightnessVerdict,
}

// Spelled exactly like the CLI's --weakness values so a document can be
// reproduced by feeding the label back in.
fn scope_label(scope: WeaknessScope) -> &'static str {
    match scope {
        WeaknessScope::AllPredecessors => "all-predecessors",
        WeaknessScope::ImmediatePredecessor => "immediate-predecessor",
    }
}

/// Builds the classification document for one configuration.
pub fn classify_document(a: &RoutingMatrix, scope: WeaknessScope) -> ClassifyDocument {
    let fam = layer_assignment(a);
    ClassifyDocument {
        config: a.id(),
        bits: a.bit_string(),
        weakness_scope: scope_label(scope),
        acyclic_sets: acyclic_family(a),
        maximum_complete_sets: maximum_complete_sets(a),
        layer_map: [fam.layer(1), fam.layer(2), fam.layer(3)],
        degraded_sequences: degraded_sequences(a, scope)
            .iter()
            .map(|s| s.groups().to_vec())
            .collect(),
        tightness: tightness_classify(a),
    }
}

// ---------------------------------------------------------------------------
// Frontier sweeps
// ---------------------------------------------------------------------------

/// One frontier-sweep row: the direction, the best achievable point and
/// weighted sum for it, the outer-bound radial coordinate, and the radial
/// gap against the grid inner bound.
#[derive(Clone, Debug)]
pub struct BoundsRow {
    pub mu: [f64; 3],
    pub inner_rates: RateTuple,
    pub inner_j: f64,
    pub inner_t: f64,
    pub outer_t: f64,
    pub gap: f64,
}

/// Largest radial coordinate along each direction over all grid splits of
/// the layered scheme: an inner approximation of the achievable boundary
/// that only improves as `grid` is refined (coarser grids are subsets).
pub fn inner_radial_grid(
    a: &RoutingMatrix,
    ch: &Channel,
    grid: usize,
    dirs: &[WeightVector],
) -> Result<Vec<f64>> {
    let mut best = vec![0.0f64; dirs.len()];
    for split in simplex_splits(ch.p(), grid) {
        let region = direct_region(a, ch, &split)?;
        for (slot, dir) in best.iter_mut().zip(dirs) {
            *slot = slot.max(region.radial_max(dir));
        }
    }
    Ok(best)
}

/// Frontier sweep for one configuration: for each direction, the exact
/// weighted-sum optimum of the layered scheme, the grid inner radial, and
/// the outer radial. `gap = outer_t - inner_t` measures how far the two
/// bounds are apart along the ray; it cannot be meaningfully negative.
pub fn bounds_rows(
    a: &RoutingMatrix,
    ch: &Channel,
    grid: usize,
    dirs: &[WeightVector],
    scope: WeaknessScope,
) -> Result<Vec<BoundsRow>> {
    let inner_t = inner_radial_grid(a, ch, grid, dirs)?;
    let mut rows = Vec::with_capacity(dirs.len());
    for (dir, &inner_t) in dirs.iter().zip(&inner_t) {
        let sol = max_weighted_sum_utility(a, ch, dir)?;
        let outer_t = outer_radial_to(a, ch, dir, scope, 1e-12);
        rows.push(BoundsRow {
            mu: dir.components(),
            inner_rates: sol.rates,
            inner_j: sol.j_star,
            inner_t,
            outer_t,
            gap: outer_t - inner_t,
        });
    }
    Ok(rows)
}

/// CSV for [`bounds_rows`]: one row per direction, stable column order.
pub fn bounds_csv(rows: &[BoundsRow]) -> String {
    let mut out = String::from("mu1,mu2,mu3,inner_R1,inner_R2,inner_R3,inner_J,outer_t,gap\n");
    for row in rows {
        let fields = [
            row.mu[0],
            row.mu[1],
            row.mu[2],
            row.inner_rates.rate(1),
            row.inner_rates.rate(2),
            row.inner_rates.rate(3),
            row.inner_j,
            row.outer_t,
            row.gap,
        ];
        let line: Vec<String> = fields.iter().map(|&x| fmt_sig(x)).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

/// One direction of a single-bound sweep: the direction and its radial
/// boundary coordinate.
#[derive(Clone, Debug)]
pub struct SweepRow {
    pub mu: [f64; 3],
    pub t: f64,
}

/// Grid inner radial per direction, as sweep rows.
pub fn inner_sweep(
    a: &RoutingMatrix,
    ch: &Channel,
    grid: usize,
    dirs: &[WeightVector],
) -> Result<Vec<SweepRow>> {
    Ok(inner_radial_grid(a, ch, grid, dirs)?
        .into_iter()
        .zip(dirs)
        .map(|(t, dir)| SweepRow { mu: dir.components(), t })
        .collect())
}

/// Outer radial per direction, as sweep rows.
pub fn outer_sweep(
    a: &RoutingMatrix,
    ch: &Channel,
    dirs: &[WeightVector],
    scope: WeaknessScope,
) -> Vec<SweepRow> {
    dirs.iter()
        .map(|dir| SweepRow {
            mu: dir.components(),
            t: outer_radial_to(a, ch, dir, scope, 1e-12),
        })
        .collect()
}

/// CSV for sweep rows; `column` names the radial column (`inner_t`/`outer_t`).
pub fn sweep_csv(rows: &[SweepRow], column: &str) -> String {
    let mut out = format!("mu1,mu2,mu3,{column}\n");
    for row in rows {
        let fields = [row.mu[0], row.mu[1], row.mu[2], row.t];
        let line: Vec<String> = fields.iter().map(|&x| fmt_sig(x)).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

// ---------------------------------------------------------------------------
// All-configuration report
// ---------------------------------------------------------------------------

/// Summary row for one configuration: sum-capacity estimates under the
/// reference weight (1,1,1) and the worst radial gap over the sampled
/// directions.
#[derive(Clone, Debug)]
pub struct ReportRow {
    pub config: u8,
    pub bits: String,
    pub k_family: Vec<ReceiverSet>,
    pub tightness: TightnessVerdict,
    pub inner_sum: f64,
    pub outer_sum: f64,
    pub max_gap: f64,
}

/// Builds the 64-row report. `inner_sum` is the exact best achievable sum
/// rate; `outer_sum` scales the achieving point out to the outer boundary
/// along its own ray, so `inner_sum <= outer_sum` always.
pub fn report_all_rows(
    ch: &Channel,
    grid: usize,
    dirs: &[WeightVector],
    scope: WeaknessScope,
) -> Result<Vec<ReportRow>> {
    let mut rows = Vec::with_capacity(64);
    for id in 0..64u8 {
        let a = RoutingMatrix::from_id(id).expect("ids 0..=63 are valid");
        let reference = WeightVector::new([1.0, 1.0, 1.0]).expect("reference weight");
        let sol = max_weighted_sum_utility(&a, ch, &reference)?;
        let ray = WeightVector::new(sol.rates.0).expect("optimizer rates are a valid direction");
        let scale = outer_radial_to(&a, ch, &ray, scope, 1e-12);
        let mut max_gap = 0.0f64;
        let inner_t = inner_radial_grid(&a, ch, grid, dirs)?;
        for (dir, &inner_t) in dirs.iter().zip(&inner_t) {
            max_gap = max_gap.max(outer_radial_to(&a, ch, dir, scope, 1e-12) - inner_t);
        }
        rows.push(ReportRow {
            config: id,
            bits: a.bit_string(),
            k_family: maximum_complete_sets(&a),
            tightness: tightness_classify(&a),
            inner_sum: sol.j_star,
            outer_sum: scale * sol.j_star,
            max_gap,
        });
    }
    Ok(rows)
}

/// CSV for [`report_all_rows`], one row per configuration id.
pub fn report_all_csv(rows: &[ReportRow]) -> String {
    let mut out = String::from("config,bits,k_family,tightness,inner_sum,outer_sum,max_gap\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            row.config,
            row.bits,
            family_label(&row.k_family),
            row.tightness.case,
            fmt_sig(row.inner_sum),
            fmt_sig(row.outer_sum),
            fmt_sig(row.max_gap),
        ));
    }
    out
}

// ---------------------------------------------------------------------------
// Verification suites
// ---------------------------------------------------------------------------

/// Outcome of one self-check suite.
#[derive(Clone, Debug)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl SuiteResult {
    fn new(name: &'static str, passed: bool, detail: String) -> SuiteResult {
        SuiteResult { name, passed, detail }
    }
}

fn random_split(rng: &mut ChaCha8Rng, total: f64) -> PowerSplit {
    let raw = [
        rng.gen_range(0.0..1.0f64),
        rng.gen_range(0.0..1.0f64),
        rng.gen_range(0.0..1.0f64),
    ];
    let sum: f64 = raw.iter().sum::<f64>().max(1e-9);
    PowerSplit::new(total, raw.iter().map(|x| x / sum * total).collect())
        .expect("normalized split is valid")
}

fn census_suite() -> SuiteResult {
    let mut counts = std::collections::BTreeMap::new();
    for id in 0..64u8 {
        let verdict = tightness_classify(&RoutingMatrix::from_id(id).unwrap());
        *counts.entry(verdict.case.to_string()).or_insert(0usize) += 1;
    }
    let non_open: usize = counts
        .iter()
        .filter(|(case, _)| case.as_str() != "open")
        .map(|(_, n)| n)
        .sum();
    let expected = [
        ("complete_triple", 8),
        ("linked_pairs", 14),
        ("pair_and_singleton", 16),
        ("three_singletons", 8),
        ("open", 18),
    ];
    let passed = non_open == 46
        && expected
            .iter()
            .all(|(case, n)| counts.get(*case).copied().unwrap_or(0) == *n);
    let detail = format!(
        "{non_open}/64 structurally tight ({})",
        counts
            .iter()
            .map(|(case, n)| format!("{n} {case}"))
            .collect::<Vec<_>>()
            .join(", ")
    );
    SuiteResult::new("tightness-census", passed, detail)
}

fn fm_suite(ch: &Channel, seed: u64) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = 0usize;
    let mut failures = 0usize;
    for id in 0..64u8 {
        let a = RoutingMatrix::from_id(id).unwrap();
        for _ in 0..2 {
            let split = random_split(&mut rng, ch.p());
            let direct = direct_region(&a, ch, &split).unwrap();
            let projected = match region_via_fm(&a, ch, &split) {
                Ok(r) => r,
                Err(_) => {
                    failures += 1;
                    continue;
                }
            };
            for _ in 0..20 {
                let w = WeightVector::new([
                    rng.gen_range(0.01..1.0),
                    rng.gen_range(0.01..1.0),
                    rng.gen_range(0.01..1.0),
                ])
                .unwrap();
                let (s1, _) = direct.support(&w).unwrap();
                let (s2, _) = projected.support(&w).unwrap();
                checks += 1;
                if (s1 - s2).abs() > 1e-9 * s1.abs().max(1.0) {
                    failures += 1;
                }
            }
        }
    }
    SuiteResult::new(
        "fm-vs-direct",
        failures == 0,
        format!("{checks} support comparisons, {failures} failures"),
    )
}

fn utility_suite(ch: &Channel, seed: u64) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
    let grid = 60;
    let splits = simplex_splits(ch.p(), grid);
    let mut failures = 0usize;
    let mut cases = 0usize;
    for _ in 0..10 {
        let a = RoutingMatrix::from_id(rng.gen_range(0..64)).unwrap();
        let mu = WeightVector::new([
            rng.gen_range(0.1..1.0),
            rng.gen_range(0.1..1.0),
            rng.gen_range(0.1..1.0),
        ])
        .unwrap();
        let j_star = max_weighted_sum_utility(&a, ch, &mu).unwrap().j_star;
        let mut grid_j = 0.0f64;
        for split in &splits {
            let region = direct_region(&a, ch, split).unwrap();
            grid_j = grid_j.max(region.support(&mu).unwrap().0);
        }
        cases += 1;
        if grid_j > j_star + 1e-9 || j_star - grid_j > 2e-2 * j_star {
            failures += 1;
        }
    }
    SuiteResult::new(
        "utility-vs-grid",
        failures == 0,
        format!("{cases} optimizer cases at grid {grid}, {failures} failures"),
    )
}

fn inner_outer_suite(ch: &Channel, scope: WeaknessScope) -> SuiteResult {
    let dirs = directions(16);
    let mut checks = 0usize;
    let mut failures = 0usize;
    for id in 0..64u8 {
        let a = RoutingMatrix::from_id(id).unwrap();
        for dir in &dirs {
            let rates = max_weighted_sum_utility(&a, ch, dir).unwrap().rates;
            checks += 1;
            if !is_achievable_outer(&a, ch, rates, 1e-9, scope) {
                failures += 1;
            }
        }
    }
    SuiteResult::new(
        "inner-outer",
        failures == 0,
        format!("{checks} frontier points checked against the converse, {failures} escapes"),
    )
}

fn index_suite() -> SuiteResult {
    let mut checks = 0usize;
    let mut failures = 0usize;
    let sizes = [1u64, 2, 4];
    for (first, second) in [(1usize, 2usize), (1, 3), (2, 3)] {
        let outsider = 6 - first - second;
        for &l1 in &sizes {
            for &l2 in &sizes {
                for &l3 in &sizes {
                    let case = IndexCase::MutualPair { first, second };
                    let space = MessageSpace::new([l1, l2, l3], case).unwrap();
                    let count = space.subcodebook_count();
                    let mut seen = vec![false; count as usize];
                    for w1 in 0..l1 {
                        for w2 in 0..l2 {
                            for w3 in 0..l3 {
                                let w = [w1, w2, w3];
                                let k = space.index(w).unwrap();
                                seen[k as usize] = true;
                                let mut ok = true;
                                let mut side = [None; 3];
                                side[second - 1] = Some(w[second - 1]);
                                ok &= space.recover(first, k, side).unwrap() == w[first - 1];
                                let mut side = [None; 3];
                                side[first - 1] = Some(w[first - 1]);
                                ok &= space.recover(second, k, side).unwrap() == w[second - 1];
                                ok &= space.recover(outsider, k, [None; 3]).unwrap()
                                    == w[outsider - 1];
                                checks += 1;
                                if !ok {
                                    failures += 1;
                                }
                            }
                        }
                    }
                    if !seen.iter().all(|&s| s) {
                        failures += 1;
                    }
                }
            }
        }
    }
    for l1 in 1..=4u64 {
        for l2 in 1..=4u64 {
            for l3 in 1..=4u64 {
                let space = MessageSpace::new([l1, l2, l3], IndexCase::Distinct).unwrap();
                let mut seen = vec![false; (l1 * l2 * l3) as usize];
                for w1 in 0..l1 {
                    for w2 in 0..l2 {
                        for w3 in 0..l3 {
                            let w = [w1, w2, w3];
                            let k = space.index(w).unwrap();
                            let mut ok = !seen[k as usize];
                            seen[k as usize] = true;
                            for receiver in 1..=3 {
                                ok &= space.recover(receiver, k, [None; 3]).unwrap()
                                    == w[receiver - 1];
                            }
                            checks += 1;
                            if !ok {
                                failures += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    SuiteResult::new(
        "index-roundtrip",
        failures == 0,
        format!("{checks} round trips, {failures} failures"),
    )
}

/// Runs the five self-check suites: tightness census, projection-vs-direct
/// region equality, envelope-vs-grid optimizer agreement, inner-frontier
/// containment in the outer bound, and index-coding round trips.
pub fn run_verify_suites(ch: &Channel, seed: u64, scope: WeaknessScope) -> Vec<SuiteResult> {
    vec![
        census_suite(),
        fm_suite(ch, seed),
        utility_suite(ch, seed),
        inner_outer_suite(ch, scope),
        index_suite(),
    ]
}
