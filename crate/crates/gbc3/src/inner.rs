//! Achievable (inner-bound) rate regions.
//!
//! A layered scheme sends one message bundle per layer. The rate region it
//! achieves is a subset-bound region: a receiver set `V` is constrained when
//! every layer's slice of `V` is acyclic (cyclic slices ride along for free,
//! since their members resolve each other's messages from side information),
//! and the bound telescopes layer powers against the strongest constrained
//! receiver's noise. [`direct_region`] builds this region for the canonical
//! per-receiver layer assignment; [`cmkm_region`] does the same for any
//! ordered list of complete sets.
//!
//! [`split_rate_system`] expresses the same scheme with explicit per-layer
//! rate shares; projecting the shares away with Fourier-Motzkin elimination
//! ([`region_via_fm`]) must reproduce `direct_region`, which the test suite
//! checks region-for-region.
//!
//! [`max_weighted_sum_utility`] optimizes a weighted sum rate over *all*
//! power splits at once: each complete set contributes a marginal-utility
//! curve in the cumulative power `z`, the upper envelope picks the winning
//! set at every `z`, and the envelope integral is the exact optimum.

use crate::config::{
    is_acyclic, is_complete, layer_assignment, maximum_complete_sets, ReceiverSet, RoutingMatrix,
};
use crate::error::{Error, Result};
use crate::gaussian::{Channel, PowerSplit};
use crate::geometry::{LinearInequalitySystem, RateTuple, SubsetBoundRegion, WeightVector};

// ---------------------------------------------------------------------------
// Layered regions
// ---------------------------------------------------------------------------

/// Rate region achieved by carrying one bundle per complete set in `ksets`,
/// with layer `l` spending `split.part(l)` and treating earlier layers as
/// noise.
///
/// For each nonempty receiver set `V`: when some layer's slice `V ∩ K_l` is
/// cyclic, `V` is unconstrained; otherwise
///
/// ```text
/// sum_{k in V} R_k <= sum_l cap( P_l / (min_{i in V ∩ K_l} N_i + P_1 + .. + P_{l-1}) )
/// ```
///
/// with empty slices contributing nothing. Every singleton slice is acyclic,
/// so each receiver gets a finite bound (zero when it appears in no layer)
/// and the region is always a bounded polytope.
pub fn cmkm_region(
    a: &RoutingMatrix,
    ch: &Channel,
    ksets: &[ReceiverSet],
    split: &PowerSplit,
) -> Result<SubsetBoundRegion> {
    if ksets.is_empty() {
        return Err(Error::InvalidSplit("no layers".into()));
    }
    if split.len() != ksets.len() {
        return Err(Error::InvalidSplit(format!(
            "{} layers but {} split parts",
            ksets.len(),
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
    for &k in ksets {
        if k.is_empty() || !is_complete(a, k) {
            return Err(Error::NotComplete(format!("{k}")));
        }
    }

    let mut region = SubsetBoundRegion::new();
    'subsets: for v in ReceiverSet::all_nonempty() {
        let mut bound = 0.0;
        for (l, &k) in ksets.iter().enumerate() {
            let slice = v.intersection(k);
            if slice.is_empty() {
                continue;
            }
            if !is_acyclic(a, slice) {
                continue 'subsets; // members strip each other; V rides free
            }
            let strongest = slice.smallest().expect("nonempty slice");
            let noise = ch.noise(strongest) + split.prefix(l + 1);
            bound += ch.cap(split.part(l + 1) / noise);
        }
        region.tighten(v, bound);
    }
    Ok(region)
}

/// The achievable region for the canonical three-layer assignment (layer `l`
/// carries the maximum complete set chosen for receiver `l`). The split
/// always has three parts; configurations whose whole receiver set is
/// complete repeat it on every layer, where the bounds telescope and the
/// split drops out.
pub fn direct_region(
    a: &RoutingMatrix,
    ch: &Channel,
    split: &PowerSplit,
) -> Result<SubsetBoundRegion> {
    let fam = layer_assignment(a);
    let ksets = [fam.layer(1), fam.layer(2), fam.layer(3)];
    cmkm_region(a, ch, &ksets, split)
}

// ---------------------------------------------------------------------------
// Split-rate formulation and projection
// ---------------------------------------------------------------------------

/// The same scheme with explicit per-layer rate shares: variables `R_i` plus
/// `x_i_l` for every receiver `i` in layer `l`'s set. Each layer constrains
/// its acyclic subsets' share sums; `R_i` equals the sum of receiver `i`'s
/// shares; shares are nonnegative.
pub fn split_rate_system(
    a: &RoutingMatrix,
    ch: &Channel,
    split: &PowerSplit,
) -> Result<LinearInequalitySystem> {
    if split.len() != 3 {
        return Err(Error::InvalidSplit(format!(
            "expected a three-part split, got {}",
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

    let mut vars: Vec<String> = vec!["R1".into(), "R2".into(), "R3".into()];
    for l in 1..=3 {
        for i in fam.layer(l).iter() {
            vars.push(format!("x{i}_{l}"));
        }
    }
    let mut sys = LinearInequalitySystem::new(vars);
    let idx = |sys: &LinearInequalitySystem, name: &str| {
        sys.var_index(name).expect("variable was just declared")
    };

    // Per-layer share-sum caps over acyclic subsets of the layer set.
    for l in 1..=3 {
        let k = fam.layer(l);
        for v in ReceiverSet::all_nonempty() {
            if !v.is_subset_of(k) || !is_acyclic(a, v) {
                continue;
            }
            let strongest = v.smallest().unwrap();
            let rhs = ch.cap(split.part(l) / (ch.noise(strongest) + split.prefix(l)));
            let mut coeffs = vec![0.0; sys.vars().len()];
            for i in v.iter() {
                coeffs[idx(&sys, &format!("x{i}_{l}"))] = 1.0;
            }
            sys.add_row(coeffs, rhs);
        }
    }

    // Coupling: R_i equals the sum of its shares (two inequalities each).
    for i in 1..=3 {
        let mut coeffs = vec![0.0; sys.vars().len()];
        coeffs[i - 1] = 1.0;
        for l in 1..=3 {
            if fam.layer(l).contains(i) {
                coeffs[idx(&sys, &format!("x{i}_{l}"))] = -1.0;
            }
        }
        let negated: Vec<f64> = coeffs.iter().map(|c| -c).collect();
        sys.add_row(coeffs, 0.0);
        sys.add_row(negated, 0.0);
    }

    // Nonnegativity for every variable.
    let names: Vec<String> = sys.vars().to_vec();
    for name in names {
        sys.add_nonneg(&name);
    }
    Ok(sys)
}

/// Projects the split-rate system onto `(R1, R2, R3)` and reads the result
/// back as a subset-bound region.
///
/// Every projected row should be a subset bound after normalization; rows
/// with mixed or negative coefficients occasionally fall out of the
/// elimination, and are accepted only if they are redundant against the
/// subset rows (checked by maximizing the row's functional over the region).
pub fn region_via_fm(
    a: &RoutingMatrix,
    ch: &Channel,
    split: &PowerSplit,
) -> Result<SubsetBoundRegion> {
    let sys = split_rate_system(a, ch, split)?;
    let drop: Vec<String> = sys
        .vars()
        .iter()
        .filter(|v| v.starts_with('x'))
        .cloned()
        .collect();
    let drop_refs: Vec<&str> = drop.iter().map(|s| s.as_str()).collect();
    // Every rate and share variable is nonnegative, so the aggressive
    // dominance cleanup applies; plain elimination blows up combinatorially
    // on the densest configurations.
    let projected = sys.fm_eliminate_assuming_nonneg(&drop_refs)?;
    debug_assert_eq!(projected.vars(), ["R1", "R2", "R3"]);

    let mut region = SubsetBoundRegion::new();
    let mut leftovers: Vec<(Vec<f64>, f64)> = Vec::new();
    for (coeffs, rhs) in projected.rows() {
        let is_indicator = coeffs
            .iter()
            .all(|c| c.abs() <= 1e-9 || (c - 1.0).abs() <= 1e-9);
        if is_indicator {
            let members: Vec<usize> = (1..=3).filter(|i| coeffs[i - 1] > 0.5).collect();
            if members.is_empty() {
                continue; // tautology that survived cleanup
            }
            region.tighten(ReceiverSet::from_slice(&members), *rhs);
        } else {
            leftovers.push((coeffs.clone(), *rhs));
        }
    }
    for (coeffs, rhs) in leftovers {
        let c = [coeffs[0], coeffs[1], coeffs[2]];
        let max_over_region = region.support_general(c)?;
        if max_over_region > rhs + 1e-9 {
            return Err(Error::NonSubsetRow(format!("{coeffs:?} <= {rhs}")));
        }
    }
    Ok(region)
}

// ---------------------------------------------------------------------------
// Weighted-sum-rate optimization over all splits
// ---------------------------------------------------------------------------

/// Marginal utility of spending power at cumulative level `z` on the bundle
/// of one complete set: a weighted sum of `1 / (N_i + z)` poles. Unscaled;
/// the optimizer divides by `2 ln(base)` when integrating.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UtilityCurve {
    pub set: ReceiverSet,
    /// Coefficient on the pole `1 / (N_i + z)` for each receiver `i`.
    pub coeffs: [f64; 3],
}

impl UtilityCurve {
    pub fn value(&self, ch: &Channel, z: f64) -> f64 {
        (1..=3)
            .map(|i| self.coeffs[i - 1] / (ch.noise(i) + z))
            .sum()
    }

    /// Exact integral over `[lo, hi]`, in the channel's log base, including
    /// the `1 / (2 ln b)` rate scale.
    fn integral(&self, ch: &Channel, lo: f64, hi: f64) -> f64 {
        let raw: f64 = (1..=3)
            .map(|i| {
                let n = ch.noise(i);
                self.coeffs[i - 1] * ((n + hi) / (n + lo)).ln()
            })
            .sum();
        raw / (2.0 * ch.base().ln_base())
    }

    /// Tie-break score: prefer the set with the stronger span, then the
    /// smaller mask.
    fn tie_key(&self) -> (usize, u8) {
        (
            self.set.smallest().unwrap() + self.set.largest().unwrap(),
            self.set.mask(),
        )
    }
}

/// The marginal-utility curves of every nonempty complete set, given weights.
///
/// A lone receiver earns its own weight on its own pole. A complete pair
/// `{i, j}` (`i < j`, so `j` already holds `i`'s message) serves `i` fully
/// and adds `j` on top only for the weight `j` has beyond `i`'s — unless the
/// pair knows each other *mutually*, in which case the bundle resolves for
/// both without any rate sharing and both weights ride at full strength.
/// Curves that are identically zero (all relevant weights zero) are dropped.
pub fn utility_curves(a: &RoutingMatrix, mu: &WeightVector) -> Vec<UtilityCurve> {
    let mut curves = Vec::new();
    for v in ReceiverSet::all_nonempty() {
        if v.len() == 3 || !is_complete(a, v) {
            continue; // the full set is handled by its own single-bundle path
        }
        let mut coeffs = [0.0; 3];
        match v.len() {
            1 => {
                let i = v.smallest().unwrap();
                coeffs[i - 1] = mu.weight(i);
            }
            2 => {
                let i = v.smallest().unwrap();
                let j = v.largest().unwrap();
                coeffs[i - 1] = mu.weight(i);
                coeffs[j - 1] = if a.knows(i, j) && a.knows(j, i) {
                    mu.weight(j)
                } else {
                    (mu.weight(j) - mu.weight(i)).max(0.0)
                };
            }
            _ => unreachable!(),
        }
        if coeffs.iter().any(|c| *c > 0.0) {
            curves.push(UtilityCurve { set: v, coeffs });
        }
    }
    curves
}

/// One stretch of cumulative power owned by a single winning set.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScheduleSegment {
    pub set: ReceiverSet,
    pub z_lo: f64,
    pub z_hi: f64,
}

impl ScheduleSegment {
    pub fn power(&self) -> f64 {
        self.z_hi - self.z_lo
    }
}

/// Result of the weighted-sum-rate optimization: the optimum, a maximizing
/// rate tuple, and the power schedule that attains it.
#[derive(Clone, Debug)]
pub struct UtilitySolution {
    pub j_star: f64,
    pub rates: RateTuple,
    pub segments: Vec<ScheduleSegment>,
}

impl UtilitySolution {
    /// The ordered layer sets and powers of the schedule.
    pub fn layers(&self) -> (Vec<ReceiverSet>, Vec<f64>) {
        (
            self.segments.iter().map(|s| s.set).collect(),
            self.segments.iter().map(|s| s.power()).collect(),
        )
    }
}

/// Roots of `sum_i d_i / (n_i + z) = 0` inside the open interval `(0, p)`.
/// Clearing denominators leaves a quadratic, so two curves cross at most
/// twice; identically-equal differences yield no roots.
fn crossing_points(d: [f64; 3], n: [f64; 3], p: f64) -> Vec<f64> {
    let scale = d.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if scale <= 1e-14 {
        return Vec::new();
    }
    let d = [d[0] / scale, d[1] / scale, d[2] / scale];
    // d1 (n2+z)(n3+z) + d2 (n1+z)(n3+z) + d3 (n1+z)(n2+z) = 0
    let qa = d[0] + d[1] + d[2];
    let qb = d[0] * (n[1] + n[2]) + d[1] * (n[0] + n[2]) + d[2] * (n[0] + n[1]);
    let qc = d[0] * n[1] * n[2] + d[1] * n[0] * n[2] + d[2] * n[0] * n[1];

    let mut roots = Vec::new();
    if qa.abs() > 1e-12 {
        let disc = qb * qb - 4.0 * qa * qc;
        if disc > 0.0 {
            let s = disc.sqrt();
            // Stable quadratic roots: avoid cancellation in the small root.
            let q = -0.5 * (qb + qb.signum() * s);
            if qb == 0.0 {
                roots.push(s / (2.0 * qa));
                roots.push(-s / (2.0 * qa));
            } else {
                roots.push(q / qa);
                roots.push(qc / q);
            }
        }
    } else if qb.abs() > 1e-12 {
        roots.push(-qc / qb);
    }
    roots.retain(|z| *z > 1e-12 && *z < p - 1e-12 && z.is_finite());
    roots
}

/// Maximizes `mu . R` over every layered scheme and power split at once.
///
/// When the whole receiver set is complete a single bundle is optimal and
/// the answer is the support of that one-layer region. Otherwise the upper
/// envelope of the complete sets' marginal-utility curves decides which set
/// owns each stretch of cumulative power; the optimum is the envelope's
/// integral, and the schedule's region recovers a maximizing rate tuple.
pub fn max_weighted_sum_utility(
    a: &RoutingMatrix,
    ch: &Channel,
    mu: &WeightVector,
) -> Result<UtilitySolution> {
    let p = ch.p();
    if maximum_complete_sets(a) == [ReceiverSet::ALL] {
        let split = PowerSplit::new(p, vec![p])?;
        let region = cmkm_region(a, ch, &[ReceiverSet::ALL], &split)?;
        let (j_star, rates) = region.support(mu)?;
        return Ok(UtilitySolution {
            j_star,
            rates,
            segments: vec![ScheduleSegment { set: ReceiverSet::ALL, z_lo: 0.0, z_hi: p }],
        });
    }

    let curves = utility_curves(a, mu);
    assert!(
        !curves.is_empty(),
        "a positive weight always keeps its own singleton curve"
    );

    // Breakpoints: interval ends plus every pairwise crossing.
    let mut cuts = vec![0.0, p];
    for (i, c1) in curves.iter().enumerate() {
        for c2 in curves.iter().skip(i + 1) {
            let d = [
                c1.coeffs[0] - c2.coeffs[0],
                c1.coeffs[1] - c2.coeffs[1],
                c1.coeffs[2] - c2.coeffs[2],
            ];
            cuts.extend(crossing_points(d, ch.noises(), p));
        }
    }
    cuts.sort_by(f64::total_cmp);
    cuts.dedup_by(|a, b| (*a - *b).abs() <= 1e-10);

    // Winner per interval, by midpoint value; merge adjacent repeats.
    let mut segments: Vec<(usize, f64, f64)> = Vec::new();
    for w in cuts.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let mid = 0.5 * (lo + hi);
        let best_val = curves
            .iter()
            .map(|c| c.value(ch, mid))
            .fold(f64::NEG_INFINITY, f64::max);
        let tol = 1e-12 * best_val.abs().max(1.0);
        let winner = curves
            .iter()
            .enumerate()
            .filter(|(_, c)| c.value(ch, mid) >= best_val - tol)
            .min_by_key(|(_, c)| c.tie_key())
            .map(|(i, _)| i)
            .expect("at least one curve");
        match segments.last_mut() {
            Some((w, _, end)) if *w == winner => *end = hi,
            _ => segments.push((winner, lo, hi)),
        }
    }

    // Envelope integral, exactly.
    let j_star: f64 = segments
        .iter()
        .map(|&(w, lo, hi)| curves[w].integral(ch, lo, hi))
        .sum();

    let segments: Vec<ScheduleSegment> = segments
        .into_iter()
        .map(|(w, z_lo, z_hi)| ScheduleSegment { set: curves[w].set, z_lo, z_hi })
        .collect();

    // Recover a maximizing rate tuple from the schedule's own region. Its
    // support must reproduce the envelope integral; a mismatch would mean
    // the envelope and the region disagree about the same scheme.
    let ksets: Vec<ReceiverSet> = segments.iter().map(|s| s.set).collect();
    let parts: Vec<f64> = segments.iter().map(|s| s.power()).collect();
    let split = PowerSplit::new(p, parts)?;
    let region = cmkm_region(a, ch, &ksets, &split)?;
    let (support, rates) = region.support(mu)?;
    assert!(
        (support - j_star).abs() <= 1e-9 * j_star.abs().max(1.0),
        "schedule region support {support} disagrees with envelope integral {j_star}"
    );

    Ok(UtilitySolution { j_star, rates, segments })
}

/// Maximizing rate tuples for a batch of directions.
pub fn frontier(a: &RoutingMatrix, ch: &Channel, dirs: &[WeightVector]) -> Result<Vec<RateTuple>> {
    dirs.iter()
        .map(|mu| max_weighted_sum_utility(a, ch, mu).map(|s| s.rates))
        .collect()
}

/// All three-part splits of `total` on a grid with `g` divisions per axis
/// (`(g + 1)(g + 2) / 2` splits).
pub fn simplex_splits(total: f64, g: usize) -> Vec<PowerSplit> {
    assert!(g >= 1, "grid needs at least one division");
    let mut out = Vec::with_capacity((g + 1) * (g + 2) / 2);
    for i in 0..=g {
        for j in 0..=g - i {
            let k = g - i - j;
            let parts = vec![
                total * i as f64 / g as f64,
                total * j as f64 / g as f64,
                total * k as f64 / g as f64,
            ];
            // Guard against accumulated rounding in the last part.
            let sum: f64 = parts.iter().sum();
            let mut parts = parts;
            parts[2] += total - sum;
            out.push(PowerSplit::new(total, parts).expect("grid split is valid"));
        }
    }
    out
}

// ---------------------------------------------------------------------------
