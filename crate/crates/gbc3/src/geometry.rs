//! Polyhedral geometry for 3-dimensional rate regions.
//!
//! Every region this crate produces is an intersection of *subset bounds*
//! `sum_{k in V} R_k <= b_V` over nonempty receiver sets `V`, together with
//! nonnegativity. [`SubsetBoundRegion`] stores the tightest bound per subset
//! and answers membership, radial, vertex, and support queries.
//!
//! [`LinearInequalitySystem`] is the general form (arbitrary variables and
//! coefficients) used when a region is *defined* with auxiliary variables:
//! Fourier-Motzkin elimination projects the auxiliaries away so the result
//! can be compared against a directly constructed region.

use std::collections::BTreeMap;

use crate::config::ReceiverSet;
use crate::error::{Error, Result};

/// Tolerance for feasibility checks in vertex enumeration.
const FEAS_TOL: f64 = 1e-9;
/// Two vertices closer than this (L-infinity) are the same vertex.
const DEDUP_TOL: f64 = 1e-9;

// ---------------------------------------------------------------------------
// Rate tuples and weights
// ---------------------------------------------------------------------------

/// A rate point `(R1, R2, R3)`.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct RateTuple(pub [f64; 3]);

impl RateTuple {
    pub const ZERO: RateTuple = RateTuple([0.0; 3]);

    /// Rate of receiver `i` (1-based).
    pub fn rate(&self, i: usize) -> f64 {
        assert!((1..=3).contains(&i), "receiver label {i} out of range");
        self.0[i - 1]
    }

    pub fn dot(&self, w: [f64; 3]) -> f64 {
        self.0.iter().zip(w).map(|(r, c)| r * c).sum()
    }

    pub fn scale(&self, t: f64) -> RateTuple {
        RateTuple([self.0[0] * t, self.0[1] * t, self.0[2] * t])
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }
}

impl std::fmt::Display for RateTuple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

/// A nonnegative, not-all-zero weighting of the three rates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeightVector([f64; 3]);

impl WeightVector {
    pub fn new(w: [f64; 3]) -> Result<WeightVector> {
        if w.iter().any(|x| !x.is_finite() || *x < 0.0) {
            return Err(Error::InvalidWeight(format!(
                "{w:?} has a negative or non-finite component"
            )));
        }
        if w.iter().all(|x| *x == 0.0) {
            return Err(Error::InvalidWeight("all components are zero".into()));
        }
        Ok(WeightVector(w))
    }

    pub fn components(&self) -> [f64; 3] {
        self.0
    }

    /// Weight of receiver `i` (1-based).
    pub fn weight(&self, i: usize) -> f64 {
        assert!((1..=3).contains(&i), "receiver label {i} out of range");
        self.0[i - 1]
    }
}

// ---------------------------------------------------------------------------
// Time-sharing coverage
// ---------------------------------------------------------------------------

/// Largest `t` such that a convex combination of at most two of the given
/// achievable points dominates `t * dir` componentwise.
///
/// Operating points may be mixed over time, and a receiver can always discard
/// rate, so every such `t * dir` is itself achievable: the return value is a
/// certified inner radius along `dir`. Searching pairs captures the ruled
/// (time-sharing) parts of the frontier that no single operating point
/// reaches; it may still fall short of the full convex-hull radius where a
/// three-way mix would be needed.
pub fn covered_radial(points: &[RateTuple], dir: &WeightVector) -> f64 {
    let d = dir.components();
    // Pareto-prune: a dominated point never helps a covering mix.
    let mut pts: Vec<[f64; 3]> = points
        .iter()
        .map(|p| p.0)
        .filter(|p| p.iter().all(|x| x.is_finite() && *x >= 0.0))
        .collect();
    let keep: Vec<bool> = (0..pts.len())
        .map(|i| {
            !(0..pts.len()).any(|j| {
                i != j
                    && (0..3).all(|c| pts[i][c] <= pts[j][c])
                    && (pts[i] != pts[j] || j < i)
            })
        })
        .collect();
    let mut it = keep.iter();
    pts.retain(|_| *it.next().unwrap());

    // Radius of one mixed point: the binding ratio over the support of `dir`
    // (zero-weight coordinates only need to stay nonnegative).
    let radius = |p: [f64; 3]| -> f64 {
        (0..3)
            .filter(|&i| d[i] > 0.0)
            .map(|i| p[i] / d[i])
            .fold(f64::INFINITY, f64::min)
    };

    let mut best = 0.0f64;
    for k in 0..pts.len() {
        for l in k..pts.len() {
            let (x, y) = (pts[k], pts[l]);
            let mix = |lam: f64| {
                radius([
                    lam * x[0] + (1.0 - lam) * y[0],
                    lam * x[1] + (1.0 - lam) * y[1],
                    lam * x[2] + (1.0 - lam) * y[2],
                ])
            };
            // The mix radius is concave piecewise-linear in the mixing
            // weight: the maximum sits at an endpoint or where two
            // coordinate ratios cross.
            best = best.max(mix(0.0)).max(mix(1.0));
            for i in 0..3 {
                for j in (i + 1)..3 {
                    if d[i] <= 0.0 || d[j] <= 0.0 {
                        continue;
                    }
                    let slope = (x[i] - y[i]) / d[i] - (x[j] - y[j]) / d[j];
                    if slope == 0.0 {
                        continue;
                    }
                    let lam = (y[j] / d[j] - y[i] / d[i]) / slope;
                    if (0.0..=1.0).contains(&lam) {
                        best = best.max(mix(lam));
                    }
                }
            }
        }
    }
    best
}

// ---------------------------------------------------------------------------
// Subset-bound regions
// ---------------------------------------------------------------------------

/// A region `{ R >= 0 : sum_{k in V} R_k <= b_V for each stored V }`.
///
/// Absent subsets are unconstrained. Re-tightening an existing subset keeps
/// the smaller bound, so construction order never matters.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SubsetBoundRegion {
    bounds: BTreeMap<ReceiverSet, f64>,
}

impl SubsetBoundRegion {
    pub fn new() -> SubsetBoundRegion {
        SubsetBoundRegion::default()
    }

    /// Adds (or tightens) the bound on a nonempty subset. Infinite bounds
    /// are no-ops; the bound must not be NaN.
    pub fn tighten(&mut self, v: ReceiverSet, bound: f64) {
        assert!(!v.is_empty(), "cannot bound the empty subset");
        assert!(!bound.is_nan(), "NaN bound for {v}");
        if bound.is_infinite() {
            return;
        }
        let entry = self.bounds.entry(v).or_insert(f64::INFINITY);
        if bound < *entry {
            *entry = bound;
        }
    }

    /// The stored bound on `v`, or +inf when unconstrained.
    pub fn bound(&self, v: ReceiverSet) -> f64 {
        self.bounds.get(&v).copied().unwrap_or(f64::INFINITY)
    }

    /// Stored (subset, bound) rows in mask order.
    pub fn rows(&self) -> impl Iterator<Item = (ReceiverSet, f64)> + '_ {
        self.bounds.iter().map(|(&v, &b)| (v, b))
    }

    pub fn is_unconstrained(&self) -> bool {
        self.bounds.is_empty()
    }

    /// Membership test with additive tolerance on every inequality.
    pub fn contains(&self, r: RateTuple, tol: f64) -> bool {
        if r.0.iter().any(|x| *x < -tol) {
            return false;
        }
        self.bounds.iter().all(|(&v, &b)| {
            let sum: f64 = v.iter().map(|k| r.rate(k)).sum();
            sum <= b + tol
        })
    }

    /// Largest `t` such that `t * dir` stays in the region: the minimum of
    /// `b_V / sum_{k in V} dir_k` over rows that see the direction. Returns
    /// +inf when no row does.
    pub fn radial_max(&self, dir: &WeightVector) -> f64 {
        let mut best = f64::INFINITY;
        for (&v, &b) in &self.bounds {
            let den: f64 = v.iter().map(|k| dir.weight(k)).sum();
            if den > 0.0 {
                best = best.min(b / den);
            }
        }
        best
    }

    /// All vertices of the region, deduplicated and lexicographically
    /// sorted. Fails when some receiver's rate is unbounded (no stored
    /// subset covers it).
    pub fn vertices(&self) -> Result<Vec<RateTuple>> {
        for r in 1..=3 {
            if !self.bounds.keys().any(|v| v.contains(r)) {
                return Err(Error::UnboundedRegion(r));
            }
        }
        // Halfspaces a.x <= c: one per subset row, plus -x_k <= 0.
        let mut planes: Vec<([f64; 3], f64)> = Vec::with_capacity(self.bounds.len() + 3);
        for (&v, &b) in &self.bounds {
            let mut a = [0.0; 3];
            for k in v.iter() {
                a[k - 1] = 1.0;
            }
            planes.push((a, b));
        }
        for k in 0..3 {
            let mut a = [0.0; 3];
            a[k] = -1.0;
            planes.push((a, 0.0));
        }

        let mut found: Vec<RateTuple> = Vec::new();
        for i in 0..planes.len() {
            for j in i + 1..planes.len() {
                for k in j + 1..planes.len() {
                    let Some(x) = solve3([planes[i].0, planes[j].0, planes[k].0],
                                         [planes[i].1, planes[j].1, planes[k].1])
                    else {
                        continue;
                    };
                    let feasible = planes.iter().all(|(a, c)| {
                        a.iter().zip(x).map(|(ai, xi)| ai * xi).sum::<f64>() <= c + FEAS_TOL
                    });
                    if !feasible {
                        continue;
                    }
                    let dup = found.iter().any(|p| {
                        p.0.iter().zip(x).all(|(a, b)| (a - b).abs() <= DEDUP_TOL)
                    });
                    if !dup {
                        found.push(RateTuple(x));
                    }
                }
            }
        }
        found.sort_by(|a, b| {
            a.0[0]
                .total_cmp(&b.0[0])
                .then(a.0[1].total_cmp(&b.0[1]))
                .then(a.0[2].total_cmp(&b.0[2]))
        });
        Ok(found)
    }

    /// Maximum of `w . R` over the region, with the maximizing vertex. Ties
    /// (within 1e-9 relative) resolve to the lexicographically largest
    /// vertex so the argmax is reproducible.
    pub fn support(&self, w: &WeightVector) -> Result<(f64, RateTuple)> {
        let verts = self.vertices()?;
        let c = w.components();
        let best = verts
            .iter()
            .map(|v| v.dot(c))
            .fold(f64::NEG_INFINITY, f64::max);
        let tol = 1e-9 * best.abs().max(1.0);
        let arg = verts
            .into_iter()
            .rev()
            .find(|v| v.dot(c) >= best - tol)
            .expect("region has at least the origin vertex");
        Ok((best, arg))
    }

    /// Maximum of an arbitrary-sign functional over the region. The region
    /// is a bounded polytope once `vertices` succeeds, so the maximum sits
    /// at a vertex even when some coefficients are negative.
    pub(crate) fn support_general(&self, c: [f64; 3]) -> Result<f64> {
        let verts = self.vertices()?;
        Ok(verts
            .iter()
            .map(|v| v.dot(c))
            .fold(f64::NEG_INFINITY, f64::max))
    }
}

/// Cramer solve of a 3x3 system; `None` when (near-)singular.
fn solve3(a: [[f64; 3]; 3], b: [f64; 3]) -> Option<[f64; 3]> {
    let det = det3(a);
    if det.abs() < 1e-12 {
        return None;
    }
    let mut x = [0.0; 3];
    for col in 0..3 {
        let mut m = a;
        for row in 0..3 {
            m[row][col] = b[row];
        }
        x[col] = det3(m) / det;
    }
    x.iter().all(|v| v.is_finite()).then_some(x)
}

fn det3(m: [[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Maximum of `w . p` over a finite point cloud (the support of its convex
/// hull in that direction).
pub fn hull_support(points: &[RateTuple], w: &WeightVector) -> Result<f64> {
    if points.is_empty() {
        return Err(Error::EmptyCloud);
    }
    let c = w.components();
    Ok(points
        .iter()
        .map(|p| p.dot(c))
        .fold(f64::NEG_INFINITY, f64::max))
}

// ---------------------------------------------------------------------------
// General inequality systems and projection
// ---------------------------------------------------------------------------

/// A system `A x <= b` over named variables.
#[derive(Clone, Debug)]
pub struct LinearInequalitySystem {
    vars: Vec<String>,
    rows: Vec<(Vec<f64>, f64)>,
}

impl LinearInequalitySystem {
    pub fn new(vars: Vec<String>) -> LinearInequalitySystem {
        LinearInequalitySystem { vars, rows: Vec::new() }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn rows(&self) -> &[(Vec<f64>, f64)] {
        &self.rows
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Adds the row `coeffs . x <= rhs`.
    pub fn add_row(&mut self, coeffs: Vec<f64>, rhs: f64) {
        assert_eq!(coeffs.len(), self.vars.len(), "row width mismatch");
        self.rows.push((coeffs, rhs));
    }

    /// Adds `x >= 0` for a named variable.
    pub fn add_nonneg(&mut self, name: &str) {
        let idx = self.var_index(name).expect("unknown variable");
        let mut coeffs = vec![0.0; self.vars.len()];
        coeffs[idx] = -1.0;
        self.rows.push((coeffs, 0.0));
    }

    /// True when `x` satisfies every row within `tol`.
    pub fn is_feasible_point(&self, x: &[f64], tol: f64) -> bool {
        assert_eq!(x.len(), self.vars.len());
        self.rows.iter().all(|(a, b)| {
            a.iter().zip(x).map(|(ai, xi)| ai * xi).sum::<f64>() <= b + tol
        })
    }

    /// Projects the named variables away by Fourier-Motzkin elimination,
    /// one at a time in the order given. The result describes exactly the
    /// shadow of the feasible set on the remaining variables. Fails with
    /// [`Error::InfeasibleSystem`] if elimination exposes a contradiction
    /// (a zero row with negative right-hand side).
    pub fn fm_eliminate(&self, drop: &[&str]) -> Result<LinearInequalitySystem> {
        let mut vars = self.vars.clone();
        let mut rows = self.rows.clone();
        for name in drop {
            let idx = vars
                .iter()
                .position(|v| v == name)
                .unwrap_or_else(|| panic!("unknown variable {name}"));
            rows = eliminate_column(&rows, idx, false)?;
            vars.remove(idx);
        }
        Ok(LinearInequalitySystem { vars, rows })
    }

    /// Like [`fm_eliminate`](Self::fm_eliminate), for systems where *every*
    /// variable is constrained nonnegative by rows of the system itself.
    ///
    /// Nonnegativity licenses a much stronger cleanup — a row is redundant
    /// whenever another row has componentwise-larger coefficients and a
    /// smaller right-hand side — which keeps the row count from exploding
    /// combinatorially. It also frees the elimination order, so the cheapest
    /// variable (fewest positive-negative row pairings) goes first. The
    /// caller is responsible for the nonnegativity precondition; a system
    /// that violates it can come back too small.
    pub fn fm_eliminate_assuming_nonneg(&self, drop: &[&str]) -> Result<LinearInequalitySystem> {
        let mut vars = self.vars.clone();
        let mut rows = self.rows.clone();
        let mut remaining: Vec<String> = drop.iter().map(|s| s.to_string()).collect();
        while !remaining.is_empty() {
            let (pick, idx) = remaining
                .iter()
                .enumerate()
                .map(|(pos, name)| {
                    let idx = vars
                        .iter()
                        .position(|v| v == name)
                        .unwrap_or_else(|| panic!("unknown variable {name}"));
                    let pos_rows = rows.iter().filter(|(a, _)| a[idx] > 1e-12).count();
                    let neg_rows = rows.iter().filter(|(a, _)| a[idx] < -1e-12).count();
                    (pos_rows * neg_rows, pos, idx)
                })
                .min()
                .map(|(_, pos, idx)| (pos, idx))
                .expect("remaining is nonempty");
            rows = eliminate_column(&rows, idx, true)?;
            vars.remove(idx);
            remaining.remove(pick);
        }
        Ok(LinearInequalitySystem { vars, rows })
    }
}

/// One Fourier-Motzkin step: combine every (positive, negative) coefficient
/// pair on column `idx`, pass neutral rows through, drop the column, then
/// clean up tautologies and duplicates. With `vars_nonneg`, rows dominated
/// componentwise are also pruned (sound only when every variable is
/// nonnegative).
fn eliminate_column(
    rows: &[(Vec<f64>, f64)],
    idx: usize,
    vars_nonneg: bool,
) -> Result<Vec<(Vec<f64>, f64)>> {
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    let mut out: Vec<(Vec<f64>, f64)> = Vec::new();

    let strip = |a: &[f64]| -> Vec<f64> {
        a.iter()
            .enumerate()
            .filter(|(i, _)| *i != idx)
            .map(|(_, v)| *v)
            .collect()
    };

    for (a, b) in rows {
        let c = a[idx];
        if c > 1e-12 {
            // x <= (b - rest) / c
            pos.push((strip(a), *b, c));
        } else if c < -1e-12 {
            neg.push((strip(a), *b, c));
        } else {
            out.push((strip(a), *b));
        }
    }
    for (ap, bp, cp) in &pos {
        for (an, bn, cn) in &neg {
            // Upper bound from the positive row meets lower bound from the
            // negative row: rest_p/cp - rest_n/cn <= bp/cp - bn/cn.
            let coeffs: Vec<f64> = ap
                .iter()
                .zip(an)
                .map(|(p, n)| p / cp - n / cn)
                .collect();
            out.push((coeffs, bp / cp - bn / cn));
        }
    }

    // Cleanup: drop tautologies, catch contradictions, normalize, and keep
    // only the tightest of proportional rows.
    let mut cleaned: Vec<(Vec<f64>, f64)> = Vec::new();
    for (mut a, mut b) in out {
        let scale = a.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if scale <= 1e-12 {
            if b < -1e-9 {
                return Err(Error::InfeasibleSystem);
            }
            continue;
        }
        for v in &mut a {
            *v /= scale;
            if v.abs() < 1e-12 {
                *v = 0.0;
            }
        }
        b /= scale;
        match cleaned
            .iter_mut()
            .find(|(c, _)| c.iter().zip(&a).all(|(x, y)| (x - y).abs() <= 1e-9))
        {
            Some((_, existing)) => *existing = existing.min(b),
            None => cleaned.push((a, b)),
        }
    }

    if vars_nonneg {
        // Over x >= 0, a row is implied by any row with componentwise-larger
        // coefficients and a right-hand side no bigger. Rows with no positive
        // coefficient are exempt from removal: they are what keeps the
        // system's feasible set inside the orthant, and the rule is only
        // sound while that containment is spelled out by the rows themselves.
        let mut keep = vec![true; cleaned.len()];
        for i in 0..cleaned.len() {
            if !cleaned[i].0.iter().any(|c| *c > 1e-12) {
                continue;
            }
            for j in 0..cleaned.len() {
                if i == j || !keep[j] || !keep[i] {
                    continue;
                }
                let (ai, bi) = &cleaned[i];
                let (aj, bj) = &cleaned[j];
                let dominates = aj.iter().zip(ai).all(|(cj, ci)| *cj >= ci - 1e-12)
                    && *bj <= bi + 1e-12;
                if dominates {
                    keep[i] = false;
                    break;
                }
            }
        }
        let mut it = keep.iter();
        cleaned.retain(|_| *it.next().unwrap());
    }
    Ok(cleaned)
}

// ---------------------------------------------------------------------------
