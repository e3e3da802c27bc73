//! Side-information configurations for the 3-receiver broadcast channel.
//!
//! Each receiver may know, ahead of time, the messages requested by some of
//! the other receivers. A configuration is a 3x3 binary matrix `A` with zero
//! diagonal where `a_ij = 1` means "receiver i already holds the message of
//! receiver j". The 6 off-diagonal entries give 64 configurations, encoded as
//! ids 0..=63.
//!
//! This module owns the combinatorics that the rate bounds are built on:
//!
//! - *acyclic* receiver sets (no directed cycle in the knowledge relation),
//! - *complete* sets (every higher-indexed member knows every lower-indexed
//!   member's message) and the family of maximum complete sets,
//! - the per-receiver layer assignment derived from that family,
//! - *weaker-set* chains ("degraded sequences") used by the converse bound,
//! - the classification of configurations whose inner and outer bounds
//!   provably coincide.
//!
//! Receivers are labeled 1..=3 throughout, ordered from strongest (lowest
//! noise) to weakest.
//!
//! ```rust
//! use gbc3::config::{RoutingMatrix, maximum_complete_sets};
//!
//! // Receiver 3 knows the message of receiver 1.
//! let a = RoutingMatrix::from_id(16).unwrap();
//! assert!(a.knows(3, 1));
//! let family = maximum_complete_sets(&a);
//! assert_eq!(format!("{}", family[0]), "{1,3}");
//! assert_eq!(format!("{}", family[1]), "{2}");
//! ```

use std::fmt;

use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::error::{Error, Result};

/// Receiver labels, strongest first.
pub const RECEIVERS: [usize; 3] = [1, 2, 3];

/// Off-diagonal entry order used by the 6-bit encoding: bit k of a config id
/// holds the entry `a_ij` for the k-th pair `(i, j)` in this list.
const BIT_PAIRS: [(usize, usize); 6] = [(1, 2), (1, 3), (2, 1), (2, 3), (3, 1), (3, 2)];

// ---------------------------------------------------------------------------
// Receiver sets
// ---------------------------------------------------------------------------

/// A subset of the receivers {1,2,3}, stored as a 3-bit mask.
///
/// Bit `r-1` is set when receiver `r` is a member. Masks order the 8 subsets
/// deterministically; all family-returning functions in this module list sets
/// in ascending mask order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ReceiverSet(u8);

impl ReceiverSet {
    /// The empty set.
    pub const EMPTY: ReceiverSet = ReceiverSet(0);
    /// The full set {1,2,3}.
    pub const ALL: ReceiverSet = ReceiverSet(0b111);

    /// Set containing exactly `r`.
    pub fn singleton(r: usize) -> ReceiverSet {
        assert!((1..=3).contains(&r), "receiver label {r} out of range");
        ReceiverSet(1 << (r - 1))
    }

    /// Builds a set from receiver labels.
    pub fn from_slice(receivers: &[usize]) -> ReceiverSet {
        receivers
            .iter()
            .fold(ReceiverSet::EMPTY, |s, &r| s.with(r))
    }

    /// Reconstructs a set from a raw 3-bit mask.
    pub fn from_mask(mask: u8) -> ReceiverSet {
        assert!(mask < 8, "mask {mask} out of range");
        ReceiverSet(mask)
    }

    /// The raw 3-bit mask.
    pub fn mask(self) -> u8 {
        self.0
    }

    /// Membership test.
    pub fn contains(self, r: usize) -> bool {
        (1..=3).contains(&r) && self.0 & (1 << (r - 1)) != 0
    }

    /// This set plus receiver `r`.
    pub fn with(self, r: usize) -> ReceiverSet {
        ReceiverSet(self.0 | ReceiverSet::singleton(r).0)
    }

    pub fn union(self, other: ReceiverSet) -> ReceiverSet {
        ReceiverSet(self.0 | other.0)
    }

    pub fn intersection(self, other: ReceiverSet) -> ReceiverSet {
        ReceiverSet(self.0 & other.0)
    }

    pub fn is_subset_of(self, other: ReceiverSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Smallest member label, if any. (Named to avoid clashing with
    /// `Ord::min` on references.)
    pub fn smallest(self) -> Option<usize> {
        self.iter().next()
    }

    /// Largest member label, if any.
    pub fn largest(self) -> Option<usize> {
        self.iter().last()
    }

    /// Members in ascending label order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mask = self.0;
        (1..=3).filter(move |r| mask & (1 << (r - 1)) != 0)
    }

    /// All 8 subsets in mask order (empty set first).
    pub fn all() -> impl Iterator<Item = ReceiverSet> {
        (0u8..8).map(ReceiverSet)
    }

    /// The 7 nonempty subsets in mask order.
    pub fn all_nonempty() -> impl Iterator<Item = ReceiverSet> {
        (1u8..8).map(ReceiverSet)
    }
}

impl fmt::Display for ReceiverSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (idx, r) in self.iter().enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for ReceiverSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for ReceiverSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        for r in self.iter() {
            seq.serialize_element(&r)?;
        }
        seq.end()
    }
}

// ---------------------------------------------------------------------------
// Side-information matrix
// ---------------------------------------------------------------------------

/// The 3x3 binary side-information matrix with zero diagonal.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct RoutingMatrix {
    know: [[bool; 3]; 3],
}

impl RoutingMatrix {
    /// Validates a raw 0/1 matrix. The diagonal must be zero.
    pub fn new(entries: [[u8; 3]; 3]) -> Result<RoutingMatrix> {
        let mut know = [[false; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                match entries[i][j] {
                    0 => {}
                    1 if i == j => {
                        return Err(Error::InvalidMatrix(format!(
                            "diagonal entry a_{}{} must be 0",
                            i + 1,
                            j + 1
                        )))
                    }
                    1 => know[i][j] = true,
                    other => {
                        return Err(Error::InvalidMatrix(format!(
                            "entry a_{}{} = {other} is not binary",
                            i + 1,
                            j + 1
                        )))
                    }
                }
            }
        }
        Ok(RoutingMatrix { know })
    }

    /// Decodes a 6-bit config id (0..=63).
    pub fn from_id(id: u8) -> Result<RoutingMatrix> {
        if id > 63 {
            return Err(Error::InvalidConfigId(format!("{id} exceeds 63")));
        }
        let mut know = [[false; 3]; 3];
        for (bit, &(i, j)) in BIT_PAIRS.iter().enumerate() {
            know[i - 1][j - 1] = id & (1 << bit) != 0;
        }
        Ok(RoutingMatrix { know })
    }

    /// Encodes this matrix as its 6-bit config id.
    pub fn id(&self) -> u8 {
        let mut id = 0u8;
        for (bit, &(i, j)) in BIT_PAIRS.iter().enumerate() {
            if self.know[i - 1][j - 1] {
                id |= 1 << bit;
            }
        }
        id
    }

    /// Decodes a 6-character bit string, least significant bit first
    /// (`"100000"` is id 1, i.e. receiver 1 knows message 2).
    pub fn from_bit_string(s: &str) -> Result<RoutingMatrix> {
        if s.len() != 6 || !s.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(Error::InvalidConfigId(format!(
                "bit string {s:?} is not 6 binary digits"
            )));
        }
        let mut id = 0u8;
        for (bit, b) in s.bytes().enumerate() {
            if b == b'1' {
                id |= 1 << bit;
            }
        }
        RoutingMatrix::from_id(id)
    }

    /// Encodes this matrix as a 6-character bit string (LSB first).
    pub fn bit_string(&self) -> String {
        let id = self.id();
        (0..6)
            .map(|bit| if id & (1 << bit) != 0 { '1' } else { '0' })
            .collect()
    }

    /// Parses either a decimal id or a 6-character bit string.
    pub fn parse(s: &str) -> Result<RoutingMatrix> {
        if s.len() == 6 && s.bytes().all(|b| b == b'0' || b == b'1') {
            // Six binary digits are read as a bit string, so "000011" is the
            // bit-string form of id 3, not decimal eleven.
            return RoutingMatrix::from_bit_string(s);
        }
        match s.parse::<u8>() {
            Ok(id) => RoutingMatrix::from_id(id),
            Err(_) => Err(Error::InvalidConfigId(format!(
                "{s:?} is neither a decimal id nor a 6-digit bit string"
            ))),
        }
    }

    /// True when receiver `i` already holds the message of receiver `j`.
    pub fn knows(&self, i: usize, j: usize) -> bool {
        assert!((1..=3).contains(&i) && (1..=3).contains(&j));
        self.know[i - 1][j - 1]
    }

    /// The set of receivers whose messages receiver `i` holds.
    pub fn known_set(&self, i: usize) -> ReceiverSet {
        ReceiverSet::from_slice(
            &RECEIVERS
                .iter()
                .copied()
                .filter(|&j| j != i && self.knows(i, j))
                .collect::<Vec<_>>(),
        )
    }
}

impl fmt::Debug for RoutingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RoutingMatrix(id={}, bits={})", self.id(), self.bit_string())
    }
}

// ---------------------------------------------------------------------------
// Acyclic and complete sets
// ---------------------------------------------------------------------------

/// True when the knowledge relation restricted to `v` has no directed cycle.
///
/// The empty set and singletons are always acyclic (the diagonal is zero). A
/// pair {i,j} is cyclic only when i and j know each other's messages; the full
/// set can additionally form one of the two 3-cycles.
pub fn is_acyclic(a: &RoutingMatrix, v: ReceiverSet) -> bool {
    for i in v.iter() {
        for j in v.iter() {
            if i < j && a.knows(i, j) && a.knows(j, i) {
                return false;
            }
        }
    }
    if v.len() == 3 {
        if a.knows(1, 2) && a.knows(2, 3) && a.knows(3, 1) {
            return false;
        }
        if a.knows(1, 3) && a.knows(3, 2) && a.knows(2, 1) {
            return false;
        }
    }
    true
}

/// All acyclic subsets (including the empty set), in mask order.
pub fn acyclic_family(a: &RoutingMatrix) -> Vec<ReceiverSet> {
    ReceiverSet::all().filter(|&v| is_acyclic(a, v)).collect()
}

/// True when every pair i < j in `v` satisfies `a_ji = 1`: each weaker member
/// already holds every stronger member's message. Singletons (and the empty
/// set, vacuously) are complete.
pub fn is_complete(a: &RoutingMatrix, v: ReceiverSet) -> bool {
    for i in v.iter() {
        for j in v.iter() {
            if i < j && !a.knows(j, i) {
                return false;
            }
        }
    }
    true
}

/// The family of maximum complete sets: complete sets that stop being
/// complete when any outside receiver is added. Completeness is hereditary,
/// so these are exactly the inclusion-maximal complete sets. Listed by
/// smallest member, then largest (so a pair through receiver 1 precedes a
/// lone receiver 2).
pub fn maximum_complete_sets(a: &RoutingMatrix) -> Vec<ReceiverSet> {
    let mut family: Vec<ReceiverSet> = ReceiverSet::all_nonempty()
        .filter(|&v| is_complete(a, v))
        .filter(|&v| {
            RECEIVERS
                .iter()
                .all(|&j| v.contains(j) || !is_complete(a, v.with(j)))
        })
        .collect();
    family.sort_by_key(|v| (v.smallest().unwrap(), v.largest().unwrap()));
    family
}

// ---------------------------------------------------------------------------
// Layer assignment
// ---------------------------------------------------------------------------

/// The maximum complete family together with the per-receiver layer map.
#[derive(Clone, Debug)]
pub struct CompleteSetFamily {
    k_family: Vec<ReceiverSet>,
    layer: [ReceiverSet; 3],
}

impl CompleteSetFamily {
    /// Maximum complete sets in mask order.
    pub fn sets(&self) -> &[ReceiverSet] {
        &self.k_family
    }

    /// The set assigned to layer `l` (1-based). Layer l always contains
    /// receiver l.
    pub fn layer(&self, l: usize) -> ReceiverSet {
        assert!((1..=3).contains(&l), "layer index {l} out of range");
        self.layer[l - 1]
    }
}

/// Assigns to each receiver l the maximum complete set containing l that
/// minimizes `min(K) + max(K)`.
///
/// Every receiver lies in at least one maximum complete set (its singleton is
/// complete), and among maximum complete sets containing a fixed receiver the
/// score `min + max` never ties: two distinct pairs through l would need the
/// same partner, and a triple excludes all other members of the family. The
/// uniqueness is asserted.
pub fn layer_assignment(a: &RoutingMatrix) -> CompleteSetFamily {
    let k_family = maximum_complete_sets(a);
    let mut layer = [ReceiverSet::EMPTY; 3];
    for l in RECEIVERS {
        let mut best: Option<(usize, ReceiverSet)> = None;
        let mut tie = false;
        for &k in k_family.iter().filter(|k| k.contains(l)) {
            let score = k.smallest().unwrap() + k.largest().unwrap();
            match best {
                None => best = Some((score, k)),
                Some((s, _)) if score < s => {
                    best = Some((score, k));
                    tie = false;
                }
                Some((s, _)) if score == s => tie = true,
                Some(_) => {}
            }
        }
        let (_, k) = best.expect("every receiver lies in a maximum complete set");
        assert!(!tie, "layer score tied for receiver {l}; assignment ambiguous");
        layer[l - 1] = k;
    }
    CompleteSetFamily { k_family, layer }
}

// ---------------------------------------------------------------------------
// Weaker sets and degraded sequences
// ---------------------------------------------------------------------------

/// True when `v1` is a weaker set than `v2`: every member of `v1` has a
/// strictly larger label than every member of `v2` (hence more noise), and no
/// member of `v1` holds the message of any member of `v2`. Both sets must be
/// nonempty.
pub fn is_weaker(a: &RoutingMatrix, v1: ReceiverSet, v2: ReceiverSet) -> bool {
    let (Some(min1), Some(max2)) = (v1.smallest(), v2.largest()) else {
        return false;
    };
    if min1 <= max2 {
        return false;
    }
    v1.iter().all(|i| v2.iter().all(|j| !a.knows(i, j)))
}

/// How the weaker-set condition is applied along a chain of groups.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum WeaknessScope {
    #[default]
    /// Each group must be weaker than *every* earlier group. This is the
    /// default: it is the condition under which the converse argument can
    /// strip earlier groups' messages from a later receiver's side
    /// information, so only this reading yields a true outer bound. (Label
    /// monotonicity chains on its own; the no-knowledge condition does not.)
    AllPredecessors,
    /// Each group must be weaker than its immediate predecessor only. Kept
    /// for sensitivity analysis; with this reading a receiver may still hold
    /// a message from two groups back, and the resulting "bound" can exclude
    /// plainly achievable rate points.
    ImmediatePredecessor,
}

/// An ordered chain of disjoint, acyclic, nonempty receiver groups, each
/// weaker than the groups before it (per the chosen [`WeaknessScope`]).
/// Chains of length 1 are allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegradedSequence {
    sets: Vec<ReceiverSet>,
}

impl DegradedSequence {
    /// Validates a candidate chain under `scope`.
    pub fn new(
        a: &RoutingMatrix,
        sets: Vec<ReceiverSet>,
        scope: WeaknessScope,
    ) -> Result<DegradedSequence> {
        if sets.is_empty() {
            return Err(Error::InvalidSequence("no groups".into()));
        }
        for (idx, &v) in sets.iter().enumerate() {
            if v.is_empty() || !is_acyclic(a, v) {
                return Err(Error::InvalidSequence(format!(
                    "group {v} is empty or cyclic"
                )));
            }
            let predecessors: &[ReceiverSet] = match scope {
                WeaknessScope::AllPredecessors => &sets[..idx],
                WeaknessScope::ImmediatePredecessor => &sets[idx.saturating_sub(1)..idx],
            };
            for &p in predecessors {
                if !is_weaker(a, v, p) {
                    return Err(Error::InvalidSequence(format!(
                        "group {v} is not weaker than {p}"
                    )));
                }
            }
        }
        Ok(DegradedSequence { sets })
    }

    pub fn groups(&self) -> &[ReceiverSet] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Union of all groups.
    pub fn support(&self) -> ReceiverSet {
        self.sets
            .iter()
            .fold(ReceiverSet::EMPTY, |acc, &v| acc.union(v))
    }
}

impl fmt::Display for DegradedSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (idx, v) in self.sets.iter().enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// Enumerates every degraded sequence under `scope`, in depth-first order:
/// leading groups in mask order, each extension in mask order, every prefix
/// emitted before its extensions. Labels strictly increase along a chain, so
/// no chain has more than three groups.
pub fn degraded_sequences(a: &RoutingMatrix, scope: WeaknessScope) -> Vec<DegradedSequence> {
    let acyclic: Vec<ReceiverSet> = ReceiverSet::all_nonempty()
        .filter(|&v| is_acyclic(a, v))
        .collect();
    let mut out = Vec::new();
    let mut chain: Vec<ReceiverSet> = Vec::new();

    fn extend(
        a: &RoutingMatrix,
        scope: WeaknessScope,
        acyclic: &[ReceiverSet],
        chain: &mut Vec<ReceiverSet>,
        out: &mut Vec<DegradedSequence>,
    ) {
        for &v in acyclic {
            let admissible = match scope {
                WeaknessScope::AllPredecessors => chain.iter().all(|&p| is_weaker(a, v, p)),
                WeaknessScope::ImmediatePredecessor => {
                    chain.last().is_none_or(|&p| is_weaker(a, v, p))
                }
            };
            if !admissible {
                continue;
            }
            chain.push(v);
            out.push(DegradedSequence { sets: chain.clone() });
            extend(a, scope, acyclic, chain, out);
            chain.pop();
        }
    }

    extend(a, scope, &acyclic, &mut chain, &mut out);
    out
}

// ---------------------------------------------------------------------------
// Decoding constraints from side information
// ---------------------------------------------------------------------------

/// The largest total rate of messages that receiver `i` must disambiguate
/// when every message bundle is network-coded: the maximum over acyclic sets
/// `V` of the rates of members of `V` whose messages receiver `i` does not
/// already hold.
pub fn max_uncertainty_rate(a: &RoutingMatrix, i: usize, rates: [f64; 3]) -> f64 {
    assert!((1..=3).contains(&i), "receiver label {i} out of range");
    let mut best = 0.0f64;
    for v in ReceiverSet::all_nonempty() {
        if !is_acyclic(a, v) {
            continue;
        }
        let sum: f64 = v
            .iter()
            .filter(|&j| !a.knows(i, j))
            .map(|j| rates[j - 1])
            .sum();
        best = best.max(sum);
    }
    best
}

// ---------------------------------------------------------------------------
// Tightness classification
// ---------------------------------------------------------------------------

/// Structural families of configurations whose inner and outer bounds
/// provably coincide. `Open` means no such proof applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TightnessCase {
    /// The maximum complete family is the single set {1,2,3}.
    CompleteTriple,
    /// Two maximum complete pairs share a receiver, and both outer receivers
    /// hold the shared receiver's message.
    LinkedPairs,
    /// A maximum complete pair plus a singleton other than {2}.
    PairAndSingleton,
    /// Three singletons: no receiver holds a weaker receiver's message.
    ThreeSingletons,
    /// No tightness proof applies; the bounds may differ.
    Open,
}

impl fmt::Display for TightnessCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TightnessCase::CompleteTriple => "complete_triple",
            TightnessCase::LinkedPairs => "linked_pairs",
            TightnessCase::PairAndSingleton => "pair_and_singleton",
            TightnessCase::ThreeSingletons => "three_singletons",
            TightnessCase::Open => "open",
        })
    }
}

/// Outcome of [`tightness_classify`]: the matched case and the maximum
/// complete family it was matched against.
#[derive(Clone, Debug, serde::Serialize)]
pub struct TightnessVerdict {
    pub case: TightnessCase,
    pub k_family: Vec<ReceiverSet>,
}

impl TightnessVerdict {
    pub fn is_tight(&self) -> bool {
        self.case != TightnessCase::Open
    }
}

/// Classifies a configuration by the shape of its maximum complete family.
pub fn tightness_classify(a: &RoutingMatrix) -> TightnessVerdict {
    let k_family = maximum_complete_sets(a);
    let case = match k_family.as_slice() {
        [v] if *v == ReceiverSet::ALL => TightnessCase::CompleteTriple,
        [v1, v2] if v1.len() == 2 && v2.len() == 2 => {
            let shared = v1.intersection(*v2);
            debug_assert_eq!(shared.len(), 1, "two maximal pairs must overlap");
            let s = shared.smallest().unwrap();
            let outers = v1.union(*v2).iter().filter(|&r| r != s).collect::<Vec<_>>();
            if outers.iter().all(|&o| a.knows(o, s)) {
                TightnessCase::LinkedPairs
            } else {
                TightnessCase::Open
            }
        }
        [v1, v2] => {
            // One pair and one singleton, in either mask order.
            let single = if v1.len() == 1 { *v1 } else { *v2 };
            if single.smallest().unwrap() != 2 {
                TightnessCase::PairAndSingleton
            } else {
                TightnessCase::Open
            }
        }
        [_, _, _] => TightnessCase::ThreeSingletons,
        other => unreachable!("impossible maximum complete family {other:?}"),
    };
    TightnessVerdict { case, k_family }
}

// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;

    fn all_configs() -> impl Iterator<Item = RoutingMatrix> {
        (0u8..64).map(|id| RoutingMatrix::from_id(id).unwrap())
    }

    // Brute-force cycle oracle: enumerate every ordering of every subset of v
    // and look for a closed tour along "knows" edges.
    fn has_cyclic_tour(a: &RoutingMatrix, v: ReceiverSet) -> bool {
        fn perms(items: &[usize]) -> Vec<Vec<usize>> {
            if items.len() <= 1 {
                return vec![items.to_vec()];
            }
            let mut out = Vec::new();
            for (idx, &head) in items.iter().enumerate() {
                let mut rest = items.to_vec();
                rest.remove(idx);
                for mut tail in perms(&rest) {
                    tail.insert(0, head);
                    out.push(tail);
                }
            }
            out
        }
        let members: Vec<usize> = v.iter().collect();
        for mask in 1u8..8 {
            let sub = ReceiverSet::from_mask(mask);
            if !sub.is_subset_of(v) || sub.len() < 2 {
                continue;
            }
            let subset: Vec<usize> = members
                .iter()
                .copied()
                .filter(|&r| sub.contains(r))
                .collect();
            for order in perms(&subset) {
                let closed = order
                    .iter()
                    .zip(order.iter().cycle().skip(1))
                    .all(|(&x, &y)| a.knows(x, y));
                if closed {
                    return true;
                }
            }
        }
        false
    }

    #[test]
    fn id_round_trip_and_bit_order() {
        for id in 0u8..64 {
            let a = RoutingMatrix::from_id(id).unwrap();
            assert_eq!(a.id(), id);
            assert_eq!(RoutingMatrix::from_bit_string(&a.bit_string()).unwrap().id(), id);
        }
        // Bit 0 is a_12, bit 5 is a_32.
        let a = RoutingMatrix::from_id(1).unwrap();
        assert!(a.knows(1, 2) && !a.knows(2, 1));
        let a = RoutingMatrix::from_id(32).unwrap();
        assert!(a.knows(3, 2) && !a.knows(2, 3));
        let full = RoutingMatrix::from_id(63).unwrap();
        for i in RECEIVERS {
            for j in RECEIVERS {
                assert_eq!(full.knows(i, j), i != j);
            }
        }
    }

    #[test]
    fn matrix_validation() {
        assert!(RoutingMatrix::new([[0, 1, 0], [0, 0, 0], [1, 0, 0]]).is_ok());
        assert!(RoutingMatrix::new([[1, 0, 0], [0, 0, 0], [0, 0, 0]]).is_err());
        assert!(RoutingMatrix::new([[0, 2, 0], [0, 0, 0], [0, 0, 0]]).is_err());
        assert!(RoutingMatrix::from_id(64).is_err());
        assert!(RoutingMatrix::from_bit_string("10100").is_err());
        assert_eq!(RoutingMatrix::parse("18").unwrap().id(), 18);
        assert_eq!(RoutingMatrix::parse("010010").unwrap().id(), 18);
        assert!(RoutingMatrix::parse("seven").is_err());
    }

    #[test]
    fn acyclicity_matches_tour_oracle_on_all_configs() {
        for a in all_configs() {
            for v in ReceiverSet::all() {
                assert_eq!(
                    is_acyclic(&a, v),
                    !has_cyclic_tour(&a, v),
                    "config {} set {v}",
                    a.id()
                );
            }
        }
    }

    #[test]
    fn acyclic_family_under_full_knowledge() {
        // Mutual knowledge everywhere: every pair is a 2-cycle, so only the
        // empty set and singletons survive.
        let a = RoutingMatrix::from_id(63).unwrap();
        let family = acyclic_family(&a);
        assert_eq!(
            family,
            vec![
                ReceiverSet::EMPTY,
                ReceiverSet::singleton(1),
                ReceiverSet::singleton(2),
                ReceiverSet::singleton(3),
            ]
        );
    }

    #[test]
    fn completeness_examples() {
        // a_21 = 1 makes {1,2} complete; {1,3} needs a_31.
        let a = RoutingMatrix::from_id(4).unwrap();
        assert!(is_complete(&a, ReceiverSet::from_slice(&[1, 2])));
        assert!(!is_complete(&a, ReceiverSet::from_slice(&[1, 3])));
        assert!(is_complete(&a, ReceiverSet::singleton(3)));
        assert!(is_complete(&a, ReceiverSet::EMPTY));
        // The triple needs all three lower-triangular entries.
        let full_lower = RoutingMatrix::new([[0, 0, 0], [1, 0, 0], [1, 1, 0]]).unwrap();
        assert!(is_complete(&full_lower, ReceiverSet::ALL));
    }

    #[test]
    fn maximum_complete_families_by_lower_triangle() {
        let fam = |entries: [[u8; 3]; 3]| {
            maximum_complete_sets(&RoutingMatrix::new(entries).unwrap())
                .iter()
                .map(|v| format!("{v}"))
                .collect::<Vec<_>>()
        };
        assert_eq!(fam([[0, 0, 0], [0, 0, 0], [0, 0, 0]]), ["{1}", "{2}", "{3}"]);
        assert_eq!(fam([[0, 0, 0], [1, 0, 0], [0, 0, 0]]), ["{1,2}", "{3}"]);
        assert_eq!(fam([[0, 0, 0], [0, 0, 0], [1, 0, 0]]), ["{1,3}", "{2}"]);
        assert_eq!(fam([[0, 0, 0], [0, 0, 0], [0, 1, 0]]), ["{1}", "{2,3}"]);
        assert_eq!(fam([[0, 0, 0], [1, 0, 0], [1, 0, 0]]), ["{1,2}", "{1,3}"]);
        assert_eq!(fam([[0, 0, 0], [1, 0, 0], [0, 1, 0]]), ["{1,2}", "{2,3}"]);
        assert_eq!(fam([[0, 0, 0], [0, 0, 0], [1, 1, 0]]), ["{1,3}", "{2,3}"]);
        assert_eq!(fam([[0, 0, 0], [1, 0, 0], [1, 1, 0]]), ["{1,2,3}"]);
        // Upper-triangular entries never matter for completeness.
        assert_eq!(fam([[0, 1, 1], [1, 0, 1], [1, 1, 0]]), ["{1,2,3}"]);
    }

    #[test]
    fn layer_assignment_examples() {
        // Two pairs through receiver 1: layer 3 is the only place {1,3} fits.
        let a = RoutingMatrix::new([[0, 0, 0], [1, 0, 0], [1, 0, 0]]).unwrap();
        let fam = layer_assignment(&a);
        assert_eq!(format!("{}", fam.layer(1)), "{1,2}");
        assert_eq!(format!("{}", fam.layer(2)), "{1,2}");
        assert_eq!(format!("{}", fam.layer(3)), "{1,3}");

        // Pair {1,3} plus singleton {2}.
        let a = RoutingMatrix::from_id(16).unwrap();
        let fam = layer_assignment(&a);
        assert_eq!(format!("{}", fam.layer(1)), "{1,3}");
        assert_eq!(format!("{}", fam.layer(2)), "{2}");
        assert_eq!(format!("{}", fam.layer(3)), "{1,3}");

        // Two pairs through receiver 3: layers 1 and 3 share {1,3}.
        let a = RoutingMatrix::new([[0, 0, 0], [0, 0, 0], [1, 1, 0]]).unwrap();
        let fam = layer_assignment(&a);
        assert_eq!(format!("{}", fam.layer(1)), "{1,3}");
        assert_eq!(format!("{}", fam.layer(2)), "{2,3}");
        assert_eq!(format!("{}", fam.layer(3)), "{1,3}");
    }

    #[test]
    fn layer_assignment_is_defined_and_self_containing_everywhere() {
        for a in all_configs() {
            let fam = layer_assignment(&a); // asserts uniqueness internally
            for l in RECEIVERS {
                assert!(fam.layer(l).contains(l), "config {}", a.id());
                assert!(fam.sets().contains(&fam.layer(l)));
            }
        }
    }

    #[test]
    fn weaker_set_examples() {
        let a = RoutingMatrix::from_id(0).unwrap();
        let s = ReceiverSet::from_slice(&[3]);
        let v = ReceiverSet::from_slice(&[1, 2]);
        assert!(is_weaker(&a, s, v));
        assert!(!is_weaker(&a, v, s), "labels must strictly increase");

        // Knowledge from the later group blocks the relation.
        let a = RoutingMatrix::from_id(16).unwrap(); // a_31 = 1
        assert!(!is_weaker(&a, s, v));
        assert!(is_weaker(&a, s, ReceiverSet::singleton(2)));
    }

    // Brute-force chain oracle: every sequence over nonempty acyclic sets of
    // length <= 3, filtered by the definition applied literally.
    fn chains_oracle(a: &RoutingMatrix, scope: WeaknessScope) -> Vec<Vec<ReceiverSet>> {
        let sets: Vec<ReceiverSet> = ReceiverSet::all_nonempty()
            .filter(|&v| is_acyclic(a, v))
            .collect();
        let mut out = Vec::new();
        let valid = |chain: &[ReceiverSet]| -> bool {
            for (idx, &v) in chain.iter().enumerate() {
                let preds: &[ReceiverSet] = match scope {
                    WeaknessScope::AllPredecessors => &chain[..idx],
                    WeaknessScope::ImmediatePredecessor => &chain[idx.saturating_sub(1)..idx],
                };
                if !preds.iter().all(|&p| is_weaker(a, v, p)) {
                    return false;
                }
            }
            true
        };
        for &x in &sets {
            if valid(&[x]) {
                out.push(vec![x]);
            }
            for &y in &sets {
                if valid(&[x, y]) {
                    out.push(vec![x, y]);
                }
                for &z in &sets {
                    if valid(&[x, y, z]) {
                        out.push(vec![x, y, z]);
                    }
                }
            }
        }
        out
    }

    #[test]
    fn degraded_sequences_match_brute_force_on_all_configs() {
        for a in all_configs() {
            for scope in [WeaknessScope::AllPredecessors, WeaknessScope::ImmediatePredecessor] {
                let mut got: Vec<Vec<ReceiverSet>> = degraded_sequences(&a, scope)
                    .into_iter()
                    .map(|s| s.groups().to_vec())
                    .collect();
                let mut want = chains_oracle(&a, scope);
                got.sort();
                want.sort();
                assert_eq!(got, want, "config {} scope {scope:?}", a.id());
            }
        }
    }

    #[test]
    fn degraded_sequence_examples() {
        let text = |a: &RoutingMatrix, scope| {
            degraded_sequences(a, scope)
                .iter()
                .map(|s| format!("{s}"))
                .collect::<Vec<_>>()
        };

        // No side information: the classical three-group chain is present.
        let a = RoutingMatrix::from_id(0).unwrap();
        let all = text(&a, WeaknessScope::AllPredecessors);
        assert!(all.contains(&"({1},{2},{3})".to_string()));
        assert!(all.contains(&"({1,2},{3})".to_string()));

        // Full mutual knowledge: only single-group chains survive, and the
        // only acyclic sets are singletons.
        let a = RoutingMatrix::from_id(63).unwrap();
        assert_eq!(text(&a, WeaknessScope::AllPredecessors), ["({1})", "({2})", "({3})"]);

        // a_31 = 1: ({1,2},{3}) is blocked, ({2},{3}) survives; the two
        // readings differ on ({1},{2},{3}).
        let a = RoutingMatrix::from_id(16).unwrap();
        let strict = text(&a, WeaknessScope::AllPredecessors);
        assert!(!strict.contains(&"({1,2},{3})".to_string()));
        assert!(strict.contains(&"({2},{3})".to_string()));
        assert!(!strict.contains(&"({1},{2},{3})".to_string()));
        let pairwise = text(&a, WeaknessScope::ImmediatePredecessor);
        assert!(pairwise.contains(&"({1},{2},{3})".to_string()));
    }

    #[test]
    fn degraded_sequence_constructor_validates() {
        let a = RoutingMatrix::from_id(16).unwrap();
        let chain = vec![
            ReceiverSet::singleton(1),
            ReceiverSet::singleton(2),
            ReceiverSet::singleton(3),
        ];
        assert!(DegradedSequence::new(&a, chain.clone(), WeaknessScope::AllPredecessors).is_err());
        assert!(DegradedSequence::new(&a, chain, WeaknessScope::ImmediatePredecessor).is_ok());
    }

    #[test]
    fn uncertainty_rate_examples() {
        // Receivers 1 and 2 know each other's messages; receiver 3 knows
        // nothing, so it faces {3} together with the larger of the pair.
        let a = RoutingMatrix::new([[0, 1, 0], [1, 0, 0], [0, 0, 0]]).unwrap();
        let r = [0.8, 0.3, 0.5];
        let got = max_uncertainty_rate(&a, 3, r);
        assert!((got - (0.5 + 0.8)).abs() < 1e-12);

        // Full knowledge: receiver 1 only ever faces its own message.
        let a = RoutingMatrix::from_id(63).unwrap();
        let got = max_uncertainty_rate(&a, 1, r);
        assert!((got - 0.8).abs() < 1e-12);
    }

    #[test]
    fn tightness_census_is_46_of_64() {
        let mut tight = 0;
        for a in all_configs() {
            if tightness_classify(&a).is_tight() {
                tight += 1;
            }
        }
        assert_eq!(tight, 46);
    }

    #[test]
    fn tightness_case_examples() {
        let case = |id: u8| tightness_classify(&RoutingMatrix::from_id(id).unwrap()).case;
        assert_eq!(case(0), TightnessCase::ThreeSingletons);
        assert_eq!(case(63), TightnessCase::CompleteTriple);
        // Pair {1,3} + singleton {2}: the singleton is receiver 2, open.
        assert_eq!(case(16), TightnessCase::Open);
        assert_eq!(case(18), TightnessCase::Open);
        // Pair {1,2} + singleton {3}.
        assert_eq!(case(4), TightnessCase::PairAndSingleton);
        // Pairs {1,2} and {1,3} share receiver 1; both outers know message 1
        // by construction of the family.
        assert_eq!(case(4 + 16), TightnessCase::LinkedPairs);
        // Pairs {1,2} and {2,3} share receiver 2; receiver 1 must know
        // message 2 for the linked case.
        assert_eq!(case(4 + 32), TightnessCase::Open);
        assert_eq!(case(4 + 32 + 1), TightnessCase::LinkedPairs);
    }

    #[test]
    fn linked_pairs_census_matches_hand_count() {
        // Hand count over the lower triangle: pairs through receiver 1 are
        // always linked (8), pairs through receiver 2 need a_12 (4), pairs
        // through receiver 3 need a_13 and a_23 (2).
        let mut linked = 0;
        for a in all_configs() {
            if tightness_classify(&a).case == TightnessCase::LinkedPairs {
                linked += 1;
            }
        }
        assert_eq!(linked, 14);
    }
}
