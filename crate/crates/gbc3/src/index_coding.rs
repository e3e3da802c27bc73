//! Message-level index coding against receiver side information.
//!
//! The layered scheme does not send each receiver's message in its own
//! bundle: when messages are mutually known it XORs them (here: adds them
//! modulo the larger alphabet) so one index serves several receivers at
//! once, each peeling the combination apart with the messages it already
//! holds. This module implements those index maps exactly, over arbitrary
//! finite alphabets, together with side-information-assisted recovery.
//!
//! Two shapes arise. When some pair of receivers know *each other's*
//! messages ([`IndexCase::MutualPair`]), their two messages share one
//! residue modulo `max(L_i, L_j)` and the third message selects the block.
//! Otherwise ([`IndexCase::Distinct`]) the three messages are packed in
//! mixed radix and the index is a bijection.
//!
//! Messages are 0-based throughout: alphabet `k` is `{0, .., L_k - 1}`.

use crate::config::{max_uncertainty_rate, RoutingMatrix};
use crate::error::{Error, Result};
use crate::geometry::RateTuple;

/// Which index map a configuration admits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndexCase {
    /// Receivers `first < second` know each other's messages, so those two
    /// messages ride in a single residue.
    MutualPair { first: usize, second: usize },
    /// No mutually-known pair; all three messages are packed separately.
    Distinct,
}

/// Picks the index map for `a`: the first mutually-known pair in the order
/// (1,2), (1,3), (2,3), or [`IndexCase::Distinct`] when there is none.
pub fn index_case_for(a: &RoutingMatrix) -> IndexCase {
    for (i, j) in [(1, 2), (1, 3), (2, 3)] {
        if a.knows(i, j) && a.knows(j, i) {
            return IndexCase::MutualPair { first: i, second: j };
        }
    }
    IndexCase::Distinct
}

/// Three message alphabets together with the index map in force.
#[derive(Clone, Debug)]
pub struct MessageSpace {
    sizes: [u64; 3],
    case: IndexCase,
}

impl MessageSpace {
    /// Validates alphabet sizes (positive, product representable) for an
    /// explicitly chosen case.
    pub fn new(sizes: [u64; 3], case: IndexCase) -> Result<MessageSpace> {
        if sizes.contains(&0) {
            return Err(Error::InvalidMessageSizes(format!(
                "sizes {sizes:?} must all be positive"
            )));
        }
        if let IndexCase::MutualPair { first, second } = case {
            if !(1..=3).contains(&first) || !(1..=3).contains(&second) || first >= second {
                return Err(Error::InvalidMessageSizes(format!(
                    "mutual pair ({first},{second}) is not an ordered receiver pair"
                )));
            }
        }
        let space = MessageSpace { sizes, case };
        if space.checked_count().is_none() {
            return Err(Error::InvalidMessageSizes(format!(
                "subcodebook count for sizes {sizes:?} overflows"
            )));
        }
        Ok(space)
    }

    /// Builds the space with the case dictated by configuration `a`.
    pub fn for_config(a: &RoutingMatrix, sizes: [u64; 3]) -> Result<MessageSpace> {
        MessageSpace::new(sizes, index_case_for(a))
    }

    pub fn sizes(&self) -> [u64; 3] {
        self.sizes
    }

    pub fn case(&self) -> IndexCase {
        self.case
    }

    fn size(&self, receiver: usize) -> u64 {
        self.sizes[receiver - 1]
    }

    /// Modulus shared by a mutual pair: the larger of their alphabets.
    fn pair_modulus(&self, first: usize, second: usize) -> u64 {
        self.size(first).max(self.size(second))
    }

    fn checked_count(&self) -> Option<u64> {
        match self.case {
            IndexCase::MutualPair { first, second } => {
                let outsider = 6 - first - second;
                self.size(outsider)
                    .checked_mul(self.pair_modulus(first, second))
            }
            IndexCase::Distinct => self.sizes[0]
                .checked_mul(self.sizes[1])
                .and_then(|p| p.checked_mul(self.sizes[2])),
        }
    }

    /// Number of distinct index values the map can emit. The mutual-pair map
    /// collapses the pair to one residue, so this is smaller than the tuple
    /// count whenever both pair alphabets exceed 1.
    pub fn subcodebook_count(&self) -> u64 {
        self.checked_count()
            .expect("count validated at construction")
    }

    fn check_message(&self, receiver: usize, value: u64) -> Result<()> {
        if value >= self.size(receiver) {
            return Err(Error::MessageOutOfRange {
                receiver,
                value,
                size: self.size(receiver),
            });
        }
        Ok(())
    }

    /// Broadcast index of the message tuple `w` (one entry per receiver, in
    /// label order).
    ///
    /// Mutual pair `(i, j)` with outsider `o` and modulus `L = max(L_i, L_j)`:
    ///
    /// ```text
    /// k = w_o * L + ((w_i + w_j) mod L)
    /// ```
    ///
    /// Distinct: mixed radix, least-significant digit first:
    ///
    /// ```text
    /// k = w_3 * L_1 * L_2 + w_2 * L_1 + w_1
    /// ```
    pub fn index(&self, w: [u64; 3]) -> Result<u64> {
        for receiver in 1..=3 {
            self.check_message(receiver, w[receiver - 1])?;
        }
        Ok(match self.case {
            IndexCase::MutualPair { first, second } => {
                let outsider = 6 - first - second;
                let l = self.pair_modulus(first, second);
                w[outsider - 1] * l + (w[first - 1] + w[second - 1]) % l
            }
            IndexCase::Distinct => {
                w[2] * self.sizes[0] * self.sizes[1] + w[1] * self.sizes[0] + w[0]
            }
        })
    }

    /// What `receiver` must already know to invert `index`: the other pair
    /// member's message in the mutual-pair case, nothing otherwise.
    pub fn required_side_information(&self, receiver: usize) -> Option<usize> {
        match self.case {
            IndexCase::MutualPair { first, second } if receiver == first => Some(second),
            IndexCase::MutualPair { first, second } if receiver == second => Some(first),
            _ => None,
        }
    }

    /// Recovers `receiver`'s own message from the broadcast index `k`.
    ///
    /// `side[r - 1]` carries receiver `r`'s message when the caller knows
    /// it. Only the entry named by [`required_side_information`] is read; a
    /// missing required entry is an error, as is any input inconsistent with
    /// the alphabets (the map never emits such an index).
    ///
    /// [`required_side_information`]: MessageSpace::required_side_information
    pub fn recover(&self, receiver: usize, k: u64, side: [Option<u64>; 3]) -> Result<u64> {
        if !(1..=3).contains(&receiver) {
            return Err(Error::InvalidReceiver(receiver));
        }
        if k >= self.subcodebook_count() {
            return Err(Error::IndexOutOfRange {
                value: k,
                count: self.subcodebook_count(),
            });
        }
        let own = match self.case {
            IndexCase::MutualPair { first, second } => {
                let outsider = 6 - first - second;
                let l = self.pair_modulus(first, second);
                if receiver == outsider {
                    k / l
                } else {
                    let partner = if receiver == first { second } else { first };
                    let held = side[partner - 1].ok_or(Error::MissingSideInformation {
                        receiver,
                        missing: partner,
                    })?;
                    self.check_message(partner, held)?;
                    (k % l + l - held % l) % l
                }
            }
            IndexCase::Distinct => match receiver {
                1 => k % self.sizes[0],
                2 => k / self.sizes[0] % self.sizes[1],
                _ => k / (self.sizes[0] * self.sizes[1]),
            },
        };
        self.check_message(receiver, own)?;
        Ok(own)
    }
}

/// Whether receiver `i` can decode its layer against the worst-case residual
/// message uncertainty: the largest acyclic ensemble of unknown messages must
/// fit inside the receiver's decoding capacity `c_i` for that layer.
pub fn gp_rate_check(a: &RoutingMatrix, i: usize, rates: RateTuple, c_i: f64) -> bool {
    max_uncertainty_rate(a, i, [rates.rate(1), rates.rate(2), rates.rate(3)]) <= c_i
}
