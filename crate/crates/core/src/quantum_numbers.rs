//! Relativistic quantum numbers.
//!
//! A channel is a pair `(l, j)` with `j = l ± 1/2` and `j ≥ 1/2`. The
//! azimuthal number `m` is never enumerated: every level is `m`-independent,
//! so sums carry the degeneracy `2j + 1` instead.

use std::fmt;

use crate::error::{Error, Result};

/// Angular-momentum channel `(l, j)`.
///
/// `j` is stored as `2j` so that the half-integer is exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChannelIndex {
    l: u32,
    twice_j: u32,
}

impl ChannelIndex {
    pub fn new(l: u32, twice_j: u32) -> Result<Self> {
        let valid = twice_j % 2 == 1 && (twice_j == 2 * l + 1 || twice_j + 1 == 2 * l);
        if valid {
            Ok(Self { l, twice_j })
        } else {
            Err(Error::InvalidChannel { l, twice_j })
        }
    }

    /// Channel `j = l + 1/2`.
    pub fn aligned(l: u32) -> Self {
        Self {
            l,
            twice_j: 2 * l + 1,
        }
    }

    /// Channel `j = l - 1/2`, absent for `l = 0`.
    pub fn anti_aligned(l: u32) -> Option<Self> {
        (l > 0).then(|| Self {
            l,
            twice_j: 2 * l - 1,
        })
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn twice_j(&self) -> u32 {
        self.twice_j
    }

    pub fn j(&self) -> f64 {
        f64::from(self.twice_j) / 2.0
    }

    /// `j + 1/2`, the integer `|κ|` of the Dirac-Coulomb problem.
    pub fn kappa_abs(&self) -> u32 {
        self.twice_j.div_ceil(2)
    }
}

impl fmt::Display for ChannelIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(l={}, j={}/2)", self.l, self.twice_j)
    }
}

/// Bound level `(n, l, j)` with radial quantum number `n ≥ 1`, so that
/// `n + l` is the principal quantum number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LevelIndex {
    n: u32,
    channel: ChannelIndex,
}

impl LevelIndex {
    pub fn new(n: u32, channel: ChannelIndex) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidRadialNumber(n));
        }
        Ok(Self { n, channel })
    }

    /// Shorthand for `LevelIndex::new(n, ChannelIndex::new(l, twice_j)?)`.
    pub fn from_numbers(n: u32, l: u32, twice_j: u32) -> Result<Self> {
        Self::new(n, ChannelIndex::new(l, twice_j)?)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn channel(&self) -> ChannelIndex {
        self.channel
    }

    pub fn l(&self) -> u32 {
        self.channel.l
    }

    /// Principal quantum number `n + l`.
    pub fn principal(&self) -> u64 {
        u64::from(self.n) + u64::from(self.channel.l)
    }
}

/// Channels of orbital momentum `l` in increasing `j`.
pub fn channels_for_l(l: u32) -> Vec<ChannelIndex> {
    ChannelIndex::anti_aligned(l)
        .into_iter()
        .chain(std::iter::once(ChannelIndex::aligned(l)))
        .collect()
}

/// Degeneracy `2j + 1` of every level in the channel.
pub fn dirac_degeneracy(c: ChannelIndex) -> u32 {
    c.twice_j + 1
}
