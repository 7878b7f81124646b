//! Coalitions as bitmasks: bit `i` set means player `i` belongs to the coalition.

use std::fmt;

use crate::error::{Error, Result};

/// Widest player set a [`Coalition`] can address.
pub const MAX_PLAYERS: usize = u64::BITS as usize;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Coalition {
    bits: u64,
    n: u8,
}

impl Coalition {
    pub fn new(bits: u64, n: usize) -> Result<Self> {
        check_n(n)?;
        if n < MAX_PLAYERS && bits >> n != 0 {
            return Err(Error::InvalidCoalition(format!(
                "bitmask {bits:#b} names players outside 0..{n}"
            )));
        }
        Ok(Coalition { bits, n: n as u8 })
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::new(0, n)
    }

    pub fn grand(n: usize) -> Result<Self> {
        check_n(n)?;
        Ok(Coalition {
            bits: full_mask(n),
            n: n as u8,
        })
    }

    /// Builds a coalition from 0-based player indices. Duplicates are tolerated.
    pub fn from_players(players: &[usize], n: usize) -> Result<Self> {
        check_n(n)?;
        let mut bits = 0u64;
        for &p in players {
            if p >= n {
                return Err(Error::InvalidCoalition(format!(
                    "player {p} out of range for {n} players"
                )));
            }
            bits |= 1 << p;
        }
        Ok(Coalition { bits, n: n as u8 })
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn n(self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    #[inline]
    pub fn contains(self, player: usize) -> bool {
        player < self.n() && self.bits >> player & 1 == 1
    }

    /// Players in increasing index order.
    pub fn players(self) -> impl Iterator<Item = usize> {
        let mut rest = self.bits;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let p = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(p)
            }
        })
    }

    pub fn complement(self) -> Self {
        Coalition {
            bits: full_mask(self.n()) & !self.bits,
            n: self.n,
        }
    }
}

impl fmt::Debug for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.players()).finish()
    }
}

impl fmt::Display for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, p) in self.players().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

/// Mask with the low `n` bits set.
#[inline]
pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= MAX_PLAYERS {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidCoalition("player count must be positive".into()));
    }
    if n > MAX_PLAYERS {
        return Err(Error::guard("coalition width", MAX_PLAYERS, n));
    }
    Ok(())
}
