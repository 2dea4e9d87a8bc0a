//! Homogeneous subset extraction and per-trait code numbering.

use std::ops::RangeInclusive;

use crate::classify::matrices::{Separation, SeparationMatrix};
use crate::error::{Error, Result};

/// A maximal run of mean-ordered taxa that are mutually indistinguishable,
/// apart from flagged exceptional members. Indices are positions in mean
/// order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogeneousSubset {
    /// Row of the separation matrix that produced the subset; also its
    /// first member.
    pub anchor: usize,
    pub last: usize,
    /// Members whose pairing with the anchor was `Zero` (now `Gap`).
    pub exceptional: Vec<usize>,
}

impl HomogeneousSubset {
    pub fn members(&self) -> RangeInclusive<usize> {
        self.anchor..=self.last
    }

    pub fn contains(&self, position: usize) -> bool {
        self.members().contains(&position)
    }

    pub fn is_exceptional(&self, position: usize) -> bool {
        self.exceptional.contains(&position)
    }
}

/// Extracts the non-degenerate homogeneous subsets of a mean-ordered
/// separation matrix.
///
/// For each row `i` the columns are scanned from the last taxon back to
/// `i`; the first `One` fixes the subset's upper end. `Zero` entries met
/// after that, or lying inside the region already covered by an earlier
/// subset, are rewritten to `Gap` in `sep` and their taxa recorded as
/// exceptional. A subset whose upper end does not pass the highest end seen
/// so far is contained in an earlier one and is dropped.
///
/// `Gap` entries count neither as a match nor as a new exception.
pub fn identify_subsets(sep: &mut SeparationMatrix) -> Vec<HomogeneousSubset> {
    let size = sep.size();
    let mut highest: Option<usize> = None;
    let mut subsets = Vec::new();

    for i in 0..size {
        let mut upper: Option<usize> = None;
        let mut exceptional = Vec::new();
        for j in (i..size).rev() {
            let entry = sep.get(i, j);
            if upper.is_none() && entry == Separation::One {
                upper = Some(j);
            }
            let covered = upper.is_some() || highest.is_some_and(|h| j <= h);
            if entry == Separation::Zero && covered {
                exceptional.push(j);
                sep.set_pair(i, j, Separation::Gap);
            }
        }
        let Some(upper) = upper else { continue };
        if highest.is_some_and(|h| upper <= h) {
            continue;
        }
        highest = Some(upper);
        exceptional.sort_unstable();
        subsets.push(HomogeneousSubset {
            anchor: i,
            last: upper,
            exceptional,
        });
    }
    subsets
}

/// Code numbers for `size` mean-ordered taxa: a new number starts whenever
/// the set of subsets containing a taxon differs from its predecessor's.
pub fn assign_trait_codes(subsets: &[HomogeneousSubset], size: usize) -> Result<Vec<usize>> {
    let mut codes = Vec::with_capacity(size);
    let mut previous: Vec<usize> = Vec::new();
    let mut code: Option<usize> = None;
    for position in 0..size {
        let membership: Vec<usize> = subsets
            .iter()
            .enumerate()
            .filter(|(_, s)| s.contains(position))
            .map(|(h, _)| h)
            .collect();
        if membership.is_empty() {
            return Err(Error::Internal(format!(
                "taxon at mean position {position} belongs to no subset"
            )));
        }
        if membership != previous {
            code = Some(code.map_or(0, |c| c + 1));
        }
        codes.push(code.expect("set on first taxon"));
        previous = membership;
    }
    Ok(codes)
}

const SYMBOLS: &[u8; 62] = b"0123456789abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";

/// Maximum number of states a single character can take.
pub const MAX_STATES: usize = SYMBOLS.len();

/// Single-character symbol for a code number: digits, then lowercase, then
/// uppercase letters.
pub fn encode_symbol(code: usize) -> Result<char> {
    SYMBOLS
        .get(code)
        .map(|&b| b as char)
        .ok_or(Error::TooManyStates { code })
}

/// Inverse of [`encode_symbol`].
pub fn decode_symbol(symbol: char) -> Option<usize> {
    SYMBOLS.iter().position(|&b| b as char == symbol)
}
