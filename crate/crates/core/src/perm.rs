//! Permutations in one-line notation, alternating runs, and the complement
//! operations that the `c_i` transformations are built from.
//!
//! Positions are 1-indexed everywhere in the public API.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest supported permutation length. Keeps every coefficient of `R_n`
/// below `20! < 2^62` and every entry inside a `u8`.
pub const MAX_N: usize = 20;

/// A permutation of `1..=n` in one-line notation, `1 <= n <= MAX_N`.
///
/// Stored inline so that it is `Copy` and can be passed around by value in
/// the enumeration loops.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Permutation {
    len: u8,
    entries: [u8; MAX_N],
}

/// Number of alternating runs: one more than the number of direction changes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RunCount(u32);

impl RunCount {
    pub fn get(self) -> u32 {
        self.0
    }
}

impl fmt::Display for RunCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<RunCount> for u32 {
    fn from(r: RunCount) -> u32 {
        r.0
    }
}

impl Permutation {
    /// Validates `entries` as a permutation of `1..=entries.len()`.
    pub fn new(entries: &[u8]) -> Result<Self> {
        Self::from_values(entries.iter().map(|&v| u64::from(v)))
    }

    /// Same as [`Permutation::new`], for wider integer input (parsers).
    pub fn from_values<I>(values: I) -> Result<Self>
    where
        I: IntoIterator<Item = u64>,
        I::IntoIter: ExactSizeIterator,
    {
        let values = values.into_iter();
        let n = values.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        if n > MAX_N {
            return Err(Error::TooLong { n, cap: MAX_N });
        }
        let mut seen = [false; MAX_N + 1];
        let mut entries = [0u8; MAX_N];
        for (slot, v) in entries.iter_mut().zip(values) {
            if v == 0 || v > n as u64 {
                return Err(Error::OutOfRange { value: v, n });
            }
            if seen[v as usize] {
                return Err(Error::Duplicate(v));
            }
            seen[v as usize] = true;
            *slot = v as u8;
        }
        Ok(Permutation {
            len: n as u8,
            entries,
        })
    }

    /// `1 2 ... n`.
    pub fn identity(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty);
        }
        if n > MAX_N {
            return Err(Error::TooLong { n, cap: MAX_N });
        }
        let mut entries = [0u8; MAX_N];
        for (i, e) in entries.iter_mut().take(n).enumerate() {
            *e = i as u8 + 1;
        }
        Ok(Permutation {
            len: n as u8,
            entries,
        })
    }

    /// Caller guarantees `entries` is a valid permutation.
    pub(crate) fn from_valid(entries: &[u8]) -> Self {
        debug_assert!(Self::new(entries).is_ok());
        let mut buf = [0u8; MAX_N];
        buf[..entries.len()].copy_from_slice(entries);
        Permutation {
            len: entries.len() as u8,
            entries: buf,
        }
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries[..self.len as usize]
    }

    pub(crate) fn entries_mut(&mut self) -> &mut [u8] {
        &mut self.entries[..self.len as usize]
    }

    /// Entry at 1-indexed position `i`.
    pub fn get(&self, i: usize) -> Option<u8> {
        if i == 0 {
            return None;
        }
        self.entries().get(i - 1).copied()
    }

    pub fn run_count(&self) -> RunCount {
        RunCount(count_runs(self.entries()))
    }

    /// Entry `p_i` becomes `n + 1 - p_i`.
    pub fn complement(&self) -> Permutation {
        let mut out = *self;
        let top = self.len + 1;
        for e in out.entries_mut() {
            *e = top - *e;
        }
        out
    }

    /// `c_i`: keep `p_1 .. p_{i-1}`, replace `p_i .. p_n` by its complement
    /// relative to its own set of values.
    pub fn apply_c(&self, i: usize) -> Result<Permutation> {
        self.check_position(i)?;
        let mut out = *self;
        complement_suffix_in_place(&mut out.entries_mut()[i - 1..]);
        Ok(out)
    }

    /// `run(c_i(p)) - run(p)`, computed from the window around position `i`
    /// without building `c_i(p)`.
    ///
    /// Direction changes strictly inside the suffix survive the relative
    /// complement (peaks become valleys), so only positions `i-1` and `i`
    /// can change. The new `p_i` exceeds `p_{i-1}` exactly when the rank of
    /// `p_i` from the bottom of the suffix is smaller than the number of
    /// suffix entries above `p_{i-1}`.
    pub fn run_change(&self, i: usize) -> Result<i32> {
        self.check_position(i)?;
        Ok(run_change_unchecked(self.entries(), i))
    }

    fn check_position(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.len() {
            return Err(Error::PositionOutOfRange { i, n: self.len() });
        }
        Ok(())
    }

    /// Digit-string form (`315462`), only for `n <= 9`.
    pub fn to_compact_string(&self) -> Option<String> {
        if self.len() > 9 {
            return None;
        }
        Some(
            self.entries()
                .iter()
                .map(|&e| char::from(b'0' + e))
                .collect(),
        )
    }
}

pub(crate) fn count_runs(e: &[u8]) -> u32 {
    // entries are distinct, so a peak or valley at the middle of a window is
    // exactly a disagreement between the two adjacent comparisons
    1 + e
        .windows(3)
        .filter(|w| (w[0] < w[1]) != (w[1] < w[2]))
        .count() as u32
}

pub(crate) fn run_change_unchecked(e: &[u8], i: usize) -> i32 {
    let n = e.len();
    let start = i - 1;
    if i < 2 {
        return 0;
    }
    let suffix = &e[start..];
    let head = e[start];
    let prev = e[start - 1];
    let rank = suffix.iter().filter(|&&x| x < head).count();
    let above_prev = suffix.iter().filter(|&&x| x > prev).count();
    let old_up = head > prev;
    let new_up = rank < above_prev;

    let mut delta = 0i32;
    if i >= 3 {
        let before = prev > e[start - 2];
        delta += (before != new_up) as i32 - (before != old_up) as i32;
    }
    if i < n {
        let old_next = e[start + 1] > head;
        delta += (new_up == old_next) as i32 - (old_up != old_next) as i32;
    }
    delta
}

pub(crate) fn complement_suffix_in_place(s: &mut [u8]) {
    let mut sorted = [0u8; MAX_N];
    let sorted = &mut sorted[..s.len()];
    sorted.copy_from_slice(s);
    sorted.sort_unstable();
    let last = s.len() - 1;
    for x in s.iter_mut() {
        // values are distinct, the search always hits
        let rank = sorted.binary_search(x).unwrap_or_else(|r| r);
        *x = sorted[last - rank];
    }
}

impl Ord for Permutation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.entries().cmp(other.entries())
    }
}

impl PartialOrd for Permutation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical textual form: entries separated by single spaces.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, e) in self.entries().iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_permutation(s)
    }
}

impl TryFrom<&[u8]> for Permutation {
    type Error = Error;

    fn try_from(e: &[u8]) -> Result<Self> {
        Permutation::new(e)
    }
}

/// Number of alternating runs of `p`.
pub fn run_count(p: &Permutation) -> RunCount {
    p.run_count()
}

pub fn complement(p: &Permutation) -> Permutation {
    p.complement()
}

pub fn apply_c(i: usize, p: &Permutation) -> Result<Permutation> {
    p.apply_c(i)
}

/// Replaces the j-th smallest value of `s` by the j-th largest, positionwise.
///
/// `s` may hold any distinct values; the result has the same value set.
pub fn relative_complement(s: &[u32]) -> Result<Vec<u32>> {
    let mut sorted = s.to_vec();
    sorted.sort_unstable();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::Duplicate(u64::from(w[0])));
    }
    let Some(last) = s.len().checked_sub(1) else {
        return Ok(Vec::new());
    };
    Ok(s.iter()
        .map(|x| {
            let rank = sorted.binary_search(x).expect("value taken from s");
            sorted[last - rank]
        })
        .collect())
}

/// If `t` holds the a_1-th, ..., a_j-th smallest elements of `u`, returns
/// the a_1-th, ..., a_j-th largest elements of `u`.
pub fn vertical_complement(t: &BTreeSet<u32>, u: &BTreeSet<u32>) -> Result<BTreeSet<u32>> {
    let universe: Vec<u32> = u.iter().copied().collect();
    t.iter()
        .map(|&x| match universe.binary_search(&x) {
            Ok(rank) => Ok(universe[universe.len() - 1 - rank]),
            Err(_) => Err(Error::NotSubset { value: x }),
        })
        .collect()
}

/// Parses `"3 1 5 4 6 2"`, `"3,1,5,4,6,2"` or the digit string `"315462"`.
///
/// The digit-string form is only accepted for up to nine entries; longer
/// permutations must be delimited.
pub fn parse_permutation(text: &str) -> Result<Permutation> {
    let t = text.trim();
    if t.is_empty() {
        return Err(Error::Empty);
    }
    let is_delim = |c: char| c.is_whitespace() || c == ',';
    let values: Vec<u64> = if t.contains(is_delim) {
        t.split(is_delim)
            .filter(|tok| !tok.is_empty())
            .map(|tok| {
                if !tok.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(Error::InvalidToken(tok.to_owned()));
                }
                tok.parse::<u64>()
                    .map_err(|_| Error::InvalidToken(tok.to_owned()))
            })
            .collect::<Result<_>>()?
    } else if t.bytes().all(|b| b.is_ascii_digit()) {
        if t.len() > 9 {
            return Err(Error::DigitStringTooLong(t.len()));
        }
        t.bytes().map(|b| u64::from(b - b'0')).collect()
    } else {
        return Err(Error::InvalidToken(t.to_owned()));
    };
    Permutation::from_values(values)
}
