//! Lexicographic ranking of permutations and the split of `n!` ranks into
//! contiguous per-worker ranges.

use crate::error::{Error, Result};
use crate::perm::{Permutation, MAX_N};

use super::factorial;

/// Ranks `start .. start + len` of the lexicographic order on length-`n`
/// permutations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LexRange {
    pub n: usize,
    pub start: u64,
    pub len: u64,
}

impl LexRange {
    /// The whole space of length-`n` permutations.
    pub fn all(n: usize) -> Result<Self> {
        check_n(n)?;
        Ok(LexRange {
            n,
            start: 0,
            len: factorial(n as u32).expect("n <= 20"),
        })
    }

    pub fn end(&self) -> u64 {
        self.start + self.len
    }

    /// Panics if the range is nonempty and extends past `n!`.
    pub fn iter(&self) -> LexIter {
        if self.len == 0 {
            return LexIter {
                current: Permutation::identity(self.n).expect("valid n"),
                remaining: 0,
            };
        }
        assert!(
            u128::from(self.start) + u128::from(self.len)
                <= u128::from(factorial(self.n as u32).expect("n <= 20")),
            "range past n!"
        );
        LexIter {
            current: unrank(self.n, self.start),
            remaining: self.len,
        }
    }
}

impl IntoIterator for LexRange {
    type Item = Permutation;
    type IntoIter = LexIter;

    fn into_iter(self) -> LexIter {
        self.iter()
    }
}

/// Lexicographic successor walk over a [`LexRange`].
#[derive(Debug, Clone)]
pub struct LexIter {
    current: Permutation,
    remaining: u64,
}

impl Iterator for LexIter {
    type Item = Permutation;

    #[inline]
    fn next(&mut self) -> Option<Permutation> {
        if self.remaining == 0 {
            return None;
        }
        let out = self.current;
        self.remaining -= 1;
        if self.remaining > 0 {
            next_permutation(self.current.entries_mut());
        }
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = usize::try_from(self.remaining).unwrap_or(usize::MAX);
        (r, usize::try_from(self.remaining).ok())
    }
}

/// All length-`n` permutations in lexicographic order.
pub fn permutations(n: usize) -> Result<LexIter> {
    Ok(LexRange::all(n)?.iter())
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::ZeroLength);
    }
    if n > MAX_N {
        return Err(Error::TooLong { n, cap: MAX_N });
    }
    Ok(())
}

/// Advances to the lexicographic successor; returns false (leaving the
/// slice untouched) at the last permutation.
pub(crate) fn next_permutation(e: &mut [u8]) -> bool {
    let n = e.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && e[i - 1] > e[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while e[j] < e[i - 1] {
        j -= 1;
    }
    e.swap(i - 1, j);
    e[i..].reverse();
    true
}

/// Lexicographic rank of `p` among permutations of its length, from 0.
pub fn rank(p: &Permutation) -> u64 {
    let e = p.entries();
    let n = e.len();
    let mut r = 0u64;
    for (k, &x) in e.iter().enumerate() {
        let smaller_after = e[k + 1..].iter().filter(|&&y| y < x).count() as u64;
        r += smaller_after * factorial((n - 1 - k) as u32).expect("n <= 20");
    }
    r
}

/// Inverse of [`rank`]. `r` must be below `n!`.
pub fn unrank(n: usize, mut r: u64) -> Permutation {
    let mut pool: Vec<u8> = (1..=n as u8).collect();
    let mut out = [0u8; MAX_N];
    for (k, slot) in out.iter_mut().take(n).enumerate() {
        let f = factorial((n - 1 - k) as u32).expect("n <= 20");
        let d = (r / f) as usize;
        r %= f;
        *slot = pool.remove(d);
    }
    Permutation::from_valid(&out[..n])
}

/// Splits the `n!` ranks into at most `workers` contiguous, disjoint,
/// nonempty ranges that cover everything.
///
/// Ranges are built from whole granules: blocks of `(n-k)!` permutations
/// sharing a length-`k` prefix, with `k` the smallest depth giving at least
/// `workers` granules (`k = 1` is the leading-entry split). Range sizes
/// differ by at most one granule.
pub fn partition_work(n: usize, workers: usize) -> Result<Vec<LexRange>> {
    check_n(n)?;
    let workers = workers.max(1) as u128;
    let mut k = 1;
    let mut granules: u128 = n as u128;
    while granules < workers && k < n {
        k += 1;
        granules *= (n - k + 1) as u128;
    }
    let granule = u128::from(factorial((n - k) as u32).expect("n <= 20"));
    let parts = workers.min(granules);
    Ok((0..parts)
        .map(|w| {
            let lo = w * granules / parts;
            let hi = (w + 1) * granules / parts;
            LexRange {
                n,
                start: (lo * granule) as u64,
                len: ((hi - lo) * granule) as u64,
            }
        })
        .collect())
}
