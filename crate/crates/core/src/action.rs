//! The group `G_m = Z_2^m` generated by `c_3, c_5, ...` acting on
//! permutations of length `n`, its orbits, and the minimal representative of
//! each orbit.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::perm::{self, Permutation, RunCount, MAX_N};
use crate::poly::RunPolynomial;

/// `C_n`: positions `3, 5, ...` up to `n-1` (n even) or `n-2` (n odd).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    n: usize,
    indices: Vec<usize>,
}

impl GeneratorSet {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroLength);
        }
        if n > MAX_N {
            return Err(Error::TooLong { n, cap: MAX_N });
        }
        let last = if n.is_multiple_of(2) {
            n.saturating_sub(1)
        } else {
            n.saturating_sub(2)
        };
        let indices = (3..=last).step_by(2).collect();
        Ok(GeneratorSet { n, indices })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Generator positions in ascending order; bit `j` of a
    /// [`GroupElement`] refers to `indices()[j]`.
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    /// `m = floor((n-2)/2)`, or 0 for `n < 2`.
    pub fn m(&self) -> usize {
        self.indices.len()
    }

    /// Number of group elements, `2^m`.
    pub fn order(&self) -> u32 {
        1 << self.m()
    }

    /// Every element in canonical order: masks `0, 1, ..., 2^m - 1`.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> {
        (0..self.order()).map(GroupElement)
    }

    /// Generator positions selected by `g`, ascending.
    pub fn positions_of(&self, g: GroupElement) -> Vec<usize> {
        self.indices
            .iter()
            .enumerate()
            .filter(|&(j, _)| g.0 >> j & 1 == 1)
            .map(|(_, &i)| i)
            .collect()
    }

    fn check(&self, g: GroupElement, p: &Permutation) -> Result<()> {
        if p.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                actual: p.len(),
            });
        }
        if g.0 >= self.order() {
            return Err(Error::MaskOutOfRange {
                mask: g.0,
                m: self.m(),
            });
        }
        Ok(())
    }
}

pub fn generator_set(n: usize) -> Result<GeneratorSet> {
    GeneratorSet::new(n)
}

/// An element of `G_m`: the set of generators it applies, as a bitmask.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement(pub u32);

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement(0);

    pub fn mask(self) -> u32 {
        self.0
    }

    /// Group product. Generators are commuting involutions, so this is the
    /// symmetric difference of the generator sets.
    pub fn compose(self, other: GroupElement) -> GroupElement {
        GroupElement(self.0 ^ other.0)
    }

    /// Number of generators applied.
    pub fn weight(self) -> u32 {
        self.0.count_ones()
    }
}

/// Applies each generator selected by `g` once, in ascending position order.
pub fn apply_element(g: GroupElement, p: &Permutation, gens: &GeneratorSet) -> Result<Permutation> {
    gens.check(g, p)?;
    Ok(apply_positions(p, gens.positions_of(g)))
}

fn apply_positions<I: IntoIterator<Item = usize>>(p: &Permutation, positions: I) -> Permutation {
    let mut out = *p;
    for i in positions {
        perm::complement_suffix_in_place(&mut out.entries_mut()[i - 1..]);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrbitMember {
    pub element: GroupElement,
    pub permutation: Permutation,
    pub runs: RunCount,
}

/// All `2^m` images of a permutation, indexed by group element mask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    generators: GeneratorSet,
    members: Vec<OrbitMember>,
    minimal: usize,
}

impl Orbit {
    pub fn generators(&self) -> &GeneratorSet {
        &self.generators
    }

    /// Members in mask order; `members()[k].element.mask() == k`.
    pub fn members(&self) -> &[OrbitMember] {
        &self.members
    }

    /// The member with the fewest runs (lowest mask on ties, though the
    /// binomial layering makes it unique).
    pub fn minimal(&self) -> &OrbitMember {
        &self.members[self.minimal]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Number of members with each run count, indexed by run count.
    pub fn run_histogram(&self) -> Vec<u64> {
        let top = self.members.iter().map(|m| m.runs.get()).max().unwrap_or(0);
        let mut h = vec![0u64; top as usize + 1];
        for m in &self.members {
            h[m.runs.get() as usize] += 1;
        }
        h
    }
}

/// Materializes the orbit of `p`. Two group elements mapping `p` to the same
/// permutation would contradict the free action, and is reported as
/// [`Error::Invariant`].
pub fn orbit_of(p: &Permutation) -> Result<Orbit> {
    let generators = GeneratorSet::new(p.len())?;
    let mut members = Vec::with_capacity(generators.order() as usize);
    let mut seen = HashSet::with_capacity(generators.order() as usize);
    for g in generators.elements() {
        let image = apply_positions(p, generators.positions_of(g));
        if !seen.insert(image) {
            return Err(Error::Invariant(format!(
                "orbit of {p} is not free: mask {:#b} repeats {image}",
                g.0
            )));
        }
        members.push(OrbitMember {
            element: g,
            permutation: image,
            runs: image.run_count(),
        });
    }
    let minimal = members
        .iter()
        .enumerate()
        .min_by_key(|(k, m)| (m.runs, *k))
        .map(|(k, _)| k)
        .unwrap_or(0);
    Ok(Orbit {
        generators,
        members,
        minimal,
    })
}

/// Result of the greedy canonicalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Canonical {
    pub representative: Permutation,
    /// Group element taking the input to `representative`.
    pub element: GroupElement,
    pub runs: RunCount,
}

/// Order in which the greedy pass visits the generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GeneratorOrder {
    #[default]
    Ascending,
    Descending,
}

/// Greedy pass over `C_n`: apply `c_i` exactly when it lowers the run count
/// of the current permutation.
pub fn canonicalize(p: &Permutation) -> Canonical {
    canonicalize_in_order(p, GeneratorOrder::Ascending)
}

pub fn canonicalize_in_order(p: &Permutation, order: GeneratorOrder) -> Canonical {
    let gens = GeneratorSet::new(p.len()).expect("permutation length is within 1..=MAX_N");
    let mut slots: Vec<(usize, usize)> = gens.indices().iter().copied().enumerate().collect();
    if order == GeneratorOrder::Descending {
        slots.reverse();
    }
    let mut current = *p;
    let mut mask = 0u32;
    for (j, i) in slots {
        if perm::run_change_unchecked(current.entries(), i) < 0 {
            perm::complement_suffix_in_place(&mut current.entries_mut()[i - 1..]);
            mask ^= 1 << j;
        }
    }
    Canonical {
        representative: current,
        element: GroupElement(mask),
        runs: current.run_count(),
    }
}

/// The orbit member of `p` with the fewest alternating runs.
pub fn minimal_representative(p: &Permutation) -> Permutation {
    canonicalize(p).representative
}

/// True iff every generator of `C_n` raises the run count of `p` by one.
pub fn is_minimal(p: &Permutation) -> bool {
    let e = p.entries();
    let n = e.len();
    let last = if n.is_multiple_of(2) {
        n.saturating_sub(1)
    } else {
        n.saturating_sub(2)
    };
    (3..=last)
        .step_by(2)
        .all(|i| perm::run_change_unchecked(e, i) == 1)
}

/// `sum over the orbit of z^run`, checked against `z^a (1+z)^m` where `a` is
/// the run count of the minimal member.
pub fn orbit_polynomial(orbit: &Orbit) -> Result<RunPolynomial> {
    let mut sum = RunPolynomial::zero();
    for m in orbit.members() {
        sum.add_term(m.runs.get(), 1)?;
    }
    let a = orbit.minimal().runs.get();
    let expected =
        RunPolynomial::monomial(a, 1).mul_binomial_power(orbit.generators().m() as u32)?;
    if sum != expected {
        return Err(Error::Invariant(format!(
            "orbit of {} sums to {sum}, expected z^{a}(1+z)^{}",
            orbit.members()[0].permutation,
            orbit.generators().m()
        )));
    }
    Ok(sum)
}
