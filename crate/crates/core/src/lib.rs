//! Alternating runs of permutations and the factorization
//! `R_n(z) = (1+z)^m * Q_n(z)`, `m = floor((n-2)/2)`.
//!
//! The `c_i` maps ([`perm`]) keep a prefix of a permutation and complement
//! the suffix within its own values. The odd-indexed ones `c_3, c_5, ...`
//! generate a free `Z_2^m` action ([`action`]) whose orbits each contribute
//! `z^a (1+z)^m` to `R_n`. [`enumerate`] computes `R_n` both directly and
//! through orbit minima, and checks every step exhaustively for small `n`.

pub mod action;
pub mod enumerate;
mod error;
pub mod perm;
pub mod poly;

pub use action::{
    apply_element, canonicalize, generator_set, is_minimal, minimal_representative, orbit_of,
    orbit_polynomial, Canonical, GeneratorSet, GroupElement, Orbit, OrbitMember,
};
pub use enumerate::verify::{verify_property, verify_property_with, Property, VerificationReport};
pub use enumerate::{
    distribution_bruteforce, distribution_via_orbits, minimal_representatives, partition_work,
    DistributionResult, EnumOptions, Method,
};
pub use error::{CapExceeded, Error, Result};
pub use perm::{parse_permutation, Permutation, RunCount, MAX_N};
pub use poly::RunPolynomial;
