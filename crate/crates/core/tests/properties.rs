use std::collections::BTreeSet;

use proptest::prelude::*;
use runslab_core::action::{canonicalize_in_order, GeneratorOrder};
use runslab_core::enumerate::permutations;
use runslab_core::perm::{relative_complement, vertical_complement};
use runslab_core::{generator_set, orbit_of, Permutation, RunPolynomial};

#[test]
fn involutions_exhaustive() {
    for n in 1..=7 {
        for p in permutations(n).unwrap() {
            assert_eq!(p.complement().complement(), p);
            for i in 1..=n {
                assert_eq!(p.apply_c(i).unwrap().apply_c(i).unwrap(), p);
            }
            assert_eq!(p.apply_c(1).unwrap(), p.complement());
            assert_eq!(p.apply_c(n).unwrap(), p);
        }
    }
}

#[test]
fn complement_preserves_runs() {
    for n in 1..=7 {
        for p in permutations(n).unwrap() {
            assert_eq!(p.complement().run_count(), p.run_count());
        }
    }
}

#[test]
fn run_count_bounds() {
    for n in 2..=7 {
        for p in permutations(n).unwrap() {
            let r = p.run_count().get() as usize;
            assert!((1..n).contains(&r), "{p}");
        }
    }
}

#[test]
fn greedy_minimum_in_both_orders() {
    for n in 1..=7 {
        for p in permutations(n).unwrap() {
            let orbit = orbit_of(&p).unwrap();
            let lowest = orbit.members().iter().map(|m| m.runs).min().unwrap();
            let asc = canonicalize_in_order(&p, GeneratorOrder::Ascending);
            let desc = canonicalize_in_order(&p, GeneratorOrder::Descending);
            assert_eq!(asc.runs, lowest);
            assert_eq!(asc, desc, "{p}");
            // the recorded element takes p to the representative
            let gens = generator_set(n).unwrap();
            assert_eq!(
                runslab_core::apply_element(asc.element, &p, &gens).unwrap(),
                asc.representative
            );
        }
    }
}

#[test]
fn apply_element_order_independent() {
    for n in [5, 6, 7] {
        let gens = generator_set(n).unwrap();
        for p in permutations(n).unwrap() {
            for g in gens.elements() {
                let forward = runslab_core::apply_element(g, &p, &gens).unwrap();
                let mut backward = p;
                for i in gens.positions_of(g).into_iter().rev() {
                    backward = backward.apply_c(i).unwrap();
                }
                assert_eq!(forward, backward);
            }
        }
    }
}

fn distinct_values() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::btree_set(0u32..1000, 1..12)
        .prop_flat_map(|set| Just(set.into_iter().collect::<Vec<_>>()).prop_shuffle())
}

fn small_poly() -> impl Strategy<Value = RunPolynomial> {
    prop::collection::vec((0u32..20, -1000i128..1000), 0..8)
        .prop_map(|terms| RunPolynomial::from_terms(terms).unwrap())
}

fn permutation(max_n: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_n)
        .prop_flat_map(|n| Just((1..=n as u8).collect::<Vec<_>>()).prop_shuffle())
        .prop_map(|v| Permutation::new(&v).unwrap())
}

proptest! {
    #[test]
    fn relative_complement_reverses_order(s in distinct_values()) {
        let t = relative_complement(&s).unwrap();
        prop_assert_eq!(relative_complement(&t).unwrap(), s.clone());
        let a: BTreeSet<u32> = s.iter().copied().collect();
        let b: BTreeSet<u32> = t.iter().copied().collect();
        prop_assert_eq!(a, b);
        for x in 0..s.len() {
            for y in 0..s.len() {
                prop_assert_eq!(s[x] < s[y], t[x] > t[y]);
            }
        }
    }

    #[test]
    fn vertical_complement_involution(
        u in prop::collection::btree_set(0u32..200, 0..15),
        pick in prop::collection::vec(any::<bool>(), 15),
    ) {
        let t: BTreeSet<u32> = u.iter().zip(&pick).filter(|(_, &k)| k).map(|(&x, _)| x).collect();
        let v = vertical_complement(&t, &u).unwrap();
        prop_assert_eq!(v.len(), t.len());
        prop_assert!(v.is_subset(&u));
        prop_assert_eq!(vertical_complement(&v, &u).unwrap(), t);
    }

    #[test]
    fn binomial_round_trip(p in small_poly(), m in 0u32..=9) {
        let q = p.mul_binomial_power(m).unwrap();
        prop_assert_eq!(q.div_binomial_power(m).unwrap(), p.clone());
        if !p.is_zero() {
            prop_assert!(q.multiplicity_at_minus_one().unwrap() >= m);
        }
    }

    #[test]
    fn root_at_minus_one_iff_divisible(p in small_poly()) {
        prop_assert_eq!(p.eval_at(-1).unwrap() == 0, p.div_binomial_power(1).is_ok());
    }

    #[test]
    fn merge_any_order(parts in prop::collection::vec(small_poly(), 1..6)) {
        let left = parts.iter().try_fold(RunPolynomial::zero(), |acc, p| acc.merge(p)).unwrap();
        let right = parts.iter().rev().try_fold(RunPolynomial::zero(), |acc, p| p.merge(&acc)).unwrap();
        prop_assert_eq!(&left, &right);
        // pairwise tree reduction
        let mut level = parts.clone();
        while level.len() > 1 {
            level = level
                .chunks(2)
                .map(|c| if c.len() == 2 { c[0].merge(&c[1]).unwrap() } else { c[0].clone() })
                .collect();
        }
        prop_assert_eq!(&level[0], &left);
    }

    #[test]
    fn eval_at_one_is_coefficient_sum(p in small_poly()) {
        prop_assert_eq!(p.eval_at(1).unwrap(), p.coefficient_sum().unwrap());
    }

    #[test]
    fn json_round_trip(p in small_poly()) {
        let text = p.to_json();
        let back = RunPolynomial::from_json(&text).unwrap();
        prop_assert_eq!(back.to_json(), text);
        prop_assert_eq!(back, p);
    }

    #[test]
    fn text_round_trip(p in permutation(20)) {
        prop_assert_eq!(p.to_string().parse::<Permutation>().unwrap(), p);
        if let Some(compact) = p.to_compact_string() {
            prop_assert_eq!(compact.parse::<Permutation>().unwrap(), p);
        }
    }

    #[test]
    fn orbits_are_free_up_to_20(p in permutation(20)) {
        let orbit = orbit_of(&p).unwrap();
        prop_assert_eq!(orbit.len(), 1usize << generator_set(p.len()).unwrap().m());
        runslab_core::orbit_polynomial(&orbit).unwrap();
    }
}
