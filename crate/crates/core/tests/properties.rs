//! Property tests over randomly chosen groups, orderings and elements.

use std::collections::BTreeSet;

use num_integer::Integer;
use ordkit_core::group::{abelianization, DEFAULT_BALL_LIMIT};
use ordkit_core::lift::check_inhomogeneous_cocycle;
use ordkit_core::obstruction::{free_product_union, obstruction_finite, promislow};
use ordkit_core::orders::{natural_circular_cyclic, product_circular, units, validate_circular, ValidateOptions};
use ordkit_core::witness::WitnessGroup;
use ordkit_core::{Cocycle, Element, Group, LeftOrdering, LiftElement, LiftGroup, Presentation, TwoCocycle};
use proptest::prelude::*;

/// `(n, k)` with `k` a unit mod `n`.
fn cyclic_ordering() -> impl Strategy<Value = (u64, u64)> {
    (2u64..=24).prop_flat_map(|n| {
        let us = units(n);
        (Just(n), proptest::sample::select(us))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn natural_orderings_are_circular_orderings((n, k) in cyclic_ordering()) {
        let c = natural_circular_cyclic(n, k).unwrap();
        let all = c.group().elements(64).unwrap();
        prop_assert!(validate_circular(&c, &all, ValidateOptions::default()).unwrap().passed());
    }

    #[test]
    fn cocycle_identity_and_range((n, k) in cyclic_ordering(), a in 0u64..24, b in 0u64..24, d in 0u64..24) {
        let f = Cocycle::new(natural_circular_cyclic(n, k).unwrap());
        let (a, b, d) = (Element::Residue(a % n), Element::Residue(b % n), Element::Residue(d % n));
        let g = Group::Cyclic(n);
        let ab = g.op(&a, &b).unwrap();
        let bd = g.op(&b, &d).unwrap();
        let lhs = f.eval(&ab, &d).unwrap() + f.eval(&a, &b).unwrap();
        let rhs = f.eval(&a, &bd).unwrap() + f.eval(&b, &d).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert!(matches!(f.eval(&a, &b).unwrap(), 0 | 1));
    }

    #[test]
    fn lift_group_is_a_group((n, k) in cyclic_ordering(), xs in proptest::collection::vec((-30i64..30, 0u64..24), 3)) {
        let lift = LiftGroup::of_ordering(natural_circular_cyclic(n, k).unwrap());
        let e: Vec<LiftElement> = xs.iter().map(|&(m, a)| LiftElement::new(m, Element::Residue(a % n))).collect();
        let left = lift.op(&lift.op(&e[0], &e[1]).unwrap(), &e[2]).unwrap();
        let right = lift.op(&e[0], &lift.op(&e[1], &e[2]).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        let inv = lift.inv(&e[0]).unwrap();
        prop_assert_eq!(lift.op(&e[0], &inv).unwrap(), lift.identity());
        // Exactly one of x, x⁻¹ is positive unless x is the identity.
        if e[0] != lift.identity() {
            prop_assert_ne!(lift.is_positive(&e[0]), lift.is_positive(&inv));
        }
        // The central element is positive and commutes with everything.
        let z = lift.central();
        prop_assert!(lift.is_positive(&z));
        prop_assert_eq!(lift.op(&z, &e[1]).unwrap(), lift.op(&e[1], &z).unwrap());
    }

    #[test]
    fn lexicographic_products_are_circular(n in 2u64..6) {
        let c = product_circular(&LeftOrdering::integers(), n).unwrap();
        let g = c.group().clone();
        let ball = g.ball(&g.standard_generators(), 2, DEFAULT_BALL_LIMIT).unwrap();
        prop_assert!(validate_circular(&c, ball.elements(), ValidateOptions::default()).unwrap().passed());
        prop_assert!(check_inhomogeneous_cocycle(&Cocycle::new(c), ball.elements()).unwrap().passed());
    }

    #[test]
    fn single_flips_are_detected((n, k) in cyclic_ordering(), pick in any::<prop::sample::Index>()) {
        prop_assume!((3..=8).contains(&n));
        let c = natural_circular_cyclic(n, k).unwrap();
        let all = c.group().elements(64).unwrap();
        let table = c.to_table(&all).unwrap();
        let entries: Vec<_> = table.entries().into_iter().filter(|e| e.3 != 0).collect();
        let (a, b, d, v) = pick.get(&entries).clone();
        let mut mutant = table.clone();
        mutant.set(&a, &b, &d, -v).unwrap();
        prop_assert!(!validate_circular(&mutant.to_ordering(), &all, ValidateOptions::default()).unwrap().passed());
    }

    #[test]
    fn finite_cyclic_spectra(m in 1u64..16, cap in 2u64..40) {
        let r = obstruction_finite(&Group::Cyclic(m), cap).unwrap();
        let expected: BTreeSet<u64> = (2..=cap).filter(|n| n.gcd(&m) != 1).collect();
        prop_assert_eq!(r.obstructed_set(), expected);
        prop_assert!(r.is_partition() && r.is_divisibility_closed() && r.is_fully_determined());
    }

    #[test]
    fn free_products_of_cyclic_groups(ms in proptest::collection::vec(1u64..10, 1..4), cap in 2u64..30) {
        let spectra: Vec<_> = ms.iter().map(|&m| obstruction_finite(&Group::Cyclic(m), cap).unwrap()).collect();
        let union = free_product_union(&spectra).unwrap();
        let expected: BTreeSet<u64> = (2..=cap).filter(|n| ms.iter().any(|m| n.gcd(m) != 1)).collect();
        prop_assert_eq!(union.obstructed_set(), expected);
        prop_assert!(union.is_divisibility_closed());
    }

    #[test]
    fn abelianization_of_two_cyclic_factors(a in 1u64..30, b in 1u64..30) {
        let text = format!("gens: x y\nrel: {}\nrel: {}\nrel: x y X Y\n", "x ".repeat(a as usize), "y ".repeat(b as usize));
        let p = Presentation::parse(&text).unwrap();
        let (g, l) = (a.gcd(&b), a.lcm(&b));
        let expected: Vec<u64> = [g, l].into_iter().filter(|&f| f != 1).collect();
        prop_assert_eq!(abelianization(&p).factors_u64().unwrap(), expected);
    }

    #[test]
    fn promislow_group_laws(i in 0usize..400, j in 0usize..400, k in 0usize..400) {
        let ball = promislow::ball(2).unwrap();
        let es = ball.elements();
        let (x, y, z) = (&es[i % es.len()], &es[j % es.len()], &es[k % es.len()]);
        let g = Group::Promislow;
        prop_assert_eq!(g.op(&g.op(x, y).unwrap(), z).unwrap(), g.op(x, &g.op(y, z).unwrap()).unwrap());
        prop_assert!(g.is_identity(&g.op(x, &g.inv(x).unwrap()).unwrap()));
        // The Promislow group is torsion free: no non-identity element of the ball has order ≤ 12.
        if !g.is_identity(x) {
            prop_assert_eq!(g.element_order(x, 12).unwrap(), None);
        }
    }

    #[test]
    fn witness_group_laws(p in proptest::sample::select(vec![2u32, 3, 5]), seed in any::<u64>()) {
        use rand::SeedableRng;
        let w = WitnessGroup::new(p).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c) = (w.sample_g(&mut rng), w.sample_g(&mut rng), w.sample_g(&mut rng));
        let ab_c = w.op(&w.op(&a, &b).unwrap(), &c).unwrap();
        let a_bc = w.op(&a, &w.op(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        prop_assert!(w.in_g(&w.op(&a, &b).unwrap()).unwrap());
        prop_assert!(w.in_g(&w.inv(&a).unwrap()).unwrap());
    }
}
