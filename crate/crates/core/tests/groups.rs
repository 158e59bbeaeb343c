use std::collections::HashSet;

use num_bigint::BigUint;
use proptest::prelude::*;
use wpcurve::perm::{PermGroup, DEFAULT_CAP};
use wpcurve::{parse_cycles, Permutation};

/// Enumerate a group naively and return the order of the normal closure of `x`.
fn brute_normal_closure(elements: &[Permutation], x: &Permutation) -> usize {
    let mut seen: HashSet<Permutation> = elements.iter().map(|g| x.conjugate_by(g)).collect();
    let mut frontier: Vec<Permutation> = seen.iter().cloned().collect();
    let gens = frontier.clone();
    seen.insert(Permutation::identity());
    while let Some(p) = frontier.pop() {
        for g in &gens {
            let next = p.compose(g);
            if seen.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    seen.len()
}

#[test]
fn a5_is_simple_by_brute_force() {
    let gens = vec![parse_cycles("(1,2,3)").unwrap(), parse_cycles("(1,2,3,4,5)").unwrap()];
    let group = PermGroup::new(gens).unwrap();
    assert_eq!(group.order(), BigUint::from(60u32));
    let elements = group.elements(DEFAULT_CAP, 1).unwrap();
    for x in elements.iter().filter(|x| !x.is_identity()) {
        assert_eq!(brute_normal_closure(&elements, x), 60, "closure of {x}");
    }
    assert!(group.is_simple(DEFAULT_CAP, 1).unwrap());
}

#[test]
fn s4_is_not_simple() {
    let gens = vec![parse_cycles("(1,2)").unwrap(), parse_cycles("(1,2,3,4)").unwrap()];
    let group = PermGroup::new(gens).unwrap();
    assert_eq!(group.order(), BigUint::from(24u32));
    let elements = group.elements(DEFAULT_CAP, 1).unwrap();
    let klein = parse_cycles("(1,2)(3,4)").unwrap();
    assert_eq!(brute_normal_closure(&elements, &klein), 4);
    assert!(!group.is_simple(DEFAULT_CAP, 1).unwrap());
}

#[test]
fn composition_is_left_to_right() {
    let p = parse_cycles("(1,2)").unwrap();
    let q = parse_cycles("(2,3)").unwrap();
    // apply p first: 1 -> 2 -> 3
    assert_eq!(p.compose(&q).to_string(), "(1,3,2)");
}

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n as u32).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

proptest! {
    #[test]
    fn elements_match_order(a in perm(6), b in perm(6)) {
        let group = PermGroup::new(vec![a, b]).unwrap();
        let elements = group.elements(DEFAULT_CAP, 2).unwrap();
        prop_assert_eq!(BigUint::from(elements.len()), group.order());
        prop_assert!(elements.iter().all(|e| group.contains(e)));
    }
}
