mod common;

use std::sync::Arc;

use common::*;
use proptest::prelude::*;
use twistk_core::cocycle::*;
use twistk_core::group::enumerate_subgroups;
use twistk_core::{Error, GroupTable};

fn revalidate(c: &CocycleTable) {
    let rows: Vec<Vec<i64>> = c.rows().iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect();
    validate_cocycle(c.group(), c.modulus(), &rows).unwrap();
}

#[test]
fn h2_orders_match_enumeration() {
    let mut compared = 0;
    for (name, g) in corpus() {
        for n in [2u64, 3, 4] {
            if let Some(b) = brute_h2_order(&g, n) {
                assert_eq!(h2_group(&g, n).unwrap().order(), b, "{name} mod {n}");
                compared += 1;
            }
        }
    }
    assert_eq!(compared, 5);
}

#[test]
fn validation_examples() {
    let v4 = Arc::new(GroupTable::klein_four());
    let a = v4_xy(&v4);
    for x in 0..4 {
        for y in 0..4 {
            for z in 0..4 {
                let l = (a.entry(x, y) + a.entry(v4.mul(x, y), z)) % 2;
                let r = (a.entry(y, z) + a.entry(x, v4.mul(y, z))) % 2;
                assert_eq!(l, r);
            }
        }
    }
    let c2 = Arc::new(GroupTable::cyclic(2));
    assert_eq!(validate_cocycle(&c2, 2, &[vec![0, 1], vec![1, 1]]).unwrap_err(), Error::NotUnital(1));
    let (t, w) = make_unital(&c2, 3, &[vec![2, 2], vec![2, 2]]).unwrap();
    assert!(t.is_zero());
    // c + dw is unital: w solves dw = -2 = 1, checked by enumeration
    let solutions: Vec<Vec<u64>> = (0..9u64)
        .map(|i| vec![i % 3, i / 3])
        .filter(|u| (0..2).all(|x| (0..2).all(|y| (u[x] + u[y] + 3 - u[c2.mul(x, y)]) % 3 == 1)))
        .collect();
    assert!(solutions.contains(&w), "{w:?} not in {solutions:?}");
}

#[test]
fn every_class_normalizes() {
    for (name, g) in corpus() {
        let subs = enumerate_subgroups(&g).unwrap();
        for n in [2u64, 3, 4] {
            for alpha in all_classes(&g, n) {
                let norm = normalize_cocycle(&alpha).unwrap();
                revalidate(&norm.cocycle);
                assert_eq!(norm.cocycle.modulus(), class_order(&alpha), "{name}");
                assert_eq!(class_order(&norm.cocycle), class_order(&alpha), "{name}");
                for h in &subs {
                    revalidate(&restrict_cocycle(&alpha, h).unwrap());
                }
            }
        }
    }
}

fn corpus_index() -> impl Strategy<Value = usize> {
    0usize..6
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn witness_roundtrip(gi in corpus_index(), n in 2u64..7, seed in prop::collection::vec(0u64..1000, 8)) {
        let (_, g) = corpus().swap_remove(gi);
        let m = g.order();
        let mut u: Vec<u64> = (0..m).map(|i| seed[i % 8].wrapping_mul(i as u64 + 3) % n).collect();
        u[0] = 0;
        let gens = h2_group(&g, n).unwrap().generators;
        let alpha = gens.first().cloned().unwrap_or_else(|| CocycleTable::trivial(&g, n));
        let beta = add_cocycles(&alpha, &coboundary_of(&g, n, &u).unwrap()).unwrap();
        revalidate(&beta);
        let w = cohomologous_witness(&alpha, &beta).unwrap().expect("cohomologous");
        let back = add_cocycles(&alpha, &coboundary_of(&g, n, &w).unwrap()).unwrap();
        prop_assert_eq!(back, beta);
    }

    #[test]
    fn addition_is_commutative_and_associative(gi in corpus_index(), i in 0usize..8, j in 0usize..8, k in 0usize..8) {
        let (_, g) = corpus().swap_remove(gi);
        let mut pool = all_classes(&g, 2);
        pool.extend(all_classes(&g, 3));
        let pick = |x: usize| pool[x % pool.len()].clone();
        let (a, b, c) = (pick(i), pick(j), pick(k));
        prop_assert_eq!(add_cocycles(&a, &b).unwrap(), add_cocycles(&b, &a).unwrap());
        prop_assert_eq!(
            add_cocycles(&add_cocycles(&a, &b).unwrap(), &c).unwrap(),
            add_cocycles(&a, &add_cocycles(&b, &c).unwrap()).unwrap()
        );
        revalidate(&add_cocycles(&a, &c).unwrap());
    }
}
