mod common;

use std::sync::Arc;

use common::*;
use twistk_core::cocycle::{normalize_cocycle, CocycleTable};
use twistk_core::group::enumerate_subgroups;
use twistk_core::intmat::IntMatrix;
use twistk_core::twisted::*;
use twistk_core::GroupTable;

fn twists(g: &Arc<GroupTable>) -> Vec<CocycleTable> {
    let mut t = vec![CocycleTable::trivial(g, 1)];
    t.extend(all_classes(g, 2).into_iter().skip(1));
    t.extend(all_classes(g, 3).into_iter().skip(1));
    t
}

#[test]
fn frobenius_and_functoriality() {
    for (name, g) in corpus() {
        let subs = enumerate_subgroups(&g).unwrap();
        for alpha in twists(&g) {
            let ctx = TwistedContext::new(&alpha);
            for h in &subs {
                assert_eq!(restriction_matrix(&alpha, h).unwrap(), induction_matrix(&alpha, h).unwrap().transpose(), "{name}");
                for k in subs.iter().filter(|k| h.is_subgroup_of(k)) {
                    let chain = ctx.restriction(k, h).unwrap().mul(&ctx.restriction(&g.whole(), k).unwrap());
                    assert_eq!(chain, ctx.restriction(&g.whole(), h).unwrap(), "{name}");
                    let ind = ctx.induction(k, &g.whole()).unwrap().mul(&ctx.induction(h, k).unwrap());
                    assert_eq!(ind, ctx.induction(h, &g.whole()).unwrap(), "{name}");
                }
                for x in 0..g.order() {
                    for y in 0..g.order() {
                        let two = ctx.conjugation(&h.conjugate(&g, y), x).unwrap().mul(&ctx.conjugation(h, y).unwrap());
                        assert_eq!(two, ctx.conjugation(h, g.mul(x, y)).unwrap(), "{name}");
                    }
                }
            }
        }
    }
}

#[test]
fn centralizer_acts_trivially_without_twist() {
    for (name, g) in corpus() {
        let alpha = CocycleTable::trivial(&g, 1);
        for h in enumerate_subgroups(&g).unwrap() {
            let id = IntMatrix::identity(TwistedContext::new(&alpha).basis(&h).unwrap().len());
            for x in (0..g.order()).filter(|&x| h.elements().iter().all(|&y| g.mul(x, y) == g.mul(y, x))) {
                assert_eq!(conjugation_matrix(&alpha, &h, x).unwrap(), id, "{name}");
            }
        }
    }
}

#[test]
fn twisted_centralizer_swaps_characters() {
    // b centralizes <a> in V4, yet conjugation by b swaps the two alpha_xy-characters of <a>
    let v4 = Arc::new(GroupTable::klein_four());
    let alpha = v4_xy(&v4);
    let h = v4.generate(&[1]).unwrap();
    assert_eq!(conjugation_matrix(&alpha, &h, 2).unwrap(), IntMatrix::from_rows(2, vec![vec![0, 1], vec![1, 0]]));
}

#[test]
fn coefficient_ranks_for_v4() {
    let v4 = Arc::new(GroupTable::klein_four());
    let ctx = TwistedContext::new(&v4_xy(&v4));
    let ranks: Vec<usize> = enumerate_subgroups(&v4).unwrap().iter().map(|h| ctx.basis(h).unwrap().len()).collect();
    assert_eq!(ranks, [1, 2, 2, 2, 1]);
}

#[test]
fn decomposition_of_regular_character() {
    for (name, g) in corpus() {
        for alpha in twists(&g) {
            let basis = alpha_character_basis(&alpha).unwrap();
            let reg = SectionCharacter::regular(Arc::new(alpha.clone()));
            let coords = decompose(&reg, &basis).unwrap();
            assert_eq!(coords.coords(), basis.degrees().as_slice(), "{name}");
        }
    }
}

#[test]
fn products_land_in_normalized_twist() {
    for (name, g) in corpus() {
        for alpha in twists(&g) {
            let basis = alpha_character_basis(&alpha).unwrap();
            let norm = normalize_cocycle(&alpha).unwrap();
            for x in basis_elements(&basis) {
                let p = twisted_product(&x, &RAlphaElement::unit(&g).unwrap()).unwrap();
                assert_eq!(**p.value.cocycle(), norm.cocycle, "{name}");
                assert_eq!(p.witness, norm.witness, "{name}");
            }
        }
    }
}
