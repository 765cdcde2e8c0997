mod common;

use std::sync::Arc;

use common::*;
use proptest::prelude::*;
use twistk_core::bredon::*;
use twistk_core::cocycle::CocycleTable;
use twistk_core::group::enumerate_subgroups;
use twistk_core::twisted::{decompose, SectionCharacter};
use twistk_core::{CycNum, Error, GroupTable, Subgroup};

fn cohomology(x: &GCWComplex, alpha: &CocycleTable) -> CohomologyResult {
    let sys = coefficient_system_from_cocycle(alpha, &x.isotropy_family()).unwrap();
    integral_cohomology(&bredon_cochains(x, &sys, None).unwrap()).unwrap()
}

/// Coordinates of the unit character on every 0-cell.
fn unit_cochain(x: &GCWComplex, sys: &CoefficientSystem) -> Vec<i64> {
    let mut out = Vec::new();
    for i in x.cells_in_degree(0) {
        let h = &x.cells()[i].isotropy;
        let basis = sys.context().basis(h).unwrap();
        let ones = SectionCharacter::new(basis.cocycle().clone(), vec![CycNum::one(); h.order()]).unwrap();
        out.extend_from_slice(decompose(&ones, &basis).unwrap().coords());
    }
    out
}

#[test]
fn spec_examples() {
    let c2 = load_group("group_c2.json");
    let triv = CocycleTable::trivial(&c2, 1);
    let refl = load_complex(&c2, "c2_reflection_circle.json");
    let sys = coefficient_system_from_cocycle(&triv, &refl.isotropy_family()).unwrap();
    let c = bredon_cochains(&refl, &sys, None).unwrap();
    assert_eq!(c.deltas[0].row_slices(), &[vec![-1, -1, 1, 1]]);
    let anti = load_complex(&c2, "c2_antipodal_circle.json");
    let sys = coefficient_system_from_cocycle(&triv, &anti.isotropy_family()).unwrap();
    assert!(bredon_cochains(&anti, &sys, None).unwrap().deltas[0].is_zero());
    let h = cohomology(&anti, &triv);
    assert_eq!((h.free_rank(0), h.free_rank(1)), (1, 1));
}

#[test]
fn trivial_family_everywhere_identity() {
    let s3 = Arc::new(GroupTable::symmetric3());
    let sys = coefficient_system_from_cocycle(&CocycleTable::trivial(&s3, 1), &[s3.trivial_subgroup()]).unwrap();
    let one = s3.trivial_subgroup();
    assert_eq!(sys.rank(&one).unwrap(), 1);
    for g in 0..6 {
        assert_eq!(sys.morphism(&one, &one, g).unwrap(), twistk_core::intmat::IntMatrix::identity(1));
    }
}

#[test]
fn conjugate_isotropy_gives_same_cohomology() {
    for (name, g) in corpus() {
        for alpha in all_classes(&g, 2) {
            for h in enumerate_subgroups(&g).unwrap() {
                let base = cohomology(&GCWComplex::orbit(&g, &h).unwrap(), &alpha);
                for x in 0..g.order() {
                    let c = cohomology(&GCWComplex::orbit(&g, &h.conjugate(&g, x)).unwrap(), &alpha);
                    assert_eq!(c.degrees, base.degrees, "{name}");
                }
            }
        }
    }
}

#[test]
fn vanishing_above_dimension() {
    let t = load_group("group_trivial.json");
    let x = load_complex(&t, "trivial_circle.json");
    let h = cohomology(&x, &CocycleTable::trivial(&t, 1));
    assert_eq!(h.degrees.len(), 2);
    assert_eq!(h.free_rank(2), 0);
    assert!(h.torsion(5).is_empty());
}

#[test]
fn relative_and_errors() {
    let c2 = load_group("group_c2.json");
    let x = load_complex(&c2, "c2_reflection_circle.json");
    assert!(matches!(x.resolve_subcomplex(&["e".into()]), Err(Error::NotASubcomplex(_))));
    let a = x.resolve_subcomplex(&["p".into(), "q".into()]).unwrap();
    let sys = coefficient_system_from_cocycle(&CocycleTable::trivial(&c2, 1), &x.isotropy_family()).unwrap();
    let rel = integral_cohomology(&bredon_cochains(&x, &sys, Some(&a)).unwrap()).unwrap();
    assert_eq!((rel.free_rank(0), rel.free_rank(1)), (0, 1));
    let bad = CocycleTable::trivial(&c2, 1);
    let only_free = coefficient_system_from_cocycle(&bad, &[c2.trivial_subgroup()]).unwrap();
    assert!(matches!(bredon_cochains(&x, &only_free, None), Err(Error::IsotropyNotInFamily(_))));
    let s3 = Arc::new(GroupTable::symmetric3());
    let t = Subgroup::new(&s3, vec![0, (1..6).find(|&g| s3.element_order(g) == 2).unwrap()]).unwrap();
    assert!(matches!(coefficient_system_from_cocycle(&CocycleTable::trivial(&s3, 1), &[t]), Err(Error::FamilyNotClosed(_))));
}

#[test]
fn h0_pairing_examples() {
    let v4 = load_group("group_v4.json");
    let a = v4_xy(&v4);
    let pt = load_complex(&v4, "v4_point.json");
    let pairing = h0_module_pairing(&pt, &a, &a).unwrap();
    let chi = pairing.kernel_alpha();
    assert_eq!(chi, [vec![1]]);
    assert_eq!(pairing.pair(&chi[0], &chi[0]).unwrap(), [1, 1, 1, 1]);

    for (gname, f, alpha) in [
        ("group_c2.json", "c2_reflection_circle.json", None),
        ("group_c2.json", "c2_reflection_circle_fine.json", None),
        ("group_v4.json", "v4_segment.json", Some(a.clone())),
    ] {
        let g = load_group(gname);
        let x = load_complex(&g, f);
        let alpha = alpha.unwrap_or_else(|| CocycleTable::trivial(&g, 1));
        let p = h0_module_pairing(&x, &CocycleTable::trivial(&g, 1), &alpha).unwrap();
        let unit = unit_cochain(&x, p.alpha_system());
        for y in p.kernel_beta() {
            assert_eq!(p.pair(&unit, &y).unwrap(), y, "{f}");
        }
        let q = h0_module_pairing(&x, &alpha, &alpha).unwrap();
        let ker = q.kernel_alpha();
        for s in &ker {
            for t in &ker {
                assert_eq!(q.pair(s, t).unwrap(), q.pair(t, s).unwrap(), "{f}");
            }
        }
    }
}

#[test]
fn pairing_rejects_non_cocycles() {
    let c2 = load_group("group_c2.json");
    let x = load_complex(&c2, "c2_reflection_circle.json");
    let t = CocycleTable::trivial(&c2, 1);
    let p = h0_module_pairing(&x, &t, &t).unwrap();
    assert!(p.pair(&[1, 0, 0, 0], &[1, 0, 0, 0]).is_err());
}

#[derive(Debug, Clone)]
struct Graph {
    fixed: Vec<bool>,
    edges: Vec<(usize, usize, usize)>,
    sub: Vec<bool>,
}

fn graph() -> impl Strategy<Value = Graph> {
    (1usize..5).prop_flat_map(|nv| {
        (
            prop::collection::vec(any::<bool>(), nv),
            prop::collection::vec((0..nv, 0..nv, 0usize..2), 0..6),
            prop::collection::vec(any::<bool>(), nv),
        )
            .prop_map(|(fixed, edges, sub)| Graph { fixed, edges, sub })
    })
}

fn build(g: &Arc<GroupTable>, gr: &Graph) -> GCWComplex {
    let mut cells: Vec<CellSpec> = gr
        .fixed
        .iter()
        .enumerate()
        .map(|(i, &f)| CellSpec { dim: 0, id: format!("v{i}"), isotropy: if f { vec![0, 1] } else { vec![0] }, boundary: vec![] })
        .collect();
    for (k, &(s, t, tw)) in gr.edges.iter().enumerate() {
        cells.push(CellSpec {
            dim: 1,
            id: format!("e{k}"),
            isotropy: vec![0],
            boundary: vec![
                IncidenceSpec { cell: format!("v{s}"), g: 0, m: -1 },
                IncidenceSpec { cell: format!("v{t}"), g: tw, m: 1 },
            ],
        });
    }
    let subcomplex = gr.sub.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| format!("v{i}")).collect();
    GCWComplex::new(g, &ComplexSpec { cells, subcomplex }).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_c2_graphs(gr in graph(), other in graph(), twisted in any::<bool>()) {
        let c2 = Arc::new(GroupTable::cyclic(2));
        let alpha = if twisted {
            twistk_core::cocycle::validate_cocycle(&c2, 2, &[vec![0, 0], vec![0, 1]]).unwrap()
        } else {
            CocycleTable::trivial(&c2, 1)
        };
        let x = build(&c2, &gr);
        let sys = coefficient_system_from_cocycle(&alpha, &x.isotropy_family()).unwrap();
        let c = bredon_cochains(&x, &sys, None).unwrap();
        let h = integral_cohomology(&c).unwrap();
        prop_assert!(h.euler_consistent());
        prop_assert_eq!(rational_betti(&c), h.degrees.iter().map(|d| d.free_rank).collect::<Vec<_>>());
        let les = les_of_pair(&x, &sys, x.subcomplex()).unwrap();
        prop_assert!(les.exact(), "{:?}", les);

        let y = build(&c2, &other);
        let hy = cohomology(&y, &alpha);
        let hu = cohomology(&x.disjoint_union(&y).unwrap(), &alpha);
        for p in 0..hu.degrees.len() {
            prop_assert_eq!(hu.free_rank(p), h.free_rank(p) + hy.free_rank(p));
        }
    }
}
