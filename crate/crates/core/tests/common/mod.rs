//! Shared corpus and brute-force oracles for the integration tests.
#![allow(dead_code)]

use std::collections::HashSet;
use std::path::PathBuf;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use twistk_core::bredon::{CochainComplex, ComplexSpec, GCWComplex};
use twistk_core::cocycle::{add_cocycles, h2_group, CocycleTable};
use twistk_core::intmat::IntMatrix;
use twistk_core::io::GroupFile;
use twistk_core::{CycNum, GroupTable};

pub fn corpus() -> Vec<(&'static str, Arc<GroupTable>)> {
    vec![
        ("C2", Arc::new(GroupTable::cyclic(2))),
        ("C4", Arc::new(GroupTable::cyclic(4))),
        ("V4", Arc::new(GroupTable::klein_four())),
        ("S3", Arc::new(GroupTable::symmetric3())),
        ("D4", Arc::new(GroupTable::dihedral(4))),
        ("Q8", Arc::new(GroupTable::quaternion())),
    ]
}

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("fixtures").join(name)
}

pub fn load_group(name: &str) -> Arc<GroupTable> {
    let f: GroupFile = serde_json::from_str(&std::fs::read_to_string(fixture(name)).unwrap()).unwrap();
    Arc::new(f.build().unwrap())
}

pub fn load_complex(group: &Arc<GroupTable>, name: &str) -> GCWComplex {
    let spec: ComplexSpec = serde_json::from_str(&std::fs::read_to_string(fixture(name)).unwrap()).unwrap();
    GCWComplex::new(group, &spec).unwrap()
}

/// `x2 * y1 mod 2` on V4 with `x = x1 + 2 x2`.
pub fn v4_xy(g: &Arc<GroupTable>) -> CocycleTable {
    let rows: Vec<Vec<i64>> = (0..4).map(|x| (0..4).map(|y| ((x >> 1) & (y & 1)) as i64).collect()).collect();
    twistk_core::cocycle::validate_cocycle(g, 2, &rows).unwrap()
}

/// `|H^2(G, Z/N)|` as `|Z^2| / |B^2|` by listing every cochain, when there are at most `2^20`.
pub fn brute_h2_order(g: &GroupTable, n: u64) -> Option<u64> {
    let m = g.order();
    let cells = m * m;
    let total = (n as u128).checked_pow(cells as u32)?;
    if total > 1 << 20 {
        return None;
    }
    let mut c = vec![0u64; cells];
    let mut cocycles = 0u64;
    loop {
        let ok = (0..m).all(|a| {
            (0..m).all(|b| {
                (0..m).all(|d| (c[a * m + b] + c[g.mul(a, b) * m + d]) % n == (c[b * m + d] + c[a * m + g.mul(b, d)]) % n)
            })
        });
        cocycles += u64::from(ok);
        let mut i = 0;
        while i < cells {
            c[i] += 1;
            if c[i] < n {
                break;
            }
            c[i] = 0;
            i += 1;
        }
        if i == cells {
            break;
        }
    }
    let mut bounds = HashSet::new();
    let mut u = vec![0u64; m];
    loop {
        let table: Vec<u64> =
            (0..m).flat_map(|a| (0..m).map(move |b| (a, b))).map(|(a, b)| (u[a] + u[b] + n - u[g.mul(a, b)]) % n).collect();
        bounds.insert(table);
        let mut i = 0;
        while i < m {
            u[i] += 1;
            if u[i] < n {
                break;
            }
            u[i] = 0;
            i += 1;
        }
        if i == m {
            break;
        }
    }
    Some(cocycles / bounds.len() as u64)
}

/// Every subset containing the identity and closed under multiplication.
pub fn brute_subgroups(g: &GroupTable) -> Vec<Vec<usize>> {
    let m = g.order();
    assert!(m <= 20);
    let mut out = Vec::new();
    for mask in 0u32..(1 << (m - 1)) {
        let set: Vec<usize> = std::iter::once(0).chain((1..m).filter(|i| mask >> (i - 1) & 1 == 1)).collect();
        let inside = |x: usize| x == 0 || mask >> (x - 1) & 1 == 1;
        if set.iter().all(|&a| set.iter().all(|&b| inside(g.mul(a, b)))) {
            out.push(set);
        }
    }
    out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    out
}

/// Every class of `H^2(G, Z/N)` as a combination of the computed generators.
pub fn all_classes(g: &Arc<GroupTable>, n: u64) -> Vec<CocycleTable> {
    let h = h2_group(g, n).unwrap();
    let mut classes = vec![CocycleTable::trivial(g, n)];
    for (gen, &d) in h.generators.iter().zip(&h.invariant_factors) {
        let mut next = Vec::new();
        for c in &classes {
            let mut acc = c.clone();
            for _ in 0..d {
                next.push(acc.clone());
                acc = add_cocycles(&acc, gen).unwrap();
            }
        }
        classes = next;
    }
    classes
}

/// `(1/|G|) sum a(g) conj(b(g))` by direct summation.
pub fn direct_inner(a: &[CycNum], b: &[CycNum]) -> CycNum {
    let mut acc = CycNum::zero();
    for (x, y) in a.iter().zip(b) {
        acc = &acc + &(x * &y.conjugate());
    }
    acc.scale(&BigRational::new(BigInt::one(), BigInt::from(a.len())))
}

/// Rank over Q by fraction-field Gaussian elimination.
pub fn rational_rank(m: &IntMatrix) -> usize {
    let mut a: Vec<Vec<BigRational>> =
        m.row_slices().iter().map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()).collect();
    let (rows, cols) = (m.rows(), m.cols());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(rank, p);
        let pivot = a[rank][c].clone();
        for r in 0..rows {
            if r != rank && !a[r][c].is_zero() {
                let f = &a[r][c] / &pivot;
                for k in c..cols {
                    let t = &a[rank][k] * &f;
                    a[r][k] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rational Betti numbers of a cochain complex.
pub fn rational_betti(c: &CochainComplex) -> Vec<usize> {
    let ranks: Vec<usize> = c.deltas.iter().map(rational_rank).collect();
    (0..c.dims.len())
        .map(|p| c.dims[p] - ranks.get(p).copied().unwrap_or(0) - p.checked_sub(1).map_or(0, |q| ranks[q]))
        .collect()
}
