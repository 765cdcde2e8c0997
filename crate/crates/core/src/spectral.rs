//! The E2 page of the twisted Atiyah-Hirzebruch spectral sequence and rational twisted K-ranks.
//!
//! Over Q the sequence collapses at E2, so the ranks of `K^0` and `K^1` are the even and odd
//! sums of the free ranks of Bredon cohomology. Integral torsion is not determined.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bredon::{bredon_cochains, coefficient_system_from_cocycle, integral_cohomology, CohomologyResult, GCWComplex};
use crate::cocycle::{restrict_cocycle, CocycleTable};
use crate::error::{Error, Result};
use crate::group::{GroupTable, Subgroup};
use crate::twisted::{alpha_character_basis, AlphaCharBasis};

pub const TORSION_UNDETERMINED: &str = "undetermined";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct E2Entry {
    pub p: usize,
    pub q_mod_2: u8,
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

/// `E2^{p,q} = H^p_G(X; R_alpha)` for even `q` and zero for odd `q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct E2Page {
    pub entries: Vec<E2Entry>,
    pub cohomology: CohomologyResult,
}

impl E2Page {
    pub fn entry(&self, p: i64, q: i64) -> Option<&E2Entry> {
        let p = usize::try_from(p).ok()?;
        self.entries.iter().find(|e| e.p == p && i64::from(e.q_mod_2) == q.rem_euclid(2))
    }

    /// Free rank of `E2^{p,q}`, zero outside the populated range.
    pub fn free_rank(&self, p: i64, q: i64) -> usize {
        self.entry(p, q).map_or(0, |e| e.free_rank)
    }

    pub fn dimension(&self) -> usize {
        self.entries.iter().map(|e| e.p).max().unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KRanks {
    pub k0_rank: usize,
    pub k1_rank: usize,
    pub torsion: String,
}

pub fn e2_page(x: &GCWComplex, alpha: &CocycleTable) -> Result<E2Page> {
    if x.group() != alpha.group() {
        return Err(Error::GroupMismatch);
    }
    let sys = coefficient_system_from_cocycle(alpha, &x.isotropy_family())?;
    let cohomology = integral_cohomology(&bredon_cochains(x, &sys, None)?)?;
    let entries = cohomology
        .degrees
        .iter()
        .flat_map(|d| {
            [
                E2Entry { p: d.degree, q_mod_2: 0, free_rank: d.free_rank, torsion: d.torsion.clone() },
                E2Entry { p: d.degree, q_mod_2: 1, free_rank: 0, torsion: vec![] },
            ]
        })
        .collect();
    Ok(E2Page { entries, cohomology })
}

pub fn k_ranks_from_page(page: &E2Page) -> KRanks {
    let (mut k0, mut k1) = (0, 0);
    for d in &page.cohomology.degrees {
        if d.degree % 2 == 0 {
            k0 += d.free_rank;
        } else {
            k1 += d.free_rank;
        }
    }
    KRanks { k0_rank: k0, k1_rank: k1, torsion: TORSION_UNDETERMINED.into() }
}

pub fn rational_k_ranks(x: &GCWComplex, alpha: &CocycleTable) -> Result<KRanks> {
    Ok(k_ranks_from_page(&e2_page(x, alpha)?))
}

/// `K^0_G(G/H)` as the twisted representation group of `H`; `K^1` vanishes.
#[derive(Debug, Clone)]
pub struct OrbitK {
    pub k0: Arc<AlphaCharBasis>,
    pub k1_rank: usize,
}

impl OrbitK {
    pub fn k0_rank(&self) -> usize {
        self.k0.len()
    }
}

pub fn orbit_k(alpha: &CocycleTable, h: &Subgroup) -> Result<OrbitK> {
    Ok(OrbitK { k0: alpha_character_basis(&restrict_cocycle(alpha, h)?)?, k1_rank: 0 })
}

pub fn one_orbit_complex(group: &Arc<GroupTable>, h: &Subgroup) -> Result<GCWComplex> {
    GCWComplex::orbit(group, h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bredon::ComplexSpec;
    use crate::cocycle::validate_cocycle;
    use crate::group::enumerate_subgroups;

    fn v4_xy() -> CocycleTable {
        let g = Arc::new(GroupTable::klein_four());
        let rows: Vec<Vec<i64>> = (0..4).map(|x| (0..4).map(|y| ((x >> 1) & (y & 1)) as i64).collect()).collect();
        validate_cocycle(&g, 2, &rows).unwrap()
    }

    #[test]
    fn v4_orbits() {
        let a = v4_xy();
        let g = a.group().clone();
        assert_eq!(orbit_k(&a, &g.whole()).unwrap().k0_rank(), 1);
        assert_eq!(orbit_k(&a, &g.generate(&[1]).unwrap()).unwrap().k0_rank(), 2);
        assert_eq!(orbit_k(&a, &g.trivial_subgroup()).unwrap().k0_rank(), 1);
        let k = rational_k_ranks(&one_orbit_complex(&g, &g.whole()).unwrap(), &a).unwrap();
        assert_eq!((k.k0_rank, k.k1_rank, k.torsion.as_str()), (1, 0, "undetermined"));
        for h in enumerate_subgroups(&g).unwrap() {
            let k = rational_k_ranks(&one_orbit_complex(&g, &h).unwrap(), &a).unwrap();
            assert_eq!(k.k0_rank, orbit_k(&a, &h).unwrap().k0_rank());
        }
    }

    #[test]
    fn page_shape() {
        let g = Arc::new(GroupTable::trivial());
        let spec: ComplexSpec = serde_json::from_str(
            r#"{"cells":[
                {"dim":0,"id":"v","isotropy":[0]},
                {"dim":1,"id":"e","isotropy":[0],"boundary":[{"cell":"v","g":0,"m":1},{"cell":"v","g":0,"m":-1}]}
            ]}"#,
        )
        .unwrap();
        let x = GCWComplex::new(&g, &spec).unwrap();
        let page = e2_page(&x, &CocycleTable::trivial(&g, 1)).unwrap();
        assert_eq!(page.free_rank(0, 0), 1);
        assert_eq!(page.free_rank(1, -2), 1);
        assert_eq!(page.free_rank(1, 3), 0);
        assert_eq!(page.free_rank(2, 0), 0);
        let k = k_ranks_from_page(&page);
        assert_eq!((k.k0_rank, k.k1_rank), (1, 1));
    }
}
