use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::cocycle::CocycleTable;
use crate::cyclotomic::CycNum;
use crate::extension::CentralExtension;

/// Result of checking that `phi` embeds the twisted group algebra into `C[G_alpha]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiReport {
    pub pairs_checked: usize,
    pub multiplicative: bool,
    pub independent: bool,
    pub first_failure: Option<(usize, usize)>,
}

impl PhiReport {
    pub fn passed(&self) -> bool {
        self.multiplicative && self.independent
    }
}

/// A formal combination of elements of `G_alpha`.
type Formal = BTreeMap<usize, CycNum>;

fn convolve(ext: &CentralExtension, a: &Formal, b: &Formal) -> Formal {
    let t = ext.total();
    let mut out = Formal::new();
    for (&x, u) in a {
        for (&y, v) in b {
            let slot = out.entry(t.mul(x, y)).or_insert_with(CycNum::zero);
            *slot = &*slot + &(u * v);
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// `phi(g~) = (1/n) sum_j zeta^{n-j} (g, sigma^j)`.
pub fn phi_element(ext: &CentralExtension, g: usize) -> BTreeMap<usize, CycNum> {
    let n = ext.n();
    let inv_n = BigRational::new(BigInt::from(1), BigInt::from(n));
    (0..n).map(|j| (ext.element(g, j), CycNum::root_of_unity(n, (n - j) as i64).scale(&inv_n))).collect()
}

/// Verifies `phi(g~) phi(h~) = zeta^{alpha(g,h)} phi((gh)~)` on all pairs and that the
/// images are linearly independent (nonzero with pairwise disjoint supports).
pub fn phi_embedding_check(alpha: &CocycleTable) -> PhiReport {
    let ext = CentralExtension::new(alpha);
    let grp = alpha.group();
    let m = grp.order();
    let n = ext.n();
    let phis: Vec<Formal> = (0..m).map(|g| phi_element(&ext, g)).collect();

    let mut first_failure = None;
    for g in 0..m {
        for h in 0..m {
            let lhs = convolve(&ext, &phis[g], &phis[h]);
            let zeta = CycNum::root_of_unity(n, alpha.entry(g, h) as i64);
            let mut rhs: Formal = phis[grp.mul(g, h)].iter().map(|(&k, v)| (k, v * &zeta)).collect();
            rhs.retain(|_, v| !v.is_zero());
            if lhs != rhs && first_failure.is_none() {
                first_failure = Some((g, h));
            }
        }
    }

    let mut owner = vec![None; ext.total().order()];
    let mut independent = phis.iter().all(|p| !p.is_empty());
    for (g, p) in phis.iter().enumerate() {
        for &x in p.keys() {
            if owner[x].replace(g).is_some() {
                independent = false;
            }
        }
    }
    PhiReport { pairs_checked: m * m, multiplicative: first_failure.is_none(), independent, first_failure }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycle::validate_cocycle;
    use crate::group::GroupTable;
    use std::sync::Arc;

    #[test]
    fn c2_square_is_minus_identity() {
        let g = Arc::new(GroupTable::cyclic(2));
        let beta = validate_cocycle(&g, 2, &[vec![0, 0], vec![0, 1]]).unwrap();
        let report = phi_embedding_check(&beta);
        assert!(report.passed());
        let ext = CentralExtension::new(&beta);
        let a = phi_element(&ext, 1);
        let sq = convolve(&ext, &a, &a);
        let minus_e: Formal = phi_element(&ext, 0).into_iter().map(|(k, v)| (k, -v)).collect();
        assert_eq!(sq, minus_e);
    }

    #[test]
    fn trivial_and_v4() {
        let v4 = Arc::new(GroupTable::klein_four());
        assert!(phi_embedding_check(&CocycleTable::trivial(&v4, 1)).passed());
        let rows: Vec<Vec<i64>> = (0..4).map(|x| (0..4).map(|y| ((x >> 1) & (y & 1)) as i64).collect()).collect();
        let r = phi_embedding_check(&validate_cocycle(&v4, 2, &rows).unwrap());
        assert!(r.passed());
        assert_eq!(r.pairs_checked, 16);
    }
}
