use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;

use super::basis::{alpha_character_basis, decompose_values, AlphaCharBasis};
use crate::cocycle::{restrict_cocycle, CocycleTable};
use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::extension::CentralExtension;
use crate::group::{GroupTable, Subgroup};
use crate::intmat::IntMatrix;

type Memo<K> = Mutex<HashMap<K, IntMatrix>>;

fn memo<K: Eq + Hash + Clone>(cache: &Memo<K>, key: K, f: impl FnOnce() -> Result<IntMatrix>) -> Result<IntMatrix> {
    if let Some(m) = cache.lock().expect("matrix cache poisoned").get(&key) {
        return Ok(m.clone());
    }
    let m = f()?;
    Ok(cache.lock().expect("matrix cache poisoned").entry(key).or_insert(m).clone())
}

/// Restriction, conjugation and induction between the groups `R_alpha(H)` for subgroups `H <= G`.
///
/// The basis of `R_alpha(H)` is the one for the restricted cocycle; matrices act on column
/// coordinate vectors.
pub struct TwistedContext {
    alpha: CocycleTable,
    ext: CentralExtension,
    res: Memo<(Subgroup, Subgroup)>,
    ind: Memo<(Subgroup, Subgroup)>,
    conj: Memo<(Subgroup, usize)>,
}

impl TwistedContext {
    pub fn new(alpha: &CocycleTable) -> Self {
        TwistedContext {
            alpha: alpha.clone(),
            ext: CentralExtension::new(alpha),
            res: Default::default(),
            ind: Default::default(),
            conj: Default::default(),
        }
    }

    pub fn group(&self) -> &Arc<GroupTable> {
        self.alpha.group()
    }

    pub fn alpha(&self) -> &CocycleTable {
        &self.alpha
    }

    pub fn extension(&self) -> &CentralExtension {
        &self.ext
    }

    fn checked(&self, h: &Subgroup) -> Result<Subgroup> {
        Subgroup::new(self.group(), h.elements().to_vec())
    }

    pub fn basis(&self, h: &Subgroup) -> Result<Arc<AlphaCharBasis>> {
        alpha_character_basis(&restrict_cocycle(&self.alpha, h)?)
    }

    fn zeta_shift(&self, v: &CycNum, j: usize) -> CycNum {
        if j == 0 {
            v.clone()
        } else {
            v.mul_root(self.ext.n(), j as i64)
        }
    }

    /// `R_alpha(from) -> R_alpha(to)` for `to <= from`.
    pub fn restriction(&self, from: &Subgroup, to: &Subgroup) -> Result<IntMatrix> {
        let (from, to) = (self.checked(from)?, self.checked(to)?);
        if !to.is_subgroup_of(&from) {
            return Err(Error::NotASubgroup(format!("{:?} is not contained in {:?}", to.elements(), from.elements())));
        }
        memo(&self.res, (from.clone(), to.clone()), || {
            let (bf, bt) = (self.basis(&from)?, self.basis(&to)?);
            let mut cols = Vec::with_capacity(bf.len());
            for chi in bf.irreducibles() {
                let values: Vec<CycNum> = to.elements().iter().map(|&x| chi.values()[from.position(x).unwrap()].clone()).collect();
                cols.push(decompose_values(&values, &bt)?.coords().to_vec());
            }
            Ok(IntMatrix::from_columns(bt.len(), &cols))
        })
    }

    /// `R_alpha(H) -> R_alpha(gHg^-1)`: transport of characters along conjugation by `g`.
    pub fn conjugation(&self, h: &Subgroup, g: usize) -> Result<IntMatrix> {
        let grp = self.group().clone();
        if !grp.contains(g) {
            return Err(Error::ElementNotInGroup(g));
        }
        let h = self.checked(h)?;
        memo(&self.conj, (h.clone(), g), || {
            let target = h.conjugate(&grp, g);
            let (bh, bt) = (self.basis(&h)?, self.basis(&target)?);
            let ginv = grp.inv(g);
            let mut cols = Vec::with_capacity(bh.len());
            for psi in bh.irreducibles() {
                let values: Vec<CycNum> = target
                    .elements()
                    .iter()
                    .map(|&x| {
                        // s(g)^-1 s(x) s(g) = z^j s(y)
                        let (y, j) = self.ext.conj_section(ginv, x);
                        self.zeta_shift(&psi.values()[h.position(y).unwrap()], j)
                    })
                    .collect();
                cols.push(decompose_values(&values, &bt)?.coords().to_vec());
            }
            Ok(IntMatrix::from_columns(bt.len(), &cols))
        })
    }

    /// `R_alpha(from) -> R_alpha(to)` for `from <= to`, via ordinary induction from `from_alpha` to `to_alpha`.
    pub fn induction(&self, from: &Subgroup, to: &Subgroup) -> Result<IntMatrix> {
        let (from, to) = (self.checked(from)?, self.checked(to)?);
        if !from.is_subgroup_of(&to) {
            return Err(Error::NotASubgroup(format!("{:?} is not contained in {:?}", from.elements(), to.elements())));
        }
        memo(&self.ind, (from.clone(), to.clone()), || {
            let grp = self.group();
            let (bf, bt) = (self.basis(&from)?, self.basis(&to)?);
            let scale = BigRational::new(BigInt::from(1), BigInt::from(from.order()));
            let mut cols = Vec::with_capacity(bf.len());
            for psi in bf.irreducibles() {
                let values: Vec<CycNum> = to
                    .elements()
                    .iter()
                    .map(|&x| {
                        let terms: Vec<CycNum> = to
                            .elements()
                            .iter()
                            .filter_map(|&g| {
                                from.position(grp.conj(g, x)).map(|p| {
                                    let (_, j) = self.ext.conj_section(g, x);
                                    self.zeta_shift(&psi.values()[p], j)
                                })
                            })
                            .collect();
                        CycNum::sum(&terms).scale(&scale)
                    })
                    .collect();
                cols.push(decompose_values(&values, &bt)?.coords().to_vec());
            }
            Ok(IntMatrix::from_columns(bt.len(), &cols))
        })
    }
}

/// `R_alpha(G) -> R_alpha(H)`.
pub fn restriction_matrix(alpha: &CocycleTable, h: &Subgroup) -> Result<IntMatrix> {
    TwistedContext::new(alpha).restriction(&alpha.group().whole(), h)
}

/// `R_alpha(H) -> R_alpha(gHg^-1)`.
pub fn conjugation_matrix(alpha: &CocycleTable, h: &Subgroup, g: usize) -> Result<IntMatrix> {
    TwistedContext::new(alpha).conjugation(h, g)
}

/// `R_alpha(H) -> R_alpha(G)`.
pub fn induction_matrix(alpha: &CocycleTable, h: &Subgroup) -> Result<IntMatrix> {
    TwistedContext::new(alpha).induction(h, &alpha.group().whole())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycle::validate_cocycle;
    use crate::group::enumerate_subgroups;

    fn v4_xy() -> CocycleTable {
        let g = Arc::new(GroupTable::klein_four());
        let rows: Vec<Vec<i64>> = (0..4).map(|x| (0..4).map(|y| ((x >> 1) & (y & 1)) as i64).collect()).collect();
        validate_cocycle(&g, 2, &rows).unwrap()
    }

    #[test]
    fn restriction_examples() {
        let a = v4_xy();
        let g = a.group().clone();
        assert_eq!(restriction_matrix(&a, &g.whole()).unwrap(), IntMatrix::identity(1));
        let ha = Subgroup::new(&g, vec![0, 1]).unwrap();
        assert_eq!(restriction_matrix(&a, &ha).unwrap(), IntMatrix::from_rows(1, vec![vec![1], vec![1]]));
        let t = CocycleTable::trivial(&g, 1);
        let r = restriction_matrix(&t, &ha).unwrap();
        assert_eq!((r.rows(), r.cols()), (2, 4));
        for j in 0..4 {
            assert_eq!(r.column(j).iter().sum::<i64>(), 1);
        }
    }

    #[test]
    fn induction_examples() {
        let c2 = Arc::new(GroupTable::cyclic(2));
        let t = CocycleTable::trivial(&c2, 1);
        assert_eq!(induction_matrix(&t, &c2.trivial_subgroup()).unwrap(), IntMatrix::from_rows(1, vec![vec![1], vec![1]]));
        assert_eq!(induction_matrix(&t, &c2.whole()).unwrap(), IntMatrix::identity(2));
        let a = v4_xy();
        let ha = Subgroup::new(a.group(), vec![0, 1]).unwrap();
        assert_eq!(induction_matrix(&a, &ha).unwrap(), IntMatrix::from_rows(2, vec![vec![1, 1]]));
    }

    #[test]
    fn frobenius_and_functoriality() {
        for (g, n) in [(GroupTable::symmetric3(), 2), (GroupTable::dihedral(4), 2), (GroupTable::quaternion(), 4)] {
            let g = Arc::new(g);
            let alphas = crate::cocycle::h2_group(&g, n).unwrap().generators;
            for alpha in alphas.iter().chain([&CocycleTable::trivial(&g, 1)]) {
                let ctx = TwistedContext::new(alpha);
                let subs = enumerate_subgroups(&g).unwrap();
                for h in &subs {
                    let res = ctx.restriction(&g.whole(), h).unwrap();
                    let ind = ctx.induction(h, &g.whole()).unwrap();
                    assert_eq!(res, ind.transpose());
                    for k in subs.iter().filter(|k| h.is_subgroup_of(k)) {
                        let direct = ctx.restriction(&g.whole(), h).unwrap();
                        let via = ctx.restriction(k, h).unwrap().mul(&ctx.restriction(&g.whole(), k).unwrap());
                        assert_eq!(direct, via);
                    }
                }
            }
        }
    }

    #[test]
    fn conjugation_examples() {
        let s3 = Arc::new(GroupTable::symmetric3());
        let t = CocycleTable::trivial(&s3, 1);
        let ctx = TwistedContext::new(&t);
        let subs = enumerate_subgroups(&s3).unwrap();
        for h in &subs {
            assert_eq!(ctx.conjugation(h, 0).unwrap(), IntMatrix::identity(ctx.basis(h).unwrap().len()));
            // centralizing elements act trivially for the untwisted theory
            for g in (0..6).filter(|&g| h.elements().iter().all(|&x| s3.conj(g, x) == x)) {
                assert_eq!(ctx.conjugation(h, g).unwrap(), IntMatrix::identity(ctx.basis(h).unwrap().len()));
            }
        }
        // transport between two order-2 subgroups matches characters by value
        let h = subs.iter().find(|h| h.order() == 2).unwrap();
        let r = (0..6).find(|&g| s3.element_order(g) == 3).unwrap();
        let m = ctx.conjugation(h, r).unwrap();
        let bh = ctx.basis(h).unwrap();
        let bt = ctx.basis(&h.conjugate(&s3, r)).unwrap();
        for j in 0..2 {
            let i = (0..2).find(|&i| m.get(i, j) == 1).unwrap();
            assert_eq!(bh.irreducibles()[j].values(), bt.irreducibles()[i].values());
        }

        let a = v4_xy();
        assert!(matches!(conjugation_matrix(&a, &a.group().whole(), 9), Err(Error::ElementNotInGroup(9))));
    }

    #[test]
    fn twisted_centralizer_can_act_nontrivially() {
        // In G_alpha = D4, s(b) conjugates s(a) to z s(a), swapping the two characters of <a>.
        let a = v4_xy();
        let ha = Subgroup::new(a.group(), vec![0, 1]).unwrap();
        let m = conjugation_matrix(&a, &ha, 2).unwrap();
        assert_eq!(m, IntMatrix::from_rows(2, vec![vec![0, 1], vec![1, 0]]));
        assert_eq!(conjugation_matrix(&a, &ha, 1).unwrap(), IntMatrix::identity(2));
    }
}
