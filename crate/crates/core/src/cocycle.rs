//! 2-cocycles with values in Z/N (trivial action), stored as exponents of a primitive N-th root of unity.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{GroupTable, Subgroup};
use crate::intmat::{smith, solve_mod, Track};

/// Largest group accepted by [`h2_group`].
pub const H2_MAX_ORDER: usize = 64;

/// A validated unital 2-cocycle `G x G -> Z/N`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CocycleTable {
    group: Arc<GroupTable>,
    modulus: u64,
    entries: Vec<u64>,
}

impl fmt::Debug for CocycleTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cocycle(mod {}, {:?})", self.modulus, self.rows())
    }
}

/// A 1-cochain `u` with values in Z/modulus.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Witness {
    pub modulus: u64,
    pub values: Vec<u64>,
}

impl Witness {
    pub fn zero(len: usize) -> Self {
        Witness { modulus: 1, values: vec![0; len] }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// Divides modulus and values by their common gcd.
    fn reduced(self) -> Self {
        let g = self.values.iter().fold(self.modulus, |g, &v| g.gcd(&v));
        let g = g.max(1);
        Witness { modulus: self.modulus / g, values: self.values.iter().map(|v| v / g).collect() }
    }
}

/// A cocycle cohomologous to its input with values in the order-`n` subgroup, re-expressed mod `n`.
///
/// The witness satisfies `alpha/N + (delta u)/L = cocycle/n` in Q/Z.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedCocycle {
    pub cocycle: CocycleTable,
    pub witness: Witness,
}

/// The invariant factors of `H^2(G, Z/N)` and one cocycle per cyclic summand.
#[derive(Debug, Clone)]
pub struct H2Description {
    pub invariant_factors: Vec<u64>,
    pub generators: Vec<CocycleTable>,
}

impl H2Description {
    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }
}

/// The pair-valued cocycle `(alpha, beta)` into `Z/n x Z/m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExteriorSum {
    pub alpha: CocycleTable,
    pub beta: CocycleTable,
}

impl ExteriorSum {
    pub fn entry(&self, g: usize, h: usize) -> (u64, u64) {
        (self.alpha.entry(g, h), self.beta.entry(g, h))
    }
}

fn check_modulus(modulus: u64) -> Result<()> {
    if modulus == 0 {
        return Err(Error::InvalidInput("modulus must be positive".into()));
    }
    Ok(())
}

fn flat_from_rows(group: &GroupTable, modulus: u64, rows: &[Vec<i64>]) -> Result<Vec<u64>> {
    check_modulus(modulus)?;
    let m = group.order();
    if rows.len() != m || rows.iter().any(|r| r.len() != m) {
        return Err(Error::InvalidInput(format!("cocycle table must be {m}x{m}")));
    }
    let mut out = Vec::with_capacity(m * m);
    for (g, row) in rows.iter().enumerate() {
        for (h, &v) in row.iter().enumerate() {
            if v < 0 || v as u64 >= modulus {
                return Err(Error::InvalidInput(format!("entry ({g}, {h}) = {v} is outside 0..{modulus}")));
            }
            out.push(v as u64);
        }
    }
    Ok(out)
}

fn first_identity_failure(group: &GroupTable, modulus: u64, e: &[u64]) -> Option<(usize, usize, usize)> {
    let m = group.order();
    for g in 0..m {
        for h in 0..m {
            let gh = group.mul(g, h);
            for k in 0..m {
                let hk = group.mul(h, k);
                let lhs = e[g * m + h] + e[gh * m + k];
                let rhs = e[h * m + k] + e[g * m + hk];
                if lhs % modulus != rhs % modulus {
                    return Some((g, h, k));
                }
            }
        }
    }
    None
}

/// Checks range, unitality and the cocycle identity, in that order.
pub fn validate_cocycle(group: &Arc<GroupTable>, modulus: u64, rows: &[Vec<i64>]) -> Result<CocycleTable> {
    let entries = flat_from_rows(group, modulus, rows)?;
    let m = group.order();
    if let Some(g) = (0..m).find(|&g| entries[g] != 0 || entries[g * m] != 0) {
        return Err(Error::NotUnital(g));
    }
    if let Some((g, h, k)) = first_identity_failure(group, modulus, &entries) {
        return Err(Error::CocycleIdentityFails(g, h, k));
    }
    Ok(CocycleTable { group: group.clone(), modulus, entries })
}

/// Shifts a (possibly non-unital) cocycle into a unital one.
///
/// Returns `(c + delta w, w)`. For any cocycle `c(1, k) = c(g, 1) = c(1, 1)`, so the constant
/// cochain `w = -c(1, 1)` suffices.
pub fn make_unital(group: &Arc<GroupTable>, modulus: u64, rows: &[Vec<i64>]) -> Result<(CocycleTable, Vec<u64>)> {
    let entries = flat_from_rows(group, modulus, rows)?;
    if let Some((g, h, k)) = first_identity_failure(group, modulus, &entries) {
        return Err(Error::CocycleIdentityFails(g, h, k));
    }
    let shift = (modulus - entries[0]) % modulus;
    let entries = entries.iter().map(|&v| (v + shift) % modulus).collect();
    let witness = vec![shift; group.order()];
    Ok((CocycleTable { group: group.clone(), modulus, entries }, witness))
}

/// `(delta u)(g, h) = u(g) + u(h) - u(gh)`.
pub fn coboundary_of(group: &Arc<GroupTable>, modulus: u64, u: &[u64]) -> Result<CocycleTable> {
    check_modulus(modulus)?;
    let m = group.order();
    if u.len() != m {
        return Err(Error::InvalidInput(format!("1-cochain must have length {m}")));
    }
    if !u[0].is_multiple_of(modulus) {
        return Err(Error::InvalidInput("1-cochain must vanish at the identity".into()));
    }
    let n = modulus;
    let mut entries = vec![0; m * m];
    for g in 0..m {
        for h in 0..m {
            let gh = group.mul(g, h);
            entries[g * m + h] = ((u[g] % n) + (u[h] % n) + n - (u[gh] % n)) % n;
        }
    }
    Ok(CocycleTable { group: group.clone(), modulus, entries })
}

/// Matrix of `delta^1` on normalized cochains: rows are pairs of non-identity elements,
/// columns are non-identity elements.
fn delta1(group: &GroupTable) -> Vec<Vec<BigInt>> {
    let k = group.order() - 1;
    let mut rows = vec![vec![BigInt::zero(); k]; k * k];
    for g in 1..=k {
        for h in 1..=k {
            let row = &mut rows[(g - 1) * k + (h - 1)];
            row[g - 1] += 1;
            row[h - 1] += 1;
            let gh = group.mul(g, h);
            if gh != 0 {
                row[gh - 1] -= 1;
            }
        }
    }
    rows
}

/// Matrix of `delta^2` on normalized cochains, with duplicate and zero rows removed.
fn delta2(group: &GroupTable) -> Vec<Vec<BigInt>> {
    let k = group.order() - 1;
    let pair = |a: usize, b: usize| (a - 1) * k + (b - 1);
    let mut seen = HashSet::new();
    let mut rows = Vec::new();
    for g in 1..=k {
        for h in 1..=k {
            let gh = group.mul(g, h);
            for l in 1..=k {
                let hl = group.mul(h, l);
                let mut row = vec![0i64; k * k];
                row[pair(h, l)] += 1;
                if gh != 0 {
                    row[pair(gh, l)] -= 1;
                }
                if hl != 0 {
                    row[pair(g, hl)] += 1;
                }
                row[pair(g, h)] -= 1;
                if row.iter().any(|&x| x != 0) && seen.insert(row.clone()) {
                    rows.push(row.into_iter().map(BigInt::from).collect());
                }
            }
        }
    }
    rows
}

/// Finds a normalized `u` with `delta u = target (mod modulus)`, where `target` is a full m x m table.
fn solve_coboundary(group: &GroupTable, target: &[i128], modulus: u128) -> Option<Vec<u128>> {
    let m = group.order();
    let k = m - 1;
    let n = BigInt::from(modulus);
    for g in 0..m {
        if target[g].rem_euclid(modulus as i128) != 0 || target[g * m].rem_euclid(modulus as i128) != 0 {
            return None;
        }
    }
    if k == 0 {
        return Some(vec![0]);
    }
    let b: Vec<BigInt> = (1..m)
        .flat_map(|g| (1..m).map(move |h| (g, h)))
        .map(|(g, h)| BigInt::from(target[g * m + h]))
        .collect();
    let x = solve_mod(k * k, k, delta1(group), &b, &n)?;
    let mut u = vec![0u128];
    u.extend(x.iter().map(|v| v.to_u128().expect("reduced value fits")));
    Some(u)
}

impl CocycleTable {
    pub fn trivial(group: &Arc<GroupTable>, modulus: u64) -> Self {
        assert!(modulus > 0, "modulus must be positive");
        let m = group.order();
        CocycleTable { group: group.clone(), modulus, entries: vec![0; m * m] }
    }

    pub fn group(&self) -> &Arc<GroupTable> {
        &self.group
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn entry(&self, g: usize, h: usize) -> u64 {
        self.entries[g * self.group.order() + h]
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        self.entries.chunks(self.group.order().max(1)).map(|c| c.to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&v| v == 0)
    }

    /// The same cocycle viewed in Z/L through Z/N -> Z/L, x -> (L/N) x.
    pub fn lift(&self, l: u64) -> CocycleTable {
        assert!(l.is_multiple_of(self.modulus), "modulus {} does not divide {l}", self.modulus);
        let f = l / self.modulus;
        CocycleTable { group: self.group.clone(), modulus: l, entries: self.entries.iter().map(|v| v * f).collect() }
    }

    /// `k * alpha`, same modulus.
    pub fn scale(&self, k: u64) -> CocycleTable {
        let n = self.modulus;
        let k = k % n;
        CocycleTable { group: self.group.clone(), modulus: n, entries: self.entries.iter().map(|v| v * k % n).collect() }
    }

    pub fn check(&self) -> Result<()> {
        let rows: Vec<Vec<i64>> = self.rows().into_iter().map(|r| r.into_iter().map(|v| v as i64).collect()).collect();
        validate_cocycle(&self.group, self.modulus, &rows).map(|_| ())
    }
}

/// Returns `u` with `beta = alpha + delta u`, if one exists.
pub fn cohomologous_witness(alpha: &CocycleTable, beta: &CocycleTable) -> Result<Option<Vec<u64>>> {
    if alpha.group != beta.group {
        return Err(Error::GroupMismatch);
    }
    if alpha.modulus != beta.modulus {
        return Err(Error::Mismatch(format!("moduli {} and {} differ", alpha.modulus, beta.modulus)));
    }
    let target: Vec<i128> = alpha.entries.iter().zip(&beta.entries).map(|(&a, &b)| b as i128 - a as i128).collect();
    Ok(solve_coboundary(&alpha.group, &target, alpha.modulus as u128).map(|u| u.into_iter().map(|v| v as u64).collect()))
}

/// `H^2(G, Z/N)` through normalized bar cochains and Smith normal form.
pub fn h2_group(group: &Arc<GroupTable>, modulus: u64) -> Result<H2Description> {
    check_modulus(modulus)?;
    let m = group.order();
    if m > H2_MAX_ORDER {
        return Err(Error::GroupTooLarge { order: m, bound: H2_MAX_ORDER });
    }
    let k = m - 1;
    if k == 0 || modulus == 1 {
        return Ok(H2Description { invariant_factors: vec![], generators: vec![] });
    }
    let n = BigInt::from(modulus);
    let d2 = delta2(group);
    let snf = smith(d2.len(), k * k, d2, Track { right: true, right_inv: true, ..Track::NONE });
    let q = snf.right().expect("right transform");
    let qinv = snf.right_inv().expect("inverse transform");

    // Z^2 = (+) Z/o_i on generators z_i = (N/o_i) Q e_i.
    let mut gens: Vec<(usize, BigInt, BigInt)> = Vec::new(); // (column, scale N/o, order o)
    for j in 0..k * k {
        let o = if j < snf.rank() { snf.diagonal()[j].gcd(&n) } else { n.clone() };
        if o > BigInt::from(1) {
            gens.push((j, &n / &o, o));
        }
    }
    let s = gens.len();
    if s == 0 {
        return Ok(H2Description { invariant_factors: vec![], generators: vec![] });
    }

    // Relations: images of delta^1 in kernel coordinates, plus o_i e_i.
    let d1 = delta1(group);
    let mut rel = vec![vec![BigInt::zero(); k + s]; s];
    for c in 0..k {
        let b: Vec<BigInt> = d1.iter().map(|r| r[c].clone()).collect();
        for (i, (j, scale, o)) in gens.iter().enumerate() {
            let y: BigInt = qinv[*j].iter().zip(&b).map(|(a, x)| a * x).sum();
            debug_assert!(y.is_multiple_of(scale), "coboundary outside cocycle lattice");
            rel[i][c] = (y / scale).mod_floor(o);
        }
    }
    for (i, (_, _, o)) in gens.iter().enumerate() {
        rel[i][k + i] = o.clone();
    }
    let rs = smith(s, k + s, rel, Track { left_inv: true, ..Track::NONE });
    let pinv = rs.left_inv().expect("inverse transform");

    let mut pairs = Vec::new();
    for (i, d) in rs.diagonal().iter().enumerate() {
        if *d == BigInt::from(1) {
            continue;
        }
        let mut cochain = vec![BigInt::zero(); k * k];
        for (t, (j, scale, _)) in gens.iter().enumerate() {
            let coef = &pinv[t][i];
            if coef.is_zero() {
                continue;
            }
            for (r, slot) in cochain.iter_mut().enumerate() {
                *slot += coef * scale * &q[r][*j];
            }
        }
        let mut entries = vec![0u64; m * m];
        for g in 1..m {
            for h in 1..m {
                let v = cochain[(g - 1) * k + (h - 1)].mod_floor(&n);
                entries[g * m + h] = v.to_u64().expect("reduced value fits");
            }
        }
        let factor = d.to_u64().expect("invariant factor fits");
        pairs.push((factor, entries));
    }
    pairs.sort();
    let mut invariant_factors = Vec::new();
    let mut generators = Vec::new();
    for (f, entries) in pairs {
        let c = CocycleTable { group: group.clone(), modulus, entries };
        c.check()?;
        invariant_factors.push(f);
        generators.push(c);
    }
    Ok(H2Description { invariant_factors, generators })
}

/// Order of the class of `alpha` in `H^2(G, U(1))` under `Z/N -> U(1)`.
///
/// A trivializing U(1) cochain can always be chosen with values in `(1/(N|G|)) Z / Z`,
/// so the test runs in `Z/(N|G|)` on the lift `|G| alpha`.
pub fn class_order(alpha: &CocycleTable) -> u64 {
    let n = alpha.modulus;
    let m = alpha.group.order() as u128;
    let big = n as u128 * m;
    for d in (1..=n).filter(|d| n.is_multiple_of(*d)) {
        if alpha.entries.iter().all(|&v| (d as u128 * v as u128).is_multiple_of(n as u128)) {
            return d;
        }
        let target: Vec<i128> = alpha.entries.iter().map(|&v| (d as u128 * m * v as u128) as i128).collect();
        if solve_coboundary(&alpha.group, &target, big).is_some() {
            return d;
        }
    }
    n
}

/// Replaces `alpha` by a cohomologous cocycle valued in Z/n with n its class order.
pub fn normalize_cocycle(alpha: &CocycleTable) -> Result<NormalizedCocycle> {
    let n = alpha.modulus;
    let ord = class_order(alpha);
    let step = n / ord;
    let group = &alpha.group;
    let m = group.order();
    let build = |entries: Vec<u64>, witness: Witness| NormalizedCocycle {
        cocycle: CocycleTable { group: group.clone(), modulus: ord, entries },
        witness: witness.reduced(),
    };

    if alpha.entries.iter().all(|v| v % step == 0) {
        let entries = alpha.entries.iter().map(|v| v / step).collect();
        return Ok(build(entries, Witness::zero(m)));
    }

    // A witness inside Z/N.
    let target: Vec<i128> = alpha.entries.iter().map(|&v| -(v as i128)).collect();
    if let Some(u) = solve_coboundary(group, &target, step as u128) {
        let u: Vec<u64> = u.into_iter().map(|v| v as u64).collect();
        let du = coboundary_of(group, n, &u)?;
        let entries = alpha.entries.iter().zip(&du.entries).map(|(a, b)| ((a + b) % n) / step).collect();
        return Ok(build(entries, Witness { modulus: n, values: u }));
    }

    // Otherwise work in Z/L with L = N |G| n, solving delta u = -(L/N) alpha mod L/n.
    let l = n as u128 * m as u128 * ord as u128;
    let f = l / n as u128;
    let target: Vec<i128> = alpha.entries.iter().map(|&v| -((f * v as u128) as i128)).collect();
    let u = solve_coboundary(group, &target, l / ord as u128).ok_or(Error::NormalizationInfeasible(ord))?;
    let mut entries = vec![0u64; m * m];
    for g in 0..m {
        for h in 0..m {
            let gh = group.mul(g, h);
            let v = (f * alpha.entry(g, h) as u128 + u[g] + u[h] + l - u[gh] % l) % l;
            debug_assert_eq!(v % (l / ord as u128), 0);
            entries[g * m + h] = (v / (l / ord as u128)) as u64;
        }
    }
    let l64 = u64::try_from(l).map_err(|_| Error::NormalizationInfeasible(ord))?;
    let values = u.into_iter().map(|v| v as u64).collect();
    Ok(build(entries, Witness { modulus: l64, values }))
}

/// The cocycle restricted to `H`, indexed by position in `H`'s sorted element list.
pub fn restrict_cocycle(alpha: &CocycleTable, h: &Subgroup) -> Result<CocycleTable> {
    let sub = Subgroup::new(&alpha.group, h.elements().to_vec())?;
    let hg = Arc::new(sub.to_group(&alpha.group));
    let els = sub.elements();
    let entries = els.iter().flat_map(|&x| els.iter().map(move |&y| alpha.entry(x, y))).collect();
    Ok(CocycleTable { group: hg, modulus: alpha.modulus, entries })
}

/// Entrywise sum in Z/lcm(N_alpha, N_beta).
pub fn add_cocycles(alpha: &CocycleTable, beta: &CocycleTable) -> Result<CocycleTable> {
    if alpha.group != beta.group {
        return Err(Error::GroupMismatch);
    }
    let l = alpha.modulus.lcm(&beta.modulus);
    let (a, b) = (alpha.lift(l), beta.lift(l));
    let entries = a.entries.iter().zip(&b.entries).map(|(x, y)| (x + y) % l).collect();
    Ok(CocycleTable { group: alpha.group.clone(), modulus: l, entries })
}

pub fn exterior_sum(alpha: &CocycleTable, beta: &CocycleTable) -> Result<ExteriorSum> {
    if alpha.group != beta.group {
        return Err(Error::GroupMismatch);
    }
    Ok(ExteriorSum { alpha: alpha.clone(), beta: beta.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v4_xy() -> CocycleTable {
        let g = Arc::new(GroupTable::klein_four());
        // element index x1 + 2 x2; alpha(x, y) = x2 * y1
        let rows: Vec<Vec<i64>> = (0..4).map(|x| (0..4).map(|y| ((x >> 1) & (y & 1)) as i64).collect()).collect();
        validate_cocycle(&g, 2, &rows).unwrap()
    }

    fn c2_with(v: i64, n: u64) -> CocycleTable {
        let g = Arc::new(GroupTable::cyclic(2));
        validate_cocycle(&g, n, &[vec![0, 0], vec![0, v]]).unwrap()
    }

    #[test]
    fn validation() {
        let g = Arc::new(GroupTable::cyclic(2));
        assert!(validate_cocycle(&g, 3, &[vec![0, 0], vec![0, 0]]).unwrap().is_zero());
        assert_eq!(validate_cocycle(&g, 2, &[vec![0, 1], vec![0, 0]]), Err(Error::NotUnital(1)));
        let v4 = Arc::new(GroupTable::klein_four());
        let mut rows = vec![vec![0i64; 4]; 4];
        rows[1][1] = 1;
        rows[2][2] = 1;
        rows[1][2] = 1;
        assert!(matches!(validate_cocycle(&v4, 2, &rows), Err(Error::CocycleIdentityFails(..))));
        assert!(matches!(validate_cocycle(&g, 2, &[vec![0, 0], vec![0, 2]]), Err(Error::InvalidInput(_))));
        v4_xy();
    }

    #[test]
    fn unital_shift() {
        let g = Arc::new(GroupTable::cyclic(2));
        let (c, w) = make_unital(&g, 3, &[vec![2, 2], vec![2, 2]]).unwrap();
        assert!(c.is_zero());
        assert_eq!(w, vec![1, 1]);
        let (c, w) = make_unital(&g, 2, &[vec![1, 1], vec![1, 0]]).unwrap();
        assert_eq!(c.rows(), vec![vec![0, 0], vec![0, 1]]);
        assert_eq!(w, vec![1, 1]);
        let (c, w) = make_unital(&g, 2, &[vec![0, 0], vec![0, 1]]).unwrap();
        assert_eq!(c, c2_with(1, 2));
        assert_eq!(w, vec![0, 0]);
    }

    #[test]
    fn coboundaries() {
        let g = Arc::new(GroupTable::cyclic(2));
        assert!(coboundary_of(&g, 2, &[0, 1]).unwrap().is_zero());
        assert_eq!(coboundary_of(&g, 4, &[0, 1]).unwrap().entry(1, 1), 2);
        assert!(coboundary_of(&g, 4, &[1, 1]).is_err());
    }

    #[test]
    fn witnesses() {
        let a = c2_with(0, 2);
        assert_eq!(cohomologous_witness(&a, &a).unwrap(), Some(vec![0, 0]));
        assert_eq!(cohomologous_witness(&a, &c2_with(1, 2)).unwrap(), None);
        let w = cohomologous_witness(&c2_with(0, 4), &c2_with(2, 4)).unwrap().unwrap();
        assert_eq!(coboundary_of(a.group(), 4, &w).unwrap(), c2_with(2, 4));
        assert!(matches!(cohomologous_witness(&a, &c2_with(0, 3)), Err(Error::Mismatch(_))));
    }

    #[test]
    fn h2_small() {
        let t = Arc::new(GroupTable::trivial());
        assert_eq!(h2_group(&t, 5).unwrap().order(), 1);
        let c2 = Arc::new(GroupTable::cyclic(2));
        assert_eq!(h2_group(&c2, 2).unwrap().invariant_factors, vec![2]);
        let v4 = Arc::new(GroupTable::klein_four());
        let h = h2_group(&v4, 2).unwrap();
        assert_eq!(h.invariant_factors, vec![2, 2, 2]);
        for c in &h.generators {
            c.check().unwrap();
        }
        let c4 = Arc::new(GroupTable::cyclic(4));
        assert_eq!(h2_group(&c4, 2).unwrap().invariant_factors, vec![2]);
        assert_eq!(h2_group(&c4, 4).unwrap().invariant_factors, vec![4]);
        assert_eq!(h2_group(&c4, 3).unwrap().order(), 1);
    }

    #[test]
    fn orders() {
        assert_eq!(class_order(&c2_with(0, 2)), 1);
        assert_eq!(class_order(&v4_xy()), 2);
        assert_eq!(class_order(&c2_with(2, 4)), 1);
        // values in Z/N but a coboundary in U(1)
        assert_eq!(class_order(&c2_with(1, 2)), 1);
    }

    #[test]
    fn normalization() {
        let n = normalize_cocycle(&c2_with(0, 3)).unwrap();
        assert_eq!(n.cocycle.modulus(), 1);
        let a = v4_xy();
        let n = normalize_cocycle(&a).unwrap();
        assert_eq!(n.cocycle, a);
        assert!(n.witness.is_zero());
        let n = normalize_cocycle(&c2_with(2, 4)).unwrap();
        assert_eq!(n.cocycle.modulus(), 1);
        assert!(n.cocycle.is_zero());
        assert_eq!(n.witness, Witness { modulus: 4, values: vec![0, 1] });
        // needs a witness outside Z/N
        let n = normalize_cocycle(&c2_with(1, 2)).unwrap();
        assert_eq!(n.cocycle.modulus(), 1);
        assert_eq!(n.witness, Witness { modulus: 4, values: vec![0, 1] });
    }

    #[test]
    fn restriction_and_sums() {
        let a = v4_xy();
        let v4 = a.group().clone();
        let ha = Subgroup::new(&v4, vec![0, 1]).unwrap();
        assert!(restrict_cocycle(&a, &ha).unwrap().is_zero());
        let hab = Subgroup::new(&v4, vec![0, 3]).unwrap();
        assert_eq!(restrict_cocycle(&a, &hab).unwrap().entry(1, 1), 1);
        assert!(restrict_cocycle(&a, &v4.trivial_subgroup()).unwrap().is_zero());
        assert!(add_cocycles(&a, &a).unwrap().is_zero());
        assert_eq!(add_cocycles(&a, &CocycleTable::trivial(&v4, 2)).unwrap(), a);
        let b = {
            let h3 = h2_group(&v4, 3).unwrap();
            assert!(h3.generators.is_empty());
            CocycleTable::trivial(&v4, 3)
        };
        assert_eq!(add_cocycles(&a, &b).unwrap().entry(2, 1), 3);
        let c2 = c2_with(1, 2);
        let c3 = coboundary_of(c2.group(), 3, &[0, 2]).unwrap();
        assert_eq!(add_cocycles(&c2, &c3).unwrap().entry(1, 1), 5);
    }

    fn arb_case() -> impl Strategy<Value = (usize, u64, Vec<u64>)> {
        (0usize..4, 2u64..7, prop::collection::vec(0u64..64, 8))
    }

    fn corpus(i: usize) -> Arc<GroupTable> {
        Arc::new(match i {
            0 => GroupTable::cyclic(4),
            1 => GroupTable::klein_four(),
            2 => GroupTable::symmetric3(),
            _ => GroupTable::quaternion(),
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn witness_roundtrip((gi, n, raw) in arb_case(), pick in 0usize..8) {
            let g = corpus(gi);
            let h2 = h2_group(&g, n).unwrap();
            let alpha = h2.generators.get(pick % h2.generators.len().max(1)).cloned().unwrap_or_else(|| CocycleTable::trivial(&g, n));
            let mut u: Vec<u64> = (0..g.order()).map(|i| raw[i % raw.len()] % n).collect();
            u[0] = 0;
            let du = coboundary_of(&g, n, &u).unwrap();
            let beta = add_cocycles(&alpha, &du).unwrap();
            beta.check().unwrap();
            let w = cohomologous_witness(&alpha, &beta).unwrap().expect("witness must exist");
            prop_assert_eq!(add_cocycles(&alpha, &coboundary_of(&g, n, &w).unwrap()).unwrap(), beta.clone());

            let norm = normalize_cocycle(&beta).unwrap();
            norm.cocycle.check().unwrap();
            let ord = class_order(&beta);
            prop_assert_eq!(norm.cocycle.modulus(), ord);
            prop_assert_eq!(class_order(&norm.cocycle), ord);
            prop_assert_eq!(ord, class_order(&alpha));
            // alpha/N + delta(u)/L = beta'/n in Q/Z, checked in Z/lcm
            let w = &norm.witness;
            let l = n.lcm(&w.modulus).lcm(&ord);
            let du = coboundary_of(&g, w.modulus, &w.values).unwrap();
            let lhs = add_cocycles(&beta.lift(l), &du.lift(l)).unwrap();
            prop_assert_eq!(lhs, norm.cocycle.lift(l));
        }

        #[test]
        fn addition_is_commutative_and_associative(gi in 0usize..4, n1 in 1u64..5, n2 in 1u64..5, n3 in 1u64..5, k in 0u64..4) {
            let g = corpus(gi);
            let pick = |n: u64| h2_group(&g, n).unwrap().generators.first().map(|c| c.scale(k + 1)).unwrap_or_else(|| CocycleTable::trivial(&g, n));
            let (a, b, c) = (pick(n1), pick(n2), pick(n3));
            prop_assert_eq!(add_cocycles(&a, &b).unwrap(), add_cocycles(&b, &a).unwrap());
            prop_assert_eq!(
                add_cocycles(&add_cocycles(&a, &b).unwrap(), &c).unwrap(),
                add_cocycles(&a, &add_cocycles(&b, &c).unwrap()).unwrap()
            );
            add_cocycles(&a, &b).unwrap().check().unwrap();
        }
    }
}
