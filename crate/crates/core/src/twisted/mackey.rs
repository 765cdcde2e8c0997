use serde::{Deserialize, Serialize};

use super::maps::TwistedContext;
use crate::cocycle::CocycleTable;
use crate::error::Result;
use crate::group::{enumerate_subgroups, GroupTable, Subgroup};
use crate::intmat::IntMatrix;

/// Outcome of the Mackey checks for one pair `H, K <= L`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MackeyPairResult {
    pub ambient: Vec<usize>,
    pub h: Vec<usize>,
    pub k: Vec<usize>,
    /// Conjugation by elements of `H` and of `K` is the identity.
    pub inner_conjugation: bool,
    /// `c_{g^-1} c_g = id` for every `g` in `L`.
    pub conjugation_inverse: bool,
    /// `res^L_K ind^L_H = sum_t ind^K_{K cap tHt^-1} c_t res^H_{H cap t^-1 K t}`.
    pub double_coset: bool,
    /// `res^L_H` is the transpose of `ind^L_H`.
    pub frobenius: bool,
}

impl MackeyPairResult {
    pub fn passed(&self) -> bool {
        self.inner_conjugation && self.conjugation_inverse && self.double_coset && self.frobenius
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MackeyReport {
    pub pairs: Vec<MackeyPairResult>,
}

impl MackeyReport {
    pub fn passed(&self) -> bool {
        self.pairs.iter().all(MackeyPairResult::passed)
    }

    pub fn first_failure(&self) -> Option<&MackeyPairResult> {
        self.pairs.iter().find(|p| !p.passed())
    }
}

/// Minimal representatives of `K \ L / H` inside the ambient group.
fn double_cosets_in(group: &GroupTable, l: &Subgroup, k: &Subgroup, h: &Subgroup) -> Vec<usize> {
    let mut seen = vec![false; group.order()];
    let mut reps = Vec::new();
    for &t in l.elements() {
        if seen[t] {
            continue;
        }
        reps.push(t);
        for &x in k.elements() {
            let xt = group.mul(x, t);
            for &y in h.elements() {
                seen[group.mul(xt, y)] = true;
            }
        }
    }
    reps
}

fn conj_inverse_ok(ctx: &TwistedContext, h: &Subgroup, l: &Subgroup) -> Result<bool> {
    let g = ctx.group();
    let id = IntMatrix::identity(ctx.basis(h)?.len());
    for &x in l.elements() {
        let there = ctx.conjugation(h, x)?;
        let back = ctx.conjugation(&h.conjugate(g, x), g.inv(x))?;
        if back.mul(&there) != id {
            return Ok(false);
        }
    }
    Ok(true)
}

fn inner_ok(ctx: &TwistedContext, h: &Subgroup) -> Result<bool> {
    let id = IntMatrix::identity(ctx.basis(h)?.len());
    for &x in h.elements() {
        if ctx.conjugation(h, x)? != id {
            return Ok(false);
        }
    }
    Ok(true)
}

fn double_coset_ok(ctx: &TwistedContext, l: &Subgroup, h: &Subgroup, k: &Subgroup) -> Result<bool> {
    let g = ctx.group();
    let lhs = ctx.restriction(l, k)?.mul(&ctx.induction(h, l)?);
    let mut rhs = IntMatrix::zeros(lhs.rows(), lhs.cols());
    for t in double_cosets_in(g, l, k, h) {
        let tinv = g.inv(t);
        let h_cap = h.intersection(&k.conjugate(g, tinv));
        let k_cap = k.intersection(&h.conjugate(g, t));
        let term = ctx.induction(&k_cap, k)?.mul(&ctx.conjugation(&h_cap, t)?).mul(&ctx.restriction(h, &h_cap)?);
        rhs = rhs.add(&term);
    }
    Ok(lhs == rhs)
}

/// Checks the Mackey structure of `H -> R_alpha(H)` for all subgroup pairs of `G`,
/// or of every subgroup `L` when `all_ambient` is set.
pub fn verify_mackey(alpha: &CocycleTable, all_ambient: bool) -> Result<MackeyReport> {
    let ctx = TwistedContext::new(alpha);
    let g = ctx.group().clone();
    let subs = enumerate_subgroups(&g)?;
    let ambients: Vec<Subgroup> = if all_ambient { subs.clone() } else { vec![g.whole()] };
    let mut pairs = Vec::new();
    for l in &ambients {
        let inside: Vec<&Subgroup> = subs.iter().filter(|s| s.is_subgroup_of(l)).collect();
        let mut per_sub = Vec::with_capacity(inside.len());
        for s in &inside {
            let frob = ctx.restriction(l, s)? == ctx.induction(s, l)?.transpose();
            per_sub.push((inner_ok(&ctx, s)?, conj_inverse_ok(&ctx, s, l)?, frob));
        }
        for (i, h) in inside.iter().enumerate() {
            for (j, k) in inside.iter().enumerate() {
                let (a, b) = (per_sub[i], per_sub[j]);
                pairs.push(MackeyPairResult {
                    ambient: l.elements().to_vec(),
                    h: h.elements().to_vec(),
                    k: k.elements().to_vec(),
                    inner_conjugation: a.0 && b.0,
                    conjugation_inverse: a.1 && b.1,
                    double_coset: double_coset_ok(&ctx, l, h, k)?,
                    frobenius: a.2 && b.2,
                });
            }
        }
    }
    Ok(MackeyReport { pairs })
}
