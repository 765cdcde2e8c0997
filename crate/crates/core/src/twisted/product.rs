use std::sync::Arc;

use super::basis::{alpha_character_basis, decompose_values, RAlphaElement};
use crate::cocycle::{add_cocycles, normalize_cocycle, CocycleTable, Witness};
use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};

/// A product in `R_{alpha+beta}(G)` with the data identifying its twist.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedProduct {
    pub value: RAlphaElement,
    /// `alpha + beta` before normalization.
    pub sum_cocycle: CocycleTable,
    /// Transport from `sum_cocycle` to the twist of `value`.
    pub witness: Witness,
}

/// Multiplies section values by `zeta_L^{u(g)}`.
pub(crate) fn transport(values: Vec<CycNum>, witness: &Witness) -> Vec<CycNum> {
    if witness.is_zero() {
        return values;
    }
    values
        .into_iter()
        .zip(&witness.values)
        .map(|(v, &u)| if u == 0 || v.is_zero() { v } else { v.mul_root(witness.modulus as usize, u as i64) })
        .collect()
}

/// The tensor product pairing `R_alpha(G) x R_beta(G) -> R_{alpha+beta}(G)`.
///
/// The sum cocycle is normalized and values are moved along the normalization witness
/// before decomposing.
pub fn twisted_product(x: &RAlphaElement, y: &RAlphaElement) -> Result<TwistedProduct> {
    let (alpha, beta) = (x.cocycle(), y.cocycle());
    if alpha.group() != beta.group() {
        return Err(Error::GroupMismatch);
    }
    let sum = add_cocycles(alpha, beta)?;
    let norm = normalize_cocycle(&sum)?;
    let (cx, cy) = (x.character(), y.character());
    let values: Vec<CycNum> = cx.values().iter().zip(cy.values()).map(|(a, b)| a * b).collect();
    let basis = alpha_character_basis(&norm.cocycle)?;
    let value = decompose_values(&transport(values, &norm.witness), &basis)?;
    Ok(TwistedProduct { value, sum_cocycle: sum, witness: norm.witness })
}

/// The element of a basis for a single irreducible, convenient for sweeping a whole basis.
pub fn basis_elements(basis: &Arc<super::AlphaCharBasis>) -> Vec<RAlphaElement> {
    (0..basis.len()).map(|i| RAlphaElement::basis_element(basis, i)).collect()
}
