use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::chartable::character_table;
use crate::cocycle::CocycleTable;
use crate::cyclotomic::{CycNum, Dense};
use crate::error::{Error, Result};
use crate::extension::CentralExtension;
use crate::group::GroupTable;

/// The function `g -> tr rho(g-bar)` of an alpha-twisted representation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SectionCharacter {
    cocycle: Arc<CocycleTable>,
    values: Vec<CycNum>,
}

impl SectionCharacter {
    pub fn new(cocycle: Arc<CocycleTable>, values: Vec<CycNum>) -> Result<Self> {
        if values.len() != cocycle.group().order() {
            return Err(Error::InvalidInput(format!(
                "expected {} values, got {}",
                cocycle.group().order(),
                values.len()
            )));
        }
        Ok(SectionCharacter { cocycle, values })
    }

    /// The character of the twisted regular representation: `|G|` at the identity, zero elsewhere.
    pub fn regular(cocycle: Arc<CocycleTable>) -> Self {
        let m = cocycle.group().order();
        let mut values = vec![CycNum::zero(); m];
        values[0] = CycNum::from_int(m as i64);
        SectionCharacter { cocycle, values }
    }

    pub fn cocycle(&self) -> &Arc<CocycleTable> {
        &self.cocycle
    }

    pub fn group(&self) -> &Arc<GroupTable> {
        self.cocycle.group()
    }

    pub fn values(&self) -> &[CycNum] {
        &self.values
    }

    pub fn degree(&self) -> &CycNum {
        &self.values[0]
    }
}

/// The irreducible section characters for a cocycle: a Z-basis of `R_alpha(G)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaCharBasis {
    cocycle: Arc<CocycleTable>,
    irreducibles: Vec<SectionCharacter>,
}

impl AlphaCharBasis {
    pub fn cocycle(&self) -> &Arc<CocycleTable> {
        &self.cocycle
    }

    pub fn group(&self) -> &Arc<GroupTable> {
        self.cocycle.group()
    }

    pub fn irreducibles(&self) -> &[SectionCharacter] {
        &self.irreducibles
    }

    pub fn len(&self) -> usize {
        self.irreducibles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreducibles.is_empty()
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.irreducibles
            .iter()
            .map(|c| c.degree().to_integer().and_then(|d| d.to_i64()).expect("integral degree"))
            .collect()
    }
}

/// A virtual twisted representation in coordinates of a basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RAlphaElement {
    basis: Arc<AlphaCharBasis>,
    coords: Vec<i64>,
}

impl RAlphaElement {
    pub fn new(basis: Arc<AlphaCharBasis>, coords: Vec<i64>) -> Result<Self> {
        if coords.len() != basis.len() {
            return Err(Error::InvalidInput(format!("expected {} coordinates, got {}", basis.len(), coords.len())));
        }
        Ok(RAlphaElement { basis, coords })
    }

    pub fn basis_element(basis: &Arc<AlphaCharBasis>, i: usize) -> Self {
        let mut coords = vec![0; basis.len()];
        coords[i] = 1;
        RAlphaElement { basis: basis.clone(), coords }
    }

    /// The class of the trivial one-dimensional representation of `G`.
    pub fn unit(group: &Arc<GroupTable>) -> Result<Self> {
        let basis = alpha_character_basis(&CocycleTable::trivial(group, 1))?;
        let i = basis
            .irreducibles()
            .iter()
            .position(|c| c.values().iter().all(|v| *v == CycNum::one()))
            .expect("the trivial character is irreducible");
        Ok(Self::basis_element(&basis, i))
    }

    pub fn basis(&self) -> &Arc<AlphaCharBasis> {
        &self.basis
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn cocycle(&self) -> &Arc<CocycleTable> {
        self.basis.cocycle()
    }

    /// The virtual section character `sum_i coords[i] * basis[i]`.
    pub fn character(&self) -> SectionCharacter {
        let m = self.basis.group().order();
        let values = (0..m)
            .map(|g| {
                let terms: Vec<CycNum> = self
                    .coords
                    .iter()
                    .zip(self.basis.irreducibles())
                    .filter(|(c, _)| **c != 0)
                    .map(|(c, chi)| chi.values()[g].scale(&BigRational::from_integer(BigInt::from(*c))))
                    .collect();
                CycNum::sum(&terms)
            })
            .collect();
        SectionCharacter { cocycle: self.basis.cocycle().clone(), values }
    }
}

fn lcm_conductor<'a>(values: impl IntoIterator<Item = &'a CycNum>) -> usize {
    values.into_iter().fold(1, |l, v| l.lcm(&v.conductor()))
}

/// `(1/|G|) sum_g chi(g) conj(psi(g))`.
pub fn section_inner_product(chi: &SectionCharacter, psi: &SectionCharacter) -> Result<CycNum> {
    if chi.cocycle != psi.cocycle {
        return Err(Error::TwistMismatch);
    }
    Ok(inner_product_values(&chi.values, &psi.values))
}

pub(crate) fn inner_product_values(a: &[CycNum], b: &[CycNum]) -> CycNum {
    let l = lcm_conductor(a.iter().chain(b));
    let mut acc = Dense::zero(l);
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc.add_product(x, y, true, 0);
        }
    }
    acc.scale(&BigRational::new(BigInt::from(1), BigInt::from(a.len())));
    acc.into_cyc()
}

/// Coordinates of `chi` in `basis`, checked by exact reconstruction.
pub fn decompose(chi: &SectionCharacter, basis: &Arc<AlphaCharBasis>) -> Result<RAlphaElement> {
    if chi.cocycle != basis.cocycle {
        return Err(Error::TwistMismatch);
    }
    decompose_values(&chi.values, basis)
}

pub(crate) fn decompose_values(values: &[CycNum], basis: &Arc<AlphaCharBasis>) -> Result<RAlphaElement> {
    let mut coords = Vec::with_capacity(basis.len());
    for (i, irr) in basis.irreducibles().iter().enumerate() {
        let ip = inner_product_values(values, irr.values());
        let c = ip
            .to_integer()
            .and_then(|c| c.to_i64())
            .ok_or_else(|| Error::NotIntegral(format!("inner product with irreducible {i} is {ip}")))?;
        coords.push(c);
    }
    let elem = RAlphaElement { basis: basis.clone(), coords };
    if elem.character().values != values {
        return Err(Error::NotIntegral("values are not in the span of the irreducibles".into()));
    }
    Ok(elem)
}

fn compute_basis(alpha: &CocycleTable) -> AlphaCharBasis {
    let ext = CentralExtension::new(alpha);
    let table = character_table(ext.total());
    let n = ext.n();
    let z = ext.central_gen();
    let cocycle = Arc::new(alpha.clone());
    let mut irreducibles: Vec<SectionCharacter> = (0..table.len())
        .filter(|&i| *table.value(i, z) == table.value(i, 0).mul_root(n, 1))
        .map(|i| SectionCharacter {
            cocycle: cocycle.clone(),
            values: (0..alpha.group().order()).map(|g| table.value(i, ext.section(g)).clone()).collect(),
        })
        .collect();
    irreducibles.sort_by(|a, b| (a.degree(), &a.values).cmp(&(b.degree(), &b.values)));
    AlphaCharBasis { cocycle, irreducibles }
}

type BasisCache = Mutex<HashMap<CocycleTable, Arc<AlphaCharBasis>>>;

fn basis_cache() -> &'static BasisCache {
    static CACHE: OnceLock<BasisCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The irreducible alpha-twisted section characters, read off the characters of `G_alpha`
/// on which the central generator acts by `zeta_n`.
pub fn alpha_character_basis(alpha: &CocycleTable) -> Result<Arc<AlphaCharBasis>> {
    if let Some(b) = basis_cache().lock().expect("basis cache poisoned").get(alpha) {
        return Ok(b.clone());
    }
    let basis = Arc::new(compute_basis(alpha));
    let mut cache = basis_cache().lock().expect("basis cache poisoned");
    Ok(cache.entry(alpha.clone()).or_insert(basis).clone())
}
