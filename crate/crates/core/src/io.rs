//! JSON file formats and versioned report types.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bredon::CohomologyResult;
use crate::cocycle::{validate_cocycle, CocycleTable, Witness};
use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::group::GroupTable;
use crate::intmat::IntMatrix;
use crate::spectral::E2Entry;
use crate::twisted::AlphaCharBasis;

pub use crate::bredon::ComplexSpec;

/// Version stamped into every report.
pub const SCHEMA_VERSION: u32 = 1;

/// A group given by its multiplication table or by generating permutations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupFile {
    Table { order: usize, table: Vec<Vec<usize>> },
    Permutations { degree: usize, generators: Vec<Vec<usize>> },
}

impl GroupFile {
    pub fn build(&self) -> Result<GroupTable> {
        match self {
            GroupFile::Table { order, table } => {
                if *order != table.len() {
                    return Err(Error::InvalidInput(format!("order {order} but the table has {} rows", table.len())));
                }
                GroupTable::from_table(table)
            }
            GroupFile::Permutations { degree, generators } => GroupTable::from_permutations(*degree, generators),
        }
    }

    pub fn from_group(g: &GroupTable) -> Self {
        GroupFile::Table { order: g.order(), table: g.rows() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleFile {
    pub modulus: u64,
    pub entries: Vec<Vec<i64>>,
}

impl CocycleFile {
    pub fn build(&self, group: &Arc<GroupTable>) -> Result<CocycleTable> {
        validate_cocycle(group, self.modulus, &self.entries)
    }

    pub fn from_cocycle(c: &CocycleTable) -> Self {
        CocycleFile { modulus: c.modulus(), entries: c.rows().into_iter().map(|r| r.into_iter().map(|x| x as i64).collect()).collect() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleSummary {
    pub modulus: u64,
    pub class_order: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexSummary {
    pub dimension: usize,
    pub cells: usize,
    pub subcomplex: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidateReport {
    pub schema: u32,
    pub group_order: usize,
    pub conjugacy_classes: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub cocycle: Option<CocycleSummary>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub complex: Option<ComplexSummary>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct H2Report {
    pub schema: u32,
    pub modulus: u64,
    pub order: u64,
    pub invariant_factors: Vec<u64>,
    pub generators: Vec<CocycleFile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizeReport {
    pub schema: u32,
    pub class_order: u64,
    pub cocycle: CocycleFile,
    pub witness: Witness,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrreducibleEntry {
    pub degree: i64,
    pub values: Vec<CycNum>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterReport {
    pub schema: u32,
    pub modulus: u64,
    pub class_order: u64,
    pub irreducibles: Vec<IrreducibleEntry>,
}

pub fn irreducible_entries(basis: &AlphaCharBasis) -> Vec<IrreducibleEntry> {
    basis.irreducibles().iter().zip(basis.degrees()).map(|(c, d)| IrreducibleEntry { degree: d, values: c.values().to_vec() }).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MackeyCheckReport {
    pub schema: u32,
    pub passed: bool,
    pub pairs_checked: usize,
    pub failures: Vec<crate::twisted::MackeyPairResult>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BredonReport {
    pub schema: u32,
    pub relative_to: Vec<String>,
    pub cohomology: CohomologyResult,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KRanksReport {
    pub schema: u32,
    pub e2: Vec<E2Entry>,
    pub k0_rank: usize,
    pub k1_rank: usize,
    pub torsion: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitKReport {
    pub schema: u32,
    pub subgroup: Vec<usize>,
    pub k0_rank: usize,
    pub k1_rank: usize,
    pub irreducibles: Vec<IrreducibleEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub error: String,
    pub detail: String,
}

/// Rows of decimal integers joined by tabs.
pub fn matrix_tsv(m: &IntMatrix) -> String {
    m.row_slices().iter().map(|r| r.iter().map(i64::to_string).collect::<Vec<_>>().join("\t") + "\n").collect()
}
