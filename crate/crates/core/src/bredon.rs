//! Bredon cohomology of finite G-CW complexes with coefficients in `H -> R_alpha(H)`.
//!
//! A complex is given by cell orbits `G/H_e x D^p` and incidence terms `(f, g, m)`: the attaching
//! map of `e` meets the translate `g f` with degree `m`, which requires `g^-1 H_e g <= H_f`.
//! The coefficient map attached to such a term is
//! `M(H_e, H_f, g) = c_g . res^{H_f}_{g^-1 H_e g} : M(G/H_f) -> M(G/H_e)`.
//! For example, with `G = C2`, the free 1-cell of the reflection circle attached to a fixed
//! vertex gives `M(1, C2, 1) = res^{C2}_1 = [1 1]`.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::cocycle::{add_cocycles, normalize_cocycle, CocycleTable, Witness};
use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::group::{GroupTable, Subgroup};
use crate::intmat::{kernel_basis, smith, IntMatrix, Track};
use crate::twisted::{decompose_values, transport, TwistedContext};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncidenceSpec {
    pub cell: String,
    pub g: usize,
    pub m: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellSpec {
    pub dim: usize,
    pub id: String,
    pub isotropy: Vec<usize>,
    #[serde(default)]
    pub boundary: Vec<IncidenceSpec>,
}

/// The serialized form of a complex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexSpec {
    pub cells: Vec<CellSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub subcomplex: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Incidence {
    pub face: usize,
    pub g: usize,
    pub m: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub id: String,
    pub dim: usize,
    pub isotropy: Subgroup,
    pub boundary: Vec<Incidence>,
}

/// A finite G-CW complex given by cell orbits and equivariant incidence data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GCWComplex {
    group: Arc<GroupTable>,
    cells: Vec<Cell>,
    subcomplex: Vec<usize>,
}

impl GCWComplex {
    pub fn new(group: &Arc<GroupTable>, spec: &ComplexSpec) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, c) in spec.cells.iter().enumerate() {
            if index.insert(c.id.as_str(), i).is_some() {
                return Err(Error::InvalidComplex(format!("duplicate cell id {:?}", c.id)));
            }
        }
        let mut cells = Vec::with_capacity(spec.cells.len());
        for c in &spec.cells {
            let isotropy = Subgroup::new(group, c.isotropy.clone())
                .map_err(|e| Error::InvalidComplex(format!("isotropy of {:?}: {e}", c.id)))?;
            cells.push(Cell { id: c.id.clone(), dim: c.dim, isotropy, boundary: Vec::new() });
        }
        for (i, c) in spec.cells.iter().enumerate() {
            for t in &c.boundary {
                let face = *index
                    .get(t.cell.as_str())
                    .ok_or_else(|| Error::InvalidComplex(format!("cell {:?} refers to unknown cell {:?}", c.id, t.cell)))?;
                if c.dim == 0 || spec.cells[face].dim + 1 != c.dim {
                    return Err(Error::InvalidComplex(format!("{:?} cannot be a face of {:?}", t.cell, c.id)));
                }
                if !group.contains(t.g) {
                    return Err(Error::InvalidComplex(format!("element {} in the boundary of {:?} is not in the group", t.g, c.id)));
                }
                let conj = cells[i].isotropy.conjugate(group, group.inv(t.g));
                if !conj.is_subgroup_of(&cells[face].isotropy) {
                    return Err(Error::InvalidComplex(format!(
                        "g^-1 H g is not contained in the isotropy of {:?} for the term of {:?} with g = {}",
                        t.cell, c.id, t.g
                    )));
                }
                cells[i].boundary.push(Incidence { face, g: t.g, m: t.m });
            }
        }
        let mut subcomplex = Vec::new();
        for id in &spec.subcomplex {
            let i = *index.get(id.as_str()).ok_or_else(|| Error::NotASubcomplex(format!("unknown cell {id:?}")))?;
            subcomplex.push(i);
        }
        subcomplex.sort_unstable();
        subcomplex.dedup();
        let x = GCWComplex { group: group.clone(), cells, subcomplex };
        x.check_subcomplex(&x.subcomplex)?;
        bredon_cochains(&x, &ConstantSystem, None)?;
        Ok(x)
    }

    /// A single 0-cell `G/H`.
    pub fn orbit(group: &Arc<GroupTable>, h: &Subgroup) -> Result<Self> {
        let spec = ComplexSpec {
            cells: vec![CellSpec { dim: 0, id: "pt".into(), isotropy: h.elements().to_vec(), boundary: vec![] }],
            subcomplex: vec![],
        };
        Self::new(group, &spec)
    }

    pub fn group(&self) -> &Arc<GroupTable> {
        &self.group
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn subcomplex(&self) -> &[usize] {
        &self.subcomplex
    }

    pub fn dimension(&self) -> usize {
        self.cells.iter().map(|c| c.dim).max().unwrap_or(0)
    }

    pub fn cells_in_degree(&self, p: usize) -> Vec<usize> {
        (0..self.cells.len()).filter(|&i| self.cells[i].dim == p).collect()
    }

    pub fn to_spec(&self) -> ComplexSpec {
        ComplexSpec {
            cells: self
                .cells
                .iter()
                .map(|c| CellSpec {
                    dim: c.dim,
                    id: c.id.clone(),
                    isotropy: c.isotropy.elements().to_vec(),
                    boundary: c
                        .boundary
                        .iter()
                        .map(|t| IncidenceSpec { cell: self.cells[t.face].id.clone(), g: t.g, m: t.m })
                        .collect(),
                })
                .collect(),
            subcomplex: self.subcomplex.iter().map(|&i| self.cells[i].id.clone()).collect(),
        }
    }

    fn check_subcomplex(&self, cells: &[usize]) -> Result<()> {
        let set: BTreeSet<usize> = cells.iter().copied().collect();
        for &i in cells {
            if let Some(t) = self.cells[i].boundary.iter().find(|t| !set.contains(&t.face)) {
                return Err(Error::NotASubcomplex(format!(
                    "{:?} is attached to {:?}, which is missing",
                    self.cells[i].id, self.cells[t.face].id
                )));
            }
        }
        Ok(())
    }

    /// Looks up cell ids and checks that they span a subcomplex.
    pub fn resolve_subcomplex(&self, ids: &[String]) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for id in ids {
            let i = self
                .cells
                .iter()
                .position(|c| &c.id == id)
                .ok_or_else(|| Error::NotASubcomplex(format!("unknown cell {id:?}")))?;
            out.push(i);
        }
        out.sort_unstable();
        out.dedup();
        self.check_subcomplex(&out)?;
        Ok(out)
    }

    /// The subcomplex spanned by `cells` as a complex of its own.
    pub fn restrict_to(&self, cells: &[usize]) -> Result<GCWComplex> {
        self.check_subcomplex(cells)?;
        let keep: BTreeSet<usize> = cells.iter().copied().collect();
        let mut spec = self.to_spec();
        spec.cells = spec.cells.into_iter().enumerate().filter(|(i, _)| keep.contains(i)).map(|(_, c)| c).collect();
        spec.subcomplex.clear();
        GCWComplex::new(&self.group, &spec)
    }

    /// Disjoint union; cell ids are prefixed with `l.` and `r.`.
    pub fn disjoint_union(&self, other: &GCWComplex) -> Result<GCWComplex> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        let tag = |spec: ComplexSpec, p: &str| -> Vec<CellSpec> {
            spec.cells
                .into_iter()
                .map(|mut c| {
                    c.id = format!("{p}{}", c.id);
                    for t in c.boundary.iter_mut() {
                        t.cell = format!("{p}{}", t.cell);
                    }
                    c
                })
                .collect()
        };
        let mut cells = tag(self.to_spec(), "l.");
        cells.extend(tag(other.to_spec(), "r."));
        GCWComplex::new(&self.group, &ComplexSpec { cells, subcomplex: vec![] })
    }

    /// Isotropy groups together with all their conjugates, sorted.
    pub fn isotropy_family(&self) -> Vec<Subgroup> {
        let mut fam = BTreeSet::new();
        for c in &self.cells {
            for g in 0..self.group.order() {
                fam.insert(c.isotropy.conjugate(&self.group, g));
            }
        }
        let mut v: Vec<Subgroup> = fam.into_iter().collect();
        v.sort_by(|a, b| (a.order(), a.elements()).cmp(&(b.order(), b.elements())));
        v
    }
}

/// A contravariant coefficient system on the orbit category.
pub trait Coefficients {
    fn group(&self) -> Option<&Arc<GroupTable>>;
    fn rank(&self, h: &Subgroup) -> Result<usize>;
    /// `M(G/H_f) -> M(G/H_e)` for the G-map `G/H_e -> G/H_f`, `xH_e -> xgH_f`.
    fn morphism(&self, he: &Subgroup, hf: &Subgroup, g: usize) -> Result<IntMatrix>;
}

/// The system with `Z` on every orbit and identity maps.
#[derive(Debug, Clone, Copy, Default)]
pub struct ConstantSystem;

impl Coefficients for ConstantSystem {
    fn group(&self) -> Option<&Arc<GroupTable>> {
        None
    }

    fn rank(&self, _: &Subgroup) -> Result<usize> {
        Ok(1)
    }

    fn morphism(&self, _: &Subgroup, _: &Subgroup, _: usize) -> Result<IntMatrix> {
        Ok(IntMatrix::identity(1))
    }
}

/// `G/H -> R_alpha(H)` on a conjugation-closed family of subgroups.
pub struct CoefficientSystem {
    ctx: TwistedContext,
    family: Vec<Subgroup>,
    cache: Mutex<HashMap<(Subgroup, Subgroup, usize), IntMatrix>>,
}

impl CoefficientSystem {
    pub fn alpha(&self) -> &CocycleTable {
        self.ctx.alpha()
    }

    pub fn family(&self) -> &[Subgroup] {
        &self.family
    }

    pub fn context(&self) -> &TwistedContext {
        &self.ctx
    }

    fn in_family(&self, h: &Subgroup) -> Result<()> {
        if self.family.binary_search_by(|s| (s.order(), s.elements()).cmp(&(h.order(), h.elements()))).is_ok() {
            Ok(())
        } else {
            Err(Error::IsotropyNotInFamily(format!("{:?}", h.elements())))
        }
    }

    /// Identity law and composition `M(H, L, gk) = M(H, K, g) M(K, L, k)` over the family.
    pub fn check_functor_laws(&self) -> Result<()> {
        let grp = self.ctx.group().clone();
        let m = grp.order();
        let valid = |a: &Subgroup, b: &Subgroup, g: usize| a.conjugate(&grp, grp.inv(g)).is_subgroup_of(b);
        for h in &self.family {
            if self.morphism(h, h, 0)? != IntMatrix::identity(self.rank(h)?) {
                return Err(Error::Mismatch(format!("identity morphism of {:?} is not the identity", h.elements())));
            }
        }
        for k in &self.family {
            let into: Vec<(&Subgroup, usize)> =
                self.family.iter().flat_map(|h| (0..m).map(move |g| (h, g))).filter(|(h, g)| valid(h, k, *g)).collect();
            let out: Vec<(&Subgroup, usize)> =
                self.family.iter().flat_map(|l| (0..m).map(move |x| (l, x))).filter(|(l, x)| valid(k, l, *x)).collect();
            for &(h, g) in &into {
                let a = self.morphism(h, k, g)?;
                for &(l, x) in &out {
                    let lhs = self.morphism(h, l, grp.mul(g, x))?;
                    if lhs != a.mul(&self.morphism(k, l, x)?) {
                        return Err(Error::Mismatch(format!(
                            "composition fails for {:?} -> {:?} -> {:?}",
                            h.elements(),
                            k.elements(),
                            l.elements()
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

impl Coefficients for CoefficientSystem {
    fn group(&self) -> Option<&Arc<GroupTable>> {
        Some(self.ctx.group())
    }

    fn rank(&self, h: &Subgroup) -> Result<usize> {
        self.in_family(h)?;
        Ok(self.ctx.basis(h)?.len())
    }

    fn morphism(&self, he: &Subgroup, hf: &Subgroup, g: usize) -> Result<IntMatrix> {
        self.in_family(he)?;
        self.in_family(hf)?;
        let key = (he.clone(), hf.clone(), g);
        if let Some(m) = self.cache.lock().expect("morphism cache poisoned").get(&key) {
            return Ok(m.clone());
        }
        let grp = self.ctx.group();
        if !grp.contains(g) {
            return Err(Error::ElementNotInGroup(g));
        }
        let k = he.conjugate(grp, grp.inv(g));
        if !k.is_subgroup_of(hf) {
            return Err(Error::Mismatch(format!("no G-map G/{:?} -> G/{:?} through {g}", he.elements(), hf.elements())));
        }
        let m = self.ctx.conjugation(&k, g)?.mul(&self.ctx.restriction(hf, &k)?);
        Ok(self.cache.lock().expect("morphism cache poisoned").entry(key).or_insert(m).clone())
    }
}

/// Builds `G/H -> R_alpha(H)` on `family`, which must be closed under conjugation.
pub fn coefficient_system_from_cocycle(alpha: &CocycleTable, family: &[Subgroup]) -> Result<CoefficientSystem> {
    let grp = alpha.group();
    let mut fam = Vec::with_capacity(family.len());
    for h in family {
        fam.push(Subgroup::new(grp, h.elements().to_vec())?);
    }
    fam.sort_by(|a, b| (a.order(), a.elements()).cmp(&(b.order(), b.elements())));
    fam.dedup();
    for h in &fam {
        for g in 0..grp.order() {
            let c = h.conjugate(grp, g);
            if !fam.contains(&c) {
                return Err(Error::FamilyNotClosed(format!("{:?} is conjugate to {:?}", c.elements(), h.elements())));
            }
        }
    }
    let sys = CoefficientSystem { ctx: TwistedContext::new(alpha), family: fam, cache: Default::default() };
    sys.check_functor_laws()?;
    Ok(sys)
}

/// A cochain complex `C^0 -> C^1 -> ... -> C^d` with cell-block bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CochainComplex {
    /// `dims[p] = rank C^p`.
    pub dims: Vec<usize>,
    /// `deltas[p] : C^p -> C^{p+1}`.
    pub deltas: Vec<IntMatrix>,
    /// Per degree, the cells contributing blocks, with their offsets and ranks.
    pub blocks: Vec<Vec<(usize, usize, usize)>>,
}

impl CochainComplex {
    pub fn top(&self) -> usize {
        self.dims.len().saturating_sub(1)
    }
}

/// The Bredon cochain complex of `X` (relative to the cells in `rel` when given).
pub fn bredon_cochains(x: &GCWComplex, m: &dyn Coefficients, rel: Option<&[usize]>) -> Result<CochainComplex> {
    if let Some(g) = m.group() {
        if g != x.group() {
            return Err(Error::GroupMismatch);
        }
    }
    let excluded: BTreeSet<usize> = match rel {
        Some(r) => {
            x.check_subcomplex(r)?;
            r.iter().copied().collect()
        }
        None => BTreeSet::new(),
    };
    let d = x.dimension();
    let mut blocks = Vec::with_capacity(d + 1);
    let mut dims = Vec::with_capacity(d + 1);
    let mut where_: HashMap<usize, (usize, usize)> = HashMap::new();
    for p in 0..=d {
        let mut off = 0;
        let mut b = Vec::new();
        for i in x.cells_in_degree(p) {
            if excluded.contains(&i) {
                continue;
            }
            let r = m.rank(&x.cells[i].isotropy).map_err(|e| match e {
                Error::IsotropyNotInFamily(_) => Error::IsotropyNotInFamily(x.cells[i].id.clone()),
                other => other,
            })?;
            b.push((i, off, r));
            where_.insert(i, (off, r));
            off += r;
        }
        dims.push(off);
        blocks.push(b);
    }
    let mut deltas = Vec::with_capacity(d);
    for p in 0..d {
        let mut delta = IntMatrix::zeros(dims[p + 1], dims[p]);
        for &(e, row, _) in &blocks[p + 1] {
            let cell = &x.cells[e];
            for t in &cell.boundary {
                let Some(&(col, _)) = where_.get(&t.face) else { continue };
                let mat = m.morphism(&cell.isotropy, &x.cells[t.face].isotropy, t.g)?;
                delta.add_block(row, col, &mat, t.m);
            }
        }
        deltas.push(delta);
    }
    for p in 1..deltas.len() {
        if !deltas[p].mul(&deltas[p - 1]).is_zero() {
            return Err(Error::NonSquareZero(p - 1));
        }
    }
    Ok(CochainComplex { dims, deltas, blocks })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeCohomology {
    pub degree: usize,
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

/// Cohomology of a cochain complex, with the cochain ranks and differentials kept for audit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyResult {
    pub degrees: Vec<DegreeCohomology>,
    pub cochain_ranks: Vec<usize>,
    pub differentials: Vec<IntMatrix>,
}

impl CohomologyResult {
    pub fn free_rank(&self, p: usize) -> usize {
        self.degrees.get(p).map_or(0, |d| d.free_rank)
    }

    pub fn torsion(&self, p: usize) -> &[u64] {
        self.degrees.get(p).map_or(&[], |d| &d.torsion)
    }

    pub fn euler_consistent(&self) -> bool {
        let chain: i64 = self.cochain_ranks.iter().enumerate().map(|(p, &r)| if p % 2 == 0 { r as i64 } else { -(r as i64) }).sum();
        let coh: i64 =
            self.degrees.iter().map(|d| if d.degree % 2 == 0 { d.free_rank as i64 } else { -(d.free_rank as i64) }).sum();
        chain == coh
    }
}

/// Free ranks and torsion of `H^p` by Smith normal form over Z.
pub fn integral_cohomology(c: &CochainComplex) -> Result<CohomologyResult> {
    for p in 1..c.deltas.len() {
        if !c.deltas[p].mul(&c.deltas[p - 1]).is_zero() {
            return Err(Error::NotAComplex(format!("d^{} d^{} is nonzero", p, p - 1)));
        }
    }
    let snfs: Vec<_> = c.deltas.iter().map(|d| smith(d.rows(), d.cols(), d.to_big(), Track::NONE)).collect();
    let mut degrees = Vec::with_capacity(c.dims.len());
    for p in 0..c.dims.len() {
        let out = snfs.get(p).map_or(0, |s| s.rank());
        let (inc, torsion) = match p.checked_sub(1).and_then(|q| snfs.get(q)) {
            Some(s) => (s.rank(), s.torsion().iter().map(|t| t.to_u64().expect("torsion fits")).collect()),
            None => (0, vec![]),
        };
        degrees.push(DegreeCohomology { degree: p, free_rank: c.dims[p] - out - inc, torsion });
    }
    Ok(CohomologyResult { degrees, cochain_ranks: c.dims.clone(), differentials: c.deltas.clone() })
}

fn big_rank(rows: usize, cols: usize, a: Vec<Vec<BigInt>>) -> usize {
    smith(rows, cols, a, Track::NONE).rank()
}

fn columns_of(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    (0..m.cols()).map(|j| m.column(j).into_iter().map(BigInt::from).collect()).collect()
}

fn from_columns(rows: usize, cols: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    (0..rows).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect()
}

/// Rank over Q of the map induced on `H^p` by a chain map `f: C -> D` in degree `p`.
fn induced_rank(f: &IntMatrix, c: &CochainComplex, d: &CochainComplex, p: usize, p_target: usize) -> usize {
    let dim_c = c.dims[p];
    let dim_d = d.dims.get(p_target).copied().unwrap_or(0);
    if dim_c == 0 || dim_d == 0 {
        return 0;
    }
    let cycles = match c.deltas.get(p) {
        Some(delta) => kernel_basis(delta.rows(), delta.cols(), delta.to_big()),
        None => (0..dim_c).map(|i| (0..dim_c).map(|j| BigInt::from(i32::from(i == j))).collect()).collect(),
    };
    let bounds: Vec<Vec<BigInt>> = match p_target.checked_sub(1).and_then(|q| d.deltas.get(q)) {
        Some(b) => columns_of(b),
        None => vec![],
    };
    let fbig = f.to_big();
    let images: Vec<Vec<BigInt>> =
        cycles.iter().map(|z| fbig.iter().map(|row| row.iter().zip(z).map(|(a, b)| a * b).sum()).collect()).collect();
    let mut all = images;
    all.extend(bounds.iter().cloned());
    let r_all = big_rank(dim_d, all.len(), from_columns(dim_d, &all));
    let r_b = big_rank(dim_d, bounds.len(), from_columns(dim_d, &bounds));
    r_all - r_b
}

/// Ranks in the long exact sequence of a pair at one degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LesDegree {
    pub degree: usize,
    pub rel: usize,
    pub total: usize,
    pub sub: usize,
    /// `H^p(X, A) -> H^p(X)`.
    pub rank_j: usize,
    /// `H^p(X) -> H^p(A)`.
    pub rank_i: usize,
    /// `H^p(A) -> H^{p+1}(X, A)`.
    pub rank_connecting: usize,
    pub exact: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LesReport {
    pub degrees: Vec<LesDegree>,
}

impl LesReport {
    pub fn exact(&self) -> bool {
        self.degrees.iter().all(|d| d.exact)
    }
}

fn selection(rows: &[(usize, usize, usize)], cols: &[(usize, usize, usize)], nrows: usize, ncols: usize) -> IntMatrix {
    let mut m = IntMatrix::zeros(nrows, ncols);
    for &(cell, ro, r) in rows {
        if let Some(&(_, co, _)) = cols.iter().find(|b| b.0 == cell) {
            for t in 0..r {
                m.set(ro + t, co + t, 1);
            }
        }
    }
    m
}

/// Rational ranks of `... -> H^p(X,A) -> H^p(X) -> H^p(A) -> H^{p+1}(X,A) -> ...` and exactness at every spot.
pub fn les_of_pair(x: &GCWComplex, m: &dyn Coefficients, a: &[usize]) -> Result<LesReport> {
    let cx = bredon_cochains(x, m, None)?;
    let crel = bredon_cochains(x, m, Some(a))?;
    let asub: BTreeSet<usize> = a.iter().copied().collect();
    // C(A) sits inside C(X)'s block structure; build it by deleting non-A cells
    let ca = {
        let mut blocks = Vec::new();
        let mut dims = Vec::new();
        let mut keep_idx = Vec::new();
        for p in 0..cx.dims.len() {
            let mut b = Vec::new();
            let mut idx = Vec::new();
            let mut off = 0;
            for &(cell, o, r) in &cx.blocks[p] {
                if asub.contains(&cell) {
                    b.push((cell, off, r));
                    idx.extend(o..o + r);
                    off += r;
                }
            }
            dims.push(off);
            blocks.push(b);
            keep_idx.push(idx);
        }
        let deltas = (0..cx.deltas.len()).map(|p| cx.deltas[p].submatrix(&keep_idx[p + 1], &keep_idx[p])).collect();
        CochainComplex { dims, deltas, blocks }
    };
    let hx = integral_cohomology(&cx)?;
    let hrel = integral_cohomology(&crel)?;
    let ha = integral_cohomology(&ca)?;
    let top = cx.top();
    let mut ranks = Vec::new();
    for p in 0..=top {
        let j = selection(&cx.blocks[p], &crel.blocks[p], cx.dims[p], crel.dims[p]);
        let i = selection(&ca.blocks[p], &cx.blocks[p], ca.dims[p], cx.dims[p]);
        let rank_j = induced_rank(&j, &crel, &cx, p, p);
        let rank_i = induced_rank(&i, &cx, &ca, p, p);
        let rank_connecting = if p < top {
            // extend by zero on X, apply delta, keep the non-A rows
            let a_cols: Vec<usize> = cx.blocks[p].iter().filter(|b| asub.contains(&b.0)).flat_map(|b| b.1..b.1 + b.2).collect();
            let rel_rows: Vec<usize> =
                cx.blocks[p + 1].iter().filter(|b| !asub.contains(&b.0)).flat_map(|b| b.1..b.1 + b.2).collect();
            let conn = cx.deltas[p].submatrix(&rel_rows, &a_cols);
            induced_rank(&conn, &ca, &crel, p, p + 1)
        } else {
            0
        };
        ranks.push((rank_j, rank_i, rank_connecting));
    }
    let mut degrees = Vec::new();
    for p in 0..=top {
        let (rank_j, rank_i, rank_c) = ranks[p];
        let incoming_rel = if p == 0 { 0 } else { ranks[p - 1].2 };
        let (rel, total, sub) = (hrel.free_rank(p), hx.free_rank(p), ha.free_rank(p));
        let exact = rel - rank_j == incoming_rel && total - rank_i == rank_j && sub - rank_c == rank_i;
        degrees.push(LesDegree { degree: p, rel, total, sub, rank_j, rank_i, rank_connecting: rank_c, exact });
    }
    // H^{top+1}(X, A) = 0 must absorb the last connecting map
    if let Some(last) = degrees.last_mut() {
        last.exact &= ranks[top].2 == 0;
    }
    Ok(LesReport { degrees })
}

/// The degree-zero product `H^0(X; R_alpha) x H^0(X; R_beta) -> H^0(X; R_{alpha+beta})`.
pub struct H0Pairing {
    complex: GCWComplex,
    alpha: CoefficientSystem,
    beta: CoefficientSystem,
    sum: CoefficientSystem,
    witness: Witness,
    ca: CochainComplex,
    cb: CochainComplex,
    cs: CochainComplex,
}

impl H0Pairing {
    pub fn alpha_system(&self) -> &CoefficientSystem {
        &self.alpha
    }

    pub fn beta_system(&self) -> &CoefficientSystem {
        &self.beta
    }

    /// Coefficients for the normalized sum twist.
    pub fn sum_system(&self) -> &CoefficientSystem {
        &self.sum
    }

    pub fn witness(&self) -> &Witness {
        &self.witness
    }

    fn kernel(c: &CochainComplex) -> Vec<Vec<i64>> {
        let n = c.dims.first().copied().unwrap_or(0);
        match c.deltas.first() {
            Some(d) => kernel_basis(d.rows(), d.cols(), d.to_big())
                .into_iter()
                .map(|v| v.into_iter().map(|x| x.to_i64().expect("small kernel entries")).collect())
                .collect(),
            None => (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect(),
        }
    }

    pub fn kernel_alpha(&self) -> Vec<Vec<i64>> {
        Self::kernel(&self.ca)
    }

    pub fn kernel_beta(&self) -> Vec<Vec<i64>> {
        Self::kernel(&self.cb)
    }

    fn is_cocycle(c: &CochainComplex, v: &[i64]) -> bool {
        c.deltas.first().is_none_or(|d| d.apply(v).iter().all(|x| *x == 0))
    }

    /// Multiplies two degree-0 cocycles cell by cell.
    pub fn pair(&self, x: &[i64], y: &[i64]) -> Result<Vec<i64>> {
        if x.len() != self.ca.dims[0] || y.len() != self.cb.dims[0] {
            return Err(Error::InvalidInput("cochain length does not match C^0".into()));
        }
        if !Self::is_cocycle(&self.ca, x) || !Self::is_cocycle(&self.cb, y) {
            return Err(Error::InvalidInput("pairing arguments must be cocycles".into()));
        }
        let mut out = vec![0i64; self.cs.dims[0]];
        for (k, &(cell, off_a, ra)) in self.ca.blocks[0].iter().enumerate() {
            let (_, off_b, rb) = self.cb.blocks[0][k];
            let (_, off_s, _) = self.cs.blocks[0][k];
            let h = &self.complex.cells[cell].isotropy;
            let (ba, bb) = (self.alpha.context().basis(h)?, self.beta.context().basis(h)?);
            let bs = self.sum.context().basis(h)?;
            let va = combine(&ba, &x[off_a..off_a + ra]);
            let vb = combine(&bb, &y[off_b..off_b + rb]);
            let prod: Vec<CycNum> = va.iter().zip(&vb).map(|(a, b)| a * b).collect();
            let w = Witness { modulus: self.witness.modulus, values: h.elements().iter().map(|&g| self.witness.values[g]).collect() };
            let coords = decompose_values(&transport(prod, &w), &bs)?;
            out[off_s..off_s + coords.coords().len()].copy_from_slice(coords.coords());
        }
        if !Self::is_cocycle(&self.cs, &out) {
            return Err(Error::NotIntegral("product is not a cocycle".into()));
        }
        Ok(out)
    }
}

fn combine(basis: &crate::twisted::AlphaCharBasis, coords: &[i64]) -> Vec<CycNum> {
    let m = basis.group().order();
    (0..m)
        .map(|g| {
            let mut acc = CycNum::zero();
            for (c, chi) in coords.iter().zip(basis.irreducibles()) {
                if *c != 0 {
                    acc = &acc + &chi.values()[g].scale(&num_rational::BigRational::from_integer(BigInt::from(*c)));
                }
            }
            acc
        })
        .collect()
}

pub fn h0_module_pairing(x: &GCWComplex, alpha: &CocycleTable, beta: &CocycleTable) -> Result<H0Pairing> {
    let family = x.isotropy_family();
    let sum = add_cocycles(alpha, beta)?;
    let norm = normalize_cocycle(&sum)?;
    let sa = coefficient_system_from_cocycle(alpha, &family)?;
    let sb = coefficient_system_from_cocycle(beta, &family)?;
    let ss = coefficient_system_from_cocycle(&norm.cocycle, &family)?;
    let ca = bredon_cochains(x, &sa, None)?;
    let cb = bredon_cochains(x, &sb, None)?;
    let cs = bredon_cochains(x, &ss, None)?;
    Ok(H0Pairing { complex: x.clone(), alpha: sa, beta: sb, sum: ss, witness: norm.witness, ca, cb, cs })
}
