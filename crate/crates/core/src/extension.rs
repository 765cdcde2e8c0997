//! The central extensions `G_alpha` and `G_{alpha (+) beta}` built from cocycles.

use std::sync::Arc;

use crate::cocycle::{add_cocycles, CocycleTable};
use crate::error::{Error, Result};
use crate::group::GroupTable;

/// `1 -> Z/n -> G_alpha -> G -> 1` with `(g, j)(h, k) = (gh, j + k + alpha(g, h))`.
///
/// The pair `(g, j)` has index `j * |G| + g`.
#[derive(Debug, Clone)]
pub struct CentralExtension {
    total: Arc<GroupTable>,
    cocycle: CocycleTable,
}

impl CentralExtension {
    pub fn new(alpha: &CocycleTable) -> Self {
        let base = alpha.group();
        let m = base.order();
        let n = alpha.modulus() as usize;
        let size = m * n;
        let mut table = vec![0; size * size];
        for x in 0..size {
            let (g, j) = (x % m, x / m);
            for y in 0..size {
                let (h, k) = (y % m, y / m);
                let c = (j + k + alpha.entry(g, h) as usize) % n;
                table[x * size + y] = c * m + base.mul(g, h);
            }
        }
        let total = GroupTable::from_flat(size, table).expect("a unital cocycle yields a group");
        CentralExtension { total: Arc::new(total), cocycle: alpha.clone() }
    }

    pub fn total(&self) -> &Arc<GroupTable> {
        &self.total
    }

    pub fn base(&self) -> &Arc<GroupTable> {
        self.cocycle.group()
    }

    pub fn cocycle(&self) -> &CocycleTable {
        &self.cocycle
    }

    /// Order of the central kernel.
    pub fn n(&self) -> usize {
        self.cocycle.modulus() as usize
    }

    pub fn element(&self, g: usize, j: usize) -> usize {
        (j % self.n()) * self.base().order() + g
    }

    pub fn split(&self, x: usize) -> (usize, usize) {
        let m = self.base().order();
        (x % m, x / m)
    }

    pub fn project(&self, x: usize) -> usize {
        x % self.base().order()
    }

    pub fn section(&self, g: usize) -> usize {
        g
    }

    pub fn central_gen(&self) -> usize {
        if self.n() == 1 {
            0
        } else {
            self.base().order()
        }
    }

    /// Writes `s(g) s(x) s(g)^-1 = z^j s(gxg^-1)` and returns `(gxg^-1, j)`.
    pub fn conj_section(&self, g: usize, x: usize) -> (usize, usize) {
        let t = &self.total;
        let v = t.mul(t.mul(self.section(g), self.section(x)), t.inv(self.section(g)));
        let (y, j) = self.split(v);
        (y, j)
    }
}

pub fn central_extension(alpha: &CocycleTable) -> CentralExtension {
    CentralExtension::new(alpha)
}

/// The extension by `Z/n x Z/m` attached to the pair `(alpha, beta)`, with its three projections.
///
/// The triple `(g, a, b)` has index `(b * n + a) * |G| + g`.
#[derive(Debug, Clone)]
pub struct DoubleExtension {
    total: Arc<GroupTable>,
    ext_alpha: CentralExtension,
    ext_beta: CentralExtension,
    ext_sum: CentralExtension,
    p_alpha: Vec<usize>,
    p_beta: Vec<usize>,
    p_sum: Vec<usize>,
}

impl DoubleExtension {
    pub fn new(alpha: &CocycleTable, beta: &CocycleTable) -> Result<Self> {
        if alpha.group() != beta.group() {
            return Err(Error::GroupMismatch);
        }
        let base = alpha.group();
        let m = base.order();
        let (n1, n2) = (alpha.modulus() as usize, beta.modulus() as usize);
        let size = m * n1 * n2;
        let split = |x: usize| (x % m, (x / m) % n1, x / (m * n1));
        let mut table = vec![0; size * size];
        for x in 0..size {
            let (g, a, b) = split(x);
            for y in 0..size {
                let (h, c, d) = split(y);
                let na = (a + c + alpha.entry(g, h) as usize) % n1;
                let nb = (b + d + beta.entry(g, h) as usize) % n2;
                table[x * size + y] = (nb * n1 + na) * m + base.mul(g, h);
            }
        }
        let total = Arc::new(GroupTable::from_flat(size, table).expect("unital cocycles yield a group"));
        let sum = add_cocycles(alpha, beta)?;
        let l = sum.modulus() as usize;
        let (fa, fb) = (l / n1, l / n2);
        let mut p_alpha = Vec::with_capacity(size);
        let mut p_beta = Vec::with_capacity(size);
        let mut p_sum = Vec::with_capacity(size);
        for x in 0..size {
            let (g, a, b) = split(x);
            p_alpha.push(a * m + g);
            p_beta.push(b * m + g);
            p_sum.push(((a * fa + b * fb) % l) * m + g);
        }
        Ok(DoubleExtension {
            total,
            ext_alpha: CentralExtension::new(alpha),
            ext_beta: CentralExtension::new(beta),
            ext_sum: CentralExtension::new(&sum),
            p_alpha,
            p_beta,
            p_sum,
        })
    }

    pub fn total(&self) -> &Arc<GroupTable> {
        &self.total
    }

    pub fn ext_alpha(&self) -> &CentralExtension {
        &self.ext_alpha
    }

    pub fn ext_beta(&self) -> &CentralExtension {
        &self.ext_beta
    }

    pub fn ext_sum(&self) -> &CentralExtension {
        &self.ext_sum
    }

    pub fn p_alpha(&self, x: usize) -> usize {
        self.p_alpha[x]
    }

    pub fn p_beta(&self, x: usize) -> usize {
        self.p_beta[x]
    }

    pub fn p_sum(&self, x: usize) -> usize {
        self.p_sum[x]
    }

    /// Exhaustive check that the three projections are homomorphisms.
    pub fn projections_are_homomorphisms(&self) -> bool {
        let t = &self.total;
        let maps: [(&Vec<usize>, &GroupTable); 3] = [
            (&self.p_alpha, &self.ext_alpha.total),
            (&self.p_beta, &self.ext_beta.total),
            (&self.p_sum, &self.ext_sum.total),
        ];
        maps.iter().all(|(p, target)| {
            (0..t.order()).all(|x| (0..t.order()).all(|y| p[t.mul(x, y)] == target.mul(p[x], p[y])))
        })
    }
}

pub fn double_extension(alpha: &CocycleTable, beta: &CocycleTable) -> Result<DoubleExtension> {
    DoubleExtension::new(alpha, beta)
}
