//! Finite groups as multiplication tables.
//!
//! Elements are indices `0..order`; the identity is always index 0.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::cell::Cell;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Default bound on the group order accepted by [`enumerate_subgroups`].
pub const DEFAULT_SUBGROUP_BOUND: usize = 512;

/// Environment variable overriding [`DEFAULT_SUBGROUP_BOUND`].
pub const MAX_GROUP_ENV: &str = "TWISTK_MAX_GROUP";

thread_local! {
    static BOUND_OVERRIDE: Cell<Option<usize>> = const { Cell::new(None) };
}

/// Sets a bound for the calling thread that takes precedence over `TWISTK_MAX_GROUP`.
pub fn set_subgroup_bound(bound: Option<usize>) {
    BOUND_OVERRIDE.with(|b| b.set(bound));
}

/// The subgroup-enumeration bound: the thread's override if set, else `TWISTK_MAX_GROUP`, else the default.
pub fn subgroup_bound() -> usize {
    if let Some(o) = BOUND_OVERRIDE.with(Cell::get) {
        return o;
    }
    std::env::var(MAX_GROUP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_SUBGROUP_BOUND)
}

#[derive(Debug, Clone)]
struct ClassData {
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

/// A validated finite group given by its multiplication table.
#[derive(Clone)]
pub struct GroupTable {
    order: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
    classes: OnceLock<ClassData>,
}

impl PartialEq for GroupTable {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.table == other.table
    }
}

impl Eq for GroupTable {}

impl Hash for GroupTable {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.order.hash(state);
        self.table.hash(state);
    }
}

impl fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupTable").field("order", &self.order).finish()
    }
}

impl GroupTable {
    /// Validates a multiplication table. If the identity is not at index 0
    /// the elements are re-indexed by swapping it into place.
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Self> {
        let m = rows.len();
        if m == 0 {
            return Err(Error::InvalidInput("empty multiplication table".into()));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != m {
                return Err(Error::InvalidInput(format!("row {i} has length {}, expected {m}", row.len())));
            }
            if let Some((j, &v)) = row.iter().enumerate().find(|(_, &v)| v >= m) {
                return Err(Error::NonClosed(format!("{i}*{j} = {v} is outside 0..{m}")));
            }
        }
        let e = (0..m)
            .find(|&e| (0..m).all(|g| rows[e][g] == g && rows[g][e] == g))
            .ok_or(Error::NoIdentity)?;
        // swap e <-> 0 if needed
        let relabel = |x: usize| if x == e { 0 } else if x == 0 { e } else { x };
        let mut table = vec![0; m * m];
        for a in 0..m {
            for b in 0..m {
                table[relabel(a) * m + relabel(b)] = relabel(rows[a][b]);
            }
        }
        Self::from_flat(m, table)
    }

    /// Validates a flat row-major table whose identity already sits at 0.
    pub(crate) fn from_flat(m: usize, table: Vec<usize>) -> Result<Self> {
        debug_assert_eq!(table.len(), m * m);
        for g in 0..m {
            if table[g] != g || table[g * m] != g {
                return Err(Error::NoIdentity);
            }
        }
        let mut inverse = vec![usize::MAX; m];
        for g in 0..m {
            let row = &table[g * m..(g + 1) * m];
            let mut seen = vec![false; m];
            for &x in row {
                if seen[x] {
                    return Err(Error::NonClosed(format!("row {g} repeats element {x}")));
                }
                seen[x] = true;
            }
            inverse[g] = row.iter().position(|&x| x == 0).expect("row is a permutation");
        }
        for a in 0..m {
            for b in 0..m {
                let ab = table[a * m + b];
                for c in 0..m {
                    if table[ab * m + c] != table[a * m + table[b * m + c]] {
                        return Err(Error::NonAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(GroupTable { order: m, table, inverse, classes: OnceLock::new() })
    }

    /// The group generated by `gens` under `mul`, with elements numbered in
    /// breadth-first word order (right multiplication, ties by generator index).
    pub fn from_closure<T, F>(identity: T, gens: &[T], mul: F) -> Result<(Self, Vec<T>)>
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &T) -> T,
    {
        let mut elems = vec![identity.clone()];
        let mut index: HashMap<T, usize> = HashMap::new();
        index.insert(identity, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for s in gens {
                let x = mul(&elems[i], s);
                if !index.contains_key(&x) {
                    index.insert(x.clone(), elems.len());
                    queue.push_back(elems.len());
                    elems.push(x);
                }
            }
        }
        let m = elems.len();
        let mut table = vec![0; m * m];
        for a in 0..m {
            for b in 0..m {
                let x = mul(&elems[a], &elems[b]);
                table[a * m + b] = *index
                    .get(&x)
                    .ok_or_else(|| Error::NonClosed(format!("product of elements {a} and {b} escapes the closure")))?;
            }
        }
        Ok((Self::from_flat(m, table)?, elems))
    }

    /// The permutation group generated by `gens`, each given as an image list on
    /// `0..degree`. Composition is `(p*q)(x) = q(p(x))` (apply `p` first).
    pub fn from_permutations(degree: usize, gens: &[Vec<usize>]) -> Result<Self> {
        for (i, p) in gens.iter().enumerate() {
            let mut seen = vec![false; degree];
            if p.len() != degree {
                return Err(Error::InvalidInput(format!("generator {i} has length {}, expected {degree}", p.len())));
            }
            for &x in p {
                if x >= degree || seen[x] {
                    return Err(Error::InvalidInput(format!("generator {i} is not a permutation of 0..{degree}")));
                }
                seen[x] = true;
            }
        }
        let id: Vec<usize> = (0..degree).collect();
        let (g, _) = Self::from_closure(id, gens, |p, q| p.iter().map(|&x| q[x]).collect())?;
        Ok(g)
    }

    pub fn trivial() -> Self {
        Self::from_flat(1, vec![0]).expect("trivial group")
    }

    /// Cyclic group of order `n`, element `k` being the `k`-th power of the generator.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let table = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        Self::from_flat(n, table).expect("cyclic group")
    }

    /// Klein four-group `Z/2 x Z/2`, element `x1 + 2*x2` for `(x1, x2)`.
    pub fn klein_four() -> Self {
        let table = (0..16).map(|i| (i / 4) ^ (i % 4)).collect();
        Self::from_flat(4, table).expect("klein four-group")
    }

    /// Dihedral group of order `2n` (symmetries of an `n`-gon).
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 2);
        let rot: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let refl: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
        Self::from_permutations(n, &[rot, refl]).expect("dihedral group")
    }

    pub fn symmetric3() -> Self {
        Self::from_permutations(3, &[vec![1, 2, 0], vec![1, 0, 2]]).expect("S3")
    }

    /// Quaternion group of order 8 generated by `i` and `j`.
    pub fn quaternion() -> Self {
        type Q = [i8; 4];
        fn mul(a: &Q, b: &Q) -> Q {
            [
                a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
                a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
                a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
                a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
            ]
        }
        let (g, _) = Self::from_closure([1, 0, 0, 0], &[[0, 1, 0, 0], [0, 0, 1, 0]], mul).expect("Q8");
        g
    }

    /// Direct product with element `(a, b)` encoded as `a + |self|*b`.
    pub fn direct_product(&self, other: &GroupTable) -> GroupTable {
        let (m, n) = (self.order, other.order);
        let mut table = vec![0; m * n * m * n];
        for x in 0..m * n {
            for y in 0..m * n {
                let a = self.mul(x % m, y % m);
                let b = other.mul(x / m, y / m);
                table[x * m * n + y] = a + m * b;
            }
        }
        Self::from_flat(m * n, table).expect("direct product")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `g x g^-1`.
    #[inline]
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inverse[g])
    }

    pub fn pow(&self, g: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, g))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> usize {
        (0..self.order).map(|g| self.element_order(g)).fold(1, num_integer::lcm)
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn contains(&self, g: usize) -> bool {
        g < self.order
    }

    fn class_data(&self) -> &ClassData {
        self.classes.get_or_init(|| {
            let m = self.order;
            let mut class_of = vec![usize::MAX; m];
            let mut classes = Vec::new();
            for x in 0..m {
                if class_of[x] != usize::MAX {
                    continue;
                }
                let id = classes.len();
                let mut members: Vec<usize> = (0..m).map(|g| self.conj(g, x)).collect();
                members.sort_unstable();
                members.dedup();
                for &y in &members {
                    class_of[y] = id;
                }
                classes.push(members);
            }
            ClassData { classes, class_of }
        })
    }

    /// Conjugacy classes sorted by minimal member, identity class first.
    pub fn conjugacy_classes(&self) -> &[Vec<usize>] {
        &self.class_data().classes
    }

    /// Index into [`GroupTable::conjugacy_classes`] of the class containing `g`.
    pub fn class_of(&self, g: usize) -> usize {
        self.class_data().class_of[g]
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup { elements: (0..self.order).collect() }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup { elements: vec![0] }
    }

    /// The subgroup generated by `gens`.
    pub fn generate(&self, gens: &[usize]) -> Result<Subgroup> {
        if let Some(&g) = gens.iter().find(|&&g| g >= self.order) {
            return Err(Error::ElementNotInGroup(g));
        }
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                let y = self.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        Ok(Subgroup { elements: (0..self.order).filter(|&i| seen[i]).collect() })
    }
}

/// A subgroup, stored as the sorted list of its element indices in the parent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    elements: Vec<usize>,
}

impl Subgroup {
    /// Checks that `elements` is a subgroup of `group`.
    pub fn new(group: &GroupTable, mut elements: Vec<usize>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        if let Some(&g) = elements.iter().find(|&&g| g >= group.order()) {
            return Err(Error::ElementNotInGroup(g));
        }
        if elements.first() != Some(&0) {
            return Err(Error::NotASubgroup("identity missing".into()));
        }
        let s = Subgroup { elements };
        for &a in &s.elements {
            if !s.contains(group.inv(a)) {
                return Err(Error::NotASubgroup(format!("inverse of {a} missing")));
            }
            for &b in &s.elements {
                if !s.contains(group.mul(a, b)) {
                    return Err(Error::NotASubgroup(format!("{a}*{b} = {} missing", group.mul(a, b))));
                }
            }
        }
        Ok(s)
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    /// Position of `g` in the sorted element list, which is also its index in
    /// [`Subgroup::to_group`].
    pub fn position(&self, g: usize) -> Option<usize> {
        self.elements.binary_search(&g).ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&g| other.contains(g))
    }

    /// `g H g^-1`.
    pub fn conjugate(&self, group: &GroupTable, g: usize) -> Subgroup {
        let mut elements: Vec<usize> = self.elements.iter().map(|&x| group.conj(g, x)).collect();
        elements.sort_unstable();
        Subgroup { elements }
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Subgroup { elements: self.elements.iter().copied().filter(|&g| other.contains(g)).collect() }
    }

    /// The subgroup as a group in its own right, indexed by position.
    pub fn to_group(&self, group: &GroupTable) -> GroupTable {
        let k = self.order();
        let mut table = vec![0; k * k];
        for (i, &a) in self.elements.iter().enumerate() {
            for (j, &b) in self.elements.iter().enumerate() {
                table[i * k + j] = self.position(group.mul(a, b)).expect("closed subgroup");
            }
        }
        GroupTable::from_flat(k, table).expect("subgroup table")
    }
}

fn check_subgroup(group: &GroupTable, h: &Subgroup) -> Result<()> {
    Subgroup::new(group, h.elements.clone()).map(|_| ())
}

/// All subgroups, sorted by `(order, element list)`, using the bound from
/// [`subgroup_bound`].
pub fn enumerate_subgroups(group: &GroupTable) -> Result<Vec<Subgroup>> {
    enumerate_subgroups_bounded(group, subgroup_bound())
}

/// All subgroups of a group of order at most `bound`.
///
/// Starts from the cyclic subgroups and repeatedly joins a known subgroup with
/// a cyclic one not contained in it; every subgroup arises this way.
pub fn enumerate_subgroups_bounded(group: &GroupTable, bound: usize) -> Result<Vec<Subgroup>> {
    let m = group.order();
    if m > bound {
        return Err(Error::GroupTooLarge { order: m, bound });
    }
    let mut cyclic: Vec<(usize, Subgroup)> = Vec::new();
    let mut cyclic_seen = HashSet::new();
    for g in 0..m {
        let c = group.generate(&[g])?;
        if cyclic_seen.insert(c.clone()) {
            cyclic.push((g, c));
        }
    }
    let mut found: HashSet<Subgroup> = HashSet::new();
    let mut queue: VecDeque<(Vec<usize>, Subgroup)> = VecDeque::new();
    for (g, c) in &cyclic {
        found.insert(c.clone());
        queue.push_back((vec![*g], c.clone()));
    }
    while let Some((gens, h)) = queue.pop_front() {
        for (g, _) in &cyclic {
            if h.contains(*g) {
                continue;
            }
            let mut next = gens.clone();
            next.push(*g);
            let j = group.generate(&next)?;
            if found.insert(j.clone()) {
                queue.push_back((next, j));
            }
        }
    }
    let mut all: Vec<Subgroup> = found.into_iter().collect();
    all.sort_by(|a, b| (a.order(), &a.elements).cmp(&(b.order(), &b.elements)));
    Ok(all)
}

/// One minimal-index representative per double coset `K g H`.
pub fn double_cosets(group: &GroupTable, k: &Subgroup, h: &Subgroup) -> Result<Vec<usize>> {
    check_subgroup(group, k)?;
    check_subgroup(group, h)?;
    Ok(double_cosets_unchecked(group, k, h))
}

pub(crate) fn double_cosets_unchecked(group: &GroupTable, k: &Subgroup, h: &Subgroup) -> Vec<usize> {
    let m = group.order();
    let mut covered = vec![false; m];
    let mut reps = Vec::new();
    for g in 0..m {
        if covered[g] {
            continue;
        }
        reps.push(g);
        for &a in k.elements() {
            let ag = group.mul(a, g);
            for &b in h.elements() {
                covered[group.mul(ag, b)] = true;
            }
        }
    }
    reps
}
