//! Exact arithmetic in cyclotomic fields `Q(zeta_N)`.
//!
//! A [`CycNum`] is stored over the power basis `1, z, ..., z^(phi(N)-1)` of
//! `Q(z)`, `z = exp(2 pi i / N)`, reduced modulo the `N`-th cyclotomic
//! polynomial, with `N` the smallest conductor of a field containing the value.
//! The representation is therefore canonical and derived equality is field
//! equality.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNum {
    conductor: usize,
    coeffs: Vec<BigRational>,
}

pub(crate) fn euler_phi(n: usize) -> usize {
    prime_factors(n).iter().fold(n, |acc, &p| acc / p * (p - 1))
}

pub(crate) fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn cache<K, V>(cell: &'static OnceLock<Mutex<HashMap<K, Arc<V>>>>, key: K, make: impl FnOnce() -> V) -> Arc<V>
where
    K: std::hash::Hash + Eq,
{
    let map = cell.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = map.lock().expect("cache lock").get(&key) {
        return v.clone();
    }
    let v = Arc::new(make());
    map.lock().expect("cache lock").entry(key).or_insert(v).clone()
}

/// Coefficients (low degree first) of the `n`-th cyclotomic polynomial.
pub(crate) fn cyclotomic_polynomial(n: usize) -> Arc<Vec<i64>> {
    static CELL: OnceLock<Mutex<HashMap<usize, Arc<Vec<i64>>>>> = OnceLock::new();
    cache(&CELL, n, || {
        // x^n - 1 divided by every Phi_d, d | n, d < n
        let mut num = vec![0i64; n + 1];
        num[0] = -1;
        num[n] = 1;
        for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
            let den = cyclotomic_polynomial(d);
            num = poly_div_exact(&num, &den);
        }
        num
    })
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = num.len() - 1 - dd;
    let mut q = vec![0i64; qd + 1];
    for i in (0..=qd).rev() {
        let c = rem[i + dd];
        q[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

fn reduce_mod_phi(l: usize, mut dense: Vec<BigRational>) -> Vec<BigRational> {
    let phi = cyclotomic_polynomial(l);
    let deg = phi.len() - 1;
    for i in (deg..dense.len()).rev() {
        if dense[i].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut dense[i]);
        for (j, &pj) in phi.iter().enumerate().take(deg) {
            if pj != 0 {
                let t = &c * BigRational::from_integer(BigInt::from(pj));
                dense[i - deg + j] -= t;
            }
        }
    }
    dense.truncate(deg);
    dense
}

/// Data for recognizing elements of `Q(zeta_d)` inside `Q(zeta_l)`, `d = l/p`, `p` not dividing `d`.
struct Descent {
    rows: Vec<usize>,
    inv: Vec<Vec<BigRational>>,
    embed: Vec<Vec<BigRational>>,
}

fn descent(l: usize, p: usize) -> Arc<Descent> {
    static CELL: OnceLock<Mutex<HashMap<(usize, usize), Arc<Descent>>>> = OnceLock::new();
    cache(&CELL, (l, p), || {
        let d = l / p;
        let (fl, fd) = (euler_phi(l), euler_phi(d));
        // column k: zeta_d^k = zeta_l^(p k) in the power basis of Q(zeta_l)
        let cols: Vec<Vec<BigRational>> = (0..fd)
            .map(|k| {
                let mut v = vec![BigRational::zero(); l];
                v[(p * k) % l] = BigRational::one();
                reduce_mod_phi(l, v)
            })
            .collect();
        let embed: Vec<Vec<BigRational>> = (0..fl).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
        // pick fd independent rows greedily
        let mut rows = Vec::new();
        let mut basis: Vec<Vec<BigRational>> = Vec::new();
        for (r, row) in embed.iter().enumerate() {
            let mut v = row.clone();
            for (b, &pc) in basis.iter().zip(pivot_cols(&basis).iter()) {
                if !v[pc].is_zero() {
                    let f = &v[pc] / &b[pc];
                    for (x, y) in v.iter_mut().zip(b) {
                        *x -= &f * y;
                    }
                }
            }
            if v.iter().any(|x| !x.is_zero()) {
                rows.push(r);
                basis.push(v);
                if rows.len() == fd {
                    break;
                }
            }
        }
        let square: Vec<Vec<BigRational>> = rows.iter().map(|&r| embed[r].clone()).collect();
        Descent { rows, inv: invert(square), embed }
    })
}

fn pivot_cols(basis: &[Vec<BigRational>]) -> Vec<usize> {
    basis.iter().map(|b| b.iter().position(|x| !x.is_zero()).expect("nonzero row")).collect()
}

fn invert(mut a: Vec<Vec<BigRational>>) -> Vec<Vec<BigRational>> {
    let n = a.len();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero()).expect("invertible");
        a.swap(c, p);
        inv.swap(c, p);
        let f = a[c][c].recip();
        for x in a[c].iter_mut() {
            *x *= &f;
        }
        for x in inv[c].iter_mut() {
            *x *= &f;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for k in 0..n {
                    let t = &f * &a[c][k];
                    a[r][k] -= t;
                    let t = &f * &inv[c][k];
                    inv[r][k] -= t;
                }
            }
        }
    }
    inv
}

/// Tries to rewrite `x` (power basis of `Q(zeta_l)`) over `Q(zeta_{l/p})`.
fn try_descend(l: usize, p: usize, x: &[BigRational]) -> Option<Vec<BigRational>> {
    let d = l / p;
    if d.is_multiple_of(p) {
        // Q(zeta_l) has basis zeta_l^j, j < p, over Q(zeta_d), and zeta_d = zeta_l^p
        if x.iter().enumerate().any(|(i, c)| i % p != 0 && !c.is_zero()) {
            return None;
        }
        return Some(x.iter().step_by(p).cloned().collect());
    }
    let ds = descent(l, p);
    let c: Vec<BigRational> = ds
        .inv
        .iter()
        .map(|row| row.iter().zip(&ds.rows).map(|(a, &r)| a * &x[r]).fold(BigRational::zero(), |s, t| s + t))
        .collect();
    for (r, row) in ds.embed.iter().enumerate() {
        let v = row.iter().zip(&c).map(|(a, b)| a * b).fold(BigRational::zero(), |s, t| s + t);
        if v != x[r] {
            return None;
        }
    }
    Some(c)
}

fn minimize(mut l: usize, mut x: Vec<BigRational>) -> CycNum {
    if x.iter().skip(1).all(Zero::is_zero) {
        let q = x.into_iter().next().unwrap_or_else(BigRational::zero);
        return CycNum { conductor: 1, coeffs: vec![q] };
    }
    'outer: loop {
        for p in prime_factors(l) {
            if let Some(y) = try_descend(l, p, &x) {
                l /= p;
                x = y;
                continue 'outer;
            }
        }
        break;
    }
    CycNum { conductor: l, coeffs: x }
}

/// A dense element of `Q[x]/(x^l - 1)` used to accumulate sums and products
/// before a single reduction.
#[derive(Clone, Debug)]
pub(crate) struct Dense {
    l: usize,
    v: Vec<BigRational>,
}

impl Dense {
    pub(crate) fn zero(l: usize) -> Self {
        Dense { l, v: vec![BigRational::zero(); l] }
    }

    /// Embeds `a` into conductor `l` (which must be a multiple of `a.conductor`).
    pub(crate) fn from_cyc(a: &CycNum, l: usize) -> Self {
        let mut d = Self::zero(l);
        d.add_cyc(a);
        d
    }

    pub(crate) fn add_cyc(&mut self, a: &CycNum) {
        let step = self.l / a.conductor;
        debug_assert_eq!(self.l % a.conductor, 0);
        for (i, c) in a.coeffs.iter().enumerate() {
            if !c.is_zero() {
                self.v[(i * step) % self.l] += c;
            }
        }
    }

    /// `self += a * conj(b)^[conj_b] * zeta_l^shift`.
    pub(crate) fn add_product(&mut self, a: &CycNum, b: &CycNum, conj_b: bool, shift: usize) {
        let (sa, sb) = (self.l / a.conductor, self.l / b.conductor);
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let jb = if conj_b { self.l - (j * sb) % self.l } else { j * sb };
                let k = (i * sa + jb + shift) % self.l;
                self.v[k] += x * y;
            }
        }
    }

    pub(crate) fn scale(&mut self, q: &BigRational) {
        for x in self.v.iter_mut() {
            *x *= q;
        }
    }

    pub(crate) fn into_cyc(self) -> CycNum {
        let l = self.l;
        minimize(l, reduce_mod_phi(l, self.v))
    }
}

impl CycNum {
    pub fn zero() -> Self {
        Self::from_rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(q: BigRational) -> Self {
        CycNum { conductor: 1, coeffs: vec![q] }
    }

    /// `zeta_n^k`, with `k` reduced modulo `n`.
    pub fn root_of_unity(n: usize, k: i64) -> Self {
        assert!(n >= 1, "conductor must be positive");
        let e = k.rem_euclid(n as i64) as usize;
        let mut v = vec![BigRational::zero(); n];
        v[e] = BigRational::one();
        minimize(n, reduce_mod_phi(n, v))
    }

    /// Builds the value `sum_i coeffs[i] zeta_n^i` for an arbitrary coefficient
    /// vector of length at most `n` (not necessarily reduced).
    pub fn from_powers(n: usize, coeffs: &[BigRational]) -> Self {
        assert!(coeffs.len() <= n);
        let mut v = vec![BigRational::zero(); n];
        for (i, c) in coeffs.iter().enumerate() {
            v[i] += c;
        }
        minimize(n, reduce_mod_phi(n, v))
    }

    /// Reinterprets a power-basis coefficient vector of `Q(zeta_n)` and
    /// reduces it to canonical form. Fails if the length is not `phi(n)`.
    pub fn from_basis(n: usize, coeffs: Vec<BigRational>) -> Option<Self> {
        if n == 0 || coeffs.len() != euler_phi(n) {
            return None;
        }
        Some(minimize(n, coeffs))
    }

    pub fn conductor(&self) -> usize {
        self.conductor
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.conductor == 1 && self.coeffs[0].is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    /// The value as an integer, if it is one.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational().filter(|q| q.is_integer()).map(|q| q.to_integer())
    }

    fn common(&self, other: &CycNum) -> usize {
        self.conductor.lcm(&other.conductor)
    }

    /// Complex conjugation `zeta_N -> zeta_N^-1`.
    pub fn conjugate(&self) -> CycNum {
        if self.is_rational() {
            return self.clone();
        }
        let n = self.conductor;
        let mut v = vec![BigRational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[(n - i) % n] += c;
        }
        minimize(n, reduce_mod_phi(n, v))
    }

    pub fn scale(&self, q: &BigRational) -> CycNum {
        if q.is_zero() {
            return CycNum::zero();
        }
        CycNum { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    /// `self * zeta_n^k`.
    pub fn mul_root(&self, n: usize, k: i64) -> CycNum {
        let e = k.rem_euclid(n as i64) as usize;
        if e == 0 || self.is_zero() {
            return self.clone();
        }
        let l = self.conductor.lcm(&n);
        let mut d = Dense::zero(l);
        let step = l / self.conductor;
        let shift = e * (l / n);
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                d.v[(i * step + shift) % l] += c;
            }
        }
        d.into_cyc()
    }

    pub fn sum<'a, I: IntoIterator<Item = &'a CycNum>>(items: I) -> CycNum {
        let items: Vec<&CycNum> = items.into_iter().collect();
        let l = items.iter().fold(1usize, |acc, x| acc.lcm(&x.conductor));
        let mut d = Dense::zero(l);
        for x in items {
            d.add_cyc(x);
        }
        d.into_cyc()
    }

    /// Squared absolute value `a * conj(a)`.
    pub fn norm_sq(&self) -> CycNum {
        self * &self.conjugate()
    }
}

impl Add for &CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        if self.is_rational() && rhs.is_rational() {
            return CycNum::from_rational(&self.coeffs[0] + &rhs.coeffs[0]);
        }
        let mut d = Dense::from_cyc(self, self.common(rhs));
        d.add_cyc(rhs);
        d.into_cyc()
    }
}

impl Sub for &CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        self + &(-rhs)
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        if self.is_rational() {
            return rhs.scale(&self.coeffs[0]);
        }
        if rhs.is_rational() {
            return self.scale(&rhs.coeffs[0]);
        }
        let mut d = Dense::zero(self.common(rhs));
        d.add_product(self, rhs, false, 0);
        d.into_cyc()
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for CycNum {
            type Output = CycNum;
            fn $f(self, rhs: CycNum) -> CycNum {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

impl PartialOrd for CycNum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A total order for deterministic sorting: by conductor, then by the
/// coefficient vector. It is not compatible with field operations.
impl Ord for CycNum {
    fn cmp(&self, other: &Self) -> Ordering {
        self.conductor.cmp(&other.conductor).then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl fmt::Display for CycNum {
    /// `c:N:a0/b0,a1/b1,...`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c:{}:", self.conductor)?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}/{}", c.numer(), c.denom())?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.to_rational() {
            return write!(f, "{q}");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                _ if c.is_one() => write!(f, "z{}^{i}", self.conductor)?,
                _ if c.is_negative() => write!(f, "({c})*z{}^{i}", self.conductor)?,
                _ => write!(f, "{c}*z{}^{i}", self.conductor)?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct CycNumRepr {
    conductor: usize,
    coeffs: Vec<[String; 2]>,
}

impl Serialize for CycNum {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CycNumRepr {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| [c.numer().to_string(), c.denom().to_string()]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycNum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = CycNumRepr::deserialize(d)?;
        let coeffs = r
            .coeffs
            .iter()
            .map(|[n, dd]| {
                let n: BigInt = n.parse().map_err(D::Error::custom)?;
                let dd: BigInt = dd.parse().map_err(D::Error::custom)?;
                if dd.is_zero() {
                    return Err(D::Error::custom("zero denominator"));
                }
                Ok(BigRational::new(n, dd))
            })
            .collect::<Result<Vec<_>, _>>()?;
        CycNum::from_basis(r.conductor, coeffs).ok_or_else(|| D::Error::custom("coefficient count must equal phi(conductor)"))
    }
}
