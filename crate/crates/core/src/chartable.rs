//! Exact ordinary character tables.
//!
//! Class-sum eigenvectors are found modulo a prime `p = 1 (mod exp G)`, then every value is
//! lifted to `Q(zeta)` from the eigenvalue multiplicities of each cyclic subgroup.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::cyclotomic::{prime_factors, CycNum};
use crate::group::GroupTable;

#[derive(Clone, Copy)]
struct Fp(u64);

impl Fp {
    fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.0
    }

    fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.0 - b) % self.0
    }

    fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.0
    }

    fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.0;
        a %= self.0;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    fn inv(self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.0), "inverting zero mod {}", self.0);
        self.pow(a, self.0 - 2)
    }
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn choose_prime(exponent: u64, order: u64) -> u64 {
    let mut p = exponent + 1;
    while p <= 2 * order + 1 || !is_prime(p) {
        p += exponent;
    }
    p
}

fn primitive_root(f: Fp) -> u64 {
    let p = f.0;
    let qs = prime_factors((p - 1) as usize);
    (2..p).find(|&g| qs.iter().all(|&q| f.pow(g, (p - 1) / q as u64) != 1)).expect("F_p* is cyclic")
}

/// Row-reduces in place and returns the pivot columns.
fn rref(rows: &mut Vec<Vec<u64>>, f: Fp) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(i) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, i);
        let inv = f.inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let k = row[c];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = f.sub(*x, f.mul(k, *y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Basis of `{y : A y = 0}` for a square matrix.
fn nullspace(a: &[Vec<u64>], f: Fp) -> Vec<Vec<u64>> {
    let n = a.len();
    let mut rows = a.to_vec();
    let pivots = rref(&mut rows, f);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut y = vec![0; n];
            y[fc] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                y[pc] = f.sub(0, rows[r][fc]);
            }
            y
        })
        .collect()
}

/// Characteristic polynomial coefficients, constant term first (Faddeev-LeVerrier).
fn char_poly(a: &[Vec<u64>], f: Fp) -> Vec<u64> {
    let n = a.len();
    let mut c = vec![0u64; n + 1];
    c[n] = 1;
    let mut m = vec![vec![0u64; n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = vec![vec![0u64; n]; n];
        for i in 0..n {
            for t in 0..n {
                if a[i][t] == 0 {
                    continue;
                }
                for j in 0..n {
                    next[i][j] = f.add(next[i][j], f.mul(a[i][t], m[t][j]));
                }
            }
            next[i][i] = f.add(next[i][i], c[n - k + 1]);
        }
        m = next;
        let mut tr = 0;
        for i in 0..n {
            for t in 0..n {
                tr = f.add(tr, f.mul(a[i][t], m[t][i]));
            }
        }
        c[n - k] = f.sub(0, f.mul(tr, f.inv(k as u64)));
    }
    c
}

fn roots(poly: &[u64], f: Fp) -> Vec<u64> {
    (0..f.0).filter(|&x| poly.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c)) == 0).collect()
}

/// The irreducible characters of a finite group, one row per character and one column per class.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    class_of: Vec<usize>,
    class_sizes: Vec<usize>,
    chars: Vec<Vec<CycNum>>,
}

impl CharacterTable {
    pub fn len(&self) -> usize {
        self.chars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chars.is_empty()
    }

    /// Class-indexed values of character `i`.
    pub fn row(&self, i: usize) -> &[CycNum] {
        &self.chars[i]
    }

    pub fn value(&self, i: usize, g: usize) -> &CycNum {
        &self.chars[i][self.class_of[g]]
    }

    pub fn degree(&self, i: usize) -> i64 {
        let d = self.chars[i][0].to_integer().expect("degrees are integers");
        i64::try_from(d).expect("degree fits")
    }

    pub fn class_sizes(&self) -> &[usize] {
        &self.class_sizes
    }
}

/// Computes the character table; rows sorted by degree then values.
pub fn character_table(group: &GroupTable) -> CharacterTable {
    let order = group.order();
    let classes = group.conjugacy_classes().to_vec();
    let k = classes.len();
    let class_of: Vec<usize> = (0..order).map(|g| group.class_of(g)).collect();
    let reps: Vec<usize> = classes.iter().map(|c| c[0]).collect();
    let sizes: Vec<usize> = classes.iter().map(|c| c.len()).collect();

    let e = group.exponent() as u64;
    let p = choose_prime(e, order as u64);
    let f = Fp(p);
    let z = f.pow(primitive_root(f), (p - 1) / e);

    // a[j][l][t] = #{x in C_j : x^-1 g_t in C_l}
    let mut a = vec![vec![vec![0u64; k]; k]; k];
    for (j, cj) in classes.iter().enumerate() {
        for (t, &gt) in reps.iter().enumerate() {
            for &x in cj {
                let l = class_of[group.mul(group.inv(x), gt)];
                a[j][l][t] += 1;
            }
        }
    }

    let mut spaces: Vec<Vec<Vec<u64>>> =
        vec![(0..k).map(|i| (0..k).map(|t| u64::from(i == t)).collect()).collect()];
    for mj in a.iter().skip(1) {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mut next = Vec::new();
        for mut basis in spaces {
            if basis.len() == 1 {
                next.push(basis);
                continue;
            }
            let piv = rref(&mut basis, f);
            let d = basis.len();
            let mut restricted = vec![vec![0u64; d]; d];
            for (c, b) in basis.iter().enumerate() {
                for (r, &pr) in piv.iter().enumerate() {
                    let v = (0..k).fold(0, |acc, t| f.add(acc, f.mul(mj[pr][t] % p, b[t])));
                    restricted[r][c] = v;
                }
            }
            let mut found = 0;
            for lam in roots(&char_poly(&restricted, f), f) {
                let shifted: Vec<Vec<u64>> = restricted
                    .iter()
                    .enumerate()
                    .map(|(i, row)| row.iter().enumerate().map(|(c, &x)| if i == c { f.sub(x, lam) } else { x }).collect())
                    .collect();
                let mut vecs: Vec<Vec<u64>> = nullspace(&shifted, f)
                    .into_iter()
                    .map(|y| (0..k).fold(vec![0; k], |mut acc, t| {
                        for (c, b) in basis.iter().enumerate() {
                            acc[t] = f.add(acc[t], f.mul(y[c], b[t]));
                        }
                        acc
                    }))
                    .collect();
                rref(&mut vecs, f);
                found += vecs.len();
                next.push(vecs);
            }
            assert_eq!(found, d, "class algebra failed to split mod {p}");
        }
        spaces = next;
    }
    assert_eq!(spaces.len(), k, "number of characters differs from number of classes");

    let inv_class: Vec<usize> = reps.iter().map(|&g| class_of[group.inv(g)]).collect();
    let mut chars = Vec::with_capacity(k);
    for space in &spaces {
        let w = &space[0];
        debug_assert_eq!(w[0], 1);
        let mut s = 0;
        for j in 0..k {
            s = f.add(s, f.mul(f.mul(w[j], w[inv_class[j]]), f.inv(sizes[j] as u64)));
        }
        let d2 = f.mul(order as u64 % p, f.inv(s));
        let deg = (1..=order as u64).take_while(|d| d * d <= order as u64).find(|d| d * d % p == d2).expect("degree is a square root");
        let modp: Vec<u64> = (0..k).map(|j| f.mul(f.mul(deg, w[j]), f.inv(sizes[j] as u64))).collect();
        let values: Vec<CycNum> = (0..k)
            .map(|j| {
                let g = reps[j];
                let o = group.element_order(g);
                let zo = f.pow(z, e / o as u64);
                let oinv = f.inv(o as u64);
                let coeffs: Vec<BigRational> = (0..o)
                    .map(|t| {
                        let mut acc = 0;
                        for s in 0..o {
                            let chi = modp[class_of[group.pow(g, s)]];
                            let tw = f.pow(zo, ((o - (s * t) % o) % o) as u64);
                            acc = f.add(acc, f.mul(chi, tw));
                        }
                        let mult = f.mul(acc, oinv);
                        assert!(mult <= deg, "multiplicity {mult} exceeds degree {deg}");
                        BigRational::from_integer(BigInt::from(mult))
                    })
                    .collect();
                CycNum::from_powers(o, &coeffs)
            })
            .collect();
        debug_assert_eq!(values[0], CycNum::from_int(deg as i64));
        chars.push(values);
    }
    chars.sort();
    CharacterTable { class_of, class_sizes: sizes, chars }
}
