//! Double description method for the cone `{ x : A x ≥ 0 }` over the
//! integers. Used to turn a full-dimensional point set into its facet list.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::linalg::{nullspace, primitive, primitive_int, rref, Q};

/// Fixed-width bitset over constraint indices.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn contains_all(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & b == *b)
    }
}

struct Ray {
    x: Vec<BigInt>,
    zeros: Bits,
}

fn eval(row: &[BigInt], x: &[BigInt]) -> BigInt {
    row.iter().zip(x).map(|(a, b)| a * b).sum()
}

/// Extreme rays of `{ x : row · x ≥ 0 for all rows }`.
///
/// The rows must have full column rank, so the cone is pointed.
pub(crate) fn extreme_rays(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let m = rows.len();
    let n = rows[0].len();

    // greedy choice of n independent rows for the initial simplicial cone
    let mut basis: Vec<usize> = Vec::new();
    let mut echelon: Vec<Vec<Q>> = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        let mut trial = echelon.clone();
        trial.push(r.iter().map(|v| Q::from_integer(v.clone())).collect());
        if rref(&mut trial).len() > echelon.len() {
            echelon = trial;
            basis.push(i);
            if basis.len() == n {
                break;
            }
        }
    }
    assert_eq!(basis.len(), n, "constraint matrix must have full column rank");

    // the ray opposite basis row j is the kernel of the other n-1 basis rows
    let mut rays: Vec<Ray> = Vec::with_capacity(n);
    for j in 0..n {
        let others: Vec<Vec<Q>> = basis
            .iter()
            .filter(|&&b| b != basis[j])
            .map(|&b| rows[b].iter().map(|v| Q::from_integer(v.clone())).collect())
            .collect();
        let ker = nullspace(&others, n);
        let mut x = primitive(&ker[0]);
        if eval(&rows[basis[j]], &x).is_negative() {
            x.iter_mut().for_each(|v| *v = -&*v);
        }
        let mut zeros = Bits::new(m);
        for &b in &basis {
            if b != basis[j] {
                zeros.set(b);
            }
        }
        rays.push(Ray { x, zeros });
    }

    for i in (0..m).filter(|i| !basis.contains(i)) {
        let vals: Vec<BigInt> = rays.iter().map(|r| eval(&rows[i], &r.x)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_negative()).collect();
        if neg.is_empty() {
            for (r, v) in rays.iter_mut().zip(&vals) {
                if v.is_zero() {
                    r.zeros.set(i);
                }
            }
            continue;
        }

        let mut fresh: Vec<Ray> = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].zeros.and(&rays[q].zeros);
                if common.count() + 2 < n {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(k, r)| k == p || k == q || !r.zeros.contains_all(&common));
                if !adjacent {
                    continue;
                }
                let x: Vec<BigInt> = rays[q]
                    .x
                    .iter()
                    .zip(&rays[p].x)
                    .map(|(xq, xp)| &vals[p] * xq - &vals[q] * xp)
                    .collect();
                let mut zeros = common;
                zeros.set(i);
                fresh.push(Ray {
                    x: primitive_int(&x),
                    zeros,
                });
            }
        }

        let mut kept: Vec<Ray> = Vec::with_capacity(rays.len() + fresh.len());
        for (mut r, v) in rays.into_iter().zip(vals) {
            if v.is_negative() {
                continue;
            }
            if v.is_zero() {
                r.zeros.set(i);
            }
            kept.push(r);
        }
        kept.extend(fresh);
        rays = kept;
    }

    rays.into_iter().map(|r| r.x).collect()
}
