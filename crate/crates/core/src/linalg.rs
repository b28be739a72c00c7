//! Small exact linear-algebra helpers over the rationals and the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qvec(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| q(x)).collect()
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

pub fn dot_i64(a: &[i64], b: &[i64]) -> Result<i64> {
    let s: i128 = a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum();
    i64::try_from(s).map_err(|_| Error::Overflow("pairing"))
}

pub fn sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale(a: &[Q], s: &Q) -> Vec<Q> {
    a.iter().map(|x| x * s).collect()
}

/// Reduces `rows` to reduced row echelon form in place, dropping zero rows,
/// and returns the pivot column of each remaining row.
pub fn rref(rows: &mut Vec<Vec<Q>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..ncols {
                    let d = &f * &rows[r][j];
                    rows[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[Vec<Q>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Basis of `{ x : rows · x = 0 }` in `ncols` unknowns.
pub fn nullspace(rows: &[Vec<Q>], ncols: usize) -> Vec<Vec<Q>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); ncols];
            v[f] = Q::one();
            for (row, &pc) in m.iter().zip(&pivots) {
                v[pc] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Scales a rational vector to a primitive integer vector (same direction).
pub fn primitive(v: &[Q]) -> Vec<BigInt> {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Q::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

pub fn primitive_int(v: &[BigInt]) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Flips the sign so that the first nonzero entry is positive.
pub fn sign_normalize(v: &mut [i64]) {
    if v.iter().find(|x| **x != 0).is_some_and(|x| *x < 0) {
        for x in v.iter_mut() {
            *x = -*x;
        }
    }
}

pub fn to_i64_vec(v: &[BigInt]) -> Result<Vec<i64>> {
    v.iter()
        .map(|x| x.to_i64().ok_or(Error::Overflow("integer conversion")))
        .collect()
}

/// Primitive, sign-normalized integer basis of the rational nullspace of an
/// integer matrix. Not a lattice basis in general; see [`integer_kernel`].
pub fn integer_nullspace(rows: &[Vec<i64>], ncols: usize) -> Result<Vec<Vec<i64>>> {
    let qrows: Vec<Vec<Q>> = rows.iter().map(|r| qvec(r)).collect();
    nullspace(&qrows, ncols)
        .iter()
        .map(|v| {
            let mut w = to_i64_vec(&primitive(v))?;
            sign_normalize(&mut w);
            Ok(w)
        })
        .collect()
}

pub fn rank_i64(rows: &[Vec<i64>]) -> usize {
    let qrows: Vec<Vec<Q>> = rows.iter().map(|r| qvec(r)).collect();
    rank(&qrows)
}

/// Lattice basis of `{ x ∈ Zⁿ : e · x = 0 }`, obtained by unimodular column
/// operations reducing `e` to `(g, 0, …, 0)`.
pub fn integer_kernel(e: &[i64]) -> Result<Vec<Vec<i64>>> {
    let n = e.len();
    let mut row: Vec<i128> = e.iter().map(|&x| x as i128).collect();
    // columns of `u` track the accumulated column operations
    let mut u: Vec<Vec<i128>> = (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect();
    let col_op = |u: &mut Vec<Vec<i128>>, dst: usize, src: usize, k: i128| -> Result<()> {
        for r in u.iter_mut() {
            r[dst] = r[dst]
                .checked_sub(k.checked_mul(r[src]).ok_or(Error::Overflow("kernel"))?)
                .ok_or(Error::Overflow("kernel"))?;
        }
        Ok(())
    };
    let swap = |u: &mut Vec<Vec<i128>>, a: usize, b: usize| {
        for r in u.iter_mut() {
            r.swap(a, b);
        }
    };
    if n == 0 {
        return Ok(Vec::new());
    }
    for j in 1..n {
        while row[j] != 0 {
            let k = row[0].div_euclid(row[j]);
            row[0] -= k * row[j];
            col_op(&mut u, 0, j, k)?;
            row.swap(0, j);
            swap(&mut u, 0, j);
        }
    }
    let start = if row[0] == 0 { 0 } else { 1 };
    (start..n)
        .map(|c| {
            let mut v: Vec<i64> = u
                .iter()
                .map(|r| i64::try_from(r[c]).map_err(|_| Error::Overflow("kernel")))
                .collect::<Result<_>>()?;
            sign_normalize(&mut v);
            Ok(v)
        })
        .collect()
}

pub fn is_integral(x: &Q) -> bool {
    x.is_integer()
}

pub fn abs_q(x: &Q) -> Q {
    x.abs()
}
