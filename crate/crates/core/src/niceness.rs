//! The "nice" condition on Alexander polynomials: every surjection of the
//! exponent lattice onto `Z` keeps the polynomial nonzero.
//!
//! A covector `φ` kills `Δ` exactly when every fiber of `φ` on the support
//! has zero coefficient sum. The fibers of `φ` are the classes of the support
//! modulo the span `L` of the differences lying inside fibers, so the fiber
//! partitions to examine are those of flats of the difference arrangement.
//! Coarsening a zero-sum partition keeps it zero-sum, hence it suffices to try
//! the normals of hyperplanes spanned by support differences.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::algebra::{Covector, LaurentPoly};
use crate::error::{Error, Result};
use crate::linalg::{integer_nullspace, nullspace, primitive, qvec, rank_i64, rref, sign_normalize, to_i64_vec, Q};

pub const DEFAULT_MAX_SUPPORT: usize = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NicenessStatus {
    Nice,
    NotNice,
    /// The face-sum criterion passed; niceness follows but was not decided exactly.
    SufficientOnlyPass,
    Undecided,
}

impl NicenessStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            NicenessStatus::Nice => "NICE",
            NicenessStatus::NotNice => "NOT_NICE",
            NicenessStatus::SufficientOnlyPass => "SUFFICIENT_ONLY_PASS",
            NicenessStatus::Undecided => "UNDECIDED",
        }
    }

    /// Both `NICE` and a passed sufficient criterion establish niceness.
    pub fn establishes_nice(self) -> bool {
        matches!(self, NicenessStatus::Nice | NicenessStatus::SufficientOnlyPass)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NicenessVerdict {
    pub status: NicenessStatus,
    /// A primitive covector killing `Δ`; present iff `NOT_NICE`.
    pub witness: Option<Covector>,
}

impl NicenessVerdict {
    fn nice() -> Self {
        NicenessVerdict {
            status: NicenessStatus::Nice,
            witness: None,
        }
    }

    fn not_nice(witness: Vec<i64>) -> Self {
        NicenessVerdict {
            status: NicenessStatus::NotNice,
            witness: Some(Covector::new(witness)),
        }
    }
}

/// Newton-polytope criterion: every face has a nonzero coefficient sum.
/// A `true` answer implies niceness.
pub fn face_sum_criterion(delta: &LaurentPoly) -> Result<bool> {
    let newton = delta.newton_polytope()?;
    let support: Vec<(Vec<Q>, &BigInt)> = delta.terms().map(|(e, c)| (qvec(e), c)).collect();
    for face in newton.faces() {
        let sum: BigInt = support
            .iter()
            .filter(|(p, _)| newton.face_contains(&face, p))
            .map(|(_, c)| *c)
            .sum();
        if sum.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exact decision when the support has at most `max_support` points, the
/// face-sum criterion otherwise.
pub fn is_nice(delta: &LaurentPoly, max_support: usize) -> Result<NicenessVerdict> {
    if delta.nvars() == 0 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: 0,
        });
    }
    if delta.num_terms() <= max_support {
        exact_niceness(delta)
    } else {
        fast_niceness(delta)
    }
}

/// Face-sum criterion only: `SUFFICIENT_ONLY_PASS` or `UNDECIDED`.
pub fn fast_niceness(delta: &LaurentPoly) -> Result<NicenessVerdict> {
    if delta.is_zero() {
        return exact_niceness(delta);
    }
    Ok(NicenessVerdict {
        status: if face_sum_criterion(delta)? {
            NicenessStatus::SufficientOnlyPass
        } else {
            NicenessStatus::Undecided
        },
        witness: None,
    })
}

/// Exact decision with no support cutoff. The witness is the
/// lexicographically least primitive, sign-normalized killing covector among
/// the candidates examined.
pub fn exact_niceness(delta: &LaurentPoly) -> Result<NicenessVerdict> {
    let n = delta.nvars();
    if n == 0 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: 0,
        });
    }
    if delta.is_zero() {
        // every covector kills the zero polynomial
        return Ok(NicenessVerdict::not_nice(Covector::unit(n, 0).entries().to_vec()));
    }
    // φ(Δ) at t = 1 is the coefficient sum
    if !delta.coefficient_sum().is_zero() {
        return Ok(NicenessVerdict::nice());
    }

    let diffs = support_differences(delta)?;
    if rank_i64(&diffs) < n {
        // covectors orthogonal to all differences are constant on the support
        let best = integer_nullspace(&diffs, n)?
            .into_iter()
            .min()
            .expect("rank deficiency gives a kernel vector");
        return Ok(NicenessVerdict::not_nice(best));
    }

    for phi in hyperplane_normals(&diffs, n)? {
        if delta.specialize(&Covector::new(phi.clone()))?.is_zero() {
            return Ok(NicenessVerdict::not_nice(phi));
        }
    }
    Ok(NicenessVerdict::nice())
}

/// Pairwise support differences, primitive and sign-normalized, deduplicated.
fn support_differences(delta: &LaurentPoly) -> Result<Vec<Vec<i64>>> {
    let pts: Vec<&Vec<i64>> = delta.terms().map(|(e, _)| e).collect();
    let mut out = BTreeSet::new();
    for (i, a) in pts.iter().enumerate() {
        for b in &pts[i + 1..] {
            let d: Vec<i64> = a
                .iter()
                .zip(b.iter())
                .map(|(x, y)| y.checked_sub(*x).ok_or(Error::Overflow("support difference")))
                .collect::<Result<_>>()?;
            let mut d = Covector::new(d).primitive().entries().to_vec();
            sign_normalize(&mut d);
            out.insert(d);
        }
    }
    Ok(out.into_iter().collect())
}

/// Normals (primitive, sign-normalized, sorted) of all hyperplanes spanned by
/// the given vectors, found by a search over the flats they generate.
fn hyperplane_normals(vectors: &[Vec<i64>], n: usize) -> Result<BTreeSet<Vec<i64>>> {
    let qvecs: Vec<Vec<Q>> = vectors.iter().map(|v| qvec(v)).collect();
    let mut normals = BTreeSet::new();
    let mut seen: BTreeSet<Vec<Vec<Q>>> = BTreeSet::new();
    let mut stack: Vec<Vec<Vec<Q>>> = vec![Vec::new()];
    while let Some(flat) = stack.pop() {
        let r = flat.len();
        if r + 1 == n {
            let ns = nullspace(&flat, n);
            let mut phi = to_i64_vec(&primitive(&ns[0]))?;
            sign_normalize(&mut phi);
            normals.insert(phi);
            continue;
        }
        for v in &qvecs {
            let mut grown = flat.clone();
            grown.push(v.clone());
            if rref(&mut grown).len() > r && seen.insert(grown.clone()) {
                stack.push(grown);
            }
        }
    }
    Ok(normals)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(nvars: usize, terms: &[(&[i64], i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(nvars, terms.iter().map(|(e, c)| (e.to_vec(), *c))).unwrap()
    }

    #[test]
    fn face_sums() {
        let p = poly(2, &[(&[0, 0], 1), (&[1, 0], 1), (&[0, 1], 1)]);
        assert!(face_sum_criterion(&p).unwrap());
        let q = poly(2, &[(&[0, 0], 1), (&[1, 0], -1), (&[0, 1], 1), (&[1, 1], -1)]);
        assert!(!face_sum_criterion(&q).unwrap());
        assert!(face_sum_criterion(&LaurentPoly::constant(2, 5)).unwrap());
        assert!(face_sum_criterion(&LaurentPoly::zero(2)).is_err());
    }

    #[test]
    fn x_minus_y() {
        let p = poly(2, &[(&[1, 0], 1), (&[0, 1], -1)]);
        let v = is_nice(&p, DEFAULT_MAX_SUPPORT).unwrap();
        assert_eq!(v.status, NicenessStatus::NotNice);
        assert_eq!(v.witness, Some(Covector::new(vec![1, 1])));
    }

    #[test]
    fn one_plus_x_plus_y() {
        let p = poly(2, &[(&[0, 0], 1), (&[1, 0], 1), (&[0, 1], 1)]);
        assert_eq!(is_nice(&p, DEFAULT_MAX_SUPPORT).unwrap(), NicenessVerdict::nice());
    }

    #[test]
    fn product_of_binomials() {
        let p = poly(2, &[(&[0, 0], 1), (&[1, 0], -1), (&[0, 1], 1), (&[1, 1], -1)]);
        let v = is_nice(&p, DEFAULT_MAX_SUPPORT).unwrap();
        assert_eq!(v.status, NicenessStatus::NotNice);
        assert_eq!(v.witness, Some(Covector::new(vec![0, 1])));
    }

    #[test]
    fn cancellation_needs_full_rank_search() {
        // (1 - x)(1 - y) is killed by (1,0) and (0,1)
        let p = poly(2, &[(&[0, 0], 1), (&[1, 0], -1), (&[0, 1], -1), (&[1, 1], 1)]);
        let v = exact_niceness(&p).unwrap();
        assert_eq!(v.witness, Some(Covector::new(vec![0, 1])));
        // zero coefficient sum, but no fiber partition cancels
        let q = poly(2, &[(&[0, 0], 2), (&[1, 0], -1), (&[0, 1], -1)]);
        assert_eq!(exact_niceness(&q).unwrap().status, NicenessStatus::Nice);
    }

    #[test]
    fn one_variable() {
        let p = poly(1, &[(&[0], 1), (&[1], -1)]);
        assert_eq!(exact_niceness(&p).unwrap().status, NicenessStatus::Nice);
        assert_eq!(
            exact_niceness(&LaurentPoly::zero(1)).unwrap().status,
            NicenessStatus::NotNice
        );
    }

    #[test]
    fn cutoff_falls_back_to_face_sums() {
        let p = poly(2, &[(&[0, 0], 1), (&[1, 0], 1), (&[0, 1], 1)]);
        assert_eq!(is_nice(&p, 2).unwrap().status, NicenessStatus::SufficientOnlyPass);
        let q = poly(2, &[(&[0, 0], 1), (&[1, 0], -1), (&[0, 1], 1), (&[1, 1], -1)]);
        assert_eq!(is_nice(&q, 2).unwrap().status, NicenessStatus::Undecided);
    }
}
