//! Multivariable Laurent polynomials with integer coefficients.
//!
//! Terms live in a `BTreeMap` keyed by exponent vector, so iteration is
//! lexicographic and equality is structural.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{check_dim, Error, Result};
use crate::linalg::{dot_i64, qvec};
use crate::polytope::Polytope;

/// An integer covector, acting on exponent vectors by dot product.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Covector(Vec<i64>);

impl Covector {
    pub fn new(entries: Vec<i64>) -> Self {
        Covector(entries)
    }

    pub fn zero(n: usize) -> Self {
        Covector(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        Covector(v)
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn apply(&self, h: &[i64]) -> Result<i64> {
        check_dim(self.0.len(), h.len())?;
        dot_i64(&self.0, h)
    }

    /// gcd of the entries (0 for the zero covector).
    pub fn content(&self) -> i64 {
        self.0
            .iter()
            .fold(0i64, |g, &x| num_integer::gcd(g, x))
    }

    /// Divides out the content; the zero covector is returned unchanged.
    pub fn primitive(&self) -> Covector {
        let g = self.content();
        if g <= 1 {
            return self.clone();
        }
        Covector(self.0.iter().map(|x| x / g).collect())
    }

    pub fn scaled(&self, k: i64) -> Result<Covector> {
        self.0
            .iter()
            .map(|x| x.checked_mul(k).ok_or(Error::Overflow("covector scaling")))
            .collect::<Result<Vec<_>>>()
            .map(Covector)
    }
}

impl From<Vec<i64>> for Covector {
    fn from(v: Vec<i64>) -> Self {
        Covector(v)
    }
}

/// Finitely supported map from `Z^nvars` to nonzero integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Vec<i64>, BigInt>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn monomial(exp: Vec<i64>, c: impl Into<BigInt>) -> Self {
        let nvars = exp.len();
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { nvars, terms }
    }

    /// The `i`-th variable as a polynomial in `nvars` variables.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, 1)
    }

    /// Collects `(exponent, coefficient)` pairs, summing repeated exponents
    /// and dropping zero coefficients.
    pub fn from_terms<I, C>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<i64>, C)>,
        C: Into<BigInt>,
    {
        let mut out: BTreeMap<Vec<i64>, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            check_dim(nvars, e.len())?;
            *out.entry(e).or_insert_with(BigInt::zero) += c.into();
        }
        out.retain(|_, c| !c.is_zero());
        Ok(LaurentPoly { nvars, terms: out })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, exp: &[i64]) -> BigInt {
        self.terms.get(exp).cloned().unwrap_or_default()
    }

    pub fn coefficient_sum(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn support_points(&self) -> BTreeSet<Vec<i64>> {
        self.terms.keys().cloned().collect()
    }

    pub fn newton_polytope(&self) -> Result<Polytope> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial("Newton polytope"));
        }
        let pts: Vec<_> = self.terms.keys().map(|e| qvec(e)).collect();
        Polytope::hull(&pts)
    }

    /// `k ↦ Σ_{φ(h)=k} a_h` over the levels met by the support, zero sums kept.
    pub fn level_sums(&self, phi: &Covector) -> Result<BTreeMap<i64, BigInt>> {
        check_dim(self.nvars, phi.len())?;
        let mut levels: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (e, c) in &self.terms {
            *levels.entry(phi.apply(e)?).or_insert_with(BigInt::zero) += c;
        }
        Ok(levels)
    }

    /// The one-variable polynomial `Σ a_h t^{φ(h)}`.
    pub fn specialize(&self, phi: &Covector) -> Result<LaurentPoly> {
        let levels = self.level_sums(phi)?;
        LaurentPoly::from_terms(1, levels.into_iter().map(|(k, c)| (vec![k], c)))
    }

    /// Multiplication by the monomial `t^shift`.
    pub fn shifted(&self, shift: &[i64]) -> Result<LaurentPoly> {
        check_dim(self.nvars, shift.len())?;
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| Ok((add_exp(e, shift)?, c.clone())))
            .collect::<Result<Vec<_>>>()?;
        LaurentPoly::from_terms(self.nvars, terms)
    }

    /// Applies the linear map `h ↦ M h` to every exponent (`M` given by rows).
    pub fn change_exponents(&self, m: &[Vec<i64>]) -> Result<LaurentPoly> {
        let out_vars = m.len();
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let img = m
                    .iter()
                    .map(|row| {
                        check_dim(self.nvars, row.len())?;
                        dot_i64(row, e)
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok((img, c.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        LaurentPoly::from_terms(out_vars, terms)
    }

    pub fn try_add(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        check_dim(self.nvars, other.nvars)?;
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            *terms.entry(e.clone()).or_insert_with(BigInt::zero) += c;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(LaurentPoly {
            nvars: self.nvars,
            terms,
        })
    }

    pub fn try_mul(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        check_dim(self.nvars, other.nvars)?;
        let mut terms: BTreeMap<Vec<i64>, BigInt> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                *terms.entry(add_exp(e1, e2)?).or_insert_with(BigInt::zero) += c1 * c2;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(LaurentPoly {
            nvars: self.nvars,
            terms,
        })
    }
}

fn add_exp(a: &[i64], b: &[i64]) -> Result<Vec<i64>> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.checked_add(*y).ok_or(Error::Overflow("exponent")))
        .collect()
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

// The operator impls panic on mismatched variable counts; use `try_*` for
// fallible arithmetic.
impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_add(rhs).expect("LaurentPoly addition")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_add(&-rhs).expect("LaurentPoly subtraction")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_mul(rhs).expect("LaurentPoly multiplication")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names = |i: usize| -> String {
            if self.nvars <= 3 {
                ["x", "y", "z"][i].to_string()
            } else {
                format!("x{}", i + 1)
            }
        };
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p != 0)
                .map(|(i, &p)| {
                    if p == 1 {
                        names(i)
                    } else {
                        format!("{}^{}", names(i), p)
                    }
                })
                .collect();
            let neg = c < &BigInt::zero();
            let abs = if neg { -c } else { c.clone() };
            if k > 0 {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            } else if neg {
                write!(f, "-")?;
            }
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{abs}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(nvars: usize, terms: &[(&[i64], i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(nvars, terms.iter().map(|(e, c)| (e.to_vec(), *c))).unwrap()
    }

    fn t(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(1, terms.iter().map(|&(e, c)| (vec![e], c))).unwrap()
    }

    /// Term-by-term substitution, written independently of `level_sums`.
    fn substitute(p: &LaurentPoly, phi: &[i64]) -> LaurentPoly {
        let mut out = LaurentPoly::zero(1);
        for (e, c) in p.terms() {
            let k: i64 = e.iter().zip(phi).map(|(a, b)| a * b).sum();
            out = &out + &LaurentPoly::monomial(vec![k], c.clone());
        }
        out
    }

    #[test]
    fn specialize_examples() {
        let x_plus_y = poly(2, &[(&[1, 0], 1), (&[0, 1], 1)]);
        assert_eq!(
            x_plus_y.specialize(&Covector::new(vec![1, 2])).unwrap(),
            t(&[(1, 1), (2, 1)])
        );
        let x_minus_y = poly(2, &[(&[1, 0], 1), (&[0, 1], -1)]);
        assert!(x_minus_y.specialize(&Covector::new(vec![1, 1])).unwrap().is_zero());
        let p = poly(2, &[(&[0, 0], 1), (&[1, 0], 1), (&[0, 1], 1)]);
        let expected = substitute(&p, &[2, 3]);
        assert_eq!(expected, t(&[(0, 1), (2, 1), (3, 1)]));
        assert_eq!(p.specialize(&Covector::new(vec![2, 3])).unwrap(), expected);
    }

    #[test]
    fn specialize_dimension_mismatch() {
        let p = poly(2, &[(&[1, 0], 1)]);
        assert!(matches!(
            p.specialize(&Covector::new(vec![1])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn level_sums_examples() {
        let x_minus_y = poly(2, &[(&[1, 0], 1), (&[0, 1], -1)]);
        let ls = x_minus_y.level_sums(&Covector::new(vec![1, 1])).unwrap();
        assert_eq!(ls, BTreeMap::from([(1, BigInt::zero())]));
        let one_plus_x = poly(1, &[(&[0], 1), (&[1], 1)]);
        let ls = one_plus_x.level_sums(&Covector::new(vec![1])).unwrap();
        assert_eq!(ls, BTreeMap::from([(0, BigInt::from(1)), (1, BigInt::from(1))]));
        let p = poly(2, &[(&[0, 0], 1), (&[1, 0], 1), (&[0, 1], 1)]);
        let ls = p.level_sums(&Covector::new(vec![1, 1])).unwrap();
        assert_eq!(ls, BTreeMap::from([(0, BigInt::from(1)), (1, BigInt::from(2))]));
        assert!(LaurentPoly::zero(2)
            .level_sums(&Covector::new(vec![1, 1]))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn support_points_examples() {
        assert!(LaurentPoly::zero(2).support_points().is_empty());
        let p = poly(2, &[(&[0, 0], 1), (&[2, 0], 1), (&[0, 1], 1)]);
        assert_eq!(
            p.support_points(),
            BTreeSet::from([vec![0, 0], vec![2, 0], vec![0, 1]])
        );
        let one_plus_x = poly(2, &[(&[0, 0], 1), (&[1, 0], 1)]);
        let one_plus_y = poly(2, &[(&[0, 0], 1), (&[0, 1], 1)]);
        assert_eq!(
            (&one_plus_x * &one_plus_y).support_points(),
            BTreeSet::from([vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]])
        );
    }

    #[test]
    fn newton_polytope_examples() {
        let p = poly(2, &[(&[0, 0], 1), (&[2, 0], 1), (&[0, 1], 1)]);
        assert_eq!(
            p.newton_polytope().unwrap().integer_vertices().unwrap(),
            vec![vec![0, 0], vec![0, 1], vec![2, 0]]
        );
        let p = poly(1, &[(&[0], 1), (&[1], 1), (&[2], 1)]);
        assert_eq!(
            p.newton_polytope().unwrap().integer_vertices().unwrap(),
            vec![vec![0], vec![2]]
        );
        let p = poly(2, &[(&[0, 0], 1), (&[1, 0], 1), (&[0, 1], 1), (&[1, 1], 1)]);
        assert_eq!(
            p.newton_polytope().unwrap().integer_vertices().unwrap(),
            vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]
        );
        assert!(matches!(
            LaurentPoly::zero(2).newton_polytope(),
            Err(Error::ZeroPolynomial(_))
        ));
    }

    #[test]
    fn ring_examples() {
        let x = LaurentPoly::var(1, 0);
        assert!((&x + &-&x).is_zero());
        let one = LaurentPoly::constant(1, 1);
        let one_plus_x = &one + &x;
        assert_eq!(&one_plus_x * &one, one_plus_x);
        let one_minus_x = &one - &x;
        assert_eq!(&one_minus_x * &one_plus_x, t(&[(0, 1), (2, -1)]));
        assert!(LaurentPoly::zero(1).try_add(&LaurentPoly::zero(2)).is_err());
        assert!(LaurentPoly::zero(1).try_mul(&LaurentPoly::zero(2)).is_err());
    }

    #[test]
    fn from_terms_collects() {
        let p = poly(1, &[(&[1], 2), (&[1], -2), (&[0], 3)]);
        assert_eq!(p, LaurentPoly::constant(1, 3));
        assert!(LaurentPoly::from_terms(2, [(vec![1], 1)]).is_err());
    }

    #[test]
    fn display() {
        let p = poly(2, &[(&[0, 0], 1), (&[1, 0], -1), (&[1, 1], 3)]);
        assert_eq!(p.to_string(), "1 - x + 3*x*y");
    }

    #[test]
    fn covector_content() {
        let c = Covector::new(vec![4, -6]);
        assert_eq!(c.content(), 2);
        assert_eq!(c.primitive(), Covector::new(vec![2, -3]));
        assert_eq!(Covector::zero(2).primitive(), Covector::zero(2));
    }
}
