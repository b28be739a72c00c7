//! Circle bundles over 3-manifolds: Gysin bookkeeping in free quotients.
//!
//! A class in `H₂(M)` is encoded by its image `σ = p_*α`, a covector with
//! `σ(e) = 0`, together with a curve class `c ∈ H₁(N)` that is only
//! well-defined modulo multiples of the Euler class.

use crate::algebra::{Covector, LaurentPoly};
use crate::error::{check_dim, Error, Result};
use crate::linalg::{dot_i64, integer_kernel};
use crate::norms::{alexander_dual_ball, DualBall};
use crate::swtheory::SwSupport;

/// Where the dual ball of a [`Manifold3`] came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BallSource {
    Input,
    AlexanderConvention,
}

impl BallSource {
    pub fn as_str(self) -> &'static str {
        match self {
            BallSource::Input => "input",
            BallSource::AlexanderConvention => "alexander-convention",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Manifold3 {
    name: String,
    b1: usize,
    delta: Option<LaurentPoly>,
    ball: DualBall,
    ball_source: BallSource,
    sw: Option<SwSupport>,
    fibered_marks: Option<Vec<Vec<i64>>>,
}

impl Manifold3 {
    /// Assembles a manifold model. Without an explicit ball the difference
    /// body of the Alexander polynomial's Newton polytope is used. Marks are
    /// vertices of the ball.
    pub fn new(
        name: impl Into<String>,
        b1: usize,
        delta: Option<LaurentPoly>,
        ball: Option<DualBall>,
        sw: Option<SwSupport>,
        fibered_marks: Option<Vec<Vec<i64>>>,
    ) -> Result<Manifold3> {
        if b1 == 0 {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        }
        if let Some(d) = &delta {
            check_dim(b1, d.nvars())?;
        }
        let (ball, ball_source) = match (ball, &delta) {
            (Some(b), _) => (b, BallSource::Input),
            (None, Some(d)) => (alexander_dual_ball(d)?, BallSource::AlexanderConvention),
            (None, None) => return Err(Error::EmptyInput("neither dual ball nor Alexander polynomial")),
        };
        check_dim(b1, ball.b1())?;
        if let Some(s) = &sw {
            check_dim(b1, s.b1())?;
        }
        if let Some(marks) = &fibered_marks {
            for (i, m) in marks.iter().enumerate() {
                check_dim(b1, m.len())?;
                if !ball.has_vertex(m) {
                    return Err(Error::BadMark(i));
                }
            }
        }
        Ok(Manifold3 {
            name: name.into(),
            b1,
            delta,
            ball,
            ball_source,
            sw,
            fibered_marks,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn b1(&self) -> usize {
        self.b1
    }

    pub fn alexander(&self) -> Option<&LaurentPoly> {
        self.delta.as_ref()
    }

    pub fn ball(&self) -> &DualBall {
        &self.ball
    }

    pub fn ball_source(&self) -> BallSource {
        self.ball_source
    }

    pub fn sw(&self) -> Option<&SwSupport> {
        self.sw.as_ref()
    }

    pub fn fibered_marks(&self) -> Option<&[Vec<i64>]> {
        self.fibered_marks.as_deref()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bundle4 {
    base: Manifold3,
    euler: Vec<i64>,
    torsion: bool,
}

impl Bundle4 {
    /// A torsion Euler class is modeled by the zero vector.
    pub fn new(base: Manifold3, euler: Vec<i64>, torsion: bool) -> Result<Bundle4> {
        check_dim(base.b1(), euler.len())?;
        if torsion && euler.iter().any(|&x| x != 0) {
            return Err(Error::TorsionNotZero(euler));
        }
        Ok(Bundle4 { base, euler, torsion })
    }

    pub fn base(&self) -> &Manifold3 {
        &self.base
    }

    pub fn euler(&self) -> &[i64] {
        &self.euler
    }

    pub fn is_torsion(&self) -> bool {
        self.torsion || self.euler.iter().all(|&x| x == 0)
    }
}

/// `(σ, c)` encoding of a class in `H₂(M)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassH2M {
    pub sigma: Covector,
    pub curve: Vec<i64>,
}

impl ClassH2M {
    pub fn new(sigma: impl Into<Covector>, curve: Vec<i64>) -> Self {
        ClassH2M {
            sigma: sigma.into(),
            curve,
        }
    }

    /// Equality of classes: same `σ` and curves differing by a multiple of `e`.
    pub fn equivalent(&self, other: &ClassH2M, euler: &[i64]) -> bool {
        if self.sigma != other.sigma || self.curve.len() != other.curve.len() {
            return false;
        }
        let diff: Vec<i64> = self.curve.iter().zip(&other.curve).map(|(a, b)| a - b).collect();
        let Some(i) = euler.iter().position(|&x| x != 0) else {
            return diff.iter().all(|&x| x == 0);
        };
        if diff[i] % euler[i] != 0 {
            return false;
        }
        let k = diff[i] / euler[i];
        diff.iter().zip(euler).all(|(d, e)| *d == k * e)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Betti {
    pub b2: usize,
    pub b2_plus: usize,
}

/// `b₂(M) = 2b₁(N) − 2` and `b₂⁺(M) = b₁(N) − 1` for a nontorsion Euler class.
pub fn betti_numbers(bundle: &Bundle4) -> Result<Betti> {
    if bundle.is_torsion() {
        return Err(Error::TorsionEuler);
    }
    let b1 = bundle.base().b1();
    Ok(Betti {
        b2: 2 * b1 - 2,
        b2_plus: b1 - 1,
    })
}

/// Lattice basis of `{ σ : σ(e) = 0 }`.
pub fn kernel_e(euler: &[i64]) -> Result<Vec<Vec<i64>>> {
    integer_kernel(euler)
}

pub fn gysin_pairing(euler: &[i64], a: &ClassH2M) -> Result<i64> {
    a.sigma.apply(euler)
}

fn check_gysin(euler: &[i64], a: &ClassH2M) -> Result<()> {
    check_dim(euler.len(), a.curve.len())?;
    let pairing = gysin_pairing(euler, a)?;
    if pairing != 0 {
        return Err(Error::GysinViolation { pairing });
    }
    Ok(())
}

/// `α·α = 2σ(c)`.
pub fn self_intersection(euler: &[i64], a: &ClassH2M) -> Result<i64> {
    check_gysin(euler, a)?;
    a.sigma
        .apply(&a.curve)?
        .checked_mul(2)
        .ok_or(Error::Overflow("self-intersection"))
}

/// Finite cover data `Ñ → N` with fiber-degree factor `q` on the bundle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverDatum {
    pub deg_n: i64,
    pub q: i64,
    /// `b₁(Ñ) × b₁(N)` integer matrix.
    pub pullback: Vec<Vec<i64>>,
    /// `b₁(N) × b₁(Ñ)` integer matrix.
    pub pushforward: Vec<Vec<i64>>,
    pub cover_base: Manifold3,
}

fn mat_vec(m: &[Vec<i64>], v: &[i64]) -> Result<Vec<i64>> {
    m.iter()
        .map(|row| {
            check_dim(row.len(), v.len())?;
            dot_i64(row, v)
        })
        .collect()
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            check_dim(row.len(), b.len())?;
            (0..cols)
                .map(|j| {
                    let col: Vec<i64> = b.iter().map(|r| r[j]).collect();
                    dot_i64(row, &col)
                })
                .collect()
        })
        .collect()
}

impl CoverDatum {
    fn check_shapes(&self, base_b1: usize) -> Result<()> {
        let cover_b1 = self.cover_base.b1();
        if self.deg_n < 1 || self.q < 1 {
            return Err(Error::InvalidCover(format!(
                "degrees must be positive (deg_n = {}, q = {})",
                self.deg_n, self.q
            )));
        }
        let shape_ok = |m: &[Vec<i64>], rows: usize, cols: usize| {
            m.len() == rows && m.iter().all(|r| r.len() == cols)
        };
        if !shape_ok(&self.pullback, cover_b1, base_b1) {
            return Err(Error::InvalidCover(format!(
                "pullback must be {cover_b1} x {base_b1}"
            )));
        }
        if !shape_ok(&self.pushforward, base_b1, cover_b1) {
            return Err(Error::InvalidCover(format!(
                "pushforward must be {base_b1} x {cover_b1}"
            )));
        }
        Ok(())
    }

    /// Degree of the induced cover of total spaces.
    pub fn total_degree(&self) -> Result<i64> {
        self.q
            .checked_mul(self.deg_n)
            .ok_or(Error::Overflow("cover degree"))
    }
}

/// `ẽ` with `q·ẽ = π*e`.
pub fn euler_of_cover(cd: &CoverDatum, euler: &[i64]) -> Result<Vec<i64>> {
    if cd.q < 1 {
        return Err(Error::InvalidCover(format!("q = {} must be positive", cd.q)));
    }
    let pulled = mat_vec(&cd.pullback, euler)?;
    if pulled.iter().any(|x| x % cd.q != 0) {
        return Err(Error::NotDivisible { pulled, q: cd.q });
    }
    Ok(pulled.iter().map(|x| x / cd.q).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverReport {
    pub checks: Vec<CoverCheck>,
    pub total_degree: i64,
}

impl CoverReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Default classes for the transfer check: `eᵢ` and `eᵢ ± eⱼ`.
pub fn sample_classes(b1: usize) -> Vec<Vec<i64>> {
    let unit = |i: usize| -> Vec<i64> { (0..b1).map(|k| i64::from(k == i)).collect() };
    let mut out: Vec<Vec<i64>> = (0..b1).map(unit).collect();
    for i in 0..b1 {
        for j in i + 1..b1 {
            for s in [1, -1] {
                let mut v = unit(i);
                v[j] = s;
                out.push(v);
            }
        }
    }
    out
}

/// Checks the transfer identity `π_* π* = deg·id` and norm multiplicativity
/// `‖π*σ‖ = deg·‖σ‖` on the given classes (or [`sample_classes`]).
pub fn validate_cover(cd: &CoverDatum, base: &Manifold3, classes: Option<&[Vec<i64>]>) -> Result<CoverReport> {
    let b1 = base.b1();
    cd.check_shapes(b1)?;
    let mut checks = Vec::new();

    let composite = mat_mul(&cd.pushforward, &cd.pullback)?;
    let bad: Vec<String> = (0..b1)
        .flat_map(|i| (0..b1).map(move |j| (i, j)))
        .filter(|&(i, j)| composite[i][j] != if i == j { cd.deg_n } else { 0 })
        .map(|(i, j)| format!("entry ({i},{j}) = {}", composite[i][j]))
        .collect();
    checks.push(CoverCheck {
        name: "transfer_identity".into(),
        passed: bad.is_empty(),
        detail: if bad.is_empty() {
            format!("pushforward * pullback = {} * id", cd.deg_n)
        } else {
            format!("pushforward * pullback != {} * id: {}", cd.deg_n, bad.join(", "))
        },
    });

    let owned;
    let classes = match classes {
        Some(c) => c,
        None => {
            owned = sample_classes(b1);
            &owned
        }
    };
    for sigma in classes {
        check_dim(b1, sigma.len())?;
        let base_norm = base.ball().norm(&Covector::new(sigma.clone()))?;
        let lifted = mat_vec(&cd.pullback, sigma)?;
        let cover_norm = cd.cover_base.ball().norm(&Covector::new(lifted.clone()))?;
        let expected = base_norm
            .checked_mul(cd.deg_n)
            .ok_or(Error::Overflow("transfer norm"))?;
        checks.push(CoverCheck {
            name: format!("norm_multiplicativity {sigma:?}"),
            passed: cover_norm == expected,
            detail: format!("|pullback {sigma:?}| = |{lifted:?}| = {cover_norm}, deg * |sigma| = {expected}"),
        });
    }

    Ok(CoverReport {
        checks,
        total_degree: cd.total_degree()?,
    })
}
