//! Thurston norms read off a dual unit ball.

use crate::algebra::{Covector, LaurentPoly};
use crate::error::{check_dim, Error, Result};
use crate::linalg::dot_i64;
use crate::polytope::Polytope;

/// A centrally symmetric polytope with integral vertices, standing in for
/// the dual Thurston norm ball.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualBall {
    ball: Polytope,
    vertices: Vec<Vec<i64>>,
}

impl DualBall {
    pub fn validate(ball: Polytope) -> Result<DualBall> {
        let vertices = ball.integer_vertices()?;
        if let Some(v) = vertices
            .iter()
            .find(|v| vertices.binary_search(&v.iter().map(|x| -x).collect()).is_err())
        {
            return Err(Error::Asymmetric(v.iter().map(ToString::to_string).collect()));
        }
        Ok(DualBall { ball, vertices })
    }

    pub fn from_vertices(points: &[Vec<i64>]) -> Result<DualBall> {
        DualBall::validate(Polytope::from_integer_points(points)?)
    }

    /// The ball `{0}` of a manifold with vanishing norm.
    pub fn origin(b1: usize) -> DualBall {
        DualBall::from_vertices(&[vec![0; b1]]).expect("the origin is a valid ball")
    }

    pub fn polytope(&self) -> &Polytope {
        &self.ball
    }

    /// Canonical (sorted) integer vertices.
    pub fn vertices(&self) -> &[Vec<i64>] {
        &self.vertices
    }

    pub fn b1(&self) -> usize {
        self.ball.dim()
    }

    /// `‖σ‖ = max_v v·σ`.
    pub fn norm(&self, sigma: &Covector) -> Result<i64> {
        check_dim(self.b1(), sigma.len())?;
        let mut best = i64::MIN;
        for v in &self.vertices {
            best = best.max(dot_i64(v, sigma.entries())?);
        }
        Ok(best)
    }

    pub fn maximizing_vertices(&self, sigma: &Covector) -> Result<Vec<Vec<i64>>> {
        let n = self.norm(sigma)?;
        let mut out = Vec::new();
        for v in &self.vertices {
            if dot_i64(v, sigma.entries())? == n {
                out.push(v.clone());
            }
        }
        Ok(out)
    }

    /// The face of the ball on which `σ` attains its norm.
    pub fn dual_face(&self, sigma: &Covector) -> Result<Polytope> {
        if sigma.is_zero() {
            return Err(Error::ZeroVector("dual face direction"));
        }
        if self.norm(sigma)? <= 0 {
            return Err(Error::ZeroNorm(sigma.entries().to_vec()));
        }
        Polytope::from_integer_points(&self.maximizing_vertices(sigma)?)
    }

    pub fn has_vertex(&self, v: &[i64]) -> bool {
        self.vertices.binary_search(&v.to_vec()).is_ok()
    }

    /// Whether the ball is a point or a segment.
    pub fn is_degenerate(&self) -> bool {
        self.ball.affine_dim() <= 1
    }
}

pub fn thurston_norm(ball: &DualBall, sigma: &Covector) -> Result<i64> {
    ball.norm(sigma)
}

/// Difference body `conv { g − h : g, h ∈ supp Δ }` of the Newton polytope,
/// used as the dual ball when only an Alexander polynomial is known. Its
/// support function is `σ ↦ max σ(g − h)`.
pub fn alexander_dual_ball(delta: &LaurentPoly) -> Result<DualBall> {
    if delta.is_zero() {
        return Err(Error::ZeroPolynomial("dual ball"));
    }
    // differences of Newton-polytope vertices suffice for the hull
    let newton = delta.newton_polytope()?.integer_vertices()?;
    let mut diffs = Vec::with_capacity(newton.len() * newton.len());
    for g in &newton {
        for h in &newton {
            diffs.push(
                g.iter()
                    .zip(h)
                    .map(|(a, b)| a.checked_sub(*b).ok_or(Error::Overflow("difference body")))
                    .collect::<Result<Vec<i64>>>()?,
            );
        }
    }
    DualBall::from_vertices(&diffs)
}

/// Open-cone test for fibered classes: `σ` lies in the open cone over a
/// marked face of the norm ball exactly when the dual vertex of that face is
/// the unique maximizer of `σ` on the dual ball.
pub fn fibered_cone_test(ball: &DualBall, marks: Option<&[Vec<i64>]>, sigma: &Covector) -> Result<bool> {
    let marks = marks.filter(|m| !m.is_empty()).ok_or(Error::NoAnnotations)?;
    let maxima = ball.maximizing_vertices(sigma)?;
    Ok(maxima.len() == 1 && marks.contains(&maxima[0]))
}
