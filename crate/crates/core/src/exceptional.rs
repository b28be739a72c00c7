//! Exceptional Euler classes.
//!
//! For every vertex `v` and closed edge `E` of the dual ball the set
//! `(E − v)/2` is a segment (a *carrier*); their union minus the origin is
//! the real exceptional set. `Ξ` collects its integral points and `Θ` the
//! integral classes whose open ray meets it.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{check_dim, Result};
use crate::linalg::{dot, q, qvec, Q};
use crate::norms::DualBall;
use crate::polytope::{lattice_box, on_integer_segment, Segment};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Carrier {
    pub vertex: Vec<i64>,
    pub edge: (Vec<i64>, Vec<i64>),
    /// `{ (x − v)/2 : x ∈ E }`
    pub segment: Segment,
}

impl Carrier {
    fn new(vertex: &[i64], a: &[i64], b: &[i64]) -> Carrier {
        let half = Q::new(BigInt::one(), BigInt::from(2));
        let shift = |x: &[i64]| -> Vec<Q> {
            x.iter()
                .zip(vertex)
                .map(|(xi, vi)| q(xi - vi) * &half)
                .collect()
        };
        Carrier {
            vertex: vertex.to_vec(),
            edge: (a.to_vec(), b.to_vec()),
            segment: Segment::new(shift(a), shift(b)),
        }
    }

    /// Integral membership `v + 2w ∈ E`, without rationals.
    pub fn contains_integral(&self, w: &[i64]) -> bool {
        let y: Vec<i64> = self
            .vertex
            .iter()
            .zip(w)
            .map(|(v, x)| v + 2 * x)
            .collect();
        on_integer_segment(&y, &self.edge.0, &self.edge.1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExceptionalSet {
    pub carriers: Vec<Carrier>,
    /// The ball is a point or a segment.
    pub degenerate: bool,
}

impl ExceptionalSet {
    /// Coordinatewise bounding box of all carriers, `None` when there are none.
    pub fn bounding_box(&self) -> Option<(Vec<Q>, Vec<Q>)> {
        let first = self.carriers.first()?;
        let mut lo = first.segment.a.clone();
        let mut hi = first.segment.a.clone();
        for c in &self.carriers {
            for p in [&c.segment.a, &c.segment.b] {
                for i in 0..p.len() {
                    if p[i] < lo[i] {
                        lo[i] = p[i].clone();
                    }
                    if p[i] > hi[i] {
                        hi[i] = p[i].clone();
                    }
                }
            }
        }
        Some((lo, hi))
    }
}

/// One carrier per (vertex, edge) pair, in vertex-major canonical order.
pub fn exceptional_segments(ball: &DualBall) -> ExceptionalSet {
    let poly = ball.polytope();
    let verts = ball.vertices();
    let edges = poly.edge_indices();
    let mut carriers = Vec::with_capacity(verts.len() * edges.len());
    for v in verts {
        for &(i, j) in edges {
            carriers.push(Carrier::new(v, &verts[i], &verts[j]));
        }
    }
    ExceptionalSet {
        carriers,
        degenerate: ball.is_degenerate(),
    }
}

/// `Ξ` by a lattice scan of the carriers' bounding box.
pub fn xi_enumerate(ball: &DualBall) -> BTreeSet<Vec<i64>> {
    let set = exceptional_segments(ball);
    let Some((lo, hi)) = set.bounding_box() else {
        return BTreeSet::new();
    };
    lattice_box(&lo, &hi)
        .into_iter()
        .filter(|w| w.iter().any(|&x| x != 0))
        .filter(|w| set.carriers.iter().any(|c| c.contains_integral(w)))
        .collect()
}

/// `e ∈ Ξ`: some vertex `v` has `v + 2e` on a closed edge.
pub fn xi_test(ball: &DualBall, e: &[i64]) -> Result<bool> {
    check_dim(ball.b1(), e.len())?;
    if e.iter().all(|&x| x == 0) {
        return Ok(false);
    }
    let verts = ball.vertices();
    let edges = ball.polytope().edge_indices();
    for v in verts {
        let Some(y) = v
            .iter()
            .zip(e)
            .map(|(a, b)| b.checked_mul(2).and_then(|b2| a.checked_add(b2)))
            .collect::<Option<Vec<i64>>>()
        else {
            // far outside any bounded carrier
            continue;
        };
        if edges
            .iter()
            .any(|&(i, j)| on_integer_segment(&y, &verts[i], &verts[j]))
        {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Whether some `λ > 0` puts `λ·e` on the segment.
fn ray_hits_segment(seg: &Segment, e: &[Q]) -> bool {
    let d = seg.direction();
    let p = &seg.a;
    let ee = dot(e, e);
    // λ(t) = (p + t d)·e / |e|², valid when p + t d is parallel to e
    let lambda = |t: &Q| -> Q { (dot(p, e) + t * dot(&d, e)) / &ee };

    // collinearity: (p + t d)_i e_j − (p + t d)_j e_i = 0 for all i < j
    let mut fixed_t: Option<Q> = None;
    let n = e.len();
    for i in 0..n {
        for j in i + 1..n {
            let alpha = &p[i] * &e[j] - &p[j] * &e[i];
            let beta = &d[i] * &e[j] - &d[j] * &e[i];
            if beta.is_zero() {
                if !alpha.is_zero() {
                    return false;
                }
                continue;
            }
            let t = -alpha / beta;
            match &fixed_t {
                Some(s) if *s != t => return false,
                _ => fixed_t = Some(t),
            }
        }
    }
    match fixed_t {
        Some(t) => t >= Q::zero() && t <= Q::one() && lambda(&t).is_positive(),
        // whole segment on the line through e: best endpoint decides
        None => lambda(&Q::zero()).is_positive() || lambda(&Q::one()).is_positive(),
    }
}

/// `e ∈ Θ`: the open ray `R₊·e` meets some carrier.
pub fn theta_test(ball: &DualBall, e: &[i64]) -> Result<bool> {
    check_dim(ball.b1(), e.len())?;
    if e.iter().all(|&x| x == 0) {
        return Ok(false);
    }
    let eq = qvec(e);
    Ok(exceptional_segments(ball)
        .carriers
        .iter()
        .any(|c| ray_hits_segment(&c.segment, &eq)))
}

/// Endpoints as exact strings, e.g. `"-1/2"`.
pub fn format_point(p: &[Q]) -> Vec<String> {
    p.iter().map(ToString::to_string).collect()
}
