//! Exact rational convex polytopes.
//!
//! A [`Polytope`] is stored as its canonical (lexicographically sorted) vertex
//! list together with a facet description inside its affine hull. Points,
//! segments and lower-dimensional polytopes in a larger ambient space are all
//! handled by projecting onto a coordinate frame of the affine hull, where the
//! polytope is full-dimensional.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::dd;
use crate::error::{check_dim, Error, Result};
use crate::linalg::{self, dot, nullspace, qvec, rank, rref, sub, Q};

pub type Point = Vec<Q>;

/// Where a point sits relative to a polytope. Faces are reported by the
/// dimension of the smallest face containing the point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Location {
    Outside,
    Vertex,
    OnEdge,
    InteriorOfFace(usize),
}

impl Location {
    /// Closed-edge reading: vertices count as lying on their edges.
    pub fn on_closed_edge(self) -> bool {
        matches!(self, Location::Vertex | Location::OnEdge)
    }
}

/// Closed segment `[a, b]`; `a == b` is allowed and denotes a point.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub fn new(a: Point, b: Point) -> Self {
        Segment { a, b }
    }

    pub fn direction(&self) -> Vec<Q> {
        sub(&self.b, &self.a)
    }

    pub fn is_point(&self) -> bool {
        self.a == self.b
    }

    pub fn midpoint(&self) -> Point {
        let half = Q::new(BigInt::one(), BigInt::from(2));
        self.a
            .iter()
            .zip(&self.b)
            .map(|(x, y)| (x + y) * &half)
            .collect()
    }

    /// Exact closed-segment membership.
    pub fn contains(&self, x: &[Q]) -> bool {
        if x.len() != self.a.len() {
            return false;
        }
        let d = self.direction();
        let rel = sub(x, &self.a);
        // rel = t·d for a single t ∈ [0,1]
        let Some(i) = d.iter().position(|v| !v.is_zero()) else {
            return rel.iter().all(Zero::is_zero);
        };
        let t = &rel[i] / &d[i];
        if t.is_negative() || t > Q::one() {
            return false;
        }
        rel.iter().zip(&d).all(|(r, dv)| *r == &t * dv)
    }

    /// True when the direction is a nonzero multiple of `w`.
    pub fn is_parallel_to(&self, w: &[Q]) -> bool {
        parallel_factor(&self.direction(), w).is_some()
    }
}

/// The `s` with `d = s·w`, when `d` is a nonzero multiple of `w`.
pub(crate) fn parallel_factor(d: &[Q], w: &[Q]) -> Option<Q> {
    let i = w.iter().position(|v| !v.is_zero())?;
    let s = &d[i] / &w[i];
    if s.is_zero() {
        return None;
    }
    d.iter().zip(w).all(|(a, b)| *a == &s * b).then_some(s)
}

#[derive(Debug, Clone)]
struct Facet {
    // a · y ≤ b in frame coordinates
    normal: Vec<Q>,
    offset: Q,
}

/// A face given by its vertex indices and the facets whose intersection it is.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Face {
    pub vertices: Vec<usize>,
    pub facets: Vec<usize>,
}

/// Outcome of [`Polytope::observation_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObservationReport {
    pub hypothesis: bool,
    pub edge_parallel: Option<Segment>,
    pub vertex_witness: Option<Point>,
}

#[derive(Debug, Clone)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<Point>,
    base: Point,
    pivots: Vec<usize>,
    equations: Vec<Vec<Q>>,
    facets: Vec<Facet>,
    incidence: Vec<Vec<usize>>,
    edges: OnceLock<Vec<(usize, usize)>>,
}

impl PartialEq for Polytope {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.vertices == other.vertices
    }
}

impl Eq for Polytope {}

impl Polytope {
    /// Convex hull of a nonempty finite point set.
    pub fn hull(points: &[Point]) -> Result<Polytope> {
        let first = points.first().ok_or(Error::EmptyInput("hull of no points"))?;
        let dim = first.len();
        for p in points {
            check_dim(dim, p.len())?;
        }
        let mut pts: Vec<Point> = points.to_vec();
        pts.sort();
        pts.dedup();

        let base = pts[0].clone();
        let mut diffs: Vec<Vec<Q>> = pts[1..].iter().map(|p| sub(p, &base)).collect();
        let pivots = if diffs.is_empty() {
            Vec::new()
        } else {
            rref(&mut diffs)
        };
        let equations = if dim == 0 {
            Vec::new()
        } else {
            nullspace(&diffs, dim)
        };
        let k = pivots.len();

        if k == 0 {
            return Ok(Polytope {
                dim,
                vertices: vec![base.clone()],
                base,
                pivots,
                equations,
                facets: Vec::new(),
                incidence: vec![Vec::new()],
                edges: OnceLock::new(),
            });
        }

        let project = |p: &Point| -> Vec<Q> { pivots.iter().map(|&i| p[i].clone()).collect() };
        let projected: Vec<Vec<Q>> = pts.iter().map(project).collect();

        // cone of valid inequalities a·y ≤ b, written as (-y, 1)·(a, b) ≥ 0
        let rows: Vec<Vec<BigInt>> = projected
            .iter()
            .map(|y| {
                let mut r: Vec<Q> = y.iter().map(|v| -v.clone()).collect();
                r.push(Q::one());
                linalg::primitive(&r)
            })
            .collect();
        let facets: Vec<Facet> = dd::extreme_rays(&rows)
            .into_iter()
            .map(|ray| {
                let normal = ray[..k].iter().map(|v| Q::from_integer(v.clone())).collect();
                Facet {
                    normal,
                    offset: Q::from_integer(ray[k].clone()),
                }
            })
            .collect();

        let tight = |y: &[Q]| -> Vec<usize> {
            facets
                .iter()
                .enumerate()
                .filter(|(_, f)| dot(&f.normal, y) == f.offset)
                .map(|(i, _)| i)
                .collect()
        };
        let normals_rank = |idx: &[usize]| -> usize {
            let m: Vec<Vec<Q>> = idx.iter().map(|&i| facets[i].normal.clone()).collect();
            if m.is_empty() {
                0
            } else {
                rank(&m)
            }
        };

        let mut vertices = Vec::new();
        let mut incidence = Vec::new();
        for (p, y) in pts.iter().zip(&projected) {
            let t = tight(y);
            if normals_rank(&t) == k {
                vertices.push(p.clone());
                incidence.push(t);
            }
        }

        Ok(Polytope {
            dim,
            vertices,
            base,
            pivots,
            equations,
            facets,
            incidence,
            edges: OnceLock::new(),
        })
    }

    pub fn from_integer_points(points: &[Vec<i64>]) -> Result<Polytope> {
        let pts: Vec<Point> = points.iter().map(|p| qvec(p)).collect();
        Polytope::hull(&pts)
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Dimension of the affine hull.
    pub fn affine_dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    /// Vertices as integer vectors, failing on the first non-integral one.
    pub fn integer_vertices(&self) -> Result<Vec<Vec<i64>>> {
        self.vertices
            .iter()
            .map(|v| {
                v.iter()
                    .map(|x| {
                        if !x.is_integer() {
                            return Err(Error::NonIntegralVertex(
                                v.iter().map(ToString::to_string).collect(),
                            ));
                        }
                        x.to_integer().to_i64().ok_or(Error::Overflow("vertex coordinate"))
                    })
                    .collect()
            })
            .collect()
    }

    fn project(&self, x: &[Q]) -> Vec<Q> {
        self.pivots.iter().map(|&i| x[i].clone()).collect()
    }

    fn in_affine_hull(&self, x: &[Q]) -> bool {
        let rel = sub(x, &self.base);
        self.equations.iter().all(|c| dot(c, &rel).is_zero())
    }

    fn tight_facets(&self, y: &[Q]) -> Option<Vec<usize>> {
        let mut tight = Vec::new();
        for (i, f) in self.facets.iter().enumerate() {
            let v = dot(&f.normal, y);
            if v > f.offset {
                return None;
            }
            if v == f.offset {
                tight.push(i);
            }
        }
        Some(tight)
    }

    fn normals_rank(&self, idx: &[usize]) -> usize {
        if idx.is_empty() {
            return 0;
        }
        let m: Vec<Vec<Q>> = idx.iter().map(|&i| self.facets[i].normal.clone()).collect();
        rank(&m)
    }

    pub fn contains(&self, x: &[Q]) -> bool {
        x.len() == self.dim
            && self.in_affine_hull(x)
            && self.tight_facets(&self.project(x)).is_some()
    }

    /// Exact classification of `x` by the smallest face containing it.
    pub fn locate(&self, x: &[Q]) -> Result<Location> {
        check_dim(self.dim, x.len())?;
        if !self.in_affine_hull(x) {
            return Ok(Location::Outside);
        }
        let k = self.affine_dim();
        if k == 0 {
            return Ok(Location::Vertex);
        }
        let Some(tight) = self.tight_facets(&self.project(x)) else {
            return Ok(Location::Outside);
        };
        Ok(match k - self.normals_rank(&tight) {
            0 => Location::Vertex,
            1 => Location::OnEdge,
            d => Location::InteriorOfFace(d),
        })
    }

    /// `max { v · σ : v vertex }`.
    pub fn support_value(&self, sigma: &[Q]) -> Result<Q> {
        check_dim(self.dim, sigma.len())?;
        Ok(self
            .vertices
            .iter()
            .map(|v| dot(v, sigma))
            .max()
            .expect("polytopes are nonempty"))
    }

    pub fn maximizing_vertices(&self, sigma: &[Q]) -> Result<Vec<Point>> {
        let best = self.support_value(sigma)?;
        Ok(self
            .vertices
            .iter()
            .filter(|v| dot(v, sigma) == best)
            .cloned()
            .collect())
    }

    /// Index pairs `(i, j)`, `i < j`, of vertices spanning an edge.
    pub fn edge_indices(&self) -> &[(usize, usize)] {
        self.edges.get_or_init(|| {
            let k = self.affine_dim();
            let n = self.vertices.len();
            let mut out = Vec::new();
            if k == 0 {
                return out;
            }
            for i in 0..n {
                for j in i + 1..n {
                    let common: Vec<usize> = self.incidence[i]
                        .iter()
                        .filter(|f| self.incidence[j].contains(f))
                        .copied()
                        .collect();
                    if self.normals_rank(&common) != k - 1 {
                        continue;
                    }
                    let blocked = (0..n).any(|l| {
                        l != i && l != j && common.iter().all(|f| self.incidence[l].contains(f))
                    });
                    if !blocked {
                        out.push((i, j));
                    }
                }
            }
            out
        })
    }

    /// All one-dimensional faces. A point has none; a segment is its own edge.
    pub fn edges(&self) -> Vec<Segment> {
        self.edge_indices()
            .iter()
            .map(|&(i, j)| Segment::new(self.vertices[i].clone(), self.vertices[j].clone()))
            .collect()
    }

    /// Every nonempty face, from the vertices up to the polytope itself.
    pub fn faces(&self) -> Vec<Face> {
        let n = self.vertices.len();
        let facets_containing = |verts: &[usize]| -> Vec<usize> {
            (0..self.facets.len())
                .filter(|f| verts.iter().all(|&v| self.incidence[v].contains(f)))
                .collect()
        };
        let whole: Vec<usize> = (0..n).collect();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut queue = vec![whole.clone()];
        seen.insert(whole);
        while let Some(face) = queue.pop() {
            for f in 0..self.facets.len() {
                let sub: Vec<usize> = face
                    .iter()
                    .copied()
                    .filter(|&v| self.incidence[v].contains(&f))
                    .collect();
                if !sub.is_empty() && seen.insert(sub.clone()) {
                    queue.push(sub);
                }
            }
        }
        seen.into_iter()
            .map(|vertices| {
                let facets = facets_containing(&vertices);
                Face { vertices, facets }
            })
            .collect()
    }

    /// Whether `x` lies in the given face (closed).
    pub fn face_contains(&self, face: &Face, x: &[Q]) -> bool {
        if !self.contains(x) {
            return false;
        }
        let y = self.project(x);
        face.facets
            .iter()
            .all(|&f| dot(&self.facets[f].normal, &y) == self.facets[f].offset)
    }

    pub fn is_centrally_symmetric(&self) -> bool {
        self.vertices.iter().all(|v| {
            let neg: Point = v.iter().map(|x| -x.clone()).collect();
            self.vertices.binary_search(&neg).is_ok()
        })
    }

    /// Decides the hypothesis of the parallel-edge observation for `w` and,
    /// when it holds, exhibits an edge parallel to `w` together with a vertex
    /// `v` such that `v + w` lies on that (closed) edge.
    ///
    /// Along the line through a vertex in direction `w` the polytope meets an
    /// interval with the vertex as an endpoint, so some nonzero integer step
    /// stays inside exactly when `v + w` or `v - w` does; that choice is the
    /// sign of the vertex. Witnesses come from an edge parallel to `w` whose
    /// endpoints carry opposite signs; the positive endpoint is the vertex.
    pub fn observation_check(&self, w: &[Q]) -> Result<ObservationReport> {
        check_dim(self.dim, w.len())?;
        if w.iter().all(Zero::is_zero) {
            return Err(Error::ZeroVector("observation direction"));
        }
        let mut signs = Vec::with_capacity(self.vertices.len());
        for v in &self.vertices {
            if self.contains(&linalg::add(v, w)) {
                signs.push(1i8);
            } else if self.contains(&sub(v, w)) {
                signs.push(-1);
            } else {
                return Ok(ObservationReport {
                    hypothesis: false,
                    edge_parallel: None,
                    vertex_witness: None,
                });
            }
        }

        let mut best: Option<(usize, usize)> = None;
        for &(i, j) in self.edge_indices() {
            if signs[i] == signs[j] {
                continue;
            }
            let (p, m) = if signs[i] > 0 { (i, j) } else { (j, i) };
            let dir = sub(&self.vertices[m], &self.vertices[p]);
            if !parallel_factor(&dir, w).is_some_and(|s| s.is_positive()) {
                continue;
            }
            let better = match best {
                None => true,
                Some((bp, bm)) => (&self.vertices[p], &self.vertices[m]) > (&self.vertices[bp], &self.vertices[bm]),
            };
            if better {
                best = Some((p, m));
            }
        }
        Ok(match best {
            Some((p, m)) => ObservationReport {
                hypothesis: true,
                edge_parallel: Some(Segment::new(self.vertices[p].clone(), self.vertices[m].clone())),
                vertex_witness: Some(self.vertices[p].clone()),
            },
            None => ObservationReport {
                hypothesis: true,
                edge_parallel: None,
                vertex_witness: None,
            },
        })
    }
}

/// Integer lattice points `x` with `lo ≤ x ≤ hi` coordinatewise (rational bounds).
pub fn lattice_box(lo: &[Q], hi: &[Q]) -> Vec<Vec<i64>> {
    let ranges: Vec<(i64, i64)> = lo
        .iter()
        .zip(hi)
        .map(|(l, h)| {
            (
                l.ceil().to_integer().to_i64().unwrap_or(i64::MIN),
                h.floor().to_integer().to_i64().unwrap_or(i64::MAX),
            )
        })
        .collect();
    let mut out = vec![Vec::new()];
    for &(l, h) in &ranges {
        let mut next = Vec::new();
        for p in &out {
            for x in l..=h {
                let mut q = p.clone();
                q.push(x);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

/// Integer collinearity/betweenness test `y ∈ [a, b]`.
pub(crate) fn on_integer_segment(y: &[i64], a: &[i64], b: &[i64]) -> bool {
    let d: Vec<i128> = a.iter().zip(b).map(|(x, z)| *z as i128 - *x as i128).collect();
    let r: Vec<i128> = y.iter().zip(a).map(|(x, z)| *x as i128 - *z as i128).collect();
    let Some(i) = d.iter().position(|v| *v != 0) else {
        return r.iter().all(|v| *v == 0);
    };
    // r = (r_i / d_i)·d with 0 ≤ r_i/d_i ≤ 1
    if (0..d.len()).any(|j| r[j] * d[i] != r[i] * d[j]) {
        return false;
    }
    let (num, den) = if d[i] < 0 { (-r[i], -d[i]) } else { (r[i], d[i]) };
    num >= 0 && num <= den
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qp(v: &[i64]) -> Point {
        qvec(v)
    }

    fn square() -> Polytope {
        Polytope::from_integer_points(&[vec![1, 1], vec![1, -1], vec![-1, 1], vec![-1, -1]]).unwrap()
    }

    #[test]
    fn hull_drops_collinear_middle() {
        let p = Polytope::from_integer_points(&[vec![0, 0], vec![1, 0], vec![2, 0], vec![1, 1]]).unwrap();
        assert_eq!(p.integer_vertices().unwrap(), vec![vec![0, 0], vec![1, 1], vec![2, 0]]);
    }

    #[test]
    fn hull_single_point_and_empty() {
        let p = Polytope::from_integer_points(&[vec![3, 4]]).unwrap();
        assert_eq!(p.integer_vertices().unwrap(), vec![vec![3, 4]]);
        assert_eq!(p.affine_dim(), 0);
        assert!(matches!(Polytope::hull(&[]), Err(Error::EmptyInput(_))));
        assert!(Polytope::from_integer_points(&[vec![1], vec![1, 2]]).is_err());
    }

    #[test]
    fn locate_square() {
        let s = square();
        assert_eq!(s.locate(&qp(&[1, 0])).unwrap(), Location::OnEdge);
        assert_eq!(s.locate(&qp(&[0, 0])).unwrap(), Location::InteriorOfFace(2));
        assert_eq!(s.locate(&qp(&[2, 0])).unwrap(), Location::Outside);
        assert_eq!(s.locate(&qp(&[1, 1])).unwrap(), Location::Vertex);
        assert!(s.locate(&qp(&[1])).is_err());
    }

    #[test]
    fn locate_in_lower_dimensional_polytope() {
        // a triangle in the plane z = 1 inside R^3
        let t = Polytope::from_integer_points(&[vec![0, 0, 1], vec![2, 0, 1], vec![0, 2, 1]]).unwrap();
        assert_eq!(t.affine_dim(), 2);
        assert_eq!(t.num_facets(), 3);
        assert_eq!(t.locate(&qp(&[1, 0, 1])).unwrap(), Location::OnEdge);
        assert_eq!(t.locate(&qp(&[1, 0, 0])).unwrap(), Location::Outside);
        assert_eq!(
            t.locate(&[Q::new(1.into(), 2.into()), Q::new(1.into(), 2.into()), Q::one()]).unwrap(),
            Location::InteriorOfFace(2)
        );
    }

    #[test]
    fn support_values() {
        let s = square();
        assert_eq!(s.support_value(&qp(&[2, 3])).unwrap(), q(5));
        assert_eq!(s.support_value(&qp(&[0, 0])).unwrap(), q(0));
        let seg = Polytope::from_integer_points(&[vec![-1], vec![1]]).unwrap();
        assert_eq!(seg.support_value(&qp(&[4])).unwrap(), q(4));
    }

    fn q(n: i64) -> Q {
        linalg::q(n)
    }

    #[test]
    fn maximizers() {
        let s = square();
        assert_eq!(s.maximizing_vertices(&qp(&[1, 0])).unwrap(), vec![qp(&[1, -1]), qp(&[1, 1])]);
        assert_eq!(s.maximizing_vertices(&qp(&[1, 1])).unwrap(), vec![qp(&[1, 1])]);
        assert_eq!(s.maximizing_vertices(&qp(&[0, 0])).unwrap().len(), 4);
    }

    #[test]
    fn edge_counts() {
        assert_eq!(square().edges().len(), 4);
        let tri = Polytope::from_integer_points(&[vec![0, 0], vec![2, 0], vec![0, 1]]).unwrap();
        assert_eq!(tri.edges().len(), 3);
        let octa = Polytope::from_integer_points(&[
            vec![1, 0, 0],
            vec![-1, 0, 0],
            vec![0, 1, 0],
            vec![0, -1, 0],
            vec![0, 0, 1],
            vec![0, 0, -1],
        ])
        .unwrap();
        assert_eq!(octa.num_facets(), 8);
        assert_eq!(octa.edges().len(), 12);
        let point = Polytope::from_integer_points(&[vec![0, 0]]).unwrap();
        assert!(point.edges().is_empty());
        let seg = Polytope::from_integer_points(&[vec![0, 0], vec![2, 2]]).unwrap();
        assert_eq!(seg.edges(), vec![Segment::new(qp(&[0, 0]), qp(&[2, 2]))]);
    }

    #[test]
    fn faces_of_triangle() {
        let tri = Polytope::from_integer_points(&[vec![0, 0], vec![1, 0], vec![0, 1]]).unwrap();
        // 3 vertices, 3 edges, the triangle
        assert_eq!(tri.faces().len(), 7);
        let cube = Polytope::from_integer_points(
            &lattice_box(&qp(&[0, 0, 0]), &qp(&[1, 1, 1])),
        )
        .unwrap();
        // 8 + 12 + 6 + 1
        assert_eq!(cube.faces().len(), 27);
    }

    #[test]
    fn observation_square_vertical() {
        let r = square().observation_check(&qp(&[0, 1])).unwrap();
        assert!(r.hypothesis);
        assert_eq!(r.edge_parallel, Some(Segment::new(qp(&[1, -1]), qp(&[1, 1]))));
        assert_eq!(r.vertex_witness, Some(qp(&[1, -1])));
    }

    #[test]
    fn observation_square_diagonal_fails() {
        let r = square().observation_check(&qp(&[1, 1])).unwrap();
        assert!(!r.hypothesis);
        assert!(r.edge_parallel.is_none() && r.vertex_witness.is_none());
    }

    #[test]
    fn observation_segment() {
        let seg = Polytope::from_integer_points(&[vec![0], vec![2]]).unwrap();
        let r = seg.observation_check(&qp(&[1])).unwrap();
        assert!(r.hypothesis);
        assert_eq!(r.edge_parallel, Some(Segment::new(qp(&[0]), qp(&[2]))));
        assert!(seg.observation_check(&qp(&[0])).is_err());
    }

    #[test]
    fn segment_membership() {
        let s = Segment::new(qp(&[0, 0]), qp(&[2, 4]));
        assert!(s.contains(&qp(&[1, 2])));
        assert!(s.contains(&qp(&[2, 4])));
        assert!(!s.contains(&qp(&[3, 6])));
        assert!(!s.contains(&qp(&[1, 1])));
        assert!(on_integer_segment(&[1, 2], &[0, 0], &[2, 4]));
        assert!(!on_integer_segment(&[-1, -2], &[0, 0], &[2, 4]));
        assert!(on_integer_segment(&[0, 0], &[0, 0], &[0, 0]));
    }
}
