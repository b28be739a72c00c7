//! Brute-force reference implementations. None of these call into the
//! library's geometry or search code beyond `locate` where the definition
//! itself is phrased in terms of it.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::Zero;
use thurstonlab::algebra::LaurentPoly;
use thurstonlab::linalg::qvec;
use thurstonlab::norms::DualBall;
use thurstonlab::polytope::Location;

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn primitive(v: Vec<i64>) -> Vec<i64> {
    let g = v.iter().fold(0, |g, &x| gcd(g, x));
    if g == 0 {
        v
    } else {
        v.into_iter().map(|x| x / g).collect()
    }
}

fn cross(a: &[i64], b: &[i64]) -> Vec<i64> {
    vec![
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn det3(a: &[i64], b: &[i64], c: &[i64]) -> i64 {
    dot(&cross(a, b), c)
}

/// Hyperplane normal through `dim` points in dimension 2 or 3.
fn normal_through(pts: &[&Vec<i64>]) -> Vec<i64> {
    match pts[0].len() {
        2 => {
            let d = sub(pts[1], pts[0]);
            vec![d[1], -d[0]]
        }
        3 => cross(&sub(pts[1], pts[0]), &sub(pts[2], pts[0])),
        n => panic!("oracle supports dimensions 2 and 3, got {n}"),
    }
}

pub fn is_full_dimensional(pts: &[Vec<i64>]) -> bool {
    let n = pts[0].len();
    let p0 = &pts[0];
    match n {
        1 => pts.iter().any(|p| p != p0),
        2 => pts.iter().any(|a| {
            pts.iter().any(|b| {
                let (u, v) = (sub(a, p0), sub(b, p0));
                u[0] * v[1] - u[1] * v[0] != 0
            })
        }),
        3 => pts.iter().any(|a| {
            pts.iter().any(|b| {
                pts.iter()
                    .any(|c| det3(&sub(a, p0), &sub(b, p0), &sub(c, p0)) != 0)
            })
        }),
        _ => panic!("oracle supports dimensions 1 to 3"),
    }
}

/// Facets `(n, b)` with `n·x ≤ b` on the point set, for a full-dimensional
/// set in dimension 2 or 3. Every subset of `dim` points is tried.
pub fn brute_facets(pts: &[Vec<i64>]) -> BTreeSet<(Vec<i64>, i64)> {
    let n = pts[0].len();
    let mut out = BTreeSet::new();
    let idx: Vec<usize> = (0..pts.len()).collect();
    let mut subsets: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for s in &subsets {
            let start = s.last().map_or(0, |&l| l + 1);
            for &i in &idx[start..] {
                let mut t = s.clone();
                t.push(i);
                next.push(t);
            }
        }
        subsets = next;
    }
    for s in subsets {
        let chosen: Vec<&Vec<i64>> = s.iter().map(|&i| &pts[i]).collect();
        let nrm = normal_through(&chosen);
        if nrm.iter().all(|&x| x == 0) {
            continue;
        }
        let b = dot(&nrm, chosen[0]);
        let vals: Vec<i64> = pts.iter().map(|p| dot(&nrm, p)).collect();
        let nrm = primitive(nrm);
        let g = dot(&nrm, chosen[0]);
        if vals.iter().all(|&v| v <= b) {
            out.insert((nrm, g));
        } else if vals.iter().all(|&v| v >= b) {
            out.insert((nrm.iter().map(|x| -x).collect(), -g));
        }
    }
    out
}

pub fn brute_vertices(pts: &[Vec<i64>]) -> BTreeSet<Vec<i64>> {
    let facets = brute_facets(pts);
    let n = pts[0].len();
    pts.iter()
        .filter(|p| {
            let tight: Vec<Vec<i64>> = facets
                .iter()
                .filter(|(f, b)| dot(f, p) == *b)
                .map(|(f, _)| f.clone())
                .collect();
            rank_small(&tight) == n
        })
        .cloned()
        .collect()
}

/// Rank of at most-3-column integer rows.
fn rank_small(rows: &[Vec<i64>]) -> usize {
    if rows.iter().all(|r| r.iter().all(|&x| x == 0)) {
        return 0;
    }
    let n = rows[0].len();
    let two = rows.iter().any(|a| {
        rows.iter().any(|b| match n {
            2 => a[0] * b[1] - a[1] * b[0] != 0,
            3 => cross(a, b).iter().any(|&x| x != 0),
            _ => false,
        })
    });
    if !two {
        return 1;
    }
    if n == 3 && rows
        .iter()
        .any(|a| rows.iter().any(|b| rows.iter().any(|c| det3(a, b, c) != 0)))
    {
        return 3;
    }
    2
}

/// Edges of a full-dimensional polytope in dimension 2 or 3: vertex pairs
/// whose shared facets have normals of rank `dim − 1`.
pub fn brute_edges(pts: &[Vec<i64>]) -> BTreeSet<(Vec<i64>, Vec<i64>)> {
    let facets = brute_facets(pts);
    let verts: Vec<Vec<i64>> = brute_vertices(pts).into_iter().collect();
    let n = pts[0].len();
    let mut out = BTreeSet::new();
    for i in 0..verts.len() {
        for j in i + 1..verts.len() {
            let shared: Vec<Vec<i64>> = facets
                .iter()
                .filter(|(f, b)| dot(f, &verts[i]) == *b && dot(f, &verts[j]) == *b)
                .map(|(f, _)| f.clone())
                .collect();
            if rank_small(&shared) == n - 1 {
                out.insert((verts[i].clone(), verts[j].clone()));
            }
        }
    }
    out
}

/// `x ∈ P` by the facet inequalities.
pub fn separation_contains(facets: &BTreeSet<(Vec<i64>, i64)>, x: &[i64]) -> bool {
    facets.iter().all(|(f, b)| dot(f, x) <= *b)
}

/// `Ξ` straight from its definition: nonzero `w` in the box
/// `|w_i| ≤ (max edge coord + max vertex coord)/2` with `v + 2w` a vertex
/// or on an edge for some vertex `v`.
pub fn xi_scan(ball: &DualBall) -> BTreeSet<Vec<i64>> {
    let verts = ball.vertices();
    let m = verts
        .iter()
        .flat_map(|v| v.iter().map(|x| x.abs()))
        .max()
        .unwrap_or(0);
    let r = (m + m) / 2;
    let n = ball.b1();
    let mut out = BTreeSet::new();
    let mut w = vec![-r; n];
    loop {
        if w.iter().any(|&x| x != 0) {
            let hit = verts.iter().any(|v| {
                let y: Vec<i64> = v.iter().zip(&w).map(|(a, b)| a + 2 * b).collect();
                matches!(
                    ball.polytope().locate(&qvec(&y)).unwrap(),
                    Location::Vertex | Location::OnEdge
                )
            });
            if hit {
                out.insert(w.clone());
            }
        }
        let mut i = 0;
        while i < n && w[i] == r {
            w[i] = -r;
            i += 1;
        }
        if i == n {
            break;
        }
        w[i] += 1;
    }
    out
}

/// `e ∈ cone{a, b}`; scaling the carrier by 2 does not change its cone.
fn in_cone2(a: &[i64], b: &[i64], e: &[i64]) -> bool {
    let on_ray = |g: &[i64]| -> bool {
        // e = t g with t > 0
        if g.iter().all(|&x| x == 0) {
            return false;
        }
        let k = (0..g.len()).find(|&i| g[i] != 0).unwrap();
        (0..g.len()).all(|i| e[i] * g[k] == g[i] * e[k]) && e[k] * g[k] > 0
    };
    if on_ray(a) || on_ray(b) {
        return true;
    }
    // independent a, b: solve on a pair of coordinates with nonzero minor
    let n = e.len();
    for i in 0..n {
        for j in i + 1..n {
            let det = a[i] * b[j] - a[j] * b[i];
            if det == 0 {
                continue;
            }
            let alpha = e[i] * b[j] - e[j] * b[i];
            let beta = a[i] * e[j] - a[j] * e[i];
            // e must lie in span{a, b}
            let fits = (0..n).all(|k| alpha * a[k] + beta * b[k] == det * e[k]);
            let s = det.signum();
            return fits && alpha * s >= 0 && beta * s >= 0;
        }
    }
    false
}

/// `Θ` membership from oracle edges: `e` lies in the cone over some carrier
/// `(E − v)/2`, i.e. over the segment from `a − v` to `b − v`.
pub fn theta_cone(ball: &DualBall, e: &[i64]) -> bool {
    if e.iter().all(|&x| x == 0) {
        return false;
    }
    let verts = ball.vertices();
    let edges = brute_edges(verts);
    for v in verts {
        for (a, b) in &edges {
            if in_cone2(&sub(a, v), &sub(b, v), e) {
                return true;
            }
        }
    }
    false
}

/// Level sums of `Δ` under `φ`, recomputed from the term list.
pub fn specialization_vanishes(delta: &LaurentPoly, phi: &[i64]) -> bool {
    let mut levels: BTreeMap<i64, BigInt> = BTreeMap::new();
    for (exp, c) in delta.terms() {
        *levels.entry(dot(exp, phi)).or_default() += c;
    }
    levels.values().all(|c| c.is_zero())
}

/// First primitive `φ ∈ [−r, r]^n` (odometer order) killing `Δ`.
pub fn boxed_killer(delta: &LaurentPoly, r: i64) -> Option<Vec<i64>> {
    let n = delta.nvars();
    let mut phi = vec![-r; n];
    loop {
        if phi.iter().any(|&x| x != 0)
            && phi.iter().fold(0, |g, &x| gcd(g, x)) == 1
            && specialization_vanishes(delta, &phi)
        {
            return Some(phi);
        }
        let mut i = 0;
        while i < n && phi[i] == r {
            phi[i] = -r;
            i += 1;
        }
        if i == n {
            return None;
        }
        phi[i] += 1;
    }
}

/// Orbit sums under translation by `2e`, grouping by pairwise comparison.
/// Each orbit is keyed by its least class present in the support.
pub fn orbit_sums(entries: &[(Vec<i64>, i64)], e: &[i64]) -> BTreeMap<Vec<i64>, i64> {
    let same_orbit = |h: &[i64], k: &[i64]| -> bool {
        let d = sub(k, h);
        let i = match (0..e.len()).find(|&i| e[i] != 0) {
            Some(i) => i,
            None => return d.iter().all(|&x| x == 0),
        };
        if d[i] % (2 * e[i]) != 0 {
            return false;
        }
        let l = d[i] / (2 * e[i]);
        (0..e.len()).all(|j| d[j] == 2 * l * e[j])
    };
    let mut merged: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
    for (h, v) in entries {
        *merged.entry(h.clone()).or_default() += v;
    }
    merged.retain(|_, v| *v != 0);
    let mut groups: Vec<(Vec<i64>, i64)> = Vec::new();
    for (h, v) in &merged {
        match groups.iter_mut().find(|(g, _)| same_orbit(g, h)) {
            Some(g) => {
                if *h < g.0 {
                    g.0 = h.clone();
                }
                g.1 += v;
            }
            None => groups.push((h.clone(), *v)),
        }
    }
    groups.into_iter().filter(|(_, s)| *s != 0).collect()
}

/// Maximal minors of a `(n−1) × n` integer matrix, by cofactor expansion.
pub fn maximal_minors(rows: &[Vec<i64>]) -> Vec<i64> {
    fn det(m: &[Vec<i64>]) -> i64 {
        match m.len() {
            0 => 1,
            1 => m[0][0],
            _ => (0..m.len())
                .map(|j| {
                    let minor: Vec<Vec<i64>> = m[1..]
                        .iter()
                        .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect())
                        .collect();
                    let s = if j % 2 == 0 { 1 } else { -1 };
                    s * m[0][j] * det(&minor)
                })
                .sum(),
        }
    }
    let n = rows.first().map_or(0, |r| r.len());
    (0..n)
        .map(|skip| {
            let m: Vec<Vec<i64>> = rows
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, &x)| x).collect())
                .collect();
            det(&m)
        })
        .collect()
}

pub fn content(v: &[i64]) -> i64 {
    v.iter().fold(0, |g, &x| gcd(g, x))
}
