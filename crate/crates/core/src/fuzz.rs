//! Seeded instance generators and property harnesses.
//!
//! Every trial draws from its own ChaCha stream (`seed`, stream = trial
//! index), so trials are reproducible one at a time and independent of the
//! order in which they run.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::Covector;
use crate::bundle::kernel_e;
use crate::error::Result;
use crate::exceptional::xi_test;
use crate::linalg::{add, q, qvec, scale, Q};
use crate::norms::DualBall;
use crate::polytope::{Location, Point, Polytope};
use crate::swtheory::{claim_witness, SwSupport};

pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

fn random_vec(rng: &mut impl Rng, dim: usize, r: i64) -> Vec<i64> {
    (0..dim).map(|_| rng.gen_range(-r..=r)).collect()
}

fn random_nonzero_vec(rng: &mut impl Rng, dim: usize, r: i64) -> Vec<i64> {
    loop {
        let v = random_vec(rng, dim, r);
        if v.iter().any(|&x| x != 0) {
            return v;
        }
    }
}

/// Symmetric integral ball: hull of a few random points in `[-r, r]^dim`
/// and their negatives.
pub fn random_ball(rng: &mut impl Rng, dim: usize, r: i64) -> DualBall {
    let k = rng.gen_range(1..=dim + 2);
    let mut pts = Vec::with_capacity(2 * k);
    for _ in 0..k {
        let p = random_nonzero_vec(rng, dim, r);
        pts.push(p.iter().map(|x| -x).collect());
        pts.push(p);
    }
    DualBall::from_vertices(&pts).expect("symmetric integral hull")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instance {
    Observation {
        vertices: Vec<Point>,
        w: Vec<Q>,
    },
    Claim {
        ball: Vec<Vec<i64>>,
        sw: Vec<(Vec<i64>, i64)>,
        euler: Vec<i64>,
        sigma: Vec<i64>,
    },
    Norms {
        ball: Vec<Vec<i64>>,
        sigma: Vec<i64>,
        tau: Vec<i64>,
        k: i64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzFailure {
    pub trial: usize,
    pub message: String,
    pub instance: Instance,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzReport {
    pub kind: &'static str,
    pub seed: u64,
    pub trials: usize,
    /// Trials whose premise held (observation hypothesis, claim setup).
    pub premise_held: usize,
    pub failures: Vec<FuzzFailure>,
}

/// A polytope and a nonzero direction. Half the instances are prisms
/// `conv(Q ∪ (Q + k·w))`, for which the hypothesis always holds.
pub fn observation_instance(rng: &mut impl Rng) -> (Polytope, Vec<Q>) {
    let dim = rng.gen_range(2..=3);
    let npts = rng.gen_range(1..=dim + 3);
    let pts: Vec<Vec<i64>> = (0..npts).map(|_| random_vec(rng, dim, 3)).collect();
    let mut w = qvec(&random_nonzero_vec(rng, dim, 2));
    if rng.gen_bool(0.2) {
        w = scale(&w, &Q::new(1.into(), 2.into()));
    }
    let mut qpts: Vec<Point> = pts.iter().map(|p| qvec(p)).collect();
    if rng.gen_bool(0.5) {
        let k = q(rng.gen_range(1..=3));
        let shift = scale(&w, &k);
        let extra: Vec<Point> = qpts.iter().map(|p| add(p, &shift)).collect();
        qpts.extend(extra);
    }
    (Polytope::hull(&qpts).expect("nonempty"), w)
}

/// Hypothesis by exhaustive scan of `l ∈ [-L, L] \ {0}`, where `L` bounds any
/// step that can stay inside the bounding box.
pub fn observation_hypothesis_scan(p: &Polytope, w: &[Q]) -> Result<bool> {
    let verts = p.vertices();
    let mut bound: Option<BigInt> = None;
    for i in 0..p.dim() {
        if w[i].is_zero() {
            continue;
        }
        let lo = verts.iter().map(|v| &v[i]).min().expect("nonempty");
        let hi = verts.iter().map(|v| &v[i]).max().expect("nonempty");
        let l = ((hi - lo) / w[i].abs()).floor().to_integer();
        bound = Some(bound.map_or(l.clone(), |b| b.min(l)));
    }
    let bound = bound.and_then(|b| b.to_i64()).unwrap_or(0);
    for v in verts {
        let mut found = false;
        for l in (-bound..=bound).filter(|&l| l != 0) {
            let x = add(v, &scale(w, &q(l)));
            if p.locate(&x)? != Location::Outside {
                found = true;
                break;
            }
        }
        if !found {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Re-verifies one observation instance; `Ok(None)` on success.
pub fn check_observation(p: &Polytope, w: &[Q]) -> Result<(bool, Option<String>)> {
    let expected = observation_hypothesis_scan(p, w)?;
    let report = p.observation_check(w)?;
    if report.hypothesis != expected {
        return Ok((expected, Some(format!(
            "hypothesis mismatch: check says {}, scan says {expected}",
            report.hypothesis
        ))));
    }
    if !expected {
        return Ok((false, None));
    }
    let (Some(edge), Some(v)) = (report.edge_parallel, report.vertex_witness) else {
        return Ok((true, Some("hypothesis holds but witnesses are missing".into())));
    };
    if !p.edges().contains(&edge) && !p.edges().contains(&crate::polytope::Segment::new(edge.b.clone(), edge.a.clone())) {
        return Ok((true, Some("returned segment is not an edge".into())));
    }
    if !edge.is_parallel_to(w) {
        return Ok((true, Some("edge is not parallel to w".into())));
    }
    if !p.vertices().contains(&v) {
        return Ok((true, Some("vertex witness is not a vertex".into())));
    }
    let moved = add(&v, w);
    if !p.locate(&moved)?.on_closed_edge() || !edge.contains(&moved) {
        return Ok((true, Some("v + w does not lie on the edge".into())));
    }
    Ok((true, None))
}

pub fn fuzz_observation(trials: usize, seed: u64) -> Result<FuzzReport> {
    let mut report = FuzzReport {
        kind: "observation",
        seed,
        trials,
        premise_held: 0,
        failures: Vec::new(),
    };
    for t in 0..trials {
        let mut rng = trial_rng(seed, t);
        let (p, w) = observation_instance(&mut rng);
        let (held, failure) = check_observation(&p, &w)?;
        report.premise_held += usize::from(held);
        if let Some(message) = failure {
            report.failures.push(FuzzFailure {
                trial: t,
                message,
                instance: Instance::Observation {
                    vertices: p.vertices().to_vec(),
                    w,
                },
            });
        }
    }
    Ok(report)
}

/// Setup of the surviving-class property: support inside the ball and
/// containing its vertices, `σ(e) = 0`, `e ∉ Ξ`.
#[derive(Debug, Clone)]
pub struct ClaimInstance {
    pub ball: DualBall,
    pub sw: SwSupport,
    pub euler: Vec<i64>,
    pub sigma: Covector,
}

impl ClaimInstance {
    pub fn to_instance(&self) -> Instance {
        Instance::Claim {
            ball: self.ball.vertices().to_vec(),
            sw: self.sw.iter().map(|(c, v)| (c.clone(), *v)).collect(),
            euler: self.euler.clone(),
            sigma: self.sigma.entries().to_vec(),
        }
    }
}

pub fn claim_instance(rng: &mut impl Rng) -> Result<ClaimInstance> {
    loop {
        let dim = rng.gen_range(2..=3);
        let ball = random_ball(rng, dim, 3);
        let poly = ball.polytope();
        let mut classes: Vec<Vec<i64>> = ball.vertices().to_vec();
        for _ in 0..rng.gen_range(0..8) {
            let p = random_vec(rng, dim, 3);
            if poly.contains(&qvec(&p)) {
                classes.push(p);
            }
        }
        let mut values = Vec::with_capacity(classes.len());
        for c in classes {
            let mut v: i64 = rng.gen_range(-3..=3);
            if v == 0 {
                v = 1;
            }
            values.push((c, v));
        }
        values.shuffle(rng);
        // duplicates may cancel; the vertices must stay in the support
        let sw = SwSupport::new(dim, values)?;
        if ball.vertices().iter().any(|v| sw.get(v) == 0) {
            continue;
        }
        let sigma = Covector::new(random_vec(rng, dim, 3));
        let basis = kernel_e(sigma.entries())?;
        for _ in 0..20 {
            let mut e = vec![0i64; dim];
            for b in &basis {
                let c: i64 = rng.gen_range(-3..=3);
                for (ei, bi) in e.iter_mut().zip(b) {
                    *ei += c * bi;
                }
            }
            if e.iter().all(|&x| x == 0) || xi_test(&ball, &e)? {
                continue;
            }
            return Ok(ClaimInstance {
                ball,
                sw,
                euler: e,
                sigma,
            });
        }
    }
}

pub fn fuzz_claim(trials: usize, seed: u64) -> Result<FuzzReport> {
    let mut report = FuzzReport {
        kind: "claim",
        seed,
        trials,
        premise_held: 0,
        failures: Vec::new(),
    };
    for t in 0..trials {
        let mut rng = trial_rng(seed, t);
        let inst = claim_instance(&mut rng)?;
        let r = claim_witness(&inst.ball, &inst.sw, &inst.euler, &inst.sigma)?;
        if !r.violations.is_empty() {
            report.failures.push(FuzzFailure {
                trial: t,
                message: format!("generated instance violates hypotheses: {:?}", r.violations),
                instance: inst.to_instance(),
            });
            continue;
        }
        report.premise_held += 1;
        if r.witness.is_none() {
            report.failures.push(FuzzFailure {
                trial: t,
                message: "no surviving norm-attaining class although e is not exceptional".into(),
                instance: inst.to_instance(),
            });
        }
    }
    Ok(report)
}

pub fn fuzz_norms(trials: usize, seed: u64) -> Result<FuzzReport> {
    let mut report = FuzzReport {
        kind: "norms",
        seed,
        trials,
        premise_held: 0,
        failures: Vec::new(),
    };
    for t in 0..trials {
        let mut rng = trial_rng(seed, t);
        let dim = rng.gen_range(1..=4);
        let ball = random_ball(&mut rng, dim, 3);
        let sigma = random_vec(&mut rng, dim, 5);
        let tau = random_vec(&mut rng, dim, 5);
        let k: i64 = rng.gen_range(-6..=6);
        let norm = |v: &[i64]| ball.norm(&Covector::new(v.to_vec()));
        let s = norm(&sigma)?;
        let sum: Vec<i64> = sigma.iter().zip(&tau).map(|(a, b)| a + b).collect();
        let scaled: Vec<i64> = sigma.iter().map(|a| a * k).collect();
        let neg: Vec<i64> = sigma.iter().map(|a| -a).collect();
        let mut problems = Vec::new();
        if norm(&scaled)? != k.abs() * s {
            problems.push("homogeneity");
        }
        if norm(&sum)? > s + norm(&tau)? {
            problems.push("subadditivity");
        }
        if norm(&neg)? != s {
            problems.push("symmetry");
        }
        if s < 0 {
            problems.push("negativity");
        }
        report.premise_held += 1;
        if !problems.is_empty() {
            report.failures.push(FuzzFailure {
                trial: t,
                message: format!("seminorm axioms failed: {}", problems.join(", ")),
                instance: Instance::Norms {
                    ball: ball.vertices().to_vec(),
                    sigma,
                    tau,
                    k,
                },
            });
        }
    }
    Ok(report)
}
