//! Seiberg–Witten supports, averaging over Euler-class orbits, and the
//! complexity bounds built on them.

use std::collections::BTreeMap;

use crate::algebra::Covector;
use crate::bundle::{self_intersection, Bundle4, ClassH2M};
use crate::error::{check_dim, Error, Result};
use crate::exceptional::{theta_test, xi_test};
use crate::linalg::dot_i64;
use crate::niceness::NicenessVerdict;
use crate::norms::{fibered_cone_test, DualBall};

/// Finitely supported map from first Chern classes to nonzero SW values.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SwSupport {
    b1: usize,
    entries: BTreeMap<Vec<i64>, i64>,
}

impl SwSupport {
    /// Sums repeated classes and drops zero values.
    pub fn new<I>(b1: usize, entries: I) -> Result<SwSupport>
    where
        I: IntoIterator<Item = (Vec<i64>, i64)>,
    {
        let mut out: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
        for (c, v) in entries {
            check_dim(b1, c.len())?;
            let slot = out.entry(c).or_insert(0);
            *slot = slot.checked_add(v).ok_or(Error::Overflow("SW value"))?;
        }
        out.retain(|_, v| *v != 0);
        Ok(SwSupport { b1, entries: out })
    }

    pub fn b1(&self) -> usize {
        self.b1
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, c: &[i64]) -> i64 {
        self.entries.get(c).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<i64>, &i64)> {
        self.entries.iter()
    }

    pub fn classes(&self) -> Vec<Vec<i64>> {
        self.entries.keys().cloned().collect()
    }

    /// Sum of all values (wide accumulator).
    pub fn total(&self) -> i128 {
        self.entries.values().map(|&v| v as i128).sum()
    }
}

/// Canonical point of the orbit `h + 2Ze`: the first nonzero coordinate of
/// `e` is reduced into `[0, 2|e_i|)`.
fn orbit_key(h: &[i64], e: &[i64]) -> Result<Vec<i64>> {
    let Some(i) = e.iter().position(|&x| x != 0) else {
        return Ok(h.to_vec());
    };
    let step = e[i].checked_mul(2).ok_or(Error::Overflow("orbit step"))?;
    let k = h[i].div_euclid(step);
    h.iter()
        .zip(e)
        .map(|(hj, ej)| {
            k.checked_mul(2)
                .and_then(|k2| k2.checked_mul(*ej))
                .and_then(|s| hj.checked_sub(s))
                .ok_or(Error::Overflow("orbit reduction"))
        })
        .collect()
}

/// Canonical orbit key → (least support member, orbit sum).
type Orbits = BTreeMap<Vec<i64>, (Vec<i64>, i64)>;

/// Orbits of the support under translation by `2e`.
fn orbits(sw: &SwSupport, e: &[i64]) -> Result<Orbits> {
    check_dim(sw.b1, e.len())?;
    let mut out = Orbits::new();
    // entries iterate in lexicographic order, so the first member seen is least
    for (h, &v) in &sw.entries {
        let slot = out.entry(orbit_key(h, e)?).or_insert_with(|| (h.clone(), 0));
        slot.1 = slot.1.checked_add(v).ok_or(Error::Overflow("orbit sum"))?;
    }
    Ok(out)
}

/// `Σ_l SW(h + 2le)` over the support.
pub fn orbit_sum(sw: &SwSupport, e: &[i64], h: &[i64]) -> Result<i64> {
    check_dim(sw.b1, h.len())?;
    let key = orbit_key(h, e)?;
    Ok(orbits(sw, e)?.get(&key).map_or(0, |(_, s)| *s))
}

/// Pulled-back support on the circle bundle: the orbit sums of the 3-manifold
/// support under `c₁ ↦ c₁ + 2e`, on orbit representatives, zero sums dropped.
pub fn baldridge_average(sw: &SwSupport, e: &[i64]) -> Result<SwSupport> {
    check_dim(sw.b1, e.len())?;
    if e.iter().all(|&x| x == 0) {
        return Err(Error::ZeroEuler);
    }
    let entries = orbits(sw, e)?
        .into_values()
        .filter(|(_, s)| *s != 0)
        .collect::<BTreeMap<_, _>>();
    Ok(SwSupport { b1: sw.b1, entries })
}

/// Averaging for `e ≠ 0`; the product rule (identity) for `e = 0`.
pub fn four_dimensional_support(sw: &SwSupport, e: &[i64]) -> Result<SwSupport> {
    check_dim(sw.b1, e.len())?;
    if e.iter().all(|&x| x == 0) {
        Ok(sw.clone())
    } else {
        baldridge_average(sw, e)
    }
}

pub fn basic_classes_m(sw: &SwSupport, e: &[i64]) -> Result<Vec<Vec<i64>>> {
    Ok(four_dimensional_support(sw, e)?.classes())
}

/// The averaging formula is stated for `b₁ > 2`; smaller ranks only warn.
pub fn averaging_warning(b1: usize) -> Option<String> {
    (b1 <= 2).then(|| format!("b1 = {b1} <= 2: the averaging formula is only asserted for b1 > 2"))
}

/// `max_κ |α·α| + σ(κ)`, floored at zero; zero for no basic classes.
pub fn adjunction_bound(basics: &[Vec<i64>], euler: &[i64], a: &ClassH2M) -> Result<i64> {
    let si = self_intersection(euler, a)?.abs();
    let mut best = 0i64;
    for k in basics {
        check_dim(a.sigma.len(), k.len())?;
        let v = si
            .checked_add(a.sigma.apply(k)?)
            .ok_or(Error::Overflow("adjunction bound"))?;
        best = best.max(v);
    }
    Ok(best)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BoundStatus {
    Unsupported,
    GabaiLowerBound,
    LowerBound,
    Exact,
}

impl BoundStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundStatus::Exact => "EXACT",
            BoundStatus::LowerBound => "LOWER_BOUND",
            BoundStatus::GabaiLowerBound => "GABAI_LOWER_BOUND",
            BoundStatus::Unsupported => "UNSUPPORTED",
        }
    }

    /// The result that justifies the status.
    pub fn provenance(self) -> &'static str {
        match self {
            BoundStatus::Exact => "Corollary 1.5",
            BoundStatus::LowerBound => "Theorem 1.1",
            BoundStatus::GabaiLowerBound => "Remark 2 / Gabai",
            BoundStatus::Unsupported => "none",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundResult {
    /// `|α·α| + ‖σ‖`
    pub value: i64,
    pub status: BoundStatus,
    pub self_intersection: i64,
    pub norm: i64,
    pub xi_exceptional: bool,
    /// Reported alongside, never folded into `status`.
    pub theta_exceptional: bool,
}

/// `x(α) ≥ |α·α| + ‖p_*α‖` with the strongest status the inputs justify.
pub fn refined_bound(bundle: &Bundle4, a: &ClassH2M, nice: Option<&NicenessVerdict>) -> Result<BoundResult> {
    let euler = bundle.euler();
    let si = self_intersection(euler, a)?;
    let ball = bundle.base().ball();
    let norm = ball.norm(&a.sigma)?;
    let value = si
        .abs()
        .checked_add(norm)
        .ok_or(Error::Overflow("refined bound"))?;
    let xi = xi_test(ball, euler)?;
    let is_nice = nice.is_some_and(|v| v.status.establishes_nice());
    let status = match (xi, si == 0) {
        (false, _) if is_nice => BoundStatus::Exact,
        (false, _) => BoundStatus::LowerBound,
        (true, true) => BoundStatus::GabaiLowerBound,
        (true, false) => BoundStatus::Unsupported,
    };
    Ok(BoundResult {
        value,
        status,
        self_intersection: si,
        norm,
        xi_exceptional: xi,
        theta_exceptional: theta_test(ball, euler)?,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimReport {
    /// A support class attaining `‖σ‖` whose `2e`-orbit sum is nonzero.
    pub witness: Option<Vec<i64>>,
    /// Support classes attaining `‖σ‖`.
    pub attaining: Vec<Vec<i64>>,
    /// Failed model hypotheses; informational only.
    pub violations: Vec<String>,
}

/// Searches the norm-attaining part of the support for a class whose
/// averaged invariant survives.
pub fn claim_witness(ball: &DualBall, sw: &SwSupport, e: &[i64], sigma: &Covector) -> Result<ClaimReport> {
    check_dim(ball.b1(), e.len())?;
    check_dim(ball.b1(), sw.b1())?;
    let pairing = sigma.apply(e)?;
    if pairing != 0 {
        return Err(Error::GysinViolation { pairing });
    }
    let norm = ball.norm(sigma)?;
    let mut violations = Vec::new();
    let mut attaining = Vec::new();
    for (h, _) in sw.iter() {
        let v = sigma.apply(h)?;
        if v.abs() > norm {
            violations.push(format!("|{h:?} . sigma| = {} exceeds the norm {norm}", v.abs()));
        }
        if v == norm {
            attaining.push(h.clone());
        }
    }
    for v in ball.maximizing_vertices(sigma)? {
        if sw.get(&v) == 0 {
            violations.push(format!("maximizing vertex {v:?} is not in the support"));
        }
    }
    let sums = orbits(sw, e)?;
    let mut witness = None;
    for h in &attaining {
        let key = orbit_key(h, e)?;
        if sums.get(&key).is_some_and(|(_, s)| *s != 0) {
            witness = Some(h.clone());
            break;
        }
    }
    Ok(ClaimReport {
        witness,
        attaining,
        violations,
    })
}

/// Complexity after smoothing the intersections of a norm-minimizing surface
/// with the torus `p⁻¹(c)`: each crossing costs 2, the tori cost nothing.
pub fn smoothed_complexity(chi_sigma: u64, intersection_count: u64) -> Result<u64> {
    intersection_count
        .checked_mul(2)
        .and_then(|x| x.checked_add(chi_sigma))
        .ok_or(Error::Overflow("smoothed complexity"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticStatus {
    pub candidate: bool,
    pub reasons: Vec<String>,
}

/// Fibered-cone membership of `σ` plus positivity `α·α > 0`.
pub fn symplectic_status(bundle: &Bundle4, a: &ClassH2M) -> Result<SymplecticStatus> {
    let base = bundle.base();
    let si = self_intersection(bundle.euler(), a)?;
    let fibered = fibered_cone_test(base.ball(), base.fibered_marks(), &a.sigma)?;
    let positive = si > 0;
    let reasons = vec![
        format!(
            "sigma {} the open cone over a marked fibered face",
            if fibered { "lies in" } else { "does not lie in" }
        ),
        format!("self-intersection {si} {} 0 (positive-cone convention)", if positive { ">" } else { "<=" }),
    ];
    Ok(SymplecticStatus {
        candidate: fibered && positive,
        reasons,
    })
}

/// Pairing `κ·α = κ(σ)` for a class pulled back from the base.
pub fn pairing(kappa: &[i64], a: &ClassH2M) -> Result<i64> {
    check_dim(a.sigma.len(), kappa.len())?;
    dot_i64(kappa, a.sigma.entries())
}
