mod oracles;

use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::Rng;
use thurstonlab::bundle::{kernel_e, Bundle4, ClassH2M, Manifold3};
use thurstonlab::fuzz::{claim_instance, trial_rng};
use thurstonlab::norms::thurston_norm;
use thurstonlab::swtheory::{adjunction_bound, baldridge_average, basic_classes_m, four_dimensional_support, refined_bound, BoundStatus, SwSupport};

fn support() -> impl Strategy<Value = (usize, Vec<(Vec<i64>, i64)>)> {
    (1usize..=3).prop_flat_map(|n| {
        let entry = (prop::collection::vec(-4i64..=4, n), prop_oneof![-3i64..=-1, 1i64..=3]);
        (Just(n), prop::collection::vec(entry, 0..10))
    })
}

fn nonzero_vec(n: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-2i64..=2, n).prop_filter("nonzero", |v| v.iter().any(|&x| x != 0))
}

fn as_map(sw: &SwSupport) -> BTreeMap<Vec<i64>, i64> {
    sw.iter().map(|(c, v)| (c.clone(), *v)).collect()
}

#[test]
fn documented_averaging_examples() {
    let sw = SwSupport::new(3, vec![(vec![0, 0, 0], 1), (vec![2, 0, 0], -1)]).unwrap();
    assert!(baldridge_average(&sw, &[1, 0, 0]).unwrap().is_empty());
    let sw = SwSupport::new(3, vec![(vec![0, 1, 0], 2)]).unwrap();
    assert_eq!(as_map(&baldridge_average(&sw, &[1, 0, 0]).unwrap()), as_map(&sw));
    let sw = SwSupport::new(2, vec![(vec![0, 0], 1), (vec![2, 0], 1), (vec![4, 0], 1)]).unwrap();
    let avg = baldridge_average(&sw, &[1, 0]).unwrap();
    assert_eq!(as_map(&avg), BTreeMap::from([(vec![0, 0], 3)]));
    assert_eq!(basic_classes_m(&sw, &[1, 0]).unwrap(), vec![vec![0, 0]]);
    assert_eq!(four_dimensional_support(&sw, &[0, 0]).unwrap(), sw);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn averaging_matches_orbit_grouping((n, entries) in support(), seed in any::<u64>()) {
        let e = {
            let mut rng = trial_rng(seed, 0);
            loop {
                let v: Vec<i64> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
                if v.iter().any(|&x| x != 0) { break v; }
            }
        };
        let sw = SwSupport::new(n, entries.clone()).unwrap();
        let avg = baldridge_average(&sw, &e).unwrap();
        prop_assert_eq!(as_map(&avg), oracles::orbit_sums(&entries, &e));
        prop_assert_eq!(avg.total(), sw.total());
        // every key lies in the input's translate lattice
        for (k, _) in avg.iter() {
            prop_assert!(sw.iter().any(|(h, _)| d_is_multiple(k, h, &e)));
        }
    }

    #[test]
    fn averaging_ignores_rebasing((n, entries) in support(), shifts in prop::collection::vec(-3i64..=3, 10), e in (1usize..=3).prop_flat_map(nonzero_vec)) {
        prop_assume!(e.len() == n);
        let moved: Vec<(Vec<i64>, i64)> = entries
            .iter()
            .zip(shifts.iter().cycle())
            .map(|((h, v), l)| (h.iter().zip(&e).map(|(a, b)| a + 2 * l * b).collect(), *v))
            .collect();
        let a = baldridge_average(&SwSupport::new(n, entries).unwrap(), &e).unwrap();
        let b = baldridge_average(&SwSupport::new(n, moved).unwrap(), &e).unwrap();
        // representatives may move inside their orbits; the orbit sums may not
        prop_assert_eq!(a.len(), b.len());
        for (k, v) in a.iter() {
            let partner: Vec<_> = b.iter().filter(|(h, _)| d_is_multiple(k, h, &e)).collect();
            prop_assert_eq!(partner.len(), 1);
            prop_assert_eq!(partner[0].1, v);
        }
    }

    #[test]
    fn refined_bound_dominates_adjunction(seed in any::<u64>(), c in prop::collection::vec(-4i64..=4, 3), k in prop::collection::vec(-2i64..=2, 2)) {
        let inst = claim_instance(&mut trial_rng(seed, 0)).unwrap();
        let n = inst.ball.b1();
        let sigma = inst.sigma.clone();
        let m = Manifold3::new("N", n, None, Some(inst.ball.clone()), Some(inst.sw.clone()), None).unwrap();
        let bundle = Bundle4::new(m, inst.euler.clone(), false).unwrap();
        let a = ClassH2M::new(sigma.clone(), c[..n].to_vec());
        let r = refined_bound(&bundle, &a, None).unwrap();
        prop_assert!(matches!(r.status, BoundStatus::LowerBound | BoundStatus::Exact));
        let basics = basic_classes_m(&inst.sw, &inst.euler).unwrap();
        prop_assert!(r.value >= adjunction_bound(&basics, &inst.euler, &a).unwrap());

        // x' = value − |α·α| is the Thurston norm, hence a seminorm in σ
        prop_assert_eq!(r.value - r.self_intersection.abs(), thurston_norm(&inst.ball, &sigma).unwrap());
        let basis = kernel_e(&inst.euler).unwrap();
        let tau: Vec<i64> = (0..n).map(|j| basis.iter().zip(&k).map(|(b, x)| b[j] * x).sum()).collect();
        let sum: Vec<i64> = sigma.entries().iter().zip(&tau).map(|(a, b)| a + b).collect();
        let xp = |s: &[i64]| {
            let r = refined_bound(&bundle, &ClassH2M::new(s.to_vec(), vec![0; n]), None).unwrap();
            r.value - r.self_intersection.abs()
        };
        prop_assert!(xp(&sum) <= xp(sigma.entries()) + xp(&tau));
        let triple: Vec<i64> = sigma.entries().iter().map(|x| -3 * x).collect();
        prop_assert_eq!(xp(&triple), 3 * xp(sigma.entries()));
    }
}

fn d_is_multiple(k: &[i64], h: &[i64], e: &[i64]) -> bool {
    let d: Vec<i64> = k.iter().zip(h).map(|(a, b)| a - b).collect();
    let i = e.iter().position(|&x| x != 0).unwrap();
    d[i] % (2 * e[i]) == 0 && d.iter().zip(e).all(|(x, y)| *x == d[i] / (2 * e[i]) * 2 * y)
}
