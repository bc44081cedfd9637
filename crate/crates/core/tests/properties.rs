use proptest::prelude::*;

use tristate_kofn::oracle::brute_force_joint;
use tristate_kofn::pgf::{
    general_distribution, increasing_distribution, pgf_bivariate, pgf_univariate, tail_probability,
};
use tristate_kofn::subset::{subset_state_decreasing, subset_tail_increasing};
use tristate_kofn::{ComponentChain, ComponentState, Level, Segment, SystemSpec, TransitionMatrix};

fn row() -> impl Strategy<Value = [f64; 3]> {
    // weights with occasional exact zeros; at least one positive
    prop::array::uniform3(prop_oneof![1 => Just(0.0), 6 => 0.01f64..1.0])
        .prop_filter("positive row", |w| w.iter().sum::<f64>() > 0.0)
        .prop_map(|w| {
            let s: f64 = w.iter().sum();
            w.map(|v| v / s)
        })
}

fn matrix() -> impl Strategy<Value = TransitionMatrix> {
    prop::array::uniform3(row()).prop_map(|rows| TransitionMatrix::new(rows).unwrap())
}

fn chain(max_n: usize) -> impl Strategy<Value = ComponentChain> {
    (prop::collection::vec(matrix(), 1..=max_n), 0u8..3).prop_map(|(ms, start)| {
        ComponentChain::new(ms)
            .unwrap()
            .with_start(ComponentState::try_from(start).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn normalization(c in chain(24)) {
        for level in Level::ALL {
            prop_assert!((pgf_univariate(&c, level).eval(1.0) - 1.0).abs() < 1e-9);
        }
        prop_assert!((pgf_bivariate(&c).eval(1.0, 1.0) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn marginals_and_triangle(c in chain(16)) {
        let gamma = pgf_bivariate(&c);
        let n = c.len();
        for x in 0..=n {
            for y in x + 1..=n {
                prop_assert_eq!(gamma.get(x, y), 0.0);
            }
        }
        let psi1 = pgf_univariate(&c, Level::AtLeastPartial);
        let psi2 = pgf_univariate(&c, Level::Perfect);
        for (a, b) in gamma.marginal_first().coeffs().iter().zip(psi1.coeffs()) {
            prop_assert!((a - b).abs() < 1e-12);
        }
        for (a, b) in gamma.marginal_second().coeffs().iter().zip(psi2.coeffs()) {
            prop_assert!((a - b).abs() < 1e-12);
        }
        for t in [0.0, 0.25, 0.5, 0.9, 1.3] {
            prop_assert!((gamma.eval(t, 1.0) - psi1.eval(t)).abs() < 1e-12 * (1.0 + psi1.eval(t)));
            prop_assert!((gamma.eval(1.0, t) - psi2.eval(t)).abs() < 1e-12 * (1.0 + psi2.eval(t)));
        }
    }

    #[test]
    fn dominance_and_monotone_tails(c in chain(20)) {
        let psi1 = pgf_univariate(&c, Level::AtLeastPartial);
        let psi2 = pgf_univariate(&c, Level::Perfect);
        let mut prev = f64::INFINITY;
        for k in 0..=c.len() + 1 {
            let t1 = tail_probability(&psi1, k).unwrap();
            let t2 = tail_probability(&psi2, k).unwrap();
            prop_assert!(t1 + 1e-12 >= t2);
            prop_assert!(t1 <= prev + 1e-15);
            prev = t1;
        }
    }

    #[test]
    fn oracle_equivalence(c in chain(8)) {
        let gamma = pgf_bivariate(&c);
        let pmf = brute_force_joint(&c).unwrap();
        prop_assert!((pmf.total() - 1.0).abs() < 1e-12);
        for x in 0..=c.len() {
            for y in 0..=c.len() {
                prop_assert!((gamma.get(x, y) - pmf.get(x, y)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn subset_equivalence(c in chain(7)) {
        let n = c.len();
        for level in Level::ALL {
            let psi = pgf_univariate(&c, level);
            for k in 1..=n {
                let s = subset_tail_increasing(&c, level, k).unwrap();
                prop_assert!((s - psi.tail(k).unwrap()).abs() < 1e-10);
            }
        }
        for k1 in 1..=n {
            for k2 in 1..=n {
                let spec = SystemSpec::new(n, k1, k2).unwrap();
                let g = general_distribution(&c, &spec).unwrap();
                let r1 = subset_state_decreasing(&c, &spec, Level::AtLeastPartial).unwrap();
                let r2 = subset_state_decreasing(&c, &spec, Level::Perfect).unwrap();
                prop_assert!((r1 - g.r1).abs() < 1e-10);
                prop_assert!((r2 - g.r2).abs() < 1e-10);
                if k1 <= k2 {
                    let inc = increasing_distribution(&c, &spec).unwrap();
                    prop_assert!(inc.max_abs_diff(&g) < 1e-12);
                }
            }
        }
    }

    #[test]
    fn distribution_invariants(c in chain(12), a in 1usize..=12, b in 1usize..=12) {
        let n = c.len();
        let spec = SystemSpec::new(n, 1 + (a - 1) % n, 1 + (b - 1) % n).unwrap();
        let d = general_distribution(&c, &spec).unwrap();
        prop_assert!((d.r0 + d.r1 + d.r2 - 1.0).abs() < 1e-9);
        prop_assert_eq!(d.cum2, d.r2);
        prop_assert!((d.cum1 - d.r1 - d.r2).abs() < 1e-12);
        for v in d.as_array() {
            prop_assert!((-1e-12..=1.0 + 1e-12).contains(&v));
        }
    }

    #[test]
    fn single_segment_is_homogeneous(m in matrix(), n in 1usize..30) {
        let seg = ComponentChain::segmented(&[Segment::new(1, n, m)], n).unwrap();
        prop_assert_eq!(seg, ComponentChain::homogeneous(m, n).unwrap());
    }

    #[test]
    fn trajectory_mass_sums_to_one(c in chain(8)) {
        prop_assert!((brute_force_joint(&c).unwrap().total() - 1.0).abs() < 1e-12);
    }
}
