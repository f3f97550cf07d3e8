use proptest::prelude::*;

use tripnet_core::nets::{max_hole, HOLE_SUM_TOL};
use tripnet_core::{
    base_curve_even, base_curve_odd, crossover_aspect, curve_value, diagonal_branch,
    net_scale_factor, Net,
};

fn cuts(max: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::btree_set(1u32..10_000, 0..=max)
        .prop_map(|s| s.into_iter().map(|i| i as f64 / 10_000.0).collect())
}

fn net(max: usize) -> impl Strategy<Value = Net> {
    (cuts(max), cuts(max)).prop_map(|(v, h)| Net::new(v, h).unwrap())
}

#[test]
fn diagonal_residuals_on_grid() {
    for i in 0..=40 {
        let n = 1.0 + 0.1 * i as f64;
        for j in 1..=64 {
            let p = n + (3.0 * n) * j as f64 / 64.0;
            let sol = diagonal_branch(n, p).unwrap();
            assert!(sol.a1 > 0.0 && sol.a1 < 1.0 && sol.a2 > 0.0 && sol.a2 < n && sol.c > 0.0);
            for r in sol.residuals() {
                assert!(
                    r.abs() < 1e-12,
                    "n={n} p={p} residuals {:?}",
                    sol.residuals()
                );
            }
        }
    }
}

#[test]
fn curve_is_monotone_and_continuous() {
    for n in [1.0, 1.5, 2.0, 3.7, 5.0] {
        let mut prev = curve_value(n, 1.0).unwrap();
        for i in 1..=((4.0 * n - 1.0) * 1000.0) as usize {
            let p = 1.0 + i as f64 * 1e-3;
            let c = curve_value(n, p).unwrap();
            assert!(c <= prev + 1e-12, "increase at n={n} p={p}");
            assert!(prev - c < 1e-2, "jump at n={n} p={p}");
            assert!(c > 0.0 && c <= 1.0);
            prev = c;
        }
    }
}

#[test]
fn base_curves_meet_at_crossover() {
    for k in 2..=12 {
        let p = crossover_aspect(k).unwrap();
        let parallel = curve_value((k + 1) as f64, p).unwrap() / (k + 1) as f64;
        let grid = net_scale_factor(&Net::evenly_spaced(k.div_ceil(2), k / 2), p).unwrap();
        assert!((parallel - grid).abs() < 1e-12);
    }
}

#[test]
fn base_curve_dominates_every_split() {
    for k in 1..=12usize {
        for i in 0..=7 * 64 {
            let p = 1.0 + i as f64 / 64.0;
            let base = if k % 2 == 0 {
                base_curve_even(k, p).unwrap()
            } else {
                base_curve_odd(k, p).unwrap()
            };
            for v in 0..=k {
                let c = net_scale_factor(&Net::evenly_spaced(v, k - v), p).unwrap();
                assert!(base <= c + 1e-12, "k={k} p={p} N({v},{})", k - v);
            }
        }
    }
}

#[test]
fn evenly_spaced_closed_form() {
    for k in 0..=8usize {
        for h in 0..=k / 2 {
            let v = k - h;
            for i in 0..=7 * 16 {
                let p = 1.0 + i as f64 / 16.0;
                let got = net_scale_factor(&Net::evenly_spaced(v, h), p).unwrap();
                let n = (v + 1) as f64 / (h + 1) as f64;
                let want = curve_value(n, p).unwrap() / (v + 1) as f64;
                assert!((got - want).abs() < 1e-12);
            }
        }
    }
}

proptest! {
    #[test]
    fn curve_is_max_of_candidates(n in 1.0f64..6.0, dp in 0.0f64..20.0) {
        let p = n + dp;
        let c = curve_value(n, p).unwrap();
        prop_assert!(c > 0.0 && c <= 1.0);
        if dp > 0.0 {
            prop_assert!(c >= n / p);
            prop_assert!(c >= diagonal_branch(n, p).unwrap().c);
        }
    }

    #[test]
    fn hole_grid_is_consistent(net in net(6)) {
        let g = net.holes();
        prop_assert!(g.is_consistent());
        prop_assert_eq!(g.widths.len(), net.vertical().len() + 1);
        prop_assert_eq!(g.heights.len(), net.horizontal().len() + 1);
        prop_assert!((g.widths.iter().sum::<f64>() - 1.0).abs() <= HOLE_SUM_TOL);
    }

    #[test]
    fn adding_a_line_never_increases_scale(net in net(5), at in 1u32..10_000, vertical in any::<bool>(), p in 1.0f64..8.0) {
        let x = at as f64 / 10_000.0;
        let bigger = if vertical { net.with_vertical(x) } else { net.with_horizontal(x) };
        // a coincident position is not a new line
        prop_assume!(bigger.is_ok());
        let before = net_scale_factor(&net, p).unwrap();
        let after = net_scale_factor(&bigger.unwrap(), p).unwrap();
        prop_assert!(after <= before + 1e-15);
    }

    #[test]
    fn average_hole_bound(net in net(8)) {
        let g = net.holes();
        let (v, h) = (net.vertical().len(), net.horizontal().len());
        prop_assert!(g.max_width() >= 1.0 / (v + 1) as f64 - 1e-15);
        prop_assert!(g.max_height() >= 1.0 / (h + 1) as f64 - 1e-15);
    }

    #[test]
    fn irregular_never_beats_regular(net in net(6), p in 1.0f64..8.0) {
        let (v, h) = (net.vertical().len(), net.horizontal().len());
        let regular = net_scale_factor(&Net::evenly_spaced(v, h), p).unwrap();
        prop_assert!(net_scale_factor(&net, p).unwrap() >= regular - 1e-12);
    }

    #[test]
    fn max_hole_is_widest_by_tallest(net in net(6), p in 1.0f64..8.0) {
        let g = net.holes();
        let best = max_hole(&net, p).unwrap();
        let direct = tripnet_core::hole_scale(g.max_width(), g.max_height(), p).unwrap();
        prop_assert!((best.scale - direct).abs() < 1e-15);
    }
}
