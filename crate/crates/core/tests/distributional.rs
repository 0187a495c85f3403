use std::sync::Arc;

use proptest::prelude::*;
use wfcm_core::distributional::{
    barycenter, decompose, from_histogram, resample, wasserstein_sq, Distribution, GridQuantile,
    LevelGrid, SkewLogistic,
};
use wfcm_core::synthgen::{closed_form_barycenter, closed_form_distance};

/// Skew-logistic quantile, written out independently of the library.
fn q(g: f64, e: f64, d: f64, t: f64) -> f64 {
    g + e * ((1.0 - d) / 2.0 * t.ln() - (1.0 + d) / 2.0 * (1.0 - t).ln())
}

/// Midpoint rule with `n` nodes.
fn midpoint(n: usize, f: impl Fn(f64) -> f64) -> f64 {
    let h = 1.0 / n as f64;
    (0..n).map(|i| f((i as f64 + 0.5) * h)).sum::<f64>() * h
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-12)
}

fn skew() -> impl Strategy<Value = (f64, f64, f64)> {
    (-10.0..10.0f64, 0.1..10.0f64, -1.0..1.0f64)
}

fn quantile_values(n: usize) -> impl Strategy<Value = Vec<f64>> {
    (-50.0..50.0f64, prop::collection::vec(0.0..5.0f64, n)).prop_map(|(start, steps)| {
        steps
            .iter()
            .scan(start, |acc, s| {
                *acc += s;
                Some(*acc)
            })
            .collect()
    })
}

#[test]
fn closed_form_matches_fine_quadrature() {
    let n = 100_000;
    let pairs = [
        ((0.0, 7.0, 0.2), (-3.0, 8.0, 0.2)),
        ((1.0, 1.5, 0.1), (2.0, 2.0, -0.2)),
        ((-2.0, 3.0, -0.9), (4.0, 0.5, 0.7)),
        ((0.0, 1.0, 0.0), (0.0, 2.0, 0.0)),
    ];
    for ((g1, e1, d1), (g2, e2, d2)) in pairs {
        let a = SkewLogistic::new(g1, e1, d1).unwrap();
        let b = SkewLogistic::new(g2, e2, d2).unwrap();
        let m1 = midpoint(n, |t| q(g1, e1, d1, t));
        let m2 = midpoint(n, |t| q(g2, e2, d2, t));
        let d2_num = midpoint(n, |t| (q(g1, e1, d1, t) - q(g2, e2, d2, t)).powi(2));
        let dv_num = midpoint(n, |t| {
            ((q(g1, e1, d1, t) - m1) - (q(g2, e2, d2, t) - m2)).powi(2)
        });
        let dec = closed_form_distance(&a, &b);
        assert!(
            rel(dec.total(), d2_num) < 1e-4,
            "d² {} vs {d2_num}",
            dec.total()
        );
        assert!(
            rel(dec.dispersion, dv_num) < 1e-4,
            "dV {} vs {dv_num}",
            dec.dispersion
        );
        assert_eq!(dec.position, (a.mean() - b.mean()).powi(2));
    }
}

#[test]
fn closed_form_moments_match_quadrature() {
    let n = 10_000;
    for (g, e, d) in [
        (0.0, 7.0, 0.2),
        (-2.0, 1.5, 0.1),
        (3.0, 2.0, -0.6),
        (0.0, 1.0, 1.0),
    ] {
        let s = SkewLogistic::new(g, e, d).unwrap();
        let mean = midpoint(n, |t| q(g, e, d, t));
        let var = midpoint(n, |t| (q(g, e, d, t) - mean).powi(2));
        assert!((s.mean() - mean).abs() < 1e-3 * s.mean().abs().max(1.0));
        assert!(
            rel(s.std_dev(), var.sqrt()) < 1e-3,
            "{} vs {}",
            s.std_dev(),
            var.sqrt()
        );
    }
}

#[test]
fn closed_form_barycenter_matches_grid() {
    let grid = Arc::new(LevelGrid::midpoint(1000));
    let params = [
        SkewLogistic::new(0.0, 7.0, 0.2).unwrap(),
        SkewLogistic::new(-3.0, 8.0, 0.1).unwrap(),
        SkewLogistic::new(2.0, 2.0, -0.4).unwrap(),
    ];
    let w = [0.2, 0.5, 1.3];
    let analytic: Distribution = closed_form_barycenter(&w, &params).unwrap().into();
    let rasters: Vec<Distribution> = params
        .iter()
        .map(|p| p.rasterize(&grid).unwrap().into())
        .collect();
    let gridded = barycenter(&w, &rasters).unwrap();
    let expected = resample(&analytic, &grid).unwrap();
    for (x, y) in gridded
        .as_grid()
        .unwrap()
        .values()
        .iter()
        .zip(expected.values())
    {
        assert!((x - y).abs() <= 1e-3 * y.abs().max(1.0));
    }

    let same_eta = [
        SkewLogistic::new(0.0, 2.0, 0.1).unwrap(),
        SkewLogistic::new(1.0, 2.0, 0.5).unwrap(),
    ];
    let b = closed_form_barycenter(&[1.0, 3.0], &same_eta).unwrap();
    assert!((b.delta() - 0.4).abs() < 1e-15);
    let single = closed_form_barycenter(&[2.0], &params[..1]).unwrap();
    assert_eq!(single, params[0]);
}

#[test]
fn histogram_uniform_bin_moments() {
    let q = from_histogram(&[2.0, 4.0], &[1.0]).unwrap();
    assert!((q.mean() - 3.0).abs() < 1e-15);
    assert!((q.std_dev() - (4.0f64 / 12.0).sqrt()).abs() < 1e-12);
}

#[test]
fn histogram_distances_are_exact() {
    // U[0,1] vs U[0,2]: ∫ (t − 2t)² = 1/3, dM = 1/4, dV = 1/12
    let a: Distribution = from_histogram(&[0.0, 1.0], &[1.0]).unwrap().into();
    let b: Distribution = from_histogram(&[0.0, 2.0], &[1.0]).unwrap().into();
    let dec = decompose(&a, &b).unwrap();
    assert!((wasserstein_sq(&a, &b).unwrap() - 1.0 / 3.0).abs() < 1e-15);
    assert!((dec.position - 0.25).abs() < 1e-15);
    assert!((dec.dispersion - 1.0 / 12.0).abs() < 1e-15);
}

proptest! {
    #[test]
    fn decomposition_identity_on_grids(a in quantile_values(40), b in quantile_values(40)) {
        let grid = Arc::new(LevelGrid::midpoint(40));
        let x: Distribution = GridQuantile::new(Arc::clone(&grid), a).unwrap().into();
        let y: Distribution = GridQuantile::new(grid, b).unwrap().into();
        let d2 = wasserstein_sq(&x, &y).unwrap();
        let dec = decompose(&x, &y).unwrap();
        prop_assert!((d2 - dec.total()).abs() <= 1e-9 * d2.max(1e-12));
        prop_assert!(dec.position >= 0.0 && dec.dispersion >= 0.0);
    }

    #[test]
    fn distance_is_symmetric_metric(a in quantile_values(30), b in quantile_values(30), c in quantile_values(30)) {
        let grid = Arc::new(LevelGrid::midpoint(30));
        let mk = |v: Vec<f64>| -> Distribution { GridQuantile::new(Arc::clone(&grid), v).unwrap().into() };
        let (x, y, z) = (mk(a), mk(b), mk(c));
        let dxy = wasserstein_sq(&x, &y).unwrap();
        prop_assert_eq!(dxy, wasserstein_sq(&y, &x).unwrap());
        prop_assert_eq!(wasserstein_sq(&x, &x).unwrap(), 0.0);
        let (dxz, dzy) = (wasserstein_sq(&x, &z).unwrap(), wasserstein_sq(&z, &y).unwrap());
        prop_assert!(dxy.sqrt() <= dxz.sqrt() + dzy.sqrt() + 1e-9);
    }

    #[test]
    fn closed_form_symmetric_and_decomposed(p in skew(), r in skew()) {
        let a = SkewLogistic::new(p.0, p.1, p.2).unwrap();
        let b = SkewLogistic::new(r.0, r.1, r.2).unwrap();
        let ab = closed_form_distance(&a, &b);
        let ba = closed_form_distance(&b, &a);
        prop_assert!((ab.total() - ba.total()).abs() <= 1e-12 * ab.total().max(1.0));
        prop_assert!(ab.dispersion >= 0.0);
        prop_assert_eq!(ab.position, (a.mean() - b.mean()).powi(2));
        let shifted = SkewLogistic::new(p.0 + 3.0, p.1, p.2).unwrap();
        let s = closed_form_distance(&a, &shifted);
        prop_assert!((s.position - 9.0).abs() < 1e-9);
        prop_assert!(s.dispersion.abs() < 1e-12);
    }

    #[test]
    fn barycenter_minimizes_weighted_distance(
        vals in prop::collection::vec(quantile_values(25), 2..6),
        w in prop::collection::vec(0.1..3.0f64, 6),
        bump in quantile_values(25),
        eps in -0.5..0.5f64,
    ) {
        let grid = Arc::new(LevelGrid::midpoint(25));
        let ds: Vec<Distribution> = vals
            .into_iter()
            .map(|v| GridQuantile::new(Arc::clone(&grid), v).unwrap().into())
            .collect();
        let w = &w[..ds.len()];
        let g = barycenter(w, &ds).unwrap();
        let cost = |c: &Distribution| -> f64 {
            w.iter().zip(&ds).map(|(wk, d)| wk * wasserstein_sq(d, c).unwrap()).sum()
        };
        // any other non-decreasing quantile: g + eps·bump (bump increasing and eps ≥ 0),
        // or a blend with the bump quantile
        let gv = g.as_grid().unwrap().values().to_vec();
        let blend: Vec<f64> = gv.iter().zip(&bump).map(|(a, b)| (1.0 - eps.abs()) * a + eps.abs() * b).collect();
        let other: Distribution = GridQuantile::new(Arc::clone(&grid), blend).unwrap().into();
        prop_assert!(cost(&g) <= cost(&other) + 1e-9 * cost(&g).max(1.0));
    }

    #[test]
    fn skew_logistic_quantile_monotone(p in skew(), t1 in 0.001..0.999f64, t2 in 0.001..0.999f64) {
        let s = SkewLogistic::new(p.0, p.1, p.2).unwrap();
        let (lo, hi) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
        prop_assert!(s.quantile(lo).unwrap() <= s.quantile(hi).unwrap());
    }

    #[test]
    fn histogram_round_trip(
        widths in prop::collection::vec(0.1..3.0f64, 1..8),
        raw in prop::collection::vec(0.05..1.0f64, 8),
        start in -10.0..10.0f64,
    ) {
        let edges: Vec<f64> = std::iter::once(start)
            .chain(widths.iter().scan(start, |acc, w| { *acc += w; Some(*acc) }))
            .collect();
        let probs: Vec<f64> = raw[..widths.len()].to_vec();
        let total: f64 = probs.iter().sum();
        let probs: Vec<f64> = probs.iter().map(|p| p / total).collect();
        let q = from_histogram(&edges, &probs).unwrap();
        // piecewise-uniform bins: mean is Σ p_b (lo_b + hi_b)/2
        let mean: f64 = probs.iter().zip(edges.windows(2)).map(|(p, e)| p * (e[0] + e[1]) / 2.0).sum();
        prop_assert!((q.mean() - mean).abs() < 1e-9 * mean.abs().max(1.0));
        // Q at cumulative bin levels returns the bin edges
        let mut cum = 0.0;
        for (p, e) in probs.iter().zip(&edges[1..]) {
            cum += p;
            if cum < 1.0 - 1e-12 {
                prop_assert!((q.eval(cum) - e).abs() < 1e-9 * e.abs().max(1.0));
            }
        }
        prop_assert!((q.eval(0.0) - edges[0]).abs() < 1e-12);
        prop_assert!((q.eval(1.0) - edges[edges.len() - 1]).abs() < 1e-9);
    }
}
