use proptest::prelude::*;
use wfcm_core::synthgen::{generate_scenario, sse_report, ScenarioSpec, Spread};

fn midpoint(n: usize, f: impl Fn(f64) -> f64) -> f64 {
    let h = 1.0 / n as f64;
    (0..n).map(|i| f((i as f64 + 0.5) * h)).sum::<f64>() * h
}

#[test]
fn scenario_one_gamma_means_follow_the_laws() {
    let spec = ScenarioSpec::preset(1).unwrap();
    let lt = generate_scenario(&spec, 2024).unwrap();
    assert_eq!(lt.table.n_objects(), 300);
    let want = [0.0, -3.0, 3.0];
    for (i, law) in spec.clusters.iter().enumerate() {
        let members: Vec<usize> = (0..300).filter(|&k| lt.labels[k] == i).collect();
        assert_eq!(members.len(), 100);
        assert_eq!(law[0].gamma.mu, want[i]);
        for (j, l) in law.iter().enumerate() {
            for (spec_law, get) in [
                (
                    l.gamma,
                    (|s: &wfcm_core::distributional::SkewLogistic| s.gamma()) as fn(&_) -> f64,
                ),
                (l.eta, |s| s.eta()),
            ] {
                let mean = members
                    .iter()
                    .map(|&k| get(lt.table.cell(k, j).as_skew_logistic().unwrap()))
                    .sum::<f64>()
                    / 100.0;
                let tol = 3.0 * spec_law.std_dev(Spread::Variance) / 10.0;
                assert!(
                    (mean - spec_law.mu).abs() <= tol,
                    "cluster {i} var {j}: {mean} vs {} ± {tol}",
                    spec_law.mu
                );
            }
        }
    }
}

#[test]
fn generated_moments_match_quadrature() {
    let lt = generate_scenario(&ScenarioSpec::preset(1).unwrap(), 5).unwrap();
    for row in lt.table.rows() {
        for cell in row {
            let s = cell.as_skew_logistic().unwrap();
            let (g, e, d) = (s.gamma(), s.eta(), s.delta());
            let q = |t: f64| g + e * ((1.0 - d) / 2.0 * t.ln() - (1.0 + d) / 2.0 * (1.0 - t).ln());
            let mean = midpoint(10_000, q);
            let sd = midpoint(10_000, |t| (q(t) - mean).powi(2)).sqrt();
            assert!((s.mean() - (g + e * d)).abs() < 1e-12 * s.mean().abs().max(1.0));
            assert!((s.mean() - mean).abs() <= 1e-3 * mean.abs().max(1.0));
            assert!((s.std_dev() - sd).abs() <= 1e-3 * sd);
        }
    }
}

#[test]
fn ground_truth_qpi_intervals() {
    // QPI2 exceeds 0.40 on about 3% of seeds; these are fixed
    for seed in [1, 2, 42] {
        let one = generate_scenario(&ScenarioSpec::preset(1).unwrap(), seed).unwrap();
        let r = sse_report(&one.table, &one.labels).unwrap();
        let (q1, q2) = (r.qpi_variable(0).unwrap(), r.qpi_variable(1).unwrap());
        assert!((0.80..=0.95).contains(&q1), "seed {seed}: QPI1 {q1}");
        assert!((0.10..=0.40).contains(&q2), "seed {seed}: QPI2 {q2}");

        let three = generate_scenario(&ScenarioSpec::preset(3).unwrap(), seed).unwrap();
        let r = sse_report(&three.table, &three.labels).unwrap();
        assert!(r.qpi_position(0).unwrap() <= 0.2);
        assert!(r.qpi_dispersion(0).unwrap() >= 0.45);
        for j in 0..2 {
            let w = r.within[j];
            let parts: f64 = r.clusters.iter().map(|c| c[j].total()).sum();
            assert!((w.total() - parts).abs() <= 1e-9 * w.total());
        }
    }
}

#[test]
fn spec_round_trips_through_json() {
    for k in 1..=3 {
        let spec = ScenarioSpec::preset(k).unwrap();
        let text = serde_json::to_string(&spec).unwrap();
        assert_eq!(ScenarioSpec::from_json(&text).unwrap(), spec);
    }
    assert!(ScenarioSpec::preset(4).is_err());
    assert!(ScenarioSpec::from_json("{\"variable_names\": [], \"clusters\": []}").is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn parameters_stay_in_range(seed in any::<u64>(), k in 1usize..=3) {
        let mut spec = ScenarioSpec::preset(k).unwrap();
        spec.objects_per_cluster = 20;
        let a = generate_scenario(&spec, seed).unwrap();
        for cell in a.table.rows().iter().flatten() {
            let s = cell.as_skew_logistic().unwrap();
            prop_assert!(s.eta() > 0.0);
            prop_assert!(s.delta().abs() <= 1.0);
        }
        let b = generate_scenario(&spec, seed).unwrap();
        prop_assert_eq!(a.table.rows(), b.table.rows());
        prop_assert_eq!(a.labels, b.labels);
    }
}
