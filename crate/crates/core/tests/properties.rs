//! Property tests over randomly generated measures.

use gamma_mu::{
    composition_matrix, gamma_matrix, hausdorff_matrix, hausdorff_matrix_via_differences,
    parse_measure, Atom, JacobiDensity, Measure,
};
use proptest::prelude::*;

fn atom() -> impl Strategy<Value = Atom> {
    (0.02f64..0.98, 0.05f64..2.0).prop_map(|(t, w)| Atom { t, w })
}

fn density() -> impl Strategy<Value = JacobiDensity> {
    (
        -0.9f64..2.0,
        -0.9f64..2.0,
        prop::collection::vec(0.1f64..2.0, 1..3),
    )
        .prop_map(|(a, b, poly)| JacobiDensity::new(a, b, poly).unwrap())
}

fn measure() -> impl Strategy<Value = Measure> {
    (
        prop::collection::vec(atom(), 0..3),
        prop::collection::vec(density(), 0..2),
    )
        .prop_filter("nonzero measure", |(a, d)| !(a.is_empty() && d.is_empty()))
        .prop_map(|(a, d)| Measure::new(a, d).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn hausdorff_rows_sum_to_mass(mu in measure()) {
        let mass = mu.total_mass().unwrap();
        let m = hausdorff_matrix(&mu, 24).unwrap();
        for n in 0..24 {
            let sum: f64 = m.row(n).iter().sum();
            prop_assert!((sum - mass).abs() <= 1e-10 * mass, "row {} sums to {} not {}", n, sum, mass);
        }
    }

    #[test]
    fn gamma_is_symmetric_nonnegative_and_starts_at_mass(mu in measure()) {
        let g = gamma_matrix(&mu, 24).unwrap();
        prop_assert!((g.get(0, 0) - mu.total_mass().unwrap()).abs() <= 1e-12 * g.get(0, 0));
        prop_assert!(g.entries().iter().all(|&x| x >= 0.0));
        // γ_nk and γ_kn are different integrals, so symmetry holds only for symmetric measures.
        let reflected = Measure::new(
            mu.atoms().iter().map(|a| Atom { t: 1.0 - a.t, w: a.w }).collect(),
            Vec::new(),
        ).unwrap();
        if mu.densities().is_empty() {
            let r = gamma_matrix(&reflected, 24).unwrap();
            for n in 0..24 {
                for k in 0..24 {
                    let (a, b) = (g.get(n, k), r.get(k, n));
                    prop_assert!((a - b).abs() <= 1e-12 * a.max(b).max(1e-300));
                }
            }
        }
    }

    #[test]
    fn difference_path_agrees_at_small_orders(mu in measure()) {
        let a = hausdorff_matrix(&mu, 12).unwrap();
        let b = hausdorff_matrix_via_differences(&mu.moments(12).unwrap(), 12).unwrap();
        prop_assert!(a.max_abs_diff(&b) <= 1e-9 * mu.total_mass().unwrap().max(1.0));
    }

    #[test]
    fn moments_are_totally_monotone(mu in measure()) {
        prop_assert!(mu.moments(16).unwrap().is_totally_monotone(1e-10));
    }

    #[test]
    fn json_round_trip_preserves_moments(mu in measure()) {
        let back = parse_measure(&mu.to_json().to_string()).unwrap();
        let (a, b) = (mu.moments(20).unwrap(), back.moments(20).unwrap());
        for (x, y) in a.values().iter().zip(b.values()) {
            prop_assert!((x - y).abs() <= 1e-15);
        }
    }

    #[test]
    fn composition_columns_are_stochastic_in_t(t in 0.01f64..0.99) {
        // Σ_n C(n+k, n) t^(k+1) (1-t)^n = 1 for each column k; the section keeps most of it.
        let m = composition_matrix(t, 256).unwrap();
        let first: f64 = (0..256).map(|n| m.get(n, 0)).sum::<f64>() * t;
        prop_assert!(first <= 1.0 + 1e-12);
        prop_assert!(m.transpose().max_abs_diff(&composition_matrix(1.0 - t, 256).unwrap()) <= 1e-13);
    }
}
