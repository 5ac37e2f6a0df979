//! Fixtures shared by the benchmarks.

use gamma_mu::{parse_measure, BoundaryFunction, BoundaryGrid, CoefficientVector, Measure};

/// Measures with atoms, a smooth density and an endpoint-singular density.
pub fn fixture_measures() -> Vec<(&'static str, Measure)> {
    [
        ("lebesgue", "lebesgue"),
        ("dirac", "dirac:0.5"),
        ("jacobi", "jacobi:a=0.5,b=-0.3"),
    ]
    .into_iter()
    .map(|(name, spec)| (name, parse_measure(spec).expect("fixture measures parse")))
    .collect()
}

/// `Σ z^n / (n + 1)` up to `degree`.
pub fn fixture_polynomial(degree: usize) -> CoefficientVector {
    let c: Vec<f64> = (0..=degree).map(|n| 1.0 / (n as f64 + 1.0)).collect();
    CoefficientVector::from_real(&c).expect("finite coefficients")
}

pub fn fixture_boundary(degree: usize) -> BoundaryFunction {
    BoundaryFunction::Polynomial(fixture_polynomial(degree))
}

pub fn grid(m: usize) -> BoundaryGrid {
    BoundaryGrid::new(m).expect("grid size is valid")
}
