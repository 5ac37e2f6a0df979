//! Action of `Γ_μ`, its adjoint and `T_t` on coefficient vectors and on
//! boundary values.
//!
//! `T_t f = w_t · f∘φ_t` with `φ_t(z) = t / (1 - (1-t) z)` and
//! `w_t(z) = 1 / (1 - (1-t) z)`; `Γ_μ f = ∫ T_t f dμ(t)`.

use std::sync::OnceLock;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hardy::{BoundaryFunction, BoundaryGrid, CoefficientVector};
use crate::matrices::{gamma_matrix, OperatorMatrix};
use crate::measure::{Integral, Measure, SingularityHint};

/// `Γ_μ` truncated to `N × N`, with its matrix built on first use.
#[derive(Debug)]
pub struct OperatorHandle {
    measure: Measure,
    n: usize,
    grid: BoundaryGrid,
    matrix: OnceLock<OperatorMatrix>,
}

impl OperatorHandle {
    pub fn new(measure: Measure, n: usize, grid: BoundaryGrid) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArguments(
                "truncation N must be at least 1".into(),
            ));
        }
        Ok(OperatorHandle {
            measure,
            n,
            grid,
            matrix: OnceLock::new(),
        })
    }

    pub fn measure(&self) -> &Measure {
        &self.measure
    }

    pub fn truncation(&self) -> usize {
        self.n
    }

    pub fn grid(&self) -> &BoundaryGrid {
        &self.grid
    }

    pub fn matrix(&self) -> Result<&OperatorMatrix> {
        if let Some(m) = self.matrix.get() {
            return Ok(m);
        }
        let built = gamma_matrix(&self.measure, self.n)?;
        Ok(self.matrix.get_or_init(|| built))
    }

    fn check_degree(&self, f: &CoefficientVector) -> Result<()> {
        if f.degree() >= self.n {
            return Err(Error::TruncationMismatch {
                degree: f.degree(),
                n: self.n,
            });
        }
        Ok(())
    }
}

/// `Γ_N a`, coefficients `0..N`.
pub fn apply_gamma_coefficients(
    h: &OperatorHandle,
    f: &CoefficientVector,
) -> Result<CoefficientVector> {
    h.check_degree(f)?;
    CoefficientVector::new(h.matrix()?.mul_vec_complex(&f.padded(h.truncation())))
}

/// `Γ_Nᵀ a`, the truncated adjoint.
pub fn apply_gamma_adjoint_coefficients(
    h: &OperatorHandle,
    f: &CoefficientVector,
) -> Result<CoefficientVector> {
    h.check_degree(f)?;
    CoefficientVector::new(
        h.matrix()?
            .transpose_mul_vec_complex(&f.padded(h.truncation())),
    )
}

/// `T_t f (z)` for `z` with `1 - z = one_minus_z`.
fn t_value(f: &BoundaryFunction, t: f64, z: Complex64, one_minus_z: Complex64) -> Complex64 {
    // 1 - (1-t) z = (1 - z) + t z and 1 - φ_t(z) = (1-t)(1 - z) / (1 - (1-t) z)
    let d = one_minus_z + z * t;
    f.eval_split(Complex64::new(t, 0.0) / d, one_minus_z * (1.0 - t) / d) / d
}

/// `T_t f` at the grid nodes.
pub fn apply_t_boundary(
    t: f64,
    f: &BoundaryFunction,
    grid: &BoundaryGrid,
) -> Result<Vec<Complex64>> {
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "composition parameter t = {t} must lie in (0, 1)"
        )));
    }
    let values: Vec<Complex64> = grid
        .points()
        .par_iter()
        .zip(grid.complements().par_iter())
        .map(|(&z, &omz)| t_value(f, t, z, omz))
        .collect();
    if let Some(j) = values
        .iter()
        .position(|v| !(v.re.is_finite() && v.im.is_finite()))
    {
        return Err(Error::EvaluationFailure(format!(
            "T_t f is not finite at node {j}"
        )));
    }
    Ok(values)
}

/// Boundary values of `Γ_μ f` together with the nodes whose quadrature hit the node cap.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundaryApplication {
    pub values: Vec<Complex64>,
    pub unconverged: Vec<usize>,
}

/// `∫ T_t f (ζ_j) dμ(t)` node by node.
///
/// The quadrature hint is `(1-t)^(-s)` with `s` the singularity exponent of
/// `f` at 1, the only endpoint singularity of `t ↦ T_t f(ζ)` for `ζ ≠ 1`.
pub fn gamma_boundary_values(
    mu: &Measure,
    f: &BoundaryFunction,
    grid: &BoundaryGrid,
) -> Result<BoundaryApplication> {
    let hint = SingularityHint::new(0.0, -f.singularity_exponent());
    let results: Vec<Integral<Complex64>> = grid
        .points()
        .par_iter()
        .zip(grid.complements().par_iter())
        .map(|(&z, &omz)| mu.integrate_detailed(|t: f64| t_value(f, t, z, omz), hint))
        .collect::<Result<_>>()?;
    let unconverged = results
        .iter()
        .enumerate()
        .filter(|(_, r)| !r.converged)
        .map(|(j, _)| j)
        .collect();
    Ok(BoundaryApplication {
        values: results.into_iter().map(|r| r.value).collect(),
        unconverged,
    })
}

pub fn apply_gamma_boundary(
    h: &OperatorHandle,
    f: &BoundaryFunction,
) -> Result<BoundaryApplication> {
    gamma_boundary_values(&h.measure, f, &h.grid)
}

/// Taylor coefficients `∫ (1-t)^n dμ`, `n < size`, of `Γ_μ(1)`.
pub fn gamma_of_one(mu: &Measure, size: usize) -> Result<CoefficientVector> {
    if size == 0 {
        return Err(Error::InvalidArguments("size must be at least 1".into()));
    }
    let c = (0..size)
        .map(|n| mu.ln_kernel_integral(0.0, n as f64).map(f64::exp))
        .collect::<Result<Vec<_>>>()?;
    CoefficientVector::from_real(&c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hardy::evaluate_on_grid;
    use crate::matrices::composition_matrix;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn handle(mu: Measure, n: usize, m: usize) -> OperatorHandle {
        OperatorHandle::new(mu, n, BoundaryGrid::new(m).unwrap()).unwrap()
    }

    #[test]
    fn coefficient_action() {
        let h = handle(Measure::lebesgue(), 8, 16);
        let out = apply_gamma_coefficients(&h, &CoefficientVector::constant(1.0)).unwrap();
        for (n, v) in out.coeffs().iter().enumerate() {
            assert!((v.re - 1.0 / (n + 1) as f64).abs() < 1e-15);
        }
        let z = handle(Measure::zero(), 5, 16);
        let f = CoefficientVector::from_real(&[1.0, -2.0, 3.0]).unwrap();
        assert!(apply_gamma_coefficients(&z, &f)
            .unwrap()
            .coeffs()
            .iter()
            .all(|v| v.norm() == 0.0));

        let d = handle(Measure::dirac(0.5).unwrap(), 12, 16);
        let out = apply_gamma_coefficients(&d, &CoefficientVector::monomial(1)).unwrap();
        for (n, v) in out.coeffs().iter().enumerate() {
            assert!((v.re - (n + 1) as f64 * 0.5f64.powi(n as i32 + 1)).abs() < 1e-15);
        }
        assert!(matches!(
            apply_gamma_coefficients(&d, &CoefficientVector::monomial(12)),
            Err(Error::TruncationMismatch { degree: 12, n: 12 })
        ));
    }

    #[test]
    fn cached_matrix_matches_fresh_build() {
        let mu = Measure::jacobi(0.0, 1.0, vec![2.0]).unwrap();
        let h = handle(mu.clone(), 20, 16);
        let first = h.matrix().unwrap() as *const OperatorMatrix;
        assert_eq!(h.matrix().unwrap(), &gamma_matrix(&mu, 20).unwrap());
        assert_eq!(first, h.matrix().unwrap() as *const OperatorMatrix);
    }

    #[test]
    fn adjoint() {
        let f = CoefficientVector::new(
            (0..6)
                .map(|n| Complex64::new(1.0 / (n + 1) as f64, n as f64))
                .collect(),
        )
        .unwrap();
        let half = handle(Measure::dirac(0.5).unwrap(), 10, 16);
        let a = apply_gamma_adjoint_coefficients(&half, &f).unwrap();
        let b = apply_gamma_coefficients(&half, &f).unwrap();
        for (x, y) in a.coeffs().iter().zip(b.coeffs()) {
            assert!((x - y).norm() < 1e-15);
        }
        let leb = handle(Measure::lebesgue(), 10, 16);
        let e0 = CoefficientVector::constant(1.0);
        assert_eq!(
            apply_gamma_adjoint_coefficients(&leb, &e0).unwrap(),
            apply_gamma_coefficients(&leb, &e0).unwrap()
        );

        // two atoms: Γ* = Σ w T_{1-t}
        let mu = Measure::weighted_dirac(0.3, 0.25)
            .unwrap()
            .plus(&Measure::weighted_dirac(0.8, 2.0).unwrap());
        let h = handle(mu, 10, 16);
        let got = apply_gamma_adjoint_coefficients(&h, &f).unwrap();
        let padded = f.padded(10);
        let t1 = composition_matrix(0.7, 10)
            .unwrap()
            .mul_vec_complex(&padded);
        let t2 = composition_matrix(0.2, 10)
            .unwrap()
            .mul_vec_complex(&padded);
        for (k, v) in got.coeffs().iter().enumerate() {
            assert!((v - (t1[k] * 0.25 + t2[k] * 2.0)).norm() < 1e-10);
        }
    }

    #[test]
    fn t_boundary() {
        let g = BoundaryGrid::new(64).unwrap();
        let one = BoundaryFunction::Polynomial(CoefficientVector::constant(1.0));
        let t = 0.35;
        for (v, z) in apply_t_boundary(t, &one, &g)
            .unwrap()
            .iter()
            .zip(g.points())
        {
            assert!((v - c(1.0) / (c(1.0) - z * (1.0 - t))).norm() < 1e-14);
        }
        // polynomial input against the coefficient matrix; the image series is
        // truncated where its tail is below 1e-12
        let f = CoefficientVector::from_real(&[0.5, -1.0, 0.25, 0.5]).unwrap();
        let n = 400;
        let img = CoefficientVector::new(
            composition_matrix(t, n)
                .unwrap()
                .mul_vec_complex(&f.padded(n)),
        )
        .unwrap();
        let direct = apply_t_boundary(t, &BoundaryFunction::Polynomial(f.clone()), &g).unwrap();
        for (a, b) in direct.iter().zip(evaluate_on_grid(&img, &g)) {
            assert!((a - b).norm() < 1e-10);
        }
        // t near 1 gives f near f(1)
        let lip = CoefficientVector::from_real(&[0.5, -0.25, 0.125]).unwrap();
        let near = apply_t_boundary(0.999, &BoundaryFunction::Polynomial(lip.clone()), &g).unwrap();
        let f1 = lip.eval(c(1.0));
        assert!(near.iter().all(|v| (v - f1).norm() < 1e-2));
        assert!(apply_t_boundary(0.0, &one, &g).is_err());
    }

    #[test]
    fn boundary_action_lebesgue_on_one() {
        let g = BoundaryGrid::new(256).unwrap();
        let h = OperatorHandle::new(Measure::lebesgue(), 4, g.clone()).unwrap();
        let out = apply_gamma_boundary(
            &h,
            &BoundaryFunction::Polynomial(CoefficientVector::constant(1.0)),
        )
        .unwrap();
        assert!(out.unconverged.is_empty());
        for ((v, z), omz) in out.values.iter().zip(g.points()).zip(g.complements()) {
            let exact = -omz.ln() / z;
            assert!((v - exact).norm() < 1e-10 * exact.norm(), "{v} {exact}");
        }
    }

    #[test]
    fn boundary_action_of_an_atom_is_t_t() {
        let g = BoundaryGrid::new(32).unwrap();
        let f = BoundaryFunction::PowerSingularity { a: 0.4 };
        let h =
            OperatorHandle::new(Measure::weighted_dirac(0.3, 1.5).unwrap(), 1, g.clone()).unwrap();
        let got = apply_gamma_boundary(&h, &f).unwrap();
        let tt = apply_t_boundary(0.3, &f, &g).unwrap();
        for (a, b) in got.values.iter().zip(tt) {
            assert_eq!(*a, b * 1.5);
        }
    }

    fn max_path_gap(mu: Measure, f: &CoefficientVector, n: usize, g: &BoundaryGrid) -> f64 {
        let h = OperatorHandle::new(mu, n, g.clone()).unwrap();
        let series = evaluate_on_grid(&apply_gamma_coefficients(&h, f).unwrap(), g);
        let integral = apply_gamma_boundary(&h, &BoundaryFunction::Polynomial(f.clone())).unwrap();
        assert!(integral.unconverged.is_empty());
        series
            .iter()
            .zip(&integral.values)
            .fold(0.0, |m, (a, b)| m.max((a - b).norm()))
    }

    #[test]
    fn representation_equivalence_small() {
        let g = BoundaryGrid::new(64).unwrap();
        let f = CoefficientVector::from_real(&[1.0, 0.5, -0.25, 0.125, 2.0]).unwrap();
        assert!(max_path_gap(Measure::dirac(0.5).unwrap(), &f, 160, &g) < 1e-12);
        // with mass near t = 0 the image coefficients decay like 1/n and the
        // truncated series converges on the circle at the same rate
        let mu = Measure::jacobi(0.0, 1.0, vec![2.0]).unwrap();
        let coarse = max_path_gap(mu.clone(), &f, 200, &g);
        let fine = max_path_gap(mu, &f, 800, &g);
        assert!(fine < coarse && (coarse / fine - 4.0).abs() < 1.0);
    }

    #[test]
    fn gamma_of_one_columns() {
        let leb = gamma_of_one(&Measure::lebesgue(), 6).unwrap();
        let half = gamma_of_one(&Measure::dirac(0.5).unwrap(), 6).unwrap();
        let lin = gamma_of_one(&Measure::jacobi(0.0, 1.0, vec![2.0]).unwrap(), 6).unwrap();
        for n in 0..6 {
            assert!((leb.coeffs()[n].re - 1.0 / (n + 1) as f64).abs() < 1e-15);
            assert!((half.coeffs()[n].re - 0.5f64.powi(n as i32)).abs() < 1e-16);
            assert!((lin.coeffs()[n].re - 2.0 / (n + 2) as f64).abs() < 1e-15);
        }
    }
}
