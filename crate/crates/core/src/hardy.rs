//! Hardy-space numerics on the unit circle.
//!
//! Boundary integrals use the normalized measure `dθ / 2π`, discretized on the
//! midpoint grid `θ_j = 2π (j + 1/2) / M`, so `θ = 0` is never a node.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::measure::{Measure, SingularityHint};
use crate::special::neumaier_sum;

pub const DEFAULT_GRID: usize = 8192;
pub const PROBE_GRID: usize = 65536;

/// Polynomial `Σ a_n z^n` with complex coefficients.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoefficientVector {
    coeffs: Vec<Complex64>,
}

impl CoefficientVector {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArguments(
                "coefficient vector must be nonempty".into(),
            ));
        }
        if coeffs
            .iter()
            .any(|c| !(c.re.is_finite() && c.im.is_finite()))
        {
            return Err(Error::InvalidArguments(
                "coefficients must be finite".into(),
            ));
        }
        Ok(CoefficientVector { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn constant(c: f64) -> Self {
        CoefficientVector {
            coeffs: vec![Complex64::new(c, 0.0)],
        }
    }

    /// `e_n(z) = z^n`.
    pub fn monomial(n: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
        coeffs[n] = Complex64::new(1.0, 0.0);
        CoefficientVector { coeffs }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Index of the last stored coefficient.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient `ℓ²` norm, which is the `H²` norm.
    pub fn l2_norm(&self) -> f64 {
        neumaier_sum(self.coeffs.iter().map(|c| c.norm_sqr())).sqrt()
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Coefficients zero-padded or cut to `len`.
    pub fn padded(&self, len: usize) -> Vec<Complex64> {
        let mut v = self.coeffs.clone();
        v.resize(len, Complex64::new(0.0, 0.0));
        v
    }
}

/// Midpoint grid on the unit circle. Keeps `1 - ζ_j` in the cancellation-free
/// form `2 sin²(θ/2) - i sin θ`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryGrid {
    m: usize,
    points: Vec<Complex64>,
    complements: Vec<Complex64>,
}

impl BoundaryGrid {
    pub fn new(m: usize) -> Result<Self> {
        if m < 4 {
            return Err(Error::InvalidParameter(format!(
                "boundary grid needs M >= 4, got {m}"
            )));
        }
        let (points, complements) = (0..m)
            .map(|j| {
                let theta = 2.0 * PI * (j as f64 + 0.5) / m as f64;
                let half = (0.5 * theta).sin();
                (
                    Complex64::new(theta.cos(), theta.sin()),
                    Complex64::new(2.0 * half * half, -theta.sin()),
                )
            })
            .unzip();
        Ok(BoundaryGrid {
            m,
            points,
            complements,
        })
    }

    pub fn len(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        self.m == 0
    }

    pub fn theta(&self, j: usize) -> f64 {
        2.0 * PI * (j as f64 + 0.5) / self.m as f64
    }

    /// Nodes `ζ_j`.
    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    /// `1 - ζ_j`.
    pub fn complements(&self) -> &[Complex64] {
        &self.complements
    }
}

/// Analytic function on the disc with boundary values on the grid.
#[derive(Debug, Clone, PartialEq)]
pub enum BoundaryFunction {
    Polynomial(CoefficientVector),
    /// `(1 - z)^(-a)`, principal branch.
    PowerSingularity {
        a: f64,
    },
    /// `scale / (1 - conj(w) z)`.
    Kernel {
        w: Complex64,
        scale: f64,
    },
}

impl BoundaryFunction {
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.eval_split(z, Complex64::new(1.0, 0.0) - z)
    }

    /// Evaluation at `z` given `1 - z` computed without cancellation.
    pub fn eval_split(&self, z: Complex64, one_minus_z: Complex64) -> Complex64 {
        match self {
            BoundaryFunction::Polynomial(c) => c.eval(z),
            BoundaryFunction::PowerSingularity { a } => {
                if *a == 0.0 {
                    Complex64::new(1.0, 0.0)
                } else {
                    one_minus_z.powf(-a)
                }
            }
            BoundaryFunction::Kernel { w, scale } => {
                let one = Complex64::new(1.0, 0.0);
                Complex64::new(*scale, 0.0) / (one_minus_z + z * (one - w.conj()))
            }
        }
    }

    /// Exponent `s` with `|f(z)| ~ |1 - z|^(-s)` near `z = 1`.
    pub fn singularity_exponent(&self) -> f64 {
        match self {
            BoundaryFunction::PowerSingularity { a } => *a,
            _ => 0.0,
        }
    }

    pub fn values_on_grid(&self, grid: &BoundaryGrid) -> Vec<Complex64> {
        grid.points()
            .par_iter()
            .zip(grid.complements().par_iter())
            .map(|(&z, &omz)| self.eval_split(z, omz))
            .collect()
    }

    /// `|f(ζ_j)|`, from the closed-form modulus where one exists.
    pub fn modulus_on_grid(&self, grid: &BoundaryGrid) -> Vec<f64> {
        match self {
            BoundaryFunction::PowerSingularity { a } => (0..grid.len())
                .into_par_iter()
                .map(|j| (2.0 * (0.5 * grid.theta(j)).sin()).powf(-a))
                .collect(),
            _ => self.values_on_grid(grid).iter().map(|v| v.norm()).collect(),
        }
    }
}

/// Polynomial values at the grid nodes.
pub fn evaluate_on_grid(f: &CoefficientVector, grid: &BoundaryGrid) -> Vec<Complex64> {
    grid.points().par_iter().map(|&z| f.eval(z)).collect()
}

fn require_p(p: f64) -> Result<()> {
    if !(p >= 1.0 && p.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "H^p norms need finite p >= 1, got {p}"
        )));
    }
    Ok(())
}

/// `((1/M) Σ |f(ζ_j)|^p)^(1/p)` from boundary moduli.
pub fn hp_norm_moduli(moduli: &[f64], p: f64) -> Result<f64> {
    require_p(p)?;
    if moduli.is_empty() {
        return Err(Error::InvalidArguments("no boundary values".into()));
    }
    let mean = neumaier_sum(moduli.iter().map(|m| m.powf(p))) / moduli.len() as f64;
    Ok(mean.powf(1.0 / p))
}

/// `H^p` norm of a polynomial. For `p = 2` the exact coefficient norm is
/// returned, which the grid reproduces only when `M > 2·degree`.
pub fn hp_norm(f: &CoefficientVector, p: f64, grid: &BoundaryGrid) -> Result<f64> {
    require_p(p)?;
    if p == 2.0 {
        if grid.len() <= 2 * f.degree() {
            return Err(Error::GridTooCoarse {
                m: grid.len(),
                required: 2 * f.degree() + 1,
            });
        }
        return Ok(f.l2_norm());
    }
    let moduli: Vec<f64> = evaluate_on_grid(f, grid).iter().map(|v| v.norm()).collect();
    hp_norm_moduli(&moduli, p)
}

/// Grid `H^p` norm of a boundary function.
pub fn hp_norm_boundary(f: &BoundaryFunction, p: f64, grid: &BoundaryGrid) -> Result<f64> {
    require_p(p)?;
    hp_norm_moduli(&f.modulus_on_grid(grid), p)
}

/// `f_a(z) = (1 - z)^(-a)`, `0 <= a < 1`.
pub fn test_function_fa(a: f64) -> Result<BoundaryFunction> {
    if !(0.0..1.0).contains(&a) {
        return Err(Error::InvalidParameter(format!(
            "f_a needs 0 <= a < 1, got {a}"
        )));
    }
    Ok(BoundaryFunction::PowerSingularity { a })
}

/// Taylor coefficients `C(n + a - 1, n)` of `f_a` up to `degree`.
pub fn fa_coefficients(a: f64, degree: usize) -> Result<CoefficientVector> {
    test_function_fa(a)?;
    let mut c = Vec::with_capacity(degree + 1);
    let mut cur = 1.0;
    c.push(cur);
    for n in 1..=degree {
        cur *= (n as f64 - 1.0 + a) / n as f64;
        c.push(cur);
    }
    CoefficientVector::from_real(&c)
}

/// `k_w(z) = (1 - |w|²)^(1/q) / (1 - conj(w) z)` and its Taylor coefficients up to `degree`.
pub fn kernel_kw(
    w: Complex64,
    q: f64,
    degree: usize,
) -> Result<(BoundaryFunction, CoefficientVector)> {
    if w.norm().is_nan() || w.norm() >= 1.0 {
        return Err(Error::InvalidParameter(format!(
            "kernel point must satisfy |w| < 1, got {w}"
        )));
    }
    if q.is_nan() || q <= 1.0 {
        return Err(Error::InvalidParameter(format!(
            "kernel exponent q must exceed 1, got {q}"
        )));
    }
    let scale = (1.0 - w.norm_sqr()).powf(1.0 / q);
    let wc = w.conj();
    let mut coeffs = Vec::with_capacity(degree + 1);
    let mut cur = Complex64::new(scale, 0.0);
    for _ in 0..=degree {
        coeffs.push(cur);
        cur *= wc;
    }
    Ok((
        BoundaryFunction::Kernel { w, scale },
        CoefficientVector::new(coeffs)?,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KernelNorm {
    pub r: f64,
    pub norm: f64,
    /// `norm / log(e / (1 - r))`.
    pub ratio: f64,
}

/// Grid `H¹` norm of `1 / (1 - r z)`.
pub fn h1_kernel_norm(r: f64, grid: &BoundaryGrid) -> Result<KernelNorm> {
    if !(0.0..1.0).contains(&r) {
        return Err(Error::InvalidParameter(format!(
            "kernel radius must lie in [0, 1), got {r}"
        )));
    }
    let required = (64.0 / (1.0 - r)).ceil() as usize;
    if grid.len() < required {
        return Err(Error::GridTooCoarse {
            m: grid.len(),
            required,
        });
    }
    let f = BoundaryFunction::Kernel {
        w: Complex64::new(r, 0.0),
        scale: 1.0,
    };
    let norm = hp_norm_boundary(&f, 1.0, grid)?;
    Ok(KernelNorm {
        r,
        norm,
        ratio: norm / (1.0 - (1.0 - r).ln()),
    })
}

/// Two sides of an inequality `lhs <= rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InequalityCheck {
    pub lhs: f64,
    pub rhs: f64,
    /// False when a quadrature in either side stopped at its node cap.
    pub converged: bool,
}

impl InequalityCheck {
    pub fn holds(&self, slack: f64) -> bool {
        self.lhs <= self.rhs + slack
    }
}

/// `Σ |a_n| / (n + 1)` against `π ‖f‖_{H¹}`.
pub fn hardy_inequality_check(
    f: &CoefficientVector,
    grid: &BoundaryGrid,
) -> Result<InequalityCheck> {
    let lhs = neumaier_sum(
        f.coeffs()
            .iter()
            .enumerate()
            .map(|(n, c)| c.norm() / (n as f64 + 1.0)),
    );
    let rhs = PI * hp_norm(f, 1.0, grid)?;
    Ok(InequalityCheck {
        lhs,
        rhs,
        converged: true,
    })
}

/// `∫_0^1 |f(s)| ds` against `π ‖f‖_{H¹}`.
pub fn fejer_riesz_check(f: &BoundaryFunction, grid: &BoundaryGrid) -> Result<InequalityCheck> {
    let hint = SingularityHint::new(0.0, -f.singularity_exponent());
    let seg = Measure::lebesgue().integrate_detailed(
        |s: f64| {
            f.eval_split(Complex64::new(s, 0.0), Complex64::new(1.0 - s, 0.0))
                .norm()
        },
        hint,
    )?;
    let rhs = PI * hp_norm_boundary(f, 1.0, grid)?;
    Ok(InequalityCheck {
        lhs: seg.value,
        rhs,
        converged: seg.converged,
    })
}

/// `|f(z)|` against `(2 / (1 - |z|))^(1/p) ‖f‖_{H^p}`.
pub fn growth_estimate_check(
    f: &CoefficientVector,
    p: f64,
    z: Complex64,
    grid: &BoundaryGrid,
) -> Result<InequalityCheck> {
    if z.norm().is_nan() || z.norm() >= 1.0 {
        return Err(Error::InvalidParameter(format!(
            "growth estimate needs |z| < 1, got {z}"
        )));
    }
    let norm = hp_norm(f, p, grid)?;
    let rhs = (2.0 / (1.0 - z.norm())).powf(1.0 / p) * norm;
    Ok(InequalityCheck {
        lhs: f.eval(z).norm(),
        rhs,
        converged: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::ln_gamma;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn grid_nodes() {
        let g = BoundaryGrid::new(8).unwrap();
        assert!((g.theta(0) - PI / 8.0).abs() < 1e-15);
        for (z, omz) in g.points().iter().zip(g.complements()) {
            assert!((c(1.0, 0.0) - z - omz).norm() < 1e-15);
        }
        assert!(BoundaryGrid::new(3).is_err());
    }

    #[test]
    fn evaluation_on_grid() {
        let g = BoundaryGrid::new(32).unwrap();
        let k = evaluate_on_grid(&CoefficientVector::constant(2.5), &g);
        assert!(k.iter().all(|v| *v == c(2.5, 0.0)));
        let e1 = evaluate_on_grid(&CoefficientVector::monomial(1), &g);
        assert_eq!(e1, g.points());
        // Horner against explicit powers
        let f = CoefficientVector::new(
            (0..9)
                .map(|n| c(1.0 / (n + 1) as f64, (n as f64).sin()))
                .collect(),
        )
        .unwrap();
        for (z, v) in g.points().iter().zip(evaluate_on_grid(&f, &g)) {
            let direct: Complex64 = f
                .coeffs()
                .iter()
                .enumerate()
                .map(|(n, a)| a * z.powu(n as u32))
                .sum();
            assert!((v - direct).norm() <= 1e-13 * direct.norm().max(1.0));
        }
    }

    #[test]
    fn norms_of_simple_functions() {
        let g = BoundaryGrid::new(64).unwrap();
        for p in [1.0, 1.5, 2.0, 4.0] {
            assert!(
                (hp_norm(&CoefficientVector::constant(-3.0), p, &g).unwrap() - 3.0).abs() < 1e-14
            );
        }
        assert_eq!(
            hp_norm(&CoefficientVector::from_real(&[3.0, 4.0]).unwrap(), 2.0, &g).unwrap(),
            5.0
        );
        let f = CoefficientVector::from_real(&[1.0; 40]).unwrap();
        assert!(matches!(
            hp_norm(&f, 2.0, &g),
            Err(Error::GridTooCoarse { .. })
        ));
        assert!(hp_norm(&f, 0.5, &g).is_err());
    }

    #[test]
    fn discrete_parseval_and_power_means() {
        let f = CoefficientVector::new(
            (0..20)
                .map(|n| c((n as f64 * 0.7).cos(), 1.0 / (n + 2) as f64))
                .collect(),
        )
        .unwrap();
        let g = BoundaryGrid::new(41).unwrap();
        let grid2 = hp_norm_boundary(&BoundaryFunction::Polynomial(f.clone()), 2.0, &g).unwrap();
        assert!((grid2 - f.l2_norm()).abs() < 1e-12);
        let norms: Vec<f64> = [1.0, 1.5, 2.5, 3.0]
            .iter()
            .map(|&p| hp_norm(&f, p, &g).unwrap())
            .collect();
        assert!(norms.windows(2).all(|w| w[0] <= w[1] + 1e-15));
    }

    #[test]
    fn fa_closed_forms() {
        let f0 = test_function_fa(0.0).unwrap();
        let g = BoundaryGrid::new(16).unwrap();
        assert!(f0.values_on_grid(&g).iter().all(|v| *v == c(1.0, 0.0)));
        let f = test_function_fa(0.3).unwrap();
        // θ = π
        assert!((f.eval(c(-1.0, 0.0)).norm() - 2f64.powf(-0.3)).abs() < 1e-15);
        let big = BoundaryGrid::new(4096).unwrap();
        for (m, v) in f.modulus_on_grid(&big).iter().zip(f.values_on_grid(&big)) {
            assert!((m - v.norm()).abs() <= 1e-12 * m);
        }
        assert!(test_function_fa(1.0).is_err());
        let coeffs = fa_coefficients(0.3, 3).unwrap();
        assert!((coeffs.coeffs()[2].re - 0.3 * 1.3 / 2.0).abs() < 1e-16);
    }

    #[test]
    fn fa_h2_norm_against_gamma_closed_form() {
        // ‖f_a‖²_{H²} = Σ C(n+a-1, n)² = Γ(1 - 2a) / Γ(1 - a)²; the midpoint sum
        // of the |θ|^(-2a) singularity converges like M^(2a-1).
        let a = 0.25;
        let exact = (ln_gamma(1.0 - 2.0 * a) - 2.0 * ln_gamma(1.0 - a))
            .exp()
            .sqrt();
        let f = test_function_fa(a).unwrap();
        let e1 =
            (hp_norm_boundary(&f, 2.0, &BoundaryGrid::new(2048).unwrap()).unwrap() - exact).abs();
        let e2 =
            (hp_norm_boundary(&f, 2.0, &BoundaryGrid::new(8192).unwrap()).unwrap() - exact).abs();
        // quadrupling M halves the error
        assert!((e1 / e2 - 2.0).abs() < 0.1 && e2 < 3e-3, "{e1} {e2}");
        let series = fa_coefficients(a, 65536).unwrap().l2_norm();
        assert!((series - exact).abs() < 1e-3);
    }

    #[test]
    fn fa_norm_grows_near_membership_boundary() {
        // the grid sum only sees the log M part of the divergence, so the
        // growth factor at M = 65536 is about 1.4 to 1.5
        let g = BoundaryGrid::new(PROBE_GRID).unwrap();
        for p in [1.0, 2.0] {
            let norms: Vec<f64> = [0.1, 0.01, 1e-3]
                .iter()
                .map(|d| hp_norm_boundary(&test_function_fa(1.0 / p - d).unwrap(), p, &g).unwrap())
                .collect();
            assert!(norms.windows(2).all(|w| w[0] < w[1]));
            assert!(norms[2] >= 1.4 * norms[0], "p={p}: {norms:?}");
        }
    }

    #[test]
    fn kernels() {
        let g = BoundaryGrid::new(64).unwrap();
        let (k0, c0) = kernel_kw(c(0.0, 0.0), 3.0, 4).unwrap();
        assert!((hp_norm_boundary(&k0, 1.3, &g).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(c0.coeffs()[0], c(1.0, 0.0));
        let (_, c9) = kernel_kw(c(0.9, 0.0), 2.0, 3).unwrap();
        assert!((c9.coeffs()[1].re - 0.19f64.sqrt() * 0.9).abs() < 1e-16);
        for w in [c(0.5, 0.0), c(0.3, -0.6), c(0.999, 0.0)] {
            let (_, cw) = kernel_kw(w, 2.0, 40000).unwrap();
            assert!((cw.l2_norm() - 1.0).abs() < 1e-12, "{w}");
        }
        let (kw, cw) = kernel_kw(c(0.2, 0.4), 2.0, 80).unwrap();
        for (z, v) in g.points().iter().zip(kw.values_on_grid(&g)) {
            assert!((cw.eval(*z) - v).norm() < 1e-13);
        }
        assert!(kernel_kw(c(1.0, 0.0), 2.0, 1).is_err());
        assert!(kernel_kw(c(0.5, 0.0), 1.0, 1).is_err());
    }

    #[test]
    fn h1_kernel_norms() {
        let g = BoundaryGrid::new(DEFAULT_GRID).unwrap();
        assert!((h1_kernel_norm(0.0, &g).unwrap().norm - 1.0).abs() < 1e-15);
        let k9 = h1_kernel_norm(0.9, &g).unwrap();
        assert!((0.2..=5.0).contains(&k9.ratio));
        assert!(h1_kernel_norm(0.99, &g).unwrap().norm > k9.norm);
        assert!(matches!(
            h1_kernel_norm(0.999, &g),
            Err(Error::GridTooCoarse {
                m: 8192,
                required: 64000
            })
        ));
    }

    #[test]
    fn classical_inequalities() {
        let g = BoundaryGrid::new(256).unwrap();
        let one = hardy_inequality_check(&CoefficientVector::constant(1.0), &g).unwrap();
        assert!((one.lhs - 1.0).abs() < 1e-15 && (one.rhs - PI).abs() < 1e-14);
        let e5 = hardy_inequality_check(&CoefficientVector::monomial(5), &g).unwrap();
        assert!((e5.lhs - 1.0 / 6.0).abs() < 1e-15 && (e5.rhs - PI).abs() < 1e-13);

        let fr1 = fejer_riesz_check(
            &BoundaryFunction::Polynomial(CoefficientVector::constant(1.0)),
            &g,
        )
        .unwrap();
        assert!((fr1.lhs - 1.0).abs() < 1e-14 && (fr1.rhs - PI).abs() < 1e-14);
        let half = BoundaryFunction::Kernel {
            w: c(0.5, 0.0),
            scale: 1.0,
        };
        let fr = fejer_riesz_check(&half, &g).unwrap();
        assert!((fr.lhs - 2.0 * 2f64.ln()).abs() < 1e-13 && fr.holds(0.0));
        let k9 = BoundaryFunction::Kernel {
            w: c(0.9, 0.0),
            scale: 1.0,
        };
        assert!(
            fejer_riesz_check(&k9, &BoundaryGrid::new(DEFAULT_GRID).unwrap())
                .unwrap()
                .holds(0.0)
        );

        let ge =
            growth_estimate_check(&CoefficientVector::constant(1.0), 2.0, c(0.0, 0.0), &g).unwrap();
        assert!((ge.lhs - 1.0).abs() < 1e-15 && (ge.rhs - 2f64.sqrt()).abs() < 1e-15);
        let ge1 =
            growth_estimate_check(&CoefficientVector::monomial(1), 2.0, c(0.5, 0.0), &g).unwrap();
        assert!((ge1.lhs - 0.5).abs() < 1e-15 && (ge1.rhs - 2.0).abs() < 1e-15);
        assert!(
            growth_estimate_check(&CoefficientVector::monomial(1), 2.0, c(1.0, 0.0), &g).is_err()
        );
    }
}
