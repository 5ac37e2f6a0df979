use std::ops::{Add, Mul};

use num_complex::Complex64;

use super::{JacobiDensity, Measure};
use crate::error::{Endpoint, Error, Result};
use crate::quadrature::{rule, GaussJacobi};
use crate::special::{ln_beta, log_add_exp};

const FIRST_RULE: usize = 128;
const MAX_RULE: usize = 2048;
const STOP_TOL: f64 = 1e-12;

/// Endpoint behaviour of an integrand: `g(t) ~ t^left (1 - t)^right` times a
/// function that extends continuously to `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SingularityHint {
    pub left: f64,
    pub right: f64,
}

impl SingularityHint {
    pub const NONE: SingularityHint = SingularityHint {
        left: 0.0,
        right: 0.0,
    };

    pub fn new(left: f64, right: f64) -> Self {
        SingularityHint { left, right }
    }
}

/// Values that can be integrated: real or complex.
pub trait Quantity: Copy + Send + Sync + Add<Output = Self> + Mul<f64, Output = Self> {
    const ZERO: Self;
    fn magnitude(self) -> f64;
    fn is_finite_value(self) -> bool;
}

impl Quantity for f64 {
    const ZERO: Self = 0.0;
    fn magnitude(self) -> f64 {
        self.abs()
    }
    fn is_finite_value(self) -> bool {
        self.is_finite()
    }
}

impl Quantity for Complex64 {
    const ZERO: Self = Complex64 { re: 0.0, im: 0.0 };
    fn magnitude(self) -> f64 {
        self.norm()
    }
    fn is_finite_value(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

/// Result of a quadrature run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral<V> {
    pub value: V,
    /// Size of the last Gauss-Jacobi rule used (0 for purely atomic measures).
    pub nodes: usize,
    /// False when the node cap was hit before successive estimates agreed.
    pub converged: bool,
}

impl Measure {
    /// `∫ g dμ` for an integrand with endpoint behaviour `hint`.
    pub fn integrate<G>(&self, g: G, hint: SingularityHint) -> Result<f64>
    where
        G: Fn(f64) -> f64,
    {
        Ok(self.integrate_detailed(g, hint)?.value)
    }

    pub fn integrate_complex<G>(&self, g: G, hint: SingularityHint) -> Result<Complex64>
    where
        G: Fn(f64) -> Complex64,
    {
        Ok(self.integrate_detailed(g, hint)?.value)
    }

    /// Quadrature with convergence diagnostics.
    ///
    /// Atoms are summed exactly. Each density is integrated with a Gauss-Jacobi
    /// rule whose weight absorbs the density exponents and the hint, starting at
    /// 128 nodes and doubling until two successive estimates agree to 1e-12
    /// (relative to max(1, |value|)) or 2048 nodes are reached.
    pub fn integrate_detailed<V, G>(&self, g: G, hint: SingularityHint) -> Result<Integral<V>>
    where
        V: Quantity,
        G: Fn(f64) -> V,
    {
        if !(hint.left.is_finite() && hint.right.is_finite()) {
            return Err(Error::InvalidHint(format!(
                "exponents ({}, {}) must be finite",
                hint.left, hint.right
            )));
        }
        for d in &self.densities {
            let (left, right) = (d.alpha + hint.left, d.beta + hint.right);
            if d.lower == 0.0 && left <= -1.0 {
                return Err(Error::NonConvergentIntegral {
                    endpoint: Endpoint::Zero,
                    exponent: left,
                });
            }
            if right <= -1.0 {
                return Err(Error::NonConvergentIntegral {
                    endpoint: Endpoint::One,
                    exponent: right,
                });
            }
        }

        let mut atom_sum = V::ZERO;
        for a in &self.atoms {
            atom_sum = atom_sum + g(a.t) * a.w;
        }
        if self.densities.is_empty() {
            return Ok(Integral {
                value: atom_sum,
                nodes: 0,
                converged: true,
            });
        }

        let estimate = |m: usize| {
            self.densities
                .iter()
                .fold(V::ZERO, |acc, d| acc + density_estimate(d, m, &g, hint))
        };
        let mut m = FIRST_RULE;
        let mut previous = estimate(m);
        loop {
            m *= 2;
            let current = estimate(m);
            let total = current + atom_sum;
            if !total.is_finite_value() {
                return Err(Error::EvaluationFailure(
                    "integrand produced a non-finite value".into(),
                ));
            }
            let change = (current + previous * -1.0).magnitude();
            if change <= STOP_TOL * total.magnitude().max(1.0) {
                return Ok(Integral {
                    value: total,
                    nodes: m,
                    converged: true,
                });
            }
            if m >= MAX_RULE {
                return Ok(Integral {
                    value: total,
                    nodes: m,
                    converged: false,
                });
            }
            previous = current;
        }
    }

    /// `ln ∫ t^k (1 - t)^n dμ(t)` for `k, n >= 0`, evaluated in log space.
    ///
    /// Densities on the whole interval use the Beta closed form (the same value
    /// a Gauss-Jacobi rule with weight `t^(alpha+k) (1-t)^(beta+n)` returns
    /// exactly); cut-off densities fall back to log-space quadrature.
    /// Returns `-inf` for the zero measure.
    pub fn ln_kernel_integral(&self, k: f64, n: f64) -> Result<f64> {
        if !(k >= 0.0 && n >= 0.0) {
            return Err(Error::InvalidArguments(format!(
                "kernel exponents ({k}, {n}) must be >= 0"
            )));
        }
        let mut acc = f64::NEG_INFINITY;
        for a in &self.atoms {
            let mut l = a.w.ln();
            if k != 0.0 {
                l += k * a.t.ln();
            }
            if n != 0.0 {
                l += n * (-a.t).ln_1p();
            }
            acc = log_add_exp(acc, l);
        }
        for d in &self.densities {
            let l = if d.lower == 0.0 {
                ln_beta_density(d, k, n)
            } else {
                ln_cutoff_density(d, k, n)
            };
            acc = log_add_exp(acc, l);
        }
        Ok(acc)
    }
}

fn density_estimate<V, G>(d: &JacobiDensity, m: usize, g: &G, hint: SingularityHint) -> V
where
    V: Quantity,
    G: Fn(f64) -> V,
{
    if d.lower == 0.0 {
        let r = rule(m, d.alpha + hint.left, d.beta + hint.right);
        let mut s = V::ZERO;
        for (&u, &w) in r.nodes().iter().zip(r.weights()) {
            let mut factor = w * d.rho(u);
            if hint.left != 0.0 {
                factor *= u.powf(-hint.left);
            }
            if hint.right != 0.0 {
                factor *= (1.0 - u).powf(-hint.right);
            }
            if factor != 0.0 {
                s = s + g(u) * factor;
            }
        }
        s * r.ln_mass().exp()
    } else {
        // t = lower + (1 - lower) u; t^alpha is smooth on [lower, 1].
        let delta = d.lower;
        let span = 1.0 - delta;
        let right = d.beta + hint.right;
        let r = rule(m, 0.0, right);
        let mut s = V::ZERO;
        for (&u, &w) in r.nodes().iter().zip(r.weights()) {
            let t = delta + span * u;
            let mut factor = w * d.rho(t) * t.powf(d.alpha);
            if hint.right != 0.0 {
                factor *= (span * (1.0 - u)).powf(-hint.right);
            }
            if factor != 0.0 {
                s = s + g(t) * factor;
            }
        }
        s * (r.ln_mass() + (right + 1.0) * span.ln()).exp()
    }
}

/// `ln ∫_0^1 t^(alpha+k) (1-t)^(beta+n) rho(t) dt`.
fn ln_beta_density(d: &JacobiDensity, k: f64, n: f64) -> f64 {
    let a = d.alpha + k;
    let b = d.beta + n;
    let ln_mass = ln_beta(a + 1.0, b + 1.0);
    let expectation = if d.poly.iter().all(|&c| c >= 0.0) {
        // E[T^j] for T ~ Beta(a+1, b+1), accumulated as a running product.
        let mut ratio = 1.0;
        let mut s = 0.0;
        for (j, &c) in d.poly.iter().enumerate() {
            if j > 0 {
                let jf = j as f64;
                ratio *= (a + jf) / (a + b + 1.0 + jf);
            }
            s += c * ratio;
        }
        s
    } else {
        // Mixed signs: a Gauss rule with positive weights keeps the sum positive.
        let m = d.poly.len() / 2 + 1;
        let r = GaussJacobi::new(m, a, b);
        r.nodes()
            .iter()
            .zip(r.weights())
            .map(|(&u, &w)| w * d.rho(u))
            .sum()
    };
    ln_mass + expectation.ln()
}

/// `ln ∫_lower^1 t^(alpha+k) (1-t)^(beta+n) rho(t) dt` by log-space quadrature.
fn ln_cutoff_density(d: &JacobiDensity, k: f64, n: f64) -> f64 {
    let delta = d.lower;
    let span = 1.0 - delta;
    let right = d.beta + n;
    let left = d.alpha + k;
    let estimate = |m: usize| {
        let r = rule(m, 0.0, right);
        let mut acc = f64::NEG_INFINITY;
        for (&u, &w) in r.nodes().iter().zip(r.weights()) {
            let t = delta + span * u;
            let rho = d.rho(t);
            if rho > 0.0 {
                acc = log_add_exp(acc, w.ln() + left * t.ln() + rho.ln());
            }
        }
        acc + r.ln_mass() + (right + 1.0) * span.ln()
    };
    let mut m = FIRST_RULE;
    let mut previous = estimate(m);
    while m < MAX_RULE {
        m *= 2;
        let current = estimate(m);
        if (current - previous).abs() <= STOP_TOL {
            return current;
        }
        previous = current;
    }
    previous
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn trivial_integrals() {
        let leb = Measure::lebesgue();
        assert!((leb.integrate(|_| 1.0, SingularityHint::NONE).unwrap() - 1.0).abs() < 1e-15);
        let d = Measure::dirac(0.5).unwrap();
        assert_eq!(d.integrate(|t| t * t, SingularityHint::NONE).unwrap(), 0.25);
        assert_eq!(
            Measure::zero()
                .integrate(|_| 1.0, SingularityHint::NONE)
                .unwrap(),
            0.0
        );
    }

    #[test]
    fn chebyshev_integral_is_pi() {
        // Gauss-Chebyshev: ∫_0^1 dt / sqrt(t(1-t)) = π with any number of nodes.
        let got = Measure::lebesgue()
            .integrate(
                |t| 1.0 / (t * (1.0 - t)).sqrt(),
                SingularityHint::new(-0.5, -0.5),
            )
            .unwrap();
        assert!((got - PI).abs() < 1e-12, "{got}");
    }

    #[test]
    fn divergence_is_detected_symbolically() {
        let leb = Measure::lebesgue();
        let err = leb
            .integrate(|t| 1.0 / (1.0 - t), SingularityHint::new(0.0, -1.0))
            .unwrap_err();
        assert_eq!(
            err,
            Error::NonConvergentIntegral {
                endpoint: Endpoint::One,
                exponent: -1.0
            }
        );
        let m = Measure::jacobi(-0.5, 0.0, vec![1.0]).unwrap();
        assert!(matches!(
            m.integrate(|t| t.powf(-0.5), SingularityHint::new(-0.5, 0.0)),
            Err(Error::NonConvergentIntegral {
                endpoint: Endpoint::Zero,
                ..
            })
        ));
        // atoms never diverge
        let d = Measure::dirac(0.5).unwrap();
        assert!(d
            .integrate(|t| 1.0 / (1.0 - t), SingularityHint::new(0.0, -1.0))
            .is_ok());
        assert!(matches!(
            leb.integrate(|_| 1.0, SingularityHint::new(f64::NAN, 0.0)),
            Err(Error::InvalidHint(_))
        ));
    }

    #[test]
    fn kernel_integral_matches_quadrature() {
        let m = Measure::jacobi(-0.25, 0.5, vec![1.0, 0.5, 0.25])
            .unwrap()
            .plus(&Measure::weighted_dirac(0.3, 0.7).unwrap());
        for &(k, n) in &[(0.0, 0.0), (3.0, 5.0), (12.0, 1.0), (20.0, 30.0)] {
            let direct = m
                .integrate(|t| t.powf(k) * (1.0 - t).powf(n), SingularityHint::NONE)
                .unwrap();
            let viaclosed = m.ln_kernel_integral(k, n).unwrap().exp();
            assert!(
                (direct - viaclosed).abs() <= 1e-13 * direct,
                "k={k} n={n}: {direct} vs {viaclosed}"
            );
        }
    }

    #[test]
    fn kernel_integral_with_mixed_sign_polynomial() {
        // rho(t) = 2 - 2t
        let m = Measure::jacobi(0.0, 0.0, vec![2.0, -2.0]).unwrap();
        let got = m.ln_kernel_integral(1.0, 0.0).unwrap().exp();
        assert!((got - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn cut_off_density() {
        let half = Measure::lebesgue().restrict(0.5).unwrap();
        let direct = half
            .integrate(|t| t.powi(3), SingularityHint::NONE)
            .unwrap();
        assert!((direct - (1.0 - 0.0625) / 4.0).abs() < 1e-14);
        let ln = half.ln_kernel_integral(3.0, 2.0).unwrap();
        let exact = {
            // ∫_{1/2}^1 t^3 (1-t)^2 dt
            let f = |t: f64| t.powi(4) / 4.0 - 2.0 * t.powi(5) / 5.0 + t.powi(6) / 6.0;
            f(1.0) - f(0.5)
        };
        assert!((ln.exp() - exact).abs() < 1e-15);
        // singular right endpoint with a cutoff
        let m = Measure::jacobi(0.0, -0.5, vec![1.0])
            .unwrap()
            .restrict(0.75)
            .unwrap();
        assert!((m.total_mass().unwrap() - 1.0).abs() < 1e-13); // 2 sqrt(1/4)
    }

    #[test]
    fn complex_integrands() {
        let z = Complex64::new(0.3, 0.4);
        // ∫_0^1 dt / (1 - t z) = -ln(1 - z) / z
        let got = Measure::lebesgue()
            .integrate_complex(
                |t| (Complex64::new(1.0, 0.0) - z * t).inv(),
                SingularityHint::NONE,
            )
            .unwrap();
        let exact = -(Complex64::new(1.0, 0.0) - z).ln() / z;
        assert!((got - exact).norm() < 1e-14);
    }

    #[test]
    fn nearly_singular_integrand_reports_convergence() {
        let leb = Measure::lebesgue();
        let eps = 1e-9;
        let res = leb
            .integrate_detailed(|t| 1.0 / (t + eps), SingularityHint::NONE)
            .unwrap();
        assert!(!res.converged);
        assert_eq!(res.nodes, 2048);
    }
}
