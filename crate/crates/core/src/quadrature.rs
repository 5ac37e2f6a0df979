//! Gauss-Jacobi rules on `[0, 1]` for the weight `u^a (1 - u)^b`.
//!
//! Nodes and weights come from the Golub-Welsch eigenproblem of the Jacobi
//! recurrence matrix. Only the first row of the eigenvector matrix is carried
//! through the implicit QL sweeps, which is all the weights need.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::special::ln_beta;

/// Gauss-Jacobi rule on `[0, 1]`. Weights are normalized to sum to one; the
/// total mass of the weight function is kept separately as `ln_mass`.
#[derive(Debug, Clone)]
pub struct GaussJacobi {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    a: f64,
    b: f64,
    ln_mass: f64,
}

impl GaussJacobi {
    /// Builds an `m`-point rule for `u^a (1 - u)^b` on `[0, 1]`, `a, b > -1`.
    pub fn new(m: usize, a: f64, b: f64) -> Self {
        assert!(m >= 1, "rule needs at least one node");
        assert!(a > -1.0 && b > -1.0, "Jacobi exponents must exceed -1");
        // On [-1, 1] the weight is (1 - x)^b (1 + x)^a with u = (1 + x) / 2.
        let (alpha, beta) = (b, a);
        let ab = alpha + beta;
        let mut diag = vec![0.0; m];
        let mut off = vec![0.0; m];
        diag[0] = (beta - alpha) / (ab + 2.0);
        for n in 1..m {
            let nf = n as f64;
            let two_n_ab = 2.0 * nf + ab;
            diag[n] = (beta * beta - alpha * alpha) / (two_n_ab * (two_n_ab + 2.0));
            let sq = if n == 1 {
                4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab).powi(2) * (3.0 + ab))
            } else {
                4.0 * nf * (nf + alpha) * (nf + beta) * (nf + ab)
                    / (two_n_ab * two_n_ab * (two_n_ab + 1.0) * (two_n_ab - 1.0))
            };
            off[n - 1] = sq.sqrt();
        }
        let mut first_row = vec![0.0; m];
        first_row[0] = 1.0;
        symmetric_tridiagonal_ql(&mut diag, &mut off, &mut first_row);

        let mut pairs: Vec<(f64, f64)> = diag
            .iter()
            .zip(&first_row)
            .map(|(&x, &v)| (0.5 * (1.0 + x), v * v))
            .collect();
        pairs.sort_by(|p, q| p.0.total_cmp(&q.0));
        let total: f64 = pairs.iter().map(|p| p.1).sum();
        GaussJacobi {
            nodes: pairs.iter().map(|p| p.0.clamp(0.0, 1.0)).collect(),
            weights: pairs.iter().map(|p| p.1 / total).collect(),
            a,
            b,
            ln_mass: ln_beta(a + 1.0, b + 1.0),
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Normalized weights (they sum to one).
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn exponents(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    /// `ln ∫_0^1 u^a (1 - u)^b du`.
    pub fn ln_mass(&self) -> f64 {
        self.ln_mass
    }

    /// `∫_0^1 u^a (1 - u)^b h(u) du`.
    pub fn integrate<F: Fn(f64) -> f64>(&self, h: F) -> f64 {
        let s: f64 = self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(&u, &w)| w * h(u))
            .sum();
        s * self.ln_mass.exp()
    }
}

/// Eigenvalues of a symmetric tridiagonal matrix by implicit QL with Wilkinson
/// shifts. `off[i]` couples rows `i` and `i + 1`; `z` is rotated along as one
/// row of the eigenvector matrix.
fn symmetric_tridiagonal_ql(d: &mut [f64], e: &mut [f64], z: &mut [f64]) {
    let n = d.len();
    if n < 2 {
        return;
    }
    e[n - 1] = 0.0;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m < n - 1 {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            assert!(iter <= 200, "tridiagonal QL failed to converge");
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                let zf = z[i + 1];
                z[i + 1] = s * z[i] + c * zf;
                z[i] = c * z[i] - s * zf;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
}

type RuleKey = (usize, u64, u64);

fn cache() -> &'static Mutex<HashMap<RuleKey, Arc<GaussJacobi>>> {
    static CACHE: OnceLock<Mutex<HashMap<RuleKey, Arc<GaussJacobi>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Shared rule for `(m, a, b)`, built on first use.
pub fn rule(m: usize, a: f64, b: f64) -> Arc<GaussJacobi> {
    let key = (m, a.to_bits(), b.to_bits());
    if let Some(r) = cache().lock().unwrap().get(&key) {
        return Arc::clone(r);
    }
    let built = Arc::new(GaussJacobi::new(m, a, b));
    let mut guard = cache().lock().unwrap();
    Arc::clone(guard.entry(key).or_insert(built))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn legendre_rule_integrates_polynomials_exactly() {
        let r = GaussJacobi::new(5, 0.0, 0.0);
        // degree 9 is the limit for 5 nodes
        for k in 0..=9 {
            let got = r.integrate(|u| u.powi(k));
            assert!((got - 1.0 / (k as f64 + 1.0)).abs() < 1e-15, "k={k}: {got}");
        }
    }

    #[test]
    fn chebyshev_weight_matches_gauss_chebyshev() {
        // ∫ u^{-1/2}(1-u)^{-1/2} h(u) du = π · mean of h over the Gauss-Chebyshev nodes
        let m = 24;
        let r = GaussJacobi::new(m, -0.5, -0.5);
        let h = |u: f64| (3.0 * u).cos() + u * u;
        let cheb: f64 = (0..m)
            .map(|j| {
                let x = ((2 * j + 1) as f64 * PI / (2 * m) as f64).cos();
                h(0.5 * (1.0 + x))
            })
            .sum::<f64>()
            * PI
            / m as f64;
        assert!((r.integrate(h) - cheb).abs() < 1e-13);
    }

    #[test]
    fn jacobi_moments_match_beta_function() {
        let (a, b) = (-0.3, 1.7);
        let r = GaussJacobi::new(8, a, b);
        for k in 0..=15 {
            let exact = ln_beta(a + 1.0 + k as f64, b + 1.0).exp();
            let got = r.integrate(|u| u.powi(k));
            assert!(
                (got - exact).abs() < 1e-14 * exact.max(1e-300) + 1e-16,
                "k={k}"
            );
        }
    }

    #[test]
    fn large_rule_is_well_formed() {
        let r = GaussJacobi::new(2048, -0.5, 0.25);
        assert_eq!(r.len(), 2048);
        assert!(r.nodes().windows(2).all(|w| w[0] < w[1]));
        assert!(r.nodes()[0] > 0.0 && r.nodes()[2047] < 1.0);
        assert!((r.weights().iter().sum::<f64>() - 1.0).abs() < 1e-13);
        let exact = ln_beta(2.5, 1.25).exp();
        assert!((r.integrate(|u| u * u) - exact).abs() < 1e-13);
    }

    #[test]
    fn cached_rules_are_shared() {
        let a = rule(16, 0.5, 0.0);
        let b = rule(16, 0.5, 0.0);
        assert!(Arc::ptr_eq(&a, &b));
    }
}
