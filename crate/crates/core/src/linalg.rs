//! Largest singular value of a dense matrix by power iteration on `AᵀA`.

use serde::Serialize;

use crate::matrices::OperatorMatrix;

pub const POWER_TOL: f64 = 1e-12;
pub const POWER_MAX_ITER: usize = 10_000;
/// Relative residual `‖AᵀAv - σ²v‖ / σ²` above which a converged run is
/// considered stagnant and restarted from `e_0`.
pub const RESIDUAL_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SingularValue {
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
    pub restarted: bool,
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

struct Run {
    sigma: f64,
    iterations: usize,
    converged: bool,
    residual: f64,
}

fn power_run(
    a: &OperatorMatrix,
    at: &OperatorMatrix,
    mut v: Vec<f64>,
    tol: f64,
    max_iter: usize,
) -> Run {
    let mut sigma = 0.0;
    for it in 1..=max_iter {
        let u = a.mul_vec(&v);
        let w = at.mul_vec(&u);
        let next = norm(&u);
        let wn = norm(&w);
        if wn == 0.0 {
            return Run {
                sigma: 0.0,
                iterations: it,
                converged: true,
                residual: 0.0,
            };
        }
        let done = (next - sigma).abs() <= tol * next;
        sigma = next;
        if done {
            let s2 = sigma * sigma;
            let residual = w
                .iter()
                .zip(&v)
                .map(|(wi, vi)| (wi - s2 * vi).powi(2))
                .sum::<f64>()
                .sqrt()
                / s2;
            return Run {
                sigma,
                iterations: it,
                converged: true,
                residual,
            };
        }
        v = w.into_iter().map(|x| x / wn).collect();
    }
    Run {
        sigma,
        iterations: max_iter,
        converged: false,
        residual: f64::NAN,
    }
}

/// `‖A‖₂` starting from the normalized all-ones vector.
pub fn largest_singular_value(a: &OperatorMatrix) -> SingularValue {
    largest_singular_value_with(a, POWER_TOL, POWER_MAX_ITER)
}

pub fn largest_singular_value_with(a: &OperatorMatrix, tol: f64, max_iter: usize) -> SingularValue {
    let n = a.size();
    let at = a.transpose();
    let start = vec![1.0 / (n as f64).sqrt(); n];
    let first = power_run(a, &at, start, tol, max_iter);
    if first.converged && first.residual <= RESIDUAL_TOL {
        return SingularValue {
            value: first.sigma,
            iterations: first.iterations,
            converged: true,
            restarted: false,
        };
    }
    let mut e0 = vec![0.0; n];
    e0[0] = 1.0;
    let second = power_run(a, &at, e0, tol, max_iter);
    let best = if second.sigma > first.sigma {
        &second
    } else {
        &first
    };
    SingularValue {
        value: best.sigma,
        iterations: first.iterations + second.iterations,
        converged: best.converged && best.residual <= RESIDUAL_TOL,
        restarted: true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrices::MatrixKind;

    #[test]
    fn diagonal_and_rank_one() {
        let d = OperatorMatrix::from_rows(
            MatrixKind::Dense,
            &[
                vec![3.0, 0.0, 0.0],
                vec![0.0, -5.0, 0.0],
                vec![0.0, 0.0, 1.0],
            ],
        )
        .unwrap();
        let s = largest_singular_value(&d);
        assert!((s.value - 5.0).abs() < 1e-10 && s.converged);

        // outer product of (1, 2) and (3, 4): singular value √5·5
        let r = OperatorMatrix::from_rows(MatrixKind::Dense, &[vec![3.0, 4.0], vec![6.0, 8.0]])
            .unwrap();
        assert!((largest_singular_value(&r).value - 5.0 * 5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn stagnant_run_restarts_from_first_basis_vector() {
        let m = OperatorMatrix::from_rows(MatrixKind::Dense, &[vec![1.0, 0.0], vec![0.0, 0.999]])
            .unwrap();
        let s = largest_singular_value_with(&m, 1e-15, 3);
        assert!(s.restarted && s.converged);
        assert_eq!(s.value, 1.0);
    }

    #[test]
    fn zero_matrix() {
        let z =
            OperatorMatrix::from_rows(MatrixKind::Dense, &[vec![0.0; 2], vec![0.0; 2]]).unwrap();
        assert_eq!(largest_singular_value(&z).value, 0.0);
    }

    #[test]
    fn iteration_cap_is_reported() {
        let m = OperatorMatrix::from_rows(MatrixKind::Dense, &[vec![1.0, 0.3], vec![0.2, 0.999]])
            .unwrap();
        let s = largest_singular_value_with(&m, 1e-15, 3);
        assert!(!s.converged);
    }
}
