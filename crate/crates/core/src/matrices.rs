//! Hausdorff matrices `K_μ`, generalized Hilbert matrices `Γ_μ`, and the
//! monomial-basis matrix of the weighted composition operator `T_t`.
//!
//! Entries are assembled in log space as `ln C(.,.) + ln ∫ t^k (1-t)^n dμ` and
//! exponentiated once, so binomials beyond the f64 range never materialize.
//! Values below `e^-745` flush to zero and set [`OperatorMatrix::underflowed`].

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::measure::{Measure, MomentSequence};
use crate::special::{ln_choose, log_binomial};

/// Largest order accepted by [`hausdorff_matrix_via_differences`].
pub const DIFFERENCE_PATH_CAP: usize = 40;

/// Default relative tolerance for structure checks.
pub const STRUCTURE_TOL: f64 = 1e-9;

const LN_UNDERFLOW: f64 = -745.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MatrixKind {
    Hausdorff,
    Gamma,
    #[serde(rename = "tt")]
    CompositionT {
        t: f64,
    },
    /// Any other square matrix handed to the structure checks.
    Dense,
}

impl MatrixKind {
    pub fn label(&self) -> &'static str {
        match self {
            MatrixKind::Hausdorff => "hausdorff",
            MatrixKind::Gamma => "gamma",
            MatrixKind::CompositionT { .. } => "tt",
            MatrixKind::Dense => "dense",
        }
    }
}

/// Dense square matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    kind: MatrixKind,
    size: usize,
    entries: Vec<f64>,
    underflowed: bool,
}

impl OperatorMatrix {
    pub fn from_rows(kind: MatrixKind, rows: &[Vec<f64>]) -> Result<Self> {
        let size = rows.len();
        if size == 0 || rows.iter().any(|r| r.len() != size) {
            return Err(Error::InvalidArguments(
                "matrix rows must form a nonempty square".into(),
            ));
        }
        Ok(OperatorMatrix {
            kind,
            size,
            entries: rows.concat(),
            underflowed: false,
        })
    }

    pub fn identity(size: usize) -> Self {
        let mut entries = vec![0.0; size * size];
        for i in 0..size {
            entries[i * size + i] = 1.0;
        }
        OperatorMatrix {
            kind: MatrixKind::Dense,
            size,
            entries,
            underflowed: false,
        }
    }

    fn from_log_entries<F>(kind: MatrixKind, size: usize, ln_entry: F) -> Result<Self>
    where
        F: Fn(usize, usize) -> Result<Option<f64>> + Sync,
    {
        let rows: Vec<(Vec<f64>, bool)> = (0..size)
            .into_par_iter()
            .map(|n| {
                let mut row = Vec::with_capacity(size);
                let mut under = false;
                for k in 0..size {
                    let v = match ln_entry(n, k)? {
                        None => 0.0,
                        Some(l) if l == f64::NEG_INFINITY => 0.0,
                        Some(l) if l < LN_UNDERFLOW => {
                            under = true;
                            0.0
                        }
                        Some(l) => l.exp(),
                    };
                    row.push(v);
                }
                Ok((row, under))
            })
            .collect::<Result<_>>()?;
        let underflowed = rows.iter().any(|r| r.1);
        let entries = rows.into_iter().flat_map(|r| r.0).collect();
        Ok(OperatorMatrix {
            kind,
            size,
            entries,
            underflowed,
        })
    }

    pub fn kind(&self) -> MatrixKind {
        self.kind
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// True when some entry was flushed to zero below `e^-745`.
    pub fn underflowed(&self) -> bool {
        self.underflowed
    }

    pub fn get(&self, n: usize, k: usize) -> f64 {
        self.entries[n * self.size + k]
    }

    /// Mutable entry access, for fault injection in invariant tests.
    pub fn set(&mut self, n: usize, k: usize, value: f64) {
        self.entries[n * self.size + k] = value;
    }

    pub fn row(&self, n: usize) -> &[f64] {
        &self.entries[n * self.size..(n + 1) * self.size]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.entries.chunks(self.size)
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.rows().map(<[f64]>::to_vec).collect()
    }

    pub fn transpose(&self) -> OperatorMatrix {
        let n = self.size;
        let mut entries = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[j * n + i] = self.entries[i * n + j];
            }
        }
        OperatorMatrix {
            kind: self.kind,
            size: n,
            entries,
            underflowed: self.underflowed,
        }
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.size);
        self.entries
            .par_chunks(self.size)
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn mul_vec_complex(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.size);
        self.entries
            .par_chunks(self.size)
            .map(|row| row.iter().zip(x).map(|(&a, &b)| b * a).sum())
            .collect()
    }

    /// `Aᵀ x`, accumulated row by row in a fixed order.
    pub fn transpose_mul_vec_complex(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.size);
        let mut out = vec![Complex64::new(0.0, 0.0); self.size];
        for (row, &xn) in self.rows().zip(x) {
            for (o, &a) in out.iter_mut().zip(row) {
                *o += xn * a;
            }
        }
        out
    }

    pub fn max_abs_diff(&self, other: &OperatorMatrix) -> f64 {
        assert_eq!(self.size, other.size);
        self.entries
            .iter()
            .zip(&other.entries)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }
}

fn require_size(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArguments(
            "matrix size must be at least 1".into(),
        ));
    }
    Ok(())
}

/// Hausdorff matrix `c_nk = C(n, k) ∫ t^k (1 - t)^(n-k) dμ`, zero above the diagonal.
pub fn hausdorff_matrix(mu: &Measure, size: usize) -> Result<OperatorMatrix> {
    require_size(size)?;
    OperatorMatrix::from_log_entries(MatrixKind::Hausdorff, size, |n, k| {
        if k > n {
            return Ok(None);
        }
        let l = mu.ln_kernel_integral(k as f64, (n - k) as f64)?;
        Ok(Some(ln_choose(n as u64, k as u64) + l))
    })
}

/// Hausdorff matrix from moments through `c_nk = C(n, k) Δ^(n-k) μ_k`.
///
/// Cross-check path only; the differences cancel catastrophically, so the
/// order is capped at [`DIFFERENCE_PATH_CAP`].
pub fn hausdorff_matrix_via_differences(
    seq: &MomentSequence,
    size: usize,
) -> Result<OperatorMatrix> {
    require_size(size)?;
    if size > DIFFERENCE_PATH_CAP {
        return Err(Error::StabilityCapExceeded {
            requested: size,
            cap: DIFFERENCE_PATH_CAP,
        });
    }
    if seq.len() < size {
        return Err(Error::IndexOutOfRange {
            needed: size,
            available: seq.len(),
        });
    }
    let mut rows = vec![vec![0.0; size]; size];
    for (n, row) in rows.iter_mut().enumerate() {
        for (k, entry) in row.iter_mut().enumerate().take(n + 1) {
            *entry = log_binomial(n as u64, k as u64)?.exp() * seq.forward_difference(n - k, k)?;
        }
    }
    OperatorMatrix::from_rows(MatrixKind::Hausdorff, &rows)
}

/// Generalized Hilbert matrix `γ_nk = C(n+k, k) ∫ t^k (1 - t)^n dμ`.
pub fn gamma_matrix(mu: &Measure, size: usize) -> Result<OperatorMatrix> {
    require_size(size)?;
    OperatorMatrix::from_log_entries(MatrixKind::Gamma, size, |n, k| {
        let l = mu.ln_kernel_integral(k as f64, n as f64)?;
        Ok(Some(ln_choose((n + k) as u64, k as u64) + l))
    })
}

/// Coefficient matrix of `T_t f = w_t · f∘φ_t`: `(T_t)_nk = C(n+k, n) t^k (1-t)^n`.
pub fn composition_matrix(t: f64, size: usize) -> Result<OperatorMatrix> {
    require_size(size)?;
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "composition parameter t = {t} must lie in (0, 1)"
        )));
    }
    let ln_t = t.ln();
    let ln_s = (1.0 - t).ln();
    OperatorMatrix::from_log_entries(MatrixKind::CompositionT { t }, size, |n, k| {
        // k ln t + n ln(1-t) is summed in a fixed order so that t and 1-t give
        // transposed matrices bit for bit whenever 1-(1-t) == t.
        let power = k as f64 * ln_t + n as f64 * ln_s;
        Ok(Some(ln_choose((n + k) as u64, n as u64) + power))
    })
}

/// Pair of entries that breaks a structure check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Witness {
    pub first: (usize, usize),
    pub first_value: f64,
    pub second: (usize, usize),
    pub second_value: f64,
}

/// Outcome of a finite-order structure test ("Hankel up to order N").
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StructureCheck {
    pub holds: bool,
    pub order: usize,
    pub witness: Option<Witness>,
}

fn scan_lines<I>(m: &OperatorMatrix, tol: f64, lines: I) -> StructureCheck
where
    I: Iterator<Item = Vec<(usize, usize)>>,
{
    for line in lines {
        let scale = line
            .iter()
            .fold(0.0f64, |s, &(i, j)| s.max(m.get(i, j).abs()));
        for pair in line.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            let (va, vb) = (m.get(a.0, a.1), m.get(b.0, b.1));
            if (va - vb).abs() > tol * scale {
                return StructureCheck {
                    holds: false,
                    order: m.size(),
                    witness: Some(Witness {
                        first: a,
                        first_value: va,
                        second: b,
                        second_value: vb,
                    }),
                };
            }
        }
    }
    StructureCheck {
        holds: true,
        order: m.size(),
        witness: None,
    }
}

/// Constant along anti-diagonals, up to `tol` times the largest entry on each.
/// The witness compares `(n+1, k)` with `(n, k+1)`.
pub fn is_hankel(m: &OperatorMatrix, tol: f64) -> StructureCheck {
    let size = m.size();
    let lines = (1..2 * size.saturating_sub(1)).map(move |s| {
        // entries (i, s - i) with the row index decreasing
        let hi = s.min(size - 1);
        let lo = s.saturating_sub(size - 1);
        (lo..=hi).rev().map(|i| (i, s - i)).collect::<Vec<_>>()
    });
    scan_lines(m, tol, lines)
}

/// Constant along diagonals; the witness compares `(n, k)` with `(n+1, k+1)`.
pub fn is_toeplitz(m: &OperatorMatrix, tol: f64) -> StructureCheck {
    let size = m.size();
    let mut diagonals: Vec<Vec<(usize, usize)>> = Vec::new();
    // main diagonal first, then alternate above and below it
    diagonals.push((0..size).map(|i| (i, i)).collect());
    for d in 1..size {
        diagonals.push((0..size - d).map(|i| (i, i + d)).collect());
        diagonals.push((0..size - d).map(|i| (i + d, i)).collect());
    }
    scan_lines(m, tol, diagonals.into_iter())
}

/// Result of comparing moments against those of a multiple of Lebesgue measure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentTest {
    pub holds: bool,
    /// First index `n` with `μ_n != μ_0 / (n + 1)`.
    pub first_failure: Option<usize>,
    pub moment: Option<f64>,
    pub expected: Option<f64>,
}

/// Whether `μ_n = μ(0,1) / (n + 1)` for `n = 0..=n_max`, relative to the total mass.
pub fn hankel_moment_test(mu: &Measure, n_max: usize, tol: f64) -> Result<MomentTest> {
    if n_max < 1 {
        return Err(Error::InvalidArguments(
            "hankel moment test needs n_max >= 1".into(),
        ));
    }
    let mass = mu.total_mass()?;
    for n in 0..=n_max {
        let moment = mu.moment(n)?;
        let expected = mass / (n as f64 + 1.0);
        if (moment - expected).abs() > tol * mass {
            return Ok(MomentTest {
                holds: false,
                first_failure: Some(n),
                moment: Some(moment),
                expected: Some(expected),
            });
        }
    }
    Ok(MomentTest {
        holds: true,
        first_failure: None,
        moment: None,
        expected: None,
    })
}
