//! Finite positive Borel measures on `(0, 1)`.
//!
//! A [`Measure`] is a finite list of point masses plus a finite list of
//! Jacobi-type densities `t^alpha (1 - t)^beta rho(t) dt` with a polynomial
//! factor `rho >= 0`. The endpoint exponents are carried exactly so that
//! convergence of singular integrals can be decided without sampling.

mod integrate;
mod literal;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special::DoubleDouble;

pub use integrate::{Integral, Quantity, SingularityHint};
pub use literal::parse_measure;

/// Point mass `w · δ_t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub t: f64,
    pub w: f64,
}

/// Density `t^alpha (1 - t)^beta rho(t)` on `[lower, 1)`, with `rho` given by
/// its monomial coefficients `poly[0] + poly[1] t + ...`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JacobiDensity {
    pub alpha: f64,
    pub beta: f64,
    #[serde(default = "unit_poly")]
    pub poly: Vec<f64>,
    /// Left cutoff; zero for a density on the whole interval.
    #[serde(default, skip_serializing_if = "is_zero")]
    pub lower: f64,
}

fn unit_poly() -> Vec<f64> {
    vec![1.0]
}

fn is_zero(x: &f64) -> bool {
    *x == 0.0
}

impl JacobiDensity {
    pub fn new(alpha: f64, beta: f64, poly: Vec<f64>) -> Result<Self> {
        let d = JacobiDensity {
            alpha,
            beta,
            poly,
            lower: 0.0,
        };
        d.validate()?;
        Ok(d)
    }

    pub(crate) fn rho(&self, t: f64) -> f64 {
        self.poly.iter().rev().fold(0.0, |acc, &c| acc * t + c)
    }

    /// Value of the full density at `t`.
    pub fn density(&self, t: f64) -> f64 {
        if t < self.lower || t <= 0.0 || t >= 1.0 {
            return 0.0;
        }
        t.powf(self.alpha) * (1.0 - t).powf(self.beta) * self.rho(t)
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidMeasure(msg));
        if !(self.alpha.is_finite() && self.alpha > -1.0) {
            return bad(format!(
                "density exponent alpha = {} must be finite and > -1",
                self.alpha
            ));
        }
        if !(self.beta.is_finite() && self.beta > -1.0) {
            return bad(format!(
                "density exponent beta = {} must be finite and > -1",
                self.beta
            ));
        }
        if self.poly.is_empty() || self.poly.iter().any(|c| !c.is_finite()) {
            return bad("density polynomial must have finite coefficients".into());
        }
        if !(self.lower.is_finite() && (0.0..1.0).contains(&self.lower)) {
            return bad(format!("density cutoff {} must lie in [0, 1)", self.lower));
        }
        let scale = self.poly.iter().fold(0.0f64, |m, c| m.max(c.abs()));
        if scale == 0.0 {
            return bad("density polynomial is identically zero".into());
        }
        const SAMPLES: usize = 1024;
        for i in 0..=SAMPLES {
            let t = self.lower + (1.0 - self.lower) * i as f64 / SAMPLES as f64;
            if self.rho(t) < -1e-12 * scale {
                return bad(format!("density polynomial is negative at t = {t}"));
            }
        }
        Ok(())
    }
}

/// Finite positive Borel measure on `(0, 1)`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(try_from = "MeasureDoc")]
pub struct Measure {
    atoms: Vec<Atom>,
    densities: Vec<JacobiDensity>,
}

/// Unvalidated JSON form of a [`Measure`].
#[derive(Debug, Clone, Deserialize)]
struct MeasureDoc {
    #[serde(default)]
    atoms: Vec<Atom>,
    #[serde(default)]
    densities: Vec<JacobiDensity>,
}

impl TryFrom<MeasureDoc> for Measure {
    type Error = Error;

    fn try_from(doc: MeasureDoc) -> Result<Self> {
        Measure::new(doc.atoms, doc.densities)
    }
}

impl Measure {
    pub fn new(atoms: Vec<Atom>, densities: Vec<JacobiDensity>) -> Result<Self> {
        for a in &atoms {
            if !(a.t > 0.0 && a.t < 1.0) {
                return Err(Error::InvalidMeasure(format!(
                    "atom position {} must lie strictly inside (0, 1)",
                    a.t
                )));
            }
            if !(a.w.is_finite() && a.w > 0.0) {
                return Err(Error::InvalidMeasure(format!(
                    "atom weight {} must be positive",
                    a.w
                )));
            }
        }
        for d in &densities {
            d.validate()?;
        }
        Ok(Measure { atoms, densities })
    }

    /// The zero measure.
    pub fn zero() -> Self {
        Measure::default()
    }

    /// Lebesgue measure `dt` on `(0, 1)`.
    pub fn lebesgue() -> Self {
        Measure {
            atoms: Vec::new(),
            densities: vec![JacobiDensity {
                alpha: 0.0,
                beta: 0.0,
                poly: vec![1.0],
                lower: 0.0,
            }],
        }
    }

    /// Unit point mass at `t`.
    pub fn dirac(t: f64) -> Result<Self> {
        Measure::weighted_dirac(t, 1.0)
    }

    pub fn weighted_dirac(t: f64, w: f64) -> Result<Self> {
        Measure::new(vec![Atom { t, w }], Vec::new())
    }

    /// `t^alpha (1 - t)^beta rho(t) dt`.
    pub fn jacobi(alpha: f64, beta: f64, poly: Vec<f64>) -> Result<Self> {
        Ok(Measure {
            atoms: Vec::new(),
            densities: vec![JacobiDensity::new(alpha, beta, poly)?],
        })
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn densities(&self) -> &[JacobiDensity] {
        &self.densities
    }

    pub fn is_zero(&self) -> bool {
        self.atoms.is_empty() && self.densities.is_empty()
    }

    /// `c · μ` for `c > 0`; `c = 0` gives the zero measure.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        if !(c.is_finite() && c >= 0.0) {
            return Err(Error::InvalidMeasure(format!(
                "scale factor {c} must be nonnegative"
            )));
        }
        if c == 0.0 {
            return Ok(Measure::zero());
        }
        let atoms = self
            .atoms
            .iter()
            .map(|a| Atom { t: a.t, w: a.w * c })
            .collect();
        let densities = self
            .densities
            .iter()
            .map(|d| JacobiDensity {
                poly: d.poly.iter().map(|x| x * c).collect(),
                ..d.clone()
            })
            .collect();
        Ok(Measure { atoms, densities })
    }

    /// Sum of two measures.
    pub fn plus(&self, other: &Measure) -> Measure {
        let mut out = self.clone();
        out.atoms.extend_from_slice(&other.atoms);
        out.densities.extend(other.densities.iter().cloned());
        out
    }

    /// Restriction to `[delta, 1)`: atoms below `delta` are dropped and every
    /// density gets a left cutoff.
    pub fn restrict(&self, delta: f64) -> Result<Measure> {
        if !(delta > 0.0 && delta < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "restriction point {delta} must lie in (0, 1)"
            )));
        }
        let atoms = self
            .atoms
            .iter()
            .copied()
            .filter(|a| a.t >= delta)
            .collect();
        let densities = self
            .densities
            .iter()
            .map(|d| JacobiDensity {
                lower: d.lower.max(delta),
                ..d.clone()
            })
            .collect();
        Ok(Measure { atoms, densities })
    }

    /// Smallest left exponent over the densities that reach `t = 0`.
    pub fn left_exponent(&self) -> Option<f64> {
        self.densities
            .iter()
            .filter(|d| d.lower == 0.0)
            .map(|d| d.alpha)
            .reduce(f64::min)
    }

    /// Smallest right exponent over all densities.
    pub fn right_exponent(&self) -> Option<f64> {
        self.densities.iter().map(|d| d.beta).reduce(f64::min)
    }

    pub fn total_mass(&self) -> Result<f64> {
        self.integrate(|_| 1.0, SingularityHint::NONE)
    }

    /// `∫ t^n dμ`.
    pub fn moment(&self, n: usize) -> Result<f64> {
        let n = i32::try_from(n)
            .map_err(|_| Error::InvalidArguments(format!("moment index {n} too large")))?;
        self.integrate(|t| t.powi(n), SingularityHint::NONE)
    }

    /// Moments `μ_0, ..., μ_{count-1}`.
    pub fn moments(&self, count: usize) -> Result<MomentSequence> {
        let values = (0..count)
            .map(|n| self.moment(n))
            .collect::<Result<Vec<_>>>()?;
        Ok(MomentSequence {
            values,
            source: Some(self.clone()),
        })
    }

    /// JSON document form (`{"atoms": [...], "densities": [...]}`).
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("measure serializes")
    }
}

/// Moment sequence `μ_n = ∫ t^n dμ`.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentSequence {
    values: Vec<f64>,
    source: Option<Measure>,
}

impl MomentSequence {
    pub fn from_values(values: Vec<f64>) -> Self {
        MomentSequence {
            values,
            source: None,
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn source(&self) -> Option<&Measure> {
        self.source.as_ref()
    }

    /// `Δ^k μ_n` with `Δμ_n = μ_n - μ_{n+1}`, by the iterated difference
    /// recurrence in double-double accumulation.
    ///
    /// The recurrence loses roughly one digit per order on moment data, so
    /// orders past about 40 are not meaningful.
    pub fn forward_difference(&self, order: usize, start: usize) -> Result<f64> {
        let needed = start + order + 1;
        if self.values.len() < needed {
            return Err(Error::IndexOutOfRange {
                needed,
                available: self.values.len(),
            });
        }
        let mut row: Vec<DoubleDouble> = self.values[start..needed]
            .iter()
            .map(|&v| DoubleDouble::from_f64(v))
            .collect();
        for _ in 0..order {
            for i in 0..row.len() - 1 {
                row[i] = row[i].sub(row[i + 1]);
            }
            row.pop();
        }
        Ok(row[0].to_f64())
    }

    /// Whether every `Δ^{n-k} μ_k` with `0 <= k <= n < len` is `>= -tol`.
    pub fn is_totally_monotone(&self, tol: f64) -> bool {
        let len = self.values.len();
        (0..len)
            .all(|n| (0..=n).all(|k| self.forward_difference(n - k, k).is_ok_and(|d| d >= -tol)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_atoms_on_the_boundary() {
        assert!(Measure::dirac(0.0).is_err());
        assert!(Measure::dirac(1.0).is_err());
        assert!(Measure::weighted_dirac(0.5, 0.0).is_err());
        assert!(Measure::weighted_dirac(0.5, -1.0).is_err());
    }

    #[test]
    fn rejects_bad_densities() {
        assert!(Measure::jacobi(-1.0, 0.0, vec![1.0]).is_err());
        assert!(Measure::jacobi(0.0, -1.5, vec![1.0]).is_err());
        assert!(Measure::jacobi(0.0, 0.0, vec![0.0]).is_err());
        // 1 - 2t is negative on (1/2, 1)
        assert!(Measure::jacobi(0.0, 0.0, vec![1.0, -2.0]).is_err());
        assert!(Measure::jacobi(0.0, 0.0, vec![2.0, -2.0]).is_ok());
    }

    #[test]
    fn lebesgue_moments() {
        let m = Measure::lebesgue();
        assert!((m.moment(3).unwrap() - 0.25).abs() < 1e-15);
        for n in 0..200 {
            assert!(
                (m.moment(n).unwrap() - 1.0 / (n as f64 + 1.0)).abs() < 1e-12,
                "n={n}"
            );
        }
    }

    #[test]
    fn atom_and_density_moments() {
        assert!((Measure::dirac(0.5).unwrap().moment(2).unwrap() - 0.25).abs() < 1e-16);
        // 2(1 - t) dt: first moment is 2 ∫ t (1 - t) dt = 1/3
        let m = Measure::jacobi(0.0, 1.0, vec![2.0]).unwrap();
        assert!((m.moment(1).unwrap() - 1.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn forward_differences_on_lebesgue_moments() {
        let seq = Measure::lebesgue().moments(12).unwrap();
        assert!((seq.forward_difference(0, 5).unwrap() - 1.0 / 6.0).abs() < 1e-15);
        assert!((seq.forward_difference(1, 1).unwrap() - 1.0 / 6.0).abs() < 1e-15);
        assert!((seq.forward_difference(2, 0).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(
            seq.forward_difference(5, 7),
            Err(Error::IndexOutOfRange {
                needed: 13,
                available: 12
            })
        );
    }

    #[test]
    fn restriction() {
        let d = Measure::dirac(0.5).unwrap();
        assert_eq!(d.restrict(0.25).unwrap(), d);
        assert!(d.restrict(0.75).unwrap().is_zero());
        let half = Measure::lebesgue().restrict(0.5).unwrap();
        assert!((half.total_mass().unwrap() - 0.5).abs() < 1e-14);
        assert!(Measure::lebesgue().restrict(1.0).is_err());
    }

    #[test]
    fn json_document_round_trip() {
        let m = Measure::dirac(0.3)
            .unwrap()
            .plus(&Measure::jacobi(-0.5, 0.25, vec![1.0, 2.0]).unwrap());
        let text = serde_json::to_string(&m).unwrap();
        let back: Measure = serde_json::from_str(&text).unwrap();
        assert_eq!(m, back);
        let bad: std::result::Result<Measure, _> =
            serde_json::from_str(r#"{"atoms":[{"t":1.5,"w":1}]}"#);
        assert!(bad.is_err());
    }
}
