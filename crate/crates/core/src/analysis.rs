//! The `ψ_p` boundedness criterion and the norm, compactness and complete
//! continuity estimators built on it.
//!
//! `ψ_p(t) = t^(1/p - 1) (1 - t)^(-1/p)` for `p > 1` and
//! `ψ_1(t) = log(e/t) / (1 - t)`.

use num_complex::Complex64;
use serde::Serialize;
use statrs::function::gamma::digamma;

use crate::error::{Endpoint, Error, Result};
use crate::hardy::{h1_kernel_norm, hp_norm_moduli, kernel_kw, BoundaryFunction, BoundaryGrid};
use crate::linalg::largest_singular_value;
use crate::matrices::{composition_matrix, gamma_matrix};
use crate::measure::{Integral, JacobiDensity, Measure, SingularityHint};
use crate::operators::gamma_boundary_values;
use crate::special::ln_beta;

/// Slack allowed above the target in [`norm_probe_fa`] verdicts.
pub const PROBE_TARGET_SLACK: f64 = 1e-3;
/// Slack below the kernel floor in [`compactness_probe`] verdicts.
pub const COMPACTNESS_TOL: f64 = 1e-3;
/// Agreement required between the two segment integrals of [`complete_continuity_probe`].
pub const SEGMENT_TOL: f64 = 1e-8;

fn require_p(p: f64) -> Result<()> {
    if !(p >= 1.0 && p.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "p must be finite and >= 1, got {p}"
        )));
    }
    Ok(())
}

/// `ψ_p(t)`.
pub fn psi(p: f64, t: f64) -> f64 {
    if p == 1.0 {
        (1.0 - t.ln()) / (1.0 - t)
    } else {
        (t / (1.0 - t)).powf(1.0 / p) / t
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum PsiValue {
    Convergent { value: f64, converged: bool },
    Divergent { endpoint: Endpoint },
}

impl PsiValue {
    pub fn value(&self) -> Option<f64> {
        match self {
            PsiValue::Convergent { value, .. } => Some(*value),
            PsiValue::Divergent { .. } => None,
        }
    }
}

/// First endpoint at which `∫ ψ_p dμ` diverges, decided from the density exponents.
fn psi_divergence(mu: &Measure, p: f64) -> Option<Endpoint> {
    for d in mu.densities() {
        if p > 1.0 && d.lower == 0.0 && d.alpha <= -1.0 / p {
            return Some(Endpoint::Zero);
        }
        let needed = if p == 1.0 { 0.0 } else { 1.0 / p - 1.0 };
        if d.beta <= needed {
            return Some(Endpoint::One);
        }
    }
    None
}

/// `∫ t^alpha (1-t)^(beta+extra) rho(t) (-log t) dt` for a density on the whole
/// interval, from `B(a, b) (digamma(a+b) - digamma(a))` termwise.
fn neg_log_moment(d: &JacobiDensity, extra: f64) -> f64 {
    d.poly
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != 0.0)
        .map(|(j, c)| {
            let a = d.alpha + j as f64 + 1.0;
            let b = d.beta + extra + 1.0;
            c * ln_beta(a, b).exp() * (digamma(a + b) - digamma(a))
        })
        .sum()
}

/// Splits `∫ g dμ` for `g = (-log t) / (1-t) + smooth(t)`: the log part is exact on
/// full-interval densities, everything else goes through quadrature.
fn integrate_with_log_part<G>(mu: &Measure, smooth: G, hint: SingularityHint) -> Result<(f64, bool)>
where
    G: Fn(f64) -> f64 + Sync,
{
    let full = |t: f64| -t.ln() / (1.0 - t) + smooth(t);
    let mut value: f64 = mu.atoms().iter().map(|a| a.w * full(a.t)).sum();
    let mut converged = true;
    for d in mu.densities() {
        let part = Measure::new(Vec::new(), vec![d.clone()])?;
        let r: Integral<f64> = if d.lower == 0.0 {
            value += neg_log_moment(d, -1.0);
            part.integrate_detailed(&smooth, hint)?
        } else {
            part.integrate_detailed(full, hint)?
        };
        value += r.value;
        converged &= r.converged;
    }
    Ok((value, converged))
}

/// `∫ ψ_p dμ`, or the endpoint where it diverges.
pub fn psi_integral(mu: &Measure, p: f64) -> Result<PsiValue> {
    require_p(p)?;
    if let Some(endpoint) = psi_divergence(mu, p) {
        return Ok(PsiValue::Divergent { endpoint });
    }
    if p > 1.0 {
        let hint = SingularityHint::new(1.0 / p - 1.0, -1.0 / p);
        let r: Integral<f64> = mu.integrate_detailed(|t| psi(p, t), hint)?;
        return Ok(PsiValue::Convergent {
            value: r.value,
            converged: r.converged,
        });
    }
    let (value, converged) =
        integrate_with_log_part(mu, |t| 1.0 / (1.0 - t), SingularityHint::new(0.0, -1.0))?;
    Ok(PsiValue::Convergent { value, converged })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum NormMethod {
    PsiIntegral,
    FiniteSection,
    ProbeFa,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormEstimate {
    pub value: f64,
    pub method: NormMethod,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<usize>,
    pub converged: bool,
}

/// Largest singular value of `Γ_N`, the `H² → H²` norm of the finite section.
pub fn finite_section_norm(mu: &Measure, n: usize) -> Result<NormEstimate> {
    let m = gamma_matrix(mu, n)?;
    let s = largest_singular_value(&m);
    Ok(NormEstimate {
        value: s.value,
        method: NormMethod::FiniteSection,
        n: Some(n),
        grid: None,
        converged: s.converged,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SegmentIntegral {
    pub r: f64,
    pub closed_form: f64,
    pub direct: f64,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeReport {
    pub probe: &'static str,
    pub p: f64,
    pub grid: usize,
    pub schedule: Vec<f64>,
    pub responses: Vec<f64>,
    pub target: Option<f64>,
    pub verdict: bool,
    /// Grid nodes, summed over the schedule, whose quadrature hit the node cap.
    pub unconverged_nodes: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub segment_integrals: Vec<SegmentIntegral>,
}

fn check_schedule(
    schedule: &[f64],
    name: &str,
    lo: f64,
    hi: f64,
    hi_inclusive: bool,
) -> Result<()> {
    if schedule.is_empty() {
        return Err(Error::ScheduleInvalid(format!("{name} schedule is empty")));
    }
    if !schedule.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::ScheduleInvalid(format!(
            "{name} schedule must be strictly increasing"
        )));
    }
    for &x in schedule {
        let above = if hi_inclusive { x > hi } else { x >= hi };
        if x.is_nan() || x < lo || above {
            let close = if hi_inclusive { "]" } else { ")" };
            return Err(Error::ScheduleInvalid(format!(
                "{name} = {x} outside [{lo}, {hi}{close}"
            )));
        }
    }
    Ok(())
}

/// `Λ_a(ζ_j) = ∫ (1 - (1-t) ζ_j)^(a-1) (1-t)^(-a) dμ(t)` at every node.
fn lambda_on_grid(mu: &Measure, a: f64, grid: &BoundaryGrid) -> Result<(Vec<Complex64>, usize)> {
    use rayon::prelude::*;
    let hint = SingularityHint::new(0.0, -a);
    let results: Vec<Integral<Complex64>> = grid
        .points()
        .par_iter()
        .zip(grid.complements().par_iter())
        .map(|(&z, &omz)| {
            mu.integrate_detailed(
                |t: f64| (omz + z * t).powf(a - 1.0) * (1.0 - t).powf(-a),
                hint,
            )
        })
        .collect::<Result<_>>()?;
    let unconverged = results.iter().filter(|r| !r.converged).count();
    Ok((results.into_iter().map(|r| r.value).collect(), unconverged))
}

/// Ratios `‖f_a Λ_a‖_p / ‖f_a‖_p` over restrict(μ, δ), which approach the norm
/// as `a → 1/p`. `δ = 0` uses μ itself.
pub fn norm_probe_fa(
    mu: &Measure,
    p: f64,
    schedule: &[f64],
    delta: f64,
    grid: &BoundaryGrid,
) -> Result<ProbeReport> {
    require_p(p)?;
    check_schedule(schedule, "a", 0.0, 1.0 / p, false)?;
    if !(0.0..=0.5).contains(&delta) {
        return Err(Error::InvalidParameter(format!(
            "delta must lie in [0, 1/2], got {delta}"
        )));
    }
    let restricted = if delta > 0.0 {
        mu.restrict(delta)?
    } else {
        mu.clone()
    };
    let target = match psi_integral(&restricted, p)? {
        PsiValue::Convergent { value, .. } => value,
        PsiValue::Divergent { endpoint } => {
            return Err(Error::CriterionViolated(format!(
                "psi_{p} integral diverges at {endpoint}"
            )))
        }
    };
    let mut responses = Vec::with_capacity(schedule.len());
    let mut unconverged_nodes = 0;
    for &a in schedule {
        let fa = BoundaryFunction::PowerSingularity { a }.modulus_on_grid(grid);
        let (lambda, bad) = lambda_on_grid(&restricted, a, grid)?;
        unconverged_nodes += bad;
        let product: Vec<f64> = fa.iter().zip(&lambda).map(|(f, l)| f * l.norm()).collect();
        responses.push(hp_norm_moduli(&product, p)? / hp_norm_moduli(&fa, p)?);
    }
    let increasing = responses.windows(2).all(|w| w[0] < w[1]);
    let bounded = responses
        .iter()
        .all(|&r| r <= target * (1.0 + PROBE_TARGET_SLACK));
    Ok(ProbeReport {
        probe: "fa",
        p,
        grid: grid.len(),
        schedule: schedule.to_vec(),
        responses,
        target: Some(target),
        verdict: increasing && bounded,
        unconverged_nodes,
        segment_integrals: Vec::new(),
    })
}

/// Default `a` schedule `1/p - 10^-1, 1/p - 10^-2, 1/p - 10^-3`.
pub fn default_a_schedule(p: f64) -> Vec<f64> {
    [1e-1, 1e-2, 1e-3].iter().map(|d| 1.0 / p - d).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LambdaBoundCheck {
    pub holds: bool,
    /// `2^(a-1) ∫ (1-t)^(-a) dμ`.
    pub bound: f64,
    pub min_modulus: f64,
    pub min_theta: f64,
    /// Node with the largest `|Λ_a| - bound`.
    pub loosest_theta: f64,
    pub unconverged_nodes: usize,
}

/// `|Λ_a(ζ_j)| >= 2^(a-1) ∫ (1-t)^(-a) dμ` at every node.
pub fn lambda_lower_bound_check(
    mu: &Measure,
    a: f64,
    grid: &BoundaryGrid,
) -> Result<LambdaBoundCheck> {
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "a must lie in (0, 1), got {a}"
        )));
    }
    let bound =
        2f64.powf(a - 1.0) * mu.integrate(|t| (1.0 - t).powf(-a), SingularityHint::new(0.0, -a))?;
    let (lambda, unconverged_nodes) = lambda_on_grid(mu, a, grid)?;
    let moduli: Vec<f64> = lambda.iter().map(|l| l.norm()).collect();
    let (jmin, &min_modulus) = moduli
        .iter()
        .enumerate()
        .min_by(|x, y| x.1.total_cmp(y.1))
        .unwrap();
    let (jmax, _) = moduli
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.total_cmp(y.1))
        .unwrap();
    Ok(LambdaBoundCheck {
        holds: min_modulus >= bound - 1e-9,
        bound,
        min_modulus,
        min_theta: grid.theta(jmin),
        loosest_theta: grid.theta(jmax),
        unconverged_nodes,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProofBounds {
    /// `2^(1/p - 1) ∫ (1-t)^(-1/p) dμ`.
    pub first: f64,
    /// `2^(-1/p) ∫ t^(1/p - 1) dμ`.
    pub second: f64,
}

/// The two one-sided lower bounds for `‖Γ_μ‖_{H^p → H^p}` from the necessity argument.
pub fn proof_lower_bounds(mu: &Measure, p: f64) -> Result<ProofBounds> {
    require_p(p)?;
    if p == 1.0 {
        return Err(Error::InvalidParameter(
            "proof lower bounds need p > 1".into(),
        ));
    }
    let s = 1.0 / p;
    let right = mu.integrate(|t| (1.0 - t).powf(-s), SingularityHint::new(0.0, -s))?;
    let left = mu.integrate(|t| t.powf(s - 1.0), SingularityHint::new(s - 1.0, 0.0))?;
    Ok(ProofBounds {
        first: 2f64.powf(s - 1.0) * right,
        second: 2f64.powf(-s) * left,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TNormBound {
    pub t: f64,
    pub n: usize,
    /// Largest singular value of the `N × N` section of `T_t`.
    pub section: f64,
    /// `ψ_p(t)`.
    pub bound: f64,
    pub converged: bool,
}

/// Finite-section norm of `T_t` against `ψ_p(t)`; meaningful as a comparison at `p = 2`.
pub fn t_norm_bound_check(t: f64, p: f64, n: usize) -> Result<TNormBound> {
    require_p(p)?;
    let m = composition_matrix(t, n)?;
    let s = largest_singular_value(&m);
    Ok(TNormBound {
        t,
        n,
        section: s.value,
        bound: psi(p, t),
        converged: s.converged,
    })
}

fn require_bounded(mu: &Measure, p: f64) -> Result<()> {
    if let PsiValue::Divergent { endpoint } = psi_integral(mu, p)? {
        return Err(Error::CriterionViolated(format!(
            "psi_{p} integral diverges at {endpoint}, so the operator is unbounded on H^{p}"
        )));
    }
    Ok(())
}

/// `‖Γ_μ k_r‖_p` for the normalized kernels `k_r`, `q = p/(p-1)`, against the
/// floor `μ(0,1) / 2^(1/p)` that no compact operator can keep.
pub fn compactness_probe(
    mu: &Measure,
    p: f64,
    schedule: &[f64],
    grid: &BoundaryGrid,
) -> Result<ProbeReport> {
    require_p(p)?;
    if p == 1.0 {
        return Err(Error::InvalidParameter(
            "compactness probe needs p > 1".into(),
        ));
    }
    check_schedule(schedule, "r", 0.0, 1.0, false)?;
    require_bounded(mu, p)?;
    let q = p / (p - 1.0);
    let floor = mu.total_mass()? / 2f64.powf(1.0 / p);
    let mut responses = Vec::with_capacity(schedule.len());
    let mut unconverged_nodes = 0;
    for &r in schedule {
        let (k, _) = kernel_kw(Complex64::new(r, 0.0), q, 0)?;
        let image = gamma_boundary_values(mu, &k, grid)?;
        unconverged_nodes += image.unconverged.len();
        let moduli: Vec<f64> = image.values.iter().map(|v| v.norm()).collect();
        responses.push(hp_norm_moduli(&moduli, p)?);
    }
    let verdict = responses.iter().all(|&v| v >= floor - COMPACTNESS_TOL);
    Ok(ProbeReport {
        probe: "compactness",
        p,
        grid: grid.len(),
        schedule: schedule.to_vec(),
        responses,
        target: Some(floor),
        verdict,
        unconverged_nodes,
        segment_integrals: Vec::new(),
    })
}

/// `∫_0^1 T_t k_r(s) ds = log((1 - r t) / (t (1 - r))) / (1 - t)` less its
/// `-log t / (1 - t)` part.
fn segment_smooth_part(t: f64, r: f64) -> f64 {
    let s = 1.0 - t;
    if s == 0.0 {
        return r / (1.0 - r);
    }
    (r * s / (1.0 - r)).ln_1p() / s
}

/// `‖Γ_μ k̂_r‖_{H¹}` for `k̂_r = k_r / ‖k_r‖_{H¹}`, `k_r = 1/(1 - r z)`, with the
/// segment integrals `∫_0^1 Γ_μ k̂_r(s) ds` from the closed form and from
/// direct double quadrature. Refuses measures for which `Γ_μ` is unbounded on `H¹`.
pub fn complete_continuity_probe(
    mu: &Measure,
    schedule: &[f64],
    grid: &BoundaryGrid,
) -> Result<ProbeReport> {
    check_schedule(schedule, "r", 0.0, 1.0, false)?;
    require_bounded(mu, 1.0)?;
    let lebesgue = Measure::lebesgue();
    let mut responses = Vec::with_capacity(schedule.len());
    let mut segments = Vec::with_capacity(schedule.len());
    let mut unconverged_nodes = 0;
    for &r in schedule {
        let kn = h1_kernel_norm(r, grid)?;
        let k = BoundaryFunction::Kernel {
            w: Complex64::new(r, 0.0),
            scale: 1.0 / kn.norm,
        };
        let image = gamma_boundary_values(mu, &k, grid)?;
        unconverged_nodes += image.unconverged.len();
        let moduli: Vec<f64> = image.values.iter().map(|v| v.norm()).collect();
        responses.push(hp_norm_moduli(&moduli, 1.0)?);

        let closed_form =
            integrate_with_log_part(mu, |t| segment_smooth_part(t, r), SingularityHint::NONE)?.0
                / kn.norm;
        // s = 1 - w² tames the log singularity of the inner integral at s = 1
        let direct = lebesgue.integrate(
            |w| {
                let inner = mu.integrate(
                    |t| 1.0 / (w * w + t * (1.0 - r - w * w)),
                    SingularityHint::NONE,
                );
                2.0 * w * inner.unwrap_or(f64::NAN)
            },
            SingularityHint::NONE,
        )? / kn.norm;
        if !direct.is_finite() {
            return Err(Error::EvaluationFailure(format!(
                "segment quadrature failed at r = {r}"
            )));
        }
        let agree = (closed_form - direct).abs() <= SEGMENT_TOL * closed_form.abs().max(1.0);
        segments.push(SegmentIntegral {
            r,
            closed_form,
            direct,
            agree,
        });
    }
    let verdict = responses.windows(2).all(|w| w[1] < w[0]);
    Ok(ProbeReport {
        probe: "complete_continuity",
        p: 1.0,
        grid: grid.len(),
        schedule: schedule.to_vec(),
        responses,
        target: None,
        verdict,
        unconverged_nodes,
        segment_integrals: segments,
    })
}
