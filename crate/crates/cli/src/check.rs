//! Invariant suite over every module at fixed seeds and sizes.

use std::f64::consts::PI;

use gamma_mu::{
    apply_gamma_adjoint_coefficients, apply_gamma_boundary, apply_gamma_coefficients,
    compactness_probe, composition_matrix, default_a_schedule, evaluate_on_grid,
    finite_section_norm, gamma_matrix, gamma_of_one, growth_estimate_check, hankel_moment_test,
    hardy_inequality_check, hausdorff_matrix, hausdorff_matrix_via_differences, hp_norm,
    hp_norm_boundary, hp_norm_moduli, is_hankel, kernel_kw, lambda_lower_bound_check,
    norm_probe_fa, parse_measure, proof_lower_bounds, psi_integral, t_norm_bound_check,
    BoundaryFunction, BoundaryGrid, CoefficientVector, Complex64, Endpoint, Measure,
    OperatorHandle, PsiValue,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::args::{Command, Fault, KindArg, Suite};
use crate::commands::dispatch;
use crate::CliError;

pub const SEED: u64 = 0x6a6d_2024;

type Verdict = Result<(bool, String), CliError>;

struct Ctx {
    suite: Suite,
    fault: Option<Fault>,
}

impl Ctx {
    fn full(&self) -> bool {
        self.suite == Suite::Full
    }
}

struct Invariant {
    name: &'static str,
    run: fn(&Ctx) -> Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvariantResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckSummary {
    pub suite: &'static str,
    pub passed: bool,
    pub results: Vec<InvariantResult>,
}

impl CheckSummary {
    pub fn first_failure(&self) -> Option<&InvariantResult> {
        self.results.iter().find(|r| !r.passed)
    }

    pub fn table(&self) -> String {
        let width = self.results.iter().map(|r| r.name.len()).max().unwrap_or(0);
        let mut out = String::new();
        for r in &self.results {
            let status = if r.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("{status}  {:width$}  {}\n", r.name, r.detail));
        }
        let failed = self.results.iter().filter(|r| !r.passed).count();
        out.push_str(&format!(
            "{} invariants, {} failed\n",
            self.results.len(),
            failed
        ));
        out
    }
}

fn test_measures() -> Vec<(&'static str, Measure)> {
    [
        ("lebesgue", "lebesgue"),
        ("2lebesgue", "jacobi:a=0,b=0,poly=2"),
        ("dirac0.3", "dirac:0.3"),
        ("dirac0.5", "dirac:0.5"),
        ("linear", "jacobi:a=0,b=1,poly=2"),
        ("jacobi", "jacobi:a=0.5,b=-0.3"),
        ("mixed", "lebesgue+dirac:0.7:0.25"),
    ]
    .into_iter()
    .map(|(name, spec)| (name, parse_measure(spec).expect("fixture measures parse")))
    .collect()
}

fn random_polys(count: usize, max_degree: usize) -> Vec<CoefficientVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    (0..count)
        .map(|_| {
            let degree = rng.gen_range(0..=max_degree);
            let coeffs = (0..=degree)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            CoefficientVector::new(coeffs).expect("finite coefficients")
        })
        .collect()
}

fn max_gap(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

fn psi_value(mu: &Measure, p: f64) -> Result<f64, CliError> {
    psi_integral(mu, p)?.value().ok_or_else(|| {
        CliError::Usage(format!(
            "psi_{p} diverges for a fixture that should be bounded"
        ))
    })
}

fn total_monotone(_: &Ctx) -> Verdict {
    let mut worst = None;
    for (name, mu) in test_measures() {
        if !mu.moments(24)?.is_totally_monotone(1e-12) {
            worst.get_or_insert(name);
        }
    }
    Ok((
        worst.is_none(),
        worst.map_or("24 moments, 7 measures".into(), |n| {
            format!("{n} not totally monotone")
        }),
    ))
}

fn json_round_trip(_: &Ctx) -> Verdict {
    let mut worst = 0.0f64;
    for (_, mu) in test_measures() {
        let back = parse_measure(&mu.to_json().to_string())?;
        let (a, b) = (mu.moments(32)?, back.moments(32)?);
        worst = a
            .values()
            .iter()
            .zip(b.values())
            .map(|(x, y)| (x - y).abs())
            .fold(worst, f64::max);
    }
    Ok((worst <= 1e-15, format!("max moment gap {worst:e}")))
}

fn restriction_mass(_: &Ctx) -> Verdict {
    for (name, mu) in test_measures() {
        let whole = mu.total_mass()?;
        let part = mu.restrict(0.25)?.total_mass()?;
        if part > whole + 1e-15 {
            return Ok((
                false,
                format!("{name}: restricted mass {part} exceeds {whole}"),
            ));
        }
    }
    Ok((true, "restricted mass never exceeds total mass".into()))
}

fn nonnegative_entries(ctx: &Ctx) -> Verdict {
    let mu = parse_measure("lebesgue+dirac:0.3")?;
    let mut gamma = gamma_matrix(&mu, 48)?;
    if ctx.fault == Some(Fault::SignFlip) {
        let v = gamma.get(1, 0);
        gamma.set(1, 0, -v);
    }
    let all = [
        gamma,
        hausdorff_matrix(&mu, 48)?,
        composition_matrix(0.3, 48)?,
    ];
    for m in &all {
        if let Some((i, &v)) = m
            .entries()
            .iter()
            .enumerate()
            .find(|(_, v)| v.is_nan() || **v < 0.0)
        {
            let (n, k) = (i / m.size(), i % m.size());
            return Ok((false, format!("{} entry ({n},{k}) = {v}", m.kind().label())));
        }
    }
    Ok((true, "gamma, hausdorff and tt entries >= 0 at N=48".into()))
}

fn hilbert(_: &Ctx) -> Verdict {
    let m = gamma_matrix(&Measure::lebesgue(), 64)?;
    let mut worst = 0.0f64;
    for n in 0..64 {
        for k in 0..64 {
            worst = worst.max((m.get(n, k) - 1.0 / (n + k + 1) as f64).abs());
        }
    }
    Ok((
        worst <= 1e-12,
        format!("max |gamma - 1/(n+k+1)| = {worst:e}"),
    ))
}

fn cesaro(_: &Ctx) -> Verdict {
    let m = hausdorff_matrix(&Measure::lebesgue(), 64)?;
    let mut worst = 0.0f64;
    for n in 0..64 {
        for k in 0..64 {
            let want = if k <= n { 1.0 / (n + 1) as f64 } else { 0.0 };
            worst = worst.max((m.get(n, k) - want).abs());
        }
    }
    Ok((worst <= 1e-12, format!("max row deviation {worst:e}")))
}

fn difference_path(_: &Ctx) -> Verdict {
    let mut worst = 0.0f64;
    for (_, mu) in test_measures() {
        // Rounding in f64 moments is amplified by up to 3^(N-1) along this path.
        let a = hausdorff_matrix(&mu, 16)?;
        let b = hausdorff_matrix_via_differences(&mu.moments(16)?, 16)?;
        worst = worst.max(a.max_abs_diff(&b));
    }
    Ok((worst <= 1e-9, format!("max gap at N=16 {worst:e}")))
}

fn composition_adjoint(_: &Ctx) -> Verdict {
    let mut worst = 0.0f64;
    for t in [0.1, 0.5, 0.9] {
        let a = composition_matrix(t, 128)?.transpose();
        let b = composition_matrix(1.0 - t, 128)?;
        worst = worst.max(
            a.entries()
                .iter()
                .zip(b.entries())
                .map(|(x, y)| (x - y).abs())
                .fold(0.0, f64::max),
        );
    }
    Ok((worst <= 1e-14, format!("max |T_t' - T_(1-t)| {worst:e}")))
}

fn hankel_iff_moments(_: &Ctx) -> Verdict {
    for (name, mu) in test_measures() {
        let structural = is_hankel(&gamma_matrix(&mu, 16)?, 1e-9).holds;
        let moments = hankel_moment_test(&mu, 32, 1e-9)?.holds;
        let expected = matches!(name, "lebesgue" | "2lebesgue");
        if structural != moments || structural != expected {
            return Ok((
                false,
                format!("{name}: hankel {structural}, moment test {moments}"),
            ));
        }
    }
    Ok((true, "Hankel exactly for multiples of Lebesgue".into()))
}

fn parseval(_: &Ctx) -> Verdict {
    let grid = BoundaryGrid::new(256)?;
    let mut worst = 0.0f64;
    for f in random_polys(100, 64) {
        let moduli: Vec<f64> = evaluate_on_grid(&f, &grid)
            .iter()
            .map(|v| v.norm())
            .collect();
        let l2 = f.l2_norm();
        worst = worst.max((hp_norm_moduli(&moduli, 2.0)? - l2).abs() / l2.max(1.0));
    }
    Ok((
        worst <= 1e-12,
        format!("100 polynomials, max relative gap {worst:e}"),
    ))
}

fn power_means(_: &Ctx) -> Verdict {
    let grid = BoundaryGrid::new(256)?;
    for (i, f) in random_polys(100, 64).iter().enumerate() {
        let (n1, n2, n4) = (
            hp_norm(f, 1.0, &grid)?,
            hp_norm(f, 2.0, &grid)?,
            hp_norm(f, 4.0, &grid)?,
        );
        if !(n1 <= n2 * (1.0 + 1e-12) && n2 <= n4 * (1.0 + 1e-12)) {
            return Ok((
                false,
                format!("polynomial {i}: norms {n1}, {n2}, {n4} not ordered"),
            ));
        }
    }
    Ok((true, "H^1 <= H^2 <= H^4 on 100 polynomials".into()))
}

fn classical_inequalities(_: &Ctx) -> Verdict {
    let grid = BoundaryGrid::new(256)?;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 1);
    let mut margin = f64::INFINITY;
    for (i, f) in random_polys(100, 64).iter().enumerate() {
        let hardy = hardy_inequality_check(f, &grid)?;
        let z = Complex64::from_polar(rng.gen_range(0.0..0.99), rng.gen_range(0.0..2.0 * PI));
        let p = [1.0, 2.0, 3.0][i % 3];
        let growth = growth_estimate_check(f, p, z, &grid)?;
        for (what, c) in [("hardy", hardy), ("growth", growth)] {
            if !c.holds(1e-6) {
                return Ok((
                    false,
                    format!("polynomial {i}: {what} lhs {} > rhs {}", c.lhs, c.rhs),
                ));
            }
            margin = margin.min(c.rhs - c.lhs);
        }
    }
    Ok((true, format!("smallest margin {margin:e}")))
}

fn kernel_normalization(_: &Ctx) -> Verdict {
    let grid = BoundaryGrid::new(8192)?;
    let mut worst = 0.0f64;
    for r in [0.0, 0.5, 0.9] {
        let (k, _) = kernel_kw(Complex64::new(r, 0.0), 2.0, 0)?;
        worst = worst.max((hp_norm_boundary(&k, 2.0, &grid)? - 1.0).abs());
    }
    Ok((worst <= 1e-10, format!("max |‖k_r‖_2 - 1| {worst:e}")))
}

fn positivity(_: &Ctx) -> Verdict {
    for (name, mu) in test_measures() {
        let one = gamma_of_one(&mu, 32)?;
        if one
            .coeffs()
            .iter()
            .any(|c| c.re.is_nan() || c.re <= 0.0 || c.im != 0.0)
        {
            return Ok((
                false,
                format!("{name}: Gamma(1) has a non-positive coefficient"),
            ));
        }
    }
    Ok((true, "Gamma(1) coefficients positive".into()))
}

fn linearity_and_adjoint(_: &Ctx) -> Verdict {
    let polys = random_polys(8, 31);
    let mut worst_lin = 0.0f64;
    let mut worst_adj = 0.0f64;
    for (_, mu) in test_measures() {
        let h = OperatorHandle::new(mu, 32, BoundaryGrid::new(64)?)?;
        for pair in polys.windows(2) {
            let (f, g) = (&pair[0], &pair[1]);
            let (alpha, beta) = (Complex64::new(0.7, -0.2), Complex64::new(-1.3, 0.4));
            let fp = CoefficientVector::new(f.padded(32))?;
            let gp = CoefficientVector::new(g.padded(32))?;
            let combo: Vec<Complex64> = fp
                .coeffs()
                .iter()
                .zip(gp.coeffs())
                .map(|(a, b)| alpha * a + beta * b)
                .collect();
            let lhs = apply_gamma_coefficients(&h, &CoefficientVector::new(combo)?)?;
            let (gf, gg) = (
                apply_gamma_coefficients(&h, &fp)?,
                apply_gamma_coefficients(&h, &gp)?,
            );
            let rhs: Vec<Complex64> = gf
                .coeffs()
                .iter()
                .zip(gg.coeffs())
                .map(|(a, b)| alpha * a + beta * b)
                .collect();
            worst_lin = worst_lin.max(max_gap(lhs.coeffs(), &rhs));

            let inner = |a: &[Complex64], b: &[Complex64]| {
                a.iter()
                    .zip(b)
                    .map(|(x, y)| x * y.conj())
                    .sum::<Complex64>()
            };
            let adj = apply_gamma_adjoint_coefficients(&h, &gp)?;
            worst_adj = worst_adj
                .max((inner(gf.coeffs(), gp.coeffs()) - inner(fp.coeffs(), adj.coeffs())).norm());
        }
    }
    let ok = worst_lin <= 1e-12 && worst_adj <= 1e-12;
    Ok((
        ok,
        format!("linearity gap {worst_lin:e}, adjoint gap {worst_adj:e}"),
    ))
}

fn atomic_representation(_: &Ctx) -> Verdict {
    let grid = BoundaryGrid::new(64)?;
    let mut worst = 0.0f64;
    for spec in ["dirac:0.5", "dirac:0.3:2", "dirac:0.5+dirac:0.7:0.5"] {
        let h = OperatorHandle::new(parse_measure(spec)?, 160, grid.clone())?;
        for f in random_polys(4, 8) {
            let coeff = evaluate_on_grid(&apply_gamma_coefficients(&h, &f)?, &grid);
            let boundary = apply_gamma_boundary(&h, &BoundaryFunction::Polynomial(f))?;
            worst = worst.max(max_gap(&coeff, &boundary.values));
        }
    }
    Ok((
        worst <= 1e-10,
        format!("atomic measures, max path gap {worst:e}"),
    ))
}

fn psi_values(_: &Ctx) -> Verdict {
    let leb = psi_value(&Measure::lebesgue(), 2.0)?;
    let half = psi_value(&Measure::dirac(0.5)?, 2.0)?;
    let h1 = psi_integral(&Measure::lebesgue(), 1.0)?;
    let ok = (leb - PI).abs() <= 1e-10
        && half == 2.0
        && h1
            == PsiValue::Divergent {
                endpoint: Endpoint::One,
            };
    Ok((
        ok,
        format!(
            "psi_2(lebesgue) - pi = {:e}, psi_2(dirac 1/2) = {half}",
            leb - PI
        ),
    ))
}

fn section_sandwich(ctx: &Ctx) -> Verdict {
    let sizes: &[usize] = if ctx.full() {
        &[16, 64, 256, 1024]
    } else {
        &[16, 64, 256]
    };
    for (name, mu) in [
        ("lebesgue", Measure::lebesgue()),
        ("dirac0.5", Measure::dirac(0.5)?),
    ] {
        let target = psi_value(&mu, 2.0)?;
        let mut prev = 0.0;
        for &n in sizes {
            let v = finite_section_norm(&mu, n)?.value;
            if v < prev - 1e-12 || v > target + 1e-9 {
                return Ok((
                    false,
                    format!("{name}: section({n}) = {v}, previous {prev}, psi {target}"),
                ));
            }
            prev = v;
        }
    }
    Ok((
        true,
        format!(
            "nondecreasing and below psi_2 for N up to {}",
            sizes[sizes.len() - 1]
        ),
    ))
}

fn section_closed_form(_: &Ctx) -> Verdict {
    let v = finite_section_norm(&Measure::lebesgue(), 2)?.value;
    let want = (4.0 + 13f64.sqrt()) / 6.0;
    Ok((
        (v - want).abs() <= 1e-12,
        format!("2x2 Hilbert section off by {:e}", v - want),
    ))
}

fn proof_bounds(_: &Ctx) -> Verdict {
    for (name, mu) in [
        ("lebesgue", Measure::lebesgue()),
        ("dirac0.5", Measure::dirac(0.5)?),
    ] {
        for p in [2.0, 3.0, 4.0] {
            let b = proof_lower_bounds(&mu, p)?;
            let psi = psi_value(&mu, p)?;
            if b.first > psi + 1e-9 || b.second > psi + 1e-9 {
                return Ok((
                    false,
                    format!(
                        "{name}, p={p}: bounds {} {} exceed psi {psi}",
                        b.first, b.second
                    ),
                ));
            }
        }
    }
    Ok((true, "proof bounds below psi_p for p in {2,3,4}".into()))
}

fn t_bound(ctx: &Ctx) -> Verdict {
    let n = if ctx.full() { 1024 } else { 256 };
    let mut margin = f64::INFINITY;
    for t in [0.1, 0.5, 0.9] {
        let b = t_norm_bound_check(t, 2.0, n)?;
        if b.section > b.bound + 1e-9 {
            return Ok((
                false,
                format!("t={t}: section {} > bound {}", b.section, b.bound),
            ));
        }
        margin = margin.min(b.bound - b.section);
    }
    Ok((true, format!("N={n}, smallest margin {margin:e}")))
}

fn divergent_growth(ctx: &Ctx) -> Verdict {
    let mu = parse_measure("jacobi:a=0,b=-0.6")?;
    if psi_integral(&mu, 2.0)?.value().is_some() {
        return Ok((false, "psi_2 should diverge for beta = -0.6".into()));
    }
    let top = if ctx.full() { 1024 } else { 128 };
    let mut n = 16;
    let mut prev = finite_section_norm(&mu, n)?.value;
    while 2 * n <= top {
        let next = finite_section_norm(&mu, 2 * n)?.value;
        if next <= prev + 1e-6 {
            return Ok((
                false,
                format!(
                    "section({}) = {next} does not exceed section({n}) = {prev}",
                    2 * n
                ),
            ));
        }
        (n, prev) = (2 * n, next);
    }
    Ok((
        true,
        format!("section norms keep growing up to N={top}, last {prev}"),
    ))
}

fn compactness_floor(ctx: &Ctx) -> Verdict {
    let grid = BoundaryGrid::new(8192)?;
    let schedule: &[f64] = if ctx.full() {
        &[0.9, 0.99, 0.999]
    } else {
        &[0.9, 0.99]
    };
    let mut lowest = f64::INFINITY;
    for (name, mu) in [
        ("lebesgue", Measure::lebesgue()),
        ("dirac0.5", Measure::dirac(0.5)?),
    ] {
        let floor = mu.total_mass()? / 2f64.sqrt();
        let report = compactness_probe(&mu, 2.0, schedule, &grid)?;
        for (r, v) in schedule.iter().zip(&report.responses) {
            if *v < floor - 1e-3 {
                return Ok((
                    false,
                    format!("{name}, r={r}: response {v} below floor {floor}"),
                ));
            }
            lowest = lowest.min(v - floor);
        }
    }
    Ok((true, format!("smallest margin over the floor {lowest:e}")))
}

fn lambda_bound(_: &Ctx) -> Verdict {
    let grid = BoundaryGrid::new(256)?;
    for spec in ["lebesgue", "dirac:0.5", "jacobi:a=0,b=1,poly=2"] {
        let check = lambda_lower_bound_check(&parse_measure(spec)?, 0.4, &grid)?;
        if !check.holds {
            return Ok((
                false,
                format!(
                    "{spec}: min |Lambda| {} below {}",
                    check.min_modulus, check.bound
                ),
            ));
        }
    }
    Ok((true, "lower bound on |Lambda_a| holds at a=0.4".into()))
}

fn probe_below_target(_: &Ctx) -> Verdict {
    let grid = BoundaryGrid::new(65536)?;
    let report = norm_probe_fa(
        &Measure::dirac(0.5)?,
        2.0,
        &default_a_schedule(2.0),
        0.0,
        &grid,
    )?;
    let detail = format!(
        "responses {:?}, target {:?}",
        report.responses, report.target
    );
    Ok((report.verdict, detail))
}

fn determinism(_: &Ctx) -> Verdict {
    let commands = [
        Command::Matrix {
            kind: KindArg::Gamma,
            t: None,
            n: 24,
            measure: Some("jacobi:a=0.5,b=-0.3".into()),
            via_differences: false,
        },
        Command::Criterion {
            measure: "lebesgue+dirac:0.4".into(),
            p: 2.0,
        },
    ];
    for cmd in &commands {
        let first = serde_json::to_string_pretty(&dispatch(cmd)?.json).expect("json");
        let second = serde_json::to_string_pretty(&dispatch(cmd)?.json).expect("json");
        if first != second {
            return Ok((false, format!("{} reports differ between runs", cmd.name())));
        }
    }
    Ok((true, "repeated reports byte-identical".into()))
}

const FAST: &[Invariant] = &[
    Invariant {
        name: "measure.total_monotone",
        run: total_monotone,
    },
    Invariant {
        name: "measure.json_round_trip",
        run: json_round_trip,
    },
    Invariant {
        name: "measure.restriction_mass",
        run: restriction_mass,
    },
    Invariant {
        name: "matrices.nonnegative",
        run: nonnegative_entries,
    },
    Invariant {
        name: "matrices.hilbert",
        run: hilbert,
    },
    Invariant {
        name: "matrices.cesaro",
        run: cesaro,
    },
    Invariant {
        name: "matrices.difference_path",
        run: difference_path,
    },
    Invariant {
        name: "matrices.composition_adjoint",
        run: composition_adjoint,
    },
    Invariant {
        name: "matrices.hankel_iff_moments",
        run: hankel_iff_moments,
    },
    Invariant {
        name: "hardy.parseval",
        run: parseval,
    },
    Invariant {
        name: "hardy.power_means",
        run: power_means,
    },
    Invariant {
        name: "hardy.classical_inequalities",
        run: classical_inequalities,
    },
    Invariant {
        name: "hardy.kernel_normalization",
        run: kernel_normalization,
    },
    Invariant {
        name: "operators.positivity",
        run: positivity,
    },
    Invariant {
        name: "operators.linearity_adjoint",
        run: linearity_and_adjoint,
    },
    Invariant {
        name: "operators.atomic_representation",
        run: atomic_representation,
    },
    Invariant {
        name: "analysis.psi_values",
        run: psi_values,
    },
    Invariant {
        name: "analysis.section_sandwich",
        run: section_sandwich,
    },
    Invariant {
        name: "analysis.section_closed_form",
        run: section_closed_form,
    },
    Invariant {
        name: "analysis.proof_bounds",
        run: proof_bounds,
    },
    Invariant {
        name: "analysis.t_bound",
        run: t_bound,
    },
    Invariant {
        name: "analysis.divergent_growth",
        run: divergent_growth,
    },
    Invariant {
        name: "analysis.compactness_floor",
        run: compactness_floor,
    },
    Invariant {
        name: "analysis.lambda_bound",
        run: lambda_bound,
    },
    Invariant {
        name: "cli.determinism",
        run: determinism,
    },
];

const FULL_ONLY: &[Invariant] = &[Invariant {
    name: "analysis.probe_below_target",
    run: probe_below_target,
}];

pub fn run_suite(suite: Suite, fault: Option<Fault>) -> CheckSummary {
    let ctx = Ctx { suite, fault };
    let extra: &[Invariant] = if suite == Suite::Full { FULL_ONLY } else { &[] };
    let results: Vec<InvariantResult> = FAST
        .iter()
        .chain(extra)
        .map(|inv| {
            let (passed, detail) = match (inv.run)(&ctx) {
                Ok(v) => v,
                Err(e) => (false, format!("error: {e}")),
            };
            InvariantResult {
                name: inv.name,
                passed,
                detail,
            }
        })
        .collect();
    CheckSummary {
        suite: match suite {
            Suite::Fast => "fast",
            Suite::Full => "full",
        },
        passed: results.iter().all(|r| r.passed),
        results,
    }
}

pub fn summary_json(summary: &CheckSummary) -> serde_json::Value {
    json!(summary)
}
