use std::fs;

use gamma_mu::{
    apply_gamma_boundary, apply_gamma_coefficients, compactness_probe, complete_continuity_probe,
    composition_matrix, default_a_schedule, finite_section_norm, gamma_matrix, hankel_moment_test,
    hausdorff_matrix, hausdorff_matrix_via_differences, hp_norm, hp_norm_boundary, is_hankel,
    is_toeplitz, kernel_kw, norm_probe_fa, parse_measure, psi_integral, test_function_fa,
    BoundaryFunction, BoundaryGrid, CoefficientVector, Complex64, Measure, OperatorHandle,
    OperatorMatrix, ProbeReport, PsiValue,
};
use serde_json::{json, Value};

use crate::args::{Command, KindArg, MethodArg, PathArg};
use crate::format::{complex_list, csv_table, g17};
use crate::CliError;

/// Result of one subcommand before it is written out.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub json: Value,
    pub csv: Option<String>,
    /// Set when a quadrature or iteration flag survived into the result.
    pub unconverged: Option<String>,
    /// Set when the command refuses on a divergent criterion.
    pub refusal: Option<String>,
}

impl Report {
    fn new(json: Value) -> Self {
        Report {
            json,
            csv: None,
            unconverged: None,
            refusal: None,
        }
    }

    fn with_csv(mut self, csv: String) -> Self {
        self.csv = Some(csv);
        self
    }
}

/// `lebesgue`, `dirac:0.5`, a JSON document, or `@path` to read any of those from a file.
pub fn load_measure(spec: &str) -> Result<Measure, CliError> {
    let text = match spec.strip_prefix('@') {
        Some(path) => fs::read_to_string(path).map_err(|e| CliError::Io(format!("{path}: {e}")))?,
        None => spec.to_string(),
    };
    Ok(parse_measure(text.trim())?)
}

/// Input function given on the command line.
#[derive(Debug, Clone, PartialEq)]
pub enum FunctionSpec {
    Coefficients(CoefficientVector),
    Boundary(BoundaryFunction),
}

fn parse_f64(s: &str, what: &str) -> Result<f64, CliError> {
    s.trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("{what}: cannot parse {s:?} as a number")))
}

fn read_coefficients(path: &str) -> Result<CoefficientVector, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{path}: {e}")))?;
    let doc: Value =
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{path}: {e}")))?;
    let items = doc
        .as_array()
        .ok_or_else(|| CliError::Usage(format!("{path}: expected a JSON array of coefficients")))?;
    let coeffs = items
        .iter()
        .map(|v| match v {
            Value::Number(n) => n.as_f64().map(|re| Complex64::new(re, 0.0)),
            Value::Array(pair) if pair.len() == 2 => {
                Some(Complex64::new(pair[0].as_f64()?, pair[1].as_f64()?))
            }
            _ => None,
        })
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| {
            CliError::Usage(format!(
                "{path}: coefficients must be numbers or [re, im] pairs"
            ))
        })?;
    Ok(CoefficientVector::new(coeffs)?)
}

/// `fa:<a>`, `kernel:<r>[:<q>]`, `coeffs:<path>` or `poly:<c0,c1,...>`.
pub fn parse_function(spec: &str) -> Result<FunctionSpec, CliError> {
    let (head, rest) = spec.split_once(':').ok_or_else(|| {
        CliError::Usage(format!(
            "--f {spec:?}: expected fa:, kernel:, coeffs: or poly:"
        ))
    })?;
    match head {
        "fa" => Ok(FunctionSpec::Boundary(test_function_fa(parse_f64(
            rest, "fa",
        )?)?)),
        "kernel" => {
            let mut parts = rest.split(':');
            let r = parse_f64(parts.next().unwrap_or(""), "kernel radius")?;
            let q = parts
                .next()
                .map(|q| parse_f64(q, "kernel exponent"))
                .transpose()?;
            if parts.next().is_some() {
                return Err(CliError::Usage(format!(
                    "--f {spec:?}: kernel takes at most r and q"
                )));
            }
            let w = Complex64::new(r, 0.0);
            // Unnormalized 1 / (1 - r z) unless an exponent asks for the normalized k_r.
            let f = match q {
                Some(q) => kernel_kw(w, q, 0)?.0,
                None => {
                    if !(0.0..1.0).contains(&r.abs()) {
                        return Err(CliError::Usage(format!(
                            "kernel radius must satisfy |r| < 1, got {r}"
                        )));
                    }
                    BoundaryFunction::Kernel { w, scale: 1.0 }
                }
            };
            Ok(FunctionSpec::Boundary(f))
        }
        "coeffs" => Ok(FunctionSpec::Coefficients(read_coefficients(rest)?)),
        "poly" => {
            let values = rest
                .split(',')
                .map(|c| parse_f64(c, "poly"))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(FunctionSpec::Coefficients(CoefficientVector::from_real(
                &values,
            )?))
        }
        _ => Err(CliError::Usage(format!(
            "--f {spec:?}: unknown function family {head:?}"
        ))),
    }
}

fn matrix_report(m: &OperatorMatrix) -> Report {
    let rows = m.to_rows();
    let csv = rows
        .iter()
        .map(|r| r.iter().map(|&x| g17(x)).collect::<Vec<_>>().join(",") + "\n")
        .collect();
    let mut json = json!({
        "kind": m.kind().label(),
        "N": m.size(),
        "entries": rows,
        "underflow": m.underflowed(),
    });
    if let gamma_mu::MatrixKind::CompositionT { t } = m.kind() {
        json["t"] = json!(t);
    }
    Report::new(json).with_csv(csv)
}

fn schedule_csv(report: &ProbeReport) -> String {
    csv_table(
        &["schedule", "response"],
        report
            .schedule
            .iter()
            .zip(&report.responses)
            .map(|(s, r)| vec![g17(*s), g17(*r)]),
    )
}

fn probe_result(report: ProbeReport) -> Result<Report, CliError> {
    let csv = schedule_csv(&report);
    let unconverged = report.unconverged_nodes;
    let mut out =
        Report::new(serde_json::to_value(&report).expect("probe reports serialize")).with_csv(csv);
    if unconverged > 0 {
        out.unconverged = Some(format!("{unconverged} quadrature nodes did not converge"));
    }
    Ok(out)
}

fn psi_report(value: PsiValue, p: f64) -> Report {
    match value {
        PsiValue::Convergent { value, converged } => {
            let mut r = Report::new(
                json!({ "convergent": true, "p": p, "value": value, "converged": converged }),
            );
            r.csv = Some(csv_table(
                &["p", "convergent", "value"],
                [vec![g17(p), "true".into(), g17(value)]],
            ));
            if !converged {
                r.unconverged = Some("psi integral did not reach the quadrature tolerance".into());
            }
            r
        }
        PsiValue::Divergent { endpoint } => {
            let mut r = Report::new(
                json!({ "convergent": false, "p": p, "endpoint": endpoint.as_f64() as u8 }),
            );
            r.csv = Some(csv_table(
                &["p", "convergent", "endpoint"],
                [vec![g17(p), "false".into(), g17(endpoint.as_f64())]],
            ));
            r
        }
    }
}

fn grid(m: usize) -> Result<BoundaryGrid, CliError> {
    Ok(BoundaryGrid::new(m)?)
}

pub fn dispatch(command: &Command) -> Result<Report, CliError> {
    match command {
        Command::Moments { measure, count } => {
            let mu = load_measure(measure)?;
            let seq = mu.moments(*count)?;
            let values = seq.values();
            let csv = csv_table(
                &["n", "moment"],
                values
                    .iter()
                    .enumerate()
                    .map(|(n, m)| vec![n.to_string(), g17(*m)]),
            );
            Ok(Report::new(json!({ "measure": mu.to_json(), "moments": values })).with_csv(csv))
        }
        Command::Matrix {
            kind,
            t,
            n,
            measure,
            via_differences,
        } => {
            let need_measure = || -> Result<Measure, CliError> {
                let spec = measure.as_deref().ok_or_else(|| {
                    CliError::Usage("--measure is required for this matrix kind".into())
                })?;
                load_measure(spec)
            };
            let m = match kind {
                KindArg::Hausdorff if *via_differences => {
                    let mu = need_measure()?;
                    hausdorff_matrix_via_differences(&mu.moments(*n)?, *n)?
                }
                KindArg::Hausdorff => hausdorff_matrix(&need_measure()?, *n)?,
                KindArg::Gamma => gamma_matrix(&need_measure()?, *n)?,
                KindArg::Tt => {
                    let t = t.ok_or_else(|| CliError::Usage("--kind tt requires --t".into()))?;
                    composition_matrix(t, *n)?
                }
            };
            Ok(matrix_report(&m))
        }
        Command::Structure { measure, n, tol } => {
            let mu = load_measure(measure)?;
            let m = gamma_matrix(&mu, *n)?;
            let hankel = is_hankel(&m, *tol);
            let toeplitz = is_toeplitz(&m, *tol);
            let moments = hankel_moment_test(&mu, 2 * n, *tol)?;
            let csv = csv_table(
                &["check", "holds"],
                [
                    vec!["hankel".into(), hankel.holds.to_string()],
                    vec!["toeplitz".into(), toeplitz.holds.to_string()],
                    vec!["moment_test".into(), moments.holds.to_string()],
                ],
            );
            Ok(Report::new(json!({
                "N": n,
                "hankel": hankel,
                "toeplitz": toeplitz,
                "momentTest": moments,
            }))
            .with_csv(csv))
        }
        Command::Hardy { f, p, grid: m } => {
            let g = grid(*m)?;
            let norm = match parse_function(f)? {
                FunctionSpec::Coefficients(c) => hp_norm(&c, *p, &g)?,
                FunctionSpec::Boundary(b) => hp_norm_boundary(&b, *p, &g)?,
            };
            let csv = csv_table(
                &["p", "M", "norm"],
                [vec![g17(*p), m.to_string(), g17(norm)]],
            );
            Ok(Report::new(json!({ "norm": norm, "p": p, "M": m })).with_csv(csv))
        }
        Command::Apply {
            measure,
            f,
            path,
            n,
            grid: m,
        } => {
            let mu = load_measure(measure)?;
            let handle = OperatorHandle::new(mu, *n, grid(*m)?)?;
            let input = parse_function(f)?;
            match path {
                PathArg::Coeff => {
                    let FunctionSpec::Coefficients(c) = input else {
                        return Err(CliError::Usage(
                            "--path coeff needs a coefficient input (poly: or coeffs:)".into(),
                        ));
                    };
                    let out = apply_gamma_coefficients(&handle, &c)?;
                    let csv = csv_table(
                        &["n", "re", "im"],
                        out.coeffs()
                            .iter()
                            .enumerate()
                            .map(|(i, z)| vec![i.to_string(), g17(z.re), g17(z.im)]),
                    );
                    Ok(Report::new(json!({ "path": "coeff", "N": n, "coefficients": complex_list(out.coeffs()) }))
                        .with_csv(csv))
                }
                PathArg::Boundary => {
                    let b = match input {
                        FunctionSpec::Coefficients(c) => BoundaryFunction::Polynomial(c),
                        FunctionSpec::Boundary(b) => b,
                    };
                    let out = apply_gamma_boundary(&handle, &b)?;
                    let g = handle.grid();
                    let csv = csv_table(
                        &["theta", "re", "im"],
                        out.values
                            .iter()
                            .enumerate()
                            .map(|(j, z)| vec![g17(g.theta(j)), g17(z.re), g17(z.im)]),
                    );
                    let mut r = Report::new(json!({
                        "path": "boundary",
                        "M": m,
                        "values": complex_list(&out.values),
                        "unconvergedNodes": out.unconverged,
                    }))
                    .with_csv(csv);
                    if !out.unconverged.is_empty() {
                        r.unconverged = Some(format!(
                            "{} boundary nodes did not converge",
                            out.unconverged.len()
                        ));
                    }
                    Ok(r)
                }
            }
        }
        Command::Criterion { measure, p } => {
            let mu = load_measure(measure)?;
            Ok(psi_report(psi_integral(&mu, *p)?, *p))
        }
        Command::Norm {
            measure,
            p,
            method,
            n,
            a_list,
            delta,
            grid: m,
        } => {
            let mu = load_measure(measure)?;
            match method {
                MethodArg::Psi => {
                    let mut r = psi_report(psi_integral(&mu, *p)?, *p);
                    r.json["method"] = json!("psiIntegral");
                    if r.json["convergent"] == json!(false) {
                        r.refusal = Some(format!(
                            "psi_{p} integral diverges, the operator is unbounded"
                        ));
                    }
                    Ok(r)
                }
                MethodArg::Section => {
                    if *p != 2.0 {
                        return Err(CliError::Usage(format!(
                            "finite-section norms are only defined for p = 2, got p = {p}"
                        )));
                    }
                    let est = finite_section_norm(&mu, *n)?;
                    let mut r =
                        Report::new(serde_json::to_value(&est).expect("estimates serialize"));
                    r.csv = Some(csv_table(
                        &["N", "value"],
                        [vec![n.to_string(), g17(est.value)]],
                    ));
                    if !est.converged {
                        r.unconverged = Some("power iteration did not converge".into());
                    }
                    Ok(r)
                }
                MethodArg::Probe => {
                    let schedule = a_list.clone().unwrap_or_else(|| default_a_schedule(*p));
                    let report = norm_probe_fa(&mu, *p, &schedule, *delta, &grid(*m)?)?;
                    let last = report.responses.last().copied();
                    let mut r = probe_result(report)?;
                    r.json["method"] = json!("probeFa");
                    r.json["value"] = json!(last);
                    Ok(r)
                }
            }
        }
        Command::Compactness {
            measure,
            p,
            r_list,
            grid: m,
        } => {
            let mu = load_measure(measure)?;
            probe_result(compactness_probe(&mu, *p, r_list, &grid(*m)?)?)
        }
        Command::Ccprobe {
            measure,
            r_list,
            grid: m,
        } => {
            let mu = load_measure(measure)?;
            probe_result(complete_continuity_probe(&mu, r_list, &grid(*m)?)?)
        }
        Command::Check { .. } => unreachable!("check is dispatched by the suite runner"),
    }
}
