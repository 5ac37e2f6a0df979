//! Measure literals: `lebesgue`, `zero`, `dirac:<t>[:<w>]`,
//! `jacobi:a=<alpha>,b=<beta>[,poly=<c0,c1,...>]`, sums joined with `+`, or a
//! JSON document `{"atoms": [...], "densities": [...]}`.

use super::{JacobiDensity, Measure};
use crate::error::{Error, Result};

pub fn parse_measure(text: &str) -> Result<Measure> {
    let text = text.trim();
    if text.starts_with('{') {
        return serde_json::from_str(text).map_err(|e| Error::Parse(format!("measure JSON: {e}")));
    }
    if text.is_empty() {
        return Err(Error::Parse("empty measure literal".into()));
    }
    let mut total = Measure::zero();
    for term in text.split('+') {
        total = total.plus(&parse_term(term.trim())?);
    }
    Ok(total)
}

fn number(s: &str, what: &str) -> Result<f64> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| Error::Parse(format!("{what}: cannot parse '{s}' as a number")))
}

fn parse_term(term: &str) -> Result<Measure> {
    let (head, rest) = match term.split_once(':') {
        Some((h, r)) => (h, Some(r)),
        None => (term, None),
    };
    match (head.to_ascii_lowercase().as_str(), rest) {
        ("lebesgue", None) => Ok(Measure::lebesgue()),
        ("zero", None) => Ok(Measure::zero()),
        ("dirac", Some(args)) => {
            let mut parts = args.split(':');
            let t = number(parts.next().unwrap_or(""), "dirac position")?;
            let w = match parts.next() {
                Some(w) => number(w, "dirac weight")?,
                None => 1.0,
            };
            if parts.next().is_some() {
                return Err(Error::Parse(format!(
                    "dirac literal '{term}' has too many fields"
                )));
            }
            Measure::weighted_dirac(t, w)
        }
        ("jacobi", Some(args)) => parse_jacobi(args),
        _ => Err(Error::Parse(format!("unknown measure literal '{term}'"))),
    }
}

fn parse_jacobi(args: &str) -> Result<Measure> {
    let (head, poly) = match args.find("poly=") {
        Some(i) => (&args[..i], Some(&args[i + 5..])),
        None => (args, None),
    };
    let mut alpha = 0.0;
    let mut beta = 0.0;
    for field in head.split(',').map(str::trim).filter(|f| !f.is_empty()) {
        match field.split_once('=') {
            Some(("a", v)) => alpha = number(v, "jacobi alpha")?,
            Some(("b", v)) => beta = number(v, "jacobi beta")?,
            _ => return Err(Error::Parse(format!("unknown jacobi field '{field}'"))),
        }
    }
    let poly = match poly {
        Some(p) => p
            .split(',')
            .map(|c| number(c, "jacobi polynomial"))
            .collect::<Result<Vec<_>>>()?,
        None => vec![1.0],
    };
    Ok(Measure {
        atoms: Vec::new(),
        densities: vec![JacobiDensity::new(alpha, beta, poly)?],
    })
}
