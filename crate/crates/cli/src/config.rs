//! `--config <path>`: a JSON object whose keys are flag names (plus `command`
//! and, for `check`, `suite`). Its values are spliced in ahead of the inline
//! flags, so inline flags override them.

use std::fs;

use serde_json::Value;

use crate::CliError;

fn flag_value(v: &Value) -> Result<Option<String>, CliError> {
    Ok(match v {
        Value::Null | Value::Bool(false) => None,
        Value::Bool(true) => Some(String::new()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) => {
            let parts = items
                .iter()
                .map(|x| match x {
                    Value::Number(n) => Ok(n.to_string()),
                    Value::String(s) => Ok(s.clone()),
                    _ => Err(CliError::Usage(
                        "config lists may hold only numbers or strings".into(),
                    )),
                })
                .collect::<Result<Vec<_>, _>>()?;
            Some(parts.join(","))
        }
        Value::Object(_) => {
            return Err(CliError::Usage(
                "nested objects are not valid flag values".into(),
            ))
        }
    })
}

/// Removes `--config` from `args` and returns the merged argument list.
pub fn expand(args: Vec<String>) -> Result<Vec<String>, CliError> {
    let mut rest = Vec::with_capacity(args.len());
    let mut path = None;
    let mut iter = args.into_iter();
    if let Some(bin) = iter.next() {
        rest.push(bin);
    }
    while let Some(a) = iter.next() {
        if a == "--config" {
            path = Some(
                iter.next()
                    .ok_or_else(|| CliError::Usage("--config needs a path".into()))?,
            );
        } else if let Some(p) = a.strip_prefix("--config=") {
            path = Some(p.to_string());
        } else {
            rest.push(a);
        }
    }
    let Some(path) = path else {
        return Ok(rest);
    };
    let text = fs::read_to_string(&path).map_err(|e| CliError::Io(format!("{path}: {e}")))?;
    let doc: Value =
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{path}: {e}")))?;
    let Value::Object(map) = doc else {
        return Err(CliError::Usage(format!(
            "{path}: config must be a JSON object"
        )));
    };
    let command = match map.get("command") {
        Some(Value::String(c)) => c.clone(),
        _ => {
            return Err(CliError::Usage(format!(
                "{path}: config needs a string \"command\""
            )))
        }
    };

    let mut merged = vec![rest[0].clone(), command.clone()];
    if let Some(suite) = map.get("suite").and_then(Value::as_str) {
        merged.push(suite.to_string());
    }
    for (key, value) in &map {
        if key == "command" || key == "suite" {
            continue;
        }
        if let Some(v) = flag_value(value)? {
            merged.push(format!("--{}", key.replace('_', "-")));
            if !v.is_empty() {
                merged.push(v);
            }
        }
    }
    let mut inline = rest.into_iter().skip(1).peekable();
    if inline.peek() == Some(&command) {
        inline.next();
    }
    merged.extend(inline);
    Ok(merged)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn passthrough_without_config() {
        let a = args(&["gamma-mu", "criterion", "--measure", "lebesgue", "--p", "2"]);
        assert_eq!(expand(a.clone()).unwrap(), a);
    }

    #[test]
    fn config_is_spliced_before_inline_flags() {
        let dir = std::env::temp_dir().join(format!("gamma-mu-config-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("run.json");
        fs::write(
            &path,
            r#"{"command": "norm", "measure": "lebesgue", "p": 2, "a_list": [0.1, 0.2]}"#,
        )
        .unwrap();
        let got = expand(args(&[
            "gamma-mu",
            "--config",
            path.to_str().unwrap(),
            "--p",
            "3",
        ]))
        .unwrap();
        assert_eq!(
            got,
            args(&[
                "gamma-mu",
                "norm",
                "--a-list",
                "0.1,0.2",
                "--measure",
                "lebesgue",
                "--p",
                "2",
                "--p",
                "3"
            ])
        );
        fs::write(&path, r#"["norm"]"#).unwrap();
        assert!(expand(args(&["gamma-mu", "--config", path.to_str().unwrap()])).is_err());
        fs::remove_dir_all(&dir).unwrap();
    }
}
