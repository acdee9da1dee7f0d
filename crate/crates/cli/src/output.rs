//! Report envelope, error classification and rendering.

use clap::ValueEnum;
use mac_core::CoreError;
use serde::Serialize;
use serde_json::{json, Value};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

/// Everything that determines a run.  Unused fields are `null`.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub n: Option<usize>,
    pub r: Option<usize>,
    pub lambda: Option<Vec<i64>>,
    pub height: Option<u32>,
    pub depth: Option<u32>,
    pub weyl_len: Option<usize>,
    pub theta: Option<String>,
    pub theta_mode: Option<String>,
    pub samples: Option<usize>,
    pub holdout: Option<usize>,
    pub imag_mult: Option<u32>,
    pub seed: u64,
    pub format: Format,
}

impl RunConfig {
    pub fn new(seed: u64, format: Format) -> RunConfig {
        RunConfig {
            command: String::new(),
            n: None,
            r: None,
            lambda: None,
            height: None,
            depth: None,
            weyl_len: None,
            theta: None,
            theta_mode: None,
            samples: None,
            holdout: None,
            imag_mult: None,
            seed,
            format,
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Resource(String),
    Core(CoreError),
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> CliError {
        CliError::Core(e)
    }
}

impl CliError {
    fn kind_and_code(&self) -> (&'static str, i32) {
        match self {
            CliError::Input(_) => ("input", 2),
            CliError::Resource(_) => ("resource", 3),
            CliError::Core(e) => match e {
                CoreError::WeylTruncation(_) | CoreError::HeightTruncation(_) => ("resource", 3),
                CoreError::InvalidArgument(_)
                | CoreError::NotDominant(_)
                | CoreError::NotInLattice(_)
                | CoreError::LatticeMismatch(_)
                | CoreError::NotSymmetric
                | CoreError::Underdetermined(_)
                | CoreError::Resonance(_) => ("input", 2),
                _ => ("check", 1),
            },
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Input(m) | CliError::Resource(m) => m.clone(),
            CliError::Core(e) => e.to_string(),
        }
    }
}

/// Print the report and return the exit code.
pub fn emit(cfg: &RunConfig, res: Result<(Value, bool), CliError>) -> i32 {
    let (body, code) = match res {
        Ok((v, ok)) => (json!({ "schema": SCHEMA, "config": cfg, "result": v }), if ok { 0 } else { 1 }),
        Err(e) => {
            let (kind, code) = e.kind_and_code();
            (
                json!({ "schema": SCHEMA, "config": cfg, "error": { "kind": kind, "message": e.message() } }),
                code,
            )
        }
    };
    match cfg.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&body).unwrap()),
        Format::Text => print!("{}", to_text(&body)),
    }
    code
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&p, x, out);
            }
        }
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let items: Vec<String> = a.iter().map(scalar_text).collect();
            out.push((prefix.to_string(), format!("[{}]", items.join(", "))));
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, out);
            }
        }
        x => out.push((prefix.to_string(), scalar_text(x))),
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        x => x.to_string(),
    }
}

/// One `key  value` line per leaf, keys padded to a common width.
pub fn to_text(v: &Value) -> String {
    let mut rows = Vec::new();
    flatten("", v, &mut rows);
    let w = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    let mut s = String::new();
    for (k, x) in rows {
        let pad = w - k.chars().count();
        s.push_str(&k);
        s.push_str(&" ".repeat(pad + 2));
        s.push_str(&x);
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_is_aligned() {
        let v = json!({ "a": 1, "bb": { "c": [1, 2], "d": [{ "e": "x" }] } });
        assert_eq!(to_text(&v), "a          1\nbb.c       [1, 2]\nbb.d[0].e  x\n");
    }

    #[test]
    fn errors_are_classified() {
        assert_eq!(CliError::from(CoreError::NotDominant("x".into())).kind_and_code().1, 2);
        assert_eq!(CliError::from(CoreError::WeylTruncation(3)).kind_and_code().1, 3);
        assert_eq!(CliError::from(CoreError::CheckFailed("x".into())).kind_and_code().1, 1);
    }
}
