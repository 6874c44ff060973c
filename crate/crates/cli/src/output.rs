use std::io::Write;

use serde::Serialize;
use serde_json::Value;

use gt_core::Error;

/// Version of the JSON envelope and of `schema/gtr-output.schema.json`.
pub const SCHEMA_VERSION: &str = "1.0.0";

#[derive(Debug)]
pub enum CliError {
    /// Bad flags or input: exit 2.
    Usage(String),
    /// A computation found a violated property before producing output: exit 1.
    Failed(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::IrrationalEigenvalue | Error::NotNilpotent | Error::RootNotInSystem(_) => Self::Failed(e.to_string()),
            _ => Self::Usage(e.to_string()),
        }
    }
}

#[derive(Serialize)]
struct Envelope<'a> {
    schema_version: &'a str,
    command: &'a str,
    ok: bool,
    result: &'a Value,
}

/// A finished command: its verdict, JSON payload and text rendering.
pub struct Output {
    pub command: String,
    pub ok: bool,
    pub result: Value,
    pub text: String,
}

impl Output {
    pub fn new(command: &str, ok: bool, result: impl Serialize, text: String) -> Self {
        Self {
            command: command.to_string(),
            ok,
            result: serde_json::to_value(result).expect("results serialize"),
            text,
        }
    }

    /// Write errors (a closed pipe) are ignored.
    pub fn print(&self, json: bool) {
        let mut body = if json {
            let env = Envelope { schema_version: SCHEMA_VERSION, command: &self.command, ok: self.ok, result: &self.result };
            serde_json::to_string_pretty(&env).expect("serializable")
        } else {
            self.text.clone()
        };
        if !body.ends_with('\n') {
            body.push('\n');
        }
        let _ = std::io::stdout().lock().write_all(body.as_bytes());
    }
}
