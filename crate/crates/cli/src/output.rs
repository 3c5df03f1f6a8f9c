use std::fmt;
use std::io::Write;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use serde_json::Value;

use crate::args::{Format, Global};

pub const EXIT_VALIDATION: u8 = 2;
pub const EXIT_INVARIANT: u8 = 3;
pub const SCHEMA: u32 = 1;

#[derive(Debug)]
pub enum CliError {
    /// Bad input or configuration; exit 2.
    Validation(String),
    /// A check failed while running; exit 3.
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => EXIT_VALIDATION,
            CliError::Invariant(_) => EXIT_INVARIANT,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Validation(m) => write!(f, "error: {m}"),
            CliError::Invariant(m) => write!(f, "invariant violated: {m}"),
        }
    }
}

impl From<fpcheb::Error> for CliError {
    fn from(e: fpcheb::Error) -> Self {
        match e {
            fpcheb::Error::Invariant(m) => CliError::Invariant(m),
            // the construction is supposed to succeed inside its schedule
            e @ fpcheb::Error::Exhausted { .. } => CliError::Invariant(e.to_string()),
            e => CliError::Validation(e.to_string()),
        }
    }
}

pub fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

/// What a command produced, before it is rendered in the chosen format.
pub struct Artifact {
    config: Value,
    result: Option<Value>,
    csv: String,
    table: Option<String>,
    violation: Option<String>,
}

pub struct Emitted {
    pub violation: Option<String>,
}

#[derive(Serialize)]
struct Envelope<'a> {
    schema: u32,
    command: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    timestamp: Option<u64>,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    dry_run: bool,
    config: &'a Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    result: Option<&'a Value>,
}

impl Artifact {
    pub fn dry(config: Value) -> Self {
        Artifact { config, result: None, csv: String::new(), table: None, violation: None }
    }

    pub fn new(config: Value, result: &impl Serialize, csv: String) -> Result<Self, CliError> {
        let result = serde_json::to_value(result).map_err(|e| invalid(format!("json: {e}")))?;
        Ok(Artifact { config, result: Some(result), csv, table: None, violation: None })
    }

    pub fn with_table(mut self, table: String) -> Self {
        self.table = Some(table);
        self
    }

    pub fn with_violation(mut self, violation: Option<String>) -> Self {
        self.violation = violation;
        self
    }

    pub fn write(self, command: &str, g: &Global) -> Result<Emitted, CliError> {
        let text = match (&self.result, g.format, &self.table) {
            (Some(_), None, Some(table)) => table.clone(),
            (Some(_), Some(Format::Csv), _) => self.csv.clone(),
            (result, _, _) => {
                let timestamp = (!g.no_timestamp)
                    .then(|| SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0));
                let env = Envelope {
                    schema: SCHEMA,
                    command,
                    timestamp,
                    dry_run: result.is_none(),
                    config: &self.config,
                    result: result.as_ref(),
                };
                let mut s = serde_json::to_string_pretty(&env).map_err(|e| invalid(format!("json: {e}")))?;
                s.push('\n');
                s
            }
        };
        match &g.output {
            Some(path) => std::fs::write(path, text).map_err(|e| invalid(format!("{}: {e}", path.display())))?,
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(text.as_bytes()).and_then(|_| out.flush()).map_err(|e| invalid(format!("stdout: {e}")))?;
            }
        }
        Ok(Emitted { violation: self.violation })
    }
}

/// Header plus one line per row, LF line endings.
pub fn csv_rows<T: Serialize>(rows: &[T]) -> Result<String, CliError> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    for row in rows {
        w.serialize(row).map_err(|e| invalid(format!("csv: {e}")))?;
    }
    let bytes = w.into_inner().map_err(|e| invalid(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| invalid(format!("csv: {e}")))
}
