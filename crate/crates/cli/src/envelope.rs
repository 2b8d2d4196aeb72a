use serde::{Deserialize, Serialize};

pub const TOOL: &str = "belyi";
/// Bumped whenever a payload or CSV layout changes.
pub const SCHEMA_VERSION: u32 = 1;

/// Wrapper around every JSON payload.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub tool: String,
    pub version: String,
    pub schema_version: u32,
    pub command: String,
    pub arguments: Vec<String>,
    pub payload: T,
    pub warnings: Vec<String>,
}

impl<T> Envelope<T> {
    pub fn new(command: &str, arguments: &[String], payload: T, warnings: Vec<String>) -> Self {
        Self {
            tool: TOOL.into(),
            version: env!("CARGO_PKG_VERSION").into(),
            schema_version: SCHEMA_VERSION,
            command: command.into(),
            arguments: arguments.to_vec(),
            payload,
            warnings,
        }
    }
}
