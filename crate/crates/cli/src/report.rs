use std::fmt;

use koszulkit::Error;
use serde_json::{json, Map, Value};

/// A command's result, rendered either as text or as the JSON document
/// `{command, parameters, verdicts, certificates, bounds, characteristic,
/// toolkitVersion}`.
pub struct Report {
    pub command: &'static str,
    pub parameters: Map<String, Value>,
    pub verdicts: Vec<Value>,
    pub certificates: Vec<Value>,
    pub bounds: Map<String, Value>,
    pub characteristic: u64,
    pub text: String,
    /// Set when an internal consistency check failed.
    pub cross_check_failure: bool,
}

impl Report {
    pub fn new(command: &'static str, characteristic: u64) -> Self {
        Report {
            command,
            parameters: Map::new(),
            verdicts: Vec::new(),
            certificates: Vec::new(),
            bounds: Map::new(),
            characteristic,
            text: String::new(),
            cross_check_failure: false,
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }

    pub fn bound(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.bounds.insert(key.to_string(), value.into());
        self
    }

    pub fn line(&mut self, s: impl AsRef<str>) -> &mut Self {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
        self
    }

    pub fn cross_check_failed(&self) -> bool {
        self.cross_check_failure
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "parameters": self.parameters,
            "verdicts": self.verdicts,
            "certificates": self.certificates,
            "bounds": self.bounds,
            "characteristic": self.characteristic,
            "toolkitVersion": koszulkit::TOOLKIT_VERSION,
        })
    }

    pub fn emit(&self, json: bool) -> String {
        if json {
            let mut s = serde_json::to_string_pretty(&self.to_json()).expect("values serialize");
            s.push('\n');
            s
        } else {
            self.text.clone()
        }
    }
}

/// Any error that ends a command, with its exit code.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Toolkit(Error),
}

impl Failure {
    pub const USAGE: u8 = 1;
    pub const PARSE: u8 = 2;
    pub const BOUND: u8 = 3;
    pub const CROSS_CHECK: u8 = 4;

    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => Self::USAGE,
            Failure::Toolkit(e) => match e {
                Error::Parse { .. } | Error::UnknownVariable { .. } | Error::NonHomogeneous { .. } => {
                    Self::PARSE
                }
                Error::DegreeBoundExceeded(_)
                | Error::IncompleteTable { .. }
                | Error::CapTooLow { .. }
                | Error::IncompleteBasis { .. } => Self::BOUND,
                Error::CrossCheck(_) => Self::CROSS_CHECK,
                _ => Self::USAGE,
            },
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(s) => f.write_str(s),
            Failure::Toolkit(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Toolkit(e)
    }
}
