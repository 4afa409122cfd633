use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

/// Output of one command. The machine form omits timing, so identical
/// inputs give byte-identical JSON.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub verdicts: BTreeMap<String, Value>,
    #[serde(default)]
    pub witnesses: BTreeMap<String, Value>,
    /// Theorem-violating outcomes; nonempty means exit code 1.
    #[serde(default)]
    pub failures: Vec<String>,
    #[serde(skip)]
    pub elapsed: Option<Duration>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            verdicts: BTreeMap::new(),
            witnesses: BTreeMap::new(),
            failures: Vec::new(),
            elapsed: None,
        }
    }

    pub fn verdict(&mut self, name: &str, value: impl Serialize) -> &mut Self {
        self.verdicts.insert(name.into(), to_value(value));
        self
    }

    pub fn witness(&mut self, name: &str, value: impl Serialize) -> &mut Self {
        self.witnesses.insert(name.into(), to_value(value));
        self
    }

    pub fn fail(&mut self, why: impl Into<String>) -> &mut Self {
        self.failures.push(why.into());
        self
    }

    /// Adds a failure unless `ok`.
    pub fn require(&mut self, ok: bool, why: impl Into<String>) -> &mut Self {
        if !ok {
            self.fail(why);
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report values are plain JSON")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::invalid(format!("bad report: {e}")))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.command);
        for (k, v) in &self.verdicts {
            let _ = writeln!(out, "  {k}: {}", compact(v));
        }
        if !self.witnesses.is_empty() {
            let _ = writeln!(out, "witnesses:");
            for (k, v) in &self.witnesses {
                let _ = writeln!(out, "  {k}: {}", compact(v));
            }
        }
        for f in &self.failures {
            let _ = writeln!(out, "FAILED: {f}");
        }
        if let Some(t) = self.elapsed {
            let _ = writeln!(out, "time: {:.3} s", t.as_secs_f64());
        }
        out
    }
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("serializable verdict")
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
