//! Task results and their JSON / TSV encodings.
//!
//! A result serializes to one flat JSON object with sorted keys. Timing is the
//! only field that varies between runs and is emitted only on request.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde_json::{Map, Value};

pub const RESERVED: [&str; 6] = ["task", "certificate", "engine_version", "seed", "pass", "elapsed_ms"];

#[derive(Clone, Debug, PartialEq)]
pub struct TaskResult {
    pub task: String,
    pub inputs: Map<String, Value>,
    pub outputs: Map<String, Value>,
    /// `exact` or `consensus`.
    pub certificate: String,
    pub seed: Option<u64>,
    pub engine_version: String,
    pub pass: bool,
    pub elapsed_ms: Option<u64>,
}

impl TaskResult {
    pub fn new(task: &str, inputs: Map<String, Value>) -> Self {
        TaskResult {
            task: task.to_string(),
            inputs,
            outputs: Map::new(),
            certificate: "exact".into(),
            seed: None,
            engine_version: nfact_core::ENGINE_VERSION.to_string(),
            pass: true,
            elapsed_ms: None,
        }
    }

    pub fn out(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        debug_assert!(
            !RESERVED.contains(&key) && !self.inputs.contains_key(key),
            "key clash: {key}"
        );
        self.outputs.insert(key.to_string(), v.into());
        self
    }

    /// Records a named check and folds it into `pass`.
    pub fn check(&mut self, key: &str, ok: bool) -> &mut Self {
        self.pass &= ok;
        self.out(key, ok)
    }

    pub fn to_value(&self) -> Value {
        let mut m = Map::new();
        for (k, v) in self.inputs.iter().chain(self.outputs.iter()) {
            m.insert(k.clone(), v.clone());
        }
        m.insert("task".into(), self.task.clone().into());
        m.insert("certificate".into(), self.certificate.clone().into());
        m.insert("engine_version".into(), self.engine_version.clone().into());
        m.insert("seed".into(), self.seed.map_or(Value::Null, Value::from));
        m.insert("pass".into(), self.pass.into());
        if let Some(ms) = self.elapsed_ms {
            m.insert("elapsed_ms".into(), ms.into());
        }
        Value::Object(m)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_value()).expect("values are serializable")
    }

    /// Rebuilds a result from its JSON object, given which keys were inputs.
    pub fn from_value(v: &Value, input_keys: &[&str]) -> Option<TaskResult> {
        let obj = v.as_object()?;
        let mut inputs = Map::new();
        let mut outputs = Map::new();
        for (k, val) in obj {
            if RESERVED.contains(&k.as_str()) {
                continue;
            }
            if input_keys.contains(&k.as_str()) {
                inputs.insert(k.clone(), val.clone());
            } else {
                outputs.insert(k.clone(), val.clone());
            }
        }
        Some(TaskResult {
            task: obj.get("task")?.as_str()?.to_string(),
            inputs,
            outputs,
            certificate: obj.get("certificate")?.as_str()?.to_string(),
            seed: match obj.get("seed")? {
                Value::Null => None,
                s => Some(s.as_u64()?),
            },
            engine_version: obj.get("engine_version")?.as_str()?.to_string(),
            pass: obj.get("pass")?.as_bool()?,
            elapsed_ms: None,
        })
    }
}

/// `[[xdeg, ydeg, dim], …]`.
pub fn bigraded(dims: &BTreeMap<(u32, u32), usize>) -> Value {
    Value::Array(dims.iter().map(|(&(a, b), &d)| serde_json::json!([a, b, d])).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Tsv,
}

fn tsv_cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Encodes results one per line. TSV repeats the header whenever the key set changes.
pub fn render(results: &[TaskResult], format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Json => {
            for r in results {
                out.push_str(&r.to_json());
                out.push('\n');
            }
        }
        Format::Tsv => {
            let mut header: Option<Vec<String>> = None;
            for r in results {
                let Value::Object(m) = r.to_value() else { unreachable!() };
                let keys: Vec<String> = m.keys().cloned().collect();
                if header.as_ref() != Some(&keys) {
                    let _ = writeln!(out, "{}", keys.join("\t"));
                    header = Some(keys);
                }
                let cells: Vec<String> = m.values().map(tsv_cell).collect();
                let _ = writeln!(out, "{}", cells.join("\t"));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn sample() -> TaskResult {
        let mut inputs = Map::new();
        inputs.insert("sigma".into(), json!("2,1"));
        let mut r = TaskResult::new("dim", inputs);
        r.out("dim", 6).out("expected", 6).check("dim_ok", true);
        r
    }

    #[test]
    fn json_is_flat_and_sorted() {
        let s = sample().to_json();
        assert!(s.starts_with("{\"certificate\":\"exact\",\"dim\":6,\"dim_ok\":true,"));
        assert!(!s.contains("elapsed_ms"));
    }

    #[test]
    fn round_trip() {
        let r = sample();
        let back = TaskResult::from_value(&r.to_value(), &["sigma"]).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn failing_check_clears_pass() {
        let mut r = sample();
        r.check("other", false);
        assert!(!r.pass);
    }

    #[test]
    fn tsv_header_once_per_shape() {
        let text = render(&[sample(), sample()], Format::Tsv);
        assert_eq!(text.lines().count(), 3);
        assert!(text.lines().next().unwrap().starts_with("certificate\tdim"));
    }
}
