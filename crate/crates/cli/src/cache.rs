//! Content-addressed result cache: one JSON file per (task, inputs, engine version, seed).
//!
//! A file is trusted only if it parses, carries the expected key and task, and
//! rebuilds into a result. Anything else is ignored and overwritten.

use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::report::TaskResult;

#[derive(Clone, Debug)]
pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn disabled() -> Self {
        Cache { dir: None }
    }

    pub fn at(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: Some(dir.into()) }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn key(result_stub: &TaskResult) -> String {
        let material = json!({
            "task": result_stub.task,
            "inputs": Value::Object(result_stub.inputs.clone()),
            "engine_version": result_stub.engine_version,
            "seed": result_stub.seed,
        });
        hex::encode(Sha256::digest(material.to_string().as_bytes()))
    }

    fn path(&self, key: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{key}.json")))
    }

    pub fn load(&self, stub: &TaskResult) -> Option<TaskResult> {
        let key = Self::key(stub);
        let text = fs::read_to_string(self.path(&key)?).ok()?;
        let v: Value = serde_json::from_str(&text).ok()?;
        if v.get("cache_key")?.as_str()? != key {
            return None;
        }
        let input_keys: Vec<&str> = stub.inputs.keys().map(String::as_str).collect();
        let mut stored = v.get("result")?.clone();
        stored.as_object_mut()?.remove("elapsed_ms");
        let r = TaskResult::from_value(&stored, &input_keys)?;
        (r.task == stub.task
            && r.inputs == stub.inputs
            && r.engine_version == stub.engine_version
            && r.seed == stub.seed)
            .then_some(r)
    }

    /// Best effort: a failed write only costs a recomputation later.
    pub fn store(&self, result: &TaskResult) {
        let key = Self::key(result);
        let Some(path) = self.path(&key) else { return };
        let mut clean = result.clone();
        clean.elapsed_ms = None;
        let body = json!({ "cache_key": key, "result": clean.to_value() }).to_string();
        let Some(dir) = self.dir.as_ref() else { return };
        if fs::create_dir_all(dir).is_err() {
            return;
        }
        let tmp = dir.join(format!(".{key}.{}.tmp", std::process::id()));
        if fs::write(&tmp, body).is_ok() && fs::rename(&tmp, &path).is_err() {
            let _ = fs::remove_file(&tmp);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Map;

    fn stub() -> TaskResult {
        let mut inputs = Map::new();
        inputs.insert("n".into(), json!(3));
        TaskResult::new("sign", inputs)
    }

    #[test]
    fn store_then_load() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::at(dir.path());
        let mut r = stub();
        r.out("degree", 2);
        r.elapsed_ms = Some(5);
        cache.store(&r);
        let back = cache.load(&stub()).unwrap();
        assert_eq!(back.outputs, r.outputs);
        assert_eq!(back.elapsed_ms, None);
    }

    #[test]
    fn corrupt_entries_are_ignored() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::at(dir.path());
        let key = Cache::key(&stub());
        fs::write(dir.path().join(format!("{key}.json")), "{not json").unwrap();
        assert!(cache.load(&stub()).is_none());
        fs::write(
            dir.path().join(format!("{key}.json")),
            r#"{"cache_key":"other","result":{}}"#,
        )
        .unwrap();
        assert!(cache.load(&stub()).is_none());
    }

    #[test]
    fn key_depends_on_inputs_and_seed() {
        let a = stub();
        let mut b = stub();
        b.seed = Some(1);
        let mut c = stub();
        c.inputs.insert("n".into(), json!(4));
        assert_ne!(Cache::key(&a), Cache::key(&b));
        assert_ne!(Cache::key(&a), Cache::key(&c));
    }
}
