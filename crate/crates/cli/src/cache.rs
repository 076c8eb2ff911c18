//! Content-addressed store for exhaustive-search results.
//!
//! An entry lives at `<dir>/<sha256>.json`, where the hash covers the tool
//! version, the task descriptor and every input the task reads. The key
//! material is stored alongside the result and compared on load, so a hash
//! collision or a hand-edited file reads as a miss.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::report::{Outcome, Status};
use crate::CliError;

#[derive(Serialize, Deserialize)]
struct Entry {
    key: Value,
    status: Status,
    outcome: Outcome,
}

#[derive(Debug, Clone)]
pub(crate) struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub(crate) fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    fn path(&self, key: &Value) -> PathBuf {
        let digest = Sha256::digest(key.to_string().as_bytes());
        self.dir.join(format!("{}.json", hex::encode(digest)))
    }

    pub(crate) fn load(&self, key: &Value) -> Option<(Status, Outcome)> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        let entry: Entry = serde_json::from_str(&text).ok()?;
        (entry.key == *key).then_some((entry.status, entry.outcome))
    }

    pub(crate) fn store(&self, key: &Value, status: Status, outcome: &Outcome) -> Result<(), CliError> {
        let io = |path: &Path| {
            let path = path.to_path_buf();
            move |source| CliError::Io { path, source }
        };
        fs::create_dir_all(&self.dir).map_err(io(&self.dir))?;
        let path = self.path(key);
        let entry = Entry { key: key.clone(), status, outcome: outcome.clone() };
        let text = serde_json::to_string(&entry).expect("cache entries serialize");
        // write then rename, so concurrent readers never see a partial file
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        fs::write(&tmp, text).map_err(io(&tmp))?;
        fs::rename(&tmp, &path).map_err(io(&path))
    }
}
