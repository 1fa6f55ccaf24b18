use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use sha2::{Digest, Sha256};

use crate::run::RunRecord;
use crate::SurveyError;

/// Content hash of every input that can change a run.
pub fn content_hash(canonical_input: &str) -> String {
    format!("{:x}", Sha256::digest(canonical_input.as_bytes()))
}

/// Directory of finished records keyed by content hash; writes go through one lock.
#[derive(Debug)]
pub struct Cache {
    dir: PathBuf,
    writer: Mutex<()>,
}

impl Cache {
    pub fn new(dir: &Path) -> Result<Self, SurveyError> {
        fs::create_dir_all(dir)?;
        Ok(Self {
            dir: dir.to_path_buf(),
            writer: Mutex::new(()),
        })
    }

    fn path(&self, hash: &str) -> PathBuf {
        self.dir.join(format!("{hash}.json"))
    }

    pub fn get(&self, hash: &str) -> Option<RunRecord> {
        let text = fs::read_to_string(self.path(hash)).ok()?;
        let rec: RunRecord = serde_json::from_str(&text).ok()?;
        (rec.content_hash == hash).then_some(rec)
    }

    pub fn put(&self, rec: &RunRecord) -> Result<(), SurveyError> {
        let _guard = self.writer.lock().expect("cache lock poisoned");
        let tmp = self.dir.join(format!("{}.tmp", rec.content_hash));
        fs::write(&tmp, serde_json::to_string_pretty(rec)?)?;
        fs::rename(tmp, self.path(&rec.content_hash))?;
        Ok(())
    }
}
