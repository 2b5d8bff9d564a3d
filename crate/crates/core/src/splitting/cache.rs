use std::collections::HashMap;
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use super::{SplittingError, SplittingType};

pub const CACHE_ENV: &str = "SIBLINGS_CACHE_DIR";
const FILE_NAME: &str = "splitting.jsonl";

#[derive(Serialize, Deserialize)]
struct Record {
    field: String,
    base: u32,
    prime: String,
    #[serde(rename = "type")]
    st: SplittingType,
}

type Key = (String, u32, String);

/// Append-only JSON-lines store of computed splitting types. Each record is
/// written with a single `write` on a file opened in append mode, so
/// concurrent writers never interleave within a line; truncated lines are
/// skipped on load.
pub struct SplitCache {
    path: PathBuf,
    known: Mutex<HashMap<Key, SplittingType>>,
    file: Mutex<File>,
}

fn io_err(e: std::io::Error) -> SplittingError {
    SplittingError::Cache(e.to_string())
}

impl SplitCache {
    pub fn open(dir: &Path) -> Result<Self, SplittingError> {
        fs::create_dir_all(dir).map_err(io_err)?;
        let path = dir.join(FILE_NAME);
        let mut known = HashMap::new();
        if path.exists() {
            let reader = BufReader::new(File::open(&path).map_err(io_err)?);
            for line in reader.lines() {
                let line = line.map_err(io_err)?;
                if let Ok(r) = serde_json::from_str::<Record>(&line) {
                    known.insert((r.field, r.base, r.prime), r.st);
                }
            }
        }
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&path)
            .map_err(io_err)?;
        // terminate a torn final line so new records start cleanly
        let text = fs::read(&path).map_err(io_err)?;
        if text.last().is_some_and(|&b| b != b'\n') {
            file.write_all(b"\n").map_err(io_err)?;
        }
        Ok(SplitCache {
            path,
            known: Mutex::new(known),
            file: Mutex::new(file),
        })
    }

    /// Opens the cache named by `SIBLINGS_CACHE_DIR`, if set.
    pub fn from_env() -> Result<Option<Self>, SplittingError> {
        match std::env::var_os(CACHE_ENV) {
            Some(dir) if !dir.is_empty() => Self::open(Path::new(&dir)).map(Some),
            _ => Ok(None),
        }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn len(&self) -> usize {
        self.known.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, field: &str, base: u32, prime: &str) -> Option<SplittingType> {
        let key = (field.to_string(), base, prime.to_string());
        self.known.lock().unwrap().get(&key).cloned()
    }

    pub fn insert(
        &self,
        field: &str,
        base: u32,
        prime: &str,
        st: &SplittingType,
    ) -> Result<(), SplittingError> {
        let key = (field.to_string(), base, prime.to_string());
        {
            let mut known = self.known.lock().unwrap();
            if known.get(&key) == Some(st) {
                return Ok(());
            }
            known.insert(key, st.clone());
        }
        let rec = Record {
            field: field.to_string(),
            base,
            prime: prime.to_string(),
            st: st.clone(),
        };
        let mut line = serde_json::to_string(&rec).map_err(|e| SplittingError::Cache(e.to_string()))?;
        line.push('\n');
        self.file
            .lock()
            .unwrap()
            .write_all(line.as_bytes())
            .map_err(io_err)
    }
}
