use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{CliError, Result};

/// Record of one run, written as `<out>.manifest.json`. The timestamp lives
/// here and nowhere else, so data files stay byte-identical across runs.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub arguments: Vec<String>,
    pub config: Option<serde_json::Value>,
    pub inputs: Vec<PathBuf>,
    pub outputs: Vec<PathBuf>,
    pub version: String,
    pub timestamp: String,
}

/// Collects the files a command writes.
#[derive(Debug, Default)]
pub struct Outputs {
    written: Vec<PathBuf>,
}

impl Outputs {
    pub fn write(&mut self, path: &Path, contents: &str) -> Result<()> {
        fs::write(path, contents).map_err(|source| CliError::Write { path: path.to_path_buf(), source })?;
        self.written.push(path.to_path_buf());
        Ok(())
    }

    /// Writes to `path` if given, otherwise to stdout.
    pub fn emit(&mut self, path: Option<&Path>, contents: &str) -> Result<()> {
        match path {
            Some(p) => self.write(p, contents),
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout
                    .write_all(contents.as_bytes())
                    .map_err(|source| CliError::Write { path: PathBuf::from("<stdout>"), source })
            }
        }
    }

    pub fn paths(&self) -> &[PathBuf] {
        &self.written
    }
}

/// `<path>` with `suffix` appended to the file name.
pub fn sidecar(path: &Path, suffix: &str) -> PathBuf {
    let mut name = path.file_name().map(|n| n.to_os_string()).unwrap_or_default();
    name.push(suffix);
    path.with_file_name(name)
}

pub fn write_manifest(out: &Path, manifest: &RunManifest) -> Result<PathBuf> {
    let path = sidecar(out, ".manifest.json");
    let text = serde_json::to_string_pretty(manifest).expect("manifest serialises") + "\n";
    fs::write(&path, text).map_err(|source| CliError::Write { path: path.clone(), source })?;
    Ok(path)
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("output serialises") + "\n"
}
