use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::commands::Failure;
use crate::manifest::{ManifestBuilder, RunManifest};

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    #[serde(skip_serializing_if = "Option::is_none")]
    manifest: Option<RunManifest>,
    #[serde(flatten)]
    body: &'a T,
}

pub struct Sink {
    pub output: Option<PathBuf>,
    pub no_manifest: bool,
}

fn io_failure(path: &Path, err: impl std::fmt::Display) -> Failure {
    Failure::runtime(format!("cannot write {}: {err}", path.display()))
}

impl Sink {
    fn write(&self, bytes: &[u8]) -> Result<(), Failure> {
        match &self.output {
            Some(path) => fs::write(path, bytes).map_err(|e| io_failure(path, e)),
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(bytes)
                    .and_then(|_| out.flush())
                    .map_err(|e| Failure::runtime(format!("cannot write to stdout: {e}")))
            }
        }
    }

    /// One JSON document; the manifest is embedded unless disabled.
    pub fn json<T: Serialize>(&self, manifest: ManifestBuilder, body: &T) -> Result<(), Failure> {
        let envelope = Envelope {
            manifest: (!self.no_manifest).then(|| manifest.finish()),
            body,
        };
        let mut text = serde_json::to_string_pretty(&envelope)
            .map_err(|e| Failure::runtime(format!("cannot serialize report: {e}")))?;
        text.push('\n');
        self.write(text.as_bytes())
    }

    /// A CSV table with header. CSV has no room for the manifest, so it goes
    /// to `<output>.manifest.json`, or to the error stream without `--output`.
    pub fn csv(&self, manifest: ManifestBuilder, header: &[&str], rows: &[Vec<String>]) -> Result<(), Failure> {
        let mut writer = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        let csv_failure = |e: csv::Error| Failure::runtime(format!("cannot format CSV: {e}"));
        writer.write_record(header).map_err(csv_failure)?;
        for row in rows {
            writer.write_record(row).map_err(csv_failure)?;
        }
        let bytes = writer
            .into_inner()
            .map_err(|e| Failure::runtime(format!("cannot format CSV: {e}")))?;
        self.write(&bytes)?;

        if self.no_manifest {
            return Ok(());
        }
        let manifest = serde_json::to_string(&manifest.finish())
            .map_err(|e| Failure::runtime(format!("cannot serialize manifest: {e}")))?;
        match &self.output {
            Some(path) => {
                let mut sidecar = path.clone().into_os_string();
                sidecar.push(".manifest.json");
                let sidecar = PathBuf::from(sidecar);
                fs::write(&sidecar, format!("{manifest}\n")).map_err(|e| io_failure(&sidecar, e))
            }
            None => {
                eprintln!("manifest: {manifest}");
                Ok(())
            }
        }
    }
}
