use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use time::format_description::well_known::Rfc3339;
use time::OffsetDateTime;

use leo_vn::division::VnCellBounds;

use crate::{CliError, Result};

/// Overrides the default output directory (`./results`).
pub const OUT_DIR_ENV: &str = "LEO_VN_OUT_DIR";

pub(crate) fn resolve_out(explicit: Option<&Path>, default_name: &str) -> PathBuf {
    match explicit {
        Some(p) => p.to_path_buf(),
        None => {
            let dir = std::env::var_os(OUT_DIR_ENV).map_or_else(|| PathBuf::from("results"), PathBuf::from);
            dir.join(default_name)
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn ensure_parent(path: &Path) -> Result<()> {
    match path.parent() {
        Some(dir) if !dir.as_os_str().is_empty() => fs::create_dir_all(dir).map_err(io_err(dir)),
        _ => Ok(()),
    }
}

/// One header row, LF line endings, shortest round-trip floats.
pub(crate) fn write_csv<T: Serialize>(path: &Path, rows: &[T]) -> Result<()> {
    ensure_parent(path)?;
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_path(path)
        .map_err(|e| CliError::Output(format!("{}: {e}", path.display())))?;
    for r in rows {
        w.serialize(r)
            .map_err(|e| CliError::Output(format!("{}: {e}", path.display())))?;
    }
    w.flush().map_err(io_err(path))
}

pub(crate) fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> Result<()> {
    ensure_parent(path)?;
    let mut text = serde_json::to_string_pretty(value).map_err(|e| CliError::Output(e.to_string()))?;
    text.push('\n');
    fs::write(path, text).map_err(io_err(path))
}

pub(crate) fn digest(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

pub(crate) fn now() -> String {
    OffsetDateTime::now_utc().format(&Rfc3339).unwrap_or_default()
}

/// Sidecar written next to every data file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    /// SHA-256 of the effective configuration text.
    pub config_digest: String,
    pub seed: Option<u64>,
    pub subcommand: String,
    pub args: Vec<String>,
    pub version: String,
    pub outputs: Vec<String>,
    pub started: String,
    pub finished: String,
}

impl Manifest {
    pub fn path_for(data: &Path) -> PathBuf {
        let mut name = data.file_name().unwrap_or_default().to_os_string();
        name.push(".manifest.json");
        data.with_file_name(name)
    }

    pub(crate) fn write(&self, data: &Path) -> Result<()> {
        write_json(&Self::path_for(data), self)
    }
}

/// One row of the `divide` table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DivideRow {
    pub v: usize,
    pub h: usize,
    pub region: String,
    #[serde(rename = "lat_low_deg")]
    pub lat_low: f64,
    #[serde(rename = "lat_high_deg")]
    pub lat_high: f64,
    #[serde(rename = "lon_low_deg")]
    pub lon_low: f64,
    #[serde(rename = "lon_high_deg")]
    pub lon_high: f64,
    pub pole_wrap: bool,
}

impl DivideRow {
    pub fn bounds(&self) -> VnCellBounds {
        VnCellBounds {
            lon_low: self.lon_low,
            lon_high: self.lon_high,
            lat_low: self.lat_low,
            lat_high: self.lat_high,
            pole_wrap: self.pole_wrap,
        }
    }
}

pub fn read_divide_csv(path: &Path) -> Result<Vec<DivideRow>> {
    let mut r = csv::Reader::from_path(path).map_err(|e| CliError::Output(format!("{}: {e}", path.display())))?;
    r.deserialize()
        .collect::<std::result::Result<Vec<DivideRow>, _>>()
        .map_err(|e| CliError::Output(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifest_sits_next_to_data() {
        assert_eq!(
            Manifest::path_for(Path::new("out/run.csv")),
            PathBuf::from("out/run.csv.manifest.json")
        );
    }

    #[test]
    fn explicit_out_wins() {
        assert_eq!(
            resolve_out(Some(Path::new("a/b.csv")), "x.csv"),
            PathBuf::from("a/b.csv")
        );
    }

    #[test]
    fn digest_is_sha256_hex() {
        assert_eq!(
            digest("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }
}
