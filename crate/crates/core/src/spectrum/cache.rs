//! On-disk cache of assembled spectra.
//!
//! Entries are keyed by `(n, γ to 12 digits, λ_max, tolerance signature)`.
//! Every load re-validates the key stored inside the file, so a corrupt or
//! mismatched entry is recomputed and overwritten instead of trusted.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::system::Gamma;

use super::{assemble_spectrum, EigenvalueRecord, Spectrum, Tolerances};

/// Environment variable naming the cache directory.
pub const CACHE_DIR_ENV: &str = "EQUIBIF_CACHE_DIR";

/// Serialized cache entry.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CacheFile {
    pub n: u32,
    pub gamma: Gamma,
    pub lambda_max: f64,
    pub tolerances: Tolerances,
    pub records: Vec<EigenvalueRecord>,
}

/// What happened on a cached lookup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CacheOutcome {
    Hit,
    Miss,
    /// An entry existed but could not be trusted; it was recomputed.
    Stale(String),
    /// The result was computed but could not be stored.
    Unwritable(String),
}

impl CacheOutcome {
    pub fn warning(&self) -> Option<String> {
        match self {
            CacheOutcome::Stale(why) => Some(format!("ignoring cached spectrum: {why}")),
            CacheOutcome::Unwritable(why) => Some(format!("spectrum cache not written: {why}")),
            _ => None,
        }
    }
}

fn gamma_key(gamma: Gamma) -> String {
    match gamma {
        Gamma::Hemisphere => "hemisphere".to_string(),
        Gamma::Radians(g) => format!("{g:.12}"),
    }
}

fn key_string(n: u32, gamma: Gamma, lambda_max: f64, tol: &Tolerances) -> String {
    format!(
        "n={n}|gamma={}|lambda_max={lambda_max:e}|{}",
        gamma_key(gamma),
        tol.signature()
    )
}

fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325u64, |h, &b| {
        (h ^ b as u64).wrapping_mul(0x0100_0000_01b3)
    })
}

#[derive(Clone, Debug)]
pub struct SpectrumCache {
    dir: PathBuf,
}

impl SpectrumCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    /// Cache rooted at `$EQUIBIF_CACHE_DIR`, if set.
    pub fn from_env() -> Option<Self> {
        std::env::var_os(CACHE_DIR_ENV)
            .filter(|v| !v.is_empty())
            .map(Self::new)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn entry_path(&self, n: u32, gamma: Gamma, lambda_max: f64, tol: &Tolerances) -> PathBuf {
        let key = key_string(n, gamma, lambda_max, tol);
        self.dir
            .join(format!("spectrum-{:016x}.json", fnv1a(key.as_bytes())))
    }

    fn read(
        &self,
        path: &Path,
        n: u32,
        gamma: Gamma,
        lambda_max: f64,
        tol: &Tolerances,
    ) -> std::result::Result<Spectrum, String> {
        let text = fs::read_to_string(path).map_err(|e| e.to_string())?;
        let file: CacheFile =
            serde_json::from_str(&text).map_err(|e| format!("corrupt entry: {e}"))?;
        if file.n != n || gamma_key(file.gamma) != gamma_key(gamma) || file.lambda_max != lambda_max
        {
            return Err("entry belongs to a different problem".into());
        }
        if file.tolerances.signature() != tol.signature() {
            return Err("tolerance signature mismatch".into());
        }
        Ok(Spectrum {
            n,
            gamma,
            records: file.records,
        })
    }

    /// Serializes an entry exactly as it is stored.
    pub fn encode(spectrum: &Spectrum, lambda_max: f64, tol: &Tolerances) -> Result<String> {
        let file = CacheFile {
            n: spectrum.n,
            gamma: spectrum.gamma,
            lambda_max,
            tolerances: tol.clone(),
            records: spectrum.records.clone(),
        };
        Ok(serde_json::to_string_pretty(&file)? + "\n")
    }

    pub fn store(&self, spectrum: &Spectrum, lambda_max: f64, tol: &Tolerances) -> Result<PathBuf> {
        let path = self.entry_path(spectrum.n, spectrum.gamma, lambda_max, tol);
        fs::create_dir_all(&self.dir)?;
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, Self::encode(spectrum, lambda_max, tol)?)?;
        fs::rename(&tmp, &path)?;
        Ok(path)
    }

    /// Returns the cached spectrum when a valid entry exists, otherwise
    /// assembles it and tries to store it. Cache problems never fail the call.
    pub fn load_or_assemble(
        &self,
        n: u32,
        gamma: Gamma,
        lambda_max: f64,
        m_scan_max: Option<u32>,
        tol: &Tolerances,
    ) -> Result<(Spectrum, CacheOutcome)> {
        let path = self.entry_path(n, gamma, lambda_max, tol);
        let mut outcome = CacheOutcome::Miss;
        if path.exists() {
            match self.read(&path, n, gamma, lambda_max, tol) {
                Ok(s) => return Ok((s, CacheOutcome::Hit)),
                Err(why) => outcome = CacheOutcome::Stale(why),
            }
        }
        let spectrum = assemble_spectrum(n, gamma, lambda_max, m_scan_max, tol)?;
        if let Err(e) = self.store(&spectrum, lambda_max, tol) {
            outcome = CacheOutcome::Unwritable(e.to_string());
        }
        Ok((spectrum, outcome))
    }
}
