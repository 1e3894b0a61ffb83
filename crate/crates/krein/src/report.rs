//! Manifest ingestion and serialized analysis reports.
//!
//! A manifest binds matrix roles to Matrix Market files; a report carries
//! the verdicts and the evidence of one driver run. Everything in a report
//! except `wall_time_ms` is a pure function of the inputs, so two runs of
//! the same command differ in at most that one line.

use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::instances::InstanceSpec;
use crate::linalg::CMat;
use crate::mm;
use crate::operator::KreinOperator;
use crate::symmetry::FundamentalSymmetry;
use crate::tol::{TolOverrides, Tolerances};
use crate::verdict::Verdict;

pub const SCHEMA_VERSION: u32 = 1;

/// Binds the matrix roles for one analysis. Relative paths are resolved
/// against the directory holding the manifest file.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Manifest {
    pub j: PathBuf,
    pub a: PathBuf,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v: Option<PathBuf>,
    /// Overrides applied on top of the defaults and the environment.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerances: Option<TolOverrides>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<PathBuf>,
    /// Provenance when the manifest came out of `gen`; replay data only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub instance: Option<InstanceSpec>,
}

#[derive(Debug, Clone, Serialize)]
pub struct InputDigest {
    pub role: String,
    pub path: String,
    pub sha256: String,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

fn digest_file(role: &str, path: &Path) -> Result<(Vec<u8>, InputDigest), String> {
    let bytes = std::fs::read(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let digest = InputDigest {
        role: role.to_string(),
        path: path.display().to_string(),
        sha256: sha256_hex(&bytes),
    };
    Ok((bytes, digest))
}

/// Reads and digests a UTF-8 input file.
pub fn read_input(role: &str, path: &Path) -> Result<(String, InputDigest), String> {
    let (bytes, digest) = digest_file(role, path)?;
    let text = String::from_utf8(bytes).map_err(|_| format!("{}: not UTF-8", path.display()))?;
    Ok((text, digest))
}

/// Manifest plus raw parsed matrices; no structural validation yet.
pub struct RawInputs {
    pub manifest: Manifest,
    pub base_dir: PathBuf,
    pub j: CMat,
    pub a: CMat,
    pub v: Option<CMat>,
    pub inputs: Vec<InputDigest>,
    pub tolerances: Tolerances,
}

fn read_mm(role: &str, base: &Path, rel: &Path) -> Result<(CMat, InputDigest), String> {
    let path = base.join(rel);
    let (text, digest) = read_input(role, &path)?;
    let m = mm::parse_matrix(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok((m, digest))
}

pub fn load_raw(manifest_path: &Path) -> Result<RawInputs, String> {
    let (text, manifest_digest) = read_input("manifest", manifest_path)?;
    let manifest: Manifest = serde_json::from_str(&text)
        .map_err(|e| format!("{}: {e}", manifest_path.display()))?;
    let base_dir = manifest_path
        .parent()
        .map(Path::to_path_buf)
        .unwrap_or_else(|| PathBuf::from("."));

    let tolerances = Tolerances::default().with_env()?;
    let tolerances = match &manifest.tolerances {
        Some(ov) => tolerances.with_overrides(ov),
        None => tolerances,
    };

    let mut inputs = vec![manifest_digest];
    let (j, dj) = read_mm("j", &base_dir, &manifest.j)?;
    inputs.push(dj);
    let (a, da) = read_mm("a", &base_dir, &manifest.a)?;
    inputs.push(da);
    let v = match &manifest.v {
        Some(rel) => {
            let (v, dv) = read_mm("v", &base_dir, rel)?;
            inputs.push(dv);
            Some(v)
        }
        None => None,
    };
    Ok(RawInputs {
        manifest,
        base_dir,
        j,
        a,
        v,
        inputs,
        tolerances,
    })
}

/// Validated operator pair ready for analysis.
pub struct LoadedPair {
    pub manifest: Manifest,
    pub base_dir: PathBuf,
    pub operator: KreinOperator,
    pub perturbation: Option<KreinOperator>,
    pub inputs: Vec<InputDigest>,
    pub tolerances: Tolerances,
}

pub fn load_pair(manifest_path: &Path) -> Result<LoadedPair, String> {
    let raw = load_raw(manifest_path)?;
    let tols = raw.tolerances;
    let sym = FundamentalSymmetry::from_matrix(raw.j, &tols)
        .map_err(|e| format!("J is not a fundamental symmetry: {e}"))?;
    let operator =
        KreinOperator::new(raw.a, sym, &tols).map_err(|e| format!("A does not fit J: {e}"))?;
    operator
        .require_certified(&tols)
        .map_err(|e| format!("A is not J-self-adjoint: {e}"))?;
    let perturbation = match raw.v {
        Some(v) => {
            let v = operator
                .with_matrix(v, &tols)
                .map_err(|e| format!("V does not fit J: {e}"))?;
            v.require_certified(&tols)
                .map_err(|e| format!("V is not J-self-adjoint: {e}"))?;
            Some(v)
        }
        None => None,
    };
    Ok(LoadedPair {
        manifest: raw.manifest,
        base_dir: raw.base_dir,
        operator,
        perturbation,
        inputs: raw.inputs,
        tolerances: tols,
    })
}

/// The serialized outcome of one driver invocation. `wall_time_ms` is the
/// only field excluded from the determinism contract.
#[derive(Debug, Serialize)]
pub struct AnalysisReport {
    pub schema: u32,
    pub tool_version: &'static str,
    pub command: Vec<String>,
    pub inputs: Vec<InputDigest>,
    pub tolerances: Tolerances,
    pub verdict: Verdict,
    pub exit_code: i32,
    pub analysis: Value,
    pub wall_time_ms: f64,
}

pub struct ReportBuilder {
    command: Vec<String>,
    started: Instant,
}

impl ReportBuilder {
    pub fn new(command: Vec<String>) -> Self {
        ReportBuilder {
            command,
            started: Instant::now(),
        }
    }

    pub fn finish(
        self,
        inputs: Vec<InputDigest>,
        tolerances: Tolerances,
        verdict: Verdict,
        exit_code: i32,
        analysis: Value,
    ) -> AnalysisReport {
        AnalysisReport {
            schema: SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION"),
            command: self.command,
            inputs,
            tolerances,
            verdict,
            exit_code,
            analysis,
            wall_time_ms: self.started.elapsed().as_secs_f64() * 1e3,
        }
    }
}

pub fn render_report(report: &AnalysisReport) -> String {
    let mut text = serde_json::to_string_pretty(report).expect("report serializes");
    text.push('\n');
    text
}
