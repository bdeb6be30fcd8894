use std::fmt;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use sinhgordon::{Error, SolverConfig};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 1;
pub const EXIT_SOLVER: u8 = 2;
pub const EXIT_MISMATCH: u8 = 3;

#[derive(Debug)]
pub enum CliError {
    Lib(Error),
    Io { path: PathBuf, source: std::io::Error },
    Usage(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Lib(e) => write!(f, "{e}"),
            Self::Io { path, source } => write!(f, "{}: {source}", path.display()),
            Self::Usage(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        Self::Lib(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Lib(e) if is_solver_failure(e) => EXIT_SOLVER,
            _ => EXIT_INPUT,
        }
    }
}

fn is_solver_failure(e: &Error) -> bool {
    matches!(
        e,
        Error::SingularJacobian
            | Error::NoConvergence { .. }
            | Error::Diverged
            | Error::Overflow(_)
            | Error::NotSubsolution { .. }
            | Error::NotSupersolution { .. }
            | Error::NotSubsolutionAfterAll { .. }
            | Error::BranchLost { .. }
            | Error::RadiusUnstable
            | Error::SingularSystem
    )
}

pub fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

/// Writes to `out` when given, stdout otherwise.
pub fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.to_owned(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub input_path: String,
    pub config: SolverConfig,
    pub seed: u64,
    pub tool_version: String,
    pub wall_time_ms: u64,
}

/// Clock started before any work; `finish` stamps the elapsed time.
pub struct ManifestBuilder {
    command: &'static str,
    input_path: String,
    config: SolverConfig,
    seed: u64,
    started: Instant,
}

impl ManifestBuilder {
    pub fn new(command: &'static str, input: Option<&Path>, config: SolverConfig, seed: u64) -> Self {
        Self {
            command,
            input_path: input.map(|p| p.display().to_string()).unwrap_or_default(),
            config,
            seed,
            started: Instant::now(),
        }
    }

    pub fn finish(self) -> RunManifest {
        RunManifest {
            command: self.command.into(),
            input_path: self.input_path,
            config: self.config,
            seed: self.seed,
            tool_version: env!("CARGO_PKG_VERSION").into(),
            wall_time_ms: self.started.elapsed().as_millis() as u64,
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serialises");
    s.push('\n');
    s
}

/// `# key: value` lines placed above a CSV body.
pub fn csv_preamble(manifest: &RunManifest, extra: &[(&str, String)]) -> String {
    let mut s = format!("# manifest: {}\n", serde_json::to_string(manifest).expect("manifest serialises"));
    for (k, v) in extra {
        s.push_str(&format!("# {k}: {v}\n"));
    }
    s
}
