//! Command-line front end. `run` parses arguments, dispatches, and returns
//! the process exit code: 0 success, 1 a verification or bound check failed,
//! 2 usage or input error, 3 the resample cap was hit.

mod args;
mod commands;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::Parser;
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{Map, Value};

pub use args::Cli;

use crate::error::Error;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NON_TERMINATION: i32 = 3;

#[derive(Debug)]
pub(crate) enum CliError {
    Usage(String),
    Lib(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Lib(e.into())
    }
}

pub(crate) type CliResult<T> = std::result::Result<T, CliError>;

/// Global options shared by every subcommand.
pub(crate) struct Globals {
    pub seed: Option<u64>,
    pub json: bool,
    pub out_dir: Option<PathBuf>,
    pub config: Option<Map<String, Value>>,
}

impl Globals {
    /// Config-file values overlaid with explicit flags.
    pub fn resolve<T: Serialize + DeserializeOwned>(&self, flags: &T) -> CliResult<T> {
        let mut merged = self.config.clone().unwrap_or_default();
        if let Value::Object(f) = serde_json::to_value(flags).map_err(Error::from)? {
            merged.extend(f);
        }
        serde_json::from_value(Value::Object(merged)).map_err(|e| CliError::Usage(format!("config: {e}")))
    }

    pub fn seed_or(&self, key: &str, default: u64) -> u64 {
        self.seed
            .or_else(|| self.config.as_ref().and_then(|c| c.get(key)).and_then(Value::as_u64))
            .unwrap_or(default)
    }

    pub fn path(&self, name: &str) -> PathBuf {
        match &self.out_dir {
            Some(d) => d.join(name),
            None => PathBuf::from(name),
        }
    }

    pub fn write(&self, name: &str, contents: &str) -> CliResult<PathBuf> {
        let path = self.path(name);
        write_file(&path, contents)?;
        Ok(path)
    }
}

pub(crate) fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, contents)?;
    Ok(())
}

/// Envelope written around every JSON artifact.
#[derive(Serialize)]
pub(crate) struct Artifact<'a, C: Serialize, R: Serialize> {
    pub tool: &'static str,
    pub tool_version: &'static str,
    pub command: &'static str,
    pub seed: Option<u64>,
    pub config: &'a C,
    pub result: &'a R,
}

pub(crate) fn artifact<C: Serialize, R: Serialize>(
    command: &'static str,
    seed: Option<u64>,
    config: &C,
    result: &R,
) -> String {
    let a = Artifact {
        tool: "qcsc",
        tool_version: TOOL_VERSION,
        command,
        seed,
        config,
        result,
    };
    let mut s = serde_json::to_string_pretty(&a).expect("artifact serializes");
    s.push('\n');
    s
}

fn load_config(path: &Path) -> CliResult<Map<String, Value>> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    match serde_json::from_str(&text) {
        Ok(Value::Object(m)) => Ok(m),
        Ok(_) => Err(CliError::Usage(format!("{}: expected a JSON object", path.display()))),
        Err(e) => Err(CliError::Usage(format!("{}: {e}", path.display()))),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let config = match cli.config.as_deref().map(load_config).transpose() {
        Ok(c) => c,
        Err(e) => return report_error(e),
    };
    let globals = Globals {
        seed: cli.seed,
        json: cli.json,
        out_dir: cli.out_dir,
        config,
    };
    match commands::dispatch(&globals, cli.command) {
        Ok(code) => code,
        Err(e) => report_error(e),
    }
}

fn report_error(e: CliError) -> i32 {
    let mut err = std::io::stderr();
    match e {
        CliError::Usage(msg) => {
            let _ = writeln!(err, "error: {msg}");
        }
        CliError::Lib(e) => {
            let _ = writeln!(err, "error: {e}");
        }
    }
    EXIT_USAGE
}
