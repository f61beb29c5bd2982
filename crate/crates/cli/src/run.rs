//! Run configuration and artifact emission.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;

use crate::error::{CliError, ExitKind};
use crate::table::Table;

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "INFLUENCE_OUT_DIR";

/// Tolerance echoed in every report.
pub const TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Emit {
    #[default]
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub input: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub seed: Option<u64>,
    pub emit: Emit,
    pub tolerance: f64,
}

impl RunConfig {
    pub fn new(command: &str, emit: Emit) -> Self {
        RunConfig {
            command: command.to_string(),
            input: None,
            output: None,
            seed: None,
            emit,
            tolerance: TOLERANCE,
        }
    }
}

/// The flag if given, else the environment default.
pub fn resolve_out_dir(flag: Option<PathBuf>) -> Option<PathBuf> {
    flag.or_else(|| std::env::var_os(OUT_DIR_ENV).filter(|v| !v.is_empty()).map(PathBuf::from))
}

/// Everything one command produces. The first table is the primary one.
#[derive(Debug, Clone)]
pub struct Artifacts {
    pub name: &'static str,
    pub report: Value,
    pub tables: Vec<Table>,
    pub svg: Option<String>,
}

/// Artifacts plus the exit status the run ends with.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub artifacts: Artifacts,
    pub status: ExitKind,
    pub notes: Vec<String>,
}

impl Outcome {
    pub fn success(artifacts: Artifacts) -> Self {
        Outcome {
            artifacts,
            status: ExitKind::Success,
            notes: Vec::new(),
        }
    }
}

impl Artifacts {
    /// Without a directory, writes the artifact selected by `emit` to
    /// `stdout`: the primary table, the report, or the chart. With one,
    /// writes the report and every table, plus the chart for `svg`.
    pub fn emit(&self, emit: Emit, dir: Option<&Path>, stdout: &mut dyn Write) -> Result<Vec<PathBuf>, CliError> {
        let Some(dir) = dir else {
            let text = match (emit, self.tables.first(), &self.svg) {
                (Emit::Csv, Some(t), _) => t.to_csv(),
                (Emit::Svg, _, Some(svg)) => svg.clone(),
                _ => crate::canonical::to_string(&self.report),
            };
            stdout.write_all(text.as_bytes()).map_err(|source| CliError::Write {
                path: PathBuf::from("<stdout>"),
                source,
            })?;
            return Ok(Vec::new());
        };
        fs::create_dir_all(dir).map_err(|source| CliError::Write {
            path: dir.to_path_buf(),
            source,
        })?;
        let mut files = vec![(format!("{}.json", self.name), crate::canonical::to_string(&self.report))];
        files.extend(self.tables.iter().map(|t| (t.file_name(), t.to_csv())));
        if let (Emit::Svg, Some(svg)) = (emit, &self.svg) {
            files.push((format!("{}.svg", self.name), svg.clone()));
        }
        let mut written = Vec::new();
        for (name, contents) in files {
            let path = dir.join(name);
            fs::write(&path, contents).map_err(|source| CliError::Write {
                path: path.clone(),
                source,
            })?;
            written.push(path);
        }
        Ok(written)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn sample() -> Artifacts {
        let mut t = Table::new("rows", &["a"]);
        t.push(vec!["1".into()]);
        Artifacts {
            name: "demo",
            report: json!({"k": 1}),
            tables: vec![t],
            svg: None,
        }
    }

    #[test]
    fn stdout_selection() {
        let a = sample();
        let mut out = Vec::new();
        a.emit(Emit::Csv, None, &mut out).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "a\n1\n");
        let mut out = Vec::new();
        a.emit(Emit::Svg, None, &mut out).unwrap();
        assert!(String::from_utf8(out).unwrap().contains("\"k\": 1"));
    }

    #[test]
    fn directory_gets_every_artifact() {
        let dir = tempfile::tempdir().unwrap();
        let written = sample().emit(Emit::Json, Some(dir.path()), &mut Vec::new()).unwrap();
        let names: Vec<_> = written.iter().map(|p| p.file_name().unwrap().to_string_lossy().into_owned()).collect();
        assert_eq!(names, ["demo.json", "rows.csv"]);
    }
}
