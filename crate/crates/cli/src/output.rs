//! Artifact writing and re-ingestion.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use fibwalk::diagnostics::PositionDistribution;

use crate::error::{CliError, Result};

/// Probabilities and other reals are written with 17 significant digits.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Writes to `path`, or stdout when absent.
pub fn write_artifact(path: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match path {
        Some(path) => fs::write(path, bytes).map_err(|source| CliError::Io {
            context: "cannot write",
            path: path.to_path_buf(),
            source,
        }),
        None => std::io::stdout()
            .lock()
            .write_all(bytes)
            .map_err(|source| CliError::Io {
                context: "cannot write",
                path: PathBuf::from("<stdout>"),
                source,
            }),
    }
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        context: "cannot read",
        path: path.to_path_buf(),
        source,
    })
}

/// Data rows of a CSV with the given header, split on commas.
fn rows<'a>(
    path: &'a Path,
    text: &'a str,
    header: &'a str,
) -> Result<impl Iterator<Item = (usize, Vec<&'a str>)> + 'a> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim() == header => {}
        _ => {
            return Err(CliError::Parse {
                path: path.to_path_buf(),
                line: 1,
                message: format!("expected header {header:?}"),
            })
        }
    }
    Ok(lines
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| (i + 1, l.split(',').map(str::trim).collect())))
}

fn field<T: std::str::FromStr>(path: &Path, line: usize, raw: &str, name: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    raw.parse().map_err(|e: T::Err| CliError::Parse {
        path: path.to_path_buf(),
        line,
        message: format!("{name} {raw:?}: {e}"),
    })
}

/// Reads a `t,n,probability` CSV written by `simulate` back into one
/// distribution per time, in increasing time order.
pub fn read_simulation_csv(path: &Path) -> Result<Vec<PositionDistribution>> {
    let text = read_text(path)?;
    let mut by_time: BTreeMap<usize, Vec<(i64, f64)>> = BTreeMap::new();
    for (line, cols) in rows(path, &text, "t,n,probability")? {
        if cols.len() != 3 {
            return Err(CliError::Parse {
                path: path.to_path_buf(),
                line,
                message: format!("expected 3 columns, got {}", cols.len()),
            });
        }
        let t: usize = field(path, line, cols[0], "t")?;
        let n: i64 = field(path, line, cols[1], "n")?;
        let p: f64 = field(path, line, cols[2], "probability")?;
        by_time.entry(t).or_default().push((n, p));
    }
    by_time
        .into_iter()
        .map(|(t, sites)| {
            PositionDistribution::from_sites(t, sites).map_err(|e| CliError::Parse {
                path: path.to_path_buf(),
                line: 0,
                message: format!("time {t}: {e}"),
            })
        })
        .collect()
}

/// Reads `t,sigma` rows.
pub fn read_samples_csv(path: &Path) -> Result<Vec<(usize, f64)>> {
    let text = read_text(path)?;
    let samples = rows(path, &text, "t,sigma")?
        .map(|(line, cols)| {
            if cols.len() != 2 {
                return Err(CliError::Parse {
                    path: path.to_path_buf(),
                    line,
                    message: format!("expected 2 columns, got {}", cols.len()),
                });
            }
            Ok((
                field(path, line, cols[0], "t")?,
                field(path, line, cols[1], "sigma")?,
            ))
        })
        .collect();
    samples
}
