//! Report artifacts: one CSV table and one JSON witness object per command.

use std::fs;
use std::io::Write;
use std::path::Path;

use schreier_core::{Alphabet, Rational, Word};
use serde_json::{json, Value};

use crate::CliError;

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    /// Base name of the artifacts, `<name>.csv` and `<name>.json`.
    pub name: &'static str,
    pub header: &'static [&'static str],
    pub rows: Vec<Vec<String>>,
    pub json: Value,
    /// Whether every asserted property held.
    pub pass: bool,
    /// Further files such as produced graphs, as `(file name, contents)`.
    pub extra: Vec<(String, String)>,
}

impl Report {
    pub fn csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            debug_assert_eq!(row.len(), self.header.len());
            debug_assert!(row.iter().all(|c| !c.contains([',', '"', '\n'])));
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    pub fn json_text(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.json).expect("serializable");
        s.push('\n');
        s
    }

    pub fn write(&self, dir: &Path) -> Result<(), CliError> {
        fs::create_dir_all(dir).map_err(|source| CliError::Io {
            path: dir.display().to_string(),
            source,
        })?;
        write_atomic(dir, &format!("{}.csv", self.name), &self.csv())?;
        write_atomic(dir, &format!("{}.json", self.name), &self.json_text())?;
        for (file, contents) in &self.extra {
            write_atomic(dir, file, contents)?;
        }
        Ok(())
    }
}

/// Writes through a temporary file in `dir` and renames it into place.
pub fn write_atomic(dir: &Path, file: &str, contents: &str) -> Result<(), CliError> {
    let target = dir.join(file);
    let io = |source| CliError::Io {
        path: target.display().to_string(),
        source,
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(contents.as_bytes()).map_err(io)?;
    tmp.persist(&target).map_err(|e| io(e.error))?;
    Ok(())
}

/// Rounds to 1e-9, maps −0 to 0 and always shows a decimal point.
pub fn round(x: f64) -> f64 {
    let r = (x * 1e9).round() / 1e9;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

pub fn float(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    let s = format!("{}", round(x));
    if s.contains('.') {
        s
    } else {
        s + ".0"
    }
}

pub fn opt_float(x: Option<f64>) -> String {
    x.map(float).unwrap_or_default()
}

pub fn float_json(x: f64) -> Value {
    if x.is_finite() {
        json!(round(x))
    } else {
        Value::Null
    }
}

pub fn floats_json(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|&x| float_json(x)).collect())
}

pub fn rational(r: Rational) -> String {
    r.to_string()
}

pub fn rational_json(r: Rational) -> Value {
    json!(r.to_string())
}

pub fn words_json(words: &[Word], alphabet: &Alphabet) -> Value {
    Value::Array(words.iter().map(|w| json!(w.display(alphabet).to_string())).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting() {
        assert_eq!(float(2.0), "2.0");
        assert_eq!(float(-0.0), "0.0");
        assert_eq!(float(-1e-12), "0.0");
        assert_eq!(float(-2.0000000000004), "-2.0");
        assert_eq!(float(3.7224194364083982), "3.722419436");
        assert_eq!(float(1e-9), "0.000000001");
        assert_eq!(opt_float(None), "");
    }

    #[test]
    fn csv_layout() {
        let r = Report {
            name: "t",
            header: &["a", "b"],
            rows: vec![vec!["1".into(), "1/2".into()]],
            json: Value::Null,
            pass: true,
            extra: Vec::new(),
        };
        assert_eq!(r.csv(), "a,b\n1,1/2\n");
    }

    #[test]
    fn atomic_write_replaces() {
        let dir = tempfile::tempdir().unwrap();
        write_atomic(dir.path(), "x.txt", "one").unwrap();
        write_atomic(dir.path(), "x.txt", "two").unwrap();
        assert_eq!(fs::read_to_string(dir.path().join("x.txt")).unwrap(), "two");
        assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
