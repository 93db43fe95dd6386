//! Instance lookup: file paths first, then embedded fixtures.

use std::path::Path;

use mtsp_core::instance::{fixtures, parse_csv, parse_tsplib_with, Instance, Rounding};

use crate::BenchError;

/// Loads `spec` as a `.csv` or TSPLIB file if it exists, else as a fixture name.
pub fn load_instance(spec: &str, rounding: Rounding) -> Result<Instance<f64>, BenchError> {
    let path = Path::new(spec);
    if path.is_file() {
        let text = std::fs::read_to_string(path)?;
        let is_csv = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv"));
        return Ok(if is_csv {
            let name = path.file_stem().map_or(spec.into(), |s| s.to_string_lossy().into_owned());
            parse_csv(&name, &text)?
        } else {
            parse_tsplib_with(&text, rounding)?
        });
    }
    match fixtures::load_with(spec, rounding) {
        Some(parsed) => Ok(parsed?),
        None => Err(BenchError::UnknownInstance(spec.into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_and_missing() {
        assert_eq!(load_instance("eil51", Rounding::None).unwrap().n(), 51);
        assert!(matches!(load_instance("nope", Rounding::None), Err(BenchError::UnknownInstance(_))));
    }

    #[test]
    fn csv_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("tiny.csv");
        std::fs::write(&path, "x,y\n0,0\n3,4\n6,8\n").unwrap();
        let inst = load_instance(path.to_str().unwrap(), Rounding::None).unwrap();
        assert_eq!(inst.name(), "tiny");
        assert_eq!(inst.arc(0, 1), 5.0);
    }
}
