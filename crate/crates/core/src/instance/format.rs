//! TSPLIB subset reader/writer and the two-column CSV format.
//!
//! Supported TSPLIB: `EDGE_WEIGHT_TYPE` `EUC_2D` with a `NODE_COORD_SECTION`,
//! or `EXPLICIT` with `EDGE_WEIGHT_FORMAT` one of `FULL_MATRIX`, `UPPER_ROW`,
//! `LOWER_ROW`, `UPPER_DIAG_ROW`, `LOWER_DIAG_ROW`. `DISPLAY_DATA_SECTION`
//! is skipped. Triangular formats are mirrored into a symmetric matrix;
//! `FULL_MATRIX` is kept as given, so asymmetric data survives.

use std::fmt::Write as _;

use super::{Instance, InstanceError, Point, Rounding};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum WeightType {
    Euc2d,
    Explicit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum WeightFormat {
    FullMatrix,
    UpperRow,
    LowerRow,
    UpperDiagRow,
    LowerDiagRow,
}

impl WeightFormat {
    fn parse(s: &str, line: usize) -> Result<Self, InstanceError> {
        Ok(match s {
            "FULL_MATRIX" => Self::FullMatrix,
            "UPPER_ROW" => Self::UpperRow,
            "LOWER_ROW" => Self::LowerRow,
            "UPPER_DIAG_ROW" => Self::UpperDiagRow,
            "LOWER_DIAG_ROW" => Self::LowerDiagRow,
            other => {
                return Err(InstanceError::Unsupported {
                    line,
                    what: "EDGE_WEIGHT_FORMAT",
                    value: other.to_string(),
                })
            }
        })
    }

    /// `(i, j)` cells in file order.
    fn cells(self, n: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..n {
            let cols = match self {
                Self::FullMatrix => 0..n,
                Self::UpperRow => i + 1..n,
                Self::UpperDiagRow => i..n,
                Self::LowerRow => 0..i,
                Self::LowerDiagRow => 0..i + 1,
            };
            out.extend(cols.map(|j| (i, j)));
        }
        out
    }
}

enum Section {
    Header,
    Coords,
    Weights,
    Skip,
}

fn number<T: Scalar>(token: &str, line: usize) -> Result<T, InstanceError> {
    token
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .map(T::lit)
        .ok_or_else(|| InstanceError::NonNumeric { line, token: token.to_string() })
}

/// Parses a TSPLIB file with real-valued distances.
pub fn parse_tsplib<T: Scalar>(text: &str) -> Result<Instance<T>, InstanceError> {
    parse_tsplib_with(text, Rounding::None)
}

/// Parses a TSPLIB file; `rounding` applies to `EUC_2D` instances only.
pub fn parse_tsplib_with<T: Scalar>(text: &str, rounding: Rounding) -> Result<Instance<T>, InstanceError> {
    let mut name: Option<String> = None;
    let mut dimension: Option<usize> = None;
    let mut weight_type: Option<WeightType> = None;
    let mut weight_format: Option<WeightFormat> = None;
    let mut coords: Vec<Option<Point<T>>> = Vec::new();
    let mut coord_rows = 0usize;
    let mut weights: Vec<(T, usize)> = Vec::new();
    let mut section = Section::Header;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        if trimmed == "EOF" {
            break;
        }
        let first = trimmed.split_whitespace().next().unwrap_or("");
        let starts_keyword = first
            .trim_end_matches(':')
            .chars()
            .next()
            .is_some_and(|c| c.is_ascii_alphabetic());
        if starts_keyword {
            let keyword = first.trim_end_matches(':');
            match keyword {
                "NODE_COORD_SECTION" => {
                    let n = dimension.ok_or(InstanceError::MissingKey { line, key: "DIMENSION" })?;
                    coords = vec![None; n];
                    section = Section::Coords;
                    continue;
                }
                "EDGE_WEIGHT_SECTION" => {
                    section = Section::Weights;
                    continue;
                }
                "DISPLAY_DATA_SECTION" => {
                    section = Section::Skip;
                    continue;
                }
                _ => {}
            }
            let (key, value) = match trimmed.split_once(':') {
                Some((k, v)) => (k.trim(), v.trim()),
                None => return Err(InstanceError::MalformedKey { line, text: trimmed.to_string() }),
            };
            section = Section::Header;
            match key {
                "NAME" => name = Some(value.to_string()),
                "DIMENSION" => {
                    let n: usize = value
                        .parse()
                        .map_err(|_| InstanceError::NonNumeric { line, token: value.to_string() })?;
                    if n < 3 {
                        return Err(InstanceError::TooFewNodes(n));
                    }
                    dimension = Some(n);
                }
                "EDGE_WEIGHT_TYPE" => {
                    weight_type = Some(match value {
                        "EUC_2D" => WeightType::Euc2d,
                        "EXPLICIT" => WeightType::Explicit,
                        other => {
                            return Err(InstanceError::Unsupported {
                                line,
                                what: "EDGE_WEIGHT_TYPE",
                                value: other.to_string(),
                            })
                        }
                    })
                }
                "EDGE_WEIGHT_FORMAT" => weight_format = Some(WeightFormat::parse(value, line)?),
                "TYPE" => {
                    if !matches!(value, "TSP" | "ATSP") {
                        return Err(InstanceError::Unsupported { line, what: "TYPE", value: value.to_string() });
                    }
                }
                "COMMENT" | "DISPLAY_DATA_TYPE" | "NODE_COORD_TYPE" => {}
                _ => return Err(InstanceError::MalformedKey { line, text: trimmed.to_string() }),
            }
            continue;
        }
        match section {
            Section::Header => {
                return Err(InstanceError::MalformedKey { line, text: trimmed.to_string() });
            }
            Section::Skip => {}
            Section::Coords => {
                let tokens: Vec<&str> = trimmed.split_whitespace().collect();
                if tokens.len() != 3 {
                    return Err(InstanceError::DimensionMismatch { line, expected: 3, found: tokens.len() });
                }
                let n = coords.len();
                let id: usize = tokens[0]
                    .parse()
                    .map_err(|_| InstanceError::NonNumeric { line, token: tokens[0].to_string() })?;
                if id == 0 || id > n || coords[id - 1].is_some() {
                    return Err(InstanceError::BadNodeId { line, id, n });
                }
                coords[id - 1] = Some(Point::new(number(tokens[1], line)?, number(tokens[2], line)?));
                coord_rows += 1;
            }
            Section::Weights => {
                for token in trimmed.split_whitespace() {
                    weights.push((number(token, line)?, line));
                }
            }
        }
    }

    let end = last_line.max(1);
    let name = name.ok_or(InstanceError::MissingKey { line: end, key: "NAME" })?;
    let n = dimension.ok_or(InstanceError::MissingKey { line: end, key: "DIMENSION" })?;
    let weight_type = weight_type.ok_or(InstanceError::MissingKey { line: end, key: "EDGE_WEIGHT_TYPE" })?;
    match weight_type {
        WeightType::Euc2d => {
            if coord_rows != n {
                return Err(InstanceError::DimensionMismatch { line: end, expected: n, found: coord_rows });
            }
            let pts = coords.into_iter().map(|p| p.expect("all ids filled")).collect();
            Instance::from_coords(name, pts, rounding)
        }
        WeightType::Explicit => {
            let format = weight_format.ok_or(InstanceError::MissingKey { line: end, key: "EDGE_WEIGHT_FORMAT" })?;
            let cells = format.cells(n);
            if weights.len() != cells.len() {
                let line = weights.last().map_or(end, |&(_, l)| l);
                return Err(InstanceError::DimensionMismatch { line, expected: cells.len(), found: weights.len() });
            }
            let mut rows = vec![vec![T::zero(); n]; n];
            for (&(i, j), &(w, _)) in cells.iter().zip(&weights) {
                rows[i][j] = w;
                if format != WeightFormat::FullMatrix {
                    rows[j][i] = w;
                }
            }
            Instance::from_matrix(name, rows)
        }
    }
}

/// Writes an instance with coordinates as a TSPLIB `EUC_2D` file.
pub fn to_tsplib<T: Scalar>(instance: &Instance<T>) -> Result<String, InstanceError> {
    let coords = instance.coords().ok_or(InstanceError::NoCoordinates)?;
    let mut s = String::new();
    let _ = writeln!(s, "NAME : {}", instance.name());
    let _ = writeln!(s, "TYPE : TSP");
    let _ = writeln!(s, "DIMENSION : {}", instance.n());
    let _ = writeln!(s, "EDGE_WEIGHT_TYPE : EUC_2D");
    let _ = writeln!(s, "NODE_COORD_SECTION");
    for (i, p) in coords.iter().enumerate() {
        let _ = writeln!(s, "{} {} {}", i + 1, p.x, p.y);
    }
    s.push_str("EOF\n");
    Ok(s)
}

/// Parses the `x,y` CSV format: a header row then one node per row, depot first.
pub fn parse_csv<T: Scalar>(name: &str, text: &str) -> Result<Instance<T>, InstanceError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    match lines.next() {
        Some((_, header)) => {
            let cols: Vec<String> = header.split(',').map(|c| c.trim().to_ascii_lowercase()).collect();
            if cols != ["x", "y"] {
                return Err(InstanceError::MalformedKey { line: 1, text: header.to_string() });
            }
        }
        None => return Err(InstanceError::MissingKey { line: 1, key: "x,y header" }),
    }
    let mut pts = Vec::new();
    for (idx, l) in lines {
        let line = idx + 1;
        let fields: Vec<&str> = l.split(',').map(str::trim).collect();
        if fields.len() != 2 {
            return Err(InstanceError::DimensionMismatch { line, expected: 2, found: fields.len() });
        }
        pts.push(Point::new(number(fields[0], line)?, number(fields[1], line)?));
    }
    Instance::from_coords(name, pts, Rounding::None)
}

pub fn to_csv<T: Scalar>(instance: &Instance<T>) -> Result<String, InstanceError> {
    let coords = instance.coords().ok_or(InstanceError::NoCoordinates)?;
    let mut s = String::from("x,y\n");
    for p in coords {
        let _ = writeln!(s, "{},{}", p.x, p.y);
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TRI: &str = "NAME: tri\nTYPE: TSP\nDIMENSION: 3\nEDGE_WEIGHT_TYPE: EUC_2D\nNODE_COORD_SECTION\n1 0 0\n2 3 0\n3 0 4\nEOF\n";

    #[test]
    fn euc_2d_triangle() {
        let inst: Instance<f64> = parse_tsplib(TRI).unwrap();
        assert_eq!(inst.name(), "tri");
        assert_eq!(inst.arc(0, 1), 3.0);
        assert_eq!(inst.arc(0, 2), 4.0);
        assert_eq!(inst.arc(1, 2), 5.0);
    }

    #[test]
    fn explicit_formats_agree() {
        // Symmetric 4x4 matrix written in every supported layout.
        let full = "0 1 2 3\n1 0 4 5\n2 4 0 6\n3 5 6 0";
        let layouts = [
            ("FULL_MATRIX", full),
            ("UPPER_ROW", "1 2 3\n4 5\n6"),
            ("LOWER_ROW", "1\n2 4\n3 5 6"),
            ("UPPER_DIAG_ROW", "0 1 2 3\n0 4 5\n0 6\n0"),
            ("LOWER_DIAG_ROW", "0\n1 0\n2 4 0\n3 5 6 0"),
        ];
        let mut matrices = Vec::new();
        for (fmt, body) in layouts {
            let text = format!(
                "NAME: m\nTYPE: TSP\nDIMENSION: 4\nEDGE_WEIGHT_TYPE: EXPLICIT\nEDGE_WEIGHT_FORMAT: {fmt}\nEDGE_WEIGHT_SECTION\n{body}\nEOF\n"
            );
            let inst: Instance<f64> = parse_tsplib(&text).unwrap();
            assert!(inst.coords().is_none());
            matrices.push(inst.matrix().clone());
        }
        assert!(matrices.windows(2).all(|w| w[0] == w[1]));
        assert_eq!(matrices[0].get(2, 3), 6.0);
    }

    #[test]
    fn asymmetric_full_matrix_kept() {
        let text = "NAME: a\nTYPE: ATSP\nDIMENSION: 3\nEDGE_WEIGHT_TYPE: EXPLICIT\nEDGE_WEIGHT_FORMAT: FULL_MATRIX\nEDGE_WEIGHT_SECTION\n0 1 2\n5 0 3\n4 6 0\nEOF";
        let inst: Instance<f64> = parse_tsplib(text).unwrap();
        assert_eq!(inst.arc(0, 1), 1.0);
        assert_eq!(inst.arc(1, 0), 5.0);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let bad_token = TRI.replace("2 3 0", "2 3 zero");
        assert_eq!(
            parse_tsplib::<f64>(&bad_token).unwrap_err(),
            InstanceError::NonNumeric { line: 7, token: "zero".into() }
        );
        let geo = TRI.replace("EUC_2D", "GEO");
        assert!(matches!(
            parse_tsplib::<f64>(&geo).unwrap_err(),
            InstanceError::Unsupported { line: 4, what: "EDGE_WEIGHT_TYPE", .. }
        ));
        let short = TRI.replace("3 0 4\n", "");
        assert!(matches!(
            parse_tsplib::<f64>(&short).unwrap_err(),
            InstanceError::DimensionMismatch { expected: 3, found: 2, .. }
        ));
        let garbage = TRI.replace("TYPE: TSP", "TYPE TSP");
        assert_eq!(
            parse_tsplib::<f64>(&garbage).unwrap_err(),
            InstanceError::MalformedKey { line: 2, text: "TYPE TSP".into() }
        );
        let no_name = TRI.replace("NAME: tri\n", "");
        assert!(matches!(
            parse_tsplib::<f64>(&no_name).unwrap_err(),
            InstanceError::MissingKey { key: "NAME", .. }
        ));
        let bad_fmt = "NAME: m\nDIMENSION: 3\nEDGE_WEIGHT_TYPE: EXPLICIT\nEDGE_WEIGHT_FORMAT: FUNCTION\n";
        assert!(matches!(
            parse_tsplib::<f64>(bad_fmt).unwrap_err(),
            InstanceError::Unsupported { line: 4, what: "EDGE_WEIGHT_FORMAT", .. }
        ));
        let few_weights = "NAME: m\nDIMENSION: 3\nEDGE_WEIGHT_TYPE: EXPLICIT\nEDGE_WEIGHT_FORMAT: UPPER_ROW\nEDGE_WEIGHT_SECTION\n1 2\nEOF";
        assert_eq!(
            parse_tsplib::<f64>(few_weights).unwrap_err(),
            InstanceError::DimensionMismatch { line: 6, expected: 3, found: 2 }
        );
    }

    #[test]
    fn display_data_is_skipped() {
        let text = "NAME: m\nDIMENSION: 3\nEDGE_WEIGHT_TYPE: EXPLICIT\nEDGE_WEIGHT_FORMAT: UPPER_ROW\nEDGE_WEIGHT_SECTION\n1 2\n3\nDISPLAY_DATA_SECTION\n1 0.0 0.0\n2 1.0 1.0\n3 2.0 2.0\nEOF";
        let inst: Instance<f64> = parse_tsplib(text).unwrap();
        assert_eq!(inst.arc(1, 2), 3.0);
    }

    #[test]
    fn csv_round_trip() {
        let inst: Instance<f64> = parse_csv("c", "x,y\n0,0\n3,0\n0,4\n").unwrap();
        assert_eq!(inst.arc(1, 2), 5.0);
        let again: Instance<f64> = parse_csv("c", &to_csv(&inst).unwrap()).unwrap();
        assert_eq!(inst.matrix(), again.matrix());
        assert!(parse_csv::<f64>("c", "a,b\n1,2\n").is_err());
        assert!(matches!(
            parse_csv::<f64>("c", "x,y\n1,2\n3\n4,5\n"),
            Err(InstanceError::DimensionMismatch { line: 3, .. })
        ));
    }
}
