//! Plain CSV for point sets: one point per row, no header, optional trailing
//! weight column.
//!
//! Numbers are written in the shortest form that parses back to the same
//! double.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::points::PointSet;

/// Renders points (and their weights, if `with_weights`) as CSV text.
pub fn format_points_csv(points: &PointSet, with_weights: bool) -> String {
    let weights = if with_weights { points.weights() } else { None };
    let mut out = String::with_capacity(points.len() * points.dim() * 24);
    for (i, p) in points.iter().enumerate() {
        for (s, v) in p.iter().enumerate() {
            if s > 0 {
                out.push(',');
            }
            write!(out, "{v:?}").unwrap();
        }
        if let Some(w) = weights {
            write!(out, ",{:?}", w[i]).unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn write_points_csv(path: &Path, points: &PointSet, with_weights: bool) -> Result<()> {
    std::fs::write(path, format_points_csv(points, with_weights))?;
    Ok(())
}

/// Parses CSV text. With `weighted`, the last column is taken as a weight.
/// Blank lines are skipped; every other line must have the same column count.
pub fn parse_points_csv(text: &str, weighted: bool, path: &Path) -> Result<PointSet> {
    let err = |line: usize, message: String| Error::Parse {
        path: path.to_path_buf(),
        line,
        message,
    };
    let mut cols: Option<usize> = None;
    let mut coords = Vec::new();
    let mut weights = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let raw = raw.trim();
        if raw.is_empty() {
            continue;
        }
        let values = raw
            .split(',')
            .map(|f| {
                f.trim()
                    .parse::<f64>()
                    .map_err(|e| err(line, format!("cannot parse {:?}: {e}", f.trim())))
            })
            .collect::<Result<Vec<f64>>>()?;
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(err(line, format!("non-finite value {v}")));
        }
        match cols {
            None => {
                let min = if weighted { 2 } else { 1 };
                if values.len() < min {
                    return Err(err(line, format!("expected at least {min} columns")));
                }
                cols = Some(values.len());
            }
            Some(c) if c != values.len() => {
                return Err(err(line, format!("expected {c} columns, found {}", values.len())));
            }
            _ => {}
        }
        if weighted {
            let (p, w) = values.split_at(values.len() - 1);
            coords.extend_from_slice(p);
            weights.push(w[0]);
        } else {
            coords.extend(values);
        }
    }
    let Some(cols) = cols else {
        return Err(err(0, "no points in file".into()));
    };
    let dim = if weighted { cols - 1 } else { cols };
    let points = PointSet::new(dim, coords)?;
    if weighted {
        points.with_weights(weights)
    } else {
        Ok(points)
    }
}

pub fn read_points_csv(path: &Path, weighted: bool) -> Result<PointSet> {
    let text = std::fs::read_to_string(path)?;
    parse_points_csv(&text, weighted, path)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> &'static Path {
        Path::new("test.csv")
    }

    #[test]
    fn parses_plain_and_weighted() {
        let pts = parse_points_csv("0,0\n1,0\n0,1\n", false, p()).unwrap();
        assert_eq!((pts.len(), pts.dim()), (3, 2));
        let pts = parse_points_csv("0,0,0.5\n1,0,0.25\n\n0,1,0.25", true, p()).unwrap();
        assert_eq!(pts.dim(), 2);
        assert_eq!(pts.weights().unwrap(), &[0.5, 0.25, 0.25]);
    }

    #[test]
    fn ragged_rows_name_the_line() {
        let e = parse_points_csv("0,0\n1,0\n0,1,2\n", false, p()).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }), "{e}");
        let e = parse_points_csv("0,0\nx,1\n", false, p()).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }), "{e}");
        assert!(parse_points_csv("\n\n", false, p()).is_err());
    }

    #[test]
    fn round_trip_is_exact() {
        let v = [0.1, 1.0 / 3.0, -2.5e-300, 12345.678901234567, std::f64::consts::PI, -0.0];
        let pts = PointSet::new(2, v.to_vec()).unwrap().with_weights(vec![0.5, 1e-17, 3.0]).unwrap();
        let text = format_points_csv(&pts, true);
        let back = parse_points_csv(&text, true, p()).unwrap();
        assert_eq!(back, pts);
    }
}
