//! Instance files, random instances, run reports and SVG figures.

mod gen;
mod report;
mod svg;

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::point::{Point, PointSet};
use crate::geom::rational::{format_rational, parse_rational};
use crate::helly::{ConvexBody, Family};

pub use gen::{gen_random, Distribution, Generated, MAX_RESAMPLES};
pub use report::{input_digest, Figure, FigureImage, FigureLine, RunReport};
pub use svg::render_svg;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    /// `.json` files are JSON, everything else CSV.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("json") => Format::Json,
            _ => Format::Csv,
        }
    }
}

/// A parsed point file. Coincident points are merged into weights.
#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    pub points: PointSet,
    pub query: Option<Point>,
    pub warnings: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct JsonInstance {
    dim: usize,
    points: Vec<Point>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weights: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    query: Option<Point>,
}

pub fn parse_points(text: &str, format: Format) -> Result<Instance> {
    match format {
        Format::Csv => parse_csv(text),
        Format::Json => parse_json(text),
    }
}

pub fn read_points(path: &Path, format: Option<Format>) -> Result<Instance> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_points(&text, format.unwrap_or_else(|| Format::from_path(path)))
}

/// One point per row, comma separated; `#` starts a comment line, and a
/// `# query x,y` comment names the query point. A first row with no numeric
/// field is taken as a header.
fn parse_csv(text: &str) -> Result<Instance> {
    let mut query = None;
    for (i, line) in text.lines().enumerate() {
        if let Some(rest) = line.trim_start().strip_prefix("# query") {
            query = Some(Point::parse(rest.trim()).map_err(|e| Error::ParseAt {
                line: i + 1,
                column: 1,
                message: strip_prefix(&e),
            })?);
        }
    }
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut raw: Vec<Point> = Vec::new();
    let mut dim = None;
    for (row, record) in reader.records().enumerate() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line() as usize);
            Error::ParseAt {
                line,
                column: 1,
                message: e.to_string(),
            }
        })?;
        let line = record.position().map_or(row + 1, |p| p.line() as usize);
        if record.iter().all(str::is_empty) {
            continue;
        }
        if row == 0 && record.iter().all(|f| parse_rational(f).is_err()) {
            continue;
        }
        let mut coords = Vec::with_capacity(record.len());
        for (j, field) in record.iter().enumerate() {
            let column = field_column(text.lines().nth(line - 1).unwrap_or(""), j);
            coords.push(parse_rational(field).map_err(|e| Error::ParseAt {
                line,
                column,
                message: format!("{} (row {line}, field {})", strip_prefix(&e), j + 1),
            })?);
        }
        let d = *dim.get_or_insert(coords.len());
        if coords.len() != d {
            return Err(Error::ParseAt {
                line,
                column: 1,
                message: format!("row {line} has {} coordinates, expected {d}", coords.len()),
            });
        }
        raw.push(Point::new(coords)?);
    }
    let dim = dim.ok_or_else(|| Error::Parse("no points in input".into()))?;
    let (points, merged) = PointSet::from_multiset(dim, raw)?;
    if let Some(q) = &query {
        crate::error::check_dim(dim, q.dim())?;
    }
    Ok(Instance {
        points,
        query,
        warnings: merge_warning(merged),
    })
}

/// 1-based column of the first non-blank character of field `j`.
fn field_column(line: &str, j: usize) -> usize {
    let start: usize = line.split(',').take(j).map(|f| f.len() + 1).sum();
    let rest = line.get(start..).unwrap_or("");
    start + (rest.len() - rest.trim_start().len()) + 1
}

fn strip_prefix(e: &Error) -> String {
    match e {
        Error::Parse(m) => m.clone(),
        other => other.to_string(),
    }
}

fn merge_warning(merged: usize) -> Vec<String> {
    if merged > 0 {
        vec![format!(
            "merged {merged} duplicate point(s) into multiplicities"
        )]
    } else {
        vec![]
    }
}

fn parse_json(text: &str) -> Result<Instance> {
    let raw: JsonInstance = serde_json::from_str(text).map_err(|e| Error::ParseAt {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if let Some(q) = &raw.query {
        crate::error::check_dim(raw.dim, q.dim())?;
    }
    let (points, warnings) = match raw.weights {
        Some(w) => {
            if w.len() != raw.points.len() {
                return Err(Error::Parse("one weight per point is required".into()));
            }
            let expanded: Vec<Point> = raw
                .points
                .iter()
                .zip(&w)
                .flat_map(|(p, &k)| std::iter::repeat_n(p.clone(), k as usize))
                .collect();
            let (set, _) = PointSet::from_multiset(raw.dim, expanded)?;
            (set, vec![])
        }
        None => {
            let (set, merged) = PointSet::from_multiset(raw.dim, raw.points)?;
            (set, merge_warning(merged))
        }
    };
    Ok(Instance {
        points,
        query: raw.query,
        warnings,
    })
}

/// Text form of a point set; parsing it back gives the same multiset.
pub fn emit_points(set: &PointSet, query: Option<&Point>, format: Format) -> String {
    match format {
        Format::Csv => {
            let mut out = String::new();
            if let Some(q) = query {
                out.push_str(&format!("# query {}\n", q.to_strings().join(",")));
            }
            for (p, w) in set.iter() {
                let row = p
                    .coords()
                    .iter()
                    .map(format_rational)
                    .collect::<Vec<_>>()
                    .join(",");
                for _ in 0..w {
                    out.push_str(&row);
                    out.push('\n');
                }
            }
            out
        }
        Format::Json => {
            let doc = JsonInstance {
                dim: set.dim(),
                points: set.points().to_vec(),
                weights: (!set.is_unit_weighted()).then(|| set.weights().to_vec()),
                query: query.cloned(),
            };
            serde_json::to_string_pretty(&doc).expect("instances serialize") + "\n"
        }
    }
}

/// A directory of CSV vertex files, one body per file, in lexicographic
/// file-name order.
pub fn read_family(dir: &Path) -> Result<(Family, Vec<String>)> {
    let mut files: Vec<std::path::PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .collect();
    files.sort();
    let mut bodies = Vec::with_capacity(files.len());
    let mut warnings = Vec::new();
    for path in files {
        let inst = read_points(&path, None).map_err(|e| match e {
            Error::ParseAt {
                line,
                column,
                message,
            } => Error::ParseAt {
                line,
                column,
                message: format!("{}: {message}", path.display()),
            },
            other => other,
        })?;
        let name = path
            .file_name()
            .map_or_else(String::new, |n| n.to_string_lossy().into_owned());
        warnings.extend(inst.warnings.into_iter().map(|w| format!("{name}: {w}")));
        let vertices = PointSet::new(inst.points.dim(), inst.points.points().to_vec())?;
        bodies.push(ConvexBody::new(name, vertices)?);
    }
    Ok((Family::new(bodies)?, warnings))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::rational::ratio;

    #[test]
    fn csv_examples() {
        let inst = parse_points("0,0\n1/2,3\n", Format::Csv).unwrap();
        assert_eq!(inst.points.len(), 2);
        assert_eq!(
            inst.points.points()[1],
            Point::from_ratios(&[(1, 2), (3, 1)])
        );
        let inst = parse_points("0.25,1\n", Format::Csv).unwrap();
        assert_eq!(inst.points.points()[0][0], ratio(1, 4));
    }

    #[test]
    fn malformed_row_is_located() {
        let err = parse_points("0,0\n1,zz\n", Format::Csv).unwrap_err();
        assert_eq!(
            err,
            Error::ParseAt {
                line: 2,
                column: 3,
                message: "not a number: \"zz\" (row 2, field 2)".into()
            }
        );
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn header_comments_and_duplicates() {
        let inst = parse_points("x,y\n# note\n1,2\n1,2\n3,4\n", Format::Csv).unwrap();
        assert_eq!(inst.points.len(), 2);
        assert_eq!(inst.points.weights(), &[2, 1]);
        assert_eq!(inst.warnings.len(), 1);
    }

    #[test]
    fn ragged_rows_are_rejected() {
        assert!(matches!(
            parse_points("1,2\n3\n", Format::Csv),
            Err(Error::ParseAt { line: 2, .. })
        ));
    }

    #[test]
    fn json_round_trip() {
        let inst = parse_points("1/3,2\n1/3,2\n-7/5,0.125\n", Format::Csv).unwrap();
        let q = Point::from_ratios(&[(1, 7), (2, 9)]);
        for f in [Format::Csv, Format::Json] {
            let text = emit_points(&inst.points, Some(&q), f);
            let back = parse_points(&text, f).unwrap();
            assert_eq!(back.points, inst.points);
            assert_eq!(back.query.as_ref(), Some(&q));
        }
    }

    #[test]
    fn json_errors_have_positions() {
        let err =
            parse_points("{\"dim\": 2, \"points\": [[\"1\", \"x\"]]}", Format::Json).unwrap_err();
        assert!(matches!(err, Error::ParseAt { line: 1, .. }), "{err:?}");
    }
}
