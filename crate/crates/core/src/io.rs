//! Plain-text formats.
//!
//! * Point clouds: one point per line, whitespace-separated coordinates.
//! * Diagrams: one `dim birth death` line per point, `inf` for infinite death.
//! * Translated diagrams: the diagram format, with essential classes written
//!   as `dim -inf death`.
//! * Metadata sidecars: `key=value` lines.
//!
//! Blank lines and lines starting with `#` are ignored everywhere. Numbers
//! are written with the shortest representation that parses back exactly.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::diagram::{DiagramPoint, PersistenceDiagram};
use crate::error::{Error, Result};
use crate::geometry::PointCloud;
use crate::local::{ApproxResult, BoundFormula, EssentialClass, TranslatedDiagram};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_f64(token: &str, line: usize) -> Result<f64> {
    token.parse::<f64>().map_err(|_| Error::Parse {
        line,
        message: format!("'{token}' is not a number"),
    })
}

pub fn parse_point_cloud(text: &str) -> Result<PointCloud> {
    let mut points = Vec::new();
    let mut arity = None;
    for (line, content) in content_lines(text) {
        let coords = content
            .split_whitespace()
            .map(|t| parse_f64(t, line))
            .collect::<Result<Vec<f64>>>()?;
        if let Some(c) = coords.iter().find(|c| !c.is_finite()) {
            return Err(Error::Parse {
                line,
                message: format!("non-finite coordinate {c}"),
            });
        }
        match arity {
            None => arity = Some(coords.len()),
            Some(a) if a != coords.len() => {
                return Err(Error::Parse {
                    line,
                    message: format!("expected {a} coordinates, found {}", coords.len()),
                })
            }
            _ => {}
        }
        points.push(coords);
    }
    PointCloud::new(points)
}

pub fn format_point_cloud(cloud: &PointCloud) -> String {
    let mut out = String::new();
    for p in cloud.points() {
        let line: Vec<String> = p.iter().map(|c| c.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

pub fn read_point_cloud(path: impl AsRef<Path>) -> Result<PointCloud> {
    parse_point_cloud(&fs::read_to_string(path)?)
}

pub fn write_point_cloud(path: impl AsRef<Path>, cloud: &PointCloud) -> Result<()> {
    fs::write(path, format_point_cloud(cloud))?;
    Ok(())
}

fn parse_triples(text: &str) -> Result<Vec<(usize, usize, f64, f64)>> {
    content_lines(text)
        .map(|(line, content)| {
            let fields: Vec<&str> = content.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(Error::Parse {
                    line,
                    message: format!("expected 'dim birth death', found {} fields", fields.len()),
                });
            }
            let dim = fields[0].parse::<usize>().map_err(|_| Error::Parse {
                line,
                message: format!("'{}' is not a dimension", fields[0]),
            })?;
            let birth = parse_f64(fields[1], line)?;
            let death = parse_f64(fields[2], line)?;
            if death.is_nan() || birth.is_nan() || death < birth {
                return Err(Error::Parse {
                    line,
                    message: format!("invalid interval [{birth}, {death})"),
                });
            }
            Ok((line, dim, birth, death))
        })
        .collect()
}

pub fn parse_diagram(text: &str) -> Result<PersistenceDiagram> {
    let mut points = Vec::new();
    for (line, dim, birth, death) in parse_triples(text)? {
        if !birth.is_finite() {
            return Err(Error::Parse {
                line,
                message: format!("birth must be finite, found {birth}"),
            });
        }
        points.push(DiagramPoint::new(dim, birth, death));
    }
    PersistenceDiagram::new(points)
}

pub fn read_diagram(path: impl AsRef<Path>) -> Result<PersistenceDiagram> {
    parse_diagram(&fs::read_to_string(path)?)
}

pub fn write_diagram(path: impl AsRef<Path>, diagram: &PersistenceDiagram) -> Result<()> {
    fs::write(path, diagram.to_string())?;
    Ok(())
}

pub fn format_translated(t: &TranslatedDiagram) -> String {
    let mut out = t.points.to_string();
    for e in &t.essential {
        let _ = writeln!(out, "{} -inf {}", e.dim, e.death);
    }
    out
}

pub fn parse_translated(text: &str) -> Result<TranslatedDiagram> {
    let mut points = Vec::new();
    let mut essential = Vec::new();
    for (line, dim, birth, death) in parse_triples(text)? {
        if birth == f64::NEG_INFINITY {
            if !death.is_finite() {
                return Err(Error::Parse {
                    line,
                    message: "essential class needs a finite death".into(),
                });
            }
            essential.push(EssentialClass { dim, death });
        } else {
            points.push(DiagramPoint::new(dim, birth, death));
        }
    }
    Ok(TranslatedDiagram {
        points: PersistenceDiagram::new(points)?,
        essential,
    })
}

/// `key=value` metadata describing how a result was computed.
pub fn format_metadata(result: &ApproxResult) -> String {
    let mut out = format!("pipeline={}\n", result.bound_formula.pipeline_name());
    match result.bound_formula {
        BoundFormula::Alpha {
            epsilon,
            alpha,
            radius,
        } => {
            let _ = write!(out, "epsilon={epsilon}\nr={radius}\nmax_scale={alpha}\n");
        }
        BoundFormula::R { epsilon } => {
            let _ = write!(out, "epsilon={epsilon}\nrips_scale={}\n", 2.0 * epsilon);
        }
    }
    let _ = write!(
        out,
        "bound={}\nbound_formula={}\n",
        result.bound, result.bound_formula
    );
    out
}

/// Parses `key=value` lines into ordered pairs.
pub fn parse_metadata(text: &str) -> Result<Vec<(String, String)>> {
    content_lines(text)
        .map(|(line, content)| {
            content
                .split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| Error::Parse {
                    line,
                    message: "expected key=value".into(),
                })
        })
        .collect()
}
