//! Curve CSV and mesh OBJ files.
//!
//! A curve file has two comment lines followed by `s,x,y,z` rows:
//!
//! ```text
//! # axis=timelike plane=xz eta=+1 case=thm2.1
//! # n=2001
//! 0.0000000000000000e0,1.7320508075688772e0,0.0000000000000000e0,0.0000000000000000e0
//! ```
//!
//! Numbers carry 17 significant digits, so a write/read cycle is bit-exact.

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use thiserror::Error;

use crate::mean::{CurveMeta, Eta, PlanarCurve, Plane};
use crate::minkowski::{AxisType, MinkVec3};
use crate::numerics::{Grid, NumericsError};
use crate::surface::SurfaceGrid;

#[derive(Debug, Error)]
pub enum ExportError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

fn fmt(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_curve_csv<W: Write>(curve: &PlanarCurve, mut w: W) -> io::Result<()> {
    writeln!(
        w,
        "# axis={} plane={} eta={} case={}",
        curve.meta.axis.name(),
        curve.plane,
        curve.eta,
        curve.meta.case
    )?;
    writeln!(w, "# n={}", curve.len())?;
    for (s, p) in curve.grid.points().iter().zip(&curve.points) {
        writeln!(w, "{},{},{},{}", fmt(*s), fmt(p.x), fmt(p.y), fmt(p.z))?;
    }
    w.flush()
}

pub fn export_curve_csv(curve: &PlanarCurve, path: impl AsRef<Path>) -> io::Result<()> {
    write_curve_csv(curve, BufWriter::new(File::create(path)?))
}

pub fn read_curve_csv<R: BufRead>(r: R) -> Result<PlanarCurve, ExportError> {
    let bad = |line: usize, msg: String| ExportError::Format { line, msg };
    let (mut axis, mut plane, mut eta, mut case, mut count) = (None, None, None, None, None);
    let mut s_values = Vec::new();
    let mut points = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        let text = line.trim();
        if text.is_empty() || text == "s,x,y,z" {
            continue;
        }
        if let Some(comment) = text.strip_prefix('#') {
            for field in comment.split_whitespace() {
                let Some((key, value)) = field.split_once('=') else {
                    continue;
                };
                match key {
                    "axis" => {
                        axis = Some(
                            AxisType::from_name(value)
                                .ok_or_else(|| bad(lineno, format!("unknown axis {value:?}")))?,
                        )
                    }
                    "plane" => {
                        plane = Some(
                            Plane::from_name(value)
                                .ok_or_else(|| bad(lineno, format!("unknown plane {value:?}")))?,
                        )
                    }
                    "eta" => {
                        eta = Some(
                            Eta::parse(value)
                                .ok_or_else(|| bad(lineno, format!("bad eta {value:?}")))?,
                        )
                    }
                    "case" => case = Some(value.to_string()),
                    "n" => {
                        count = Some(
                            value
                                .parse::<usize>()
                                .map_err(|e| bad(lineno, format!("bad count {value:?}: {e}")))?,
                        )
                    }
                    _ => {}
                }
            }
            continue;
        }
        let fields: Vec<f64> = text
            .split(',')
            .map(|f| f.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|e| bad(lineno, format!("{e}")))?;
        let [s, x, y, z] = fields[..] else {
            return Err(bad(
                lineno,
                format!("expected 4 columns, got {}", fields.len()),
            ));
        };
        s_values.push(s);
        points.push(MinkVec3::new(x, y, z));
    }
    let missing = |what: &str| bad(0, format!("header lacks {what}"));
    let axis = axis.ok_or_else(|| missing("axis"))?;
    let plane = plane.ok_or_else(|| missing("plane"))?;
    let eta = eta.ok_or_else(|| missing("eta"))?;
    let case = case.ok_or_else(|| missing("case"))?;
    if let Some(n) = count {
        if n != points.len() {
            return Err(bad(
                0,
                format!("header says n={n}, found {} rows", points.len()),
            ));
        }
    }
    Ok(PlanarCurve {
        grid: Grid::from_points(s_values)?,
        points,
        plane,
        eta,
        meta: CurveMeta {
            axis,
            arc_length: !case.starts_with("skew"),
            case,
            constants: Vec::new(),
            notes: Vec::new(),
        },
        tangents: None,
    })
}

pub fn import_curve_csv(path: impl AsRef<Path>) -> Result<PlanarCurve, ExportError> {
    read_curve_csv(BufReader::new(File::open(path)?))
}

/// Vertices row-major (`s` outer, `θ` inner); each grid cell becomes two
/// triangles.
pub fn write_mesh_obj<W: Write>(surface: &SurfaceGrid, mut w: W) -> io::Result<()> {
    writeln!(w, "# revolution surface, {} axis", surface.axis.name())?;
    for row in &surface.points {
        for p in row {
            writeln!(w, "v {} {} {}", fmt(p.x), fmt(p.y), fmt(p.z))?;
        }
    }
    let rows = surface.points.len();
    let m = surface.points.first().map_or(0, Vec::len);
    for i in 0..rows.saturating_sub(1) {
        for j in 0..m.saturating_sub(1) {
            let a = i * m + j + 1;
            let (b, c) = (a + 1, a + m);
            let d = c + 1;
            writeln!(w, "f {a} {b} {d}")?;
            writeln!(w, "f {a} {d} {c}")?;
        }
    }
    w.flush()
}

pub fn export_mesh_obj(surface: &SurfaceGrid, path: impl AsRef<Path>) -> io::Result<()> {
    write_mesh_obj(surface, BufWriter::new(File::create(path)?))
}
