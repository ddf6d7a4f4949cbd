//! Curve sets as CSV (`curve_id,x,y,z`) or ASCII PLY with edge elements.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use rsvortex_core::{CurveSet, Polyline, Vec3};

use crate::error::{CliError, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CurveFormat {
    #[default]
    Csv,
    Ply,
}

impl FromStr for CurveFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Self::Csv),
            "ply" => Ok(Self::Ply),
            other => Err(format!("unknown curve format `{other}` (expected csv or ply)")),
        }
    }
}

/// One row per point; a closed curve does not repeat its first point.
pub fn to_csv(set: &CurveSet) -> String {
    let mut out = String::from("curve_id,x,y,z\n");
    for (id, curve) in set.curves.iter().enumerate() {
        for p in &curve.points {
            writeln!(out, "{id},{},{},{}", p.x, p.y, p.z).unwrap();
        }
    }
    out
}

/// Reads curves written by [`to_csv`]. Every curve comes back open.
pub fn from_csv(text: &str) -> Result<CurveSet> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header.trim() == "curve_id,x,y,z" => {}
        _ => return Err(CliError::Parse("curve CSV must start with `curve_id,x,y,z`".into())),
    }
    let mut curves: Vec<Polyline> = Vec::new();
    let mut last_id = None;
    for (n, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let bad = || CliError::Parse(format!("curve CSV line {}: expected `id,x,y,z`", n + 1));
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let [id, x, y, z] = fields[..] else { return Err(bad()) };
        let id: usize = id.parse().map_err(|_| bad())?;
        let coords = [x, y, z].map(|v| v.parse::<f64>());
        let [Ok(x), Ok(y), Ok(z)] = coords else { return Err(bad()) };
        if last_id != Some(id) {
            curves.push(Polyline::open(Vec::new()));
            last_id = Some(id);
        }
        curves.last_mut().expect("pushed above").points.push(Vec3::new(x, y, z));
    }
    Ok(CurveSet::new(curves))
}

pub fn to_ply(set: &CurveSet) -> String {
    let vertices = set.point_count();
    let edges: usize = set
        .curves
        .iter()
        .map(|c| match c.points.len() {
            0 | 1 => 0,
            n if c.closed => n,
            n => n - 1,
        })
        .sum();
    let mut out = String::new();
    writeln!(out, "ply\nformat ascii 1.0\ncomment curve set, one edge chain per curve").unwrap();
    writeln!(out, "element vertex {vertices}\nproperty double x\nproperty double y\nproperty double z").unwrap();
    writeln!(out, "element edge {edges}\nproperty int vertex1\nproperty int vertex2\nend_header").unwrap();
    for p in set.points() {
        writeln!(out, "{} {} {}", p.x, p.y, p.z).unwrap();
    }
    let mut base = 0;
    for c in &set.curves {
        let n = c.points.len();
        if n > 1 {
            for i in 0..n - 1 {
                writeln!(out, "{} {}", base + i, base + i + 1).unwrap();
            }
            if c.closed {
                writeln!(out, "{} {}", base + n - 1, base).unwrap();
            }
        }
        base += n;
    }
    out
}

pub fn write_curves(set: &CurveSet, path: &Path, format: CurveFormat) -> Result<()> {
    let text = match format {
        CurveFormat::Csv => to_csv(set),
        CurveFormat::Ply => to_ply(set),
    };
    std::fs::write(path, text).map_err(|e| CliError::io(path, e))
}

pub fn read_csv(path: &Path) -> Result<CurveSet> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    from_csv(&text)
}
