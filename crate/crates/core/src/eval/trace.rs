//! Recorded normal traces: paired surface normals `B` and end-effector (or
//! hand) normals `E` along a stroke.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::curvefit::CubicCurve;
use crate::error::{Error, Result};
use crate::geometry::{RigidTransform, UnitVec3};

use super::surface_normal;

/// Marker rows on the back, 5 cm apart over 20 cm (meters from the top row).
pub const MARKER_OFFSETS_M: [f64; 5] = [0.0, 0.05, 0.10, 0.15, 0.20];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceEntry {
    pub y: f64,
    pub surface: UnitVec3,
    pub effector: UnitVec3,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormalTrace {
    entries: Vec<TraceEntry>,
}

#[derive(Serialize, Deserialize)]
struct Row {
    y_m: f64,
    #[serde(rename = "Bx")]
    bx: f64,
    #[serde(rename = "By")]
    by: f64,
    #[serde(rename = "Bz")]
    bz: f64,
    #[serde(rename = "Ex")]
    ex: f64,
    #[serde(rename = "Ey")]
    ey: f64,
    #[serde(rename = "Ez")]
    ez: f64,
}

impl NormalTrace {
    /// Entries must have strictly increasing, finite `y`.
    pub fn new(entries: Vec<TraceEntry>) -> Result<Self> {
        if entries.iter().any(|e| !e.y.is_finite()) {
            return Err(Error::InvalidInput("non-finite trace y".into()));
        }
        if let Some(i) = entries.windows(2).position(|w| w[1].y <= w[0].y) {
            return Err(Error::Ordering { index: i + 1 });
        }
        Ok(NormalTrace { entries })
    }

    pub fn entries(&self) -> &[TraceEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Rotates every normal by `t`; positions are untouched.
    pub fn rotated(&self, t: &RigidTransform) -> NormalTrace {
        NormalTrace {
            entries: self
                .entries
                .iter()
                .map(|e| TraceEntry {
                    y: e.y,
                    surface: t.rotate(&e.surface),
                    effector: t.rotate(&e.effector),
                })
                .collect(),
        }
    }

    /// CSV with header `y_m,Bx,By,Bz,Ex,Ey,Ez`.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        for e in &self.entries {
            let [bx, by, bz] = e.surface.to_array();
            let [ex, ey, ez] = e.effector.to_array();
            w.serialize(Row {
                y_m: e.y,
                bx,
                by,
                bz,
                ex,
                ey,
                ez,
            })
            .expect("in-memory csv");
        }
        if self.entries.is_empty() {
            w.write_record(["y_m", "Bx", "By", "Bz", "Ex", "Ey", "Ez"]).expect("in-memory csv");
        }
        String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf8")
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .from_reader(text.as_bytes());
        let mut entries = Vec::new();
        for (i, row) in rdr.deserialize::<Row>().enumerate() {
            let r = row.map_err(|e| Error::format("trace", e.to_string()))?;
            let bad = |e: Error| Error::format("trace", format!("row {i}: {e}"));
            entries.push(TraceEntry {
                y: r.y_m,
                surface: UnitVec3::from_unit(r.bx, r.by, r.bz).map_err(bad)?,
                effector: UnitVec3::from_unit(r.ex, r.ey, r.ez).map_err(bad)?,
            });
        }
        NormalTrace::new(entries)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_csv()).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        Self::from_csv(&std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?)
    }
}

/// A synthetic trace over `curve` where the effector normal is the surface
/// normal tilted by `offsets_deg[i]` about the x axis, sampled at
/// `y_start + MARKER_OFFSETS_M[i]`.
pub fn marker_trace(curve: &CubicCurve, y_start: f64, offsets_deg: &[f64; 5]) -> Result<NormalTrace> {
    let entries = MARKER_OFFSETS_M
        .iter()
        .zip(offsets_deg)
        .map(|(&dy, &off)| {
            let y = y_start + dy;
            let b = surface_normal(curve, y);
            TraceEntry {
                y,
                surface: b,
                effector: RigidTransform::rotation_x(off.to_radians()).rotate(&b),
            }
        })
        .collect();
    NormalTrace::new(entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trip_is_exact() {
        let curve = CubicCurve::new(2.0, -1.0, 0.3, 0.45, 0.0, 0.2).unwrap();
        let trace = marker_trace(&curve, 0.0, &[5.0, -3.0, 7.5, 1.0, 0.25]).unwrap();
        assert_eq!(NormalTrace::from_csv(&trace.to_csv()).unwrap(), trace);
        assert!(trace.to_csv().starts_with("y_m,Bx,By,Bz,Ex,Ey,Ez\n"));
    }

    #[test]
    fn rejects_bad_rows() {
        assert!(NormalTrace::from_csv("y_m,Bx,By,Bz,Ex,Ey,Ez\n0,0,0,2,0,0,1\n").is_err());
        assert!(NormalTrace::from_csv("y_m,Bx,By,Bz,Ex,Ey,Ez\n0,0,0,1\n").is_err());
        assert!(NormalTrace::from_csv("y_m,Bx,By,Bz,Ex,Ey,Ez\n0.1,0,0,1,0,0,1\n0.0,0,0,1,0,0,1\n").is_err());
        assert!(NormalTrace::from_csv("y_m,Bx,By,Bz,Ex,Ey,Ez\n").unwrap().is_empty());
    }

    #[test]
    fn marker_layout() {
        assert_eq!(MARKER_OFFSETS_M.len(), 5);
        assert!((MARKER_OFFSETS_M[4] - 0.20).abs() < 1e-15);
        let curve = CubicCurve::new(0.0, 0.0, 0.0, 0.5, -0.1, 0.1).unwrap();
        let t = marker_trace(&curve, -0.1, &[0.0; 5]).unwrap();
        assert_eq!(t.len(), 5);
        assert!((t.entries()[4].y - 0.1).abs() < 1e-15);
    }
}
