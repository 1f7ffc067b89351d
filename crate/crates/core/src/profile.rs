//! Depth profile along a vertical stroke line.

use std::path::Path;

use crate::depthcam::{deproject, CameraIntrinsics, DepthImage};
use crate::error::{Error, Result};
use crate::kv::{KvRecord, KvWriter};

/// Minimum number of samples a cubic fit can use.
pub const MIN_SAMPLES: usize = 4;

/// A vertical pixel segment: column `u`, rows `v_start..=v_end`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StrokeLine {
    pub u: usize,
    pub v_start: usize,
    pub v_end: usize,
}

impl StrokeLine {
    pub fn new(u: usize, v_start: usize, v_end: usize) -> Result<Self> {
        if v_start >= v_end {
            return Err(Error::InvalidInput(format!(
                "stroke line needs v_start < v_end, got {v_start}..{v_end}"
            )));
        }
        Ok(StrokeLine { u, v_start, v_end })
    }

    /// Parses `u,v_start,v_end`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<usize> = s
            .split(',')
            .map(|p| p.trim().parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::InvalidInput(format!("stroke line `{s}` is not `u,v0,v1`")))?;
        match parts[..] {
            [u, v0, v1] => StrokeLine::new(u, v0, v1),
            _ => Err(Error::InvalidInput(format!("stroke line `{s}` is not `u,v0,v1`"))),
        }
    }

    pub fn rows(&self) -> std::ops::RangeInclusive<usize> {
        self.v_start..=self.v_end
    }
}

/// Camera-frame `(y, z)` samples along the stroke, y strictly increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct BackProfile {
    x_fixed: f64,
    samples: Vec<(f64, f64)>,
}

impl BackProfile {
    pub fn new(x_fixed: f64, samples: Vec<(f64, f64)>) -> Result<Self> {
        if samples.len() < MIN_SAMPLES {
            return Err(Error::InsufficientData {
                found: samples.len(),
                needed: MIN_SAMPLES,
            });
        }
        if !x_fixed.is_finite() || samples.iter().any(|(y, z)| !y.is_finite() || !z.is_finite()) {
            return Err(Error::InvalidInput("non-finite profile sample".into()));
        }
        if let Some(i) = samples.windows(2).position(|w| w[1].0 <= w[0].0) {
            return Err(Error::Ordering { index: i + 1 });
        }
        Ok(BackProfile { x_fixed, samples })
    }

    pub fn x_fixed(&self) -> f64 {
        self.x_fixed
    }

    pub fn samples(&self) -> &[(f64, f64)] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// CSV with a `y_m,z_m` header; `x_fixed` goes in a leading comment.
    pub fn to_csv(&self) -> String {
        let mut out = KvWriter::new();
        out.entry("x_fixed_m", self.x_fixed);
        let mut text: String = out.finish().lines().map(|l| format!("# {l}\n")).collect();
        text.push_str("y_m,z_m\n");
        for (y, z) in &self.samples {
            text.push_str(&format!("{y},{z}\n"));
        }
        text
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let header = KvRecord::parse_lines(
            text.lines()
                .take_while(|l| l.starts_with('#'))
                .map(|l| l.trim_start_matches('#')),
            "profile header",
        )?;
        let x_fixed: f64 = header.require("x_fixed_m")?;
        let mut rdr = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .from_reader(text.as_bytes());
        let samples = rdr
            .deserialize::<(f64, f64)>()
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::format("profile", e.to_string()))?;
        BackProfile::new(x_fixed, samples)
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

/// Reads the depth column under `line`, fills invalid pixels by linear
/// interpolation between the nearest valid rows and deprojects every row.
pub fn extract_profile(img: &DepthImage, line: &StrokeLine, k: &CameraIntrinsics) -> Result<BackProfile> {
    if img.width() != k.width || img.height() != k.height {
        return Err(Error::InvalidInput(format!(
            "image is {}x{} but intrinsics describe {}x{}",
            img.width(),
            img.height(),
            k.width,
            k.height
        )));
    }
    if line.u >= img.width() || line.v_end >= img.height() || line.v_start >= line.v_end {
        return Err(Error::OutOfBounds {
            u: line.u as f64,
            v: line.v_end as f64,
            width: img.width(),
            height: img.height(),
        });
    }

    let mut depths: Vec<f64> = line
        .rows()
        .map(|v| img.get(line.u, v).expect("bounds checked"))
        .collect();
    let valid = depths.iter().filter(|&&d| d > 0.0).count();
    if valid < MIN_SAMPLES {
        return Err(Error::InsufficientData {
            found: valid,
            needed: MIN_SAMPLES,
        });
    }
    for (i, v) in [(0, line.v_start), (depths.len() - 1, line.v_end)] {
        if depths[i] <= 0.0 {
            return Err(Error::UninterpolatableGap { v });
        }
    }
    fill_gaps(&mut depths);

    let mut points = Vec::with_capacity(depths.len());
    for (v, &d) in line.rows().zip(&depths) {
        points.push(deproject(line.u as f64, v as f64, d, k)?);
    }
    let x_fixed = points.iter().map(|p| p.x).sum::<f64>() / points.len() as f64;
    let mut samples: Vec<(f64, f64)> = points.iter().map(|p| (p.y, p.z)).collect();
    samples.sort_by(|a, b| a.0.total_cmp(&b.0));
    BackProfile::new(x_fixed, samples)
}

/// Linear interpolation over runs of zeros; both ends must be valid.
fn fill_gaps(depths: &mut [f64]) {
    let mut last_valid = 0;
    for i in 1..depths.len() {
        if depths[i] > 0.0 {
            let gap = i - last_valid;
            if gap > 1 {
                let (d0, d1) = (depths[last_valid], depths[i]);
                for j in 1..gap {
                    let t = j as f64 / gap as f64;
                    depths[last_valid + j] = d0 + (d1 - d0) * t;
                }
            }
            last_valid = i;
        }
    }
}
