//! Pinhole depth camera: intrinsics, depth images, (de)projection, and a
//! synthetic heightfield renderer standing in for a physical sensor.

mod pgm;
mod synth;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Point3;

pub use pgm::{load_depth_image, read_depth_image, save_depth_image, write_depth_image};
pub use synth::{render_synthetic, render_synthetic_with, SceneFile, SurfaceModel, SyntheticScene};

const MM_PER_M: f64 = 1000.0;

/// Focal lengths and principal point in pixels, plus the image size.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CameraIntrinsics {
    pub fx: f64,
    pub fy: f64,
    pub cx: f64,
    pub cy: f64,
    pub width: usize,
    pub height: usize,
}

impl Default for CameraIntrinsics {
    /// 640×480, 600 px focal length, centered principal point.
    fn default() -> Self {
        CameraIntrinsics {
            fx: 600.0,
            fy: 600.0,
            cx: 320.0,
            cy: 240.0,
            width: 640,
            height: 480,
        }
    }
}

impl CameraIntrinsics {
    pub fn new(fx: f64, fy: f64, cx: f64, cy: f64, width: usize, height: usize) -> Result<Self> {
        let k = CameraIntrinsics {
            fx,
            fy,
            cx,
            cy,
            width,
            height,
        };
        k.validate()?;
        Ok(k)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.fx, self.fy, self.cx, self.cy].iter().all(|v| v.is_finite());
        if !finite || self.fx <= 0.0 || self.fy <= 0.0 {
            return Err(Error::InvalidInput(format!(
                "focal lengths must be positive and finite (fx = {}, fy = {})",
                self.fx, self.fy
            )));
        }
        if !(0.0..self.width as f64).contains(&self.cx) || !(0.0..self.height as f64).contains(&self.cy) {
            return Err(Error::InvalidInput(format!(
                "principal point ({}, {}) outside {}x{} image",
                self.cx, self.cy, self.width, self.height
            )));
        }
        Ok(())
    }

    fn contains(&self, u: f64, v: f64) -> bool {
        u >= 0.0 && v >= 0.0 && u < self.width as f64 && v < self.height as f64
    }
}

/// Row-major depth samples in millimeters; 0 marks an invalid pixel.
#[derive(Debug, Clone, PartialEq)]
pub struct DepthImage {
    width: usize,
    height: usize,
    data: Vec<f64>,
}

impl DepthImage {
    pub fn new(width: usize, height: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != width * height {
            return Err(Error::InvalidInput(format!(
                "depth data has {} samples, expected {}x{} = {}",
                data.len(),
                width,
                height,
                width * height
            )));
        }
        if let Some(bad) = data.iter().find(|d| !d.is_finite() || **d < 0.0) {
            return Err(Error::InvalidInput(format!("invalid depth sample {bad}")));
        }
        Ok(DepthImage {
            width,
            height,
            data,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    /// Depth in millimeters at column `u`, row `v`.
    pub fn get(&self, u: usize, v: usize) -> Option<f64> {
        (u < self.width && v < self.height).then(|| self.data[v * self.width + u])
    }

    pub fn set(&mut self, u: usize, v: usize, depth_mm: f64) -> Result<()> {
        if u >= self.width || v >= self.height {
            return Err(Error::OutOfBounds {
                u: u as f64,
                v: v as f64,
                width: self.width,
                height: self.height,
            });
        }
        if !depth_mm.is_finite() || depth_mm < 0.0 {
            return Err(Error::InvalidInput(format!("invalid depth sample {depth_mm}")));
        }
        self.data[v * self.width + u] = depth_mm;
        Ok(())
    }

    pub fn is_valid(&self, u: usize, v: usize) -> bool {
        self.get(u, v).is_some_and(|d| d > 0.0)
    }
}

/// Back-projects pixel `(u, v)` at `depth_mm` to a camera-frame point in
/// meters.
pub fn deproject(u: f64, v: f64, depth_mm: f64, k: &CameraIntrinsics) -> Result<Point3> {
    if !k.contains(u, v) {
        return Err(Error::OutOfBounds {
            u,
            v,
            width: k.width,
            height: k.height,
        });
    }
    if !(depth_mm.is_finite() && depth_mm > 0.0) {
        return Err(Error::InvalidPixel {
            u: u as usize,
            v: v as usize,
        });
    }
    let z = depth_mm / MM_PER_M;
    Ok(Point3::new((u - k.cx) * z / k.fx, (v - k.cy) * z / k.fy, z))
}

/// Projects a camera-frame point to `(u, v, depth_mm)`.
pub fn project(p: &Point3, k: &CameraIntrinsics) -> Result<(f64, f64, f64)> {
    if !p.is_finite() {
        return Err(Error::InvalidInput(format!("non-finite point {p}")));
    }
    if p.z <= 0.0 {
        return Err(Error::BehindCamera { z: p.z });
    }
    Ok((k.fx * p.x / p.z + k.cx, k.fy * p.y / p.z + k.cy, p.z * MM_PER_M))
}
