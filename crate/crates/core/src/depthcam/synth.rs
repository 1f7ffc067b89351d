//! Synthetic depth rendering of an analytic back surface.

use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use super::{CameraIntrinsics, DepthImage, MM_PER_M};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::geometry::UnitVec3;

const SOLVE_TOL_M: f64 = 1e-7;
const SOLVE_MAX_ITER: usize = 50;
const MIN_NOISY_DEPTH_MM: f64 = 0.1;

/// Heightfield `z = a·y³ + b·y² + c·y + d + lateral·x²` in the camera frame
/// (meters).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceModel {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub lateral: f64,
}

impl SurfaceModel {
    pub fn cubic(a: f64, b: f64, c: f64, d: f64) -> Self {
        SurfaceModel {
            a,
            b,
            c,
            d,
            lateral: 0.0,
        }
    }

    pub fn depth(&self, x: f64, y: f64) -> f64 {
        ((self.a * y + self.b) * y + self.c) * y + self.d + self.lateral * x * x
    }

    /// `(∂z/∂x, ∂z/∂y)`.
    pub fn gradient(&self, x: f64, y: f64) -> (f64, f64) {
        (
            2.0 * self.lateral * x,
            (3.0 * self.a * y + 2.0 * self.b) * y + self.c,
        )
    }

    /// Camera-facing normal `normalize(−∂z/∂x, −∂z/∂y, 1)`.
    pub fn normal(&self, x: f64, y: f64) -> UnitVec3 {
        let (gx, gy) = self.gradient(x, y);
        UnitVec3::new(-gx, -gy, 1.0).expect("finite gradient")
    }

    fn is_finite(&self) -> bool {
        [self.a, self.b, self.c, self.d, self.lateral]
            .iter()
            .all(|v| v.is_finite())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SyntheticScene {
    pub surface: SurfaceModel,
    /// Standard deviation of additive Gaussian depth noise, millimeters.
    pub noise_sigma_mm: f64,
    pub intrinsics: CameraIntrinsics,
    pub seed: u64,
}

impl SyntheticScene {
    pub fn new(surface: SurfaceModel, noise_sigma_mm: f64, intrinsics: CameraIntrinsics, seed: u64) -> Result<Self> {
        let scene = SyntheticScene {
            surface,
            noise_sigma_mm,
            intrinsics,
            seed,
        };
        scene.validate()?;
        Ok(scene)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.surface.is_finite() {
            return Err(Error::InvalidInput("non-finite surface coefficients".into()));
        }
        if !(self.noise_sigma_mm.is_finite() && self.noise_sigma_mm >= 0.0) {
            return Err(Error::InvalidInput(format!(
                "noise_sigma_mm must be >= 0, got {}",
                self.noise_sigma_mm
            )));
        }
        if self.surface.d <= 0.0 {
            return Err(Error::InvalidInput(format!(
                "nominal depth d must be positive, got {}",
                self.surface.d
            )));
        }
        self.intrinsics.validate()
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml_str(&text)
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let file: SceneFile =
            toml::from_str(text).map_err(|e| Error::format("scene config", e.message().to_string()))?;
        file.into_scene()
    }

    pub fn to_toml_string(&self) -> String {
        let s = self.surface;
        let file = SceneFile {
            a: s.a,
            b: s.b,
            c: s.c,
            d: s.d,
            lateral: s.lateral,
            noise_sigma_mm: self.noise_sigma_mm,
            seed: self.seed,
            intrinsics: Some(self.intrinsics),
        };
        toml::to_string(&file).expect("scene serializes")
    }
}

/// On-disk scene description.
///
/// ```toml
/// a = 1.0            # cubic coefficients, z = a·y³ + b·y² + c·y + d (m)
/// b = -0.3
/// c = 0.05
/// d = 0.5
/// lateral = 0.0      # optional x² curvature (1/m)
/// noise_sigma_mm = 0.0
/// seed = 42
///
/// [intrinsics]       # optional, defaults to 640x480, f = 600 px
/// fx = 600.0
/// fy = 600.0
/// cx = 320.0
/// cy = 240.0
/// width = 640
/// height = 480
/// ```
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneFile {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    #[serde(default)]
    pub lateral: f64,
    #[serde(default)]
    pub noise_sigma_mm: f64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub intrinsics: Option<CameraIntrinsics>,
}

impl SceneFile {
    pub fn into_scene(self) -> Result<SyntheticScene> {
        SyntheticScene::new(
            SurfaceModel {
                a: self.a,
                b: self.b,
                c: self.c,
                d: self.d,
                lateral: self.lateral,
            },
            self.noise_sigma_mm,
            self.intrinsics.unwrap_or_default(),
            self.seed,
        )
    }
}

/// Renders with the default [`Execution`].
pub fn render_synthetic(scene: &SyntheticScene) -> Result<DepthImage> {
    render_synthetic_with(scene, Execution::default())
}

/// Ray-casts every pixel against the scene heightfield.
///
/// Along the ray through `(u, v)` a point at depth `z` sits at
/// `x = (u−cx)·z/fx`, `y = (v−cy)·z/fy`; the rendered depth is the fixed
/// point of `z ↦ surface(x(z), y(z))`, iterated from the nominal depth `d`.
/// Noise is drawn per row from a ChaCha stream keyed by `(seed, row)`, so
/// output does not depend on the execution strategy.
pub fn render_synthetic_with(scene: &SyntheticScene, exec: Execution) -> Result<DepthImage> {
    scene.validate()?;
    let k = scene.intrinsics;
    let mut data = vec![0.0; k.width * k.height];
    let noise = (scene.noise_sigma_mm > 0.0)
        .then(|| Normal::new(0.0, scene.noise_sigma_mm).expect("sigma validated"));

    exec.try_for_each_chunk(&mut data, k.width, |v, row| {
        let ry = (v as f64 - k.cy) / k.fy;
        let mut rng = noise.map(|_| {
            let mut rng = ChaCha8Rng::seed_from_u64(scene.seed);
            rng.set_stream(v as u64);
            rng
        });
        for (u, out) in row.iter_mut().enumerate() {
            let rx = (u as f64 - k.cx) / k.fx;
            let z = solve_ray(&scene.surface, rx, ry).map_err(|reason| Error::Render { u, v, reason })?;
            let mut mm = z * MM_PER_M;
            if let (Some(dist), Some(rng)) = (noise.as_ref(), rng.as_mut()) {
                mm = (mm + dist.sample(rng)).max(MIN_NOISY_DEPTH_MM);
            }
            *out = mm;
        }
        Ok(())
    })?;
    DepthImage::new(k.width, k.height, data)
}

fn solve_ray(surface: &SurfaceModel, rx: f64, ry: f64) -> std::result::Result<f64, String> {
    let mut z = surface.d;
    for _ in 0..SOLVE_MAX_ITER {
        let next = surface.depth(rx * z, ry * z);
        if !next.is_finite() || next <= 0.0 {
            return Err(format!("surface depth {next} m is not in front of the camera"));
        }
        if (next - z).abs() < SOLVE_TOL_M {
            return Ok(next);
        }
        z = next;
    }
    Err(format!(
        "no convergence after {SOLVE_MAX_ITER} iterations; surface too steep for the view"
    ))
}
