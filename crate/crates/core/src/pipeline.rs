//! End-to-end chaining: depth → profile → cubic → trajectory → evaluation,
//! plus the configuration files that drive it.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::curvefit::{fit_cubic, CubicCurve};
use crate::depthcam::{
    load_depth_image, render_synthetic_with, save_depth_image, CameraIntrinsics, DepthImage, SyntheticScene,
};
use crate::error::{Error, Result};
use crate::eval::{evaluate_trajectory_with, ErrorStats, Reference, Report};
use crate::exec::Execution;
use crate::geometry::{Point3, RigidTransform};
use crate::profile::{extract_profile, BackProfile, StrokeLine};
use crate::trajgen::{to_robot_frame, Trajectory, DEFAULT_STEP_M, SPEED_MEDIUM_MPS};

pub const DEPTH_FILE: &str = "depth.pgm";
pub const PROFILE_FILE: &str = "profile.csv";
pub const CURVE_FILE: &str = "curve.txt";
pub const TRAJECTORY_FILE: &str = "trajectory.csv";
pub const ROBOT_TRAJECTORY_FILE: &str = "trajectory_robot.csv";
pub const REPORT_FILE: &str = "report.txt";

/// Camera-to-robot transform file:
///
/// ```toml
/// rotation = [1.0, 0.0, 0.0,  0.0, 1.0, 0.0,  0.0, 0.0, 1.0]  # row-major
/// translation = [0.4, 0.0, 0.1]                                # meters
/// ```
pub fn load_transform(path: impl AsRef<Path>) -> Result<RigidTransform> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_transform(&text)
}

pub fn parse_transform(text: &str) -> Result<RigidTransform> {
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct TransformFile {
        rotation: Vec<f64>,
        translation: Vec<f64>,
    }
    let f: TransformFile =
        toml::from_str(text).map_err(|e| Error::format("transform config", e.message().to_string()))?;
    if f.rotation.len() != 9 || f.translation.len() != 3 {
        return Err(Error::format(
            "transform config",
            "need 9 rotation and 3 translation values",
        ));
    }
    RigidTransform::from_row_major(&[f.rotation, f.translation].concat())
}

pub fn transform_to_toml(t: &RigidTransform) -> String {
    let v = t.to_row_major();
    let fmt = |s: &[f64]| s.iter().map(|x| format!("{x:?}")).collect::<Vec<_>>().join(", ");
    format!("rotation = [{}]\ntranslation = [{}]\n", fmt(&v[..9]), fmt(&v[9..]))
}

/// Everything `pipeline` needs, resolved to concrete paths and values.
#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    pub scene: Option<PathBuf>,
    pub depth: Option<PathBuf>,
    pub transform: Option<PathBuf>,
    pub out: PathBuf,
    pub line: StrokeLine,
    pub step_m: f64,
    pub speed_mps: f64,
    pub seed: Option<u64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PipelineFile {
    scene: Option<PathBuf>,
    depth: Option<PathBuf>,
    transform: Option<PathBuf>,
    out: Option<PathBuf>,
    line: String,
    step_mm: Option<f64>,
    speed_mps: Option<f64>,
    seed: Option<u64>,
}

impl PipelineConfig {
    /// Reads a pipeline config. Relative paths resolve against the config
    /// file's directory.
    ///
    /// ```toml
    /// scene = "scene.toml"        # synthesize from this scene (or give `depth`)
    /// depth = "capture.pgm"       # optional: measured depth image
    /// transform = "robot.toml"    # optional: camera-to-robot transform
    /// out = "out"
    /// line = "320,120,360"        # u, v_start, v_end
    /// step_mm = 1.0
    /// speed_mps = 0.085
    /// seed = 42                   # overrides the scene seed
    /// ```
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let base = path.parent().unwrap_or(Path::new("."));
        Self::from_toml_str(&text, base)
    }

    pub fn from_toml_str(text: &str, base: &Path) -> Result<Self> {
        let f: PipelineFile =
            toml::from_str(text).map_err(|e| Error::format("pipeline config", e.message().to_string()))?;
        let resolve = |p: PathBuf| if p.is_absolute() { p } else { base.join(p) };
        let cfg = PipelineConfig {
            scene: f.scene.map(resolve),
            depth: f.depth.map(resolve),
            transform: f.transform.map(resolve),
            out: resolve(f.out.unwrap_or_else(|| PathBuf::from("out"))),
            line: StrokeLine::parse(&f.line)?,
            step_m: f.step_mm.unwrap_or(DEFAULT_STEP_M * 1000.0) / 1000.0,
            speed_mps: f.speed_mps.unwrap_or(SPEED_MEDIUM_MPS),
            seed: f.seed,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.step_m.is_finite() && self.step_m > 0.0) {
            return Err(Error::InvalidInput(format!("step must be positive, got {} m", self.step_m)));
        }
        if !(self.speed_mps.is_finite() && self.speed_mps > 0.0) {
            return Err(Error::InvalidInput(format!(
                "speed must be positive, got {} m/s",
                self.speed_mps
            )));
        }
        if self.scene.is_none() && self.depth.is_none() {
            return Err(Error::InvalidInput("config needs a scene or a depth image".into()));
        }
        Ok(())
    }

    /// Runs every stage and writes all artifacts into `out`.
    pub fn run(&self, exec: Execution) -> Result<PipelineOutput> {
        self.validate()?;
        let scene = self
            .scene
            .as_ref()
            .map(SyntheticScene::load)
            .transpose()?
            .map(|s| SyntheticScene {
                seed: self.seed.unwrap_or(s.seed),
                ..s
            });
        let transform = self.transform.as_ref().map(load_transform).transpose()?;
        let stages = Stages {
            line: self.line,
            step_m: self.step_m,
            speed_mps: self.speed_mps,
            transform,
        };
        let output = match (&self.depth, &scene) {
            (Some(depth), scene) => {
                let img = load_depth_image(depth)?;
                let k = scene.map(|s| s.intrinsics).unwrap_or_default();
                stages.run_image(img, &k, None, exec)?
            }
            (None, Some(scene)) => stages.run_scene(scene, exec)?,
            (None, None) => unreachable!("validated"),
        };
        output.write(&self.out)?;
        Ok(output)
    }
}

/// Stage parameters shared by every entry point.
#[derive(Debug, Clone, Copy)]
pub struct Stages {
    pub line: StrokeLine,
    pub step_m: f64,
    pub speed_mps: f64,
    pub transform: Option<RigidTransform>,
}

#[derive(Debug, Clone)]
pub struct PipelineOutput {
    pub image: DepthImage,
    pub profile: BackProfile,
    pub curve: CubicCurve,
    pub trajectory: Trajectory,
    pub robot_trajectory: Option<Trajectory>,
    pub stats: ErrorStats,
    pub report: Report,
}

impl Stages {
    /// Renders `scene` and scores the result against the scene's analytic
    /// surface. Depths stay unquantized in memory.
    pub fn run_scene(&self, scene: &SyntheticScene, exec: Execution) -> Result<PipelineOutput> {
        let img = render_synthetic_with(scene, exec)?;
        self.run_image(img, &scene.intrinsics, Some(scene), exec)
    }

    /// Runs extraction onward on an existing image. Without a scene the
    /// trajectory is scored against its own fitted curve.
    pub fn run_image(
        &self,
        image: DepthImage,
        k: &CameraIntrinsics,
        scene: Option<&SyntheticScene>,
        exec: Execution,
    ) -> Result<PipelineOutput> {
        let profile = extract_profile(&image, &self.line, k)?;
        let curve = fit_cubic(&profile)?;
        let trajectory = Trajectory::generate(&curve, profile.x_fixed(), self.step_m, self.speed_mps)?;
        let robot_trajectory = self
            .transform
            .as_ref()
            .map(|t| to_robot_frame(&trajectory, t))
            .transpose()?;
        let reference = match scene {
            Some(s) => Reference::Scene(s),
            None => Reference::Curve(&curve),
        };
        let stats = evaluate_trajectory_with(&trajectory, reference, exec)?;

        let mut report = Report::new(stats.clone())
            .with_context("reference", if scene.is_some() { "scene" } else { "fitted_curve" })
            .with_context("line", format!("{},{},{}", self.line.u, self.line.v_start, self.line.v_end))
            .with_context("step_m", self.step_m)
            .with_context("speed_mps", self.speed_mps)
            .with_context("waypoints", trajectory.len())
            .with_context("duration_s", trajectory.duration())
            .with_context("curve.a", curve.a)
            .with_context("curve.b", curve.b)
            .with_context("curve.c", curve.c)
            .with_context("curve.d", curve.d)
            .with_context("curve.y_min", curve.y_min)
            .with_context("curve.y_max", curve.y_max)
            .with_context("curve.rms_residual", curve.rms_residual);
        if let Some(s) = scene {
            let surf = s.surface;
            report = report
                .with_context("scene.a", surf.a)
                .with_context("scene.b", surf.b)
                .with_context("scene.c", surf.c)
                .with_context("scene.d", surf.d)
                .with_context("scene.lateral", surf.lateral)
                .with_context("scene.noise_sigma_mm", s.noise_sigma_mm)
                .with_context("scene.seed", s.seed);
        }
        Ok(PipelineOutput {
            image,
            profile,
            curve,
            trajectory,
            robot_trajectory,
            stats,
            report,
        })
    }
}

impl PipelineOutput {
    /// Writes depth, profile, curve, trajectories and report into `dir`.
    /// The depth image is quantized to whole millimeters on disk.
    pub fn write(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        save_depth_image(&self.image, dir.join(DEPTH_FILE))?;
        self.profile.save(dir.join(PROFILE_FILE))?;
        self.curve.save(self.profile.x_fixed(), dir.join(CURVE_FILE))?;
        self.trajectory.save(dir.join(TRAJECTORY_FILE))?;
        if let Some(r) = &self.robot_trajectory {
            r.save(dir.join(ROBOT_TRAJECTORY_FILE))?;
        }
        self.report.save(dir.join(REPORT_FILE))
    }
}

/// Re-renders `scene` under each seed and runs the full chain, returning the
/// evaluation for every seed in order. Seeds run concurrently under
/// [`Execution::Parallel`]; each run is itself sequential.
pub fn noise_sweep(scene: &SyntheticScene, seeds: &[u64], stages: &Stages, exec: Execution) -> Result<Vec<PipelineOutput>> {
    exec.try_map(seeds, |&seed| {
        let s = SyntheticScene { seed, ..*scene };
        stages.run_scene(&s, Execution::Sequential)
    })
}

/// A translation-only transform, handy for tests and defaults.
pub fn translation(x: f64, y: f64, z: f64) -> Result<RigidTransform> {
    RigidTransform::from_translation(Point3::new(x, y, z))
}
