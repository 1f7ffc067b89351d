//! Stroke trajectories sampled from a fitted back curve.
//!
//! Waypoints sit on the curve every `step` meters of camera-frame y. Each
//! carries the pitch about the frame's x axis that makes the end-effector
//! tangent to the segment arriving at it, `atan(Δz/Δy)`, and a time stamp
//! for constant-speed traversal.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::curvefit::CubicCurve;
use crate::error::{Error, Result};
use crate::geometry::{Point3, RigidTransform};
use crate::kv::{KvRecord, KvWriter};

/// Default waypoint spacing, 1 mm.
pub const DEFAULT_STEP_M: f64 = 0.001;
/// Slow stroke speed, 2.8 cm/s.
pub const SPEED_SLOW_MPS: f64 = 0.028;
/// Medium stroke speed, 8.5 cm/s.
pub const SPEED_MEDIUM_MPS: f64 = 0.085;

/// Tolerance for the camera x axis surviving a frame change.
const AXIS_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Frame {
    Camera,
    Robot,
}

impl fmt::Display for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Frame::Camera => "camera",
            Frame::Robot => "robot",
        })
    }
}

impl FromStr for Frame {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "camera" => Ok(Frame::Camera),
            "robot" => Ok(Frame::Robot),
            other => Err(Error::format("trajectory", format!("unknown frame `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Waypoint {
    pub position: Point3,
    /// Rotation of the end-effector about the frame's x axis, radians.
    pub pitch: f64,
    /// Seconds from the start of the stroke.
    pub time: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    waypoints: Vec<Waypoint>,
    frame: Frame,
    camera_to_robot: Option<RigidTransform>,
    speed: f64,
    step: f64,
    curve: CubicCurve,
}

impl Trajectory {
    /// Samples `curve` at `step` spacing, computes pitches and stamps times
    /// at `speed`. The result is in the camera frame.
    pub fn generate(curve: &CubicCurve, x_fixed: f64, step: f64, speed: f64) -> Result<Self> {
        let points = generate_waypoints(curve, x_fixed, step)?;
        let pitches = compute_pitch(&points)?;
        let waypoints = points
            .into_iter()
            .zip(pitches)
            .map(|(position, pitch)| Waypoint {
                position,
                pitch,
                time: 0.0,
            })
            .collect();
        let traj = Trajectory {
            waypoints,
            frame: Frame::Camera,
            camera_to_robot: None,
            speed,
            step,
            curve: *curve,
        };
        timestamp(&traj, speed)
    }

    pub fn waypoints(&self) -> &[Waypoint] {
        &self.waypoints
    }

    pub fn frame(&self) -> Frame {
        self.frame
    }

    /// The transform used to reach the robot frame, if any.
    pub fn camera_to_robot(&self) -> Option<&RigidTransform> {
        self.camera_to_robot.as_ref()
    }

    pub fn speed(&self) -> f64 {
        self.speed
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    /// The curve the waypoints were sampled from (camera frame).
    pub fn curve(&self) -> &CubicCurve {
        &self.curve
    }

    pub fn len(&self) -> usize {
        self.waypoints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.waypoints.is_empty()
    }

    /// Total polyline length in meters.
    pub fn path_length(&self) -> f64 {
        self.waypoints
            .windows(2)
            .map(|w| w[0].position.distance(&w[1].position))
            .sum()
    }

    pub fn duration(&self) -> f64 {
        self.waypoints.last().map_or(0.0, |w| w.time)
    }

    /// Waypoint positions expressed in the camera frame.
    pub fn camera_positions(&self) -> Result<Vec<Point3>> {
        match (&self.frame, &self.camera_to_robot) {
            (Frame::Camera, _) => Ok(self.waypoints.iter().map(|w| w.position).collect()),
            (Frame::Robot, Some(t)) => {
                let inv = t.inverse();
                self.waypoints.iter().map(|w| inv.apply(&w.position)).collect()
            }
            (Frame::Robot, None) => Err(Error::InvalidInput(
                "robot-frame trajectory without its camera transform".into(),
            )),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.waypoints.len() < 2 {
            return Err(Error::InsufficientData {
                found: self.waypoints.len(),
                needed: 2,
            });
        }
        if !(self.speed.is_finite() && self.speed > 0.0) || !(self.step.is_finite() && self.step > 0.0) {
            return Err(Error::InvalidInput("speed and step must be positive".into()));
        }
        self.curve.validate()?;
        for (i, w) in self.waypoints.iter().enumerate() {
            if !w.position.is_finite() || !w.time.is_finite() || w.time < 0.0 {
                return Err(Error::InvalidInput(format!("waypoint {i} is not finite")));
            }
            if !(w.pitch.abs() < FRAC_PI_2) {
                return Err(Error::InvalidInput(format!(
                    "waypoint {i} pitch {} outside (-pi/2, pi/2)",
                    w.pitch
                )));
            }
        }
        if let Some(i) = self.waypoints.windows(2).position(|w| w[1].time <= w[0].time) {
            return Err(Error::Ordering { index: i + 1 });
        }
        let cam = self.camera_positions()?;
        if let Some(i) = cam.windows(2).position(|w| w[1].y <= w[0].y) {
            return Err(Error::Ordering { index: i + 1 });
        }
        Ok(())
    }

    /// CSV with columns `index,time_s,frame,x_m,y_m,z_m,pitch_rad`, preceded
    /// by `#`-prefixed key-value lines carrying speed, step, the generating
    /// curve and (robot frame only) the camera-to-robot transform.
    pub fn to_csv(&self) -> String {
        let mut w = KvWriter::new();
        w.entry("frame", self.frame)
            .entry("speed_mps", self.speed)
            .entry("step_m", self.step);
        self.curve.write_kv(&mut w, "curve.");
        if let Some(t) = &self.camera_to_robot {
            w.list("camera_to_robot", &t.to_row_major());
        }
        let mut out: String = w.finish().lines().map(|l| format!("# {l}\n")).collect();
        out.push_str("index,time_s,frame,x_m,y_m,z_m,pitch_rad\n");
        for (i, wp) in self.waypoints.iter().enumerate() {
            let p = wp.position;
            out.push_str(&format!(
                "{i},{},{},{},{},{},{}\n",
                wp.time, self.frame, p.x, p.y, p.z, wp.pitch
            ));
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let header = KvRecord::parse_lines(
            text.lines()
                .take_while(|l| l.starts_with('#'))
                .map(|l| l.trim_start_matches('#')),
            "trajectory header",
        )?;
        let frame: Frame = header.require_str("frame")?.parse()?;
        let camera_to_robot = match header.get_str("camera_to_robot") {
            Some(_) => Some(RigidTransform::from_row_major(&header.list("camera_to_robot")?)?),
            None => None,
        };
        if (frame == Frame::Robot) != camera_to_robot.is_some() {
            return Err(Error::format(
                "trajectory header",
                "camera_to_robot must be present exactly for robot-frame trajectories",
            ));
        }

        #[derive(Deserialize)]
        struct Row {
            index: usize,
            time_s: f64,
            frame: Frame,
            x_m: f64,
            y_m: f64,
            z_m: f64,
            pitch_rad: f64,
        }
        let mut rdr = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .from_reader(text.as_bytes());
        let mut waypoints = Vec::new();
        for (i, row) in rdr.deserialize::<Row>().enumerate() {
            let row = row.map_err(|e| Error::format("trajectory", e.to_string()))?;
            if row.index != i || row.frame != frame {
                return Err(Error::format(
                    "trajectory",
                    format!("row {i}: bad index or frame column"),
                ));
            }
            waypoints.push(Waypoint {
                position: Point3::new(row.x_m, row.y_m, row.z_m),
                pitch: row.pitch_rad,
                time: row.time_s,
            });
        }
        let traj = Trajectory {
            waypoints,
            frame,
            camera_to_robot,
            speed: header.require("speed_mps")?,
            step: header.require("step_m")?,
            curve: CubicCurve::read_kv(&header, "curve.")?,
        };
        traj.validate()?;
        Ok(traj)
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

/// Camera-frame points `(x_fixed, y_i, curve(y_i))` with
/// `y_i = y_min + i·step`, closed by a point exactly at `y_max`.
pub fn generate_waypoints(curve: &CubicCurve, x_fixed: f64, step: f64) -> Result<Vec<Point3>> {
    curve.validate()?;
    if !(step.is_finite() && step > 0.0) || !x_fixed.is_finite() {
        return Err(Error::InvalidInput(format!("step must be positive, got {step}")));
    }
    let span = curve.y_max - curve.y_min;
    if span < 2.0 * step {
        return Err(Error::DomainTooShort { length: span, step });
    }
    let n = (span / step + 1e-9).floor() as usize;
    let mut ys: Vec<f64> = (0..=n).map(|i| curve.y_min + i as f64 * step).collect();
    let last = ys.last_mut().expect("n >= 2");
    if (*last - curve.y_max).abs() <= 1e-9 * step {
        *last = curve.y_max;
    } else {
        ys.push(curve.y_max);
    }
    Ok(ys
        .into_iter()
        .map(|y| Point3::new(x_fixed, y, curve.eval(y)))
        .collect())
}

/// Pitch per waypoint: `atan((z_i − z_{i−1}) / (y_i − y_{i−1}))`, with the
/// first waypoint copying the second.
pub fn compute_pitch(points: &[Point3]) -> Result<Vec<f64>> {
    if points.len() < 2 {
        return Err(Error::InsufficientData {
            found: points.len(),
            needed: 2,
        });
    }
    let mut pitches = Vec::with_capacity(points.len());
    pitches.push(0.0);
    for (i, w) in points.windows(2).enumerate() {
        let dy = w[1].y - w[0].y;
        if !(dy > 0.0) {
            return Err(Error::Ordering { index: i + 1 });
        }
        pitches.push(((w[1].z - w[0].z) / dy).atan());
    }
    pitches[0] = pitches[1];
    Ok(pitches)
}

/// Re-stamps times as cumulative arc length over `speed`.
pub fn timestamp(traj: &Trajectory, speed: f64) -> Result<Trajectory> {
    if !(speed.is_finite() && speed > 0.0) {
        return Err(Error::InvalidInput(format!("speed must be positive, got {speed}")));
    }
    let mut out = traj.clone();
    out.speed = speed;
    let mut arc = 0.0;
    let mut prev = out.waypoints.first().map(|w| w.position);
    for w in out.waypoints.iter_mut() {
        arc += prev.map_or(0.0, |p| p.distance(&w.position));
        prev = Some(w.position);
        w.time = arc / speed;
    }
    if !(arc > 0.0) {
        return Err(Error::DegeneratePath);
    }
    out.validate()?;
    Ok(out)
}

/// Maps a camera-frame trajectory into the robot frame.
///
/// Only transforms that keep the camera x axis as the robot x axis are
/// accepted, since the orientation is a single angle about x. The pitch
/// gains the transform's rotation angle about x and is then reduced, as a
/// line angle, into (−π/2, π/2).
pub fn to_robot_frame(traj: &Trajectory, t: &RigidTransform) -> Result<Trajectory> {
    if traj.frame != Frame::Camera {
        return Err(Error::InvalidInput("trajectory is already in the robot frame".into()));
    }
    let r = t.rotation();
    let x_image = [r[(0, 0)] - 1.0, r[(1, 0)], r[(2, 0)]];
    if x_image.iter().any(|v| v.abs() > AXIS_TOL) {
        return Err(Error::UnsupportedTransform(format!(
            "rotation maps camera x to ({}, {}, {}), not robot x",
            r[(0, 0)],
            r[(1, 0)],
            r[(2, 0)]
        )));
    }
    // rotation angle about x; pitch is a line angle, so wrap by π
    let turn = r[(2, 1)].atan2(r[(1, 1)]);
    let mut waypoints = Vec::with_capacity(traj.waypoints.len());
    for (i, w) in traj.waypoints.iter().enumerate() {
        let mut pitch = w.pitch + turn;
        while pitch > FRAC_PI_2 {
            pitch -= PI;
        }
        while pitch < -FRAC_PI_2 {
            pitch += PI;
        }
        if !(pitch.abs() < FRAC_PI_2) {
            return Err(Error::UnsupportedTransform(format!(
                "waypoint {i} tangent becomes vertical in the robot frame"
            )));
        }
        waypoints.push(Waypoint {
            position: t.apply(&w.position)?,
            pitch,
            time: w.time,
        });
    }
    Ok(Trajectory {
        waypoints,
        frame: Frame::Robot,
        camera_to_robot: Some(*t),
        ..traj.clone()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::{Matrix3, Rotation3, Vector3};
    use std::f64::consts::FRAC_PI_4;

    fn back_curve(lo: f64, hi: f64) -> CubicCurve {
        CubicCurve::new(2.0, -1.0, 0.3, 0.45, lo, hi).unwrap()
    }

    fn flat(lo: f64, hi: f64) -> CubicCurve {
        CubicCurve::new(0.0, 0.0, 0.0, 0.5, lo, hi).unwrap()
    }

    #[test]
    fn waypoint_count_and_spacing() {
        let pts = generate_waypoints(&flat(0.0, 0.2), 0.0, 0.001).unwrap();
        assert_eq!(pts.len(), 201);
        assert_eq!(pts[200].y, 0.2);
        assert!(pts.iter().all(|p| p.z == 0.5));
        for w in pts.windows(2) {
            assert!((w[1].y - w[0].y - 0.001).abs() <= 1e-12);
        }
    }

    #[test]
    fn off_grid_end_is_appended() {
        let pts = generate_waypoints(&flat(0.0, 0.0105), 0.02, 0.001).unwrap();
        assert_eq!(pts.len(), 12);
        assert_eq!(pts[11].y, 0.0105);
        assert!((pts[10].y - 0.01).abs() < 1e-15);
        assert!(pts.iter().all(|p| p.x == 0.02));
    }

    #[test]
    fn waypoints_on_curve() {
        let curve = back_curve(-0.1, 0.1);
        for p in generate_waypoints(&curve, 0.0, 0.001).unwrap() {
            let y = p.y;
            let hand = 2.0 * y * y * y - y * y + 0.3 * y + 0.45;
            assert!((p.z - hand).abs() <= 1e-12);
        }
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(
            generate_waypoints(&flat(0.0, 0.0015), 0.0, 0.001),
            Err(Error::DomainTooShort { .. })
        ));
        assert!(generate_waypoints(&flat(0.0, 0.2), 0.0, 0.0).is_err());
        assert!(generate_waypoints(&flat(0.0, 0.2), 0.0, -0.001).is_err());
    }

    #[test]
    fn pitch_examples() {
        let flat_pts: Vec<Point3> = (0..5).map(|i| Point3::new(0.0, i as f64 * 0.01, 0.5)).collect();
        assert!(compute_pitch(&flat_pts).unwrap().iter().all(|&p| p == 0.0));

        let diag: Vec<Point3> = (0..5).map(|i| Point3::new(0.0, i as f64 * 0.01, 0.5 + i as f64 * 0.01)).collect();
        for p in compute_pitch(&diag).unwrap() {
            assert!((p - FRAC_PI_4).abs() < 1e-12);
        }

        let back = [Point3::new(0.0, 0.0, 0.5), Point3::new(0.0, -0.01, 0.5)];
        assert!(matches!(compute_pitch(&back), Err(Error::Ordering { index: 1 })));
        assert!(compute_pitch(&back[..1]).is_err());
    }

    #[test]
    fn first_pitch_copies_second() {
        let pts = generate_waypoints(&back_curve(0.0, 0.2), 0.0, 0.001).unwrap();
        let p = compute_pitch(&pts).unwrap();
        assert_eq!(p[0], p[1]);
    }

    #[test]
    fn pitch_tracks_analytic_slope() {
        // |z''| <= 1.4 on [0.05, 0.2] keeps the backward-difference error
        // h/2·|z''| under 0.05°
        let curve = back_curve(0.05, 0.2);
        let pts = generate_waypoints(&curve, 0.0, 0.001).unwrap();
        let p = compute_pitch(&pts).unwrap();
        for (pt, pitch) in pts.iter().zip(&p).skip(1) {
            let analytic = curve.slope(pt.y).atan();
            assert!((pitch - analytic).abs().to_degrees() <= 0.05);
        }
    }

    #[test]
    fn pitch_converges_with_step() {
        let curve = back_curve(0.0, 0.2);
        let max_dev = |step: f64| {
            let pts = generate_waypoints(&curve, 0.0, step).unwrap();
            let p = compute_pitch(&pts).unwrap();
            pts.iter()
                .zip(&p)
                .skip(1)
                .map(|(pt, pitch)| (pitch - curve.slope(pt.y).atan()).abs())
                .fold(0.0, f64::max)
        };
        let (d1, d2, d3) = (max_dev(0.004), max_dev(0.002), max_dev(0.001));
        assert!(d2 < 0.6 * d1 && d3 < 0.6 * d2, "{d1} {d2} {d3}");
    }

    #[test]
    fn straight_path_timing() {
        let curve = flat(0.0, 0.2);
        let medium = Trajectory::generate(&curve, 0.0, 0.001, SPEED_MEDIUM_MPS).unwrap();
        assert!((medium.duration() - 0.2 / 0.085).abs() < 1e-9);
        assert!((medium.duration() - 2.3529).abs() < 1e-4);
        let slow = timestamp(&medium, SPEED_SLOW_MPS).unwrap();
        assert!((slow.duration() - 0.2 / 0.028).abs() < 1e-9);
        assert!((slow.duration() - 7.1429).abs() < 1e-4);
        assert_eq!(slow.waypoints()[0].time, 0.0);
    }

    #[test]
    fn halving_speed_doubles_times() {
        let traj = Trajectory::generate(&back_curve(0.0, 0.2), 0.0, 0.001, 0.05).unwrap();
        let half = timestamp(&traj, 0.025).unwrap();
        for (a, b) in traj.waypoints().iter().zip(half.waypoints()) {
            assert_eq!(b.time, 2.0 * a.time);
        }
        assert!(timestamp(&traj, 0.0).is_err());
    }

    #[test]
    fn curved_path_length_matches_quadrature() {
        let curve = back_curve(0.0, 0.2);
        let traj = Trajectory::generate(&curve, 0.0, 0.001, SPEED_MEDIUM_MPS).unwrap();
        // composite Simpson on sqrt(1 + z'^2) at 0.01 mm
        let n = 20_000;
        let h = 0.2 / n as f64;
        let f = |y: f64| (1.0 + curve.slope(y).powi(2)).sqrt();
        let mut s = f(0.0) + f(0.2);
        for i in 1..n {
            s += f(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
        }
        let arc = s * h / 3.0;
        assert!((traj.path_length() - arc).abs() / arc < 1e-4);
        assert!((traj.duration() - traj.path_length() / SPEED_MEDIUM_MPS).abs() < 1e-12);
    }

    #[test]
    fn robot_frame_identity_and_translation() {
        let traj = Trajectory::generate(&back_curve(0.0, 0.2), 0.01, 0.001, 0.085).unwrap();
        let id = to_robot_frame(&traj, &RigidTransform::identity()).unwrap();
        assert_eq!(id.frame(), Frame::Robot);
        assert_eq!(id.waypoints(), traj.waypoints());

        let off = Point3::new(0.3, -0.1, 0.2);
        let moved = to_robot_frame(&traj, &RigidTransform::from_translation(off).unwrap()).unwrap();
        for (a, b) in traj.waypoints().iter().zip(moved.waypoints()) {
            assert!((b.position - a.position).distance(&off) < 1e-15);
            assert_eq!(a.pitch, b.pitch);
            assert_eq!(a.time, b.time);
        }
        assert!(to_robot_frame(&moved, &RigidTransform::identity()).is_err());
    }

    #[test]
    fn half_turn_about_x() {
        let traj = Trajectory::generate(&back_curve(0.0, 0.2), 0.0, 0.001, 0.085).unwrap();
        let t = RigidTransform::rotation_x(PI);
        let robot = to_robot_frame(&traj, &t).unwrap();
        let pts: Vec<Point3> = robot.waypoints().iter().map(|w| w.position).collect();
        for (i, (a, b)) in traj.waypoints().iter().zip(robot.waypoints()).enumerate() {
            assert!((b.position.y + a.position.y).abs() < 1e-15);
            assert!((b.position.z + a.position.z).abs() < 1e-15);
            assert!((b.pitch - a.pitch).abs() < 1e-12);
            if i > 0 {
                // re-derive from the transformed tangent vector
                let tan = pts[i] - pts[i - 1];
                let oracle = (tan.z / tan.y).atan();
                assert!((b.pitch - oracle).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn general_x_rotation_matches_tangent_oracle() {
        let traj = Trajectory::generate(&back_curve(0.0, 0.2), 0.0, 0.001, 0.085).unwrap();
        let t = RigidTransform::new(
            *Rotation3::from_axis_angle(&Vector3::x_axis(), 0.4).matrix(),
            Point3::new(0.2, 0.1, -0.3),
        )
        .unwrap();
        let robot = to_robot_frame(&traj, &t).unwrap();
        for i in 1..robot.len() {
            let tan = robot.waypoints()[i].position - robot.waypoints()[i - 1].position;
            assert!((robot.waypoints()[i].pitch - (tan.z / tan.y).atan()).abs() < 1e-9);
        }
        let d0 = traj.path_length();
        assert!((robot.path_length() - d0).abs() < 1e-12 * d0);
    }

    #[test]
    fn rejects_transform_moving_x_axis() {
        let traj = Trajectory::generate(&flat(0.0, 0.2), 0.0, 0.001, 0.085).unwrap();
        let rz = RigidTransform::rotation_z(0.1);
        assert!(matches!(to_robot_frame(&traj, &rz), Err(Error::UnsupportedTransform(_))));
        // tangent turned vertical
        let rx = RigidTransform::rotation_x(FRAC_PI_2);
        assert!(matches!(to_robot_frame(&traj, &rx), Err(Error::UnsupportedTransform(_))));
    }

    #[test]
    fn csv_round_trip_both_frames() {
        let traj = Trajectory::generate(&back_curve(-0.1, 0.1), 0.003, 0.001, 0.028).unwrap();
        assert_eq!(Trajectory::from_csv(&traj.to_csv()).unwrap(), traj);
        let t = RigidTransform::new(
            Matrix3::new(1.0, 0.0, 0.0, 0.0, 0.0, -1.0, 0.0, 1.0, 0.0),
            Point3::new(0.4, 0.0, 0.1),
        )
        .unwrap();
        let robot = to_robot_frame(&traj, &RigidTransform::rotation_x(0.3).compose(&t)).unwrap();
        let back = Trajectory::from_csv(&robot.to_csv()).unwrap();
        assert_eq!(back, robot);
    }

    #[test]
    fn csv_rejects_inconsistent_files() {
        let traj = Trajectory::generate(&flat(0.0, 0.01), 0.0, 0.001, 0.028).unwrap();
        let text = traj.to_csv();
        assert!(Trajectory::from_csv(&text.replace("# frame = camera", "# frame = robot")).is_err());
        assert!(Trajectory::from_csv(&text.replace(",camera,", ",robot,")).is_err());
        let mut lines: Vec<&str> = text.lines().collect();
        let n = lines.len();
        lines.swap(n - 1, n - 2);
        assert!(Trajectory::from_csv(&lines.join("\n")).is_err());
    }
}
