//! Normal-mismatch evaluation.
//!
//! At each point the error is the angle between the surface normal `B` and
//! the end-effector normal `E`, `acos(B·E / |B||E|)`, in degrees. Both
//! normals face the camera (positive z in the camera frame); a pair in
//! opposite hemispheres shows up as an angle above 90° and is counted, not
//! flipped.

mod report;
mod stats;
mod trace;

pub use report::{published, Report};
pub use stats::{ErrorStats, RepetitionSummary};
pub use trace::{marker_trace, NormalTrace, TraceEntry, MARKER_OFFSETS_M};

use std::f64::consts::FRAC_PI_2;

use crate::curvefit::{derivative, CubicCurve};
use crate::depthcam::{project, SyntheticScene};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::geometry::{angle_between, Point3, UnitVec3};
use crate::trajgen::{Frame, Trajectory};

/// Camera-facing normal of the profile curve in the y–z plane,
/// `normalize(0, −z′(y), 1)`.
pub fn surface_normal(curve: &CubicCurve, y: f64) -> UnitVec3 {
    UnitVec3::new(0.0, -derivative(curve, y), 1.0).expect("finite slope")
}

/// Normal of an end-effector plane pitched by `pitch` radians about x,
/// `(0, −sin θ, cos θ)`.
pub fn effector_normal(pitch: f64) -> Result<UnitVec3> {
    if !(pitch.abs() < FRAC_PI_2) {
        return Err(Error::InvalidInput(format!("pitch {pitch} outside (-pi/2, pi/2)")));
    }
    let (s, c) = pitch.sin_cos();
    UnitVec3::new(0.0, -s, c)
}

/// The surface a trajectory is scored against, in the camera frame.
#[derive(Debug, Clone, Copy)]
pub enum Reference<'a> {
    Curve(&'a CubicCurve),
    /// Uses the analytic heightfield normal, lateral curvature included.
    Scene(&'a SyntheticScene),
}

impl Reference<'_> {
    fn normal_at(&self, index: usize, p: &Point3) -> Result<UnitVec3> {
        match self {
            Reference::Curve(c) => {
                if !c.contains(p.y) {
                    return Err(Error::Coverage { index, y: p.y });
                }
                Ok(surface_normal(c, p.y))
            }
            Reference::Scene(s) => {
                let k = &s.intrinsics;
                let on_surface = Point3::new(p.x, p.y, s.surface.depth(p.x, p.y));
                let inside = project(&on_surface, k).is_ok_and(|(u, v, _)| {
                    u >= 0.0 && v >= 0.0 && u <= (k.width - 1) as f64 && v <= (k.height - 1) as f64
                });
                if !inside {
                    return Err(Error::Coverage { index, y: p.y });
                }
                Ok(s.surface.normal(p.x, p.y))
            }
        }
    }
}

/// Pairs every waypoint's reference normal with its effector normal, both
/// expressed in the trajectory's frame.
///
/// For a robot-frame trajectory the reference normal is rotated into the
/// robot frame, and the effector normal built from the robot-frame pitch is
/// oriented toward the camera's optical axis as seen from the robot.
pub fn normal_trace(traj: &Trajectory, reference: Reference<'_>) -> Result<NormalTrace> {
    normal_trace_with(traj, reference, Execution::default())
}

pub fn normal_trace_with(traj: &Trajectory, reference: Reference<'_>, exec: Execution) -> Result<NormalTrace> {
    let cam = traj.camera_positions()?;
    let rotation = match traj.frame() {
        Frame::Camera => None,
        Frame::Robot => traj.camera_to_robot().copied(),
    };
    let facing = rotation.map(|t| t.rotate(&UnitVec3::Z));
    let indexed: Vec<(usize, Point3)> = cam.into_iter().enumerate().collect();
    let entries = exec.try_map(&indexed, |&(i, p)| {
        let mut b = reference.normal_at(i, &p)?;
        let mut e = effector_normal(traj.waypoints()[i].pitch)?;
        if let (Some(t), Some(f)) = (rotation.as_ref(), facing.as_ref()) {
            b = t.rotate(&b);
            if e.dot(f) < 0.0 {
                e = -e;
            }
        }
        Ok(TraceEntry {
            y: p.y,
            surface: b,
            effector: e,
        })
    })?;
    NormalTrace::new(entries)
}

/// Mismatch angle at every waypoint against `reference`.
pub fn evaluate_trajectory(traj: &Trajectory, reference: Reference<'_>) -> Result<ErrorStats> {
    evaluate_trajectory_with(traj, reference, Execution::default())
}

pub fn evaluate_trajectory_with(traj: &Trajectory, reference: Reference<'_>, exec: Execution) -> Result<ErrorStats> {
    trace_stats(&normal_trace_with(traj, reference, exec)?)
}

/// Evaluates many trajectories against one reference.
pub fn evaluate_batch(trajs: &[Trajectory], reference: Reference<'_>, exec: Execution) -> Result<Vec<ErrorStats>> {
    // parallelize across trajectories, not inside them
    exec.try_map(trajs, |t| evaluate_trajectory_with(t, reference, Execution::Sequential))
}

pub fn trace_stats(trace: &NormalTrace) -> Result<ErrorStats> {
    if trace.is_empty() {
        return Err(Error::EmptyInput("normal trace has no entries".into()));
    }
    ErrorStats::from_per_point(
        trace
            .entries()
            .iter()
            .map(|e| angle_between(&e.surface, &e.effector))
            .collect(),
    )
}

/// Scores two recorded traces independently (e.g. robot and human) with the
/// same metric. No alignment between the traces is attempted.
pub fn compare_traces(a: &NormalTrace, b: &NormalTrace) -> Result<(ErrorStats, ErrorStats)> {
    Ok((trace_stats(a)?, trace_stats(b)?))
}

/// Scores repeated recordings of one stroke.
pub fn summarize_traces(traces: &[NormalTrace]) -> Result<RepetitionSummary> {
    RepetitionSummary::new(traces.iter().map(trace_stats).collect::<Result<_>>()?)
}
