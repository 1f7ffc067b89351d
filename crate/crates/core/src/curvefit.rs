//! Least-squares cubic `z = a·y³ + b·y² + c·y + d` for back profiles.

use std::path::Path;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::kv::{KvRecord, KvWriter};
use crate::profile::BackProfile;

/// Relative size below which an R diagonal entry counts as zero.
const RANK_TOL: f64 = 1e-12;

/// A fitted cubic with its fit domain and RMS residual (meters).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubicCurve {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub rms_residual: f64,
}

impl CubicCurve {
    /// A curve with explicit coefficients and domain and no fit residual.
    pub fn new(a: f64, b: f64, c: f64, d: f64, y_min: f64, y_max: f64) -> Result<Self> {
        let curve = CubicCurve {
            a,
            b,
            c,
            d,
            y_min,
            y_max,
            rms_residual: 0.0,
        };
        curve.validate()?;
        Ok(curve)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.a, self.b, self.c, self.d, self.y_min, self.y_max, self.rms_residual]
            .iter()
            .all(|v| v.is_finite());
        if !finite {
            return Err(Error::InvalidInput("non-finite curve field".into()));
        }
        if self.y_min >= self.y_max {
            return Err(Error::InvalidInput(format!(
                "empty curve domain [{}, {}]",
                self.y_min, self.y_max
            )));
        }
        if self.rms_residual < 0.0 {
            return Err(Error::InvalidInput("negative rms residual".into()));
        }
        Ok(())
    }

    pub fn eval(&self, y: f64) -> f64 {
        eval_cubic(self, y)
    }

    pub fn slope(&self, y: f64) -> f64 {
        derivative(self, y)
    }

    pub fn contains(&self, y: f64) -> bool {
        let slack = 1e-12 * (self.y_max - self.y_min).abs().max(1.0);
        y >= self.y_min - slack && y <= self.y_max + slack
    }

    pub(crate) fn write_kv(&self, w: &mut KvWriter, prefix: &str) {
        w.entry(&format!("{prefix}a"), self.a)
            .entry(&format!("{prefix}b"), self.b)
            .entry(&format!("{prefix}c"), self.c)
            .entry(&format!("{prefix}d"), self.d)
            .entry(&format!("{prefix}y_min"), self.y_min)
            .entry(&format!("{prefix}y_max"), self.y_max)
            .entry(&format!("{prefix}rms_residual"), self.rms_residual);
    }

    pub(crate) fn read_kv(rec: &KvRecord, prefix: &str) -> Result<Self> {
        let get = |k: &str| rec.require::<f64>(&format!("{prefix}{k}"));
        let curve = CubicCurve {
            a: get("a")?,
            b: get("b")?,
            c: get("c")?,
            d: get("d")?,
            y_min: get("y_min")?,
            y_max: get("y_max")?,
            rms_residual: get("rms_residual")?,
        };
        curve.validate()?;
        Ok(curve)
    }

    /// Key-value record: `a`, `b`, `c`, `d`, `y_min`, `y_max`,
    /// `rms_residual`, plus the stroke column offset `x_fixed_m`.
    pub fn to_record(&self, x_fixed: f64) -> String {
        let mut w = KvWriter::new();
        w.comment("cubic z = a*y^3 + b*y^2 + c*y + d (meters, camera frame)");
        self.write_kv(&mut w, "");
        w.entry("x_fixed_m", x_fixed);
        w.finish()
    }

    /// Parses [`CubicCurve::to_record`] output; `x_fixed_m` defaults to 0.
    pub fn from_record(text: &str) -> Result<(Self, f64)> {
        let rec = KvRecord::parse(text, "curve record")?;
        let x_fixed = rec.get::<f64>("x_fixed_m")?.unwrap_or(0.0);
        Ok((Self::read_kv(&rec, "")?, x_fixed))
    }

    pub fn save(&self, x_fixed: f64, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_record(x_fixed)).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<(Self, f64)> {
        let path = path.as_ref();
        Self::from_record(&std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?)
    }
}

/// Horner evaluation of the cubic at `y`.
pub fn eval_cubic(curve: &CubicCurve, y: f64) -> f64 {
    ((curve.a * y + curve.b) * y + curve.c) * y + curve.d
}

/// `dz/dy = 3a·y² + 2b·y + c`.
pub fn derivative(curve: &CubicCurve, y: f64) -> f64 {
    (3.0 * curve.a * y + 2.0 * curve.b) * y + curve.c
}

pub fn fit_cubic(profile: &BackProfile) -> Result<CubicCurve> {
    fit_cubic_samples(profile.samples())
}

/// Least-squares cubic through `(y, z)` samples.
///
/// y is mapped affinely onto [-1, 1] before building the design matrix,
/// the system is solved by Householder QR, and the coefficients are
/// expanded back into the raw monomial basis.
pub fn fit_cubic_samples(samples: &[(f64, f64)]) -> Result<CubicCurve> {
    if samples.iter().any(|(y, z)| !y.is_finite() || !z.is_finite()) {
        return Err(Error::InvalidInput("non-finite sample".into()));
    }
    let (y_min, y_max) = samples
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &(y, _)| (lo.min(y), hi.max(y)));
    if samples.len() < 4 || y_min >= y_max {
        return Err(Error::SingularFit(format!(
            "{} samples over [{y_min}, {y_max}] cannot determine a cubic",
            samples.len()
        )));
    }

    let mid = 0.5 * (y_min + y_max);
    let half = 0.5 * (y_max - y_min);
    let n = samples.len();
    let design = DMatrix::from_fn(n, 4, |i, j| ((samples[i].0 - mid) / half).powi(j as i32));
    let rhs = DVector::from_iterator(n, samples.iter().map(|s| s.1));

    let qr = design.qr();
    let r = qr.r();
    let diag_max = r.diagonal().amax();
    if r.diagonal().iter().any(|v| v.abs() <= RANK_TOL * diag_max) {
        return Err(Error::SingularFit("rank-deficient design (fewer than 4 distinct y)".into()));
    }
    let qtb = qr.q().transpose() * rhs;
    let p = r
        .solve_upper_triangular(&qtb)
        .ok_or_else(|| Error::SingularFit("triangular solve failed".into()))?;

    // z = Σ p_k t^k with t = s·y + o
    let s = 1.0 / half;
    let o = -mid * s;
    let (p0, p1, p2, p3) = (p[0], p[1], p[2], p[3]);
    let a = p3 * s * s * s;
    let b = s * s * (p2 + 3.0 * p3 * o);
    let c = s * (p1 + o * (2.0 * p2 + 3.0 * p3 * o));
    let d = p0 + o * (p1 + o * (p2 + o * p3));

    let mut curve = CubicCurve {
        a,
        b,
        c,
        d,
        y_min,
        y_max,
        rms_residual: 0.0,
    };
    let ss: f64 = samples.iter().map(|&(y, z)| (z - curve.eval(y)).powi(2)).sum();
    curve.rms_residual = (ss / n as f64).sqrt();
    curve.validate()?;
    Ok(curve)
}
