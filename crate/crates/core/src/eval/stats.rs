use crate::error::{Error, Result};

/// Per-point normal mismatch angles (degrees) with their mean and maximum.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorStats {
    per_point: Vec<f64>,
    mean: f64,
    max: f64,
}

impl ErrorStats {
    pub fn from_per_point(per_point: Vec<f64>) -> Result<Self> {
        if per_point.is_empty() {
            return Err(Error::EmptyInput("no error samples".into()));
        }
        if let Some(bad) = per_point.iter().find(|v| !(0.0..=180.0).contains(*v)) {
            return Err(Error::InvalidInput(format!("angle {bad} outside [0, 180] degrees")));
        }
        let max = per_point.iter().copied().fold(0.0, f64::max);
        let mean = (per_point.iter().sum::<f64>() / per_point.len() as f64).min(max);
        Ok(ErrorStats {
            per_point,
            mean,
            max,
        })
    }

    pub fn per_point(&self) -> &[f64] {
        &self.per_point
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn max(&self) -> f64 {
        self.max
    }

    pub fn count(&self) -> usize {
        self.per_point.len()
    }

    /// Points where the two normals lie in opposite hemispheres (> 90°).
    pub fn hemisphere_mismatches(&self) -> usize {
        self.per_point.iter().filter(|&&v| v > 90.0).count()
    }
}

/// Statistics for repeated measurements of the same stroke: each
/// repetition on its own, all points pooled, and the averages of the
/// per-repetition means and maxima.
#[derive(Debug, Clone, PartialEq)]
pub struct RepetitionSummary {
    pub per_repetition: Vec<ErrorStats>,
    pub pooled: ErrorStats,
    pub mean_of_means: f64,
    pub mean_of_maxes: f64,
}

impl RepetitionSummary {
    pub fn new(per_repetition: Vec<ErrorStats>) -> Result<Self> {
        if per_repetition.is_empty() {
            return Err(Error::EmptyInput("no repetitions".into()));
        }
        let pooled = ErrorStats::from_per_point(
            per_repetition
                .iter()
                .flat_map(|s| s.per_point().iter().copied())
                .collect(),
        )?;
        let n = per_repetition.len() as f64;
        let mean_of_means = per_repetition.iter().map(ErrorStats::mean).sum::<f64>() / n;
        let mean_of_maxes = per_repetition.iter().map(ErrorStats::max).sum::<f64>() / n;
        Ok(RepetitionSummary {
            per_repetition,
            pooled,
            mean_of_means,
            mean_of_maxes,
        })
    }
}
