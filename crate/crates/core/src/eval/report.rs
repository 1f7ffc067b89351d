//! Line-oriented `key = value` evaluation report.
//!
//! Keys, in emission order:
//!
//! | key | meaning |
//! |-----|---------|
//! | `count` | number of evaluated points |
//! | `mean_deg`, `max_deg` | mean and maximum mismatch angle |
//! | `hemisphere_mismatches` | points above 90° |
//! | `per_point_deg` | comma-separated per-point angles |
//! | `repetitions` | number of repetitions (0 for a single run) |
//! | `rep.<i>.count`, `rep.<i>.mean_deg`, `rep.<i>.max_deg`, `rep.<i>.per_point_deg` | per repetition |
//! | `mean_of_means_deg`, `mean_of_maxes_deg` | averages over repetitions |
//! | `context.<name>` | generation parameters, free-form |
//! | `reference.<name>_deg` | published robot / human results for comparison |
//!
//! With repetitions present the top-level statistics pool all points.

use std::path::Path;

use crate::error::{Error, Result};
use crate::kv::{KvRecord, KvWriter};

use super::{ErrorStats, RepetitionSummary};

/// Published normal-mismatch results measured on a physical mannequin with
/// motion capture. Displayed next to computed values; never recomputed.
pub mod published {
    pub const ROBOT_MEAN_DEG: f64 = 5.97;
    pub const ROBOT_MAX_DEG: f64 = 8.26;
    pub const HUMAN1_MEAN_DEG: f64 = 4.78;
    pub const HUMAN1_MAX_DEG: f64 = 7.30;
    pub const HUMAN2_MEAN_DEG: f64 = 5.52;
    pub const HUMAN2_MAX_DEG: f64 = 8.13;

    pub const ALL: [(&str, f64); 6] = [
        ("robot_mean_deg", ROBOT_MEAN_DEG),
        ("robot_max_deg", ROBOT_MAX_DEG),
        ("human1_mean_deg", HUMAN1_MEAN_DEG),
        ("human1_max_deg", HUMAN1_MAX_DEG),
        ("human2_mean_deg", HUMAN2_MEAN_DEG),
        ("human2_max_deg", HUMAN2_MAX_DEG),
    ];
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub stats: ErrorStats,
    pub repetitions: Vec<ErrorStats>,
    pub context: Vec<(String, String)>,
}

impl Report {
    pub fn new(stats: ErrorStats) -> Self {
        Report {
            stats,
            repetitions: Vec::new(),
            context: Vec::new(),
        }
    }

    pub fn from_repetitions(summary: RepetitionSummary) -> Self {
        Report {
            stats: summary.pooled,
            repetitions: summary.per_repetition,
            context: Vec::new(),
        }
    }

    pub fn with_context(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        let value = value.to_string().replace(['\n', '\r'], " ");
        self.context.push((key.into(), value.trim().to_string()));
        self
    }

    pub fn summary(&self) -> Option<RepetitionSummary> {
        (!self.repetitions.is_empty())
            .then(|| RepetitionSummary::new(self.repetitions.clone()).expect("non-empty"))
    }

    pub fn to_text(&self) -> String {
        let mut w = KvWriter::new();
        w.comment("stroke evaluation report (angles in degrees)");
        write_stats(&mut w, "", &self.stats);
        w.entry("hemisphere_mismatches", self.stats.hemisphere_mismatches());
        w.entry("repetitions", self.repetitions.len());
        for (i, rep) in self.repetitions.iter().enumerate() {
            write_stats(&mut w, &format!("rep.{i}."), rep);
        }
        if let Some(s) = self.summary() {
            w.entry("mean_of_means_deg", s.mean_of_means);
            w.entry("mean_of_maxes_deg", s.mean_of_maxes);
        }
        for (k, v) in &self.context {
            w.entry(&format!("context.{k}"), v);
        }
        w.comment("published reference values (physical mannequin, motion capture)");
        for (k, v) in published::ALL {
            w.entry(&format!("reference.{k}"), format!("{v:.2}"));
        }
        w.finish()
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let rec = KvRecord::parse(text, "report")?;
        let stats = read_stats(&rec, "")?;
        let n: usize = rec.require("repetitions")?;
        let repetitions = (0..n)
            .map(|i| read_stats(&rec, &format!("rep.{i}.")))
            .collect::<Result<Vec<_>>>()?;
        let context = rec
            .keys()
            .filter_map(|k| k.strip_prefix("context."))
            .map(|k| {
                let v = rec.require_str(&format!("context.{k}"))?;
                Ok((k.to_string(), v.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Report {
            stats,
            repetitions,
            context,
        })
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_text()).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        Self::from_text(&std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?)
    }
}

fn write_stats(w: &mut KvWriter, prefix: &str, s: &ErrorStats) {
    w.entry(&format!("{prefix}count"), s.count())
        .entry(&format!("{prefix}mean_deg"), s.mean())
        .entry(&format!("{prefix}max_deg"), s.max())
        .list(&format!("{prefix}per_point_deg"), s.per_point());
}

fn read_stats(rec: &KvRecord, prefix: &str) -> Result<ErrorStats> {
    let stats = ErrorStats::from_per_point(rec.list(&format!("{prefix}per_point_deg"))?)?;
    let count: usize = rec.require(&format!("{prefix}count"))?;
    let mean: f64 = rec.require(&format!("{prefix}mean_deg"))?;
    let max: f64 = rec.require(&format!("{prefix}max_deg"))?;
    if count != stats.count() || mean != stats.mean() || max != stats.max() {
        return Err(Error::format(
            "report",
            format!("{prefix}count/mean/max disagree with per-point values"),
        ));
    }
    Ok(stats)
}
