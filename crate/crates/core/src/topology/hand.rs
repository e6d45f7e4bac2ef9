use serde::{Deserialize, Serialize};

use super::{Contour, ConvexityDefect};
use crate::gesture::large_defects;

/// Fraction of the frame area below which a blob counts as noise when no
/// explicit pixel floor is configured.
pub const DEFAULT_MIN_AREA_FRACTION: f64 = 0.002;

/// Thresholds for the structural hand test.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct HandCriteria {
    /// Minimum contour area in pixels; `None` means 0.2% of the frame.
    pub min_area: Option<f64>,
    pub max_area_fraction: f64,
    pub large_defect_k: f64,
    pub min_large_defects: usize,
    pub max_large_defects: usize,
    /// Cap on a large defect's depth relative to the contour box diagonal.
    pub max_depth_diagonal_ratio: f64,
}

impl Default for HandCriteria {
    fn default() -> Self {
        HandCriteria {
            min_area: None,
            max_area_fraction: 0.6,
            large_defect_k: 0.2,
            min_large_defects: 1,
            max_large_defects: 4,
            max_depth_diagonal_ratio: 0.9,
        }
    }
}

impl HandCriteria {
    pub fn min_area_for(&self, frame_area: f64) -> f64 {
        self.min_area.unwrap_or(DEFAULT_MIN_AREA_FRACTION * frame_area)
    }
}

/// Outcome of [`is_hand`], one flag per criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HandVerdict {
    pub area_ok: bool,
    pub defect_count_ok: bool,
    pub depth_ok: bool,
    pub large_defects: usize,
}

impl HandVerdict {
    pub fn is_hand(&self) -> bool {
        self.area_ok && self.defect_count_ok && self.depth_ok
    }

    /// Fraction of the three criteria met.
    pub fn score(&self) -> f64 {
        [self.area_ok, self.defect_count_ok, self.depth_ok].iter().filter(|&&ok| ok).count() as f64 / 3.0
    }
}

/// Checks that a contour is plausibly a hand: its area lies within the
/// configured band, it has a hand-like number of large defects, and none of
/// those is implausibly deep for the contour's size.
pub fn is_hand(
    contour: &Contour,
    defects: &[ConvexityDefect],
    frame_dims: (u32, u32),
    criteria: &HandCriteria,
) -> HandVerdict {
    let frame_area = frame_dims.0 as f64 * frame_dims.1 as f64;
    let area = contour.area();
    let area_ok = area >= criteria.min_area_for(frame_area) && area <= criteria.max_area_fraction * frame_area;

    let bbox = contour.bbox();
    let large = large_defects(defects, &bbox, criteria.large_defect_k);
    let defect_count_ok = (criteria.min_large_defects..=criteria.max_large_defects).contains(&large.len());
    let cap = criteria.max_depth_diagonal_ratio * bbox.diagonal();
    let depth_ok = large.iter().all(|d| d.depth <= cap);

    HandVerdict { area_ok, defect_count_ok, depth_ok, large_defects: large.len() }
}
