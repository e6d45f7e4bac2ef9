use serde::{Deserialize, Serialize};

use super::GestureError;
use crate::topology::{BoundingBox, ConvexityDefect};

/// Number of extended fingers. Zero and one both leave no gap between
/// fingers, so they cannot be told apart.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FingerCount {
    AmbiguousZeroOrOne,
    Two,
    Three,
    Four,
    Five,
}

impl FingerCount {
    pub const ALL: [FingerCount; 5] =
        [FingerCount::AmbiguousZeroOrOne, FingerCount::Two, FingerCount::Three, FingerCount::Four, FingerCount::Five];

    /// The count as a number; `None` for the ambiguous case.
    pub fn value(self) -> Option<u8> {
        match self {
            FingerCount::AmbiguousZeroOrOne => None,
            FingerCount::Two => Some(2),
            FingerCount::Three => Some(3),
            FingerCount::Four => Some(4),
            FingerCount::Five => Some(5),
        }
    }
}

/// Defects deep enough to be the gap between two fingers: depth at least
/// `k` times the contour's bounding-box height.
pub fn large_defects(defects: &[ConvexityDefect], bbox: &BoundingBox, k: f64) -> Vec<ConvexityDefect> {
    let min_depth = k * bbox.height() as f64;
    defects.iter().filter(|d| d.depth >= min_depth).copied().collect()
}

/// One more finger than there are gaps between fingers.
pub fn count_fingers(large: &[ConvexityDefect]) -> Result<FingerCount, GestureError> {
    Ok(match large.len() {
        0 => FingerCount::AmbiguousZeroOrOne,
        1 => FingerCount::Two,
        2 => FingerCount::Three,
        3 => FingerCount::Four,
        4 => FingerCount::Five,
        n => return Err(GestureError::InvalidDefectCount(n)),
    })
}
