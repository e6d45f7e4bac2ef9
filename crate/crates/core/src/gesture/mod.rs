//! Turning hand geometry into input: finger counts, hand orientation, a
//! fingertip pointer with dwell clicks, and a mapping from gestures to
//! command strings.

mod command;
mod count;
mod orientation;
mod tracker;

pub use command::{map_command, CommandMap};
pub use count::{count_fingers, large_defects, FingerCount};
pub use orientation::{hand_orientation, orientation_from_points, Orientation};
pub use tracker::{dwell_click_update, track_fingertip, TrackerConfig, TrackerState};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::topology::Point;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GestureError {
    #[error("{0} large defects is more than a hand can show")]
    InvalidDefectCount(usize),
    #[error("orientation needs at least one convexity defect")]
    NoDefects,
    #[error("deepest defect's farthest point coincides with its hull-edge midpoint")]
    IndeterminateOrientation,
    #[error("cannot track a fingertip on an empty contour")]
    EmptyContour,
}

/// What happened on one frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum GestureKind {
    FingerCount { value: FingerCount },
    Orientation { value: Orientation },
    PointerMoved { x: i32, y: i32 },
    Click { x: i32, y: i32 },
    HandLost,
}

impl GestureKind {
    pub fn pointer_moved(p: Point) -> Self {
        GestureKind::PointerMoved { x: p.x, y: p.y }
    }

    pub fn click(p: Point) -> Self {
        GestureKind::Click { x: p.x, y: p.y }
    }
}

/// A gesture tagged with the frame that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GestureEvent {
    pub frame: u64,
    pub kind: GestureKind,
}
