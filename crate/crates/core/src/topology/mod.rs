//! Blob extraction and hand geometry: connected components, outer contours,
//! convex hulls, convexity defects and the structural hand test.

mod components;
mod contour;
mod defects;
mod hand;
mod hull;

pub use components::{connected_components, label_components, Blob, Connectivity, Labeling};
pub use contour::{extract_contours, largest_contour, trace_outer_border, Contour};
pub use defects::{convexity_defects, point_segment_distance, ConvexityDefect};
pub use hand::{is_hand, HandCriteria, HandVerdict, DEFAULT_MIN_AREA_FRACTION};
pub use hull::{convex_hull, convex_hull_of_points, Hull};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TopologyError {
    #[error("convexity defects need at least 3 contour points, got {0}")]
    TooFewPoints(usize),
}

/// Integer pixel coordinate; `x` grows rightward, `y` downward from the
/// top-left corner.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    pub x: i32,
    pub y: i32,
}

impl Point {
    pub const fn new(x: i32, y: i32) -> Self {
        Point { x, y }
    }

    pub fn offset(self, dx: i32, dy: i32) -> Self {
        Point::new(self.x + dx, self.y + dy)
    }

    /// True for the 8 surrounding pixels (not for the point itself).
    pub fn is_8_neighbor(self, other: Point) -> bool {
        let (dx, dy) = ((self.x - other.x).abs(), (self.y - other.y).abs());
        dx <= 1 && dy <= 1 && (dx, dy) != (0, 0)
    }
}

/// `(b - a) x (c - a)`. Positive when `a -> b -> c` turns clockwise on
/// screen (y pointing down).
#[inline]
pub(crate) fn cross(a: Point, b: Point, c: Point) -> i64 {
    let (abx, aby) = (b.x as i64 - a.x as i64, b.y as i64 - a.y as i64);
    let (acx, acy) = (c.x as i64 - a.x as i64, c.y as i64 - a.y as i64);
    abx * acy - aby * acx
}

/// Inclusive pixel bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundingBox {
    pub min_x: i32,
    pub min_y: i32,
    pub max_x: i32,
    pub max_y: i32,
}

impl BoundingBox {
    pub fn of_point(p: Point) -> Self {
        BoundingBox { min_x: p.x, min_y: p.y, max_x: p.x, max_y: p.y }
    }

    pub fn include(&mut self, p: Point) {
        self.min_x = self.min_x.min(p.x);
        self.min_y = self.min_y.min(p.y);
        self.max_x = self.max_x.max(p.x);
        self.max_y = self.max_y.max(p.y);
    }

    /// Width in pixels.
    pub fn width(&self) -> u32 {
        (self.max_x - self.min_x + 1) as u32
    }

    /// Height in pixels.
    pub fn height(&self) -> u32 {
        (self.max_y - self.min_y + 1) as u32
    }

    pub fn diagonal(&self) -> f64 {
        (self.width() as f64).hypot(self.height() as f64)
    }
}
