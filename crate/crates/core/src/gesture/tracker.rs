use serde::{Deserialize, Serialize};

use super::GestureError;
use crate::topology::{Contour, Point};

/// The topmost contour point, leftmost among equals.
pub fn track_fingertip(contour: &Contour) -> Result<Point, GestureError> {
    contour
        .points()
        .iter()
        .copied()
        .min_by_key(|p| (p.y, p.x))
        .ok_or(GestureError::EmptyContour)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TrackerConfig {
    /// Radius of the acceptable area around the anchor, in pixels.
    pub radius: f64,
    /// In-area observations needed for a click.
    pub dwell_frames: u32,
    /// Consecutive misses that reset the dwell.
    pub miss_limit: u32,
}

impl Default for TrackerConfig {
    fn default() -> Self {
        TrackerConfig { radius: 12.0, dwell_frames: 30, miss_limit: 2 }
    }
}

impl TrackerConfig {
    pub fn validate(&self) -> Result<(), String> {
        if !(self.radius >= 0.0 && self.radius.is_finite()) {
            return Err(format!("dwell radius {} must be a non-negative number", self.radius));
        }
        if self.dwell_frames == 0 {
            return Err("dwell_frames must be at least 1".into());
        }
        if self.miss_limit == 0 {
            return Err("miss_limit must be at least 1".into());
        }
        Ok(())
    }
}

/// Dwell-click state for one fingertip stream.
///
/// The fingertip must stay within `radius` of the anchor for `dwell_frames`
/// observations to click. Up to `miss_limit - 1` consecutive observations
/// outside the area (or with no fingertip at all) are tolerated; reaching
/// `miss_limit` drops the progress and re-anchors on the latest fingertip.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct TrackerState {
    pub center: Option<Point>,
    pub counter: u32,
    pub anti_counter: u32,
    pub config: TrackerConfig,
}

impl TrackerState {
    pub fn new(config: TrackerConfig) -> Self {
        TrackerState { center: None, counter: 0, anti_counter: 0, config }
    }

    fn in_area(&self, center: Point, p: Point) -> bool {
        let (dx, dy) = ((p.x - center.x) as f64, (p.y - center.y) as f64);
        dx * dx + dy * dy <= self.config.radius * self.config.radius
    }

    /// Advances by one observation, returning the click position if this
    /// observation completed a dwell.
    pub fn update(&mut self, fingertip: Option<Point>) -> Option<Point> {
        match (self.center, fingertip) {
            (None, Some(p)) => {
                self.center = Some(p);
                self.counter = 1;
                self.anti_counter = 0;
                self.check_click()
            }
            (Some(c), Some(p)) if self.in_area(c, p) => {
                self.anti_counter = 0;
                self.counter += 1;
                self.check_click()
            }
            _ => {
                self.anti_counter += 1;
                if self.anti_counter >= self.config.miss_limit {
                    self.counter = 0;
                    self.center = fingertip;
                    self.anti_counter = 0;
                }
                None
            }
        }
    }

    fn check_click(&mut self) -> Option<Point> {
        if self.counter >= self.config.dwell_frames {
            self.counter = 0;
            self.center
        } else {
            None
        }
    }

    /// Dwell progress in `[0, 1]`.
    pub fn progress(&self) -> f64 {
        (self.counter as f64 / self.config.dwell_frames.max(1) as f64).min(1.0)
    }
}

/// Pure form of [`TrackerState::update`].
pub fn dwell_click_update(state: &TrackerState, fingertip: Option<Point>) -> (TrackerState, Option<Point>) {
    let mut next = *state;
    let click = next.update(fingertip);
    (next, click)
}
