//! Synthetic hand silhouettes with known finger count and orientation.
//!
//! A hand is a palm disc with `k` finger capsules fanning out from its
//! center. The geometry is laid out pointing up and then rotated by a
//! multiple of 90 degrees, so every orientation rasterizes exactly.

use crate::frame::{BinaryMask, Frame, Rgb};
use crate::gesture::{FingerCount, Orientation};

pub const SKIN: Rgb = [214, 168, 138];
pub const BACKDROP: Rgb = [24, 22, 30];

#[derive(Debug, Clone, PartialEq)]
pub struct HandSpec {
    pub fingers: u8,
    pub orientation: Orientation,
    pub width: u32,
    pub height: u32,
    /// Multiplies every length below.
    pub scale: f64,
    pub palm_radius: f64,
    pub finger_width: f64,
    /// Reach of the longest finger beyond the palm edge.
    pub finger_length: f64,
    /// Angle between neighboring fingers, in degrees.
    pub spread_deg: f64,
    /// Shift of the hand from the frame center, in pixels.
    pub offset: (f64, f64),
    pub hand_color: Rgb,
    pub background: Rgb,
}

impl HandSpec {
    /// A hand on a 320x240 frame.
    pub fn new(fingers: u8, orientation: Orientation) -> Self {
        assert!(fingers <= 5, "a hand has at most five fingers");
        HandSpec {
            fingers,
            orientation,
            width: 320,
            height: 240,
            scale: 1.0,
            palm_radius: 44.0,
            finger_width: 18.0,
            finger_length: 40.0,
            spread_deg: 28.0,
            offset: (0.0, 0.0),
            hand_color: SKIN,
            background: BACKDROP,
        }
    }

    /// Same hand scaled to fit a frame of the given size.
    pub fn sized(mut self, width: u32, height: u32) -> Self {
        self.scale *= width.min(height * 4 / 3) as f64 / 320.0;
        self.width = width;
        self.height = height;
        self
    }

    pub fn offset(mut self, dx: f64, dy: f64) -> Self {
        self.offset = (dx, dy);
        self
    }

    /// The count a correct detector reports for this hand.
    pub fn expected_count(&self) -> FingerCount {
        match self.fingers {
            0 | 1 => FingerCount::AmbiguousZeroOrOne,
            2 => FingerCount::Two,
            3 => FingerCount::Three,
            4 => FingerCount::Four,
            _ => FingerCount::Five,
        }
    }

    /// Finger segments in the upright local frame, origin at the palm center,
    /// y pointing down: `(tip_x, tip_y)` of each capsule's axis end.
    fn finger_tips(&self) -> Vec<(f64, f64)> {
        let k = self.fingers as f64;
        let s = self.scale;
        (0..self.fingers)
            .map(|i| {
                let rank = i as f64 - (k - 1.0) / 2.0;
                let angle = (rank * self.spread_deg).to_radians();
                let reach = self.finger_length * (1.0 - 0.1 * rank.abs());
                let axis_len = (self.palm_radius + reach - self.finger_width / 2.0) * s;
                (axis_len * angle.sin(), -axis_len * angle.cos())
            })
            .collect()
    }

    fn contains_local(&self, tips: &[(f64, f64)], x: f64, y: f64) -> bool {
        let r = self.palm_radius * self.scale;
        if x * x + y * y <= r * r {
            return true;
        }
        let half = self.finger_width * self.scale / 2.0;
        tips.iter().any(|&(tx, ty)| {
            let len2 = tx * tx + ty * ty;
            let t = ((x * tx + y * ty) / len2).clamp(0.0, 1.0);
            let (dx, dy) = (x - t * tx, y - t * ty);
            dx * dx + dy * dy <= half * half
        })
    }

    /// Palm center in frame coordinates. The hand's extent along the finger
    /// axis is centered in the frame, so a fist sits right in the middle.
    fn center(&self) -> (f64, f64) {
        let reach = if self.fingers == 0 { 0.0 } else { self.finger_length };
        let shift = reach * self.scale / 2.0;
        let (ux, uy) = direction(self.orientation);
        (
            self.width as f64 / 2.0 - ux * shift + self.offset.0,
            self.height as f64 / 2.0 - uy * shift + self.offset.1,
        )
    }

    pub fn render_mask(&self) -> BinaryMask {
        let tips = self.finger_tips();
        let (cx, cy) = self.center();
        BinaryMask::from_fn(self.width, self.height, |x, y| {
            let (wx, wy) = (x as f64 - cx, y as f64 - cy);
            let (lx, ly) = to_local(self.orientation, wx, wy);
            self.contains_local(&tips, lx, ly)
        })
        .expect("spec has non-zero size")
    }

    pub fn render(&self) -> Frame {
        let mask = self.render_mask();
        Frame::from_fn(self.width, self.height, |x, y| {
            if mask.get(x, y) {
                self.hand_color
            } else {
                self.background
            }
        })
        .expect("spec has non-zero size")
    }
}

/// Unit vector the fingers point along.
fn direction(o: Orientation) -> (f64, f64) {
    match o {
        Orientation::Up => (0.0, -1.0),
        Orientation::Down => (0.0, 1.0),
        Orientation::Left => (-1.0, 0.0),
        Orientation::Right => (1.0, 0.0),
    }
}

/// Inverse of the rotation taking the upright layout to `o`.
fn to_local(o: Orientation, wx: f64, wy: f64) -> (f64, f64) {
    match o {
        Orientation::Up => (wx, wy),
        Orientation::Down => (-wx, -wy),
        Orientation::Right => (wy, -wx),
        Orientation::Left => (-wy, wx),
    }
}

/// A filled disc, e.g. for calibration or as a non-hand distractor.
pub fn render_disc(width: u32, height: u32, center: (f64, f64), radius: f64, fg: Rgb, bg: Rgb) -> Frame {
    Frame::from_fn(width, height, |x, y| {
        let (dx, dy) = (x as f64 - center.0, y as f64 - center.1);
        if dx * dx + dy * dy <= radius * radius {
            fg
        } else {
            bg
        }
    })
    .expect("non-zero size")
}

/// A named fixture with its ground truth.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: String,
    pub spec: HandSpec,
}

/// Zero to five fingers in each of the four orientations. The hands with two
/// to five fingers are the ones a count can tell apart.
pub fn fixture_set() -> Vec<Fixture> {
    let mut out = Vec::new();
    for fingers in 0..=5u8 {
        for orientation in Orientation::ALL {
            let name = format!("hand_{fingers}_{}", orientation_name(orientation));
            out.push(Fixture { name, spec: HandSpec::new(fingers, orientation) });
        }
    }
    out
}

pub fn orientation_name(o: Orientation) -> &'static str {
    match o {
        Orientation::Up => "up",
        Orientation::Down => "down",
        Orientation::Left => "left",
        Orientation::Right => "right",
    }
}
