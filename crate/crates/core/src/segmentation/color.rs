use serde::{Deserialize, Serialize};

use super::{SegmentationConfig, SegmentationError};
use crate::frame::{BinaryMask, Frame, Rgb};

/// Inclusive axis-aligned box in RGB space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorRange {
    pub min: Rgb,
    pub max: Rgb,
}

impl ColorRange {
    pub fn new(min: Rgb, max: Rgb) -> Result<Self, SegmentationError> {
        let range = ColorRange { min, max };
        range.validate()?;
        Ok(range)
    }

    pub fn validate(&self) -> Result<(), SegmentationError> {
        match (0..3).find(|&c| self.min[c] > self.max[c]) {
            Some(channel) => Err(SegmentationError::InvalidRange { channel }),
            None => Ok(()),
        }
    }

    #[inline]
    pub fn contains(&self, p: Rgb) -> bool {
        (0..3).all(|c| self.min[c] <= p[c] && p[c] <= self.max[c])
    }

    fn widen(&mut self, p: Rgb) {
        for c in 0..3 {
            self.min[c] = self.min[c].min(p[c]);
            self.max[c] = self.max[c].max(p[c]);
        }
    }
}

/// Pixels of the central calibration disc: centered on the frame center,
/// radius `radius_fraction * min(width, height)`.
pub fn calibration_disc(width: u32, height: u32, radius_fraction: f64) -> impl Iterator<Item = (u32, u32)> {
    let cx = (width as f64 - 1.0) / 2.0;
    let cy = (height as f64 - 1.0) / 2.0;
    let r = radius_fraction * width.min(height) as f64;
    let r2 = r * r;
    let y_lo = (cy - r).ceil().max(0.0) as u32;
    let y_hi = ((cy + r).floor() as i64).min(height as i64 - 1);
    (y_lo as i64..=y_hi).flat_map(move |y| {
        let dy = y as f64 - cy;
        (0..width).filter_map(move |x| {
            let dx = x as f64 - cx;
            (dx * dx + dy * dy <= r2).then_some((x, y as u32))
        })
    })
}

/// Learns a hand color range from setup frames: the componentwise minimum
/// and maximum over every pixel inside each frame's calibration disc.
pub fn calibrate_color_range(frames: &[Frame], cfg: &SegmentationConfig) -> Result<ColorRange, SegmentationError> {
    if !(cfg.calib_radius_fraction > 0.0) {
        return Err(SegmentationError::InvalidConfig("calib_radius_fraction must be positive".into()));
    }
    let mut range: Option<ColorRange> = None;
    for frame in frames {
        for (x, y) in calibration_disc(frame.width(), frame.height(), cfg.calib_radius_fraction) {
            let p = frame.get(x, y);
            match &mut range {
                Some(r) => r.widen(p),
                None => range = Some(ColorRange { min: p, max: p }),
            }
        }
    }
    range.ok_or(SegmentationError::EmptyCalibration)
}

/// `1` where every channel lies within the range, inclusive.
pub fn threshold_color_range(frame: &Frame, range: &ColorRange) -> Result<BinaryMask, SegmentationError> {
    range.validate()?;
    let pixels = frame.pixels().iter().map(|&p| range.contains(p)).collect();
    Ok(BinaryMask::from_raw(frame.width(), frame.height(), pixels))
}
