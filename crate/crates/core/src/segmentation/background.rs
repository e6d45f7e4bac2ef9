use super::{SegmentationConfig, SegmentationError};
use crate::frame::{BinaryMask, GrayFrame};

/// `1` where `|frame - background| > bg_diff_threshold`.
pub fn background_subtract(
    gray: &GrayFrame,
    background: &GrayFrame,
    cfg: &SegmentationConfig,
) -> Result<BinaryMask, SegmentationError> {
    if !gray.same_dims(background) {
        return Err(SegmentationError::DimensionMismatch {
            frame: (gray.width(), gray.height()),
            background: (background.width(), background.height()),
        });
    }
    let pixels = gray
        .pixels()
        .iter()
        .zip(background.pixels())
        .map(|(&f, &b)| f.abs_diff(b) > cfg.bg_diff_threshold)
        .collect();
    Ok(BinaryMask::from_raw(gray.width(), gray.height(), pixels))
}
