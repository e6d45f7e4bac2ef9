use serde::{Deserialize, Serialize};

use super::{SegmentationConfig, SegmentationError};
use crate::frame::{BinaryMask, GrayFrame};
use crate::topology::{connected_components, Connectivity};

/// A gray-level cutoff. Pixels strictly brighter than it are foreground.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ThresholdValue(pub u8);

impl From<u8> for ThresholdValue {
    fn from(t: u8) -> Self {
        ThresholdValue(t)
    }
}

/// `1` where intensity `> t`, else `0`.
pub fn threshold_binary(gray: &GrayFrame, t: ThresholdValue) -> BinaryMask {
    let pixels = gray.pixels().iter().map(|&v| v > t.0).collect();
    BinaryMask::from_raw(gray.width(), gray.height(), pixels)
}

/// Searches `incr_lo..=incr_hi` (by `incr_step`) for the lowest threshold
/// that leaves exactly one non-noise blob, and that blob is no larger than
/// `max_blob_area_fraction` of the frame.
///
/// Blobs under the noise floor are ignored. A blob over the size cap still
/// counts, so a threshold below the background level (one frame-sized
/// blob) is rejected rather than accepted as "one blob".
pub fn incremental_threshold(
    gray: &GrayFrame,
    cfg: &SegmentationConfig,
) -> Result<(ThresholdValue, BinaryMask), SegmentationError> {
    if cfg.incr_lo > cfg.incr_hi || cfg.incr_step == 0 {
        return Err(SegmentationError::InvalidConfig("empty incremental threshold range".into()));
    }
    let frame_area = gray.pixels().len();
    let min_area = cfg.min_blob_area_for(frame_area);
    let max_area = cfg.max_blob_area_for(frame_area);

    for t in (cfg.incr_lo..=cfg.incr_hi).step_by(cfg.incr_step as usize) {
        let mask = threshold_binary(gray, ThresholdValue(t));
        // foreground only shrinks as t grows
        if mask.count_foreground() < min_area.max(1) {
            break;
        }
        if has_single_hand_blob(&mask, min_area, max_area) {
            return Ok((ThresholdValue(t), mask));
        }
    }
    Err(SegmentationError::NoHandCandidate)
}

pub(crate) fn has_single_hand_blob(mask: &BinaryMask, min_area: usize, max_area: f64) -> bool {
    let mut significant = connected_components(mask, Connectivity::Eight)
        .into_iter()
        .filter(|b| b.area >= min_area);
    match (significant.next(), significant.next()) {
        (Some(blob), None) => blob.area as f64 <= max_area,
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn disc_image(centers: &[(f64, f64)], radius: f64) -> GrayFrame {
        GrayFrame::from_fn(160, 120, |x, y| {
            let inside = centers.iter().any(|&(cx, cy)| {
                let (dx, dy) = (x as f64 - cx, y as f64 - cy);
                dx * dx + dy * dy <= radius * radius
            });
            if inside { 180 } else { 30 }
        })
        .unwrap()
    }

    /// Replays the search by hand: the first t whose mask is exactly the
    /// disc is the answer.
    fn simulate(gray: &GrayFrame, cfg: &SegmentationConfig) -> Option<u8> {
        let area = gray.pixels().len();
        (cfg.incr_lo..=cfg.incr_hi).find(|&t| {
            let fg: Vec<bool> = gray.pixels().iter().map(|&v| v > t).collect();
            let n = fg.iter().filter(|&&b| b).count();
            // background 30 and disc 180 are the only levels present
            n > 0 && (n as f64) <= cfg.max_blob_area_fraction * area as f64
        })
    }

    #[test]
    fn strict_greater_tie_rule() {
        let gray = GrayFrame::filled(3, 3, 200).unwrap();
        assert!(threshold_binary(&gray, ThresholdValue(70)).pixels().iter().all(|&p| p));
        let gray = GrayFrame::filled(1, 1, 70).unwrap();
        assert!(!threshold_binary(&gray, ThresholdValue(70)).get(0, 0));
    }

    #[test]
    fn disc_on_background_selects_thirty() {
        let gray = disc_image(&[(80.0, 60.0)], 25.0);
        let cfg = SegmentationConfig::default();
        assert_eq!(simulate(&gray, &cfg), Some(30));
        let (t, mask) = incremental_threshold(&gray, &cfg).unwrap();
        assert_eq!(t, ThresholdValue(30));
        assert_eq!(connected_components(&mask, Connectivity::Eight).len(), 1);
    }

    #[test]
    fn dark_frame_has_no_candidate() {
        let gray = GrayFrame::filled(50, 50, 10).unwrap();
        assert_eq!(incremental_threshold(&gray, &SegmentationConfig::default()), Err(SegmentationError::NoHandCandidate));
    }

    #[test]
    fn two_discs_never_qualify() {
        let gray = disc_image(&[(40.0, 60.0), (120.0, 60.0)], 20.0);
        assert_eq!(incremental_threshold(&gray, &SegmentationConfig::default()), Err(SegmentationError::NoHandCandidate));
    }

    #[test]
    fn noise_specks_are_ignored() {
        let mut gray = disc_image(&[(80.0, 60.0)], 25.0);
        let mut px = gray.pixels().to_vec();
        px[5 * 160 + 5] = 250;
        px[100 * 160 + 150] = 250;
        gray = GrayFrame::new(160, 120, px).unwrap();
        let (t, _) = incremental_threshold(&gray, &SegmentationConfig::default()).unwrap();
        assert_eq!(t, ThresholdValue(30));
    }

    proptest! {
        #[test]
        fn higher_threshold_is_a_subset(px in prop::collection::vec(any::<u8>(), 20 * 15), t1 in any::<u8>(), t2 in any::<u8>()) {
            let gray = GrayFrame::new(20, 15, px).unwrap();
            let (lo, hi) = (t1.min(t2), t1.max(t2));
            let a = threshold_binary(&gray, ThresholdValue(hi));
            let b = threshold_binary(&gray, ThresholdValue(lo));
            prop_assert!(a.is_subset_of(&b));
        }

        #[test]
        fn incremental_result_has_one_qualifying_blob(
            px in prop::collection::vec(0u8..200, 24 * 18),
            lo in 0u8..100, span in 0u8..100,
        ) {
            let gray = GrayFrame::new(24, 18, px).unwrap();
            let cfg = SegmentationConfig { incr_lo: lo, incr_hi: lo.saturating_add(span), min_blob_area: Some(3), ..Default::default() };
            if let Ok((t, mask)) = incremental_threshold(&gray, &cfg) {
                prop_assert_eq!(&mask, &threshold_binary(&gray, t));
                let max = cfg.max_blob_area_for(24 * 18);
                let qualifying: Vec<_> = connected_components(&mask, Connectivity::Eight)
                    .into_iter().filter(|b| b.area >= 3).collect();
                prop_assert_eq!(qualifying.len(), 1);
                prop_assert!(qualifying[0].area as f64 <= max);
            }
        }
    }
}
