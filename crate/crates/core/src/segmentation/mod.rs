//! Hand segmentation: six ways to turn a frame into a mask of hand-candidate
//! pixels, unified behind [`segment`].
//!
//! Intensity methods (static, incremental, Otsu) and background subtraction
//! work on the gray frame; the color methods (calibrated, fixed range) work
//! on raw RGB.

mod background;
mod color;
mod otsu;
mod threshold;

pub use background::background_subtract;
pub use color::{calibrate_color_range, calibration_disc, threshold_color_range, ColorRange};
pub use otsu::otsu_threshold;
pub use threshold::{incremental_threshold, threshold_binary, ThresholdValue};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::frame::{histogram, Frame, GrayFrame};
use crate::frame::BinaryMask;
use crate::topology::DEFAULT_MIN_AREA_FRACTION;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SegmentationError {
    #[error("no threshold in range isolates exactly one hand-sized blob")]
    NoHandCandidate,
    #[error("histogram has all of its mass at a single intensity")]
    DegenerateHistogram,
    #[error("calibration saw no pixels")]
    EmptyCalibration,
    #[error("color range minimum exceeds maximum on channel {channel}")]
    InvalidRange { channel: usize },
    #[error("frame is {frame:?} but background is {background:?}")]
    DimensionMismatch { frame: (u32, u32), background: (u32, u32) },
    #[error("method `{0}` needs {1}, which has not been provided")]
    MissingAuxState(Method, &'static str),
    #[error("invalid segmentation config: {0}")]
    InvalidConfig(String),
}

/// Which segmentation method [`segment`] dispatches to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Static,
    Incremental,
    #[default]
    Otsu,
    Calibrated,
    ColorRange,
    BackgroundSub,
}

impl Method {
    pub const ALL: [Method; 6] = [
        Method::Static,
        Method::Incremental,
        Method::Otsu,
        Method::Calibrated,
        Method::ColorRange,
        Method::BackgroundSub,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Static => "static",
            Method::Incremental => "incremental",
            Method::Otsu => "otsu",
            Method::Calibrated => "calibrated",
            Method::ColorRange => "color_range",
            Method::BackgroundSub => "background_sub",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown segmentation method `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SegmentationConfig {
    pub method: Method,
    pub static_t: ThresholdValue,
    pub incr_lo: u8,
    pub incr_hi: u8,
    pub incr_step: u8,
    /// Calibration disc radius as a fraction of `min(width, height)`.
    pub calib_radius_fraction: f64,
    pub bg_diff_threshold: u8,
    /// Blobs smaller than this are noise; `None` means 0.2% of the frame.
    pub min_blob_area: Option<usize>,
    pub max_blob_area_fraction: f64,
    /// Fixed skin range for [`Method::ColorRange`].
    pub color_range: Option<ColorRange>,
}

impl Default for SegmentationConfig {
    fn default() -> Self {
        SegmentationConfig {
            method: Method::Otsu,
            static_t: ThresholdValue(70),
            incr_lo: 20,
            incr_hi: 160,
            incr_step: 1,
            calib_radius_fraction: 0.1,
            bg_diff_threshold: 25,
            min_blob_area: None,
            max_blob_area_fraction: 0.6,
            color_range: None,
        }
    }
}

impl SegmentationConfig {
    pub fn validate(&self) -> Result<(), SegmentationError> {
        let bad = |msg: String| Err(SegmentationError::InvalidConfig(msg));
        if self.incr_lo > self.incr_hi {
            return bad(format!("incr_lo {} exceeds incr_hi {}", self.incr_lo, self.incr_hi));
        }
        if self.incr_step == 0 {
            return bad("incr_step must be at least 1".into());
        }
        if !(self.calib_radius_fraction > 0.0 && self.calib_radius_fraction <= 0.5) {
            return bad(format!("calib_radius_fraction {} not in (0, 0.5]", self.calib_radius_fraction));
        }
        if !(self.max_blob_area_fraction > 0.0 && self.max_blob_area_fraction <= 1.0) {
            return bad(format!("max_blob_area_fraction {} not in (0, 1]", self.max_blob_area_fraction));
        }
        if let Some(range) = &self.color_range {
            range.validate()?;
        }
        Ok(())
    }

    /// Noise floor in pixels for a frame of `frame_area` pixels.
    pub fn min_blob_area_for(&self, frame_area: usize) -> usize {
        self.min_blob_area
            .unwrap_or_else(|| (DEFAULT_MIN_AREA_FRACTION * frame_area as f64).ceil() as usize)
    }

    pub fn max_blob_area_for(&self, frame_area: usize) -> f64 {
        self.max_blob_area_fraction * frame_area as f64
    }
}

/// State some methods need beyond the frame itself.
#[derive(Debug, Clone, Default)]
pub struct SegmentationAux {
    /// Learned by [`calibrate_color_range`]; required by [`Method::Calibrated`].
    pub calibrated_range: Option<ColorRange>,
    /// Required by [`Method::BackgroundSub`].
    pub background: Option<GrayFrame>,
}

/// Segments `frame` with the configured method.
pub fn segment(
    frame: &Frame,
    cfg: &SegmentationConfig,
    aux: &SegmentationAux,
) -> Result<BinaryMask, SegmentationError> {
    match cfg.method {
        Method::Static => Ok(threshold_binary(&frame.to_grayscale(), cfg.static_t)),
        Method::Incremental => incremental_threshold(&frame.to_grayscale(), cfg).map(|(_, mask)| mask),
        Method::Otsu => {
            let gray = frame.to_grayscale();
            let t = otsu_threshold(&histogram(&gray))?;
            Ok(threshold_binary(&gray, t))
        }
        Method::Calibrated => {
            let range = aux
                .calibrated_range
                .as_ref()
                .ok_or(SegmentationError::MissingAuxState(Method::Calibrated, "a calibrated color range"))?;
            threshold_color_range(frame, range)
        }
        Method::ColorRange => {
            let range = cfg
                .color_range
                .as_ref()
                .ok_or(SegmentationError::MissingAuxState(Method::ColorRange, "a configured color range"))?;
            threshold_color_range(frame, range)
        }
        Method::BackgroundSub => {
            let background = aux
                .background
                .as_ref()
                .ok_or(SegmentationError::MissingAuxState(Method::BackgroundSub, "a background frame"))?;
            background_subtract(&frame.to_grayscale(), background, cfg)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sample_frame() -> Frame {
        Frame::from_fn(40, 30, |x, y| {
            let v = ((x * 7 + y * 13) % 90) as u8 + if (10..25).contains(&x) { 120 } else { 0 };
            [v, v.saturating_sub(10), v / 2]
        })
        .unwrap()
    }

    #[test]
    fn otsu_dispatch_is_the_composition() {
        let frame = sample_frame();
        let cfg = SegmentationConfig { method: Method::Otsu, ..Default::default() };
        let gray = frame.to_grayscale();
        let expected = threshold_binary(&gray, otsu_threshold(&histogram(&gray)).unwrap());
        assert_eq!(segment(&frame, &cfg, &SegmentationAux::default()).unwrap(), expected);
    }

    #[test]
    fn static_dispatch_matches_direct_call() {
        let frame = sample_frame();
        let cfg = SegmentationConfig { method: Method::Static, static_t: ThresholdValue(70), ..Default::default() };
        assert_eq!(
            segment(&frame, &cfg, &SegmentationAux::default()).unwrap(),
            threshold_binary(&frame.to_grayscale(), ThresholdValue(70))
        );
    }

    #[test]
    fn missing_aux_state() {
        let frame = sample_frame();
        for method in [Method::Calibrated, Method::ColorRange, Method::BackgroundSub] {
            let cfg = SegmentationConfig { method, ..Default::default() };
            assert!(matches!(
                segment(&frame, &cfg, &SegmentationAux::default()),
                Err(SegmentationError::MissingAuxState(m, _)) if m == method
            ));
        }
    }

    #[test]
    fn config_validation() {
        assert!(SegmentationConfig::default().validate().is_ok());
        let bad = [
            SegmentationConfig { incr_lo: 100, incr_hi: 50, ..Default::default() },
            SegmentationConfig { incr_step: 0, ..Default::default() },
            SegmentationConfig { calib_radius_fraction: 0.0, ..Default::default() },
            SegmentationConfig { calib_radius_fraction: 0.6, ..Default::default() },
            SegmentationConfig { max_blob_area_fraction: 1.5, ..Default::default() },
            SegmentationConfig {
                color_range: Some(ColorRange { min: [10, 0, 0], max: [5, 0, 0] }),
                ..Default::default()
            },
        ];
        for cfg in bad {
            assert!(cfg.validate().is_err(), "{cfg:?}");
        }
    }

    #[test]
    fn config_json_defaults_and_method_names() {
        let cfg: SegmentationConfig = serde_json::from_str(r#"{"method":"background_sub"}"#).unwrap();
        assert_eq!(cfg.method, Method::BackgroundSub);
        assert_eq!((cfg.incr_lo, cfg.incr_hi, cfg.incr_step), (20, 160, 1));
        assert!(serde_json::from_str::<SegmentationConfig>(r#"{"static_t":300}"#).is_err());
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
            assert_eq!(serde_json::to_string(&m).unwrap(), format!("\"{}\"", m.name()));
        }
    }

    proptest! {
        #[test]
        fn every_method_yields_a_binary_mask_of_the_frame_size(
            px in prop::collection::vec(any::<[u8; 3]>(), 16 * 12),
            bg in prop::collection::vec(any::<u8>(), 16 * 12),
            t in any::<u8>(),
        ) {
            let frame = Frame::new(16, 12, px).unwrap();
            let aux = SegmentationAux {
                calibrated_range: Some(calibrate_color_range(std::slice::from_ref(&frame), &SegmentationConfig::default()).unwrap()),
                background: Some(GrayFrame::new(16, 12, bg).unwrap()),
            };
            for method in Method::ALL {
                let cfg = SegmentationConfig {
                    method,
                    static_t: ThresholdValue(t),
                    color_range: Some(ColorRange { min: [t / 2; 3], max: [t; 3] }),
                    min_blob_area: Some(1),
                    ..Default::default()
                };
                match segment(&frame, &cfg, &aux) {
                    Ok(mask) => {
                        prop_assert_eq!((mask.width(), mask.height()), (16, 12));
                        prop_assert_eq!(mask.pixels().len(), 16 * 12);
                    }
                    Err(SegmentationError::NoHandCandidate | SegmentationError::DegenerateHistogram) => {}
                    Err(e) => prop_assert!(false, "{method}: {e}"),
                }
            }
        }
    }
}
