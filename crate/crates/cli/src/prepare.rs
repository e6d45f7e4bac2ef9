use std::path::Path;
use std::str::FromStr;

use handinput::frame::{read_frame, FrameSource, SourceDescriptor, SourceError};
use handinput::pipeline::{Pipeline, PipelineConfig};
use handinput::segmentation::{calibrate_color_range, ColorRange, Method, SegmentationAux, ThresholdValue};
use handinput::Frame;

use crate::{Failure, PipelineArgs};

/// A pipeline ready to run and the frames left for it.
pub struct Prepared {
    pub pipeline: Pipeline,
    pub source: FrameSource,
}

pub(crate) fn load_config(path: Option<&Path>) -> Result<PipelineConfig, Failure> {
    match path {
        Some(p) => PipelineConfig::from_path(p).map_err(|e| Failure::ConfigInvalid(e.to_string())),
        None => Ok(PipelineConfig::default()),
    }
}

pub(crate) fn source_failure(e: SourceError) -> Failure {
    match e {
        SourceError::SourceNotFound(_) | SourceError::CameraUnavailable(_) | SourceError::Io { .. } => {
            Failure::SourceNotFound(e.to_string())
        }
        other => Failure::Other(other.to_string()),
    }
}

pub(crate) fn open_source(input: &str) -> Result<FrameSource, Failure> {
    let descriptor = SourceDescriptor::from_str(input).expect("infallible");
    FrameSource::open(&descriptor).map_err(source_failure)
}

pub(crate) fn read_range(path: &Path) -> Result<ColorRange, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::ConfigInvalid(format!("range file {}: {e}", path.display())))?;
    let range: ColorRange = serde_json::from_str(&text)
        .map_err(|e| Failure::ConfigInvalid(format!("range file {}: {e}", path.display())))?;
    range.validate().map_err(|e| Failure::ConfigInvalid(format!("range file {}: {e}", path.display())))?;
    Ok(range)
}

/// Takes up to `n` decodable frames off the front of `source`.
pub(crate) fn take_frames(source: &mut FrameSource, n: usize) -> Vec<Frame> {
    let mut frames = Vec::new();
    while frames.len() < n {
        match source.next() {
            Some((_, Ok(f))) => frames.push(f),
            Some((i, Err(e))) => eprintln!("frame {i}: skipped: {e}"),
            None => break,
        }
    }
    frames
}

fn apply_flags(cfg: &mut PipelineConfig, args: &PipelineArgs) {
    if let Some(m) = args.method {
        cfg.segmentation.method = m;
    }
    if let Some(t) = args.thresh {
        cfg.segmentation.static_t = ThresholdValue(t);
    }
    if let Some(m) = args.mode {
        cfg.gesture.mode = m;
    }
    if let Some(n) = args.dwell_frames {
        cfg.gesture.dwell_frames = n;
    }
    if let Some(r) = args.dwell_radius {
        cfg.gesture.radius = r;
    }
}

/// Builds the configuration, auxiliary state and frame source described by
/// `args`. `tweak` runs after the flags are applied and before validation.
pub fn prepare(args: &PipelineArgs, tweak: impl FnOnce(&mut PipelineConfig)) -> Result<Prepared, Failure> {
    let mut cfg = load_config(args.config.as_deref())?;
    apply_flags(&mut cfg, args);
    tweak(&mut cfg);

    let mut aux = SegmentationAux::default();
    if let Some(path) = &args.range_file {
        let range = read_range(path)?;
        if cfg.segmentation.method == Method::ColorRange {
            cfg.segmentation.color_range = Some(range);
        } else {
            aux.calibrated_range = Some(range);
        }
    }
    if args.calibrate_frames == Some(0) {
        return Err(Failure::ConfigInvalid("--calibrate-frames must be at least 1".into()));
    }
    match cfg.segmentation.method {
        Method::Calibrated if aux.calibrated_range.is_none() && args.calibrate_frames.is_none() => {
            return Err(Failure::ConfigInvalid(
                "method `calibrated` needs --calibrate-frames or --range-file".into(),
            ))
        }
        Method::BackgroundSub if args.background.is_none() => {
            return Err(Failure::ConfigInvalid("method `background_sub` needs --background".into()))
        }
        Method::ColorRange if cfg.segmentation.color_range.is_none() => {
            return Err(Failure::ConfigInvalid(
                "method `color_range` needs --range-file or segmentation.color_range".into(),
            ))
        }
        _ => {}
    }
    cfg.validate().map_err(|e| Failure::ConfigInvalid(e.to_string()))?;

    if let Some(path) = &args.background {
        aux.background = Some(read_frame(path).map_err(source_failure)?.to_grayscale());
    }
    let mut source = open_source(&args.input)?;
    if let Some(n) = args.calibrate_frames {
        let frames = take_frames(&mut source, n as usize);
        let range = calibrate_color_range(&frames, &cfg.segmentation)
            .map_err(|e| Failure::Other(format!("calibration failed: {e}")))?;
        aux.calibrated_range = Some(range);
    }
    let pipeline = Pipeline::new(cfg).map_err(|e| Failure::ConfigInvalid(e.to_string()))?.with_aux(aux);
    Ok(Prepared { pipeline, source })
}
