//! Per-frame composition of segmentation, hand geometry and gesture
//! extraction.
//!
//! ```
//! use handinput::pipeline::{Mode, Pipeline, PipelineConfig};
//! use handinput::synth::HandSpec;
//! use handinput::{FingerCount, GestureKind, Orientation};
//!
//! let mut cfg = PipelineConfig::default();
//! cfg.gesture.mode = Mode::Count;
//! let mut pipeline = Pipeline::new(cfg).unwrap();
//! let out = pipeline.process_frame(0, &HandSpec::new(4, Orientation::Up).render());
//! assert_eq!(out.events[0].kind, GestureKind::FingerCount { value: FingerCount::Four });
//! ```

pub mod annotate;
mod config;
mod events;

pub use annotate::{AnnotatedFrame, DwellMarker, Overlay};
pub use config::{ConfigError, GeometryConfig, GestureConfig, Mode, OutputConfig, PipelineConfig};
pub use events::{timestamp_ms, write_json_lines, EventRecord};

use crate::frame::{BinaryMask, Frame};
use crate::gesture::{
    count_fingers, hand_orientation, large_defects, track_fingertip, GestureEvent, GestureKind, TrackerState,
};
use crate::segmentation::{segment, SegmentationAux};
use crate::topology::{
    convex_hull, convexity_defects, is_hand, label_components, largest_contour, trace_outer_border, Connectivity,
    Contour, ConvexityDefect, HandVerdict, Hull,
};

/// Geometry found on one frame.
#[derive(Debug, Clone, PartialEq)]
pub struct Detection {
    pub contour: Contour,
    pub hull: Hull,
    pub defects: Vec<ConvexityDefect>,
    /// Defects at least `large_defect_k` times the contour height deep.
    pub large: Vec<ConvexityDefect>,
    pub verdict: HandVerdict,
    /// Whether the contour passed the gate for the configured mode.
    pub accepted: bool,
}

/// State threaded from one frame to the next.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PipelineState {
    pub tracker: TrackerState,
    pub hand_present: bool,
}

impl PipelineState {
    pub fn new(cfg: &PipelineConfig) -> Self {
        PipelineState { tracker: TrackerState::new(cfg.tracker()), hand_present: false }
    }
}

#[derive(Debug, Clone)]
pub struct FrameOutput {
    pub frame: u64,
    pub events: Vec<GestureEvent>,
    /// Problems on this frame that did not stop the stream.
    pub diagnostics: Vec<String>,
    pub detection: Option<Detection>,
    /// Present when annotation is enabled.
    pub annotated: Option<AnnotatedFrame>,
}

impl FrameOutput {
    pub fn records(&self, cfg: &PipelineConfig) -> Vec<EventRecord> {
        self.events.iter().map(|e| EventRecord::new(e, cfg.output.timestamp_fps, &cfg.command_map)).collect()
    }
}

/// Finds the hand candidate: the largest outer contour among blobs above
/// the area floor.
pub fn detect(mask: &BinaryMask, cfg: &PipelineConfig) -> Option<Detection> {
    let dims = (mask.width(), mask.height());
    let frame_area = mask.pixels().len();
    let criteria = cfg.criteria();
    let min_area = criteria.min_area_for(frame_area as f64);
    let noise_floor = cfg.segmentation.min_blob_area_for(frame_area);

    let labeling = label_components(mask, cfg.geometry.connectivity);
    let contours: Vec<Contour> = labeling
        .blobs
        .iter()
        .filter(|b| b.area >= noise_floor)
        .map(|b| match cfg.geometry.connectivity {
            Connectivity::Eight => Contour::new(trace_outer_border(mask, b.seed)),
            // trace the blob alone so diagonal neighbors don't merge into it
            Connectivity::Four => {
                let only = BinaryMask::from_fn(dims.0, dims.1, |x, y| labeling.label_at(x, y) == b.label)
                    .expect("same dimensions as the mask");
                Contour::new(trace_outer_border(&only, b.seed))
            }
        })
        .collect();
    let contour = largest_contour(&contours, min_area)?.clone();

    let hull = convex_hull(&contour);
    let defects = if contour.len() >= 3 { convexity_defects(&contour, &hull).unwrap_or_default() } else { Vec::new() };
    let verdict = is_hand(&contour, &defects, dims, &criteria);
    let large = large_defects(&defects, &contour.bbox(), cfg.gesture.large_defect_k);
    // a closed fist or a single finger has no large defect but is still a
    // hand for counting and pointing
    let accepted = verdict.area_ok && verdict.depth_ok && large.len() <= criteria.max_large_defects;
    Some(Detection { contour, hull, defects, large, verdict, accepted })
}

/// Runs one frame through the pipeline. Pure: the same frame, config, aux
/// and state always give the same output and next state.
pub fn process_frame(
    index: u64,
    frame: &Frame,
    cfg: &PipelineConfig,
    aux: &SegmentationAux,
    state: &PipelineState,
) -> (FrameOutput, PipelineState) {
    let mut next = *state;
    let mut events = Vec::new();
    let mut diagnostics = Vec::new();
    let mode = cfg.gesture.mode;
    let emit = |events: &mut Vec<GestureEvent>, kind| events.push(GestureEvent { frame: index, kind });

    let detection = match segment(frame, &cfg.segmentation, aux) {
        Ok(mask) => detect(&mask, cfg),
        Err(e) => {
            diagnostics.push(format!("segmentation: {e}"));
            None
        }
    };
    let hand = detection.as_ref().filter(|d| d.accepted);

    if let Some(d) = hand {
        if mode.counts() {
            match count_fingers(&d.large) {
                Ok(value) => emit(&mut events, GestureKind::FingerCount { value }),
                Err(e) => diagnostics.push(format!("count: {e}")),
            }
        }
        if mode.orients() {
            if d.verdict.is_hand() {
                match hand_orientation(&d.large, &d.contour) {
                    Ok(value) => emit(&mut events, GestureKind::Orientation { value }),
                    Err(e) => diagnostics.push(format!("orientation: {e}")),
                }
            } else {
                diagnostics.push("orientation: no gap between fingers to read".into());
            }
        }
    }

    let mut fingertip = None;
    if mode.points() {
        fingertip = hand.and_then(|d| track_fingertip(&d.contour).ok());
        if let Some(p) = fingertip {
            emit(&mut events, GestureKind::pointer_moved(p));
        }
        if let Some(p) = next.tracker.update(fingertip) {
            emit(&mut events, GestureKind::click(p));
        }
    }

    if next.hand_present && hand.is_none() {
        emit(&mut events, GestureKind::HandLost);
    }
    next.hand_present = hand.is_some();

    let annotated = cfg.output.annotate.then(|| {
        let mut overlay = Overlay::default();
        if let Some(d) = &detection {
            overlay.contour = d.contour.points().to_vec();
            overlay.hull = d.hull.points(&d.contour).collect();
            overlay.defects =
                d.large.iter().map(|x| (x.start(&d.contour), x.end(&d.contour), x.farthest(&d.contour))).collect();
        }
        overlay.fingertip = fingertip;
        if mode.points() {
            overlay.dwell = next.tracker.center.map(|center| DwellMarker {
                center,
                radius: next.tracker.config.radius,
                progress: next.tracker.progress(),
            });
        }
        AnnotatedFrame::render(frame, overlay)
    });

    (FrameOutput { frame: index, events, diagnostics, detection, annotated }, next)
}

/// Owns a config, the auxiliary segmentation state and the running tracker.
#[derive(Debug, Clone)]
pub struct Pipeline {
    config: PipelineConfig,
    aux: SegmentationAux,
    state: PipelineState,
}

impl Pipeline {
    pub fn new(config: PipelineConfig) -> Result<Self, ConfigError> {
        config.validate()?;
        let state = PipelineState::new(&config);
        Ok(Pipeline { config, aux: SegmentationAux::default(), state })
    }

    pub fn with_aux(mut self, aux: SegmentationAux) -> Self {
        self.aux = aux;
        self
    }

    pub fn config(&self) -> &PipelineConfig {
        &self.config
    }

    pub fn aux(&self) -> &SegmentationAux {
        &self.aux
    }

    pub fn aux_mut(&mut self) -> &mut SegmentationAux {
        &mut self.aux
    }

    pub fn state(&self) -> &PipelineState {
        &self.state
    }

    /// Swaps in a new config. The tracker restarts if its settings changed.
    pub fn set_config(&mut self, config: PipelineConfig) -> Result<(), ConfigError> {
        config.validate()?;
        if config.tracker() != self.config.tracker() {
            self.state.tracker = TrackerState::new(config.tracker());
        }
        self.config = config;
        Ok(())
    }

    pub fn process_frame(&mut self, index: u64, frame: &Frame) -> FrameOutput {
        let (out, next) = process_frame(index, frame, &self.config, &self.aux, &self.state);
        self.state = next;
        out
    }
}
