use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::gesture::{CommandMap, TrackerConfig};
use crate::segmentation::{SegmentationConfig, ThresholdValue};
use crate::topology::{Connectivity, HandCriteria};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("malformed config: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("invalid config: {0}")]
    Invalid(String),
}

/// Which extractors run on a detected hand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    #[default]
    Count,
    Orientation,
    Pointer,
    All,
}

impl Mode {
    pub const ALL: [Mode; 4] = [Mode::Count, Mode::Orientation, Mode::Pointer, Mode::All];

    pub fn name(self) -> &'static str {
        match self {
            Mode::Count => "count",
            Mode::Orientation => "orientation",
            Mode::Pointer => "pointer",
            Mode::All => "all",
        }
    }

    pub fn counts(self) -> bool {
        matches!(self, Mode::Count | Mode::All)
    }

    pub fn orients(self) -> bool {
        matches!(self, Mode::Orientation | Mode::All)
    }

    pub fn points(self) -> bool {
        matches!(self, Mode::Pointer | Mode::All)
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Mode::ALL.into_iter().find(|m| m.name() == s).ok_or_else(|| format!("unknown mode `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GeometryConfig {
    /// Adjacency for grouping mask pixels into blobs before tracing.
    pub connectivity: Connectivity,
    /// Smallest contour area accepted as a hand; `None` means 0.2% of the frame.
    pub min_area: Option<f64>,
    pub max_area_fraction: f64,
    pub min_large_defects: usize,
    pub max_large_defects: usize,
    pub max_depth_diagonal_ratio: f64,
}

impl Default for GeometryConfig {
    fn default() -> Self {
        let c = HandCriteria::default();
        GeometryConfig {
            connectivity: Connectivity::Eight,
            min_area: c.min_area,
            max_area_fraction: c.max_area_fraction,
            min_large_defects: c.min_large_defects,
            max_large_defects: c.max_large_defects,
            max_depth_diagonal_ratio: c.max_depth_diagonal_ratio,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GestureConfig {
    pub large_defect_k: f64,
    pub dwell_frames: u32,
    pub radius: f64,
    pub miss_limit: u32,
    pub mode: Mode,
}

impl Default for GestureConfig {
    fn default() -> Self {
        let t = TrackerConfig::default();
        GestureConfig {
            large_defect_k: HandCriteria::default().large_defect_k,
            dwell_frames: t.dwell_frames,
            radius: t.radius,
            miss_limit: t.miss_limit,
            mode: Mode::Count,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    pub annotate: bool,
    pub annotate_dir: Option<PathBuf>,
    /// Event file path, or `-` for standard output.
    pub events: String,
    /// Frame rate used to stamp events with `ts_ms`.
    pub timestamp_fps: f64,
}

impl Default for OutputConfig {
    fn default() -> Self {
        OutputConfig { annotate: false, annotate_dir: None, events: "-".into(), timestamp_fps: 30.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PipelineConfig {
    pub segmentation: SegmentationConfig,
    pub geometry: GeometryConfig,
    pub gesture: GestureConfig,
    pub command_map: CommandMap,
    pub output: OutputConfig,
}

impl PipelineConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        let cfg: PipelineConfig = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_path(path: &Path) -> Result<Self, ConfigError> {
        let text =
            std::fs::read_to_string(path).map_err(|source| ConfigError::Read { path: path.to_owned(), source })?;
        Self::from_json(&text)
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("config always serializes")
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let bad = |msg: String| Err(ConfigError::Invalid(msg));
        self.segmentation.validate().map_err(|e| ConfigError::Invalid(e.to_string()))?;
        self.tracker().validate().map_err(ConfigError::Invalid)?;
        let g = &self.geometry;
        if let Some(a) = g.min_area {
            if !(a >= 0.0 && a.is_finite()) {
                return bad(format!("geometry.min_area {a} must be a non-negative number"));
            }
        }
        if !(g.max_area_fraction > 0.0 && g.max_area_fraction <= 1.0) {
            return bad(format!("geometry.max_area_fraction {} not in (0, 1]", g.max_area_fraction));
        }
        if g.min_large_defects > g.max_large_defects || g.max_large_defects > 4 {
            return bad(format!(
                "large defect band {}..={} must lie within 0..=4",
                g.min_large_defects, g.max_large_defects
            ));
        }
        if !(g.max_depth_diagonal_ratio > 0.0) {
            return bad("geometry.max_depth_diagonal_ratio must be positive".into());
        }
        let k = self.gesture.large_defect_k;
        if !(k > 0.0 && k <= 1.0) {
            return bad(format!("gesture.large_defect_k {k} not in (0, 1]"));
        }
        let fps = self.output.timestamp_fps;
        if !(fps > 0.0 && fps.is_finite()) {
            return bad(format!("output.timestamp_fps {fps} must be positive"));
        }
        Ok(())
    }

    pub fn criteria(&self) -> HandCriteria {
        let g = &self.geometry;
        HandCriteria {
            min_area: g.min_area,
            max_area_fraction: g.max_area_fraction,
            large_defect_k: self.gesture.large_defect_k,
            min_large_defects: g.min_large_defects,
            max_large_defects: g.max_large_defects,
            max_depth_diagonal_ratio: g.max_depth_diagonal_ratio,
        }
    }

    pub fn tracker(&self) -> TrackerConfig {
        TrackerConfig {
            radius: self.gesture.radius,
            dwell_frames: self.gesture.dwell_frames,
            miss_limit: self.gesture.miss_limit,
        }
    }

    /// Sets one tunable parameter by name. Nothing changes unless the value
    /// is in range and the resulting config validates.
    ///
    /// ```
    /// use handinput::PipelineConfig;
    /// use serde_json::json;
    ///
    /// let mut cfg = PipelineConfig::default();
    /// cfg.set_param("thresh", &json!(70)).unwrap();
    /// assert_eq!(cfg.segmentation.static_t.0, 70);
    /// assert_eq!(cfg.set_param("thresh", &json!(300)), Err("out of range".to_string()));
    /// ```
    pub fn set_param(&mut self, name: &str, value: &Value) -> Result<(), String> {
        let mut next = self.clone();
        next.apply_param(name, value)?;
        next.validate().map_err(|e| match e {
            ConfigError::Invalid(msg) => msg,
            other => other.to_string(),
        })?;
        *self = next;
        Ok(())
    }

    fn apply_param(&mut self, name: &str, value: &Value) -> Result<(), String> {
        let seg = &mut self.segmentation;
        let ges = &mut self.gesture;
        match name {
            "thresh" | "static_t" => seg.static_t = ThresholdValue(byte(value)?),
            "incr_lo" => seg.incr_lo = byte(value)?,
            "incr_hi" => seg.incr_hi = byte(value)?,
            "incr_step" => seg.incr_step = in_range(byte(value)?, 1, 255)?,
            "bg_diff_threshold" => seg.bg_diff_threshold = byte(value)?,
            "calib_radius_fraction" => seg.calib_radius_fraction = fraction(value, 0.5)?,
            "max_blob_area_fraction" => seg.max_blob_area_fraction = fraction(value, 1.0)?,
            "min_blob_area" => seg.min_blob_area = optional(value, |v| count(v).map(|n| n as usize))?,
            "method" => seg.method = parse_name(value)?,
            "large_defect_k" => ges.large_defect_k = fraction(value, 1.0)?,
            "dwell_frames" => ges.dwell_frames = in_range(count(value)?, 1, u32::MAX as u64)? as u32,
            "radius" | "dwell_radius" => ges.radius = non_negative(value)?,
            "miss_limit" => ges.miss_limit = in_range(count(value)?, 1, u32::MAX as u64)? as u32,
            "mode" => ges.mode = parse_name(value)?,
            "min_area" => self.geometry.min_area = optional(value, non_negative)?,
            "annotate" => self.output.annotate = value.as_bool().ok_or("expected a boolean")?,
            other => return Err(format!("unknown parameter `{other}`")),
        }
        Ok(())
    }
}

const OUT_OF_RANGE: &str = "out of range";

fn count(v: &Value) -> Result<u64, String> {
    match v.as_u64() {
        Some(n) => Ok(n),
        None if v.as_i64().is_some() => Err(OUT_OF_RANGE.into()),
        None => match v.as_f64() {
            Some(f) if f.fract() == 0.0 && f >= 0.0 && f <= u64::MAX as f64 => Ok(f as u64),
            Some(f) if f < 0.0 => Err(OUT_OF_RANGE.into()),
            _ => Err("expected an integer".into()),
        },
    }
}

fn byte(v: &Value) -> Result<u8, String> {
    let n = count(v)?;
    u8::try_from(n).map_err(|_| OUT_OF_RANGE.into())
}

fn in_range<T: PartialOrd>(n: T, lo: T, hi: T) -> Result<T, String> {
    if n < lo || n > hi {
        Err(OUT_OF_RANGE.into())
    } else {
        Ok(n)
    }
}

fn number(v: &Value) -> Result<f64, String> {
    v.as_f64().ok_or_else(|| "expected a number".into())
}

fn non_negative(v: &Value) -> Result<f64, String> {
    let f = number(v)?;
    if f >= 0.0 && f.is_finite() {
        Ok(f)
    } else {
        Err(OUT_OF_RANGE.into())
    }
}

/// A number in `(0, max]`.
fn fraction(v: &Value, max: f64) -> Result<f64, String> {
    let f = number(v)?;
    if f > 0.0 && f <= max {
        Ok(f)
    } else {
        Err(OUT_OF_RANGE.into())
    }
}

fn optional<T>(v: &Value, f: impl FnOnce(&Value) -> Result<T, String>) -> Result<Option<T>, String> {
    if v.is_null() {
        Ok(None)
    } else {
        f(v).map(Some)
    }
}

fn parse_name<T: std::str::FromStr<Err = String>>(v: &Value) -> Result<T, String> {
    v.as_str().ok_or("expected a string")?.parse()
}
