use handinput::pipeline::{Mode, PipelineConfig};
use handinput::segmentation::Method;
use serde::{Deserialize, Serialize};
use serde_json::Value;

/// A runtime change requested by a client, e.g.
/// `{"set_param":{"name":"thresh","value":70}}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ControlMessage {
    SetMethod { method: Method },
    SetParam { name: String, value: Value },
    StartCalibration { n_frames: u32 },
    SetBackground {},
    SetMode { mode: Mode },
}

impl ControlMessage {
    pub fn parse(text: &str) -> Result<Self, Ack> {
        serde_json::from_str(text).map_err(|e| Ack::rejected(format!("malformed control message: {e}")))
    }
}

/// Reply to one control message.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ack {
    pub ok: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Ack {
    pub fn ok() -> Self {
        Ack { ok: true, error: None }
    }

    pub fn rejected(error: impl Into<String>) -> Self {
        Ack { ok: false, error: Some(error.into()) }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("acks always serialize")
    }
}

/// Service state as sent to a new event subscriber, and again after every
/// accepted control message.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename = "snapshot")]
pub struct Snapshot {
    pub config: PipelineConfig,
    pub subscribers: usize,
    pub last_frame: Option<u64>,
    pub calibrating: bool,
    pub calibrated: bool,
    pub has_background: bool,
}

impl Snapshot {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("snapshots always serialize")
    }
}
