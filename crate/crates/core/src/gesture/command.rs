use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{FingerCount, GestureKind, Orientation};

/// Gesture-to-command table. Gestures without an entry map to nothing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CommandMap {
    pub orientation: BTreeMap<Orientation, String>,
    pub count: BTreeMap<FingerCount, String>,
}

impl Default for CommandMap {
    /// Drive commands for a wheeled robot.
    fn default() -> Self {
        let orientation = [
            (Orientation::Up, "forward"),
            (Orientation::Down, "backward"),
            (Orientation::Left, "left"),
            (Orientation::Right, "right"),
        ];
        let count = [
            (FingerCount::Two, "forward"),
            (FingerCount::Three, "backward"),
            (FingerCount::Four, "right"),
            (FingerCount::Five, "stop"),
            (FingerCount::AmbiguousZeroOrOne, "left"),
        ];
        CommandMap {
            orientation: orientation.into_iter().map(|(k, v)| (k, v.to_string())).collect(),
            count: count.into_iter().map(|(k, v)| (k, v.to_string())).collect(),
        }
    }
}

impl CommandMap {
    pub fn empty() -> Self {
        CommandMap { orientation: BTreeMap::new(), count: BTreeMap::new() }
    }
}

pub fn map_command<'a>(event: &GestureKind, map: &'a CommandMap) -> Option<&'a str> {
    match event {
        GestureKind::FingerCount { value } => map.count.get(value),
        GestureKind::Orientation { value } => map.orientation.get(value),
        _ => None,
    }
    .map(String::as_str)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_maps() {
        let map = CommandMap::default();
        assert_eq!(map_command(&GestureKind::Orientation { value: Orientation::Up }, &map), Some("forward"));
        assert_eq!(map_command(&GestureKind::FingerCount { value: FingerCount::Five }, &map), Some("stop"));
        assert_eq!(map_command(&GestureKind::PointerMoved { x: 1, y: 2 }, &map), None);
        assert_eq!(map_command(&GestureKind::HandLost, &map), None);
        assert_eq!(map_command(&GestureKind::FingerCount { value: FingerCount::Two }, &CommandMap::empty()), None);
    }

    #[test]
    fn json_shape() {
        let json = serde_json::to_value(CommandMap::default()).unwrap();
        assert_eq!(json["orientation"]["up"], "forward");
        assert_eq!(json["count"]["ambiguous_zero_or_one"], "left");
        let partial: CommandMap = serde_json::from_str(r#"{"count":{"three":"grab"}}"#).unwrap();
        // sections left out keep the bundled table
        assert_eq!(partial.orientation, CommandMap::default().orientation);
        assert_eq!(partial.count.len(), 1);
        assert_eq!(map_command(&GestureKind::FingerCount { value: FingerCount::Three }, &partial), Some("grab"));
    }
}
