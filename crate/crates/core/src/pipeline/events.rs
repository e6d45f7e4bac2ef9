use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use crate::gesture::{map_command, CommandMap, GestureEvent, GestureKind};

/// One line of the event stream.
///
/// ```
/// use handinput::pipeline::EventRecord;
/// use handinput::{FingerCount, GestureEvent, GestureKind};
/// use handinput::gesture::CommandMap;
///
/// let ev = GestureEvent { frame: 3, kind: GestureKind::FingerCount { value: FingerCount::Three } };
/// let rec = EventRecord::new(&ev, 30.0, &CommandMap::default());
/// assert_eq!(
///     serde_json::to_string(&rec).unwrap(),
///     r#"{"type":"finger_count","value":"three","frame":3,"ts_ms":100,"command":"backward"}"#
/// );
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EventRecord {
    #[serde(flatten)]
    pub kind: GestureKind,
    pub frame: u64,
    pub ts_ms: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub command: Option<String>,
}

impl EventRecord {
    pub fn new(event: &GestureEvent, fps: f64, map: &CommandMap) -> Self {
        EventRecord {
            kind: event.kind,
            frame: event.frame,
            ts_ms: timestamp_ms(event.frame, fps),
            command: map_command(&event.kind, map).map(str::to_owned),
        }
    }

    pub fn event(&self) -> GestureEvent {
        GestureEvent { frame: self.frame, kind: self.kind }
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("event records always serialize")
    }
}

/// Milliseconds since frame 0 at a nominal frame rate.
pub fn timestamp_ms(frame: u64, fps: f64) -> u64 {
    (frame as f64 * 1000.0 / fps).round() as u64
}

/// Writes records as JSON lines.
pub fn write_json_lines<'a, W: Write>(out: &mut W, records: impl IntoIterator<Item = &'a EventRecord>) -> io::Result<()> {
    for rec in records {
        writeln!(out, "{}", rec.to_json_line())?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gesture::{FingerCount, Orientation};

    fn rec(frame: u64, kind: GestureKind) -> EventRecord {
        EventRecord::new(&GestureEvent { frame, kind }, 30.0, &CommandMap::default())
    }

    #[test]
    fn line_shapes() {
        assert_eq!(
            rec(0, GestureKind::Orientation { value: Orientation::Left }).to_json_line(),
            r#"{"type":"orientation","value":"left","frame":0,"ts_ms":0,"command":"left"}"#
        );
        assert_eq!(
            rec(45, GestureKind::PointerMoved { x: 10, y: -2 }).to_json_line(),
            r#"{"type":"pointer_moved","x":10,"y":-2,"frame":45,"ts_ms":1500}"#
        );
        assert_eq!(rec(2, GestureKind::Click { x: 1, y: 2 }).to_json_line(), r#"{"type":"click","x":1,"y":2,"frame":2,"ts_ms":67}"#);
        assert_eq!(rec(9, GestureKind::HandLost).to_json_line(), r#"{"type":"hand_lost","frame":9,"ts_ms":300}"#);
    }

    #[test]
    fn records_parse_back() {
        for kind in [
            GestureKind::FingerCount { value: FingerCount::AmbiguousZeroOrOne },
            GestureKind::Orientation { value: Orientation::Down },
            GestureKind::PointerMoved { x: 3, y: 4 },
            GestureKind::Click { x: 5, y: 6 },
            GestureKind::HandLost,
        ] {
            let r = rec(12, kind);
            let back: EventRecord = serde_json::from_str(&r.to_json_line()).unwrap();
            assert_eq!(back, r);
        }
    }

    #[test]
    fn writes_one_line_per_record() {
        let recs = [rec(0, GestureKind::HandLost), rec(1, GestureKind::HandLost)];
        let mut buf = Vec::new();
        write_json_lines(&mut buf, &recs).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap().lines().count(), 2);
    }
}
