use serde::{Deserialize, Serialize};

use super::GestureError;
use crate::topology::{Contour, ConvexityDefect, Point};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    Up,
    Down,
    Left,
    Right,
}

impl Orientation {
    pub const ALL: [Orientation; 4] = [Orientation::Up, Orientation::Down, Orientation::Left, Orientation::Right];
}

/// Orientation from the deepest defect's hull edge `start-end` and its
/// farthest point. Compares the edge midpoint `m` with the farthest point
/// `d`: a dominant vertical offset gives up (`m` above `d`) or down, a
/// dominant horizontal one right (`m` right of `d`) or left. Equal offsets
/// resolve vertically.
pub fn orientation_from_points(start: Point, end: Point, farthest: Point) -> Result<Orientation, GestureError> {
    // 2(m - d), exact in integers
    let dx = start.x as i64 + end.x as i64 - 2 * farthest.x as i64;
    let dy = start.y as i64 + end.y as i64 - 2 * farthest.y as i64;
    if dx == 0 && dy == 0 {
        return Err(GestureError::IndeterminateOrientation);
    }
    Ok(if dy.abs() >= dx.abs() {
        if dy < 0 {
            Orientation::Up
        } else {
            Orientation::Down
        }
    } else if dx > 0 {
        Orientation::Right
    } else {
        Orientation::Left
    })
}

/// Orientation of the hand, read off its deepest convexity defect (the
/// first one on equal depth).
pub fn hand_orientation(defects: &[ConvexityDefect], contour: &Contour) -> Result<Orientation, GestureError> {
    let deepest = defects
        .iter()
        .reduce(|best, d| if d.depth > best.depth { d } else { best })
        .ok_or(GestureError::NoDefects)?;
    orientation_from_points(deepest.start(contour), deepest.end(contour), deepest.farthest(contour))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Builds a start/end pair whose midpoint is exactly `m`.
    fn classify(m: (i32, i32), d: (i32, i32)) -> Result<Orientation, GestureError> {
        let start = Point::new(m.0 - 10, m.1 + 3);
        let end = Point::new(m.0 + 10, m.1 - 3);
        orientation_from_points(start, end, Point::new(d.0, d.1))
    }

    #[test]
    fn sign_rules() {
        assert_eq!(classify((100, 120), (100, 80)), Ok(Orientation::Down));
        assert_eq!(classify((150, 100), (90, 100)), Ok(Orientation::Right));
        assert_eq!(classify((100, 60), (100, 100)), Ok(Orientation::Up));
        assert_eq!(classify((50, 100), (90, 100)), Ok(Orientation::Left));
    }

    #[test]
    fn diagonal_tie_goes_vertical() {
        assert_eq!(classify((110, 110), (100, 100)), Ok(Orientation::Down));
        assert_eq!(classify((90, 90), (100, 100)), Ok(Orientation::Up));
        assert_eq!(classify((110, 90), (100, 100)), Ok(Orientation::Up));
    }

    #[test]
    fn degenerate_cases() {
        assert_eq!(classify((5, 5), (5, 5)), Err(GestureError::IndeterminateOrientation));
        let c = Contour::new(vec![Point::new(0, 0), Point::new(1, 0), Point::new(1, 1)]);
        assert_eq!(hand_orientation(&[], &c), Err(GestureError::NoDefects));
    }

    #[test]
    fn deepest_defect_decides() {
        let c = Contour::new(vec![
            Point::new(0, 0),
            Point::new(5, 10),
            Point::new(10, 0),
            Point::new(10, 20),
            Point::new(7, 20),
            Point::new(0, 20),
        ]);
        let shallow = ConvexityDefect { start_index: 3, end_index: 5, farthest_index: 4, depth: 0.5 };
        let deep = ConvexityDefect { start_index: 0, end_index: 2, farthest_index: 1, depth: 10.0 };
        assert_eq!(hand_orientation(&[shallow, deep], &c), Ok(Orientation::Up));
    }

    proptest! {
        #[test]
        fn invariant_under_translation_and_scaling(
            s in (-200i32..200, -200i32..200), e in (-200i32..200, -200i32..200), f in (-200i32..200, -200i32..200),
            t in (-500i32..500, -500i32..500), k in 1i32..8, c in (-100i32..100, -100i32..100),
        ) {
            let p = |q: (i32, i32)| Point::new(q.0, q.1);
            let base = orientation_from_points(p(s), p(e), p(f));
            let moved = |q: (i32, i32)| Point::new(q.0 + t.0, q.1 + t.1);
            prop_assert_eq!(base.clone(), orientation_from_points(moved(s), moved(e), moved(f)));
            let scaled = |q: (i32, i32)| Point::new(c.0 + k * (q.0 - c.0), c.1 + k * (q.1 - c.1));
            prop_assert_eq!(base, orientation_from_points(scaled(s), scaled(e), scaled(f)));
        }
    }
}
