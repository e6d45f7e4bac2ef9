//! Overlay drawing. Everything here is cosmetic; nothing feeds back into
//! detection.

use serde::Serialize;

use crate::frame::{Frame, Rgb};
use crate::topology::Point;

pub const CONTOUR: Rgb = [0, 255, 0];
pub const HULL: Rgb = [0, 0, 255];
pub const DEFECT: Rgb = [255, 0, 0];
pub const FINGERTIP: Rgb = [0, 255, 0];
pub const DWELL: Rgb = [255, 255, 0];

/// Dwell area drawn around the tracker anchor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DwellMarker {
    pub center: Point,
    pub radius: f64,
    /// In `[0, 1]`.
    pub progress: f64,
}

/// Geometry to draw over a frame.
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct Overlay {
    pub contour: Vec<Point>,
    pub hull: Vec<Point>,
    /// `(start, end, farthest)` of each large defect.
    pub defects: Vec<(Point, Point, Point)>,
    pub fingertip: Option<Point>,
    pub dwell: Option<DwellMarker>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnnotatedFrame {
    pub frame: Frame,
    pub overlay: Overlay,
}

impl AnnotatedFrame {
    /// Draws `overlay` onto a copy of `base`.
    pub fn render(base: &Frame, overlay: Overlay) -> Self {
        let mut frame = base.clone();
        polyline(&mut frame, &overlay.contour, CONTOUR);
        polyline(&mut frame, &overlay.hull, HULL);
        for &(s, e, f) in &overlay.defects {
            line(&mut frame, s, f, DEFECT);
            line(&mut frame, f, e, DEFECT);
            fill_disc(&mut frame, f, 4, DEFECT);
            circle(&mut frame, s, 4, DEFECT);
            circle(&mut frame, e, 4, DEFECT);
        }
        if let Some(tip) = overlay.fingertip {
            fill_disc(&mut frame, tip, 6, FINGERTIP);
        }
        if let Some(d) = overlay.dwell {
            let r = d.radius.round().max(1.0) as i64;
            circle(&mut frame, d.center, r, DWELL);
            arc(&mut frame, d.center, r + 3, d.progress, DWELL);
        }
        AnnotatedFrame { frame, overlay }
    }
}

/// Bresenham line, clipped to the frame.
pub fn line(frame: &mut Frame, a: Point, b: Point, color: Rgb) {
    let (mut x, mut y) = (a.x as i64, a.y as i64);
    let (x1, y1) = (b.x as i64, b.y as i64);
    let dx = (x1 - x).abs();
    let dy = -(y1 - y).abs();
    let sx = if x < x1 { 1 } else { -1 };
    let sy = if y < y1 { 1 } else { -1 };
    let mut err = dx + dy;
    loop {
        frame.put(x, y, color);
        if x == x1 && y == y1 {
            break;
        }
        let e2 = 2 * err;
        if e2 >= dy {
            err += dy;
            x += sx;
        }
        if e2 <= dx {
            err += dx;
            y += sy;
        }
    }
}

/// Closed polyline through `points`.
pub fn polyline(frame: &mut Frame, points: &[Point], color: Rgb) {
    for (i, &p) in points.iter().enumerate() {
        line(frame, p, points[(i + 1) % points.len()], color);
    }
}

/// Midpoint circle outline.
pub fn circle(frame: &mut Frame, c: Point, r: i64, color: Rgb) {
    let (cx, cy) = (c.x as i64, c.y as i64);
    let (mut x, mut y, mut err) = (r, 0i64, 1 - r);
    while x >= y {
        for (px, py) in [(x, y), (y, x), (-y, x), (-x, y), (-x, -y), (-y, -x), (y, -x), (x, -y)] {
            frame.put(cx + px, cy + py, color);
        }
        y += 1;
        if err < 0 {
            err += 2 * y + 1;
        } else {
            x -= 1;
            err += 2 * (y - x) + 1;
        }
    }
}

pub fn fill_disc(frame: &mut Frame, c: Point, r: i64, color: Rgb) {
    let (cx, cy) = (c.x as i64, c.y as i64);
    for dy in -r..=r {
        for dx in -r..=r {
            if dx * dx + dy * dy <= r * r {
                frame.put(cx + dx, cy + dy, color);
            }
        }
    }
}

/// Clockwise arc from 12 o'clock covering `fraction` of a full turn.
pub fn arc(frame: &mut Frame, c: Point, r: i64, fraction: f64, color: Rgb) {
    let fraction = fraction.clamp(0.0, 1.0);
    let steps = (8.0 * r as f64 * fraction).ceil() as i64;
    for i in 0..=steps {
        let a = std::f64::consts::TAU * fraction * i as f64 / steps.max(1) as f64;
        let x = c.x as f64 + r as f64 * a.sin();
        let y = c.y as f64 - r as f64 * a.cos();
        frame.put(x.round() as i64, y.round() as i64, color);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn blank() -> Frame {
        Frame::filled(20, 20, [0, 0, 0]).unwrap()
    }

    fn lit(f: &Frame) -> Vec<(u32, u32)> {
        (0..f.height()).flat_map(|y| (0..f.width()).map(move |x| (x, y))).filter(|&(x, y)| f.get(x, y) != [0, 0, 0]).collect()
    }

    #[test]
    fn line_hits_both_ends_and_is_connected() {
        let mut f = blank();
        line(&mut f, Point::new(1, 2), Point::new(15, 9), CONTOUR);
        let px = lit(&f);
        assert!(px.contains(&(1, 2)) && px.contains(&(15, 9)));
        // one pixel per column for a shallow line
        assert_eq!(px.len(), 15);
    }

    #[test]
    fn drawing_clips_at_edges() {
        let mut f = blank();
        circle(&mut f, Point::new(0, 0), 8, DWELL);
        fill_disc(&mut f, Point::new(19, 19), 5, FINGERTIP);
        line(&mut f, Point::new(-5, 3), Point::new(40, 3), HULL);
        assert!(!lit(&f).is_empty());
    }

    #[test]
    fn circle_points_are_at_radius() {
        let mut f = blank();
        circle(&mut f, Point::new(10, 10), 6, DWELL);
        for (x, y) in lit(&f) {
            let d = ((x as f64 - 10.0).powi(2) + (y as f64 - 10.0).powi(2)).sqrt();
            assert!((d - 6.0).abs() < 0.75, "({x},{y}) at {d}");
        }
    }

    #[test]
    fn empty_overlay_leaves_frame_unchanged() {
        let base = Frame::from_fn(8, 8, |x, y| [x as u8, y as u8, 7]).unwrap();
        assert_eq!(AnnotatedFrame::render(&base, Overlay::default()).frame, base);
    }
}
