use super::components::{label_components, Connectivity};
use super::{BoundingBox, Point};
use crate::frame::BinaryMask;

/// Outer boundary of one blob, clockwise on screen.
#[derive(Debug, Clone, PartialEq)]
pub struct Contour {
    points: Vec<Point>,
    area: f64,
    bbox: BoundingBox,
}

impl Contour {
    /// Wraps an ordered point list. Panics if `points` is empty.
    pub fn new(points: Vec<Point>) -> Self {
        assert!(!points.is_empty(), "a contour needs at least one point");
        let mut bbox = BoundingBox::of_point(points[0]);
        let mut twice_area = 0i64;
        for (i, &p) in points.iter().enumerate() {
            bbox.include(p);
            let q = points[(i + 1) % points.len()];
            twice_area += p.x as i64 * q.y as i64 - q.x as i64 * p.y as i64;
        }
        Contour { points, area: twice_area.abs() as f64 / 2.0, bbox }
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Shoelace area of the polygon through the pixel centers.
    pub fn area(&self) -> f64 {
        self.area
    }

    pub fn bbox(&self) -> BoundingBox {
        self.bbox
    }

    pub fn translated(&self, dx: i32, dy: i32) -> Contour {
        Contour::new(self.points.iter().map(|p| p.offset(dx, dy)).collect())
    }
}

// Moore neighborhood, clockwise on screen starting west.
const RING: [(i32, i32); 8] = [(-1, 0), (-1, -1), (0, -1), (1, -1), (1, 0), (1, 1), (0, 1), (-1, 1)];

fn ring_index(dx: i32, dy: i32) -> usize {
    RING.iter().position(|&d| d == (dx, dy)).expect("not a Moore neighbor")
}

/// Traces the outer border of the 8-connected blob whose topmost-leftmost
/// pixel is `start`, using Moore-neighbor tracing. The walk stops when it is
/// back at `start` about to repeat its first step, which also closes borders
/// that pass through `start` more than once.
///
/// `start` must be a foreground pixel whose west neighbor is background.
pub fn trace_outer_border(mask: &BinaryMask, start: Point) -> Vec<Point> {
    let fg = |p: Point| mask.get_signed(p.x as i64, p.y as i64);
    debug_assert!(fg(start));

    let mut points = Vec::new();
    let mut current = start;
    // entered from the west
    let mut backtrack = 0;
    let mut first_step = None;
    let max_steps = 8 * mask.pixels().len() + 8;

    for _ in 0..max_steps {
        let step = (1..=8).map(|k| (backtrack + k) % 8).find(|&d| {
            let (dx, dy) = RING[d];
            fg(current.offset(dx, dy))
        });
        let Some(dir) = step else {
            // isolated pixel
            points.push(current);
            break;
        };
        let (bx, by) = RING[(dir + 7) % 8];
        let (cx, cy) = RING[dir];
        let next = current.offset(cx, cy);
        if current == start {
            match first_step {
                None => first_step = Some(next),
                Some(f) if f == next => break,
                Some(_) => {}
            }
        }
        points.push(current);
        backtrack = ring_index(bx - cx, by - cy);
        current = next;
    }
    points
}

/// One outer contour per 8-connected blob, in blob-label order. Holes are
/// not traced.
pub fn extract_contours(mask: &BinaryMask) -> Vec<Contour> {
    label_components(mask, Connectivity::Eight)
        .blobs
        .iter()
        .map(|blob| Contour::new(trace_outer_border(mask, blob.seed)))
        .collect()
}

/// The contour with the largest area, if it reaches `min_area`. The earliest
/// contour wins ties.
pub fn largest_contour(contours: &[Contour], min_area: f64) -> Option<&Contour> {
    let mut best: Option<&Contour> = None;
    for c in contours {
        if best.map_or(true, |b| c.area() > b.area()) {
            best = Some(c);
        }
    }
    best.filter(|c| c.area() >= min_area)
}
