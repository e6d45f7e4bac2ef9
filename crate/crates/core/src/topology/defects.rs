use serde::{Deserialize, Serialize};

use super::{cross, Contour, Hull, Point, TopologyError};

/// Where a contour sags away from one hull edge.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvexityDefect {
    pub start_index: usize,
    pub end_index: usize,
    pub farthest_index: usize,
    /// Euclidean distance from the farthest point to the hull edge, in pixels.
    pub depth: f64,
}

impl ConvexityDefect {
    pub fn start(&self, contour: &Contour) -> Point {
        contour.points()[self.start_index]
    }

    pub fn end(&self, contour: &Contour) -> Point {
        contour.points()[self.end_index]
    }

    pub fn farthest(&self, contour: &Contour) -> Point {
        contour.points()[self.farthest_index]
    }
}

/// Squared distance from `p` to segment `a-b` as an exact fraction
/// `num / den`, plus the distance itself.
fn squared_distance(p: Point, a: Point, b: Point) -> (i128, i128, f64) {
    let (abx, aby) = ((b.x - a.x) as i128, (b.y - a.y) as i128);
    let (apx, apy) = ((p.x - a.x) as i128, (p.y - a.y) as i128);
    let len2 = abx * abx + aby * aby;
    let dot = apx * abx + apy * aby;
    if len2 == 0 || dot <= 0 {
        let d2 = apx * apx + apy * apy;
        (d2, 1, (d2 as f64).sqrt())
    } else if dot >= len2 {
        let (bpx, bpy) = ((p.x - b.x) as i128, (p.y - b.y) as i128);
        let d2 = bpx * bpx + bpy * bpy;
        (d2, 1, (d2 as f64).sqrt())
    } else {
        let c = cross(a, b, p) as i128;
        (c * c, len2, c.abs() as f64 / (len2 as f64).sqrt())
    }
}

/// Distance from `p` to the closed segment `a-b`.
pub fn point_segment_distance(p: Point, a: Point, b: Point) -> f64 {
    squared_distance(p, a, b).2
}

/// One defect per hull edge whose contour arc strays from it.
///
/// For consecutive hull vertices `s -> e` the arc is every contour index
/// strictly between them walking forward (cyclically). The defect's
/// farthest point maximizes the distance to segment `s-e`; ties go to the
/// lowest index. Edges whose arc lies entirely on the segment produce
/// nothing.
pub fn convexity_defects(contour: &Contour, hull: &Hull) -> Result<Vec<ConvexityDefect>, TopologyError> {
    let points = contour.points();
    let n = points.len();
    if n < 3 {
        return Err(TopologyError::TooFewPoints(n));
    }
    let h = hull.indices.len();
    if h < 2 {
        return Ok(Vec::new());
    }

    let mut defects = Vec::new();
    for k in 0..h {
        let (start, end) = (hull.indices[k], hull.indices[(k + 1) % h]);
        let (a, b) = (points[start], points[end]);
        let mut best: Option<(usize, (i128, i128, f64))> = None;
        let mut i = (start + 1) % n;
        while i != end {
            let d = squared_distance(points[i], a, b);
            let better = match best {
                None => d.0 > 0,
                Some((bi, bd)) => {
                    let (lhs, rhs) = (d.0 * bd.1, bd.0 * d.1);
                    lhs > rhs || (lhs == rhs && i < bi)
                }
            };
            if better {
                best = Some((i, d));
            }
            i = (i + 1) % n;
        }
        if let Some((farthest_index, d)) = best {
            defects.push(ConvexityDefect {
                start_index: start,
                end_index: end,
                farthest_index,
                depth: d.2,
            });
        }
    }
    Ok(defects)
}
