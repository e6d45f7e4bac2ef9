use super::{cross, Contour, Point};

/// Convex hull of a contour as indices into its points, clockwise on screen,
/// with no collinear vertices. The first vertex is the one with the smallest
/// contour index, so for a simple clockwise contour the indices increase.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hull {
    pub indices: Vec<usize>,
}

impl Hull {
    pub fn points<'a>(&'a self, contour: &'a Contour) -> impl Iterator<Item = Point> + 'a {
        self.indices.iter().map(|&i| contour.points()[i])
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

/// Andrew's monotone chain over arbitrary points. Returns indices of the
/// strict hull vertices, clockwise on screen (positive shoelace sum with y
/// pointing down). Repeated coordinates resolve to their lowest index.
pub fn convex_hull_of_points(points: &[Point]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by_key(|&i| (points[i].x, points[i].y, i));
    order.dedup_by_key(|&mut i| points[i]);

    if order.len() <= 2 {
        return order;
    }

    let mut hull: Vec<usize> = Vec::with_capacity(order.len() + 1);
    let build = |hull: &mut Vec<usize>, i: usize, floor: usize| {
        while hull.len() >= floor + 2 {
            let (a, b) = (points[hull[hull.len() - 2]], points[hull[hull.len() - 1]]);
            if cross(a, b, points[i]) > 0 {
                break;
            }
            hull.pop();
        }
        hull.push(i);
    };
    for &i in &order {
        build(&mut hull, i, 0);
    }
    let lower_len = hull.len() - 1;
    for &i in order.iter().rev().skip(1) {
        build(&mut hull, i, lower_len);
    }
    hull.pop();
    hull
}

pub fn convex_hull(contour: &Contour) -> Hull {
    let mut indices = convex_hull_of_points(contour.points());
    if let Some(first) = indices.iter().enumerate().min_by_key(|&(_, &i)| i).map(|(pos, _)| pos) {
        indices.rotate_left(first);
    }
    Hull { indices }
}
