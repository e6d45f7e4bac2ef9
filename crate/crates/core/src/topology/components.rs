use serde::{Deserialize, Serialize};

use super::{BoundingBox, Point};
use crate::frame::BinaryMask;

/// Pixel adjacency used when grouping foreground pixels into blobs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum Connectivity {
    Four,
    #[default]
    Eight,
}

impl TryFrom<u8> for Connectivity {
    type Error = String;

    fn try_from(value: u8) -> Result<Self, Self::Error> {
        match value {
            4 => Ok(Connectivity::Four),
            8 => Ok(Connectivity::Eight),
            other => Err(format!("connectivity must be 4 or 8, got {other}")),
        }
    }
}

impl From<Connectivity> for u8 {
    fn from(c: Connectivity) -> u8 {
        match c {
            Connectivity::Four => 4,
            Connectivity::Eight => 8,
        }
    }
}

impl Connectivity {
    fn offsets(self) -> &'static [(i32, i32)] {
        const FOUR: [(i32, i32); 4] = [(1, 0), (-1, 0), (0, 1), (0, -1)];
        const EIGHT: [(i32, i32); 8] =
            [(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (1, -1), (-1, 1), (-1, -1)];
        match self {
            Connectivity::Four => &FOUR,
            Connectivity::Eight => &EIGHT,
        }
    }
}

/// A maximal connected foreground region.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Blob {
    /// 1-based, in row-major order of first encounter.
    pub label: u32,
    pub area: usize,
    pub bbox: BoundingBox,
    /// Topmost, then leftmost, pixel of the blob.
    pub seed: Point,
}

/// Per-pixel labels (0 = background) plus a summary of every blob.
#[derive(Debug, Clone)]
pub struct Labeling {
    width: u32,
    labels: Vec<u32>,
    pub blobs: Vec<Blob>,
}

impl Labeling {
    pub fn label_at(&self, x: u32, y: u32) -> u32 {
        self.labels[y as usize * self.width as usize + x as usize]
    }

    /// Pixels belonging to blob `label`, row-major.
    pub fn pixels_of(&self, label: u32) -> impl Iterator<Item = Point> + '_ {
        let w = self.width as usize;
        self.labels
            .iter()
            .enumerate()
            .filter(move |(_, &l)| l == label)
            .map(move |(i, _)| Point::new((i % w) as i32, (i / w) as i32))
    }
}

pub fn label_components(mask: &BinaryMask, connectivity: Connectivity) -> Labeling {
    let (w, h) = (mask.width() as usize, mask.height() as usize);
    let px = mask.pixels();
    let mut labels = vec![0u32; w * h];
    let mut blobs = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    let offsets = connectivity.offsets();

    for start in 0..w * h {
        if !px[start] || labels[start] != 0 {
            continue;
        }
        let label = blobs.len() as u32 + 1;
        let seed = Point::new((start % w) as i32, (start / w) as i32);
        let mut bbox = BoundingBox::of_point(seed);
        let mut area = 0usize;
        labels[start] = label;
        stack.push(start);
        while let Some(i) = stack.pop() {
            area += 1;
            let (x, y) = ((i % w) as i32, (i / w) as i32);
            bbox.include(Point::new(x, y));
            for &(dx, dy) in offsets {
                let (nx, ny) = (x + dx, y + dy);
                if nx < 0 || ny < 0 || nx as usize >= w || ny as usize >= h {
                    continue;
                }
                let j = ny as usize * w + nx as usize;
                if px[j] && labels[j] == 0 {
                    labels[j] = label;
                    stack.push(j);
                }
            }
        }
        blobs.push(Blob { label, area, bbox, seed });
    }
    Labeling { width: mask.width(), labels, blobs }
}

/// The blobs of `mask`; see [`label_components`] for per-pixel membership.
pub fn connected_components(mask: &BinaryMask, connectivity: Connectivity) -> Vec<Blob> {
    label_components(mask, connectivity).blobs
}
