//! Raster containers shared by every stage: color frames, 8-bit gray frames,
//! binary masks and intensity histograms.

mod codec;
mod source;

pub use codec::{decode, encode_jpeg, encode_pgm, encode_png, encode_ppm, read_frame, write_frame, ImageFormat};
pub use source::{FrameSource, SourceDescriptor, SourceError};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// One RGB pixel, channels in `[r, g, b]` order.
pub type Rgb = [u8; 3];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FrameError {
    #[error("frame dimensions must be at least 1x1, got {width}x{height}")]
    EmptyDimensions { width: u32, height: u32 },
    #[error("expected {expected} pixels for the given dimensions, got {actual}")]
    PixelCount { expected: usize, actual: usize },
}

fn check_dims(width: u32, height: u32, actual: usize) -> Result<(), FrameError> {
    if width == 0 || height == 0 {
        return Err(FrameError::EmptyDimensions { width, height });
    }
    let expected = width as usize * height as usize;
    if expected != actual {
        return Err(FrameError::PixelCount { expected, actual });
    }
    Ok(())
}

/// A color frame, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    width: u32,
    height: u32,
    pixels: Vec<Rgb>,
}

impl Frame {
    pub fn new(width: u32, height: u32, pixels: Vec<Rgb>) -> Result<Self, FrameError> {
        check_dims(width, height, pixels.len())?;
        Ok(Frame { width, height, pixels })
    }

    /// A frame filled with one color.
    pub fn filled(width: u32, height: u32, color: Rgb) -> Result<Self, FrameError> {
        Frame::new(width, height, vec![color; width as usize * height as usize])
    }

    pub fn from_fn(width: u32, height: u32, mut f: impl FnMut(u32, u32) -> Rgb) -> Result<Self, FrameError> {
        let mut pixels = Vec::with_capacity(width as usize * height as usize);
        for y in 0..height {
            for x in 0..width {
                pixels.push(f(x, y));
            }
        }
        Frame::new(width, height, pixels)
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn pixels(&self) -> &[Rgb] {
        &self.pixels
    }

    pub fn get(&self, x: u32, y: u32) -> Rgb {
        self.pixels[y as usize * self.width as usize + x as usize]
    }

    /// Sets a pixel, silently ignoring coordinates outside the frame.
    pub fn put(&mut self, x: i64, y: i64, color: Rgb) {
        if x >= 0 && y >= 0 && (x as u64) < self.width as u64 && (y as u64) < self.height as u64 {
            let idx = y as usize * self.width as usize + x as usize;
            self.pixels[idx] = color;
        }
    }

    /// Converts to gray with BT.601 luma weights, rounding half up.
    pub fn to_grayscale(&self) -> GrayFrame {
        let pixels = self.pixels.iter().map(|&p| luma(p)).collect();
        GrayFrame { width: self.width, height: self.height, pixels }
    }
}

/// `round(0.299 r + 0.587 g + 0.114 b)`, computed exactly in integers.
#[inline]
pub fn luma([r, g, b]: Rgb) -> u8 {
    let weighted = 299 * r as u32 + 587 * g as u32 + 114 * b as u32;
    ((weighted + 500) / 1000).min(255) as u8
}

/// Free-function form of [`Frame::to_grayscale`].
pub fn to_grayscale(frame: &Frame) -> GrayFrame {
    frame.to_grayscale()
}

/// An 8-bit intensity frame, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayFrame {
    width: u32,
    height: u32,
    pixels: Vec<u8>,
}

impl GrayFrame {
    pub fn new(width: u32, height: u32, pixels: Vec<u8>) -> Result<Self, FrameError> {
        check_dims(width, height, pixels.len())?;
        Ok(GrayFrame { width, height, pixels })
    }

    pub fn filled(width: u32, height: u32, value: u8) -> Result<Self, FrameError> {
        GrayFrame::new(width, height, vec![value; width as usize * height as usize])
    }

    pub fn from_fn(width: u32, height: u32, mut f: impl FnMut(u32, u32) -> u8) -> Result<Self, FrameError> {
        let mut pixels = Vec::with_capacity(width as usize * height as usize);
        for y in 0..height {
            for x in 0..width {
                pixels.push(f(x, y));
            }
        }
        GrayFrame::new(width, height, pixels)
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn get(&self, x: u32, y: u32) -> u8 {
        self.pixels[y as usize * self.width as usize + x as usize]
    }

    pub fn same_dims(&self, other: &GrayFrame) -> bool {
        self.width == other.width && self.height == other.height
    }

    /// Expands back to a color frame with `r == g == b`.
    pub fn to_frame(&self) -> Frame {
        let pixels = self.pixels.iter().map(|&v| [v, v, v]).collect();
        Frame { width: self.width, height: self.height, pixels }
    }
}

/// A binary image: `true` marks a hand-candidate pixel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryMask {
    width: u32,
    height: u32,
    pixels: Vec<bool>,
}

impl BinaryMask {
    pub fn new(width: u32, height: u32, pixels: Vec<bool>) -> Result<Self, FrameError> {
        check_dims(width, height, pixels.len())?;
        Ok(BinaryMask { width, height, pixels })
    }

    /// An all-background mask.
    pub fn empty(width: u32, height: u32) -> Result<Self, FrameError> {
        BinaryMask::new(width, height, vec![false; width as usize * height as usize])
    }

    pub fn from_fn(width: u32, height: u32, mut f: impl FnMut(u32, u32) -> bool) -> Result<Self, FrameError> {
        let mut pixels = Vec::with_capacity(width as usize * height as usize);
        for y in 0..height {
            for x in 0..width {
                pixels.push(f(x, y));
            }
        }
        BinaryMask::new(width, height, pixels)
    }

    pub(crate) fn from_raw(width: u32, height: u32, pixels: Vec<bool>) -> Self {
        debug_assert_eq!(pixels.len(), width as usize * height as usize);
        BinaryMask { width, height, pixels }
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn pixels(&self) -> &[bool] {
        &self.pixels
    }

    pub fn get(&self, x: u32, y: u32) -> bool {
        self.pixels[y as usize * self.width as usize + x as usize]
    }

    /// Like [`get`](Self::get) but treats everything outside the mask as background.
    #[inline]
    pub fn get_signed(&self, x: i64, y: i64) -> bool {
        x >= 0
            && y >= 0
            && (x as u64) < self.width as u64
            && (y as u64) < self.height as u64
            && self.pixels[y as usize * self.width as usize + x as usize]
    }

    pub fn set(&mut self, x: u32, y: u32, value: bool) {
        let idx = y as usize * self.width as usize + x as usize;
        self.pixels[idx] = value;
    }

    pub fn count_foreground(&self) -> usize {
        self.pixels.iter().filter(|&&p| p).count()
    }

    /// True if every foreground pixel of `self` is also foreground in `other`.
    pub fn is_subset_of(&self, other: &BinaryMask) -> bool {
        self.width == other.width
            && self.height == other.height
            && self.pixels.iter().zip(&other.pixels).all(|(&a, &b)| !a || b)
    }

    /// Renders as a gray frame, 255 for foreground.
    pub fn to_gray(&self) -> GrayFrame {
        let pixels = self.pixels.iter().map(|&p| if p { 255 } else { 0 }).collect();
        GrayFrame { width: self.width, height: self.height, pixels }
    }
}

/// Intensity histogram of a gray frame.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Histogram {
    bins: Vec<u64>,
    total: u64,
}

impl Histogram {
    /// Builds a histogram from explicit bin counts.
    pub fn from_bins(bins: [u64; 256]) -> Self {
        let total = bins.iter().sum();
        Histogram { bins: bins.to_vec(), total }
    }

    pub fn of(gray: &GrayFrame) -> Self {
        let mut bins = [0u64; 256];
        for &v in gray.pixels() {
            bins[v as usize] += 1;
        }
        Histogram::from_bins(bins)
    }

    pub fn bins(&self) -> &[u64] {
        &self.bins
    }

    pub fn total(&self) -> u64 {
        self.total
    }
}

pub fn histogram(gray: &GrayFrame) -> Histogram {
    Histogram::of(gray)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn luma_reference_pixels() {
        assert_eq!(luma([255, 255, 255]), 255);
        assert_eq!(luma([0, 0, 0]), 0);
        // round(0.299 * 255) = round(76.245)
        assert_eq!(luma([255, 0, 0]), 76);
        assert_eq!(luma([0, 255, 0]), 150);
        assert_eq!(luma([0, 0, 255]), 29);
    }

    #[test]
    fn luma_rounds_half_up() {
        // 0.114 * 250 = 28.5
        assert_eq!(luma([0, 0, 250]), 29);
        for r in (0..=255).step_by(17) {
            for g in (0..=255).step_by(15) {
                for b in (0..=255).step_by(5) {
                    let exact = 0.299 * r as f64 + 0.587 * g as f64 + 0.114 * b as f64;
                    let expected = (exact + 0.5 + 1e-9).floor().min(255.0) as u8;
                    assert_eq!(luma([r as u8, g as u8, b as u8]), expected, "{r} {g} {b}");
                }
            }
        }
    }

    #[test]
    fn rejects_bad_dimensions() {
        assert!(matches!(Frame::new(0, 3, vec![]), Err(FrameError::EmptyDimensions { .. })));
        assert!(matches!(
            GrayFrame::new(2, 2, vec![0; 3]),
            Err(FrameError::PixelCount { expected: 4, actual: 3 })
        ));
    }

    #[test]
    fn histogram_counts() {
        let gray = GrayFrame::filled(4, 4, 0).unwrap();
        let h = histogram(&gray);
        assert_eq!(h.bins()[0], 16);
        assert_eq!(h.total(), 16);
        assert!(h.bins()[1..].iter().all(|&b| b == 0));

        let gray = GrayFrame::new(2, 2, vec![10, 10, 200, 200]).unwrap();
        let h = histogram(&gray);
        assert_eq!(h.bins()[10], 2);
        assert_eq!(h.bins()[200], 2);
        assert_eq!(h.total(), 4);
    }

    #[test]
    fn mask_subset() {
        let a = BinaryMask::from_fn(3, 1, |x, _| x == 1).unwrap();
        let b = BinaryMask::from_fn(3, 1, |x, _| x >= 1).unwrap();
        assert!(a.is_subset_of(&b));
        assert!(!b.is_subset_of(&a));
    }
}
