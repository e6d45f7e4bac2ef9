//! Binary PGM (P5), binary PPM (P6) and PNG, 8-bit channels only.

use std::io::Cursor;
use std::path::Path;

use super::{Frame, GrayFrame};
use crate::frame::source::SourceError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImageFormat {
    Pgm,
    Ppm,
    Png,
    Jpeg,
}

impl ImageFormat {
    /// Sniffs the format from the leading bytes of a file.
    pub fn sniff(bytes: &[u8]) -> Option<Self> {
        match bytes {
            [b'P', b'5', ..] => Some(ImageFormat::Pgm),
            [b'P', b'6', ..] => Some(ImageFormat::Ppm),
            [0x89, b'P', b'N', b'G', ..] => Some(ImageFormat::Png),
            [0xFF, 0xD8, 0xFF, ..] => Some(ImageFormat::Jpeg),
            _ => None,
        }
    }

    /// Picks a format from a file extension.
    pub fn from_path(path: &Path) -> Option<Self> {
        let ext = path.extension()?.to_str()?.to_ascii_lowercase();
        match ext.as_str() {
            "pgm" => Some(ImageFormat::Pgm),
            "ppm" => Some(ImageFormat::Ppm),
            "png" => Some(ImageFormat::Png),
            "jpg" | "jpeg" => Some(ImageFormat::Jpeg),
            _ => None,
        }
    }
}

/// Decodes an in-memory PGM, PPM, PNG or JPEG image into an RGB frame.
pub fn decode(bytes: &[u8]) -> Result<Frame, SourceError> {
    match ImageFormat::sniff(bytes) {
        Some(ImageFormat::Pgm) => decode_pnm(bytes, 1),
        Some(ImageFormat::Ppm) => decode_pnm(bytes, 3),
        Some(ImageFormat::Png) => decode_with(bytes, image::ImageFormat::Png),
        Some(ImageFormat::Jpeg) => decode_with(bytes, image::ImageFormat::Jpeg),
        None => Err(SourceError::UnsupportedFormat("unrecognized image signature".into())),
    }
}

pub fn read_frame(path: &Path) -> Result<Frame, SourceError> {
    let bytes = std::fs::read(path).map_err(|e| SourceError::from_io(path, e))?;
    decode(&bytes).map_err(|e| e.with_path(path))
}

/// Writes a frame in the format implied by the path's extension. PGM output
/// stores the frame's luma.
pub fn write_frame(path: &Path, frame: &Frame) -> Result<(), SourceError> {
    let bytes = match ImageFormat::from_path(path) {
        Some(ImageFormat::Pgm) => encode_pgm(&frame.to_grayscale()),
        Some(ImageFormat::Ppm) => encode_ppm(frame),
        Some(ImageFormat::Png) => encode_png(frame)?,
        Some(ImageFormat::Jpeg) => encode_jpeg(frame, 90)?,
        None => return Err(SourceError::UnsupportedFormat(path.display().to_string())),
    };
    std::fs::write(path, bytes).map_err(|e| SourceError::from_io(path, e))
}

pub fn encode_pgm(gray: &GrayFrame) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", gray.width(), gray.height()).into_bytes();
    out.extend_from_slice(gray.pixels());
    out
}

pub fn encode_ppm(frame: &Frame) -> Vec<u8> {
    let mut out = format!("P6\n{} {}\n255\n", frame.width(), frame.height()).into_bytes();
    out.reserve(frame.pixels().len() * 3);
    for p in frame.pixels() {
        out.extend_from_slice(p);
    }
    out
}

pub fn encode_png(frame: &Frame) -> Result<Vec<u8>, SourceError> {
    let raw: Vec<u8> = frame.pixels().iter().flatten().copied().collect();
    let img = image::RgbImage::from_raw(frame.width(), frame.height(), raw)
        .expect("pixel count checked by Frame");
    let mut out = Cursor::new(Vec::new());
    img.write_to(&mut out, image::ImageFormat::Png)
        .map_err(|e| SourceError::Decode(e.to_string()))?;
    Ok(out.into_inner())
}

/// Baseline JPEG at `quality` (1 to 100).
pub fn encode_jpeg(frame: &Frame, quality: u8) -> Result<Vec<u8>, SourceError> {
    let raw: Vec<u8> = frame.pixels().iter().flatten().copied().collect();
    let mut out = Vec::new();
    image::codecs::jpeg::JpegEncoder::new_with_quality(&mut out, quality.clamp(1, 100))
        .encode(&raw, frame.width(), frame.height(), image::ExtendedColorType::Rgb8)
        .map_err(|e| SourceError::Decode(e.to_string()))?;
    Ok(out)
}

fn decode_with(bytes: &[u8], format: image::ImageFormat) -> Result<Frame, SourceError> {
    let img = image::load_from_memory_with_format(bytes, format)
        .map_err(|e| SourceError::Decode(e.to_string()))?;
    let rgb = img.to_rgb8();
    let (w, h) = rgb.dimensions();
    let pixels = rgb.pixels().map(|p| p.0).collect();
    Frame::new(w, h, pixels).map_err(|e| SourceError::Decode(e.to_string()))
}

struct HeaderReader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl HeaderReader<'_> {
    fn skip_space_and_comments(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b == b'#' {
                while self.bytes.get(self.pos).is_some_and(|&c| c != b'\n') {
                    self.pos += 1;
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn number(&mut self) -> Result<u32, SourceError> {
        self.skip_space_and_comments();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| SourceError::Decode("malformed netpbm header".into()))
    }
}

fn decode_pnm(bytes: &[u8], channels: usize) -> Result<Frame, SourceError> {
    let mut header = HeaderReader { bytes, pos: 2 };
    let width = header.number()?;
    let height = header.number()?;
    let maxval = header.number()?;
    if maxval == 0 || maxval > 255 {
        return Err(SourceError::UnsupportedFormat(format!("netpbm maxval {maxval} (8-bit only)")));
    }
    // exactly one whitespace byte separates the header from the raster
    if !bytes.get(header.pos).is_some_and(u8::is_ascii_whitespace) {
        return Err(SourceError::Decode("malformed netpbm header".into()));
    }
    let start = header.pos + 1;
    let len = width as usize * height as usize * channels;
    let raster = bytes
        .get(start..start + len)
        .ok_or_else(|| SourceError::Decode("truncated netpbm raster".into()))?;
    let scale = |v: u8| -> u8 {
        if maxval == 255 {
            v
        } else {
            ((v.min(maxval as u8) as u32 * 255 + maxval / 2) / maxval) as u8
        }
    };
    let pixels = if channels == 1 {
        raster.iter().map(|&v| {
            let v = scale(v);
            [v, v, v]
        }).collect()
    } else {
        raster.chunks_exact(3).map(|c| [scale(c[0]), scale(c[1]), scale(c[2])]).collect()
    };
    Frame::new(width, height, pixels).map_err(|e| SourceError::Decode(e.to_string()))
}
