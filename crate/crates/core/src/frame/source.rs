use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use thiserror::Error;

use super::codec::read_frame;
use super::Frame;

#[derive(Debug, Error)]
pub enum SourceError {
    #[error("frame source not found: {0}")]
    SourceNotFound(PathBuf),
    #[error("unsupported image format: {0}")]
    UnsupportedFormat(String),
    #[error("failed to decode image: {0}")]
    Decode(String),
    #[error("camera {0} unavailable: this build has no capture backend")]
    CameraUnavailable(u32),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl SourceError {
    pub(crate) fn from_io(path: &Path, source: std::io::Error) -> Self {
        if source.kind() == std::io::ErrorKind::NotFound {
            SourceError::SourceNotFound(path.to_path_buf())
        } else {
            SourceError::Io { path: path.to_path_buf(), source }
        }
    }

    pub(crate) fn with_path(self, path: &Path) -> Self {
        match self {
            SourceError::UnsupportedFormat(what) => {
                SourceError::UnsupportedFormat(format!("{}: {what}", path.display()))
            }
            SourceError::Decode(what) => SourceError::Decode(format!("{}: {what}", path.display())),
            other => other,
        }
    }
}

/// Where frames come from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SourceDescriptor {
    /// A path: a directory of images or a single image file.
    Path(PathBuf),
    /// A capture device, written `camera:<id>`.
    Camera(u32),
}

impl FromStr for SourceDescriptor {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some(id) = s.strip_prefix("camera:").and_then(|id| id.parse().ok()) {
            return Ok(SourceDescriptor::Camera(id));
        }
        Ok(SourceDescriptor::Path(PathBuf::from(s)))
    }
}

impl fmt::Display for SourceDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SourceDescriptor::Path(p) => write!(f, "{}", p.display()),
            SourceDescriptor::Camera(id) => write!(f, "camera:{id}"),
        }
    }
}

enum Inner {
    Files(std::vec::IntoIter<PathBuf>),
    Memory(std::vec::IntoIter<Frame>),
}

/// An ordered, single-consumer stream of `(frame index, frame)` pairs.
///
/// Directory entries are yielded in lexicographic file-name order. A file
/// that fails to decode is yielded as an error item and still consumes an
/// index, so indices always track position in the source.
pub struct FrameSource {
    inner: Inner,
    next_index: u64,
}

impl FrameSource {
    pub fn open(descriptor: &SourceDescriptor) -> Result<Self, SourceError> {
        match descriptor {
            SourceDescriptor::Camera(id) => Err(SourceError::CameraUnavailable(*id)),
            SourceDescriptor::Path(path) => FrameSource::open_path(path),
        }
    }

    pub fn open_path(path: &Path) -> Result<Self, SourceError> {
        let meta = std::fs::metadata(path).map_err(|e| SourceError::from_io(path, e))?;
        let files = if meta.is_dir() {
            let mut files = Vec::new();
            for entry in std::fs::read_dir(path).map_err(|e| SourceError::from_io(path, e))? {
                let entry = entry.map_err(|e| SourceError::from_io(path, e))?;
                let file_type = entry.file_type().map_err(|e| SourceError::from_io(path, e))?;
                if file_type.is_file() && !entry.file_name().to_string_lossy().starts_with('.') {
                    files.push(entry.path());
                }
            }
            files.sort_by(|a, b| a.file_name().cmp(&b.file_name()));
            files
        } else {
            vec![path.to_path_buf()]
        };
        Ok(FrameSource { inner: Inner::Files(files.into_iter()), next_index: 0 })
    }

    /// Wraps frames already in memory.
    pub fn from_frames(frames: Vec<Frame>) -> Self {
        FrameSource { inner: Inner::Memory(frames.into_iter()), next_index: 0 }
    }
}

impl Iterator for FrameSource {
    type Item = (u64, Result<Frame, SourceError>);

    fn next(&mut self) -> Option<Self::Item> {
        let frame = match &mut self.inner {
            Inner::Files(files) => read_frame(&files.next()?),
            Inner::Memory(frames) => Ok(frames.next()?),
        };
        let index = self.next_index;
        self.next_index += 1;
        Some((index, frame))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::codec::encode_ppm;

    #[test]
    fn directory_frames_in_name_order() {
        let dir = tempfile::tempdir().unwrap();
        let a = Frame::filled(2, 2, [1, 2, 3]).unwrap();
        let b = Frame::filled(2, 2, [4, 5, 6]).unwrap();
        std::fs::write(dir.path().join("f002.ppm"), encode_ppm(&b)).unwrap();
        std::fs::write(dir.path().join("f001.ppm"), encode_ppm(&a)).unwrap();

        let got: Vec<_> = FrameSource::open_path(dir.path())
            .unwrap()
            .map(|(i, f)| (i, f.unwrap()))
            .collect();
        assert_eq!(got, vec![(0, a), (1, b)]);
    }

    #[test]
    fn empty_directory_is_empty_stream() {
        let dir = tempfile::tempdir().unwrap();
        assert_eq!(FrameSource::open_path(dir.path()).unwrap().count(), 0);
    }

    #[test]
    fn missing_path() {
        let err = FrameSource::open_path(Path::new("/definitely/not/here")).err().unwrap();
        assert!(matches!(err, SourceError::SourceNotFound(_)));
    }

    #[test]
    fn unsupported_file_is_an_item_error() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join("notes.txt"), b"hello").unwrap();
        let items: Vec<_> = FrameSource::open_path(dir.path()).unwrap().collect();
        assert_eq!(items.len(), 1);
        assert!(matches!(items[0].1, Err(SourceError::UnsupportedFormat(_))));
    }

    #[test]
    fn descriptor_parsing() {
        assert_eq!("camera:2".parse::<SourceDescriptor>().unwrap(), SourceDescriptor::Camera(2));
        assert_eq!(
            "frames/".parse::<SourceDescriptor>().unwrap(),
            SourceDescriptor::Path(PathBuf::from("frames/"))
        );
        assert!(matches!(
            FrameSource::open(&SourceDescriptor::Camera(0)),
            Err(SourceError::CameraUnavailable(0))
        ));
    }
}
