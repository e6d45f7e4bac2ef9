//! Hand segmentation, hand detection and gesture input from frame streams.
//!
//! A frame goes through three stages:
//!
//! 1. [`segmentation`] turns it into a binary mask of hand-candidate pixels,
//! 2. [`topology`] traces the largest blob's contour, its convex hull and
//!    convexity defects, and checks that the shape looks like a hand,
//! 3. [`gesture`] reads finger counts, orientation and a fingertip pointer
//!    with dwell clicks off that geometry.
//!
//! [`pipeline`] chains the stages per frame and produces events and
//! annotated frames.
//!
//! ```
//! use handinput::frame::{Frame, histogram};
//! use handinput::segmentation::{otsu_threshold, threshold_binary};
//! use handinput::topology::{convex_hull, convexity_defects, extract_contours, largest_contour};
//! use handinput::gesture::{count_fingers, large_defects, FingerCount, Orientation};
//! use handinput::synth::HandSpec;
//!
//! let frame: Frame = HandSpec::new(3, Orientation::Up).render();
//! let gray = frame.to_grayscale();
//! let mask = threshold_binary(&gray, otsu_threshold(&histogram(&gray)).unwrap());
//! let contours = extract_contours(&mask);
//! let hand = largest_contour(&contours, 100.0).unwrap();
//! let defects = convexity_defects(hand, &convex_hull(hand)).unwrap();
//! let large = large_defects(&defects, &hand.bbox(), 0.2);
//! assert_eq!(count_fingers(&large).unwrap(), FingerCount::Three);
//! ```

pub mod frame;
pub mod gesture;
pub mod pipeline;
pub mod segmentation;
pub mod synth;
pub mod topology;

pub use frame::{BinaryMask, Frame, GrayFrame, Histogram};
pub use gesture::{FingerCount, GestureEvent, GestureKind, Orientation};
pub use pipeline::{Pipeline, PipelineConfig};
pub use topology::{Contour, ConvexityDefect, Point};
