use std::path::Path;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::{mpsc, Arc};
use std::thread::JoinHandle;
use std::time::{Duration, Instant};

use axum::body::Bytes;
use handinput::frame::{encode_jpeg, FrameSource, SourceError};
use handinput::pipeline::Pipeline;
use handinput::segmentation::{calibrate_color_range, Method};
use handinput::Frame;
use tokio::sync::{oneshot, watch};

use crate::control::{Ack, ControlMessage, Snapshot};
use crate::hub::Hub;

/// Where the live pipeline gets its frames.
pub trait FrameFeed: Send + 'static {
    /// `None` once the feed is exhausted.
    fn next_frame(&mut self) -> Option<Result<Frame, SourceError>>;
}

/// Replays a fixed list of frames, optionally forever.
pub struct Replay {
    frames: Vec<Frame>,
    pos: usize,
    looping: bool,
}

impl Replay {
    pub fn new(frames: Vec<Frame>, looping: bool) -> Self {
        Replay { frames, pos: 0, looping }
    }

    /// Loads every readable image under `path`, in name order.
    pub fn from_path(path: &Path, looping: bool) -> Result<Self, SourceError> {
        let mut frames = Vec::new();
        for (_, item) in FrameSource::open_path(path)? {
            match item {
                Ok(f) => frames.push(f),
                Err(e) => tracing::warn!("skipping frame: {e}"),
            }
        }
        if frames.is_empty() {
            return Err(SourceError::SourceNotFound(path.to_owned()));
        }
        Ok(Replay::new(frames, looping))
    }
}

impl FrameFeed for Replay {
    fn next_frame(&mut self) -> Option<Result<Frame, SourceError>> {
        if self.pos == self.frames.len() {
            if !self.looping || self.frames.is_empty() {
                return None;
            }
            self.pos = 0;
        }
        self.pos += 1;
        Some(Ok(self.frames[self.pos - 1].clone()))
    }
}

impl FrameFeed for FrameSource {
    fn next_frame(&mut self) -> Option<Result<Frame, SourceError>> {
        self.next().map(|(_, item)| item)
    }
}

#[derive(Debug, Clone)]
pub struct ServiceOptions {
    /// Frame pacing; `None` runs as fast as frames can be processed.
    pub fps: Option<f64>,
    pub event_backlog: usize,
    pub frame_backlog: usize,
    pub jpeg_quality: u8,
}

impl Default for ServiceOptions {
    fn default() -> Self {
        ServiceOptions { fps: Some(30.0), event_backlog: 256, frame_backlog: 8, jpeg_quality: 80 }
    }
}

struct ControlRequest {
    msg: ControlMessage,
    reply: oneshot::Sender<Ack>,
}

/// What socket handlers see of the running service.
pub struct Shared {
    /// JSON text, one event record or snapshot per message.
    pub events: Hub<Arc<str>>,
    /// JPEG-encoded annotated frames.
    pub frames: Hub<Bytes>,
    state: watch::Receiver<Snapshot>,
    control: mpsc::Sender<ControlRequest>,
}

impl Shared {
    pub fn snapshot(&self) -> Snapshot {
        let mut s = self.state.borrow().clone();
        s.subscribers = self.events.len();
        s
    }

    /// Hands `msg` to the producer, which applies it before the next frame.
    pub async fn control(&self, msg: ControlMessage) -> Ack {
        let (reply, rx) = oneshot::channel();
        if self.control.send(ControlRequest { msg, reply }).is_err() {
            return Ack::rejected("service is shutting down");
        }
        rx.await.unwrap_or_else(|_| Ack::rejected("service is shutting down"))
    }
}

/// The pipeline running on its own thread, plus the handles clients use.
pub struct Service {
    shared: Arc<Shared>,
    stop: Arc<AtomicBool>,
    thread: Option<JoinHandle<()>>,
}

impl Service {
    pub fn start(mut pipeline: Pipeline, feed: impl FrameFeed, options: ServiceOptions) -> Service {
        let mut cfg = pipeline.config().clone();
        cfg.output.annotate = true;
        pipeline.set_config(cfg).expect("enabling annotation keeps a valid config valid");

        let (control_tx, control_rx) = mpsc::channel();
        let initial = Snapshot {
            config: pipeline.config().clone(),
            subscribers: 0,
            last_frame: None,
            calibrating: false,
            calibrated: pipeline.aux().calibrated_range.is_some(),
            has_background: pipeline.aux().background.is_some(),
        };
        let (state_tx, state_rx) = watch::channel(initial);
        let shared = Arc::new(Shared {
            events: Hub::new(options.event_backlog),
            frames: Hub::new(options.frame_backlog),
            state: state_rx,
            control: control_tx,
        });
        let stop = Arc::new(AtomicBool::new(false));
        let producer = Producer {
            pipeline,
            feed: Box::new(feed),
            shared: shared.clone(),
            state: state_tx,
            control: control_rx,
            stop: stop.clone(),
            options,
            next_index: 0,
            calibration: None,
            want_background: false,
        };
        let thread = std::thread::Builder::new()
            .name("handinput-producer".into())
            .spawn(move || producer.run())
            .expect("spawn producer thread");
        Service { shared, stop, thread: Some(thread) }
    }

    pub fn shared(&self) -> Arc<Shared> {
        self.shared.clone()
    }

    pub fn shutdown(mut self) {
        self.stop_and_join();
    }

    fn stop_and_join(&mut self) {
        self.stop.store(true, Ordering::Relaxed);
        if let Some(t) = self.thread.take() {
            let _ = t.join();
        }
    }
}

impl Drop for Service {
    fn drop(&mut self) {
        self.stop_and_join();
    }
}

struct Producer {
    pipeline: Pipeline,
    feed: Box<dyn FrameFeed>,
    shared: Arc<Shared>,
    state: watch::Sender<Snapshot>,
    control: mpsc::Receiver<ControlRequest>,
    stop: Arc<AtomicBool>,
    options: ServiceOptions,
    next_index: u64,
    /// Frames wanted and frames collected so far.
    calibration: Option<(u32, Vec<Frame>)>,
    want_background: bool,
}

const IDLE_POLL: Duration = Duration::from_millis(20);

impl Producer {
    fn run(mut self) {
        let period = self.options.fps.map(|fps| Duration::from_secs_f64(1.0 / fps));
        while !self.stop.load(Ordering::Relaxed) {
            let started = Instant::now();
            while let Ok(req) = self.control.try_recv() {
                self.apply(req);
            }
            match self.feed.next_frame() {
                Some(Ok(frame)) => self.step(frame),
                Some(Err(e)) => {
                    tracing::warn!("frame {}: {e}", self.next_index);
                    self.next_index += 1;
                }
                None => {
                    // nothing left to play; keep answering control
                    if !self.wait_for_control(Instant::now() + IDLE_POLL) {
                        return;
                    }
                    continue;
                }
            }
            if let Some(p) = period {
                if !self.wait_for_control(started + p) {
                    return;
                }
            }
        }
    }

    /// Applies control messages until `deadline`. False once every client
    /// handle is gone.
    fn wait_for_control(&mut self, deadline: Instant) -> bool {
        loop {
            let now = Instant::now();
            if now >= deadline || self.stop.load(Ordering::Relaxed) {
                return true;
            }
            match self.control.recv_timeout((deadline - now).min(IDLE_POLL)) {
                Ok(req) => self.apply(req),
                Err(mpsc::RecvTimeoutError::Timeout) => {}
                Err(mpsc::RecvTimeoutError::Disconnected) => return false,
            }
        }
    }

    fn step(&mut self, frame: Frame) {
        let index = self.next_index;
        self.next_index += 1;

        let mut aux_changed = false;
        if self.want_background {
            self.pipeline.aux_mut().background = Some(frame.to_grayscale());
            self.want_background = false;
            aux_changed = true;
        }
        if let Some((wanted, frames)) = &mut self.calibration {
            frames.push(frame.clone());
            if frames.len() as u32 >= *wanted {
                match calibrate_color_range(frames, &self.pipeline.config().segmentation) {
                    Ok(range) => self.pipeline.aux_mut().calibrated_range = Some(range),
                    Err(e) => tracing::warn!("calibration failed: {e}"),
                }
                self.calibration = None;
                aux_changed = true;
            }
        }

        let out = self.pipeline.process_frame(index, &frame);
        for d in &out.diagnostics {
            tracing::debug!("frame {index}: {d}");
        }
        for rec in out.records(self.pipeline.config()) {
            self.shared.events.publish(&Arc::from(rec.to_json_line()));
        }
        if !self.shared.frames.is_empty() {
            let shown = out.annotated.as_ref().map_or(&frame, |a| &a.frame);
            match encode_jpeg(shown, self.options.jpeg_quality) {
                Ok(jpeg) => {
                    self.shared.frames.publish(&Bytes::from(jpeg));
                }
                Err(e) => tracing::warn!("jpeg encoding failed: {e}"),
            }
        }
        self.state.send_modify(|s| s.last_frame = Some(index));
        if aux_changed {
            self.broadcast_state();
        }
    }

    fn apply(&mut self, req: ControlRequest) {
        let ack = match self.check_and_apply(req.msg) {
            Ok(()) => {
                self.broadcast_state();
                Ack::ok()
            }
            Err(e) => Ack::rejected(e),
        };
        let _ = req.reply.send(ack);
    }

    fn check_and_apply(&mut self, msg: ControlMessage) -> Result<(), String> {
        let mut cfg = self.pipeline.config().clone();
        match msg {
            ControlMessage::SetMethod { method } => {
                let aux = self.pipeline.aux();
                let missing = match method {
                    Method::Calibrated if aux.calibrated_range.is_none() => Some("run start_calibration first"),
                    Method::BackgroundSub if aux.background.is_none() => Some("capture a background first"),
                    Method::ColorRange if cfg.segmentation.color_range.is_none() => {
                        Some("no color range is configured")
                    }
                    _ => None,
                };
                if let Some(hint) = missing {
                    return Err(format!("method `{method}` is not ready: {hint}"));
                }
                cfg.segmentation.method = method;
            }
            ControlMessage::SetParam { name, value } => cfg.set_param(&name, &value)?,
            ControlMessage::SetMode { mode } => cfg.gesture.mode = mode,
            ControlMessage::StartCalibration { n_frames } => {
                if n_frames == 0 {
                    return Err("out of range".into());
                }
                if self.calibration.is_some() {
                    return Err("calibration already in progress".into());
                }
                self.calibration = Some((n_frames, Vec::new()));
            }
            ControlMessage::SetBackground {} => self.want_background = true,
        }
        self.pipeline.set_config(cfg).map_err(|e| e.to_string())
    }

    fn broadcast_state(&mut self) {
        let calibrating = self.calibration.is_some();
        let calibrated = self.pipeline.aux().calibrated_range.is_some();
        let has_background = self.pipeline.aux().background.is_some();
        let config = self.pipeline.config().clone();
        self.state.send_modify(|s| {
            s.config = config;
            s.calibrating = calibrating;
            s.calibrated = calibrated;
            s.has_background = has_background;
        });
        let snapshot = self.shared.snapshot();
        self.shared.events.publish(&Arc::from(snapshot.to_json()));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn replay_loops_or_ends() {
        let f = Frame::filled(2, 2, [1, 2, 3]).unwrap();
        let mut once = Replay::new(vec![f.clone(), f.clone()], false);
        assert!(once.next_frame().is_some() && once.next_frame().is_some());
        assert!(once.next_frame().is_none());
        let mut looped = Replay::new(vec![f], true);
        assert!((0..5).all(|_| looped.next_frame().is_some()));
        assert!(Replay::new(vec![], true).next_frame().is_none());
    }
}
