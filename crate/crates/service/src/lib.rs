//! Runs the hand-input pipeline live and exposes it over HTTP and
//! WebSocket on a local address:
//!
//! * `GET /stream.mjpg`: annotated frames as multipart JPEG,
//! * `WS /ws/events`: a state snapshot, then one JSON event record per
//!   message, in frame order,
//! * `WS /control` or `POST /control`: control messages such as
//!   `{"set_param":{"name":"thresh","value":70}}`, each answered with
//!   `{"ok":true}` or `{"ok":false,"error":"..."}`.
//!
//! One producer thread owns the pipeline. Control messages reach it over a
//! channel and take effect between frames. Each subscriber reads from its
//! own bounded queue and is disconnected when it falls behind.

pub mod control;
mod http;
pub mod hub;
mod producer;

pub use control::{Ack, ControlMessage, Snapshot};
pub use http::{router, CLOSE_BACKLOG, MJPEG_BOUNDARY};
pub use producer::{FrameFeed, Replay, Service, ServiceOptions, Shared};

/// Serves `service` on `listener` until `shutdown` resolves.
pub async fn serve(
    listener: tokio::net::TcpListener,
    service: &Service,
    shutdown: impl std::future::Future<Output = ()> + Send + 'static,
) -> std::io::Result<()> {
    axum::serve(listener, router(service.shared())).with_graceful_shutdown(shutdown).await
}
