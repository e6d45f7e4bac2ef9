use std::convert::Infallible;
use std::sync::Arc;

use axum::body::{Body, Bytes};
use axum::extract::ws::{CloseFrame, Message, WebSocket, WebSocketUpgrade};
use axum::extract::State;
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::get;
use axum::{Json, Router};

use crate::control::{Ack, ControlMessage};
use crate::producer::Shared;

pub const MJPEG_BOUNDARY: &str = "frame";

/// Policy-violation close code sent to a subscriber that fell too far behind.
pub const CLOSE_BACKLOG: u16 = 1008;

pub fn router(shared: Arc<Shared>) -> Router {
    Router::new()
        .route("/", get(index))
        .route("/stream.mjpg", get(mjpeg))
        .route("/ws/events", get(events_ws))
        .route("/control", get(control_ws).post(control_post))
        .route("/snapshot", get(snapshot))
        .with_state(shared)
}

async fn index() -> &'static str {
    "handinput service\n\
     GET  /stream.mjpg  annotated frames (multipart JPEG)\n\
     WS   /ws/events    snapshot, then one JSON event per message\n\
     WS   /control      one control message in, one ack out\n\
     POST /control      same, over plain HTTP\n\
     GET  /snapshot     current state\n"
}

async fn snapshot(State(shared): State<Arc<Shared>>) -> Response {
    json_text(StatusCode::OK, shared.snapshot().to_json())
}

fn json_text(status: StatusCode, body: String) -> Response {
    (status, [(header::CONTENT_TYPE, "application/json")], body).into_response()
}

/// One multipart part per JPEG.
fn mjpeg_part(jpeg: &[u8]) -> Bytes {
    let head = format!(
        "--{MJPEG_BOUNDARY}\r\nContent-Type: image/jpeg\r\nContent-Length: {}\r\n\r\n",
        jpeg.len()
    );
    let mut part = Vec::with_capacity(head.len() + jpeg.len() + 2);
    part.extend_from_slice(head.as_bytes());
    part.extend_from_slice(jpeg);
    part.extend_from_slice(b"\r\n");
    Bytes::from(part)
}

async fn mjpeg(State(shared): State<Arc<Shared>>) -> Response {
    let sub = shared.frames.subscribe();
    let parts = futures::stream::unfold(sub, |mut sub| async move {
        let jpeg = sub.recv().await?;
        Some((Ok::<_, Infallible>(mjpeg_part(&jpeg)), sub))
    });
    Response::builder()
        .header(header::CONTENT_TYPE, format!("multipart/x-mixed-replace; boundary={MJPEG_BOUNDARY}"))
        .header(header::CACHE_CONTROL, "no-cache")
        .body(Body::from_stream(parts))
        .expect("static headers are valid")
}

async fn events_ws(ws: WebSocketUpgrade, State(shared): State<Arc<Shared>>) -> Response {
    ws.on_upgrade(move |socket| events_session(socket, shared))
}

async fn events_session(mut socket: WebSocket, shared: Arc<Shared>) {
    // subscribe first so nothing published after the snapshot is missed
    let mut sub = shared.events.subscribe();
    if socket.send(Message::Text(shared.snapshot().to_json().into())).await.is_err() {
        return;
    }
    loop {
        tokio::select! {
            msg = sub.recv() => match msg {
                Some(text) => {
                    if socket.send(Message::Text(text.as_ref().into())).await.is_err() {
                        break;
                    }
                }
                None => {
                    let frame = CloseFrame { code: CLOSE_BACKLOG, reason: "event backlog exceeded".into() };
                    let _ = socket.send(Message::Close(Some(frame))).await;
                    break;
                }
            },
            incoming = socket.recv() => match incoming {
                Some(Ok(Message::Close(_))) | Some(Err(_)) | None => break,
                Some(Ok(_)) => {}
            },
        }
    }
}

async fn control_ws(ws: WebSocketUpgrade, State(shared): State<Arc<Shared>>) -> Response {
    ws.on_upgrade(move |socket| control_session(socket, shared))
}

async fn control_session(mut socket: WebSocket, shared: Arc<Shared>) {
    while let Some(Ok(msg)) = socket.recv().await {
        let text = match msg {
            Message::Text(t) => t.to_string(),
            Message::Binary(b) => String::from_utf8_lossy(&b).into_owned(),
            Message::Close(_) => break,
            _ => continue,
        };
        let ack = handle_control(&shared, &text).await;
        if socket.send(Message::Text(ack.to_json().into())).await.is_err() {
            break;
        }
    }
}

async fn control_post(State(shared): State<Arc<Shared>>, body: String) -> Response {
    let ack = handle_control(&shared, &body).await;
    let status = if ack.ok { StatusCode::OK } else { StatusCode::BAD_REQUEST };
    (status, Json(ack)).into_response()
}

async fn handle_control(shared: &Shared, text: &str) -> Ack {
    match ControlMessage::parse(text) {
        Ok(msg) => shared.control(msg).await,
        Err(ack) => ack,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn part_framing() {
        let part = mjpeg_part(&[0xFF, 0xD8, 0xFF, 0xD9]);
        let text = String::from_utf8_lossy(&part);
        assert!(text.starts_with("--frame\r\nContent-Type: image/jpeg\r\nContent-Length: 4\r\n\r\n"));
        assert!(part.ends_with(&[0xFF, 0xD9, b'\r', b'\n']));
    }
}
