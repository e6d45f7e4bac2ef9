//! Fan-out of one producer's messages to many subscribers.
//!
//! Every subscriber owns a bounded queue. A subscriber whose queue is full
//! when a message arrives is dropped from the hub: its receiver drains what
//! was already queued and then ends, and the socket handler closes the
//! connection. The producer never waits on a subscriber.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use tokio::sync::mpsc;

pub struct Hub<T> {
    capacity: usize,
    next_id: AtomicU64,
    subscribers: Mutex<Vec<(u64, mpsc::Sender<T>)>>,
}

pub struct Subscription<T> {
    pub id: u64,
    rx: mpsc::Receiver<T>,
}

impl<T> Subscription<T> {
    /// The next message, or `None` once the hub has dropped this subscriber
    /// and the backlog is drained.
    pub async fn recv(&mut self) -> Option<T> {
        self.rx.recv().await
    }

    pub fn try_recv(&mut self) -> Option<T> {
        self.rx.try_recv().ok()
    }
}

impl<T: Clone> Hub<T> {
    /// A hub whose subscribers may fall at most `capacity` messages behind.
    pub fn new(capacity: usize) -> Self {
        assert!(capacity > 0, "backlog capacity must be positive");
        Hub { capacity, next_id: AtomicU64::new(0), subscribers: Mutex::new(Vec::new()) }
    }

    pub fn subscribe(&self) -> Subscription<T> {
        let (tx, rx) = mpsc::channel(self.capacity);
        let id = self.next_id.fetch_add(1, Ordering::Relaxed);
        self.subscribers.lock().unwrap().push((id, tx));
        Subscription { id, rx }
    }

    /// Queues `msg` for every subscriber and returns how many got it.
    /// Subscribers that are gone or over their backlog are removed.
    pub fn publish(&self, msg: &T) -> usize {
        let mut subs = self.subscribers.lock().unwrap();
        subs.retain(|(id, tx)| match tx.try_send(msg.clone()) {
            Ok(()) => true,
            Err(mpsc::error::TrySendError::Full(_)) => {
                tracing::info!(subscriber = id, "backlog exceeded, disconnecting");
                false
            }
            Err(mpsc::error::TrySendError::Closed(_)) => false,
        });
        subs.len()
    }

    pub fn len(&self) -> usize {
        self.subscribers.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_subscriber_gets_every_message_in_order() {
        let hub = Hub::new(16);
        let mut a = hub.subscribe();
        let mut b = hub.subscribe();
        for i in 0..10 {
            assert_eq!(hub.publish(&i), 2);
        }
        for sub in [&mut a, &mut b] {
            let got: Vec<i32> = std::iter::from_fn(|| sub.try_recv()).collect();
            assert_eq!(got, (0..10).collect::<Vec<_>>());
        }
    }

    #[test]
    fn slow_subscriber_is_dropped_others_continue() {
        let hub = Hub::new(256);
        let mut slow = hub.subscribe();
        let mut fast = hub.subscribe();
        for i in 0..256 {
            hub.publish(&i);
            assert_eq!(fast.try_recv(), Some(i));
        }
        assert_eq!(hub.len(), 2);
        // message 257 overflows the slow queue
        assert_eq!(hub.publish(&256), 1);
        assert_eq!(fast.try_recv(), Some(256));
        let drained: Vec<i32> = std::iter::from_fn(|| slow.try_recv()).collect();
        assert_eq!(drained.len(), 256);
        let rt = tokio::runtime::Builder::new_current_thread().build().unwrap();
        assert_eq!(rt.block_on(slow.recv()), None);
        hub.publish(&257);
        assert_eq!(fast.try_recv(), Some(257));
    }

    #[test]
    fn dropped_receivers_are_pruned() {
        let hub = Hub::new(4);
        let a = hub.subscribe();
        let _b = hub.subscribe();
        drop(a);
        assert_eq!(hub.publish(&1u8), 1);
        assert_eq!(hub.len(), 1);
    }
}
