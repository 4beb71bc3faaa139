use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

/// Why a job stopped early.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stop {
    OutOfTime,
    Aborted,
}

/// Wall-clock ceiling for one job plus the campaign-wide abort flag.
pub struct Budget<'a> {
    deadline: Option<Instant>,
    abort: &'a AtomicBool,
}

impl<'a> Budget<'a> {
    pub fn new(limit: Option<Duration>, abort: &'a AtomicBool) -> Self {
        Budget {
            deadline: limit.map(|d| Instant::now() + d),
            abort,
        }
    }

    pub fn check(&self) -> Result<(), Stop> {
        if self.abort.load(Ordering::Relaxed) {
            return Err(Stop::Aborted);
        }
        if self.deadline.is_some_and(|d| Instant::now() > d) {
            return Err(Stop::OutOfTime);
        }
        Ok(())
    }
}
