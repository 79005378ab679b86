use std::time::{Duration, Instant};

use crate::error::{MpcError, Result};

/// Cooperative cancellation point checked by solvers at iteration boundaries.
#[derive(Debug, Clone, Copy, Default)]
pub struct Deadline(Option<Instant>);

impl Deadline {
    pub const NONE: Deadline = Deadline(None);

    pub fn after(timeout: Duration) -> Self {
        Deadline(Some(Instant::now() + timeout))
    }

    pub fn at(instant: Instant) -> Self {
        Deadline(Some(instant))
    }

    pub fn is_set(&self) -> bool {
        self.0.is_some()
    }

    #[inline]
    pub fn check(&self) -> Result<()> {
        match self.0 {
            Some(at) if Instant::now() >= at => Err(MpcError::TimedOut),
            _ => Ok(()),
        }
    }
}
