//! Process-wide enumeration budget.
//!
//! Operations that enumerate field elements or parameter spaces refuse to run past
//! this limit. The command-line front end overrides it from `PTL_BUDGET`.

use std::sync::atomic::{AtomicU64, Ordering};

pub const DEFAULT_ENUMERATION_LIMIT: u64 = 1 << 24;

static LIMIT: AtomicU64 = AtomicU64::new(DEFAULT_ENUMERATION_LIMIT);

pub fn enumeration_limit() -> u64 {
    LIMIT.load(Ordering::Relaxed)
}

pub fn set_enumeration_limit(limit: u64) {
    LIMIT.store(limit.max(1), Ordering::Relaxed);
}
