//! Switch for the expensive invariant checks.
//!
//! Checks are off unless `EQUICOLOR_DEBUG_ASSERT=1` is set or a caller
//! flips them with [`set_enabled`].

use std::sync::atomic::{AtomicU8, Ordering};

const UNSET: u8 = 0;
const OFF: u8 = 1;
const ON: u8 = 2;

static STATE: AtomicU8 = AtomicU8::new(UNSET);

pub const ENV_VAR: &str = "EQUICOLOR_DEBUG_ASSERT";

pub fn enabled() -> bool {
    match STATE.load(Ordering::Relaxed) {
        ON => true,
        OFF => false,
        _ => {
            let on = std::env::var(ENV_VAR).map(|v| v == "1").unwrap_or(false);
            STATE.store(if on { ON } else { OFF }, Ordering::Relaxed);
            on
        }
    }
}

pub fn set_enabled(on: bool) {
    STATE.store(if on { ON } else { OFF }, Ordering::Relaxed);
}
