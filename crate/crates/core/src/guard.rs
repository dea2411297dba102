//! Guard-digit escalation for computations that lose digits to cancellation.

use crate::numerics::{precision, with_precision};

/// Runs `f` at the working precision plus a guard; `f` reports how many decimal
/// digits it lost. If the loss eats into the guard, reruns with a guard sized
/// from the measured loss. Results are produced at the elevated precision; the
/// caller rounds back.
pub(crate) fn with_guard_digits<T>(initial_guard: usize, mut f: impl FnMut() -> (T, f64)) -> T {
    let base = precision();
    let mut guard = initial_guard;
    loop {
        let (value, lost) = with_precision(base + guard, &mut f);
        let needed = lost.max(0.0).ceil() as usize + 10;
        if needed <= guard || guard >= 8 * base {
            return value;
        }
        guard = needed.max(2 * guard).min(8 * base);
    }
}
