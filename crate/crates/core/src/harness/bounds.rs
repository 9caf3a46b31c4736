//! Round bounds the demos and acceptance checks compare against.
//!
//! Upper bounds come from the window arguments: on a T-Path graph every
//! window of T rounds that starts with a multinode fills a hole, so
//! dispersion of k agents from a single node needs at most (k - 1) windows
//! plus T quiet rounds before the counters expire. Exploration with n - 1
//! agents adds one round to move into the last hole.

pub fn dispersion_upper(k: usize, t: usize) -> usize {
    k * t + t
}

pub fn dispersion_lower(k: usize, t: usize) -> usize {
    (k - 1) * (t - 1)
}

pub fn exploration_1int_upper(n: usize) -> usize {
    2 * n
}

pub fn exploration_1int_lower(n: usize) -> usize {
    n.saturating_sub(2)
}

pub fn exploration_tpath_upper(n: usize, t: usize) -> usize {
    (n + 1) * t
}

pub fn exploration_tpath_lower(n: usize, t: usize) -> usize {
    n.saturating_sub(2) * (t - 1)
}
