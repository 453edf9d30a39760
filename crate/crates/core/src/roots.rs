//! Bracketed bisection.

pub const MAX_BISECTIONS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub x: f64,
    /// `|g(x)|` at the returned point.
    pub residual: f64,
    pub iterations: usize,
}

/// Bisects `g` on `[lo, hi]` until the bracket can no longer be split in f64
/// or `MAX_BISECTIONS` is reached, returning the endpoint with the smaller
/// residual. Returns `None` if `g(lo)` and `g(hi)` share a strict sign.
pub fn bisect<G: Fn(f64) -> f64>(g: G, mut lo: f64, mut hi: f64) -> Option<Root> {
    let mut g_lo = g(lo);
    let mut g_hi = g(hi);
    if g_lo.is_nan() || g_hi.is_nan() || (g_lo > 0.0 && g_hi > 0.0) || (g_lo < 0.0 && g_hi < 0.0) {
        return None;
    }
    let mut iterations = 0;
    while iterations < MAX_BISECTIONS && g_lo != 0.0 && g_hi != 0.0 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let g_mid = g(mid);
        iterations += 1;
        if g_mid.is_nan() {
            return None;
        }
        if (g_mid < 0.0) == (g_lo < 0.0) {
            lo = mid;
            g_lo = g_mid;
        } else {
            hi = mid;
            g_hi = g_mid;
        }
    }
    let (x, residual) = if g_lo.abs() <= g_hi.abs() {
        (lo, g_lo.abs())
    } else {
        (hi, g_hi.abs())
    };
    Some(Root {
        x,
        residual,
        iterations,
    })
}

/// Boundary of a predicate that holds at `lo` and fails at `hi`: returns the
/// last point found where it holds.
pub fn bisect_predicate<P: Fn(f64) -> bool>(holds: P, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..MAX_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if holds(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}
