//! Axis intercepts of the capacity region via single-user binary capacities.

use crate::info::h;
use crate::Channel;

/// Capacity of a binary-input binary-output channel and its optimal input.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinaryCapacity {
    pub capacity: f64,
    /// `Pr[X = 1]` achieving the capacity.
    pub p_opt: f64,
}

/// An axis intercept `e_u` with the frozen symbol probability of the other user.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingleUserResult {
    pub capacity: f64,
    pub p_opt: f64,
    /// Probability (0 or 1) at which the other user's `Pr[X = 1]` is frozen.
    pub fixed_other: u8,
}

const BISECTION_WIDTH: f64 = 1e-12;

fn mutual_info(t1: f64, t2: f64, p: f64) -> f64 {
    let y = p * t1 + (1.0 - p) * t2;
    (h(y) - p * h(t1) - (1.0 - p) * h(t2)).max(0.0)
}

/// `dI/dp = (t1 - t2)·ln((1 - y)/y) - H(t1) + H(t2)`, strictly decreasing in `p`.
fn slope(t1: f64, t2: f64, p: f64) -> f64 {
    let y = p * t1 + (1.0 - p) * t2;
    (t1 - t2) * ((1.0 - y).ln() - y.ln()) - h(t1) + h(t2)
}

/// Capacity of the channel `Pr[Y=1 | X=1] = t1`, `Pr[Y=1 | X=2] = t2`.
///
/// `I(X;Y)` is concave in `p = Pr[X=1]`; its derivative is bisected down to
/// an interval of width `1e-12`. A useless channel (`t1 = t2`) reports
/// `p_opt = 0.5`.
pub fn binary_capacity(t1: f64, t2: f64) -> BinaryCapacity {
    if t1 == t2 {
        return BinaryCapacity {
            capacity: 0.0,
            p_opt: 0.5,
        };
    }
    let p_opt = if slope(t1, t2, 0.0) <= 0.0 {
        0.0
    } else if slope(t1, t2, 1.0) >= 0.0 {
        1.0
    } else {
        let (mut lo, mut hi) = (0.0, 1.0);
        while hi - lo > BISECTION_WIDTH {
            let mid = 0.5 * (lo + hi);
            if slope(t1, t2, mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    };
    BinaryCapacity {
        capacity: mutual_info(t1, t2, p_opt),
        p_opt,
    }
}

fn best_of(frozen0: BinaryCapacity, frozen1: BinaryCapacity) -> SingleUserResult {
    let (r, fixed_other) = if frozen1.capacity > frozen0.capacity {
        (frozen1, 1)
    } else {
        (frozen0, 0)
    };
    SingleUserResult {
        capacity: r.capacity,
        p_opt: r.p_opt,
        fixed_other,
    }
}

/// `e1`: user 1 alone, with `p2` frozen at 0 (channel `(b, d)`) or 1 (channel `(a, c)`).
pub fn e1(ch: &Channel) -> SingleUserResult {
    best_of(binary_capacity(ch.b(), ch.d()), binary_capacity(ch.a(), ch.c()))
}

/// `e2`: user 2 alone, with `p1` frozen at 0 (channel `(c, d)`) or 1 (channel `(a, b)`).
pub fn e2(ch: &Channel) -> SingleUserResult {
    best_of(binary_capacity(ch.c(), ch.d()), binary_capacity(ch.a(), ch.b()))
}
