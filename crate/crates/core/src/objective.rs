//! The weighted-sum objective `Ψ = w1·I(Y;X1) + w2·I(Y;X2|X1)` and the
//! auxiliary functions of its reduction to one dimension.
//!
//! With `p = p2` fixed, `I(Y;X2|X1)` is linear in `p1` and `I(Y;X1)` is
//! strictly concave in `p1` unless `h2(p) = 0`. The unique zero of `∂Ψ/∂p1`
//! is then available in closed form as [`f_map`], and the one-dimensional
//! function [`phi_hat`]`(p) = Ψ(f(p), p)` carries all interior stationary
//! points of `Ψ`.
//!
//! ```text
//! h1(p) = H(d + pΔ2) - H(b + pΔ1)
//! h2(p) = d - b + p(b + c - a - d)
//! h3(p) = 1 - d - pΔ2
//! h4(p) = ∂I(Y;X2|X1)/∂p1
//! ∂I(Y;X1)/∂p1 = h1 + h2 ln(1/(h3 + p1 h2) - 1)
//! ```
//!
//! Functions taking `p` for the reduced problem require `p ∈ (0, 1)` and,
//! where they divide by `h2`, `|h2(p)| > h2_tol` (`1e-12` in `f64`).

use crate::error::{Error, Result};
use crate::info::{h, kl, prob_y1_raw, scaled_h_prime};
use crate::model::{Channel, InputDist, Weights};
use crate::real::Real;

/// Image of `p2` under the closed-form `p1`-stationarity map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedPoint<T> {
    pub p2: T,
    /// `f(p2)`; may leave `[0, 1]`.
    pub p1_star: T,
    /// `0 < p1_star < 1`, i.e. `p2` lies in the set where `φ` is defined.
    pub in_p2bar: bool,
}

/// `Ψ(p1, p2) = w·C1(p1, p2)`.
pub fn psi<T: Real>(ch: &Channel<T>, w: &Weights<T>, input: &InputDist<T>) -> T {
    w.dot(&crate::info::corner_c1(ch, input))
}

/// `Ψ` as a formula in `p1`, evaluated without clamping. Only meaningful off
/// `[0, 1]` when `Pr[Y = 1]` stays in `[0, 1]`, which holds along `f`.
pub(crate) fn psi_raw<T: Real>(ch: &Channel<T>, w: &Weights<T>, p1: T, p2: T) -> T {
    let one = T::one();
    let (a, b, c, d) = (ch.a(), ch.b(), ch.c(), ch.d());
    let hy = h(prob_y1_raw(ch, p1, p2));
    let hy_x1 = p1 * h(b + p2 * ch.delta1()) + (one - p1) * h(d + p2 * ch.delta2());
    let hy_x1x2 = p1 * (p2 * h(a) + (one - p2) * h(b)) + (one - p1) * (p2 * h(c) + (one - p2) * h(d));
    w.w1() * (hy - hy_x1) + w.w2() * (hy_x1 - hy_x1x2)
}

pub fn h1<T: Real>(ch: &Channel<T>, p2: T) -> T {
    h(ch.d() + p2 * ch.delta2()) - h(ch.b() + p2 * ch.delta1())
}

pub fn h2<T: Real>(ch: &Channel<T>, p2: T) -> T {
    ch.d() - ch.b() + p2 * (ch.b() + ch.c() - ch.a() - ch.d())
}

pub fn h3<T: Real>(ch: &Channel<T>, p2: T) -> T {
    T::one() - ch.d() - p2 * ch.delta2()
}

/// `∂I(Y;X2|X1)/∂p1`, which does not depend on `p1`.
pub fn h4<T: Real>(ch: &Channel<T>, p2: T) -> T {
    let one = T::one();
    let v = -p2 * h(ch.a()) + (p2 - one) * h(ch.b()) + p2 * h(ch.c()) - (p2 - one) * h(ch.d())
        + h(ch.b() + p2 * ch.delta1())
        - h(ch.d() + p2 * ch.delta2());
    if mutation::h4_flipped() {
        -v
    } else {
        v
    }
}

/// `∂Ψ/∂p1`. One-sided at `p1 ∈ {0, 1}`.
pub fn dpsi_dp1<T: Real>(ch: &Channel<T>, w: &Weights<T>, input: &InputDist<T>) -> Result<T> {
    let (p1, p2) = (input.p1(), input.p2());
    let z = h3(ch, p2) + p1 * h2(ch, p2);
    if z <= T::zero() || z >= T::one() {
        return Err(Error::DegenerateOutput {
            term: "ln(1/Pr[Y=2] - 1) in dI(Y;X1)/dp1",
            prob: (T::one() - z).as_f64(),
        });
    }
    let di1 = h1(ch, p2) + h2(ch, p2) * ((T::one() - z) / z).ln();
    finite(w.w1() * di1 + w.w2() * h4(ch, p2), "dPsi/dp1")
}

/// `∂Ψ/∂p2`, by differentiating the entropy-difference forms in `p2`:
///
/// ```text
/// ∂I(Y;X1)/∂p2    = s·H'(y) - p1Δ1·H'(β) - (1-p1)Δ2·H'(γ)
/// ∂I(Y;X2|X1)/∂p2 = p1Δ1·H'(β) + (1-p1)Δ2·H'(γ)
///                   - p1(H(a) - H(b)) - (1-p1)(H(c) - H(d))
/// ```
///
/// with `y = Pr[Y=1]`, `s = ∂y/∂p2 = p1Δ1 + (1-p1)Δ2`, `β = b + p2Δ1`,
/// `γ = d + p2Δ2`.
pub fn dpsi_dp2<T: Real>(ch: &Channel<T>, w: &Weights<T>, input: &InputDist<T>) -> Result<T> {
    let one = T::one();
    let (p1, p2) = (input.p1(), input.p2());
    let y = prob_y1_raw(ch, p1, p2);
    let s = p1 * ch.delta1() + (one - p1) * ch.delta2();
    if s != T::zero() && (y <= T::zero() || y >= one) {
        return Err(Error::DegenerateOutput {
            term: "H'(Pr[Y=1]) in dI(Y;X1)/dp2",
            prob: y.as_f64(),
        });
    }
    let beta = scaled_h_prime(p1 * ch.delta1(), ch.b() + p2 * ch.delta1());
    let gamma = scaled_h_prime((one - p1) * ch.delta2(), ch.d() + p2 * ch.delta2());
    let di1 = scaled_h_prime(s, y) - beta - gamma;
    let di21 = beta + gamma - p1 * (h(ch.a()) - h(ch.b())) - (one - p1) * (h(ch.c()) - h(ch.d()));
    finite(w.w1() * di1 + w.w2() * di21, "dPsi/dp2")
}

/// `∇Ψ = (∂Ψ/∂p1, ∂Ψ/∂p2)`.
pub fn grad_psi<T: Real>(ch: &Channel<T>, w: &Weights<T>, input: &InputDist<T>) -> Result<(T, T)> {
    Ok((dpsi_dp1(ch, w, input)?, dpsi_dp2(ch, w, input)?))
}

fn finite<T: Real>(v: T, term: &'static str) -> Result<T> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite { term })
    }
}

fn check_open<T: Real>(p: T) -> Result<()> {
    if p > T::zero() && p < T::one() {
        Ok(())
    } else {
        Err(Error::Domain {
            name: "p",
            value: p.as_f64(),
        })
    }
}

/// `h2(p)` after checking `p ∈ P2`.
fn h2_in_p2<T: Real>(ch: &Channel<T>, p: T) -> Result<T> {
    check_open(p)?;
    let v = h2(ch, p);
    if v.abs() <= T::h2_tol() {
        Err(Error::ExcludedPoint {
            p: p.as_f64(),
            h2: v.as_f64(),
        })
    } else {
        Ok(v)
    }
}

/// `h(p) = (-(w2/w1)·h4(p) - h1(p)) / h2(p)`.
pub fn h_fun<T: Real>(ch: &Channel<T>, w: &Weights<T>, p: T) -> Result<T> {
    let h2v = h2_in_p2(ch, p)?;
    Ok((-(w.w2() / w.w1()) * h4(ch, p) - h1(ch, p)) / h2v)
}

/// `f(p) = 1/((e^{h(p)} + 1)·h2(p)) - h3(p)/h2(p)`, the unique `p1` with
/// `∂Ψ/∂p1 = 0` at `p2 = p`.
pub fn f_map<T: Real>(ch: &Channel<T>, w: &Weights<T>, p: T) -> Result<ReducedPoint<T>> {
    let h2v = h2_in_p2(ch, p)?;
    let hv = (-(w.w2() / w.w1()) * h4(ch, p) - h1(ch, p)) / h2v;
    // Pr[Y = 2] = 1/(e^h + 1), in the form that does not overflow.
    let z = if hv > T::zero() {
        let e = (-hv).exp();
        e / (T::one() + e)
    } else {
        T::one() / (T::one() + hv.exp())
    };
    let p1_star = (z - h3(ch, p)) / h2v;
    Ok(ReducedPoint {
        p2: p,
        p1_star,
        in_p2bar: p1_star > T::zero() && p1_star < T::one(),
    })
}

/// `φ̂(p) = Ψ(f(p), p)`, continued analytically when `f(p) ∉ [0, 1]`.
pub fn phi_hat<T: Real>(ch: &Channel<T>, w: &Weights<T>, p: T) -> Result<T> {
    let rp = f_map(ch, w, p)?;
    Ok(psi_raw(ch, w, rp.p1_star, p))
}

/// `δ(a,c,d) = (c-d)(H(d) - H(a)) - (H(c) - H(d))(d - a)`.
pub fn delta_fn<T: Real>(a: T, c: T, d: T) -> T {
    (c - d) * (h(d) - h(a)) - (h(c) - h(d)) * (d - a)
}

fn require_three_param<T: Real>(ch: &Channel<T>) -> Result<()> {
    if ch.is_three_param() {
        Ok(())
    } else {
        Err(Error::NotThreeParam {
            a: ch.a().as_f64(),
            b: ch.b().as_f64(),
        })
    }
}

/// `h'(p)` for a 3-parameter channel (`a = b`):
///
/// ```text
/// h'(p) = [Δ2·(w1 - w2)/w1·D(a||d + pΔ2) + (w2/w1)·δ(a,c,d)] / h2(p)²
/// ```
pub fn h_prime<T: Real>(ch: &Channel<T>, w: &Weights<T>, p: T) -> Result<T> {
    require_three_param(ch)?;
    let h2v = h2_in_p2(ch, p)?;
    let (w1, w2) = (w.w1(), w.w2());
    let div = kl(ch.a(), ch.d() + p * ch.delta2());
    // D is multiplied by zero when w1 = w2, possibly against an infinite D.
    let div_term = if w1 == w2 {
        T::zero()
    } else {
        ch.delta2() * (w1 - w2) / w1 * div
    };
    let num = div_term + w2 / w1 * delta_fn(ch.a(), ch.c(), ch.d());
    finite(num / (h2v * h2v), "h'(p)")
}

/// `φ̂'(p) = w1·(1 - f(p))·h2(p)·h'(p)` for a 3-parameter channel.
pub fn phi_hat_prime<T: Real>(ch: &Channel<T>, w: &Weights<T>, p: T) -> Result<T> {
    let hp = h_prime(ch, w, p)?;
    let rp = f_map(ch, w, p)?;
    Ok(w.w1() * (T::one() - rp.p1_star) * h2(ch, p) * hp)
}

/// `∂I(Y;X1)/∂p1` at `p1 = 1` for a 3-parameter channel with `a ∈ (0, 1)`.
pub fn v_fn<T: Real>(ch: &Channel<T>, p: T) -> Result<T> {
    require_three_param(ch)?;
    let a = ch.a();
    if !(a > T::zero() && a < T::one()) {
        return Err(Error::Domain {
            name: "a",
            value: a.as_f64(),
        });
    }
    if !(p >= T::zero() && p <= T::one()) {
        return Err(Error::Domain {
            name: "p",
            value: p.as_f64(),
        });
    }
    Ok(h1(ch, p) + h2(ch, p) * (a / (T::one() - a)).ln())
}

/// Sign flip of `h4`, for checking that the verification suite catches a
/// broken gradient. Reads `BMAC_MUTATE_H4=1` once; compiled out of release
/// builds.
pub mod mutation {
    #[cfg(debug_assertions)]
    pub fn h4_flipped() -> bool {
        use std::sync::OnceLock;
        static FLIP: OnceLock<bool> = OnceLock::new();
        *FLIP.get_or_init(|| std::env::var("BMAC_MUTATE_H4").is_ok_and(|v| v == "1"))
    }

    #[cfg(not(debug_assertions))]
    #[inline(always)]
    pub fn h4_flipped() -> bool {
        false
    }
}
