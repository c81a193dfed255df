//! Entropies, divergences and mutual informations of the (2,2;2)-MAC, in nats.
//!
//! Every mutual information is an entropy difference of binary
//! distributions. With `β = b + p2·Δ1` and `γ = d + p2·Δ2` the conditional
//! output laws given `X1`:
//!
//! ```text
//! H(Y|X1)    = p1·H(β) + (1-p1)·H(γ)
//! H(Y|X2)    = p2·H(c + p1(a-c)) + (1-p2)·H(d + p1(b-d))
//! H(Y|X1,X2) = p1p2·H(a) + p1(1-p2)·H(b) + (1-p1)p2·H(c) + (1-p1)(1-p2)·H(d)
//! ```

use crate::error::{Error, Result};
use crate::model::{Channel, InputDist, RatePair};
use crate::real::Real;

/// `-x ln x` with `0 ln 0 = 0`.
#[inline]
pub(crate) fn xlnx_neg<T: Real>(x: T) -> T {
    if x <= T::zero() {
        T::zero()
    } else {
        -x * x.ln()
    }
}

/// Binary entropy without range validation. Arguments are clamped to
/// `[0, 1]` only through the `0 ln 0` convention.
#[inline]
pub(crate) fn h<T: Real>(p: T) -> T {
    xlnx_neg(p) + xlnx_neg(T::one() - p)
}

/// Derivative of the binary entropy, `ln((1-p)/p)`; infinite at the ends.
#[inline]
pub(crate) fn h_prime<T: Real>(p: T) -> T {
    (T::one() - p).ln() - p.ln()
}

/// `coef * h'(p)` with `0 · ∞ = 0`.
#[inline]
pub(crate) fn scaled_h_prime<T: Real>(coef: T, p: T) -> T {
    if coef == T::zero() {
        T::zero()
    } else {
        coef * h_prime(p)
    }
}

fn check<T: Real>(name: &'static str, p: T) -> Result<()> {
    if p >= T::zero() && p <= T::one() {
        Ok(())
    } else {
        Err(Error::Domain {
            name,
            value: p.as_f64(),
        })
    }
}

/// Binary entropy `H(p)` in nats.
pub fn binary_entropy<T: Real>(p: T) -> Result<T> {
    check("p", p)?;
    Ok(h(p))
}

/// `D(p||q)` between the binary laws `(p, 1-p)` and `(q, 1-q)`.
///
/// Returns `+∞` when `q` is deterministic and differs from `p`.
pub fn kl_divergence<T: Real>(p: T, q: T) -> Result<T> {
    check("p", p)?;
    check("q", q)?;
    Ok(kl(p, q))
}

pub(crate) fn kl<T: Real>(p: T, q: T) -> T {
    let term = |x: T, y: T| -> T {
        if x == T::zero() {
            T::zero()
        } else if y == T::zero() {
            T::infinity()
        } else {
            x * (x / y).ln()
        }
    };
    let v = term(p, q) + term(T::one() - p, T::one() - q);
    v.max(T::zero())
}

/// `Pr[Y = 1]` under the product input.
pub fn prob_y1<T: Real>(ch: &Channel<T>, input: &InputDist<T>) -> T {
    prob_y1_raw(ch, input.p1(), input.p2())
}

/// Bilinear marginal, also valid (as a polynomial) off the unit square.
#[inline]
pub(crate) fn prob_y1_raw<T: Real>(ch: &Channel<T>, p1: T, p2: T) -> T {
    let one = T::one();
    p1 * p2 * ch.a() + p1 * (one - p2) * ch.b() + (one - p1) * p2 * ch.c() + (one - p1) * (one - p2) * ch.d()
}

/// The four entropies every mutual information is a difference of.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Entropies<T> {
    pub y: T,
    pub y_x1: T,
    pub y_x2: T,
    pub y_x1x2: T,
}

impl<T: Real> Entropies<T> {
    pub fn eval(ch: &Channel<T>, p1: T, p2: T) -> Self {
        let one = T::one();
        let (a, b, c, d) = (ch.a(), ch.b(), ch.c(), ch.d());
        let y = h(prob_y1_raw(ch, p1, p2));
        let y_x1 = p1 * h(b + p2 * ch.delta1()) + (one - p1) * h(d + p2 * ch.delta2());
        let y_x2 = p2 * h(c + p1 * (a - c)) + (one - p2) * h(d + p1 * (b - d));
        let y_x1x2 = p1 * p2 * h(a) + p1 * (one - p2) * h(b) + (one - p1) * p2 * h(c) + (one - p1) * (one - p2) * h(d);
        Self { y, y_x1, y_x2, y_x1x2 }
    }
}

/// Clamps rounding residue below zero; anything more negative is a broken invariant.
fn nonneg<T: Real>(x: T, what: &str) -> T {
    if x >= T::zero() {
        x
    } else {
        assert!(
            x >= -T::mi_rounding_tol(),
            "internal consistency error: {what} = {x} is negative beyond rounding"
        );
        T::zero()
    }
}

/// `I(Y;X1)`
pub fn mi_y_x1<T: Real>(ch: &Channel<T>, input: &InputDist<T>) -> T {
    let e = Entropies::eval(ch, input.p1(), input.p2());
    nonneg(e.y - e.y_x1, "I(Y;X1)")
}

/// `I(Y;X2)`
pub fn mi_y_x2<T: Real>(ch: &Channel<T>, input: &InputDist<T>) -> T {
    let e = Entropies::eval(ch, input.p1(), input.p2());
    nonneg(e.y - e.y_x2, "I(Y;X2)")
}

/// `I(Y;X2|X1)`
pub fn mi_y_x2_given_x1<T: Real>(ch: &Channel<T>, input: &InputDist<T>) -> T {
    let e = Entropies::eval(ch, input.p1(), input.p2());
    nonneg(e.y_x1 - e.y_x1x2, "I(Y;X2|X1)")
}

/// `I(Y;X1|X2)`
pub fn mi_y_x1_given_x2<T: Real>(ch: &Channel<T>, input: &InputDist<T>) -> T {
    let e = Entropies::eval(ch, input.p1(), input.p2());
    nonneg(e.y_x2 - e.y_x1x2, "I(Y;X1|X2)")
}

/// `I(X1,X2;Y)`
pub fn mi_joint<T: Real>(ch: &Channel<T>, input: &InputDist<T>) -> T {
    let e = Entropies::eval(ch, input.p1(), input.p2());
    nonneg(e.y - e.y_x1x2, "I(X1,X2;Y)")
}

/// Corner point for decoding user 1 first: `(I(Y;X1), I(Y;X2|X1))`.
pub fn corner_c1<T: Real>(ch: &Channel<T>, input: &InputDist<T>) -> RatePair<T> {
    let e = Entropies::eval(ch, input.p1(), input.p2());
    RatePair::new(nonneg(e.y - e.y_x1, "I(Y;X1)"), nonneg(e.y_x1 - e.y_x1x2, "I(Y;X2|X1)"))
}

/// Corner point for decoding user 2 first: `(I(Y;X1|X2), I(Y;X2))`.
pub fn corner_c2<T: Real>(ch: &Channel<T>, input: &InputDist<T>) -> RatePair<T> {
    let e = Entropies::eval(ch, input.p1(), input.p2());
    RatePair::new(nonneg(e.y_x2 - e.y_x1x2, "I(Y;X1|X2)"), nonneg(e.y - e.y_x2, "I(Y;X2)"))
}

/// Exchanges the roles of the two users: `(a, b, c, d) -> (a, c, b, d)`.
pub fn swap_users<T: Real>(ch: &Channel<T>) -> Channel<T> {
    Channel::new(ch.a(), ch.c(), ch.b(), ch.d()).expect("permutation of valid probabilities")
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn ch(a: f64, b: f64, c: f64, d: f64) -> Channel<f64> {
        Channel::new(a, b, c, d).unwrap()
    }

    fn input(p1: f64, p2: f64) -> InputDist<f64> {
        InputDist::new(p1, p2).unwrap()
    }

    #[test]
    fn entropy_values() {
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        assert_abs_diff_eq!(binary_entropy(0.5).unwrap(), std::f64::consts::LN_2, epsilon = 1e-15);
        // -0.1 ln 0.1 - 0.9 ln 0.9
        assert_abs_diff_eq!(binary_entropy(0.1).unwrap(), 0.325_082_973_391_448_2, epsilon = 1e-12);
        assert!(binary_entropy(1.5).is_err());
        assert!(binary_entropy(-1e-9).is_err());
    }

    #[test]
    fn kl_values() {
        assert_eq!(kl_divergence(0.3, 0.3).unwrap(), 0.0);
        assert_eq!(kl_divergence(0.5, 0.0).unwrap(), f64::INFINITY);
        assert_eq!(kl_divergence(0.0, 0.0).unwrap(), 0.0);
        let want = 0.1 * (0.1f64 / 0.625).ln() + 0.9 * (0.9f64 / 0.375).ln();
        assert_abs_diff_eq!(kl_divergence(0.1, 0.625).unwrap(), want, epsilon = 1e-15);
        assert_abs_diff_eq!(want, 0.604_663_717_243_679, epsilon = 1e-14);
        assert!(kl_divergence(0.1, 2.0).is_err());
    }

    #[test]
    fn marginal_output() {
        assert_eq!(prob_y1(&ch(1.0, 1.0, 0.0, 0.0), &input(0.5, 0.7)), 0.5);
        assert_eq!(prob_y1(&ch(0.5, 0.5, 0.5, 0.5), &input(0.13, 0.9)), 0.5);
        let v = prob_y1(&ch(2.0 / 3.0, 0.25, 1e-3, 0.625), &input(0.5, 0.5));
        // (2/3 + 1/4 + 1/1000 + 5/8) / 4
        assert_abs_diff_eq!(v, (2.0 / 3.0 + 0.25 + 1e-3 + 0.625) / 4.0, epsilon = 1e-15);
        assert_abs_diff_eq!(v, 0.385_666_666_666_667, epsilon = 1e-14);
    }

    #[test]
    fn degenerate_channels_on_grid() {
        let no_user2 = ch(0.3, 0.3, 0.8, 0.8);
        let no_user1 = ch(0.3, 0.7, 0.3, 0.7);
        for i in 0..=20 {
            for j in 0..=20 {
                let x = input(i as f64 / 20.0, j as f64 / 20.0);
                assert!(mi_y_x2_given_x1(&no_user2, &x) <= 1e-15);
                assert!(mi_y_x1(&no_user1, &x) <= 1e-15);
            }
        }
    }

    #[test]
    fn noiseless_user1() {
        let c = ch(1.0, 1.0, 0.0, 0.0);
        for p2 in [0.0, 0.3, 1.0] {
            assert_abs_diff_eq!(mi_y_x1(&c, &input(0.5, p2)), std::f64::consts::LN_2, epsilon = 1e-15);
        }
        let c1 = corner_c1(&c, &input(0.5, 0.5));
        assert_abs_diff_eq!(c1.r1, std::f64::consts::LN_2, epsilon = 1e-15);
        assert_eq!(c1.r2, 0.0);
        let noise = corner_c1(&ch(0.5, 0.5, 0.5, 0.5), &input(0.2, 0.6));
        assert_eq!(noise, RatePair::new(0.0, 0.0));
    }

    #[test]
    fn corner_against_joint_sum() {
        // Direct double sum over the joint law of (X1, X2, Y).
        let c = ch(2.0 / 3.0, 0.25, 1e-3, 0.625);
        let w = [[c.a(), c.b()], [c.c(), c.d()]];
        let q = [0.5, 0.5];
        let py = prob_y1(&c, &input(0.5, 0.5));
        let mut i_x1 = 0.0;
        let mut i_joint = 0.0;
        for s in 0..2 {
            let w1 = q[0] * w[s][0] + q[1] * w[s][1];
            for t in 0..2 {
                for (wy, w1y, pyy) in [(w[s][t], w1, py), (1.0 - w[s][t], 1.0 - w1, 1.0 - py)] {
                    let mass = q[s] * q[t] * wy;
                    i_x1 += mass * (w1y / pyy).ln();
                    i_joint += mass * (wy / pyy).ln();
                }
            }
        }
        let c1 = corner_c1(&c, &input(0.5, 0.5));
        assert_abs_diff_eq!(c1.r1, i_x1, epsilon = 1e-14);
        assert_abs_diff_eq!(c1.r2, i_joint - i_x1, epsilon = 1e-14);
    }

    #[test]
    fn swap_is_an_involution() {
        let c = ch(0.1, 0.2, 0.3, 0.4);
        assert_eq!(swap_users(&c).params(), [0.1, 0.3, 0.2, 0.4]);
        assert_eq!(swap_users(&swap_users(&c)), c);
    }

    #[test]
    fn single_precision_entropy() {
        let v: f32 = binary_entropy(0.5f32).unwrap();
        assert!((v - std::f32::consts::LN_2).abs() < 1e-6);
        let c = Channel::<f32>::new(0.9, 0.8, 0.2, 0.1).unwrap();
        let x = InputDist::<f32>::new(0.5, 0.5).unwrap();
        let r = corner_c1(&c, &x);
        assert!((r.sum() - mi_joint(&c, &x)).abs() < 1e-6);
    }

    fn unit() -> impl Strategy<Value = f64> {
        0.0..=1.0f64
    }

    proptest! {
        #[test]
        fn chain_rule(a in unit(), b in unit(), c in unit(), d in unit(), p1 in unit(), p2 in unit()) {
            let chn = ch(a, b, c, d);
            let x = input(p1, p2);
            let joint = mi_joint(&chn, &x);
            prop_assert!((joint - mi_y_x1(&chn, &x) - mi_y_x2_given_x1(&chn, &x)).abs() <= 1e-12);
            prop_assert!((joint - mi_y_x2(&chn, &x) - mi_y_x1_given_x2(&chn, &x)).abs() <= 1e-12);
            let c1 = corner_c1(&chn, &x);
            let c2 = corner_c2(&chn, &x);
            prop_assert!((c1.sum() - joint).abs() <= 1e-12);
            prop_assert!((c2.sum() - joint).abs() <= 1e-12);
            for v in [c1.r1, c1.r2, c2.r1, c2.r2] {
                prop_assert!((0.0..=std::f64::consts::LN_2 + 1e-15).contains(&v));
            }
        }

        #[test]
        fn user_swap_symmetry(a in unit(), b in unit(), c in unit(), d in unit(), p1 in unit(), p2 in unit()) {
            let chn = ch(a, b, c, d);
            let sw = swap_users(&chn);
            let x = input(p1, p2);
            prop_assert!((mi_y_x2(&chn, &x) - mi_y_x1(&sw, &x.swapped())).abs() <= 1e-12);
            let c2 = corner_c2(&chn, &x);
            let c1s = corner_c1(&sw, &x.swapped()).swapped();
            prop_assert!((c2.r1 - c1s.r1).abs() <= 1e-12);
            prop_assert!((c2.r2 - c1s.r2).abs() <= 1e-12);
        }

        #[test]
        fn kl_zero_only_on_diagonal(p in unit(), q in 0.001..0.999f64) {
            let v = kl_divergence(p, q).unwrap();
            prop_assert!(v >= 0.0);
            if (p - q).abs() > 1e-6 {
                prop_assert!(v > 0.0);
            }
            prop_assert!(kl_divergence(q, q).unwrap() <= 1e-15);
        }
    }
}
