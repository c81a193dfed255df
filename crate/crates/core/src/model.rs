//! Value types of the (2,2;2) multiple-access channel model.
//!
//! Symbols are labelled `1` and `2` for both users and the output. A channel
//! is fixed by the four probabilities of emitting output symbol `1`:
//!
//! | x1 | x2 | Pr[Y = 1] |
//! |----|----|-----------|
//! | 1  | 1  | `a`       |
//! | 1  | 2  | `b`       |
//! | 2  | 1  | `c`       |
//! | 2  | 2  | `d`       |

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::real::Real;

fn check_prob<T: Real>(name: &'static str, value: T) -> Result<T> {
    if value >= T::zero() && value <= T::one() {
        Ok(value)
    } else {
        Err(Error::Domain {
            name,
            value: value.as_f64(),
        })
    }
}

/// Transition probabilities of a two-user binary-input binary-output MAC.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[T; 4]", into = "[T; 4]")]
#[serde(bound(serialize = "T: Real + Serialize", deserialize = "T: Real + Deserialize<'de>"))]
pub struct Channel<T> {
    a: T,
    b: T,
    c: T,
    d: T,
}

impl<T: Real> Channel<T> {
    pub fn new(a: T, b: T, c: T, d: T) -> Result<Self> {
        Ok(Self {
            a: check_prob("a", a)?,
            b: check_prob("b", b)?,
            c: check_prob("c", c)?,
            d: check_prob("d", d)?,
        })
    }

    #[inline]
    pub fn a(&self) -> T {
        self.a
    }

    #[inline]
    pub fn b(&self) -> T {
        self.b
    }

    #[inline]
    pub fn c(&self) -> T {
        self.c
    }

    #[inline]
    pub fn d(&self) -> T {
        self.d
    }

    /// `a - b`
    #[inline]
    pub fn delta1(&self) -> T {
        self.a - self.b
    }

    /// `c - d`
    #[inline]
    pub fn delta2(&self) -> T {
        self.c - self.d
    }

    pub fn params(&self) -> [T; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// `a = b`: the output ignores user 2 whenever user 1 sends symbol 1.
    pub fn is_three_param(&self) -> bool {
        self.a == self.b
    }

    /// Names the degeneracy excluded from the weighted sum-rate analysis, if any.
    pub fn degeneracy(&self) -> Option<&'static str> {
        if self.a == self.b && self.c == self.d {
            Some("a = b and c = d: user 2 cannot convey information")
        } else if self.a == self.c && self.b == self.d {
            Some("a = c and b = d: user 1 cannot convey information")
        } else {
            None
        }
    }
}

impl<T: Real> TryFrom<[T; 4]> for Channel<T> {
    type Error = Error;

    fn try_from(p: [T; 4]) -> Result<Self> {
        Self::new(p[0], p[1], p[2], p[3])
    }
}

impl<T: Real> From<Channel<T>> for [T; 4] {
    fn from(ch: Channel<T>) -> Self {
        ch.params()
    }
}

impl<T: Real> fmt::Display for Channel<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.a, self.b, self.c, self.d)
    }
}

/// Product input distribution; `p_u = Pr[X_u = 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InputDist<T> {
    p1: T,
    p2: T,
}

impl<T: Real> InputDist<T> {
    pub fn new(p1: T, p2: T) -> Result<Self> {
        Ok(Self {
            p1: check_prob("p1", p1)?,
            p2: check_prob("p2", p2)?,
        })
    }

    #[inline]
    pub fn p1(&self) -> T {
        self.p1
    }

    #[inline]
    pub fn p2(&self) -> T {
        self.p2
    }

    /// Simplex vector `(Pr[X_u = 1], Pr[X_u = 2])` of user `u` (1 or 2).
    pub fn simplex(&self, user: usize) -> [T; 2] {
        let p = if user == 1 { self.p1 } else { self.p2 };
        [p, T::one() - p]
    }

    pub fn swapped(&self) -> Self {
        Self {
            p1: self.p2,
            p2: self.p1,
        }
    }

    pub fn is_interior(&self) -> bool {
        let open = |p: T| p > T::zero() && p < T::one();
        open(self.p1) && open(self.p2)
    }
}

/// Strictly positive weight vector of the weighted sum-rate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Weights<T> {
    w1: T,
    w2: T,
}

impl<T: Real> Weights<T> {
    pub fn new(w1: T, w2: T) -> Result<Self> {
        if w1 > T::zero() && w2 > T::zero() && w1.is_finite() && w2.is_finite() {
            Ok(Self { w1, w2 })
        } else {
            Err(Error::InvalidWeights {
                w1: w1.as_f64(),
                w2: w2.as_f64(),
            })
        }
    }

    #[inline]
    pub fn w1(&self) -> T {
        self.w1
    }

    #[inline]
    pub fn w2(&self) -> T {
        self.w2
    }

    pub fn swapped(&self) -> Self {
        Self {
            w1: self.w2,
            w2: self.w1,
        }
    }

    pub fn dot(&self, r: &RatePair<T>) -> T {
        self.w1 * r.r1 + self.w2 * r.r2
    }
}

/// Successive-decoding order of a corner point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Corner {
    /// `(I(Y;X1), I(Y;X2|X1))`: user 1 decoded first.
    C1,
    /// `(I(Y;X1|X2), I(Y;X2))`: user 2 decoded first.
    C2,
}

/// A point of the rate plane, in nats per channel use.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct RatePair<T> {
    pub r1: T,
    pub r2: T,
}

impl<T: Real> RatePair<T> {
    pub fn new(r1: T, r2: T) -> Self {
        Self { r1, r2 }
    }

    pub fn sum(&self) -> T {
        self.r1 + self.r2
    }

    pub fn swapped(&self) -> Self {
        Self {
            r1: self.r2,
            r2: self.r1,
        }
    }
}

/// Parses a probability or weight literal: a decimal number or a ratio `n/m`
/// of decimal numbers.
///
/// For integer ratios the quotient is formed with a single rounding, so
/// `2/3` is the double closest to two thirds.
pub fn parse_scalar(text: &str) -> Result<f64> {
    let text = text.trim();
    let bad = || Error::Parse(format!("`{text}` is not a number or a ratio n/m"));
    let value = match text.split_once('/') {
        Some((num, den)) => {
            let num: f64 = num.trim().parse().map_err(|_| bad())?;
            let den: f64 = den.trim().parse().map_err(|_| bad())?;
            if den == 0.0 {
                return Err(Error::Parse(format!("`{text}` has a zero denominator")));
            }
            num / den
        }
        None => text.parse().map_err(|_| bad())?,
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(bad())
    }
}

fn parse_list<const N: usize>(text: &str, what: &str) -> Result<[f64; N]> {
    let fields: Vec<&str> = text.split(',').collect();
    if fields.len() != N {
        return Err(Error::Parse(format!(
            "{what} needs {N} comma-separated fields, got {}",
            fields.len()
        )));
    }
    let mut out = [0.0; N];
    for (slot, field) in out.iter_mut().zip(fields) {
        *slot = parse_scalar(field)?;
    }
    Ok(out)
}

impl FromStr for Channel<f64> {
    type Err = Error;

    /// `a,b,c,d`, each field a decimal or `n/m`.
    fn from_str(s: &str) -> Result<Self> {
        let [a, b, c, d] = parse_list::<4>(s, "channel")?;
        Channel::new(a, b, c, d)
    }
}

impl FromStr for Weights<f64> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let [w1, w2] = parse_list::<2>(s, "weights")?;
        Weights::new(w1, w2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn channel_rejects_out_of_range() {
        assert!(Channel::new(0.1, 0.2, 1.2, 0.3).is_err());
        assert!(Channel::new(-0.0f64, 0.0, 1.0, 1.0).is_ok());
        assert!(Channel::new(f64::NAN, 0.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn deltas_follow_parameters() {
        let ch = Channel::new(0.7, 0.2, 0.9, 0.4).unwrap();
        assert_eq!(ch.delta1(), 0.7 - 0.2);
        assert_eq!(ch.delta2(), 0.9 - 0.4);
    }

    #[test]
    fn parses_rationals_with_single_rounding() {
        let ch: Channel<f64> = "2/3, 1/4, 1e-3, 5/8".parse().unwrap();
        assert_eq!(ch.a(), 2.0 / 3.0);
        assert_eq!(ch.b(), 0.25);
        assert_eq!(ch.c(), 0.001);
        assert_eq!(ch.d(), 0.625);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!("1,2,3".parse::<Channel<f64>>(), Err(Error::Parse(_))));
        assert!(matches!("a,0,0,0".parse::<Channel<f64>>(), Err(Error::Parse(_))));
        assert!(matches!("1/0,0,0,0".parse::<Channel<f64>>(), Err(Error::Parse(_))));
        assert!(matches!("2,0,0,0".parse::<Channel<f64>>(), Err(Error::Domain { .. })));
        assert!("0,1".parse::<Weights<f64>>().is_err());
        assert_eq!("1/5,4/5".parse::<Weights<f64>>().unwrap().w2(), 0.8);
    }

    #[test]
    fn degeneracies() {
        let ch = Channel::new(0.5, 0.5, 0.5, 0.5).unwrap();
        assert!(ch.degeneracy().is_some());
        let ch = Channel::new(0.3, 0.6, 0.3, 0.6).unwrap();
        assert!(ch.degeneracy().unwrap().contains("user 1"));
        let ch = Channel::new(0.3, 0.3, 0.9, 0.2).unwrap();
        assert!(ch.degeneracy().is_none());
        assert!(ch.is_three_param());
    }

    #[test]
    fn works_in_single_precision() {
        let ch = Channel::<f32>::new(0.5, 0.25, 0.125, 1.0).unwrap();
        assert_eq!(ch.delta2(), -0.875);
    }
}
