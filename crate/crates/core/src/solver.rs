//! Weighted sum-rate maximization and the capacity-region boundary.
//!
//! For `w1 ≤ w2` the maximum over the capacity region equals the maximum of
//! `Ψ = w·C1` over product inputs, which splits into the two axis intercepts
//! `w1·e1`, `w2·e2` and the maximum of `φ(p) = Ψ(f(p), p)` over the `p2`
//! where `f(p) ∈ (0, 1)`. For `w1 > w2` the users are exchanged and the `C2`
//! corner is optimized instead.
//!
//! Three solvers are provided:
//!
//! * [`solve_3param`]: channels with `a = b` and `w1 ≤ w2`. Case A
//!   (`d < a < c` after ordering `c > d`) has its optimum on the boundary;
//!   case B has a pseudoconcave `φ̂`, located by bisection on the sign of
//!   `φ̂'`. The `a = b = 0`, `w1 < w2` subfamily uses [`closed_form_a0`].
//! * [`solve_general`]: any nondegenerate channel and weights. Scans the
//!   `p1`-profile of `Ψ` on a grid without assuming unimodality.
//! * [`region_boundary`]: sweeps the weights and returns the concave chain
//!   of optimal rate pairs.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::info::{corner_c1, swap_users};
use crate::model::Corner;
use crate::objective::{delta_fn, f_map, h2, h_prime, psi_raw};
use crate::real::Real;
use crate::single_user::{e1, e2};
use crate::{Channel, InputDist, RatePair, Weights};

/// Default `p2` tolerance of the one-dimensional searches.
pub const DEFAULT_EPS: f64 = 1e-9;
/// Default number of intervals of the general `p2` scan.
pub const DEFAULT_GRID: usize = 4096;
/// Default number of weight vectors of the region sweep.
pub const DEFAULT_SWEEP: usize = 201;

/// An interior candidate must beat the boundary by more than this.
const TIE_TOL: f64 = 1e-12;
const MERGE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Location {
    Interior,
    /// Rate pair `(e1, 0)`: user 2 sends a deterministic symbol.
    BoundaryAxisUser1,
    /// Rate pair `(0, e2)`: user 1 sends a deterministic symbol.
    BoundaryAxisUser2,
}

impl Location {
    fn swapped(self) -> Self {
        match self {
            Location::Interior => Location::Interior,
            Location::BoundaryAxisUser1 => Location::BoundaryAxisUser2,
            Location::BoundaryAxisUser2 => Location::BoundaryAxisUser1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    CaseABoundary,
    CaseBBisection,
    ClosedForm,
    GeneralScan,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CaseTag {
    NotThreeParam,
    CaseA,
    CaseB,
}

/// Optimal input, the corner point it achieves and how it was found.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Solution {
    pub input: InputDist,
    pub rates: RatePair,
    /// `w1·rates.r1 + w2·rates.r2`, nats.
    pub value: f64,
    pub location: Location,
    pub corner: Corner,
    pub method: Method,
    /// Guaranteed deviation of `p2` from the stationary point, when one was located.
    pub p2_tolerance: Option<f64>,
}

impl Solution {
    fn at(ch: &Channel, w: &Weights, input: InputDist, location: Location, method: Method) -> Self {
        let rates = corner_c1(ch, &input);
        Self {
            input,
            rates,
            value: w.dot(&rates),
            location,
            corner: Corner::C1,
            method,
            p2_tolerance: None,
        }
    }

    /// Maps a solution for `(swap_users(ch), w.swapped())` back to `(ch, w)`.
    fn unswap(self) -> Self {
        Self {
            input: self.input.swapped(),
            rates: self.rates.swapped(),
            corner: match self.corner {
                Corner::C1 => Corner::C2,
                Corner::C2 => Corner::C1,
            },
            location: self.location.swapped(),
            ..self
        }
    }
}

fn input(p1: f64, p2: f64) -> InputDist {
    InputDist::new(p1.clamp(0.0, 1.0), p2.clamp(0.0, 1.0)).expect("clamped probabilities")
}

/// Best of the two axis intercepts; ties go to `(e1, 0)`.
fn boundary_solution(ch: &Channel, w: &Weights, method: Method) -> Solution {
    let (u1, u2) = (e1(ch), e2(ch));
    if w.w1() * u1.capacity >= w.w2() * u2.capacity {
        let x = input(u1.p_opt, u1.fixed_other as f64);
        Solution::at(ch, w, x, Location::BoundaryAxisUser1, method)
    } else {
        let x = input(u2.fixed_other as f64, u2.p_opt);
        Solution::at(ch, w, x, Location::BoundaryAxisUser2, method)
    }
}

fn prefer(boundary: Solution, interior: Option<Solution>) -> Solution {
    match interior {
        Some(s) if s.value > boundary.value + TIE_TOL => s,
        _ => boundary,
    }
}

fn check_eps(eps: f64) -> Result<()> {
    if eps > 0.0 && eps < 0.5 {
        Ok(())
    } else {
        Err(Error::Precondition(format!("eps = {eps} must lie in (0, 0.5)")))
    }
}

/// Orders a 3-parameter channel so that `c > d`. The flag reports whether
/// `c` and `d` were exchanged, which relabels user 2's symbols
/// (`p2 -> 1 - p2`) and leaves the capacity region unchanged.
pub fn canonicalize_3param(ch: &Channel) -> Result<(Channel, bool)> {
    if !ch.is_three_param() {
        return Err(Error::NotThreeParam { a: ch.a(), b: ch.b() });
    }
    let swapped = ch.c() < ch.d();
    let out = if swapped {
        Channel::new(ch.a(), ch.b(), ch.d(), ch.c())?
    } else {
        *ch
    };
    if out.c() == out.d() {
        return Err(Error::DegenerateChannel("3-parameter channel with c = d"));
    }
    if out.a() == out.c() || out.a() == out.d() {
        return Err(Error::DegenerateChannel("3-parameter channel with a = c or a = d"));
    }
    Ok((out, swapped))
}

/// Case A iff `a` lies strictly between `c` and `d`.
pub fn classify_3param(ch: &Channel) -> CaseTag {
    if !ch.is_three_param() {
        return CaseTag::NotThreeParam;
    }
    let (lo, hi) = if ch.c() > ch.d() { (ch.d(), ch.c()) } else { (ch.c(), ch.d()) };
    if lo < ch.a() && ch.a() < hi {
        CaseTag::CaseA
    } else {
        CaseTag::CaseB
    }
}

/// Located stationary point of `φ̂`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bisection {
    /// Midpoint of the final bracket, within `eps` of the stationary point.
    pub p_eps: f64,
    /// Number of `h'` evaluations spent.
    pub evaluations: usize,
}

/// Bisection for the stationary point of `φ̂` on a canonical case-B channel.
///
/// Probes the sign of `φ̂'` at `eps`, `1/2` and `1 - eps`. Since
/// `φ̂' = w1·(1 - f)·h2·h'` with `1 - f > 0`, the sign is that of `h2·h'`. A
/// bracket is a `+ → -` change on either half; without one the optimum is
/// taken to be on the boundary and `None` is returned.
pub fn bisect_h_prime(ch: &Channel, w: &Weights, eps: f64) -> Result<Option<Bisection>> {
    check_eps(eps)?;
    if classify_3param(ch) != CaseTag::CaseB || ch.c() <= ch.d() {
        return Err(Error::Precondition(
            "bisection needs a canonical case-B 3-parameter channel (c > d, a outside (d, c))".into(),
        ));
    }
    if w.w1() > w.w2() {
        return Err(Error::Precondition("bisection needs w1 <= w2".into()));
    }
    let mut evaluations = 0;
    let mut sign = |p: f64| -> Result<f64> {
        evaluations += 1;
        Ok((h2(ch, p) * h_prime(ch, w, p)?).signum())
    };
    let (s_lo, s_mid, s_hi) = (sign(eps)?, sign(0.5)?, sign(1.0 - eps)?);
    let (mut lo, mut hi) = if s_lo > 0.0 && s_mid < 0.0 {
        (eps, 0.5)
    } else if s_mid > 0.0 && s_hi < 0.0 {
        (0.5, 1.0 - eps)
    } else {
        return Ok(None);
    };
    while hi - lo >= eps {
        let mid = 0.5 * (lo + hi);
        if sign(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Some(Bisection {
        p_eps: 0.5 * (lo + hi),
        evaluations,
    }))
}

/// Root of `h'` for `a = b = 0`, `0 < d < c`, `w1 < w2`:
///
/// ```text
/// p* = (1 - d - exp(-w2·δ(0,c,d) / (Δ2·(w2 - w1)))) / Δ2
/// ```
///
/// `None` when `p* ∉ (0, 1)`, in which case the optimum is on the boundary.
pub fn closed_form_a0(ch: &Channel, w: &Weights) -> Result<Option<f64>> {
    let (c, d) = (ch.c(), ch.d());
    if !(ch.a() == 0.0 && ch.b() == 0.0 && 0.0 < d && d < c) {
        return Err(Error::Precondition("closed form needs a = b = 0 and 0 < d < c".into()));
    }
    if w.w1() >= w.w2() {
        return Err(Error::Precondition("closed form needs w1 < w2".into()));
    }
    let dc = c - d;
    let expo = -w.w2() * delta_fn(0.0, c, d) / (dc * (w.w2() - w.w1()));
    let p = (1.0 - d - expo.exp()) / dc;
    Ok((p > 0.0 && p < 1.0).then_some(p))
}

/// Optimum for a 3-parameter channel (`a = b`) with `w1 ≤ w2`.
pub fn solve_3param(ch: &Channel, w: &Weights, eps: f64) -> Result<Solution> {
    check_eps(eps)?;
    if !ch.is_three_param() {
        return Err(Error::NotThreeParam { a: ch.a(), b: ch.b() });
    }
    if w.w1() > w.w2() {
        return Err(Error::Precondition(
            "w1 > w2 does not reduce to a 3-parameter problem; use solve_general".into(),
        ));
    }
    let (canon, swapped) = canonicalize_3param(ch)?;
    let unmap = |p: f64| if swapped { 1.0 - p } else { p };
    match classify_3param(&canon) {
        CaseTag::CaseA => Ok(boundary_solution(ch, w, Method::CaseABoundary)),
        _ => {
            let closed = canon.a() == 0.0 && w.w1() < w.w2();
            let (method, located, tol) = if closed {
                (Method::ClosedForm, closed_form_a0(&canon, w)?, None)
            } else {
                let found = bisect_h_prime(&canon, w, eps)?.map(|b| b.p_eps);
                (Method::CaseBBisection, found, Some(eps))
            };
            let boundary = boundary_solution(ch, w, method);
            let interior = match located {
                Some(p) => {
                    let rp = f_map(&canon, w, p)?;
                    rp.in_p2bar.then(|| {
                        let x = input(rp.p1_star, unmap(p));
                        Solution {
                            p2_tolerance: tol,
                            ..Solution::at(ch, w, x, Location::Interior, method)
                        }
                    })
                }
                None => None,
            };
            Ok(prefer(boundary, interior))
        }
    }
}

/// `max_{p1 ∈ [0,1]} Ψ(p1, p)` and its maximizer.
///
/// `Ψ(·, p)` is concave with unconstrained maximizer `f(p)`, so the
/// constrained one is `f(p)` clamped to `[0, 1]`. On `P̄2` this is `φ̂(p)`.
fn profile(ch: &Channel, w: &Weights, p: f64) -> (f64, f64) {
    if h2(ch, p).abs() <= f64::h2_tol() {
        // Ψ(·, p) is affine in p1 here.
        let v0 = psi_raw(ch, w, 0.0, p);
        let v1 = psi_raw(ch, w, 1.0, p);
        return if v1 > v0 { (1.0, v1) } else { (0.0, v0) };
    }
    let p1 = match f_map(ch, w, p) {
        Ok(rp) => rp.p1_star.clamp(0.0, 1.0),
        Err(_) => 0.0,
    };
    (p1, psi_raw(ch, w, p1, p))
}

/// Golden-section maximization on `[lo, hi]` down to width `eps`; returns
/// the best evaluated abscissa and value.
fn golden_max<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, eps: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    let mut best = if f1 >= f2 { (x1, f1) } else { (x2, f2) };
    while hi - lo > eps {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
            if f1 > best.1 {
                best = (x1, f1);
            }
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
            if f2 > best.1 {
                best = (x2, f2);
            }
        }
    }
    best
}

/// Optimum for any nondegenerate channel and weights.
///
/// The `p1`-profile of `Ψ` is scanned on `grid_n - 1` interior `p2` points
/// (skipping the excluded root of `h2`), every local maximum is refined by
/// golden section to width `eps`, and refined points with `f(p2) ∈ (0, 1)`
/// compete with `w1·e1` and `w2·e2`.
pub fn solve_general(ch: &Channel, w: &Weights, grid_n: usize, eps: f64) -> Result<Solution> {
    if let Some(why) = ch.degeneracy() {
        return Err(Error::DegenerateChannel(why));
    }
    solve_any(ch, w, grid_n, eps)
}

/// As [`solve_general`], but also accepts the degenerate channels, whose
/// optimum is always an axis intercept.
fn solve_any(ch: &Channel, w: &Weights, grid_n: usize, eps: f64) -> Result<Solution> {
    check_eps(eps)?;
    if grid_n < 2 {
        return Err(Error::Precondition(format!("grid_n = {grid_n} must be at least 2")));
    }
    if w.w1() > w.w2() {
        return solve_any(&swap_users(ch), &w.swapped(), grid_n, eps).map(Solution::unswap);
    }
    let boundary = boundary_solution(ch, w, Method::GeneralScan);
    if ch.degeneracy().is_some() {
        return Ok(boundary);
    }

    let step = 1.0 / grid_n as f64;
    let samples: Vec<(f64, f64)> = (1..grid_n)
        .map(|i| i as f64 * step)
        .filter(|&p| h2(ch, p).abs() > f64::h2_tol())
        .map(|p| (p, profile(ch, w, p).1))
        .collect();

    let mut best: Option<Solution> = None;
    for k in 0..samples.len() {
        let (p, v) = samples[k];
        let left_ok = k == 0 || v > samples[k - 1].1;
        let right_ok = k + 1 == samples.len() || v >= samples[k + 1].1;
        if !(left_ok && right_ok) {
            continue;
        }
        let lo = if k == 0 { (p - step).max(1e-12) } else { samples[k - 1].0 };
        let hi = if k + 1 == samples.len() {
            (p + step).min(1.0 - 1e-12)
        } else {
            samples[k + 1].0
        };
        let (p_ref, _) = golden_max(|t| profile(ch, w, t).1, lo, hi, eps);
        let Ok(rp) = f_map(ch, w, p_ref) else { continue };
        if !rp.in_p2bar {
            continue;
        }
        let sol = Solution {
            p2_tolerance: Some(eps),
            ..Solution::at(ch, w, input(rp.p1_star, p_ref), Location::Interior, Method::GeneralScan)
        };
        if best.is_none_or(|b| sol.value > b.value) {
            best = Some(sol);
        }
    }
    Ok(prefer(boundary, best))
}

/// Routes to [`solve_3param`] when `a = b` and `w1 ≤ w2`, else to [`solve_general`].
pub fn solve(ch: &Channel, w: &Weights, grid_n: usize, eps: f64) -> Result<Solution> {
    if let Some(why) = ch.degeneracy() {
        return Err(Error::DegenerateChannel(why));
    }
    if ch.is_three_param() && w.w1() <= w.w2() {
        match solve_3param(ch, w, eps) {
            Err(Error::DegenerateChannel(_)) => {}
            other => return other,
        }
    }
    solve_general(ch, w, grid_n, eps)
}

/// One vertex of the region boundary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionVertex {
    pub rate: RatePair,
    /// Sweep weights that produced this vertex; `None` for an axis intercept
    /// no swept weight reached.
    pub weights: Option<Weights>,
    pub input: InputDist,
}

/// Concave chain of the capacity-region boundary from `(e1, 0)` to `(0, e2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionBoundary {
    pub vertices: Vec<RegionVertex>,
    pub e1: f64,
    pub e2: f64,
}

fn cross(o: RatePair, a: RatePair, b: RatePair) -> f64 {
    (a.r1 - o.r1) * (b.r2 - o.r2) - (a.r2 - o.r2) * (b.r1 - o.r1)
}

/// Sweeps `num_weights` Chebyshev-spaced weight vectors with `w1 + w2 = 2`
/// and returns the upper-right convex chain of the optimal rate pairs and
/// the axis intercepts.
///
/// Degenerate channels are accepted; their region is a segment on one axis
/// (or the origin alone).
pub fn region_boundary(ch: &Channel, num_weights: usize, grid_n: usize, eps: f64) -> Result<RegionBoundary> {
    if num_weights < 3 {
        return Err(Error::Precondition(format!("num_weights = {num_weights} must be at least 3")));
    }
    let (u1, u2) = (e1(ch), e2(ch));
    let mut points: Vec<RegionVertex> = Vec::with_capacity(num_weights + 2);
    for k in 0..num_weights {
        let theta = PI * (k as f64 + 0.5) / num_weights as f64;
        let w1 = 1.0 + theta.cos();
        let w = Weights::new(w1, 2.0 - w1)?;
        let s = solve_any(ch, &w, grid_n, eps)?;
        points.push(RegionVertex {
            rate: s.rates,
            weights: Some(w),
            input: s.input,
        });
    }
    points.push(RegionVertex {
        rate: RatePair::new(u1.capacity, 0.0),
        weights: None,
        input: input(u1.p_opt, u1.fixed_other as f64),
    });
    points.push(RegionVertex {
        rate: RatePair::new(0.0, u2.capacity),
        weights: None,
        input: input(u2.fixed_other as f64, u2.p_opt),
    });

    // Left to right; on equal r1 the higher point first so the chain starts at (0, e2).
    points.sort_by(|p, q| {
        p.rate
            .r1
            .total_cmp(&q.rate.r1)
            .then(q.rate.r2.total_cmp(&p.rate.r2))
            .then(q.weights.is_some().cmp(&p.weights.is_some()))
    });
    let mut merged: Vec<RegionVertex> = Vec::with_capacity(points.len());
    for p in points {
        match merged.iter_mut().find(|m| {
            (m.rate.r1 - p.rate.r1).abs() <= MERGE_TOL && (m.rate.r2 - p.rate.r2).abs() <= MERGE_TOL
        }) {
            Some(m) => {
                if m.weights.is_none() {
                    m.weights = p.weights;
                }
            }
            None => merged.push(p),
        }
    }

    let scale = u1.capacity.max(u2.capacity).max(f64::MIN_POSITIVE);
    let flat = 1e-12 * scale * scale;
    let mut hull: Vec<RegionVertex> = Vec::with_capacity(merged.len());
    for p in merged {
        while hull.len() >= 2 && cross(hull[hull.len() - 2].rate, hull[hull.len() - 1].rate, p.rate) >= -flat {
            hull.pop();
        }
        hull.push(p);
    }
    hull.reverse();
    Ok(RegionBoundary {
        vertices: hull,
        e1: u1.capacity,
        e2: u2.capacity,
    })
}
