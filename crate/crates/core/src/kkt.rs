//! KKT analysis of `Ψ = w·C1` over product inputs and the image region
//! `G1 = {C1(q1, q2)}`.
//!
//! With `q_u = (p_u, 1 - p_u)` the simplex vector of user `u`, the KKT
//! conditions read `∂Ψ/∂q_us = Ψ - w_u` where `q_us > 0` and `≤ Ψ - w_u`
//! where `q_us = 0`. The partial derivatives are
//!
//! ```text
//! ∂Ψ/∂q_1s = w1·(D(W1_s ‖ p_Y) - 1) + w2·J_s
//! ∂Ψ/∂q_2t = w1·Σ_s q_1s·(D(W_st ‖ p_Y) - D(W_st ‖ W1_s)) + w2·(Σ_s q_1s·D(W_st ‖ W1_s) - 1)
//! ```
//!
//! where `W_st` is the output law for inputs `(s, t)`, `W1_s` the output law
//! given `X1 = s` and `J_s = H(Y | X1 = s) - H(Y | X1 = s, X2)`.
//!
//! At an interior point the two equalities of user `u` are
//! `(1 - p_u)·∂Ψ/∂p_u = 0` and `-p_u·∂Ψ/∂p_u = 0`, so
//! `kkt_residual = max_u max(p_u, 1 - p_u)·|∂Ψ/∂p_u|` and
//!
//! ```text
//! kkt_residual ≤ ‖∇Ψ‖∞ ≤ GRAD_RESIDUAL_CONSTANT · kkt_residual
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::info::{corner_c1, h, kl, prob_y1};
use crate::model::Corner;
use crate::objective::{grad_psi, psi};
use crate::oracle::grid_max_over;
use crate::single_user::binary_capacity;
use crate::{Channel, InputDist, RatePair, Weights};

/// At interior points `‖∇Ψ‖∞ ≤ 2·kkt_residual`.
pub const GRAD_RESIDUAL_CONSTANT: f64 = 2.0;
/// Default acceptance threshold of a polished KKT point.
pub const DEFAULT_KKT_TOL: f64 = 1e-8;
/// Default side of the Newton seed grid.
pub const DEFAULT_SEED_GRID: usize = 64;
/// Default number of angular bins of [`trace_g1`].
pub const TRACE_BINS: usize = 1024;

const NEWTON_MAX_ITER: usize = 50;
const GRAD_TARGET: f64 = 1e-12;
const JACOBIAN_STEP: f64 = 1e-6;
const HESSIAN_STEP: f64 = 1e-5;
const EIG_THRESHOLD: f64 = 1e-8;
const DEDUPE_RADIUS: f64 = 1e-8;
const ORACLE_GRID: usize = 2000;
const ORACLE_SLACK: f64 = 5e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Kind {
    GlobalMax,
    LocalMax,
    Saddle,
    LocalMin,
    Degenerate,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KktPoint {
    pub input: InputDist,
    pub value: f64,
    /// Largest violation of the KKT conditions.
    pub residual: f64,
    pub kind: Kind,
    pub on_boundary: bool,
}

fn check_smooth(ch: &Channel) -> Result<()> {
    for (name, v) in [("a", ch.a()), ("b", ch.b()), ("c", ch.c()), ("d", ch.d())] {
        if v == 0.0 || v == 1.0 {
            return Err(Error::NotDifferentiable { name, value: v });
        }
    }
    Ok(())
}

/// `(∂Ψ/∂q_11, ∂Ψ/∂q_12)` and `(∂Ψ/∂q_21, ∂Ψ/∂q_22)`.
fn simplex_gradients(ch: &Channel, w: &Weights, x: &InputDist) -> ([f64; 2], [f64; 2]) {
    let (p1, p2) = (x.p1(), x.p2());
    let y = prob_y1(ch, x);
    let w_st = [[ch.a(), ch.b()], [ch.c(), ch.d()]];
    let q2 = [p2, 1.0 - p2];
    let q1 = [p1, 1.0 - p1];
    let w1_s = [ch.b() + p2 * ch.delta1(), ch.d() + p2 * ch.delta2()];

    let mut g1 = [0.0; 2];
    for s in 0..2 {
        let j = h(w1_s[s]) - q2[0] * h(w_st[s][0]) - q2[1] * h(w_st[s][1]);
        g1[s] = w.w1() * (kl(w1_s[s], y) - 1.0) + w.w2() * j;
    }
    let mut g2 = [0.0; 2];
    for t in 0..2 {
        let (mut via_y, mut via_x1) = (0.0, 0.0);
        for s in 0..2 {
            let inner = kl(w_st[s][t], w1_s[s]);
            via_y += q1[s] * (kl(w_st[s][t], y) - inner);
            via_x1 += q1[s] * inner;
        }
        g2[t] = w.w1() * via_y + w.w2() * (via_x1 - 1.0);
    }
    (g1, g2)
}

/// `λ_u - ∂Ψ/∂q_us` for each coordinate, user-major.
fn slacks(ch: &Channel, w: &Weights, x: &InputDist) -> [f64; 4] {
    let value = psi(ch, w, x);
    let (g1, g2) = simplex_gradients(ch, w, x);
    let (l1, l2) = (value - w.w1(), value - w.w2());
    [l1 - g1[0], l1 - g1[1], l2 - g2[0], l2 - g2[1]]
}

fn residual_from(slack: [f64; 4], q: [f64; 4]) -> f64 {
    slack
        .iter()
        .zip(q)
        .map(|(&s, q)| if q > 0.0 { s.abs() } else { (-s).max(0.0) })
        .fold(0.0, f64::max)
}

fn coords(x: &InputDist) -> [f64; 4] {
    [x.p1(), 1.0 - x.p1(), x.p2(), 1.0 - x.p2()]
}

/// Maximum violation of the KKT conditions at `x`.
pub fn kkt_residual(ch: &Channel, w: &Weights, x: &InputDist) -> Result<f64> {
    check_smooth(ch)?;
    Ok(residual_from(slacks(ch, w, x), coords(x)))
}

fn grad(ch: &Channel, w: &Weights, p: [f64; 2]) -> Option<[f64; 2]> {
    let x = InputDist::new(p[0], p[1]).ok()?;
    grad_psi(ch, w, &x).ok().map(|(g1, g2)| [g1, g2])
}

fn norm_inf(v: [f64; 2]) -> f64 {
    v[0].abs().max(v[1].abs())
}

fn open(p: [f64; 2]) -> bool {
    p.iter().all(|&t| t > 0.0 && t < 1.0)
}

/// Central-difference Jacobian of the gradient, symmetrized.
fn hessian(ch: &Channel, w: &Weights, p: [f64; 2], step: f64) -> Option<[[f64; 2]; 2]> {
    let mut cols = [[0.0; 2]; 2];
    for k in 0..2 {
        let (mut up, mut dn) = (p, p);
        up[k] += step;
        dn[k] -= step;
        let (gu, gd) = (grad(ch, w, up)?, grad(ch, w, dn)?);
        cols[k] = [(gu[0] - gd[0]) / (2.0 * step), (gu[1] - gd[1]) / (2.0 * step)];
    }
    let off = 0.5 * (cols[0][1] + cols[1][0]);
    Some([[cols[0][0], off], [off, cols[1][1]]])
}

fn eigenvalues(m: [[f64; 2]; 2]) -> (f64, f64) {
    let mean = 0.5 * (m[0][0] + m[1][1]);
    let rad = (0.25 * (m[0][0] - m[1][1]).powi(2) + m[0][1] * m[0][1]).sqrt();
    (mean - rad, mean + rad)
}

/// Damped Newton iteration on `∇Ψ = 0` from `p`.
fn newton(ch: &Channel, w: &Weights, mut p: [f64; 2]) -> Option<[f64; 2]> {
    let mut g = grad(ch, w, p)?;
    for _ in 0..NEWTON_MAX_ITER {
        if norm_inf(g) <= GRAD_TARGET {
            break;
        }
        let j = hessian(ch, w, p, JACOBIAN_STEP)?;
        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        if det == 0.0 || !det.is_finite() {
            return None;
        }
        let step = [
            -(j[1][1] * g[0] - j[0][1] * g[1]) / det,
            -(-j[1][0] * g[0] + j[0][0] * g[1]) / det,
        ];
        let mut t = 1.0;
        let mut accepted = false;
        while t > 1e-10 {
            let q = [p[0] + t * step[0], p[1] + t * step[1]];
            if open(q) {
                if let Some(gq) = grad(ch, w, q) {
                    if norm_inf(gq) < norm_inf(g) {
                        p = q;
                        g = gq;
                        accepted = true;
                        break;
                    }
                }
            }
            t *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    Some(p)
}

fn classify_interior(ch: &Channel, w: &Weights, p: [f64; 2]) -> Kind {
    let Some(m) = hessian(ch, w, p, HESSIAN_STEP) else {
        return Kind::Degenerate;
    };
    let (lo, hi) = eigenvalues(m);
    if hi < -EIG_THRESHOLD {
        Kind::LocalMax
    } else if lo > EIG_THRESHOLD {
        Kind::LocalMin
    } else if lo < -EIG_THRESHOLD && hi > EIG_THRESHOLD {
        Kind::Saddle
    } else {
        Kind::Degenerate
    }
}

/// Central difference of `∂Ψ/∂p_k` along the free coordinate `k` of an edge point.
fn edge_curvature(ch: &Channel, w: &Weights, x: &InputDist, k: usize) -> f64 {
    let step = HESSIAN_STEP;
    let p = [x.p1(), x.p2()];
    if p[k] - step < 0.0 || p[k] + step > 1.0 {
        return 0.0;
    }
    let (mut up, mut dn) = (p, p);
    up[k] += step;
    dn[k] -= step;
    match (grad(ch, w, up), grad(ch, w, dn)) {
        (Some(gu), Some(gd)) => (gu[k] - gd[k]) / (2.0 * step),
        _ => 0.0,
    }
}

fn classify_boundary(ch: &Channel, w: &Weights, x: &InputDist) -> Kind {
    let slack = slacks(ch, w, x);
    let q = coords(x);
    // Every inactive coordinate must strictly lose value.
    let strict = (0..4).filter(|&i| q[i] == 0.0).all(|i| slack[i] > EIG_THRESHOLD);
    let concave_along = (0..2)
        .filter(|&k| [x.p1(), x.p2()][k] > 0.0 && [x.p1(), x.p2()][k] < 1.0)
        .all(|k| edge_curvature(ch, w, x, k) < -EIG_THRESHOLD);
    if strict && concave_along {
        Kind::LocalMax
    } else {
        Kind::Degenerate
    }
}

/// Edge and corner candidates: each edge is a concave single-user problem.
fn boundary_candidates(ch: &Channel) -> Vec<InputDist> {
    let mut out = Vec::with_capacity(8);
    let edge = |t1: f64, t2: f64| binary_capacity(t1, t2).p_opt;
    out.push(InputDist::new(edge(ch.b(), ch.d()), 0.0).expect("probability"));
    out.push(InputDist::new(edge(ch.a(), ch.c()), 1.0).expect("probability"));
    out.push(InputDist::new(0.0, edge(ch.c(), ch.d())).expect("probability"));
    out.push(InputDist::new(1.0, edge(ch.a(), ch.b())).expect("probability"));
    for (p1, p2) in [(0.0, 0.0), (0.0, 1.0), (1.0, 0.0), (1.0, 1.0)] {
        out.push(InputDist::new(p1, p2).expect("corner"));
    }
    out
}

fn near(a: &InputDist, b: &InputDist) -> bool {
    (a.p1() - b.p1()).abs() <= DEDUPE_RADIUS && (a.p2() - b.p2()).abs() <= DEDUPE_RADIUS
}

/// Enumerates and classifies the KKT points of `Ψ`.
///
/// Interior points come from damped Newton iterations seeded on a
/// `grid_n × grid_n` grid; boundary points from the exact maximizers of the
/// four edge problems and the corners. Only points with residual `≤ kkt_tol`
/// are returned, sorted by `(p1, p2)`. The best local maximum is promoted to
/// [`Kind::GlobalMax`] when it reaches the brute-force grid maximum.
pub fn find_kkt_points(ch: &Channel, w: &Weights, grid_n: usize, kkt_tol: f64) -> Result<Vec<KktPoint>> {
    check_smooth(ch)?;
    if grid_n == 0 {
        return Err(Error::Precondition("grid_n must be positive".into()));
    }
    let mut points: Vec<KktPoint> = Vec::new();
    let push = |points: &mut Vec<KktPoint>, x: InputDist, on_boundary: bool| {
        if points.iter().any(|k| near(&k.input, &x)) {
            return;
        }
        let residual = residual_from(slacks(ch, w, &x), coords(&x));
        if residual > kkt_tol {
            return;
        }
        let kind = if on_boundary {
            classify_boundary(ch, w, &x)
        } else {
            classify_interior(ch, w, [x.p1(), x.p2()])
        };
        points.push(KktPoint {
            input: x,
            value: psi(ch, w, &x),
            residual,
            kind,
            on_boundary,
        });
    };

    for x in boundary_candidates(ch) {
        push(&mut points, x, true);
    }
    let n = grid_n as f64;
    for i in 0..grid_n {
        for j in 0..grid_n {
            let seed = [(i as f64 + 0.5) / n, (j as f64 + 0.5) / n];
            let Some(p) = newton(ch, w, seed) else { continue };
            if open(p) {
                push(&mut points, InputDist::new(p[0], p[1]).expect("open square"), false);
            }
        }
    }

    let oracle = grid_max_over(ch, w, ORACLE_GRID, &[Corner::C1]).best_value;
    let best = points
        .iter()
        .enumerate()
        .filter(|(_, k)| k.kind == Kind::LocalMax)
        .max_by(|(_, x), (_, y)| x.value.total_cmp(&y.value))
        .map(|(i, _)| i);
    if let Some(i) = best {
        if points[i].value >= oracle - ORACLE_SLACK {
            points[i].kind = Kind::GlobalMax;
        }
    }
    points.sort_by(|x, y| {
        x.input
            .p1()
            .total_cmp(&y.input.p1())
            .then(x.input.p2().total_cmp(&y.input.p2()))
    });
    Ok(points)
}

/// Outline of `G1`: evaluates `C1` on a `(grid_n + 1)²` input grid and keeps,
/// for each of [`TRACE_BINS`] angular sectors around the centroid of the
/// cloud, the farthest point. Output is ordered by angle.
pub fn trace_g1(ch: &Channel, grid_n: usize) -> Vec<RatePair> {
    let n = grid_n.max(1);
    let mut cloud = Vec::with_capacity((n + 1) * (n + 1));
    for i in 0..=n {
        for j in 0..=n {
            let x = InputDist::new(i as f64 / n as f64, j as f64 / n as f64).expect("grid point");
            cloud.push(corner_c1(ch, &x));
        }
    }
    let m = cloud.len() as f64;
    let cx = cloud.iter().map(|r| r.r1).sum::<f64>() / m;
    let cy = cloud.iter().map(|r| r.r2).sum::<f64>() / m;

    let spread = cloud
        .iter()
        .map(|r| (r.r1 - cx).hypot(r.r2 - cy))
        .fold(0.0, f64::max);
    if spread <= 1e-12 {
        return vec![RatePair::new(cx, cy)];
    }

    let mut bins: Vec<Option<(f64, RatePair)>> = vec![None; TRACE_BINS];
    for r in cloud {
        let (dx, dy) = (r.r1 - cx, r.r2 - cy);
        let angle = dy.atan2(dx) + std::f64::consts::PI;
        let k = ((angle / std::f64::consts::TAU * TRACE_BINS as f64) as usize).min(TRACE_BINS - 1);
        let radius = dx.hypot(dy);
        if bins[k].is_none_or(|(best, _)| radius > best) {
            bins[k] = Some((radius, r));
        }
    }
    bins.into_iter().flatten().map(|(_, r)| r).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objective::grad_psi;
    use proptest::prelude::*;

    fn ch(a: f64, b: f64, c: f64, d: f64) -> Channel {
        Channel::new(a, b, c, d).unwrap()
    }

    fn w(w1: f64, w2: f64) -> Weights {
        Weights::new(w1, w2).unwrap()
    }

    /// `Ψ` written as `Σ q·W·ln(W / mixture)` so that it extends to
    /// unnormalized simplex vectors, for differentiating in `q` directly.
    fn psi_q(c: &Channel, wt: &Weights, q1: [f64; 2], q2: [f64; 2]) -> f64 {
        let law = |p: f64| [p, 1.0 - p];
        let w_st = [[law(c.a()), law(c.b())], [law(c.c()), law(c.d())]];
        let mut w1_s = [[0.0; 2]; 2];
        let mut y = [0.0; 2];
        for s in 0..2 {
            for t in 0..2 {
                for k in 0..2 {
                    w1_s[s][k] += q2[t] * w_st[s][t][k];
                    y[k] += q1[s] * q2[t] * w_st[s][t][k];
                }
            }
        }
        let (mut i1, mut i21) = (0.0, 0.0);
        for s in 0..2 {
            for k in 0..2 {
                i1 += q1[s] * w1_s[s][k] * (w1_s[s][k] / y[k]).ln();
                for t in 0..2 {
                    let m = w_st[s][t][k];
                    i21 += q1[s] * q2[t] * m * (m / w1_s[s][k]).ln();
                }
            }
        }
        wt.w1() * i1 + wt.w2() * i21
    }

    #[test]
    fn simplex_gradients_match_finite_differences() {
        let c = ch(0.7, 0.2, 0.35, 0.85);
        let wt = w(0.6, 1.3);
        let x = InputDist::new(0.3, 0.55).unwrap();
        let (g1, g2) = simplex_gradients(&c, &wt, &x);
        let q1 = [0.3, 0.7];
        let q2 = [0.55, 0.45];
        let e = 1e-6;
        for s in 0..2 {
            let (mut up, mut dn) = (q1, q1);
            up[s] += e;
            dn[s] -= e;
            let fd = (psi_q(&c, &wt, up, q2) - psi_q(&c, &wt, dn, q2)) / (2.0 * e);
            assert!((fd - g1[s]).abs() <= 1e-8, "{fd} {}", g1[s]);
            let (mut up, mut dn) = (q2, q2);
            up[s] += e;
            dn[s] -= e;
            let fd = (psi_q(&c, &wt, q1, up) - psi_q(&c, &wt, q1, dn)) / (2.0 * e);
            assert!((fd - g2[s]).abs() <= 1e-8, "{fd} {}", g2[s]);
        }
    }

    #[test]
    fn constant_objective_is_stationary_everywhere() {
        // Ψ ≡ 0, so ∂Ψ/∂q_us = -w_u = Ψ - w_u at every point.
        let c = ch(0.5, 0.5, 0.5, 0.5);
        let wt = w(1.0, 2.0);
        for (p1, p2) in [(0.4, 0.6), (0.0, 0.3), (1.0, 1.0)] {
            let r = kkt_residual(&c, &wt, &InputDist::new(p1, p2).unwrap()).unwrap();
            assert!(r <= 1e-15);
        }
    }

    #[test]
    fn residual_needs_smooth_channel() {
        let x = InputDist::new(0.4, 0.6).unwrap();
        assert!(matches!(
            kkt_residual(&ch(0.0, 0.5, 0.5, 0.2), &w(1.0, 1.0), &x),
            Err(Error::NotDifferentiable { .. })
        ));
    }

    proptest! {
        #[test]
        fn residual_brackets_gradient(
            a in 0.01..0.99f64, b in 0.01..0.99f64, c in 0.01..0.99f64, d in 0.01..0.99f64,
            w1 in 0.1..2.0f64, w2 in 0.1..2.0f64, p1 in 0.05..0.95f64, p2 in 0.05..0.95f64,
        ) {
            let chn = ch(a, b, c, d);
            let wt = w(w1, w2);
            let x = InputDist::new(p1, p2).unwrap();
            let r = kkt_residual(&chn, &wt, &x).unwrap();
            let (g1, g2) = grad_psi(&chn, &wt, &x).unwrap();
            let g = g1.abs().max(g2.abs());
            let scale = 1e-12 * (1.0 + g);
            prop_assert!(r <= g + scale);
            prop_assert!(g <= GRAD_RESIDUAL_CONSTANT * r + scale);
        }
    }

    #[test]
    fn counterexample_has_three_kkt_points() {
        let c = ch(2.0 / 3.0, 0.25, 1e-3, 0.625);
        let pts = find_kkt_points(&c, &w(1.0, 1.0), 32, DEFAULT_KKT_TOL).unwrap();
        let kinds: Vec<_> = pts.iter().map(|k| (k.kind, k.on_boundary)).collect();
        assert_eq!(pts.len(), 3, "{pts:?}");
        assert!(kinds.contains(&(Kind::GlobalMax, true)));
        assert!(kinds.contains(&(Kind::LocalMax, true)));
        assert!(kinds.contains(&(Kind::Saddle, false)));
        assert!(pts.iter().all(|k| k.residual <= 1e-8));
    }

    #[test]
    fn interior_global_max_example() {
        let c = ch(0.2, 0.4, 0.5, 0.3);
        let pts = find_kkt_points(&c, &w(0.2, 0.8), 16, DEFAULT_KKT_TOL).unwrap();
        assert!(pts.iter().any(|k| k.kind == Kind::GlobalMax && !k.on_boundary), "{pts:?}");
    }

    #[test]
    fn case_a_has_no_interior_kkt_point() {
        let c = ch(0.3, 0.3, 0.5, 0.2);
        for wt in [w(1.0, 1.0), w(0.5, 1.5)] {
            let pts = find_kkt_points(&c, &wt, 16, DEFAULT_KKT_TOL).unwrap();
            assert!(pts.iter().all(|k| k.on_boundary), "{pts:?}");
        }
    }

    #[test]
    fn trace_trivial_regions() {
        let pts = trace_g1(&ch(0.5, 0.5, 0.5, 0.5), 20);
        assert_eq!(pts.len(), 1);
        assert!(pts[0].r1.abs() <= 1e-15 && pts[0].r2.abs() <= 1e-15);
        let pts = trace_g1(&ch(1.0, 1.0, 0.0, 0.0), 20);
        assert!(pts.iter().all(|r| r.r2.abs() <= 1e-15));
        let max = pts.iter().map(|r| r.r1).fold(0.0, f64::max);
        assert!((max - std::f64::consts::LN_2).abs() <= 1e-15);
    }
}
