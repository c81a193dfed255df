//! Brute-force ground truth, independent of the closed forms in
//! [`crate::info`] and [`crate::objective`].
//!
//! Mutual informations are recomputed here from the explicit joint law of
//! `(X1, X2, Y)`; nothing in this module calls the entropy-difference path.

#![allow(clippy::needless_range_loop)]

use crate::error::Result;
use crate::model::{Corner, InputDist, RatePair};
use crate::{Channel, Weights};

/// Best point of a uniform grid search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridResult {
    pub best_input: InputDist<f64>,
    pub best_value: f64,
    /// Number of grid intervals per axis; `(grid_n + 1)²` points were evaluated.
    pub grid_n: usize,
    pub corner: Corner,
}

/// All five mutual informations of the product input, in nats.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TableInfo {
    pub y_x1: f64,
    pub y_x2: f64,
    pub y_x2_given_x1: f64,
    pub y_x1_given_x2: f64,
    pub joint: f64,
}

impl TableInfo {
    pub fn c1(&self) -> RatePair<f64> {
        RatePair::new(self.y_x1, self.y_x2_given_x1)
    }

    pub fn c2(&self) -> RatePair<f64> {
        RatePair::new(self.y_x1_given_x2, self.y_x2)
    }
}

/// `x ln(x / y)` summed only over positive mass.
fn mass_log(mass: f64, ratio_num: f64, ratio_den: f64) -> f64 {
    if mass > 0.0 {
        mass * (ratio_num / ratio_den).ln()
    } else {
        0.0
    }
}

/// Every mutual information from the 2×2×2 joint table
/// `P(x1, x2, y) = q1(x1)·q2(x2)·W(y | x1, x2)`.
pub fn mi_joint_table(ch: &Channel, input: &InputDist<f64>) -> TableInfo {
    let q1 = [input.p1(), 1.0 - input.p1()];
    let q2 = [input.p2(), 1.0 - input.p2()];
    let w1 = [[ch.a(), ch.b()], [ch.c(), ch.d()]];
    let law = |s: usize, t: usize, y: usize| if y == 0 { w1[s][t] } else { 1.0 - w1[s][t] };

    let mut joint = [[[0.0; 2]; 2]; 2];
    for s in 0..2 {
        for t in 0..2 {
            for y in 0..2 {
                joint[s][t][y] = q1[s] * q2[t] * law(s, t, y);
            }
        }
    }
    let mut py = [0.0; 2];
    let mut p_sy = [[0.0; 2]; 2];
    let mut p_ty = [[0.0; 2]; 2];
    for s in 0..2 {
        for t in 0..2 {
            for y in 0..2 {
                py[y] += joint[s][t][y];
                p_sy[s][y] += joint[s][t][y];
                p_ty[t][y] += joint[s][t][y];
            }
        }
    }

    let mut info = TableInfo {
        y_x1: 0.0,
        y_x2: 0.0,
        y_x2_given_x1: 0.0,
        y_x1_given_x2: 0.0,
        joint: 0.0,
    };
    for s in 0..2 {
        for y in 0..2 {
            info.y_x1 += mass_log(p_sy[s][y], p_sy[s][y], q1[s] * py[y]);
            info.y_x2 += mass_log(p_ty[s][y], p_ty[s][y], q2[s] * py[y]);
        }
    }
    for s in 0..2 {
        for t in 0..2 {
            for y in 0..2 {
                let m = joint[s][t][y];
                let pst = q1[s] * q2[t];
                info.joint += mass_log(m, m, pst * py[y]);
                info.y_x2_given_x1 += mass_log(m, m * q1[s], pst * p_sy[s][y]);
                info.y_x1_given_x2 += mass_log(m, m * q2[t], pst * p_ty[t][y]);
            }
        }
    }
    info
}

/// `Σ_y w ln w` for the binary law `(w, 1 - w)`.
fn neg_ent(w: f64) -> f64 {
    let t = |x: f64| if x > 0.0 { x * x.ln() } else { 0.0 };
    t(w) + t(1.0 - w)
}

/// Maximum of `max(w·C1, w·C2)` over the `(grid_n + 1)²` uniform grid on `[0, 1]²`.
///
/// Ties go to the smallest `p1`, then the smallest `p2`.
pub fn grid_max(ch: &Channel, w: &Weights, grid_n: usize) -> GridResult {
    grid_max_over(ch, w, grid_n, &[Corner::C1, Corner::C2])
}

/// As [`grid_max`], restricted to the listed corners.
///
/// The joint-table sums are regrouped so that only `Σ_y p(y) ln p(y)` has to
/// be evaluated per grid point; the conditional-law terms are tabulated per
/// row and per column.
pub fn grid_max_over(ch: &Channel, w: &Weights, grid_n: usize, corners: &[Corner]) -> GridResult {
    assert!(grid_n >= 2, "grid_n must be at least 2");
    assert!(!corners.is_empty());
    let n = grid_n;
    let step = 1.0 / n as f64;
    let coord = |i: usize| if i == n { 1.0 } else { i as f64 * step };
    let (a, b, c, d) = (ch.a(), ch.b(), ch.c(), ch.d());
    let (na, nb, nc, nd) = (neg_ent(a), neg_ent(b), neg_ent(c), neg_ent(d));

    // Σ_s q1(s) Σ_y W1(y|s) ln W1(y|s), with W1(·|s) the law of Y given X1 = s.
    let col: Vec<f64> = (0..=n)
        .map(|j| {
            let p2 = coord(j);
            (neg_ent(p2 * a + (1.0 - p2) * b), neg_ent(p2 * c + (1.0 - p2) * d))
        })
        .map(|(x, y)| x - y)
        .collect();
    let col_base: Vec<f64> = (0..=n)
        .map(|j| neg_ent(coord(j) * c + (1.0 - coord(j)) * d))
        .collect();
    let row: Vec<(f64, f64)> = (0..=n)
        .map(|i| {
            let p1 = coord(i);
            (neg_ent(p1 * a + (1.0 - p1) * c), neg_ent(p1 * b + (1.0 - p1) * d))
        })
        .collect();

    let want_c1 = corners.contains(&Corner::C1);
    let want_c2 = corners.contains(&Corner::C2);
    let mut best = (f64::NEG_INFINITY, 0, 0, Corner::C1);
    for i in 0..=n {
        let p1 = coord(i);
        let (r_a, r_b) = row[i];
        for j in 0..=n {
            let p2 = coord(j);
            let y1 = p1 * p2 * a + p1 * (1.0 - p2) * b + (1.0 - p1) * p2 * c + (1.0 - p1) * (1.0 - p2) * d;
            let ny = neg_ent(y1);
            // Σ q1 q2 Σ W ln W
            let cond_joint = p1 * (p2 * na + (1.0 - p2) * nb) + (1.0 - p1) * (p2 * nc + (1.0 - p2) * nd);
            let joint = cond_joint - ny;
            let cond_x1 = p1 * col[j] + col_base[j];
            let cond_x2 = p2 * r_a + (1.0 - p2) * r_b;
            let i_x1 = cond_x1 - ny;
            let i_x2 = cond_x2 - ny;
            if want_c1 {
                let v = w.w1() * i_x1 + w.w2() * (joint - i_x1);
                if v > best.0 {
                    best = (v, i, j, Corner::C1);
                }
            }
            if want_c2 {
                let v = w.w1() * (joint - i_x2) + w.w2() * i_x2;
                if v > best.0 {
                    best = (v, i, j, Corner::C2);
                }
            }
        }
    }
    GridResult {
        best_input: InputDist::new(coord(best.1), coord(best.2)).expect("grid point in the unit square"),
        best_value: best.0,
        grid_n,
        corner: best.3,
    }
}

/// Central difference at `x`, Richardson-extrapolated once:
/// `(4·D(step/2) - D(step)) / 3`.
pub fn fd_derivative<F>(f: F, x: f64, step: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let central = |s: f64| -> Result<f64> { Ok((f(x + s)? - f(x - s)?) / (2.0 * s)) };
    let coarse = central(step)?;
    let fine = central(step / 2.0)?;
    Ok((4.0 * fine - coarse) / 3.0)
}
