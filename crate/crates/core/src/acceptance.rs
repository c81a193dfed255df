//! The acceptance suite shared by the `acceptance` test target and the
//! `verify` subcommand.
//!
//! Each criterion returns a [`Report`] with the worst measured deviation, the
//! tolerance it is held to and the wall-clock time against its budget.
//! Random samples come from a seeded generator, so runs are reproducible.

use std::fmt;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::info::{kl_divergence, prob_y1};
use crate::kkt::{find_kkt_points, trace_g1, Kind, DEFAULT_KKT_TOL, DEFAULT_SEED_GRID};
use crate::objective::{delta_fn, f_map, h2, h3, h4, phi_hat, phi_hat_prime, v_fn};
use crate::oracle::{fd_derivative, grid_max, mi_joint_table};
use crate::single_user::{e1, e2};
use crate::solver::{
    bisect_h_prime, classify_3param, closed_form_a0, region_boundary, solve_3param, solve_general, CaseTag,
    Location, DEFAULT_EPS, DEFAULT_GRID, DEFAULT_SWEEP,
};
use crate::{Channel, InputDist, RatePair, Weights};

/// Side of the brute-force oracle grid (`(n + 1)²` points).
pub const ORACLE_GRID: usize = 2000;
/// Grid-resolution bound on solver/oracle disagreement, nats.
pub const ORACLE_TOL: f64 = 5e-6;

/// Channels and weights the suite runs on. Every field defaults to the
/// built-in value, so a fixture file only lists what it overrides.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Fixtures {
    pub seed: u64,
    /// Channel with three KKT points, one of them an interior saddle.
    pub counterexample: [f64; 4],
    pub counterexample_weights: [f64; 2],
    /// Channel whose weighted sum-rate optimum is interior.
    pub interior: [f64; 4],
    pub interior_weights: [f64; 2],
    /// `(c, d)` of the `a = b = 0` worked instance.
    pub closed_form_cd: [f64; 2],
    pub closed_form_weights: [f64; 2],
    pub closed_form_p_star: f64,
    /// `(a, d)` pairs of `a = b = c` channels.
    pub isosceles: Vec<[f64; 2]>,
}

impl Default for Fixtures {
    fn default() -> Self {
        Self {
            seed: 0x5eed_b11a,
            counterexample: [2.0 / 3.0, 0.25, 1e-3, 0.625],
            counterexample_weights: [1.0, 1.0],
            interior: [0.2, 0.4, 0.5, 0.3],
            interior_weights: [0.2, 0.8],
            closed_form_cd: [0.9, 0.1],
            closed_form_weights: [1.0, 2.0],
            closed_form_p_star: 0.47256,
            isosceles: vec![[0.3, 0.8], [0.7, 0.05], [0.5, 0.95]],
        }
    }
}

impl Fixtures {
    fn channel(p: [f64; 4]) -> crate::Result<Channel> {
        Channel::new(p[0], p[1], p[2], p[3])
    }

    fn weights(p: [f64; 2]) -> crate::Result<Weights> {
        Weights::new(p[0], p[1])
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    /// Worst deviation observed, in the units of `tolerance`.
    pub measured: f64,
    pub tolerance: f64,
    pub elapsed: Duration,
    pub budget: Duration,
    pub detail: String,
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {:>2} {:<34} measured {:.3e} (tol {:.1e})  {:>7.2}s / {:>3}s  {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.measured,
            self.tolerance,
            self.elapsed.as_secs_f64(),
            self.budget.as_secs(),
            self.detail
        )
    }
}

/// Outcome of a criterion body before timing is attached.
struct Outcome {
    ok: bool,
    measured: f64,
    tolerance: f64,
    detail: String,
}

fn timed(id: u8, name: &'static str, budget_s: u64, body: impl FnOnce() -> crate::Result<Outcome>) -> Report {
    let start = Instant::now();
    let result = body();
    let elapsed = start.elapsed();
    let budget = Duration::from_secs(budget_s);
    match result {
        Ok(o) => Report {
            id,
            name,
            passed: o.ok && elapsed <= budget,
            measured: o.measured,
            tolerance: o.tolerance,
            elapsed,
            budget,
            detail: if elapsed > budget {
                format!("over time budget; {}", o.detail)
            } else {
                o.detail
            },
        },
        Err(e) => Report {
            id,
            name,
            passed: false,
            measured: f64::NAN,
            tolerance: f64::NAN,
            elapsed,
            budget,
            detail: format!("error: {e}"),
        },
    }
}

fn rng(fx: &Fixtures, id: u8) -> StdRng {
    StdRng::seed_from_u64(fx.seed ^ (u64::from(id) << 32))
}

fn sorted_weights(r: &mut StdRng) -> Weights {
    let (x, y): (f64, f64) = (r.gen_range(0.1..2.0), r.gen_range(0.1..2.0));
    Weights::new(x.min(y), x.max(y)).expect("positive")
}

/// Oracle value of `max(w·C1, w·C2)` on the default grid.
fn oracle(ch: &Channel, w: &Weights) -> f64 {
    grid_max(ch, w, ORACLE_GRID).best_value
}

/// `w·C1` recomputed from the explicit joint table.
fn psi_table(ch: &Channel, w: &Weights, p1: f64, p2: f64) -> crate::Result<f64> {
    let x = InputDist::new(p1, p2)?;
    Ok(w.dot(&mi_joint_table(ch, &x).c1()))
}

/// 1. Analytic gradient against Richardson central differences of the
///    table-based objective.
pub fn gradient_suite(fx: &Fixtures) -> Report {
    timed(1, "gradient vs finite differences", 5, || {
        let mut r = rng(fx, 1);
        let mut worst: f64 = 0.0;
        for _ in 0..1000 {
            let p: [f64; 4] = std::array::from_fn(|_| r.gen_range(0.01..0.99));
            let ch = Fixtures::channel(p)?;
            let w = Weights::new(r.gen_range(0.1..2.0), r.gen_range(0.1..2.0))?;
            let (p1, p2) = (r.gen_range(0.05..0.95), r.gen_range(0.05..0.95));
            let (g1, g2) = crate::objective::grad_psi(&ch, &w, &InputDist::new(p1, p2)?)?;
            let fd1 = fd_derivative(|t| psi_table(&ch, &w, t, p2), p1, 1e-3)?;
            let fd2 = fd_derivative(|t| psi_table(&ch, &w, p1, t), p2, 1e-3)?;
            for (g, fd) in [(g1, fd1), (g2, fd2)] {
                // Relative error above 1e-3; below it the absolute error is scaled to the same bar.
                let err = if fd.abs() < 1e-3 {
                    (g - fd).abs() / 1e-9 * 1e-6
                } else {
                    (g - fd).abs() / fd.abs()
                };
                worst = worst.max(err);
            }
        }
        Ok(Outcome {
            ok: worst <= 1e-6,
            measured: worst,
            tolerance: 1e-6,
            detail: "1000 samples, relative error (absolute/1e-9 scaled below 1e-3)".into(),
        })
    })
}

/// 2. Exactly three KKT points on the counterexample channel.
pub fn counterexample_kkt(fx: &Fixtures) -> Report {
    timed(2, "counterexample KKT points", 2, || {
        let ch = Fixtures::channel(fx.counterexample)?;
        let w = Fixtures::weights(fx.counterexample_weights)?;
        let pts = find_kkt_points(&ch, &w, DEFAULT_SEED_GRID, DEFAULT_KKT_TOL)?;
        let has = |kind: Kind, boundary: bool| pts.iter().filter(|k| k.kind == kind && k.on_boundary == boundary).count();
        let worst = pts.iter().map(|k| k.residual).fold(0.0, f64::max);
        let shape = pts.len() == 3
            && has(Kind::GlobalMax, true) == 1
            && has(Kind::LocalMax, true) == 1
            && has(Kind::Saddle, false) == 1;
        let kinds: Vec<String> = pts
            .iter()
            .map(|k| format!("{:?}{}", k.kind, if k.on_boundary { "@edge" } else { "@interior" }))
            .collect();
        Ok(Outcome {
            ok: shape && worst <= 1e-8,
            measured: worst,
            tolerance: 1e-8,
            detail: format!("{} points: {}", pts.len(), kinds.join(", ")),
        })
    })
}

/// 3. Interior optimum found by the general solver.
pub fn interior_optimum(fx: &Fixtures) -> Report {
    timed(3, "interior optimum", 3, || {
        let ch = Fixtures::channel(fx.interior)?;
        let w = Fixtures::weights(fx.interior_weights)?;
        let s = solve_general(&ch, &w, DEFAULT_GRID, DEFAULT_EPS)?;
        let gap = (s.value - oracle(&ch, &w)).abs();
        Ok(Outcome {
            ok: s.location == Location::Interior && gap <= ORACLE_TOL,
            measured: gap,
            tolerance: ORACLE_TOL,
            detail: format!(
                "location {:?} at ({:.6}, {:.6}), value {:.9}",
                s.location,
                s.input.p1(),
                s.input.p2(),
                s.value
            ),
        })
    })
}

fn min_interior_grad(ch: &Channel, w: &Weights, n: usize) -> crate::Result<f64> {
    let mut least = f64::INFINITY;
    for i in 1..=n {
        for j in 1..=n {
            let x = InputDist::new(i as f64 / (n + 1) as f64, j as f64 / (n + 1) as f64)?;
            let (g1, g2) = crate::objective::grad_psi(ch, w, &x)?;
            least = least.min(g1.hypot(g2));
        }
    }
    Ok(least)
}

/// 4. Case A: no interior stationary point and a boundary optimum.
pub fn case_a(fx: &Fixtures) -> Report {
    timed(4, "case A boundary optimum", 30, || {
        let mut r = rng(fx, 4);
        let (mut least_grad, mut solver_gap, mut oracle_gap) = (f64::INFINITY, 0.0f64, 0.0f64);
        for _ in 0..100 {
            let d = r.gen_range(0.01..0.85);
            let c = r.gen_range(d + 0.1..0.99);
            let a = r.gen_range(d + 0.1 * (c - d)..c - 0.1 * (c - d));
            let ch = Channel::new(a, a, c, d)?;
            debug_assert_eq!(classify_3param(&ch), CaseTag::CaseA);
            let w = sorted_weights(&mut r);
            least_grad = least_grad.min(min_interior_grad(&ch, &w, 201)?);
            let s = solve_3param(&ch, &w, DEFAULT_EPS)?;
            let boundary = (w.w1() * e1(&ch).capacity).max(w.w2() * e2(&ch).capacity);
            solver_gap = solver_gap.max((s.value - boundary).abs());
            oracle_gap = oracle_gap.max((s.value - oracle(&ch, &w)).abs());
        }
        let ok = least_grad > 1e-6 && solver_gap <= 1e-9 && oracle_gap <= ORACLE_TOL;
        Ok(Outcome {
            ok,
            measured: oracle_gap,
            tolerance: ORACLE_TOL,
            detail: format!("min |grad| {least_grad:.3e} (> 1e-6), |value - max(w1e1, w2e2)| {solver_gap:.1e} (<= 1e-9)"),
        })
    })
}

fn random_case_b(r: &mut StdRng) -> crate::Result<Channel> {
    let d = r.gen_range(0.01..0.9);
    let c = r.gen_range(d + 0.05..0.99);
    let a = if r.gen_bool(0.5) {
        r.gen_range(0.0..0.9 * d)
    } else {
        r.gen_range(c + 0.1 * (1.0 - c)..1.0)
    };
    Channel::new(a, a, c, d)
}

/// 5. Case B: single `+ → -` sign change of `φ̂'` and bisection at its root.
pub fn case_b(fx: &Fixtures) -> Report {
    timed(5, "case B bisection", 60, || {
        const N: usize = 10_000;
        let spacing = 1.0 / N as f64;
        let mut r = rng(fx, 5);
        let (mut max_changes, mut bad_direction) = (0usize, 0usize);
        let (mut argmax_gap, mut bracket_misses, mut oracle_gap, mut located) = (0.0f64, 0usize, 0.0f64, 0usize);
        for _ in 0..100 {
            let ch = random_case_b(&mut r)?;
            let w = sorted_weights(&mut r);
            let mut changes = 0;
            let mut prev: Option<f64> = None;
            let (mut best_p, mut best_v) = (f64::NAN, f64::NEG_INFINITY);
            for i in 1..N {
                let p = i as f64 * spacing;
                let v = phi_hat(&ch, &w, p)?;
                if v > best_v {
                    (best_p, best_v) = (p, v);
                }
                let s = phi_hat_prime(&ch, &w, p)?;
                if s == 0.0 {
                    continue;
                }
                if let Some(q) = prev {
                    if q.signum() != s.signum() {
                        changes += 1;
                        if s > 0.0 {
                            bad_direction += 1;
                        }
                    }
                }
                prev = Some(s);
            }
            max_changes = max_changes.max(changes);
            if let Some(b) = bisect_h_prime(&ch, &w, DEFAULT_EPS)? {
                located += 1;
                argmax_gap = argmax_gap.max((b.p_eps - best_p).abs());
                let before = phi_hat_prime(&ch, &w, b.p_eps - DEFAULT_EPS)?;
                let after = phi_hat_prime(&ch, &w, b.p_eps + DEFAULT_EPS)?;
                if before < -1e-12 || after > 1e-12 {
                    bracket_misses += 1;
                }
            }
            let s = solve_3param(&ch, &w, DEFAULT_EPS)?;
            oracle_gap = oracle_gap.max((s.value - oracle(&ch, &w)).abs());
        }
        let ok = max_changes <= 1
            && bad_direction == 0
            && argmax_gap <= spacing + DEFAULT_EPS
            && bracket_misses == 0
            && oracle_gap <= ORACLE_TOL;
        Ok(Outcome {
            ok,
            measured: oracle_gap,
            tolerance: ORACLE_TOL,
            detail: format!(
                "max sign changes {max_changes}, wrong-way {bad_direction}; {located} bracketed, \
                 |p_eps - grid argmax| {argmax_gap:.2e} (<= {:.1e}), sign misses at p_eps±eps {bracket_misses}",
                spacing + DEFAULT_EPS
            ),
        })
    })
}

/// 6. Closed form for `a = b = 0` against bisection and the oracle.
pub fn closed_form(fx: &Fixtures) -> Report {
    timed(6, "closed form a = b = 0", 10, || {
        let mut r = rng(fx, 6);
        let (mut root_gap, mut oracle_gap, mut both) = (0.0f64, 0.0f64, 0usize);
        for _ in 0..50 {
            let d = r.gen_range(0.01..0.9);
            let c = r.gen_range(d + 0.05..0.99);
            let w1 = r.gen_range(0.1..1.9);
            let w = Weights::new(w1, r.gen_range(w1 + 0.05..2.0))?;
            let ch = Channel::new(0.0, 0.0, c, d)?;
            let star = closed_form_a0(&ch, &w)?;
            let bis = bisect_h_prime(&ch, &w, DEFAULT_EPS)?;
            if let (Some(p), Some(b)) = (star, bis) {
                both += 1;
                root_gap = root_gap.max((p - b.p_eps).abs());
            }
            let s = solve_3param(&ch, &w, DEFAULT_EPS)?;
            oracle_gap = oracle_gap.max((s.value - oracle(&ch, &w)).abs());
        }

        let [c, d] = fx.closed_form_cd;
        let ch = Channel::new(0.0, 0.0, c, d)?;
        let w = Fixtures::weights(fx.closed_form_weights)?;
        let star = closed_form_a0(&ch, &w)?.unwrap_or(f64::NAN);
        let bis = bisect_h_prime(&ch, &w, DEFAULT_EPS)?.map_or(f64::NAN, |b| b.p_eps);
        // Second path: dense scan of φ̂, which never evaluates h'.
        let n = 100_000;
        let mut scan = (f64::NAN, f64::NEG_INFINITY);
        for i in 1..n {
            let p = i as f64 / n as f64;
            let v = phi_hat(&ch, &w, p)?;
            if v > scan.1 {
                scan = (p, v);
            }
        }
        let worked = (star - fx.closed_form_p_star).abs();
        let ok = root_gap <= 1e-9 + DEFAULT_EPS
            && oracle_gap <= ORACLE_TOL
            && worked <= 1e-4
            && (star - bis).abs() <= 1e-9 + DEFAULT_EPS
            && (star - scan.0).abs() <= 2.0 / n as f64;
        Ok(Outcome {
            ok,
            measured: oracle_gap,
            tolerance: ORACLE_TOL,
            detail: format!(
                "{both} with both roots, max |p* - p_eps| {root_gap:.1e}; worked p* = {star:.6} \
                 (bisection {bis:.6}, phi-hat scan {:.5})",
                scan.0
            ),
        })
    })
}

/// 7. Identities used by the case analysis.
pub fn proof_identities(fx: &Fixtures) -> Report {
    timed(7, "proof identities", 5, || {
        let mut r = rng(fx, 7);
        let mut worst: f64 = 0.0;
        let mut failures = Vec::new();
        for _ in 0..200 {
            let d: f64 = r.gen_range(0.01..0.9);
            let c: f64 = r.gen_range(d + 0.05..0.99);
            let a: f64 = r.gen_range(0.01..0.99);
            worst = worst.max(delta_fn(c, c, d).abs()).max(delta_fn(d, c, d).abs());

            let step = 1e-3;
            for i in 1..1000 {
                let t = i as f64 * step;
                let second = delta_fn(t - step, c, d) - 2.0 * delta_fn(t, c, d) + delta_fn(t + step, c, d);
                if second.is_nan() || second <= 0.0 {
                    failures.push("delta not strictly convex in a");
                    break;
                }
            }

            let ch = Channel::new(a, a, c, d)?;
            worst = worst.max(h4(&ch, 0.0).abs()).max(h4(&ch, 1.0).abs());
            if (1..100).any(|i| h4(&ch, i as f64 / 100.0) >= 0.0) {
                failures.push("h4 not negative on (0,1)");
            }
            worst = worst
                .max((v_fn(&ch, 0.0)? + kl_divergence(d, a)?).abs())
                .max((v_fn(&ch, 1.0)? + kl_divergence(c, a)?).abs());

            for wt in [Weights::new(1.0, 1.0)?, sorted_weights(&mut r)] {
                for i in 1..100 {
                    let p = i as f64 / 100.0;
                    if h2(&ch, p).abs() <= 1e-12 {
                        continue;
                    }
                    if f_map(&ch, &wt, p)?.p1_star >= 1.0 {
                        failures.push("f(p) >= 1");
                    }
                }
            }

            let general = Channel::new(r.gen_range(0.0..1.0), r.gen_range(0.0..1.0), c, d)?;
            let x = InputDist::new(r.gen_range(0.0..1.0), r.gen_range(0.0..1.0))?;
            let z = h3(&general, x.p2()) + x.p1() * h2(&general, x.p2());
            worst = worst.max((z - (1.0 - prob_y1(&general, &x))).abs());
        }
        failures.sort_unstable();
        failures.dedup();
        Ok(Outcome {
            ok: worst <= 1e-12 && failures.is_empty(),
            measured: worst,
            tolerance: 1e-12,
            detail: if failures.is_empty() {
                "delta zeros, h4 endpoints, v endpoints, h3 + p1 h2 = Pr[Y=2]; sign checks hold".into()
            } else {
                failures.join("; ")
            },
        })
    })
}

/// 8. General solver against the oracle on random channels and weights.
pub fn general_vs_oracle(fx: &Fixtures) -> Report {
    timed(8, "general solver vs oracle", 120, || {
        let mut r = rng(fx, 8);
        let mut worst: f64 = 0.0;
        let mut interior = 0;
        let mut done = 0;
        while done < 200 {
            let p: [f64; 4] = std::array::from_fn(|_| r.gen_range(0.0..1.0));
            let ch = Fixtures::channel(p)?;
            if ch.degeneracy().is_some() {
                continue;
            }
            let w = Weights::new(r.gen_range(0.1..2.0), r.gen_range(0.1..2.0))?;
            let s = solve_general(&ch, &w, DEFAULT_GRID, DEFAULT_EPS)?;
            interior += usize::from(s.location == Location::Interior);
            worst = worst.max((s.value - oracle(&ch, &w)).abs());
            done += 1;
        }
        Ok(Outcome {
            ok: worst <= ORACLE_TOL,
            measured: worst,
            tolerance: ORACLE_TOL,
            detail: format!("200 channels, {interior} interior optima"),
        })
    })
}

fn cross(o: RatePair, a: RatePair, b: RatePair) -> f64 {
    (a.r1 - o.r1) * (b.r2 - o.r2) - (a.r2 - o.r2) * (b.r1 - o.r1)
}

/// Largest inward depth of a traced vertex below the chord between its
/// `k`-th angular neighbours, over `k ≤ max_window`.
pub fn max_dent(outline: &[RatePair], max_window: usize) -> f64 {
    let n = outline.len();
    let mut deepest: f64 = 0.0;
    for k in 1..=max_window.min(n / 2) {
        for i in 0..n {
            let (prev, next) = (outline[(i + n - k) % n], outline[(i + k) % n]);
            let chord = (next.r1 - prev.r1).hypot(next.r2 - prev.r2);
            if chord > 0.0 {
                deepest = deepest.max(cross(prev, next, outline[i]) / chord);
            }
        }
    }
    deepest
}

/// 9. Nonconvex `G1` outline with a slope `-1` tangent at the saddle image.
pub fn g1_outline(fx: &Fixtures) -> Report {
    timed(9, "G1 nonconvexity and saddle tangent", 5, || {
        const TRACE_GRID: usize = 400;
        const SECANT_HALF_WIDTH: usize = 4;
        let ch = Fixtures::channel(fx.counterexample)?;
        let w = Fixtures::weights(fx.counterexample_weights)?;
        let outline = trace_g1(&ch, TRACE_GRID);
        let dent = max_dent(&outline, 32);

        let pts = find_kkt_points(&ch, &w, 16, DEFAULT_KKT_TOL)?;
        let Some(saddle) = pts.iter().find(|k| k.kind == Kind::Saddle) else {
            return Ok(Outcome {
                ok: false,
                measured: f64::NAN,
                tolerance: 0.05,
                detail: "no interior saddle found".into(),
            });
        };
        let image = crate::info::corner_c1(&ch, &saddle.input);
        let n = outline.len();
        let j = (0..n)
            .min_by(|&i, &k| {
                let d = |q: RatePair| (q.r1 - image.r1).hypot(q.r2 - image.r2);
                d(outline[i]).total_cmp(&d(outline[k]))
            })
            .expect("nonempty outline");
        let (lo, hi) = (outline[(j + n - SECANT_HALF_WIDTH) % n], outline[(j + SECANT_HALF_WIDTH) % n]);
        let slope = (hi.r2 - lo.r2) / (hi.r1 - lo.r1);
        let slope_err = (slope + 1.0).abs();
        Ok(Outcome {
            ok: dent >= 1e-4 && slope_err <= 0.05,
            measured: slope_err,
            tolerance: 0.05,
            detail: format!(
                "{n} outline vertices, deepest dent {dent:.2e} nats (>= 1e-4), secant slope {slope:.4} at saddle image ({:.5}, {:.5})",
                image.r1, image.r2
            ),
        })
    })
}

/// 10. `a = b = c` channels have a triangular region.
pub fn isosceles(fx: &Fixtures) -> Report {
    timed(10, "isosceles triangle", 2, || {
        let mut worst: f64 = 0.0;
        let mut shapes = Vec::new();
        for &[a, d] in &fx.isosceles {
            let ch = Channel::new(a, a, a, d)?;
            let rb = region_boundary(&ch, DEFAULT_SWEEP, DEFAULT_GRID, DEFAULT_EPS)?;
            worst = worst.max((rb.e1 - rb.e2).abs());
            shapes.push(rb.vertices.len());
        }
        Ok(Outcome {
            ok: worst <= 1e-9 && shapes.iter().all(|&n| n == 2),
            measured: worst,
            tolerance: 1e-9,
            detail: format!("|e1 - e2| and chain lengths {shapes:?}"),
        })
    })
}

/// Runs criteria 1 to 10 in order.
pub fn run_all(fx: &Fixtures) -> Vec<Report> {
    vec![
        gradient_suite(fx),
        counterexample_kkt(fx),
        interior_optimum(fx),
        case_a(fx),
        case_b(fx),
        closed_form(fx),
        proof_identities(fx),
        general_vs_oracle(fx),
        g1_outline(fx),
        isosceles(fx),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_defaults_fill_missing_fields() {
        let fx: Fixtures = serde_json::from_str(r#"{"seed": 7}"#).unwrap();
        assert_eq!(fx.seed, 7);
        assert_eq!(fx.counterexample, Fixtures::default().counterexample);
        assert!(serde_json::from_str::<Fixtures>(r#"{"sed": 7}"#).is_err());
    }

    #[test]
    fn dent_of_a_square_is_zero_and_of_a_notch_positive() {
        let sq: Vec<RatePair> = [(1.0, 0.0), (1.0, 1.0), (0.0, 1.0), (0.0, 0.0)]
            .iter()
            .map(|&(x, y)| RatePair::new(x, y))
            .collect();
        assert_eq!(max_dent(&sq, 1), 0.0);
        let notch: Vec<RatePair> = [(1.0, 0.0), (0.5, 0.5), (1.0, 1.0), (0.0, 1.0), (0.0, 0.0)]
            .iter()
            .map(|&(x, y)| RatePair::new(x, y))
            .collect();
        assert!((max_dent(&notch, 1) - 0.5).abs() <= 1e-15);
    }
}
