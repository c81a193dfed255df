use bmac::objective::grad_psi;
use bmac::oracle::grid_max;
use bmac::solver::{solve_general, Location, DEFAULT_EPS, DEFAULT_GRID};
use bmac::{Channel, InputDist, Weights};

/// Largest eigenvalue of `-∇²Ψ` at `q`, by central differences of the gradient.
fn curvature(ch: &Channel, w: &Weights, q: &InputDist) -> f64 {
    let s = 1e-5;
    let g = |p1: f64, p2: f64| grad_psi(ch, w, &InputDist::new(p1, p2).unwrap()).unwrap();
    let (p1, p2) = (q.p1(), q.p2());
    let (a1, a2) = g(p1 + s, p2);
    let (b1, b2) = g(p1 - s, p2);
    let (c1, c2) = g(p1, p2 + s);
    let (d1, d2) = g(p1, p2 - s);
    let h11 = (a1 - b1) / (2.0 * s);
    let h22 = (c2 - d2) / (2.0 * s);
    let h12 = 0.5 * ((a2 - b2) + (c1 - d1)) / (2.0 * s);
    let (m, r) = (-0.5 * (h11 + h22), (0.25 * (h11 - h22).powi(2) + h12 * h12).sqrt());
    m + r
}

/// At an interior optimum the nearest grid node lies within `√2/(2n)`, so the
/// grid gap is at most `λ/(4n²)` up to third-order terms.
#[test]
fn oracle_gap_is_bounded_by_curvature() {
    let cases = [
        ([0.2, 0.4, 0.5, 0.3], [0.2, 0.8]),
        ([0.3, 0.9, 0.8, 0.1], [0.7, 1.0]),
    ];
    for (p, w) in cases {
        let ch = Channel::new(p[0], p[1], p[2], p[3]).unwrap();
        let w = Weights::new(w[0], w[1]).unwrap();
        let sol = solve_general(&ch, &w, DEFAULT_GRID, DEFAULT_EPS).unwrap();
        assert_eq!(sol.location, Location::Interior);
        let lambda = curvature(&ch, &w, &sol.input);
        assert!(lambda > 0.0);
        let bound = 1.5 * lambda / 4.0;
        let mut fitted: f64 = 0.0;
        for n in (50..=2000).step_by(50) {
            let gap = sol.value - grid_max(&ch, &w, n).best_value;
            assert!(gap >= -1e-12, "grid beats solver by {:e} at n = {n}", -gap);
            fitted = fitted.max(gap * (n * n) as f64);
        }
        println!("channel {ch}: fitted C = {fitted:.4e}, curvature bound = {bound:.4e}");
        assert!(fitted <= bound, "fitted C = {fitted:e} exceeds {bound:e}");
    }
}
