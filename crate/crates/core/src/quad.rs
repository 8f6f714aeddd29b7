//! Gauss-Legendre nodes and weights on [-1, 1], shared by the quadrature
//! grids in `fredholm` and by the panel integrators in `specfun`.

/// Nodes (ascending) and weights of the m-point Gauss-Legendre rule on [-1, 1].
///
/// Newton iteration on the Legendre recurrence from Chebyshev initial
/// guesses; accurate to a few ulps for any m this crate uses.
pub(crate) fn legendre_rule(m: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(m >= 1, "quadrature rule needs at least one node");
    let n = m as f64;
    let mut nodes = vec![0.0; m];
    let mut weights = vec![0.0; m];
    for i in 0..m {
        // i-th root counted from +1 downward.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, p_prev) = legendre_pair(m, x);
            dp = n * (x * p - p_prev) / (x * x - 1.0);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                let (p, p_prev) = legendre_pair(m, x);
                dp = n * (x * p - p_prev) / (x * x - 1.0);
                x -= p / dp;
                break;
            }
        }
        nodes[m - 1 - i] = x;
        weights[m - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}

/// (P_m(x), P_{m-1}(x)) by the three-term recurrence.
fn legendre_pair(m: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 1.0;
    let mut p = x;
    for k in 1..m {
        let k = k as f64;
        let p_next = ((2.0 * k + 1.0) * x * p - k * p_prev) / (k + 1.0);
        p_prev = p;
        p = p_next;
    }
    (p, p_prev)
}

/// Integrate `f` over [lo, hi] with fixed-width Gauss-Legendre panels.
///
/// `panel_width` bounds each panel; `points` is the rule order per panel.
pub(crate) fn panel_integrate(
    lo: f64,
    hi: f64,
    panel_width: f64,
    points: usize,
    mut f: impl FnMut(f64) -> f64,
) -> f64 {
    if hi <= lo {
        return 0.0;
    }
    let (nodes, weights) = legendre_rule(points);
    let n_panels = ((hi - lo) / panel_width).ceil().max(1.0) as usize;
    let step = (hi - lo) / n_panels as f64;
    let mut total = 0.0;
    for p in 0..n_panels {
        let a = lo + p as f64 * step;
        let half = 0.5 * step;
        let mid = a + half;
        let mut panel = 0.0;
        for (&x, &w) in nodes.iter().zip(&weights) {
            panel += w * f(mid + half * x);
        }
        total += half * panel;
    }
    total
}
