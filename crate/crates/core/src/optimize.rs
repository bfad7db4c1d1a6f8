//! Derivative-free minimizers: bracketed golden-section search, cyclic
//! coordinate descent built on it, and Nelder-Mead.

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Result of a minimization.
#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Golden-section search for a minimum of `f` on `[lo, hi]`.
///
/// Returns `(x, f(x), iterations)`. The interval shrinks until its width
/// drops below `xtol`; the best point ever evaluated is returned, endpoints
/// included, so a monotone objective yields the boundary.
pub fn golden_section<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, xtol: f64) -> (f64, f64, usize) {
    let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut best = (a, f(a));
    let fb = f(b);
    if fb < best.1 {
        best = (b, fb);
    }
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    let mut iters = 0;
    while (b - a) > xtol && iters < 500 {
        iters += 1;
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    for (x, v) in [(c, fc), (d, fd)] {
        if v < best.1 {
            best = (x, v);
        }
    }
    (best.0, best.1, iters)
}

/// Options for [`coordinate_descent`].
#[derive(Debug, Clone, Copy)]
pub struct CoordinateOptions {
    /// Initial half-width of the per-coordinate search bracket.
    pub initial_step: f64,
    /// Parameter tolerance: the run converges when no coordinate moves more than this.
    pub xtol: f64,
    /// Objective tolerance on the improvement of a full sweep.
    pub ftol: f64,
    pub max_sweeps: usize,
}

impl Default for CoordinateOptions {
    fn default() -> Self {
        Self { initial_step: 0.5, xtol: 1e-10, ftol: 1e-12, max_sweeps: 200 }
    }
}

/// Cyclic golden-section descent inside the box `[lower, upper]`.
///
/// Each coordinate is searched on a bracket around its current value; a
/// bracket whose minimizer lands on an interior edge is doubled and searched
/// again.
pub fn coordinate_descent<F: FnMut(&[f64]) -> f64>(
    mut f: F,
    x0: &[f64],
    lower: &[f64],
    upper: &[f64],
    opts: CoordinateOptions,
) -> Minimum {
    let n = x0.len();
    let mut x: Vec<f64> = (0..n).map(|i| x0[i].clamp(lower[i], upper[i])).collect();
    let mut fx = f(&x);
    let mut steps = vec![opts.initial_step; n];
    let mut iterations = 0;
    let mut converged = false;
    for _ in 0..opts.max_sweeps {
        iterations += 1;
        let f_start = fx;
        let mut max_move = 0.0_f64;
        for i in 0..n {
            let xi = x[i];
            let mut h = steps[i];
            let mut best = (xi, fx);
            for _ in 0..40 {
                let lo = (best.0 - h).max(lower[i]);
                let hi = (best.0 + h).min(upper[i]);
                let mut probe = x.clone();
                let (t, v, _) = golden_section(
                    |t| {
                        probe[i] = t;
                        f(&probe)
                    },
                    lo,
                    hi,
                    opts.xtol * 0.1,
                );
                if v < best.1 {
                    best = (t, v);
                }
                let edge = (best.0 - lo).abs() < 1e-3 * h && lo > lower[i]
                    || (hi - best.0).abs() < 1e-3 * h && hi < upper[i];
                if !edge {
                    break;
                }
                h *= 2.0;
            }
            let moved = (best.0 - xi).abs();
            x[i] = best.0;
            fx = best.1;
            max_move = max_move.max(moved);
            steps[i] = (4.0 * moved).max(opts.xtol * 100.0).min(opts.initial_step.max(moved));
        }
        if max_move <= opts.xtol || (f_start - fx) <= opts.ftol && max_move <= opts.xtol * 1e3 {
            converged = true;
            break;
        }
    }
    Minimum { x, value: fx, iterations, converged }
}

/// Options for [`nelder_mead`].
#[derive(Debug, Clone, Copy)]
pub struct NelderMeadOptions {
    pub initial_step: f64,
    pub xtol: f64,
    pub ftol: f64,
    pub max_iterations: usize,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        Self { initial_step: 0.1, xtol: 1e-10, ftol: 1e-14, max_iterations: 20_000 }
    }
}

/// Nelder-Mead simplex with dimension-adaptive coefficients.
/// Infinite objective values act as barriers.
pub fn nelder_mead<F: FnMut(&[f64]) -> f64>(mut f: F, x0: &[f64], opts: NelderMeadOptions) -> Minimum {
    let n = x0.len();
    let nf = n as f64;
    let (alpha, gamma, rho, sigma) = (1.0, 1.0 + 2.0 / nf, 0.75 - 1.0 / (2.0 * nf), 1.0 - 1.0 / nf);
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    simplex.push((x0.to_vec(), f(x0)));
    for i in 0..n {
        let mut p = x0.to_vec();
        p[i] += if p[i] != 0.0 { opts.initial_step * p[i].abs().max(1.0) } else { opts.initial_step };
        let v = f(&p);
        simplex.push((p, v));
    }
    let mut iterations = 0;
    let mut converged = false;
    while iterations < opts.max_iterations {
        iterations += 1;
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let (best, worst) = (simplex[0].1, simplex[n].1);
        let spread = simplex
            .iter()
            .skip(1)
            .flat_map(|(p, _)| p.iter().zip(&simplex[0].0).map(|(a, b)| (a - b).abs()))
            .fold(0.0_f64, f64::max);
        if spread <= opts.xtol && (worst - best).abs() <= opts.ftol.max(f64::EPSILON * best.abs()) {
            converged = true;
            break;
        }
        let centroid: Vec<f64> = (0..n)
            .map(|j| simplex[..n].iter().map(|(p, _)| p[j]).sum::<f64>() / nf)
            .collect();
        let along = |t: f64| -> Vec<f64> {
            centroid.iter().zip(&simplex[n].0).map(|(c, w)| c + t * (c - w)).collect()
        };
        let xr = along(alpha);
        let fr = f(&xr);
        if fr < simplex[0].1 {
            let xe = along(alpha * gamma);
            let fe = f(&xe);
            simplex[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
            continue;
        }
        if fr < simplex[n - 1].1 {
            simplex[n] = (xr, fr);
            continue;
        }
        let (xc, fc) = if fr < worst {
            let xc = along(alpha * rho);
            let fc = f(&xc);
            (xc, fc)
        } else {
            let xc = along(-rho);
            let fc = f(&xc);
            (xc, fc)
        };
        if fc < worst.min(fr) {
            simplex[n] = (xc, fc);
            continue;
        }
        let x_best = simplex[0].0.clone();
        for item in simplex.iter_mut().skip(1) {
            let p: Vec<f64> = x_best.iter().zip(&item.0).map(|(b, q)| b + sigma * (q - b)).collect();
            let v = f(&p);
            *item = (p, v);
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    let (x, value) = simplex.swap_remove(0);
    Minimum { x, value, iterations, converged }
}
