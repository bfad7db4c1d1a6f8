use std::f64::consts::PI;

use nalgebra::{DMatrix, Matrix2};
use rand::Rng;

use crate::correlations::{MeasureReport, Method, Witness};
use crate::error::{Error, Result};
use crate::gaussian::{symplectic_form, to_standard_form, CovarianceMatrix, TwoModeStandardForm};
use crate::linalg;
use crate::optimize::{coordinate_descent, nelder_mead, CoordinateOptions, NelderMeadOptions};

pub const DEFAULT_RESTARTS: usize = 32;

const FEASIBILITY_TOL: f64 = 1e-15;

fn sqrt_psd2(m: &Matrix2<f64>) -> Matrix2<f64> {
    let eig = m.symmetric_eigen();
    let d = Matrix2::new(eig.eigenvalues[0].max(0.0).sqrt(), 0.0, 0.0, eig.eigenvalues[1].max(0.0).sqrt());
    eig.eigenvectors * d * eig.eigenvectors.transpose()
}

/// Pure states of the form `X ⊕ X^{-1}` (position block, momentum block) with
/// `P^{-1} <= X <= X_gamma`, written as
/// `X = Q + D^{1/2} R(psi) diag(u1, u2) R(psi)^T D^{1/2}`, `u in [0, 1]^2`.
struct DecoupledFamily {
    q: Matrix2<f64>,
    d_half: Matrix2<f64>,
}

impl DecoupledFamily {
    fn new(sf: &TwoModeStandardForm) -> Result<Self> {
        let xg = Matrix2::new(sf.a, sf.c_plus, sf.c_plus, sf.b);
        let pg = Matrix2::new(sf.a, sf.c_minus, sf.c_minus, sf.b);
        let q = pg.try_inverse().ok_or_else(|| Error::Numerical("singular momentum block".into()))?;
        let d = xg - q;
        let d = (d + d.transpose()) * 0.5;
        Ok(Self { q, d_half: sqrt_psd2(&d) })
    }

    fn x(&self, p: &[f64]) -> Matrix2<f64> {
        let r = linalg::rotation(p[0]);
        let u = Matrix2::new(p[1], 0.0, 0.0, p[2]);
        let x = self.q + self.d_half * r * u * r.transpose() * self.d_half;
        (x + x.transpose()) * 0.5
    }

    /// `det sigma_A = X11 (X^{-1})11 = X11 X22 / det X`.
    fn det_a(&self, p: &[f64]) -> f64 {
        let x = self.x(p);
        x[(0, 0)] * x[(1, 1)] / x.determinant()
    }

    /// The pure state in `(q1, p1, q2, p2)` ordering.
    fn state(&self, p: &[f64]) -> DMatrix<f64> {
        let x = self.x(p);
        let xi = x.try_inverse().unwrap_or(Matrix2::identity());
        let mut s = DMatrix::zeros(4, 4);
        for i in 0..2 {
            for j in 0..2 {
                s[(2 * i, 2 * j)] = x[(i, j)];
                s[(2 * i + 1, 2 * j + 1)] = xi[(i, j)];
            }
        }
        linalg::symmetrize(&s)
    }
}

fn ln_det_a(sigma: &DMatrix<f64>) -> f64 {
    let d = sigma[(0, 0)] * sigma[(1, 1)] - sigma[(0, 1)] * sigma[(1, 0)];
    if d > 0.0 { d.ln() } else { f64::INFINITY }
}

/// Direct minimization of `1/2 ln det sigma_A` over pure two-mode states
/// `sigma <= gamma`.
///
/// The search first scans pure states whose position and momentum blocks
/// decouple (always feasible), refining the best grid point and `restarts`
/// random starts by coordinate golden-section descent. The best of these then
/// seeds a Nelder-Mead search over all pure states `T sigma T^T`,
/// `T = exp(Omega H)`, where infeasible points are rejected. The witness is the
/// optimal pure state in the standard-form basis of `cm`.
pub fn convex_roof_oracle<R: Rng + ?Sized>(cm: &CovarianceMatrix, restarts: usize, rng: &mut R) -> Result<MeasureReport> {
    let sf = to_standard_form(cm)?;
    let gamma = sf.matrix();
    let fam = DecoupledFamily::new(&sf)?;
    let lower = [0.0, 0.0, 0.0];
    let upper = [PI, 1.0, 1.0];

    let mut best_start = (f64::INFINITY, vec![0.0, 0.0, 0.0]);
    for i in 0..24 {
        for j in 0..9 {
            for k in 0..9 {
                let p = [PI * i as f64 / 24.0, j as f64 / 8.0, k as f64 / 8.0];
                let v = fam.det_a(&p);
                if v < best_start.0 {
                    best_start = (v, p.to_vec());
                }
            }
        }
    }
    let mut starts = vec![best_start.1];
    for _ in 0..restarts {
        starts.push(vec![rng.random_range(0.0..PI), rng.random::<f64>(), rng.random::<f64>()]);
    }
    let copts = CoordinateOptions { initial_step: 0.2, xtol: 1e-12, ftol: 1e-15, max_sweeps: 300 };
    let mut iterations = 0;
    let mut stage1: Option<(f64, Vec<f64>, bool)> = None;
    for s in &starts {
        let m = coordinate_descent(|p| fam.det_a(p), s, &lower, &upper, copts);
        iterations += m.iterations;
        if stage1.as_ref().is_none_or(|b| m.value < b.0) {
            stage1 = Some((m.value, m.x, m.converged));
        }
    }
    let (v1, p1, conv1) = stage1.expect("at least one start");
    let sigma0 = fam.state(&p1);
    let mut best = (0.5 * v1.ln(), sigma0.clone(), conv1);

    let omega = symplectic_form(2)?.matrix().clone();
    let moved = |h: &[f64]| -> Option<DMatrix<f64>> {
        let mut hm = DMatrix::zeros(4, 4);
        let mut it = h.iter();
        for i in 0..4 {
            for j in i..4 {
                let x = *it.next().expect("ten parameters");
                hm[(i, j)] = x;
                hm[(j, i)] = x;
            }
        }
        let t = (&omega * hm).exp();
        let sigma = linalg::symmetrize(&(&t * &sigma0 * t.transpose()));
        (linalg::min_eigenvalue(&(&gamma - &sigma)) >= -FEASIBILITY_TOL).then_some(sigma)
    };
    let objective = |h: &[f64]| moved(h).map_or(f64::INFINITY, |s| 0.5 * ln_det_a(&s));
    let nm = NelderMeadOptions { initial_step: 1e-3, xtol: 1e-12, ftol: 1e-15, max_iterations: 4000 };
    let mut h_starts = vec![vec![0.0; 10]];
    for _ in 0..2 {
        h_starts.push((0..10).map(|_| 1e-3 * rng.random_range(-1.0..1.0)).collect());
    }
    for h0 in h_starts {
        if !objective(&h0).is_finite() {
            continue;
        }
        let m = nelder_mead(objective, &h0, nm);
        iterations += m.iterations;
        if m.value < best.0 {
            if let Some(s) = moved(&m.x) {
                best = (m.value, s, m.converged);
            }
        }
    }

    Ok(MeasureReport {
        value: best.0.max(0.0),
        witness: Witness::PureState(best.1.transpose().iter().copied().collect()),
        method: Method::Numeric,
        converged: best.2,
        iterations,
    })
}
