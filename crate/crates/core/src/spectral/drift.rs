//! Root tracking and drift extraction from the transfer systems.

use super::transfer::{transfer_dimension, TransferMatrixSpec, TransferSystem};
use crate::error::{Error, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

const ROOT_SEPARATION: f64 = 1e-8;

/// Root of `det M(x, s) = 0` tracked continuously from `s(0) = 1`.
pub fn smallest_root(system: &TransferSystem, x: f64) -> Result<Complex64> {
    // continuity tracking: walk x in steps small enough that the root moves
    // far less than the root separation
    let mut target = Complex64::new(1.0, 0.0);
    let steps = (x.abs() / 0.05).ceil().max(1.0) as usize;
    for k in 1..=steps {
        let xk = x * k as f64 / steps as f64;
        target = nearest_root(system, xk, target)?;
    }
    Ok(target)
}

fn nearest_root(system: &TransferSystem, x: f64, near: Complex64) -> Result<Complex64> {
    let poly = system.det_poly(x);
    let mut roots = poly.roots();
    if roots.is_empty() {
        return Err(Error::NumericalConsistency("constant determinant".into()));
    }
    roots.sort_by(|a, b| {
        (a - near)
            .norm()
            .partial_cmp(&(b - near).norm())
            .unwrap()
    });
    if roots.len() > 1 {
        let gap = (roots[0] - roots[1]).norm();
        if gap < ROOT_SEPARATION {
            return Err(Error::DegenerateRoot { gap });
        }
    }
    Ok(roots[0])
}

/// Adjugate of a square complex matrix by cofactor expansion (fine at the
/// dimensions that occur here; valid at singular matrices, unlike `det * inv`).
fn adjugate(m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let n = m.nrows();
    if n == 1 {
        return DMatrix::from_element(1, 1, Complex64::new(1.0, 0.0));
    }
    let mut adj = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let minor = m.clone().remove_row(i).remove_column(j);
            let c = minor.lu().determinant();
            let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
            // adj = C^T
            adj[(j, i)] = c * sign;
        }
    }
    adj
}

/// `l = i ds/dx` at x = 0 by the implicit-function formula
/// `ds/dx = -F_x / F_s` with `F_x = tr(adj(M) M_x)` and `F_s` the exact
/// derivative of the interpolated determinant polynomial.
pub fn backbone_drift_of_system(system: &TransferSystem) -> Result<f64> {
    let s0 = smallest_root(system, 0.0)?;
    let poly = system.det_poly(0.0);
    let f_s = poly.derivative().eval(s0);
    if f_s.norm() < 1e-12 {
        return Err(Error::NumericalConsistency(
            "dF/ds vanishes at the tracked root".into(),
        ));
    }
    let m = system.matrix(0.0, s0);
    let mx = system.matrix_dx(0.0, s0);
    let f_x = (adjugate(&m) * mx).trace();
    let ds_dx = -f_x / f_s;
    let drift = Complex64::new(0.0, 1.0) * ds_dx;
    if drift.im.abs() > 1e-10 {
        return Err(Error::NumericalConsistency(format!(
            "drift has imaginary residue {:.3e}",
            drift.im
        )));
    }
    Ok(drift.re)
}

/// The same derivative by symmetric finite differences on the tracked root
/// (Richardson-extrapolated); the independent cross-check route.
pub fn backbone_drift_finite_difference(system: &TransferSystem, h: f64) -> Result<f64> {
    let d1 = (smallest_root(system, h)? - smallest_root(system, -h)?) / (2.0 * h);
    let d2 = (smallest_root(system, 2.0 * h)? - smallest_root(system, -2.0 * h)?) / (4.0 * h);
    let ds_dx = (4.0 * d1 - d2) / 3.0;
    Ok((Complex64::new(0.0, 1.0) * ds_dx).re)
}

/// First and second Taylor coefficients of the tracked root at x = 0:
/// `s(x) = s(0) + c1 x + c2 x^2 + ...`.
pub fn smallest_root_series(system: &TransferSystem, h: f64) -> Result<(Complex64, Complex64)> {
    let sp = smallest_root(system, h)?;
    let sm = smallest_root(system, -h)?;
    let sp2 = smallest_root(system, 2.0 * h)?;
    let sm2 = smallest_root(system, -2.0 * h)?;
    let s0 = smallest_root(system, 0.0)?;
    let d1 = (sp - sm) / (2.0 * h);
    let d1_wide = (sp2 - sm2) / (4.0 * h);
    let c1 = (4.0 * d1 - d1_wide) / 3.0;
    let dd = (sp + sm - 2.0 * s0) / (h * h);
    let dd_wide = (sp2 + sm2 - 2.0 * s0) / (4.0 * h * h);
    let c2 = (4.0 * dd - dd_wide) / 3.0 / 2.0;
    Ok((c1, c2))
}

#[derive(Clone, Debug, Serialize)]
pub struct DriftResult {
    pub q: u32,
    pub backbone_drift: f64,
    pub graph_drift: f64,
    pub rho: Vec<f64>,
    pub iterations: usize,
    pub residual: f64,
}

/// Normalized componentwise magnitude of the null vector of `M_q(0, s_-, rho)`.
fn rho_bar(spec: &TransferMatrixSpec) -> Result<Vec<f64>> {
    let system = TransferSystem::Hecke(spec.clone());
    let s0 = smallest_root(&system, 0.0)?;
    let m = system.matrix(0.0, s0);
    let svd = m.svd(false, true);
    let vt = svd
        .v_t
        .as_ref()
        .ok_or_else(|| Error::Internal("SVD without V^T".into()))?;
    // nalgebra does not guarantee sorted singular values
    let smallest = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .map(|(i, _)| i)
        .ok_or_else(|| Error::Internal("empty SVD".into()))?;
    let null: Vec<f64> = (0..vt.ncols()).map(|j| vt[(smallest, j)].norm()).collect();
    let sum: f64 = null.iter().sum();
    if sum <= 0.0 {
        return Err(Error::NumericalConsistency("vanishing null vector".into()));
    }
    Ok(null.into_iter().map(|v| v / sum).collect())
}

/// Damped fixed-point iteration `rho <- (1-w) rho + w rho_bar(rho)`.
pub fn solve_rho_fixed_point(q: u32) -> Result<(Vec<f64>, usize, f64)> {
    solve_rho_fixed_point_with(q, 0.5, 1e-10, 10_000)
}

pub fn solve_rho_fixed_point_with(
    q: u32,
    damping: f64,
    tol: f64,
    max_iter: usize,
) -> Result<(Vec<f64>, usize, f64)> {
    let n = transfer_dimension(q);
    let mut rho = vec![1.0 / n as f64; n];
    let mut residuals = Vec::new();
    for it in 0..max_iter {
        let spec = TransferMatrixSpec::new(q, rho.clone())?;
        let bar = rho_bar(&spec)?;
        let mut next = vec![0.0; n];
        let mut delta = 0.0;
        for i in 0..n {
            next[i] = (1.0 - damping) * rho[i] + damping * bar[i];
            delta += (bar[i] - rho[i]).abs();
        }
        let sum: f64 = next.iter().sum();
        for v in next.iter_mut() {
            *v /= sum;
        }
        rho = next;
        residuals.push(delta);
        if delta < tol {
            return Ok((rho, it + 1, delta));
        }
    }
    Err(Error::NonConvergence {
        sweeps: max_iter,
        tail: residuals.iter().rev().take(5).copied().collect(),
    })
}

/// Backbone and graph drifts of the H_q simple walk at the self-consistent
/// vertex weights.
pub fn hecke_drift(q: u32) -> Result<DriftResult> {
    let (rho, iterations, residual) = solve_rho_fixed_point(q)?;
    let spec = TransferMatrixSpec::new(q, rho.clone())?;
    let system = TransferSystem::Hecke(spec);
    let lbar = backbone_drift_of_system(&system)?;
    let fd = backbone_drift_finite_difference(&system, 1e-4)?;
    if (lbar - fd).abs() > 1e-8 {
        return Err(Error::NumericalConsistency(format!(
            "implicit {lbar} vs finite-difference {fd} drift"
        )));
    }
    let graph = graph_drift_from(&rho, lbar);
    Ok(DriftResult {
        q,
        backbone_drift: lbar,
        graph_drift: graph,
        rho,
        iterations,
        residual,
    })
}

/// `l_q = lbar_q (1 + sum_{i>=2} (i-1) rho_i / (1 - rho_1))`.
pub fn graph_drift_from(rho: &[f64], lbar: f64) -> f64 {
    let extra: f64 = rho
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &r)| i as f64 * r)
        .sum();
    lbar * (1.0 + extra / (1.0 - rho[0]))
}

/// Gaussian profile of the backbone generation of the H_3 walk after n steps.
pub fn h3_gaussian_profile(n: u64) -> (f64, f64) {
    (n as f64 / 15.0, 214.0 * n as f64 / 1125.0)
}

/// Closed form of the tracked root of the sigma-bar system:
/// `s_-(x) = 4 / (e^{-ix} + 2 e^{ix} + 1)`, so `s_- = 1 - ix/4 + O(x^2)`.
pub fn sigma_bar_root_closed_form(x: f64) -> Complex64 {
    let emix = Complex64::from_polar(1.0, -x);
    let eix = Complex64::from_polar(1.0, x);
    Complex64::new(4.0, 0.0) / (emix + 2.0 * eix + 1.0)
}

/// The sigma-bar backbone drift: exactly 1/4 from the closed form.
pub fn sigma_bar_drift_exact() -> f64 {
    0.25
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn q3_roots_at_origin() {
        let spec = TransferMatrixSpec::new(3, vec![0.4, 0.6]).unwrap();
        let sys = TransferSystem::Hecke(spec);
        let s = smallest_root(&sys, 0.0).unwrap();
        assert_abs_diff_eq!(s.re, 1.0, epsilon = 1e-10);
        assert_abs_diff_eq!(s.im, 0.0, epsilon = 1e-10);
        // the other root of the quadratic is -3/2
        let roots = sys.det_poly(0.0).roots();
        assert!(roots.iter().any(|z| (z - Complex64::new(-1.5, 0.0)).norm() < 1e-9));
    }

    #[test]
    fn q3_series_coefficients() {
        // s_- = 1 - ix/15 + (209/2250) x^2 + ...
        let spec = TransferMatrixSpec::new(3, vec![0.4, 0.6]).unwrap();
        let sys = TransferSystem::Hecke(spec);
        let (c1, c2) = smallest_root_series(&sys, 1e-3).unwrap();
        assert_abs_diff_eq!(c1.im, -1.0 / 15.0, epsilon = 1e-9);
        assert_abs_diff_eq!(c1.re, 0.0, epsilon = 1e-9);
        assert_abs_diff_eq!(c2.re, 209.0 / 2250.0, epsilon = 1e-6);
    }

    #[test]
    fn q3_fixed_point_and_drifts() {
        let res = hecke_drift(3).unwrap();
        assert_abs_diff_eq!(res.rho[0], 0.4, epsilon = 1e-8);
        assert_abs_diff_eq!(res.rho[1], 0.6, epsilon = 1e-8);
        assert_abs_diff_eq!(res.backbone_drift, 1.0 / 15.0, epsilon = 1e-9);
        assert_abs_diff_eq!(res.graph_drift, 2.0 / 15.0, epsilon = 1e-8);
    }

    #[test]
    fn sigma_bar_closed_form_vs_tracked_root() {
        let sys = TransferSystem::SigmaBar;
        for &x in &[0.0, 1e-3, -2e-3, 0.02] {
            let tracked = smallest_root(&sys, x).unwrap();
            let closed = sigma_bar_root_closed_form(x);
            assert!((tracked - closed).norm() < 1e-9, "x = {x}");
        }
        let drift = backbone_drift_of_system(&sys).unwrap();
        assert_abs_diff_eq!(drift, 0.25, epsilon = 1e-9);
        let (c1, _) = smallest_root_series(&sys, 1e-3).unwrap();
        assert_abs_diff_eq!(c1.im, -0.25, epsilon = 1e-9);
    }

    #[test]
    fn fixed_points_are_interior_for_even_and_odd_q() {
        for q in [4u32, 5, 6] {
            let res = hecke_drift(q).unwrap();
            assert!((res.rho.iter().sum::<f64>() - 1.0).abs() < 1e-9);
            assert!(res.rho.iter().all(|&r| r > 0.0 && r < 1.0), "q={q} rho={:?}", res.rho);
            assert!(res.backbone_drift > 0.0 && res.graph_drift >= res.backbone_drift);
        }
    }

    #[test]
    fn analytic_drifts_regression_pins() {
        // frozen from the converged hierarchy; cross-checked by MC elsewhere
        assert_abs_diff_eq!(hecke_drift(4).unwrap().graph_drift, 0.20951352, epsilon = 1e-6);
        assert_abs_diff_eq!(hecke_drift(5).unwrap().graph_drift, 0.24516449, epsilon = 1e-6);
        assert_abs_diff_eq!(hecke_drift(6).unwrap().graph_drift, 0.27588791, epsilon = 1e-6);
    }
}
