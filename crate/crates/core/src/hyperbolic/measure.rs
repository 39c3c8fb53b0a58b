//! The invariant angular measure of a random matrix product.
//!
//! The direction process `v_{n+1} = h^T v_n` lives on the projective circle
//! `theta in (-pi/2, pi/2]`. Its stationary law `mu(theta)` is the fixed point
//! of the transfer recursion; for an inverse-closed generator set the pullback
//! by the forward maps is the same operator.
//!
//! The grid discretization transfers bin *masses* through the monotone
//! Mobius maps of the bin edges (an adjoint Ulam scheme). Pointwise density
//! pullback with interpolation systematically misses these singular harmonic
//! measures; moving interval masses keeps the operator stochastic and matches
//! direct orbit sampling.

use crate::error::{Error, Result};
use crate::group::Matrix2;
use crate::walk::sample_rng;
use rand::Rng;
use serde::Serialize;

const PI: f64 = std::f64::consts::PI;

/// Binned measure on the angle circle; weights are bin masses summing to 1.
#[derive(Clone, Debug, Serialize)]
pub struct DensityGrid {
    pub weights: Vec<f64>,
}

impl DensityGrid {
    pub fn uniform(bins: usize) -> Self {
        DensityGrid {
            weights: vec![1.0 / bins as f64; bins],
        }
    }

    pub fn bins(&self) -> usize {
        self.weights.len()
    }

    pub fn theta_center(&self, i: usize) -> f64 {
        (i as f64 + 0.5) * PI / self.bins() as f64 - PI / 2.0
    }

    pub fn normalize(&mut self) {
        let s: f64 = self.weights.iter().sum();
        if s > 0.0 {
            for w in &mut self.weights {
                *w /= s;
            }
        }
    }
}

/// Fold an angle into `(-pi/2, pi/2]` (projective identification).
fn fold(theta: f64) -> f64 {
    let mut t = theta;
    while t > PI / 2.0 {
        t -= PI;
    }
    while t <= -PI / 2.0 {
        t += PI;
    }
    t
}

/// One step of the direction process: `theta' = angle(h^T v(theta))` and the
/// hyperbolic length increment `dd = ln ||h^T v(theta)||^2`.
pub fn angle_step(theta: f64, h: &Matrix2<f64>) -> (f64, f64) {
    let (s, c) = theta.sin_cos();
    let ux = h.e[0][0] * c + h.e[1][0] * s;
    let uy = h.e[0][1] * c + h.e[1][1] * s;
    let p = ux * ux + uy * uy;
    (fold(uy.atan2(ux)), p.ln())
}

/// Mass of the binned measure on the circular interval from `a` to `b`
/// (interpreted with winding < 1; piecewise-constant density).
fn interval_mass(weights: &[f64], a: f64, b: f64) -> f64 {
    let n = weights.len();
    let x0 = (a + PI / 2.0) / PI;
    let mut x1 = (b + PI / 2.0) / PI;
    if x1 < x0 {
        x1 += 1.0;
    }
    let i0 = (x0 * n as f64).floor() as i64;
    let i1 = (x1 * n as f64).floor() as i64;
    let at = |i: i64| weights[i.rem_euclid(n as i64) as usize];
    if i0 == i1 {
        return at(i0) * (x1 - x0) * n as f64;
    }
    let mut total = at(i0) * ((i0 + 1) as f64 - x0 * n as f64);
    for i in i0 + 1..i1 {
        total += at(i);
    }
    total + at(i1) * (x1 * n as f64 - i1 as f64)
}

/// Iterate the transfer recursion on the theta grid until the L1 change per
/// sweep drops below `tol`. Requires an inverse-closed generator set for
/// symmetric walks (the caller's responsibility).
pub fn iterate_invariant_measure(
    generators: &[Matrix2<f64>],
    bins: usize,
    tol: f64,
    max_sweeps: usize,
) -> Result<(DensityGrid, usize)> {
    if bins < 256 {
        return Err(Error::Config("need at least 256 bins".into()));
    }
    if generators.is_empty() {
        return Err(Error::Config("empty generator set".into()));
    }
    // images of the bin edges under each map
    let mut edge_images = Vec::with_capacity(generators.len());
    for h in generators {
        let edges: Vec<f64> = (0..=bins)
            .map(|i| {
                let theta = i as f64 * PI / bins as f64 - PI / 2.0;
                angle_step(theta, h).0
            })
            .collect();
        edge_images.push(edges);
    }
    let mut grid = DensityGrid::uniform(bins);
    let mut history = Vec::new();
    for sweep in 0..max_sweeps {
        let mut next = vec![0.0f64; bins];
        for edges in &edge_images {
            for i in 0..bins {
                let mut a = edges[i];
                let mut b = edges[i + 1];
                // a small bin maps to a small interval; orient it
                if (b - a).rem_euclid(PI) > PI / 2.0 {
                    std::mem::swap(&mut a, &mut b);
                }
                next[i] += interval_mass(&grid.weights, a, b);
            }
        }
        let inv = 1.0 / generators.len() as f64;
        for w in &mut next {
            *w *= inv;
        }
        let sum: f64 = next.iter().sum();
        let mut delta = 0.0;
        for (w, old) in next.iter_mut().zip(&grid.weights) {
            *w /= sum;
            delta += (*w - old).abs();
        }
        grid.weights = next;
        history.push(delta);
        if delta < tol {
            return Ok((grid, sweep + 1));
        }
    }
    Err(Error::NonConvergence {
        sweeps: max_sweeps,
        tail: history.iter().rev().take(8).copied().collect(),
    })
}

/// First two moments of `ln p_alpha(cos theta)` against the invariant measure:
/// `gamma_1 = (1/n_g) sum_alpha int mu ln p_alpha`, `gamma_2` with `ln^2`.
pub fn lyapunov_from_measure(
    generators: &[Matrix2<f64>],
    grid: &DensityGrid,
) -> (f64, f64, f64) {
    let mut g1 = 0.0;
    let mut g2 = 0.0;
    for h in generators {
        for i in 0..grid.bins() {
            let (_, dd) = angle_step(grid.theta_center(i), h);
            g1 += grid.weights[i] * dd;
            g2 += grid.weights[i] * dd * dd;
        }
    }
    g1 /= generators.len() as f64;
    g2 /= generators.len() as f64;
    (g1, g2, g2 - g1 * g1)
}

/// Empirical theta histogram of the direction chain (burn-in dropped).
pub fn mc_theta_histogram(
    generators: &[Matrix2<f64>],
    bins: usize,
    steps: u64,
    seed: u64,
) -> Vec<f64> {
    let mut rng = sample_rng(seed, 0);
    let mut theta = 0.3;
    let burn = steps / 10;
    let mut hist = vec![0.0f64; bins];
    let mut count = 0u64;
    for step in 0..steps {
        let h = &generators[rng.gen_range(0..generators.len())];
        theta = angle_step(theta, h).0;
        if step >= burn {
            let idx = (((theta + PI / 2.0) / PI) * bins as f64) as usize;
            hist[idx.min(bins - 1)] += 1.0;
            count += 1;
        }
    }
    for h in &mut hist {
        *h /= count as f64;
    }
    hist
}

/// Sum adjacent bins down to `coarse` cells (weak-convergence comparison).
pub fn aggregate_bins(weights: &[f64], coarse: usize) -> Vec<f64> {
    assert!(weights.len() % coarse == 0);
    let stride = weights.len() / coarse;
    (0..coarse)
        .map(|i| weights[i * stride..(i + 1) * stride].iter().sum())
        .collect()
}

pub fn l1_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn identity_angle_step() {
        let id = Matrix2::identity();
        let (t, dd) = angle_step(0.7, &id);
        assert_abs_diff_eq!(t, 0.7, epsilon = 1e-15);
        assert_abs_diff_eq!(dd, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn diagonal_stretch_at_zero_angle() {
        let e = 1.7f64;
        let h = Matrix2::new(e, 0.0, 0.0, 1.0 / e);
        let (t, dd) = angle_step(0.0, &h);
        assert_abs_diff_eq!(t, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(dd, 2.0 * e.ln(), epsilon = 1e-12);
    }

    #[test]
    fn cot_transform_is_fractional_linear() {
        // cot theta' = (a cot + c)/(b cot + d) for h = [[a,b],[c,d]]
        let h = Matrix2::new(1.0, 2.0, 3.0, 5.0);
        for &theta in &[0.3, -0.9, 1.2] {
            let (t2, _) = angle_step(theta, &h);
            let x = 1.0 / theta.tan();
            let expect = (h.e[0][0] * x + h.e[1][0]) / (h.e[0][1] * x + h.e[1][1]);
            assert_abs_diff_eq!(1.0 / t2.tan(), expect, epsilon = 1e-9);
        }
    }

    #[test]
    fn interval_mass_basics() {
        let w = vec![0.25; 4];
        // half the circle carries half the mass
        let m = interval_mass(&w, -PI / 2.0 + 1e-12, 0.0);
        assert_abs_diff_eq!(m, 0.5, epsilon = 1e-9);
        // wrap-around interval
        let m = interval_mass(&w, PI / 2.0 - 0.1, -PI / 2.0 + 0.1);
        assert_abs_diff_eq!(m, 0.2 / PI, epsilon = 1e-9);
    }

    #[test]
    fn rotation_invariant_measure_is_uniform() {
        // an elliptic rotation-like element: S fixes the uniform measure
        let s = Matrix2::new(0.0, 1.0, -1.0, 0.0);
        let (grid, _) = iterate_invariant_measure(&[s], 256, 1e-12, 50).unwrap();
        for w in &grid.weights {
            assert_abs_diff_eq!(*w, 1.0 / 256.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn accumulated_dd_equals_vector_norm_growth() {
        // sum of dd along an orbit = 2 ln ||product^T v0|| for unit v0
        let gens = [
            Matrix2::new(1.0, 2.0, 0.0, 1.0),
            Matrix2::new(1.0, 0.0, 2.0, 1.0),
        ];
        let mut theta = 0.2;
        let mut acc = 0.0;
        let mut v = [(0.2f64).cos(), (0.2f64).sin()];
        let mut lognorm = 0.0;
        let mut rng = sample_rng(17, 0);
        for _ in 0..1000 {
            let h = &gens[rng.gen_range(0..2)];
            let (t2, dd) = angle_step(theta, h);
            theta = t2;
            acc += dd;
            let nx = h.e[0][0] * v[0] + h.e[1][0] * v[1];
            let ny = h.e[0][1] * v[0] + h.e[1][1] * v[1];
            let norm = (nx * nx + ny * ny).sqrt();
            v = [nx / norm, ny / norm];
            lognorm += norm.ln();
        }
        assert_abs_diff_eq!(acc, 2.0 * lognorm, epsilon = 1e-9);
    }
}
