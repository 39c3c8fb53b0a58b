//! The groups as isometries of the upper half-plane.

mod lyapunov;
mod measure;

pub use lyapunov::{
    check_length_trace_relation, lyapunov_from_invariant_measure, lyapunov_mc,
    lyapunov_mc_directed, sigma_letter_matrices, table1, table1_row, BackboneSpec,
    LyapunovMethod, LyapunovResult, RelationReport, Table1Row, TableRowId,
};
pub use measure::{
    aggregate_bins, angle_step, iterate_invariant_measure, l1_distance, lyapunov_from_measure,
    mc_theta_histogram, DensityGrid,
};

use crate::error::{Error, Result};
use crate::group::Matrix2;
use num_complex::Complex64;

/// A point of the Poincare upper half-plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HyperbolicPoint {
    z: Complex64,
}

impl HyperbolicPoint {
    pub fn new(z: Complex64) -> Result<Self> {
        if !(z.im > 0.0) {
            return Err(Error::Config(format!("Im z = {} must be positive", z.im)));
        }
        Ok(HyperbolicPoint { z })
    }

    /// The tree root i = (0, 1).
    pub fn i() -> Self {
        HyperbolicPoint {
            z: Complex64::new(0.0, 1.0),
        }
    }

    pub fn z(&self) -> Complex64 {
        self.z
    }
}

/// Fractional-linear action `z -> (az + b)/(cz + d)`.
pub fn mobius_apply(m: &Matrix2<f64>, p: HyperbolicPoint) -> Result<HyperbolicPoint> {
    let z = p.z();
    let a = Complex64::new(m.e[0][0], 0.0);
    let b = Complex64::new(m.e[0][1], 0.0);
    let c = Complex64::new(m.e[1][0], 0.0);
    let d = Complex64::new(m.e[1][1], 0.0);
    let den = c * z + d;
    if den.norm() < 1e-300 {
        return Err(Error::PointAtInfinity);
    }
    let w = (a * z + b) / den;
    HyperbolicPoint::new(w).map_err(|_| Error::PointAtInfinity)
}

/// Geodesic distance between two points of the half-plane:
/// `cosh d = 1 + |z1 - z2|^2 / (2 Im z1 Im z2)`.
pub fn point_pair_distance(p1: HyperbolicPoint, p2: HyperbolicPoint) -> f64 {
    let z1 = p1.z();
    let z2 = p2.z();
    let cosh_d = 1.0 + (z1 - z2).norm_sqr() / (2.0 * z1.im * z2.im);
    cosh_d.max(1.0).acosh()
}

/// Hyperbolic displacement of the root by a matrix with `det = +-1`:
/// `2 cosh d = Tr(m m^T)`. Matrices are first normalized by `sqrt|det|`.
pub fn hyperbolic_distance_of_matrix(m: &Matrix2<f64>) -> Result<f64> {
    let det = m.det();
    if det.abs() < 1e-300 {
        return Err(Error::Config("singular matrix has no displacement".into()));
    }
    let scale = det.abs().sqrt();
    let tr = m.trace_mmt() / (scale * scale);
    if tr < 2.0 - 1e-12 {
        return Err(Error::NumericalConsistency(format!(
            "Tr(m m^T) = {tr} below 2"
        )));
    }
    Ok((tr / 2.0).max(1.0).acosh())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn t_hat() -> Matrix2<f64> {
        Matrix2::new(1.0, 1.0, 0.0, 1.0)
    }

    fn s_hat() -> Matrix2<f64> {
        Matrix2::new(0.0, 1.0, -1.0, 0.0)
    }

    #[test]
    fn identity_fixes_i() {
        let p = mobius_apply(&Matrix2::identity(), HyperbolicPoint::i()).unwrap();
        assert_eq!(p.z(), Complex64::new(0.0, 1.0));
        assert_eq!(hyperbolic_distance_of_matrix(&Matrix2::identity()).unwrap(), 0.0);
    }

    #[test]
    fn translation_moves_i_right() {
        let p = mobius_apply(&t_hat(), HyperbolicPoint::i()).unwrap();
        assert_eq!(p.z(), Complex64::new(1.0, 1.0));
        // arccosh(3/2) by both routes
        let d = hyperbolic_distance_of_matrix(&t_hat()).unwrap();
        assert_abs_diff_eq!(d, 1.5_f64.acosh(), epsilon = 1e-12);
        let d2 = point_pair_distance(HyperbolicPoint::i(), p);
        assert_abs_diff_eq!(d, d2, epsilon = 1e-12);
    }

    #[test]
    fn inversion_fixes_i() {
        let p = mobius_apply(&s_hat(), HyperbolicPoint::i()).unwrap();
        assert_abs_diff_eq!((p.z() - Complex64::new(0.0, 1.0)).norm(), 0.0, epsilon = 1e-15);
        let d = hyperbolic_distance_of_matrix(&s_hat()).unwrap();
        assert_abs_diff_eq!(d, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn orientation_reversing_rejected() {
        // det < 0 flips the half-plane; the image is not a HyperbolicPoint
        let m = Matrix2::new(0.0, 1.0, 1.0, 0.0);
        assert!(mobius_apply(&m, HyperbolicPoint::i()).is_err());
    }

    #[test]
    fn isometry_of_point_pairs() {
        let g = Matrix2::new(2.0, 1.0, 1.0, 1.0);
        let z1 = HyperbolicPoint::new(Complex64::new(0.3, 0.8)).unwrap();
        let z2 = HyperbolicPoint::new(Complex64::new(-1.2, 2.5)).unwrap();
        let d = point_pair_distance(z1, z2);
        let d2 =
            point_pair_distance(mobius_apply(&g, z1).unwrap(), mobius_apply(&g, z2).unwrap());
        assert_abs_diff_eq!(d, d2, epsilon = 1e-12);
    }
}
