//! Transfer matrices of the backbone master equations.
//!
//! `M_q(x, s, rho)` couples the `q/2 + 1` vertex types of the elementary
//! q-gon: type 1 is the cell's entry vertex (trailing a-syllable), type m+1
//! the rotation classes at cell distance m. The `e^{+-ix}` phases mark
//! generation-changing moves, and the column-1 weights `rho_i/(1 - rho_1)`
//! close the hierarchy with the stationary law of the syllable exposed by an
//! a-cancellation.
//!
//! For odd q the apex rotation class contains two vertices that exchange under
//! one b-move, hence the `-1 + s/3` corner; for even q the apex vertex is
//! unique and both b-moves leave it downward, so the corner stays `-1` and the
//! flux into the previous class doubles.

use crate::error::{Error, Result};
use crate::spectral::cpoly::CPoly;
use nalgebra::DMatrix;
use num_complex::Complex64;

pub fn transfer_dimension(q: u32) -> usize {
    (q / 2 + 1) as usize
}

/// Validated vertex-weight vector for H_q.
#[derive(Clone, Debug)]
pub struct TransferMatrixSpec {
    pub q: u32,
    pub rho: Vec<f64>,
}

impl TransferMatrixSpec {
    pub fn new(q: u32, rho: Vec<f64>) -> Result<Self> {
        if q < 3 {
            return Err(Error::Config("Hecke q must be >= 3".into()));
        }
        if rho.len() != transfer_dimension(q) {
            return Err(Error::Config(format!(
                "rho must have length {} for q = {q}",
                transfer_dimension(q)
            )));
        }
        if rho.iter().any(|&r| !(0.0..=1.0).contains(&r)) {
            return Err(Error::Config("rho components must lie in [0,1]".into()));
        }
        let sum: f64 = rho.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::Config(format!("rho must sum to 1, got {sum}")));
        }
        if rho[0] >= 1.0 - 1e-12 {
            return Err(Error::SingularWeight);
        }
        Ok(TransferMatrixSpec { q, rho })
    }

    pub fn uniform(q: u32) -> Self {
        let n = transfer_dimension(q);
        TransferMatrixSpec {
            q,
            rho: vec![1.0 / n as f64; n],
        }
    }
}

/// A root-tracked linear system `det M(x, s) = 0`.
#[derive(Clone, Debug)]
pub enum TransferSystem {
    /// The H_q backbone hierarchy (simple walk on `{a2, b_q, b_q^-1}`).
    Hecke(TransferMatrixSpec),
    /// The two-type system of the PSL(2,Z) walk on the sigma-bar letters.
    SigmaBar,
}

impl TransferSystem {
    pub fn dimension(&self) -> usize {
        match self {
            TransferSystem::Hecke(spec) => transfer_dimension(spec.q),
            TransferSystem::SigmaBar => 2,
        }
    }

    pub fn matrix(&self, x: f64, s: Complex64) -> DMatrix<Complex64> {
        match self {
            TransferSystem::Hecke(spec) => build_transfer_matrix_unchecked(spec, x, s),
            TransferSystem::SigmaBar => sigma_bar_matrix(x, s),
        }
    }

    /// `d/dx` of the matrix at fixed s (the phases carry all x-dependence).
    pub fn matrix_dx(&self, x: f64, s: Complex64) -> DMatrix<Complex64> {
        let i = Complex64::new(0.0, 1.0);
        let eix = i * Complex64::from_polar(1.0, x);
        let emix = -i * Complex64::from_polar(1.0, -x);
        match self {
            TransferSystem::Hecke(spec) => {
                let n = transfer_dimension(spec.q);
                let s3 = s / 3.0;
                let r1 = spec.rho[0];
                let mut m = DMatrix::zeros(n, n);
                m[(0, 1)] = s3 * eix;
                for j in 2..n {
                    m[(0, j)] = s3 * eix;
                }
                m[(1, 0)] = s3 * (spec.rho[1] / (1.0 - r1)) * emix;
                for k in 2..n {
                    m[(k, 0)] = s3 * (spec.rho[k] / (1.0 - r1)) * emix;
                }
                m
            }
            TransferSystem::SigmaBar => {
                let s4 = s / 4.0;
                let diag = -s4 * (emix + 2.0 * eix);
                let mut m = DMatrix::zeros(2, 2);
                m[(0, 0)] = diag;
                m[(1, 1)] = diag;
                m[(0, 1)] = -s4 * eix;
                m[(1, 0)] = -s4 * emix;
                m
            }
        }
    }

    /// `det M(x, s)` as a polynomial in s (interpolation at scaled roots of
    /// unity; the degree is the dimension).
    pub fn det_poly(&self, x: f64) -> CPoly {
        let n = self.dimension();
        let pts: Vec<Complex64> = (0..=n)
            .map(|k| Complex64::from_polar(1.5, 2.0 * std::f64::consts::PI * k as f64 / (n + 1) as f64))
            .collect();
        let vals: Vec<Complex64> = pts
            .iter()
            .map(|&s| self.matrix(x, s).lu().determinant())
            .collect();
        // solve the Vandermonde system for the coefficients
        let mut v = DMatrix::zeros(n + 1, n + 1);
        for (r, &p) in pts.iter().enumerate() {
            let mut acc = Complex64::new(1.0, 0.0);
            for c in 0..=n {
                v[(r, c)] = acc;
                acc *= p;
            }
        }
        let rhs = nalgebra::DVector::from_vec(vals);
        let sol = v.lu().solve(&rhs).expect("distinct interpolation nodes");
        CPoly::new(sol.iter().copied().collect())
    }
}

/// The master-equation matrix of H_q exactly as the hierarchy dictates.
/// Entry (i, j) couples type j+1 into type i+1.
pub fn build_transfer_matrix(
    q: u32,
    x: f64,
    s: Complex64,
    rho: &[f64],
) -> Result<DMatrix<Complex64>> {
    let spec = TransferMatrixSpec::new(q, rho.to_vec())?;
    Ok(build_transfer_matrix_unchecked(&spec, x, s))
}

fn build_transfer_matrix_unchecked(
    spec: &TransferMatrixSpec,
    x: f64,
    s: Complex64,
) -> DMatrix<Complex64> {
    let q = spec.q;
    let n = transfer_dimension(q);
    let s3 = s / 3.0;
    let eix = Complex64::from_polar(1.0, x);
    let emix = Complex64::from_polar(1.0, -x);
    let r1 = spec.rho[0];
    let mut m = DMatrix::from_diagonal_element(n, n, Complex64::new(-1.0, 0.0));
    if q % 2 == 1 {
        // odd q: the apex pair rotates into itself
        m[(n - 1, n - 1)] += s3;
    }
    // row 1: rotation back onto the entry vertex (from type 2 only) plus
    // generation-increasing a-moves from every rotation class
    m[(0, 1)] = s3 * (1.0 + eix);
    for j in 2..n {
        m[(0, j)] = s3 * eix;
    }
    // column 1: both b-moves off the entry vertex land in type 2;
    // a-cancellations descend one generation onto the exposed type
    m[(1, 0)] = s3 * (2.0 + (spec.rho[1] / (1.0 - r1)) * emix);
    for k in 2..n {
        m[(k, 0)] = s3 * (spec.rho[k] / (1.0 - r1)) * emix;
    }
    // rotation band between adjacent classes
    for k in 1..n {
        if k + 1 < n {
            m[(k, k + 1)] = s3;
        }
        if k >= 2 {
            m[(k, k - 1)] = s3;
        }
    }
    if q % 2 == 0 && n >= 3 {
        // even q: the unique apex vertex sends both b-moves down
        m[(n - 2, n - 1)] = 2.0 * s3;
    }
    m
}

/// Two-type system of the sigma-bar walk (¼-rate master equation).
fn sigma_bar_matrix(x: f64, s: Complex64) -> DMatrix<Complex64> {
    let s4 = s / 4.0;
    let eix = Complex64::from_polar(1.0, x);
    let emix = Complex64::from_polar(1.0, -x);
    let one = Complex64::new(1.0, 0.0);
    let diag = one - s4 * (emix + 2.0 * eix);
    let mut m = DMatrix::zeros(2, 2);
    m[(0, 0)] = diag;
    m[(1, 1)] = diag;
    m[(0, 1)] = -s4 * eix;
    m[(1, 0)] = -s4 * emix;
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        assert_eq!(transfer_dimension(3), 2);
        assert_eq!(transfer_dimension(4), 3);
        assert_eq!(transfer_dimension(5), 3);
        assert_eq!(transfer_dimension(6), 4);
    }

    #[test]
    fn q3_matches_the_two_type_system() {
        // at the exact fixed point rho = (2/5, 3/5) the q=3 matrix is the
        // negative of the classical system; det vanishes at (0, 1)
        let m = build_transfer_matrix(3, 0.0, Complex64::new(1.0, 0.0), &[0.4, 0.6]).unwrap();
        assert!(m.clone().lu().determinant().norm() < 1e-12);
        assert!((m[(0, 1)] - Complex64::new(2.0 / 3.0, 0.0)).norm() < 1e-12);
        assert!((m[(1, 0)] - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn zero_s_is_minus_identity() {
        let spec = TransferMatrixSpec::uniform(4);
        let m = TransferSystem::Hecke(spec).matrix(0.0, Complex64::new(0.0, 0.0));
        let n = m.nrows();
        for i in 0..n {
            for j in 0..n {
                let want = if i == j { -1.0 } else { 0.0 };
                assert!((m[(i, j)] - Complex64::new(want, 0.0)).norm() < 1e-15);
            }
        }
        assert!((m.lu().determinant().norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn stochastic_column_sums_at_x0() {
        // every column of M(0, s) sums to s - 1: s = 1 is always a root
        for q in [3u32, 4, 5, 6, 9, 12] {
            let spec = TransferMatrixSpec::uniform(q);
            let s = Complex64::new(0.7, 0.0);
            let m = TransferSystem::Hecke(spec).matrix(0.0, s);
            for j in 0..m.ncols() {
                let col: Complex64 = (0..m.nrows()).map(|i| m[(i, j)]).sum();
                assert!((col - (s - 1.0)).norm() < 1e-12, "q={q} col {j}");
            }
        }
    }

    #[test]
    fn singular_weight_rejected() {
        let err = build_transfer_matrix(3, 0.0, Complex64::new(1.0, 0.0), &[1.0, 0.0]);
        assert!(matches!(err, Err(Error::SingularWeight)));
    }

    #[test]
    fn det_poly_degree() {
        let sys = TransferSystem::Hecke(TransferMatrixSpec::uniform(6));
        assert_eq!(sys.det_poly(0.0).degree(), 4);
    }
}
