//! Direct iteration of the return-probability master equations for the
//! PSL(2,Z) walk on the sigma-bar letters.
//!
//! Two levels of resolution:
//!
//! * [`honeycomb_return_profile`] — the single-type chain on the cell
//!   distance kappa with bulk rates (up 1/2, stay 1/4, down 1/4). Its
//!   `P_n(0)` is the probability of sitting in the root cell `{e, b, b^2}`;
//!   the boundary rule is the mass-conserving one (stay 1/2 at the root),
//!   which reproduces the root-cell occupation of the actual walk exactly.
//! * [`sigma_return_probability_exact`] — the two-type master equation
//!   refined by the frozen leading b-power of the normal form. Its root state
//!   resolves the three elements of the root cell, so `P_n(root_e)` is the
//!   exact probability of a trivial word. Matches exhaustive enumeration to
//!   machine precision.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

fn lattice_budget(n_max: usize) -> Result<()> {
    if n_max > 1_000_000 {
        return Err(Error::ResourceLimit(format!(
            "kappa lattice of size {n_max} exceeds the 1e6 cap"
        )));
    }
    if let Ok(v) = std::env::var("HYPWALK_MAX_MEM") {
        if let Some(bytes) = crate::group::parse_mem_bytes(&v) {
            let need = (n_max as u64 + 3) * 8 * 8; // a few f64 rows
            if need > bytes {
                return Err(Error::ResourceLimit(
                    "HYPWALK_MAX_MEM too small for the kappa lattice".into(),
                ));
            }
        }
    }
    Ok(())
}

/// `P_n(0)` of the single-type kappa chain for n = 0..=n_max.
///
/// Bulk: `P'(k) = P(k+1)/4 + P(k)/4 + P(k-1)/2`; boundary: stay 1/2 at the
/// root, descend 1/4 from kappa = 1. Total mass is conserved exactly.
pub fn honeycomb_return_profile(n_max: usize) -> Result<Vec<f64>> {
    lattice_budget(n_max)?;
    let k_cap = n_max + 2;
    let mut p = vec![0.0f64; k_cap];
    let mut next = vec![0.0f64; k_cap];
    let mut out = Vec::with_capacity(n_max + 1);
    p[0] = 1.0;
    out.push(1.0);
    for _ in 1..=n_max {
        next[0] = 0.5 * p[0] + 0.25 * p[1];
        next[1] = 0.5 * p[0] + 0.25 * p[1] + 0.25 * p[2];
        for k in 2..k_cap - 1 {
            next[k] = 0.5 * p[k - 1] + 0.25 * p[k] + 0.25 * p[k + 1];
        }
        next[k_cap - 1] = 0.5 * p[k_cap - 2] + 0.25 * p[k_cap - 1];
        std::mem::swap(&mut p, &mut next);
        out.push(p[0]);
    }
    Ok(out)
}

/// Exact-rational variant of [`honeycomb_return_profile`] for small n.
pub fn honeycomb_return_profile_rational(n_max: usize) -> Result<Vec<BigRational>> {
    if n_max > 512 {
        return Err(Error::ResourceLimit(
            "rational honeycomb profile capped at n = 512".into(),
        ));
    }
    let k_cap = n_max + 2;
    let q = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
    let half = q(1, 2);
    let quarter = q(1, 4);
    let mut p = vec![BigRational::zero(); k_cap];
    p[0] = q(1, 1);
    let mut out = vec![p[0].clone()];
    for _ in 1..=n_max {
        let mut next = vec![BigRational::zero(); k_cap];
        next[0] = &half * &p[0] + &quarter * &p[1];
        next[1] = &half * &p[0] + &quarter * &p[1] + &quarter * &p[2];
        for k in 2..k_cap - 1 {
            next[k] = &half * &p[k - 1] + &quarter * &p[k] + &quarter * &p[k + 1];
        }
        next[k_cap - 1] = &half * &p[k_cap - 2] + &quarter * &p[k_cap - 1];
        p = next;
        out.push(p[0].clone());
    }
    Ok(out)
}

/// Exact `p_r(n)` of the sigma-bar walk: probability of a trivial word.
///
/// State space: the three root elements `b^j` and the levels `(j, type, k)`
/// with `j` the frozen leading b-power, type `i` (trailing a-syllable) or `o`
/// (trailing b-syllable), and `k >= 1` the backbone generation. The letter
/// moves of the walk project exactly onto this chain.
pub fn sigma_return_probability_exact(n_max: usize) -> Result<Vec<f64>> {
    lattice_budget(n_max)?;
    let k_cap = n_max / 2 + 3;
    // r[j]; i[j][k]; o[j][k]
    let mut r = [0.0f64; 3];
    let mut i_rows = vec![[0.0f64; 3]; k_cap];
    let mut o_rows = vec![[0.0f64; 3]; k_cap];
    r[0] = 1.0;
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(1.0);
    let mut i_next = vec![[0.0f64; 3]; k_cap];
    let mut o_next = vec![[0.0f64; 3]; k_cap];
    for _ in 1..=n_max {
        let mut r_next = [0.0f64; 3];
        for row in i_next.iter_mut() {
            *row = [0.0; 3];
        }
        for row in o_next.iter_mut() {
            *row = [0.0; 3];
        }
        for j in 0..3 {
            let jp = (j + 1) % 3;
            let jm = (j + 2) % 3;
            // root b^j: two o-moves keep the leading power, two i-moves
            // prepend a new leading b
            o_next[1][j] += 0.5 * r[j];
            i_next[1][jp] += 0.25 * r[j];
            i_next[1][jm] += 0.25 * r[j];
            // level 1 descends into the root
            r_next[jp] += 0.25 * i_rows[1][j];
            r_next[jm] += 0.25 * i_rows[1][j];
            r_next[j] += 0.25 * o_rows[1][j];
            for k in 1..k_cap - 1 {
                let i_k = i_rows[k][j];
                let o_k = o_rows[k][j];
                // type i: up 1/2 to i, down 1/4 to each type (k >= 2)
                i_next[k + 1][j] += 0.5 * i_k;
                if k >= 2 {
                    i_next[k - 1][j] += 0.25 * i_k;
                    o_next[k - 1][j] += 0.25 * i_k;
                }
                // type o: up 1/2 to o, up 1/4 to i, down 1/4 to o (k >= 2)
                o_next[k + 1][j] += 0.5 * o_k;
                i_next[k + 1][j] += 0.25 * o_k;
                if k >= 2 {
                    o_next[k - 1][j] += 0.25 * o_k;
                }
            }
        }
        r = r_next;
        std::mem::swap(&mut i_rows, &mut i_next);
        std::mem::swap(&mut o_rows, &mut o_next);
        out.push(r[0]);
    }
    Ok(out)
}

/// Fit `p(n) = C lambda^n / n^power` on `[n_lo, n_hi]` by least squares in
/// `ln p + power ln n`; zero entries (odd-n parity) are skipped.
pub fn fit_geometric_decay(
    values: &[f64],
    n_lo: usize,
    n_hi: usize,
    power: f64,
) -> Result<(f64, f64)> {
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for n in n_lo..=n_hi.min(values.len().saturating_sub(1)) {
        let p = values[n];
        if p > 0.0 {
            xs.push(n as f64);
            ys.push(p.ln() + power * (n as f64).ln());
        }
    }
    if xs.len() < 3 {
        return Err(Error::Config("not enough points for the decay fit".into()));
    }
    let n = xs.len() as f64;
    let sx: f64 = xs.iter().sum();
    let sy: f64 = ys.iter().sum();
    let sxx: f64 = xs.iter().map(|x| x * x).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| x * y).sum();
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    let intercept = (sy - slope * sx) / n;
    Ok((slope.exp(), intercept.exp()))
}

pub fn honeycomb_lambda_exact() -> f64 {
    (2.0 * std::f64::consts::SQRT_2 + 1.0) / 4.0
}

/// The constant printed in the source analysis, `(9 + 4 sqrt 2)/(7 pi)`.
/// See the acceptance notes: the faithful iterations do not reproduce it.
pub fn honeycomb_c_paper() -> f64 {
    (9.0 + 4.0 * std::f64::consts::SQRT_2) / (7.0 * std::f64::consts::PI)
}
