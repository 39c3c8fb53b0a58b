//! Alexander polynomials of closed 3-braids via the Magnus representation.
//!
//! `(1 + t + t^2) nabla(t) = det(M - I) = det M + 1 - Tr M` for the Magnus
//! product `M` of the braid word; the division is exact (a theorem, asserted
//! at runtime). Statistics at a real evaluation point `u` (with `t = -u^2`)
//! connect the polynomial's growth to the Lyapunov exponent of the
//! determinant-1 letters.

use crate::error::{Error, Result};
use crate::group::{exponent_sum, matrix_of_word, ArithmeticMode, Matrix2, Word, WordMatrix};
use crate::hyperbolic::sigma_letter_matrices;
use crate::laurent::LaurentPoly;
use crate::walk::{parallel_estimate, sample_rng, Estimate};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use serde::Serialize;

/// `1 + t + t^2`.
pub fn cyclotomic_factor() -> LaurentPoly {
    let one = BigRational::from_integer(BigInt::from(1));
    LaurentPoly::from_terms([(0, one.clone()), (1, one.clone()), (2, one)])
}

/// Exact Alexander polynomial of the closure of a braid word.
pub fn alexander_polynomial(word: &Word) -> Result<LaurentPoly> {
    let m = match matrix_of_word(word, ArithmeticMode::Laurent)? {
        WordMatrix::Laurent(m) => m,
        _ => unreachable!(),
    };
    let numerator = m.det() + LaurentPoly::one() - m.trace();
    // exactness is a theorem about the Magnus image; failure is a bug
    numerator
        .divide_exact(&cyclotomic_factor())
        .map_err(|e| Error::Internal(format!("(1+t+t^2) division failed: {e}")))
}

/// A braid word with its exact invariant and trace data at a chosen u.
#[derive(Clone, Debug, Serialize)]
pub struct AlexanderRecord {
    pub letters: Vec<i32>,
    pub nabla: LaurentPoly,
    pub exponent_sum: i64,
    /// `ln Tr(w w^T)` of the determinant-1 letters at the chosen u.
    pub trace_log: f64,
    pub u: f64,
}

pub fn alexander_record(word: &Word, u: f64) -> Result<AlexanderRecord> {
    let nabla = alexander_polynomial(word)?;
    let p = exponent_sum(word)?;
    let gens = sigma_letter_matrices(u)?;
    let mut m = Matrix2::<f64>::identity();
    let mut log_scale = 0.0;
    for &l in word.letters() {
        let idx = match l {
            1 => 0,
            2 => 1,
            -1 => 2,
            -2 => 3,
            _ => return Err(Error::MalformedWord { letter: l, framing: "B3".into() }),
        };
        m = m.mul_ref(&gens[idx]);
        let s = m.max_abs();
        if s > 1e100 {
            m = m.scale(1.0 / s);
            log_scale += s.ln();
        }
    }
    Ok(AlexanderRecord {
        letters: word.letters().to_vec(),
        nabla,
        exponent_sum: p,
        trace_log: m.trace_mmt().ln() + 2.0 * log_scale,
        u,
    })
}

/// Value of the typical polynomial `(1 - e^{n gamma_1(u)/2})/(1 - u^2 + u^4)`
/// at the evaluation point u, given a (Monte Carlo) `gamma_1(u)`.
pub fn asymptotic_alexander(n: u64, u: f64, gamma1_u: f64) -> Result<f64> {
    let denom = 1.0 - u * u + u.powi(4);
    if denom.abs() < 1e-9 {
        return Err(Error::Pole);
    }
    Ok((1.0 - (n as f64 * gamma1_u / 2.0).exp()) / denom)
}

/// Magnitude of `ln |nabla(u)|` of a random braid, computed in log scale from
/// the exact identity `det M = u^{2p}` and the scaled trace.
fn log_abs_nabla_at_u<R: Rng>(gens: &[Matrix2<f64>], u: f64, n: u64, rng: &mut R) -> (i64, f64) {
    // determinant-1 letters differ from the Magnus letters by u^{+-1}:
    // M_magnus = u^{p} * M_unimodular (entrywise in absolute value structure),
    // so Tr M_magnus = u^p * (signed trace of the unimodular product).
    let mut m = Matrix2::<f64>::identity();
    let mut log_scale = 0.0f64;
    let mut p: i64 = 0;
    for _ in 0..n {
        let k = rng.gen_range(0..4usize);
        m = m.mul_ref(&gens[k]);
        p += if k < 2 { 1 } else { -1 };
        let s = m.max_abs();
        if s > 1e120 {
            m = m.scale(1.0 / s);
            log_scale += s.ln();
        }
    }
    // terms of det M_magnus + 1 - Tr M_magnus, in logs:
    //   det  = (-t)^p = u^{2p}           -> a = 2p ln u      (sign +)
    //   one  = 1                         -> b = 0            (sign +)
    //   tr   = u^p * tr(unimodular)      -> c = p ln u + ln|tr|, sign of tr
    let lu = u.ln();
    let tr = m.trace();
    let a = 2.0 * p as f64 * lu;
    let b = 0.0;
    let c = p as f64 * lu + tr.abs().ln() + log_scale;
    let tr_sign = tr.signum();
    let mx = a.max(b).max(c);
    let sum = (a - mx).exp() + (b - mx).exp() - tr_sign * (c - mx).exp();
    let denom = (1.0 - u * u + u.powi(4)).abs().ln();
    (p, mx + sum.abs().max(1e-300).ln() - denom)
}

#[derive(Clone, Debug, Serialize)]
pub struct AlexanderStatistics {
    pub n: u64,
    pub u: f64,
    pub samples: u64,
    /// Joint sample of (exponent sum p, ln|nabla(u)|).
    pub joint: Vec<(i64, f64)>,
    pub p_mean: f64,
    pub p_variance: f64,
    pub mean_log_abs_nabla: Estimate,
}

/// Joint statistics of `(p, ln|nabla(u)|)` over random n-letter braids.
pub fn alexander_statistics(
    n: u64,
    samples: u64,
    u: f64,
    seed: u64,
) -> Result<AlexanderStatistics> {
    let denom = 1.0 - u * u + u.powi(4);
    if denom.abs() < 1e-9 {
        return Err(Error::Pole);
    }
    let gens = sigma_letter_matrices(u)?;
    let keep = samples.min(100_000) as usize;
    let mut joint = Vec::with_capacity(keep);
    let mut p_acc = crate::walk::Accumulator::default();
    for i in 0..samples.min(100_000) {
        let mut rng = sample_rng(seed, i);
        let (p, ln_nabla) = log_abs_nabla_at_u(&gens, u, n, &mut rng);
        joint.push((p, ln_nabla));
        p_acc.push(p as f64);
    }
    let est = parallel_estimate(samples, seed, |_, rng| {
        log_abs_nabla_at_u(&gens, u, n, rng).1
    });
    Ok(AlexanderStatistics {
        n,
        u,
        samples,
        joint,
        p_mean: p_acc.mean(),
        p_variance: p_acc.variance(),
        mean_log_abs_nabla: est,
    })
}
