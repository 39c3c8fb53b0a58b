//! Return probabilities: trivial words of PSL(2,Z) and trivial braids of B3.

use super::{sample_rng, wilson_interval, WalkConfig, WalkState};
use crate::error::{Error, Result};
use crate::group::Framing;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ReturnProbRow {
    pub n: u64,
    pub p_hat: f64,
    pub wilson_low: f64,
    pub wilson_high: f64,
    pub hits: u64,
    pub samples: u64,
    pub seed: u64,
}

fn parity_zero_row(n: u64, samples: u64, seed: u64) -> ReturnProbRow {
    ReturnProbRow {
        n,
        p_hat: 0.0,
        wilson_low: 0.0,
        wilson_high: 0.0,
        hits: 0,
        samples,
        seed,
    }
}

/// Estimated probability that an n-step word is trivial, for each n.
///
/// Supported framings: the PSL(2,Z) sigma-bar walk (trivial projection) and
/// the B3 sigma walk (trivial braid). Odd n have exact probability 0 by the
/// parity of the exponent sum / backbone generation and are reported as such.
pub fn estimate_return_probability(
    framing: Framing,
    n_list: &[u64],
    samples: u64,
    seed: u64,
) -> Result<Vec<ReturnProbRow>> {
    match framing {
        Framing::ModularSigma { .. } | Framing::BraidSigma { .. } => {}
        _ => {
            return Err(Error::Config(format!(
                "return probability is defined for the sigma framings, got {framing}"
            )))
        }
    }
    let mut rows = Vec::with_capacity(n_list.len());
    for &n in n_list {
        if n % 2 == 1 {
            rows.push(parity_zero_row(n, samples, seed));
            continue;
        }
        let cfg = WalkConfig::simple(framing, n, samples, seed);
        cfg.validate()?;
        const BATCH: u64 = 4096;
        let hits: u64 = (0..samples.div_ceil(BATCH))
            .into_par_iter()
            .map(|b| {
                let lo = b * BATCH;
                let hi = ((b + 1) * BATCH).min(samples);
                let mut h = 0u64;
                for i in lo..hi {
                    let mut rng = sample_rng(seed, i);
                    let mut st = WalkState::new(framing).expect("framing");
                    let moves = framing.moves();
                    for _ in 0..n {
                        st.apply(moves[rng.gen_range(0..moves.len())]);
                    }
                    if st.is_trivial() {
                        h += 1;
                    }
                }
                h
            })
            .sum();
        let (lo, hi) = wilson_interval(hits, samples);
        rows.push(ReturnProbRow {
            n,
            p_hat: hits as f64 / samples as f64,
            wilson_low: lo,
            wilson_high: hi,
            hits,
            samples,
            seed,
        });
    }
    Ok(rows)
}

/// Exact return probability by exhaustive enumeration of all 4^n words.
pub fn enumerate_return_probability(framing: Framing, n: u32) -> Result<f64> {
    let mut hits: u64 = 0;
    let mut total: u64 = 0;
    super::for_each_word(framing, n, |st| {
        total += 1;
        if st.is_trivial() {
            hits += 1;
        }
    })?;
    Ok(hits as f64 / total as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_two_step_quarter() {
        // sigma-bar followed by its inverse: 4 of 16
        let p = enumerate_return_probability(Framing::modular_sigma(), 2).unwrap();
        assert_eq!(p, 0.25);
        let p = enumerate_return_probability(Framing::braid_sigma(), 2).unwrap();
        assert_eq!(p, 0.25);
    }

    #[test]
    fn exact_small_b3_values() {
        // frozen from exhaustive enumeration: 7/64 and 61/1024
        let p4 = enumerate_return_probability(Framing::braid_sigma(), 4).unwrap();
        assert!((p4 - 7.0 / 64.0).abs() < 1e-15);
        let p6 = enumerate_return_probability(Framing::braid_sigma(), 6).unwrap();
        assert!((p6 - 61.0 / 1024.0).abs() < 1e-15);
    }

    #[test]
    fn odd_n_is_exactly_zero() {
        let rows =
            estimate_return_probability(Framing::braid_sigma(), &[3, 5], 100, 1).unwrap();
        assert!(rows.iter().all(|r| r.p_hat == 0.0));
        let p = enumerate_return_probability(Framing::modular_sigma(), 3).unwrap();
        assert_eq!(p, 0.0);
    }

    #[test]
    fn braid_trivial_implies_projection_trivial() {
        // matched seeds: B3 return count <= PSL return count
        let n = 8;
        let samples = 20_000;
        let b3 = estimate_return_probability(Framing::braid_sigma(), &[n], samples, 99).unwrap();
        let psl =
            estimate_return_probability(Framing::modular_sigma(), &[n], samples, 99).unwrap();
        assert!(b3[0].hits <= psl[0].hits);
    }
}
