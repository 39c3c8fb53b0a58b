//! Magnetic walks on PSL(2,Z): the flux through a path.
//!
//! Each elementary cell of the lattice carries one flux quantum h. A step
//! contributes `+-h/2` (`a2^{+-1}`) or `+-h/3` (`b3^{+-1}`) in the
//! `{a2, b3, a2^-1, b3^-1}` basis, and `+-h/6` per sigma-bar letter. All flux
//! is reported in units of h, held exactly in sixths.

use super::{sample_rng, Accumulator, ClosureFilter, Estimate, WalkConfig, WalkState};
use crate::error::{Error, Result};
use crate::group::Framing;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FluxBasis {
    /// Four moves `{a2, a2^-1, b3, b3^-1}`; increments `+-3, +-2` sixths.
    Ab,
    /// Four sigma-bar moves; increments `+-1` sixths.
    Sigma,
}

impl FluxBasis {
    /// Flux increment of a letter, in units of h/6.
    pub fn increment_sixths(self, letter: i32) -> i64 {
        match self {
            FluxBasis::Ab => match letter {
                1 => 3,
                -1 => -3,
                2 => 2,
                -2 => -2,
                _ => 0,
            },
            FluxBasis::Sigma => letter.signum() as i64,
        }
    }

    fn moves(self) -> [i32; 4] {
        [1, -1, 2, -2]
    }
}

/// Per-step variance of the flux in units of h^2: `13/72` (ab), `1/36` (sigma).
pub fn theoretical_flux_variance_per_step(basis: FluxBasis) -> f64 {
    match basis {
        FluxBasis::Ab => 13.0 / 72.0,
        FluxBasis::Sigma => 1.0 / 36.0,
    }
}

/// Total flux of a letter sequence in units of h/6. Equals the two-homomorphism
/// identity `6*Phi/h = 3(#a2 - #a2^-1) + 2(#b3 - #b3^-1)`, so it can be read
/// off the letter counts in O(1).
pub fn flux_sixths_of_letters(basis: FluxBasis, letters: &[i32]) -> i64 {
    letters.iter().map(|&l| basis.increment_sixths(l)).sum()
}

#[derive(Clone, Debug, Serialize)]
pub struct FluxResult {
    pub basis: FluxBasis,
    pub steps: u64,
    /// Histogram of total flux, keyed in units of h/6.
    pub histogram: BTreeMap<i64, u64>,
    /// Estimate of `(Phi/h)^2 / n` over samples (variance per step, since the
    /// mean flux vanishes by symmetry).
    pub variance_per_step: Estimate,
    pub accepted: u64,
    pub proposals: u64,
}

/// Sample the flux distribution, optionally conditioned on closed paths.
///
/// Closure uses rejection: propose, reduce, test. The conditional law is exact.
pub fn simulate_flux(cfg: &WalkConfig, basis: FluxBasis) -> Result<FluxResult> {
    cfg.validate()?;
    let walk_framing = match basis {
        FluxBasis::Ab => Framing::PSL2Z,
        FluxBasis::Sigma => Framing::modular_sigma(),
    };
    let n = cfg.steps;
    let closed = match cfg.closure_filter {
        ClosureFilter::None => false,
        ClosureFilter::ProjectionClosed | ClosureFilter::FullyTrivial => true,
    };
    const BATCH: u64 = 1024;
    let max_proposals_per_sample: u64 = 200_000;
    let results: Vec<(Accumulator, BTreeMap<i64, u64>, u64, u64)> = (0..cfg
        .samples
        .div_ceil(BATCH))
        .into_par_iter()
        .map(|b| {
            let lo = b * BATCH;
            let hi = ((b + 1) * BATCH).min(cfg.samples);
            let mut acc = Accumulator::default();
            let mut hist = BTreeMap::new();
            let mut accepted = 0u64;
            let mut proposals = 0u64;
            for i in lo..hi {
                let mut rng = sample_rng(cfg.seed, i);
                let mut tries = 0u64;
                let phi = loop {
                    tries += 1;
                    proposals += 1;
                    let mut state = WalkState::new(walk_framing).expect("framing");
                    let mut phi6: i64 = 0;
                    for _ in 0..n {
                        let letter = basis.moves()[rng.gen_range(0..4)];
                        phi6 += basis.increment_sixths(letter);
                        if closed {
                            state.apply(letter);
                        }
                    }
                    if !closed || state.is_projection_trivial() {
                        break Some(phi6);
                    }
                    if tries >= max_proposals_per_sample {
                        break None;
                    }
                };
                if let Some(phi6) = phi {
                    accepted += 1;
                    *hist.entry(phi6).or_insert(0) += 1;
                    let phi_h = phi6 as f64 / 6.0;
                    acc.push(phi_h * phi_h / n as f64);
                }
            }
            (acc, hist, accepted, proposals)
        })
        .collect();

    let mut acc = Accumulator::default();
    let mut histogram = BTreeMap::new();
    let mut accepted = 0;
    let mut proposals = 0;
    for (a, h, acc_n, prop_n) in results {
        acc = acc.merge(a);
        for (k, v) in h {
            *histogram.entry(k).or_insert(0) += v;
        }
        accepted += acc_n;
        proposals += prop_n;
    }
    if accepted == 0 {
        return Err(Error::InsufficientSamples {
            accepted,
            proposals,
            rate: 0.0,
        });
    }
    Ok(FluxResult {
        basis,
        steps: n,
        histogram,
        variance_per_step: acc.into_estimate(cfg.seed),
        accepted,
        proposals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walk::WalkKind;

    fn cfg(n: u64, samples: u64, closed: bool) -> WalkConfig {
        WalkConfig {
            framing: Framing::PSL2Z,
            walk_kind: WalkKind::Magnetic,
            steps: n,
            samples,
            seed: 42,
            closure_filter: if closed {
                ClosureFilter::ProjectionClosed
            } else {
                ClosureFilter::None
            },
        }
    }

    #[test]
    fn stepwise_equals_counting_identity() {
        // flux of a word == exponent-combination, by construction of increments;
        // check the two-homomorphism relation against a reduced-state recompute
        let letters = [1, 2, 2, -1, -2, 1, 2, -2, -1, -1, 2];
        let stepwise = flux_sixths_of_letters(FluxBasis::Ab, &letters);
        let a_net: i64 = letters.iter().filter(|&&l| l.abs() == 1).map(|&l| l.signum() as i64).sum();
        let b_net: i64 = letters.iter().filter(|&&l| l.abs() == 2).map(|&l| l.signum() as i64).sum();
        assert_eq!(stepwise, 3 * a_net + 2 * b_net);
    }

    #[test]
    fn sigma_variance_is_exact_bernoulli() {
        assert!((theoretical_flux_variance_per_step(FluxBasis::Sigma) - 1.0 / 36.0).abs() < 1e-15);
        let r = simulate_flux(&cfg(50, 20_000, false), FluxBasis::Sigma).unwrap();
        let v = r.variance_per_step.mean;
        assert!(
            (v - 1.0 / 36.0).abs() < 4.0 * r.variance_per_step.standard_error + 1e-4,
            "v = {v}"
        );
    }

    #[test]
    fn closed_filter_reports_acceptance() {
        let r = simulate_flux(&cfg(8, 2000, true), FluxBasis::Ab).unwrap();
        assert!(r.accepted == 2000);
        assert!(r.proposals > r.accepted);
        // closed paths have integer flux: 6 | phi6
        for (&k, _) in &r.histogram {
            assert_eq!(k.rem_euclid(6), 0, "closed flux must be an integer multiple of h");
        }
    }
}
