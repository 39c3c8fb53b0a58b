//! Drift estimation: sample means of length functionals divided by n.

use super::{parallel_estimate, Estimate, WalkConfig, WalkKind, WalkState};
use crate::error::{Error, Result};
use crate::group::{sigma_spelling_cost, Framing};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LengthFunctional {
    /// Irreducible length in the framing's own alphabet.
    GraphLength,
    /// Generation on the backbone tree (a-syllable count of the normal form,
    /// or of the PSL(2,Z) projection for braid framings).
    BackboneGeneration,
    /// `kappa(pi(w))`: rigorous lower bound for the B3 word length.
    B3LowerBound,
    /// `6|f| + Lsigma(pi(w))`: rigorous upper bound for the B3 word length.
    B3UpperBound,
}

impl LengthFunctional {
    pub fn compatible_with(self, framing: Framing) -> bool {
        match self {
            LengthFunctional::GraphLength => matches!(
                framing,
                Framing::Hecke { .. }
                    | Framing::FreeIdempotent { .. }
                    | Framing::FreeSymmetric { .. }
            ),
            LengthFunctional::BackboneGeneration => matches!(
                framing,
                Framing::Hecke { .. } | Framing::ModularSigma { .. } | Framing::ModularST
            ),
            LengthFunctional::B3LowerBound | LengthFunctional::B3UpperBound => framing.is_braid(),
        }
    }

    pub fn evaluate(self, state: &WalkState) -> f64 {
        match self {
            LengthFunctional::GraphLength => state.graph_length().expect("compatible") as f64,
            LengthFunctional::BackboneGeneration => {
                state.backbone_generation().expect("compatible") as f64
            }
            LengthFunctional::B3LowerBound => {
                state.backbone_generation().expect("braid framing") as f64
            }
            LengthFunctional::B3UpperBound => match &state.state {
                super::GroupState::B3 { projection, .. } => {
                    let f = state.b3_center_exponent().unwrap();
                    (6 * f.unsigned_abs() + sigma_spelling_cost(projection)) as f64
                }
                _ => unreachable!("checked by compatible_with"),
            },
        }
    }
}

/// Monte Carlo estimate of `<functional>/n` after n steps.
pub fn simulate_drift(cfg: &WalkConfig, functional: LengthFunctional) -> Result<Estimate> {
    cfg.validate()?;
    if !functional.compatible_with(cfg.framing) {
        return Err(Error::Config(format!(
            "functional {functional:?} is not defined on framing {}",
            cfg.framing
        )));
    }
    let n = cfg.steps;
    let kind = cfg.walk_kind;
    let framing = cfg.framing;
    Ok(parallel_estimate(cfg.samples, cfg.seed, move |_, rng| {
        let mut st = WalkState::new(framing).expect("valid framing");
        for _ in 0..n {
            st.step(kind, rng);
        }
        functional.evaluate(&st) / n as f64
    }))
}

/// Directed-walk drift (inverse of the previous letter excluded).
pub fn simulate_directed_walk(cfg: &WalkConfig, functional: LengthFunctional) -> Result<Estimate> {
    let mut cfg = *cfg;
    cfg.walk_kind = WalkKind::Directed;
    simulate_drift(&cfg, functional)
}

/// Exact mean of `<functional>/n` over all n_g^n words (enumeration weights).
pub fn enumerate_drift_exact(
    framing: Framing,
    n: u32,
    functional: LengthFunctional,
) -> Result<f64> {
    if !functional.compatible_with(framing) {
        return Err(Error::Config("incompatible functional".into()));
    }
    let mut sum = 0.0;
    let mut count: u64 = 0;
    super::for_each_word(framing, n, |st| {
        sum += functional.evaluate(st);
        count += 1;
    })?;
    Ok(sum / count as f64 / n as f64)
}
