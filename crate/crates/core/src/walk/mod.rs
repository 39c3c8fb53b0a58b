//! Monte Carlo engine for random walks on the group framings.
//!
//! Determinism contract: the RNG stream of sample `i` is derived from
//! `(seed, i)` alone (ChaCha8 with `set_stream`), and parallel reduction works
//! on fixed-size index batches merged in batch order, so every estimate is
//! bit-identical regardless of worker count.

mod drift;
mod estimate;
mod flux;
mod return_prob;

pub use drift::{enumerate_drift_exact, simulate_directed_walk, simulate_drift, LengthFunctional};
pub use estimate::{wilson_interval, Accumulator, Estimate};
pub use flux::{
    flux_sixths_of_letters, simulate_flux, theoretical_flux_variance_per_step, FluxBasis,
    FluxResult,
};
pub use return_prob::{
    enumerate_return_probability, estimate_return_probability, ReturnProbRow,
};

use crate::error::{Error, Result};
use crate::group::{Framing, NormalFormHq};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WalkKind {
    Simple,
    /// Excludes the inverse of the previous letter (the letter itself for
    /// idempotent generators).
    Directed,
    /// Simple walk carrying a flux accumulator; see [`simulate_flux`].
    Magnetic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClosureFilter {
    None,
    /// Keep only samples whose PSL(2,Z) projection is trivial.
    ProjectionClosed,
    /// Keep only samples that are trivial in the full group (B3).
    FullyTrivial,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct WalkConfig {
    pub framing: Framing,
    pub walk_kind: WalkKind,
    pub steps: u64,
    pub samples: u64,
    pub seed: u64,
    pub closure_filter: ClosureFilter,
}

impl WalkConfig {
    pub fn simple(framing: Framing, steps: u64, samples: u64, seed: u64) -> Self {
        WalkConfig {
            framing,
            walk_kind: WalkKind::Simple,
            steps,
            samples,
            seed,
            closure_filter: ClosureFilter::None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.steps == 0 {
            return Err(Error::Config("steps must be >= 1".into()));
        }
        if self.samples == 0 {
            return Err(Error::Config("samples must be >= 1".into()));
        }
        if self.walk_kind == WalkKind::Directed && self.framing.moves().len() < 2 {
            return Err(Error::Config(
                "directed walks need at least 2 available moves".into(),
            ));
        }
        const BUDGET: u128 = 1 << 44; // ~1.7e13 letter operations
        if self.steps as u128 * self.samples as u128 > BUDGET {
            return Err(Error::Config(format!(
                "samples*steps = {} exceeds the configured budget 2^44",
                self.steps as u128 * self.samples as u128
            )));
        }
        Ok(())
    }
}

/// RNG of one sample: counter-based stream indexed by the sample.
pub fn sample_rng(seed: u64, sample_index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(sample_index.wrapping_add(1));
    rng
}

const BATCH: u64 = 2048;

/// Deterministic sample-parallel mean/variance of `f(sample_index, rng)`.
pub fn parallel_estimate<F>(samples: u64, seed: u64, f: F) -> Estimate
where
    F: Fn(u64, &mut ChaCha8Rng) -> f64 + Sync,
{
    let batches: Vec<Accumulator> = (0..samples.div_ceil(BATCH))
        .into_par_iter()
        .map(|b| {
            let lo = b * BATCH;
            let hi = ((b + 1) * BATCH).min(samples);
            let mut acc = Accumulator::default();
            for i in lo..hi {
                let mut rng = sample_rng(seed, i);
                acc.push(f(i, &mut rng));
            }
            acc
        })
        .collect();
    batches
        .into_iter()
        .fold(Accumulator::default(), Accumulator::merge)
        .into_estimate(seed)
}

/// Incrementally reduced group state of a single walk.
#[derive(Clone, Debug)]
pub enum GroupState {
    Hq(NormalFormHq),
    Free { idempotent: bool, stack: Vec<i32> },
    B3 { projection: NormalFormHq, exponent_sum: i64 },
}

/// A walk in progress: reduced state plus directed-walk bookkeeping.
#[derive(Clone, Debug)]
pub struct WalkState {
    pub framing: Framing,
    pub state: GroupState,
    pub prev_letter: Option<i32>,
    moves: Vec<i32>,
}

impl WalkState {
    pub fn new(framing: Framing) -> Result<Self> {
        let state = match framing {
            Framing::Hecke { q } => GroupState::Hq(NormalFormHq::identity(q)),
            Framing::ModularSigma { .. } | Framing::ModularST => {
                GroupState::Hq(NormalFormHq::identity(3))
            }
            Framing::FreeIdempotent { .. } => GroupState::Free {
                idempotent: true,
                stack: Vec::new(),
            },
            Framing::FreeSymmetric { .. } => GroupState::Free {
                idempotent: false,
                stack: Vec::new(),
            },
            Framing::BraidSigma { .. } | Framing::BraidTilde => GroupState::B3 {
                projection: NormalFormHq::identity(3),
                exponent_sum: 0,
            },
        };
        Ok(WalkState {
            framing,
            state,
            prev_letter: None,
            moves: framing.moves(),
        })
    }

    /// Multiply by one letter, keeping the state reduced.
    pub fn apply(&mut self, letter: i32) {
        match &mut self.state {
            GroupState::Hq(nf) => {
                for ab in self.framing.ab_spelling(letter).expect("valid letter") {
                    nf.push(ab);
                }
            }
            GroupState::Free { idempotent, stack } => {
                let cancels = if *idempotent {
                    stack.last() == Some(&letter.abs())
                } else {
                    stack.last() == Some(&-letter)
                };
                if cancels {
                    stack.pop();
                } else {
                    stack.push(if *idempotent { letter.abs() } else { letter });
                }
            }
            GroupState::B3 {
                projection,
                exponent_sum,
            } => {
                for ab in self.framing.ab_spelling(letter).expect("valid letter") {
                    projection.push(ab);
                }
                *exponent_sum += match self.framing {
                    Framing::BraidSigma { .. } => letter.signum() as i64,
                    Framing::BraidTilde => match letter {
                        1 => 3,
                        -1 => -3,
                        2 => -2,
                        -2 => 2,
                        _ => 0,
                    },
                    _ => 0,
                };
            }
        }
        self.prev_letter = Some(letter);
    }

    /// Draw and apply one step of the given kind.
    pub fn step<R: Rng>(&mut self, kind: WalkKind, rng: &mut R) {
        let letter = match kind {
            WalkKind::Simple | WalkKind::Magnetic => {
                self.moves[rng.gen_range(0..self.moves.len())]
            }
            WalkKind::Directed => match self.prev_letter {
                None => self.moves[rng.gen_range(0..self.moves.len())],
                Some(prev) => {
                    let forbidden = self.framing.inverse_letter(prev);
                    let k = rng.gen_range(0..self.moves.len() - 1);
                    let mut chosen = self.moves[k];
                    if self.moves[..=k].contains(&forbidden) {
                        chosen = self.moves[k + 1];
                    }
                    chosen
                }
            },
        };
        self.apply(letter);
    }

    /// Irreducible word length of the current state in its own framing
    /// (`None` where exact graph length is not available).
    pub fn graph_length(&self) -> Option<u64> {
        match &self.state {
            GroupState::Hq(nf) => match self.framing {
                Framing::Hecke { .. } => Some(nf.irreducible_length()),
                _ => None,
            },
            GroupState::Free { stack, .. } => Some(stack.len() as u64),
            GroupState::B3 { .. } => None,
        }
    }

    pub fn backbone_generation(&self) -> Option<u64> {
        match &self.state {
            GroupState::Hq(nf) => Some(nf.backbone_generation()),
            GroupState::B3 { projection, .. } => Some(projection.backbone_generation()),
            GroupState::Free { .. } => None,
        }
    }

    pub fn b3_center_exponent(&self) -> Option<i64> {
        match &self.state {
            GroupState::B3 {
                projection,
                exponent_sum,
            } => {
                let num = exponent_sum - projection.section_exponent_sum();
                debug_assert!(num % 6 == 0);
                Some(num / 6)
            }
            _ => None,
        }
    }

    pub fn is_trivial(&self) -> bool {
        match &self.state {
            GroupState::Hq(nf) => nf.is_identity(),
            GroupState::Free { stack, .. } => stack.is_empty(),
            GroupState::B3 { projection, .. } => {
                projection.is_identity() && self.b3_center_exponent() == Some(0)
            }
        }
    }

    /// Is the PSL(2,Z) image trivial (the state itself for PSL framings)?
    pub fn is_projection_trivial(&self) -> bool {
        match &self.state {
            GroupState::Hq(nf) => nf.is_identity(),
            GroupState::B3 { projection, .. } => projection.is_identity(),
            GroupState::Free { stack, .. } => stack.is_empty(),
        }
    }
}

/// Visit every length-n word of the framing's move alphabet exactly once,
/// with the final walk state. Exhaustive oracle; n is capped.
pub fn for_each_word<F: FnMut(&WalkState)>(framing: Framing, n: u32, mut f: F) -> Result<()> {
    let moves = framing.moves();
    if (moves.len() as f64).powi(n as i32) > 2e8 {
        return Err(Error::ResourceLimit(format!(
            "exhaustive enumeration of {}^{n} words refused",
            moves.len()
        )));
    }
    fn rec<F: FnMut(&WalkState)>(
        state: &WalkState,
        moves: &[i32],
        depth: u32,
        f: &mut F,
    ) {
        if depth == 0 {
            f(state);
            return;
        }
        for &mv in moves {
            let mut next = state.clone();
            next.apply(mv);
            rec(&next, moves, depth - 1, f);
        }
    }
    let state = WalkState::new(framing)?;
    rec(&state, &moves, n, &mut f);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible_across_batch_boundaries() {
        let cfg = WalkConfig::simple(Framing::PSL2Z, 50, 5000, 7);
        let a = simulate_drift(&cfg, LengthFunctional::GraphLength).unwrap();
        let b = simulate_drift(&cfg, LengthFunctional::GraphLength).unwrap();
        assert_eq!(a.mean.to_bits(), b.mean.to_bits());
        assert_eq!(a.variance.to_bits(), b.variance.to_bits());
    }

    #[test]
    fn directed_never_backtracks_immediately() {
        let mut st = WalkState::new(Framing::FreeSymmetric { rank: 2 }).unwrap();
        let mut rng = sample_rng(3, 0);
        for _ in 0..500 {
            let prev = st.prev_letter;
            st.step(WalkKind::Directed, &mut rng);
            if let (Some(p), Some(c)) = (prev, st.prev_letter) {
                assert_ne!(c, -p);
            }
        }
        // on a tree the length grows by exactly one per step
        assert_eq!(st.graph_length(), Some(500));
    }
}
