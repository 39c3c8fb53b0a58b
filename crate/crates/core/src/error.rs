use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("letter {letter} is not a generator of the {framing} framing")]
    MalformedWord { letter: i32, framing: String },

    #[error("unsupported arithmetic mode: {0}")]
    UnsupportedMode(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("resource limit: {0}")]
    ResourceLimit(String),

    #[error("singular vertex weight: rho[0] = 1")]
    SingularWeight,

    #[error("degenerate root: |s_minus - s_next| = {gap:.3e} below separation threshold")]
    DegenerateRoot { gap: f64 },

    #[error("numerical consistency failure: {0}")]
    NumericalConsistency(String),

    #[error("closure filter accepted {accepted} of {proposals} proposals (rate {rate:.3e}); not enough samples")]
    InsufficientSamples {
        accepted: u64,
        proposals: u64,
        rate: f64,
    },

    #[error("Mobius image at infinity: cz + d = 0")]
    PointAtInfinity,

    #[error("evaluation at a root of 1 - u^2 + u^4")]
    Pole,

    #[error("measure iteration did not converge after {sweeps} sweeps; last L1 deltas {tail:?}")]
    NonConvergence { sweeps: usize, tail: Vec<f64> },

    #[error("kappa lattice truncation reached; enlarge the lattice")]
    LatticeTruncation,

    #[error("internal error: {0}")]
    Internal(String),
}
