//! Random walks on the hyperbolic groups PSL(2,Z), H_q, B3 and F_n.
//!
//! The crate has five subsystems:
//!
//! * [`group`] — framings, words, free-product normal forms, the B3 central
//!   extension, matrix representations and a brute-force Cayley-ball oracle;
//! * [`walk`] — the Monte Carlo engine: drift, flux and return-probability
//!   estimation with deterministic counter-based seeding;
//! * [`spectral`] — transfer matrices of the backbone master equations, root
//!   tracking, self-consistent vertex weights and the exact return-probability
//!   iterations;
//! * [`hyperbolic`] — the groups as isometries of the upper half-plane:
//!   Mobius action, hyperbolic distance, invariant angular measure and
//!   Lyapunov exponents;
//! * [`alexander`] — exact Alexander polynomials of closed 3-braids via the
//!   Magnus representation, plus their large-n statistics.
//!
//! [`acceptance`] bundles the quantitative end-to-end checks; the CLI `verify`
//! subcommand and the `acceptance` integration test both run it.

pub mod acceptance;
pub mod alexander;
pub mod error;
pub mod group;
pub mod hyperbolic;
pub mod laurent;
pub mod spectral;
pub mod walk;

pub use error::{Error, Result};
pub use group::{Framing, Word};
pub use laurent::LaurentPoly;
