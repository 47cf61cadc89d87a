//! Exact laboratory for the affine Markov chain `x_{n+1} = a x_n + b_n` over a prime field.
//!
//! The crate evolves the law of the chain exactly (no sampling), measures its distance to
//! the uniform distribution in total variation and normalized `l^q` norms, computes mixing
//! times and cut-off profiles, and checks the arithmetic identities that connect the chain
//! to random integer polynomials: the Fourier product formula, the self-similarity bounds,
//! the root-counting identity, prime-window root averages, and Mahler-measure bounds.
//!
//! Modules:
//!
//! - [`modfield`]: word-sized modular arithmetic, primality, prime windows, orders.
//! - [`dist`]: step laws, exact evolution, Fourier profiles, distances, mixing times, sweeps.
//! - [`poly`]: polynomials over `F_p` and `Z`, root counting, cyclotomics, Mahler measure.
//! - [`chebotarev`]: the root-counting identity and prime-window averages.
//! - [`harness`]: seeded randomness, configuration, CSV/JSON output, the CLI and `verify`.

// Parameter guards are written `!(x > 0.0)` so that NaN is rejected along with the range.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod chebotarev;
pub mod dist;
pub mod error;
pub mod harness;
pub mod modfield;
pub mod poly;

pub use error::{Error, Result};
