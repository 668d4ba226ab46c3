//! Exact local Euler factors for Hecke, symmetric-power, tensor, spinor and
//! standard L-functions of elliptic eigenforms and their Ikeda and
//! Miyawaki-Ikeda lifts, with checkers for the factorization identities
//! relating them.
//!
//! The modules build on each other bottom-up:
//!
//! * [`exactalg`]: Laurent polynomials in `a, b, q, T` over big integers.
//! * [`modforms`]: q-expansions, Hecke eigenvalues and numeric Satake roots.
//! * [`satake`]: Satake parameter sets and the Weyl group action.
//! * [`combinat`]: the multiplicities α(r,m,n), β(r,m,n).
//! * [`lfactors`]: Euler factor builders.
//! * [`verify`]: left/right sides of each identity and their comparison.

pub mod combinat;
pub mod error;
pub mod exactalg;
pub mod lfactors;
pub mod modforms;
pub mod par;
pub mod satake;
pub mod verify;

pub use error::{Error, Result};
pub use exactalg::{LaurentPoly, Monomial};
