//! Exact-arithmetic engine for higher-order degenerate Euler polynomials.
//!
//! Everything lives in the polynomial ring ℚ[x, y, λ] ([`MPoly`]) and in
//! truncated power series over it ([`TSeries`]). On top of that sit the
//! special sequences ([`degenerate`]), a verifier for the symmetric identities
//! satisfied by those sequences ([`identity`]), and a finite-sum model of the
//! fermionic p-adic integral with congruence checks ([`padic`]).

pub mod degenerate;
pub mod identity;
pub mod padic;
pub mod poly;
pub mod rational;
pub mod series;
pub mod table;

pub use degenerate::{EulerFamily, Method, SequenceError};
pub use identity::{IdentityError, IdentityId, IdentityParams, VerificationReport};
pub use padic::{Congruence, FermionicSum, PadicError};
pub use poly::{Exponents, MPoly, Var};
pub use rational::Rational;
pub use series::{SeriesError, TSeries};
