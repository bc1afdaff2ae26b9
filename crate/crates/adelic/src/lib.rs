//! Exact adelic arithmetic and zeta integrals over the rational numbers.
//!
//! The crate builds, from the bottom up:
//!
//! - exact rationals with p-adic valuations, normalized absolute values at
//!   every place, and the p-adic fractional part ([`rational`]);
//! - adele and idele points with finite nonstandard support, the global
//!   norm, and the standard additive characters ([`places`]);
//! - Dirichlet characters with exact root-of-unity tables, conductors, and
//!   Gauss sums ([`dirichlet`]), lifted to idele-class quasi-characters
//!   chi = mu |.|^s ([`quasichar`]);
//! - Schwartz-Bruhat test functions closed under Fourier transform, with
//!   exact transforms at finite places ([`schwartz`]);
//! - local zeta integrals as exact rational functions of p^{-s}, the
//!   archimedean gamma factor, and local functional-equation ratios
//!   ([`local_zeta`]);
//! - the global zeta function with meromorphic continuation, closed-form
//!   residues, completed Dirichlet L-functions, and functional-equation
//!   diagnostics ([`global_zeta`]);
//! - adelic Poisson summation and Riemann-Roch verification, including the
//!   classical theta transformation ([`poisson`]).
//!
//! Fixed conventions: additive measure with Vol(Z_p) = 1 and Lebesgue
//! measure at the real place; multiplicative measure c_p dx/|x| with
//! c_p = p/(p-1) at finite places and dx/|x| at the real place; additive
//! characters e^{-2 pi i x} at the real place and e^{2 pi i frac_p(x)} at
//! p. Under these choices the standard test function is self-dual and the
//! completed zeta function satisfies Lambda(s) = Lambda(1 - s) with
//! residues -1 and +1 at s = 0 and s = 1.

pub mod dirichlet;
pub mod error;
pub mod gamma;
pub mod global_zeta;
pub mod local_zeta;
pub mod places;
pub mod poisson;
pub mod primes;
pub mod quadrature;
pub mod quasichar;
pub mod rational;
pub mod schwartz;
pub mod verify;

pub use dirichlet::DirichletCharacter;
pub use error::{Error, Result};
pub use global_zeta::{completed_lambda, global_zeta_eval, ZetaEvaluator, ZetaOutcome, KAPPA};
pub use places::{AdelePoint, IdelePoint, Place, RealPoint};
pub use quasichar::{QuasiCharacter, UnitaryPart};
pub use rational::{Rational, Valuation};
pub use schwartz::{ArchFunction, GlobalTestFunction, TwistedStepFunction};
