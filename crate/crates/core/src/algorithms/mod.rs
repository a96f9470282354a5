//! Approximation algorithms with checkable certificates, and exact
//! brute-force oracles.

mod brute;
mod primal_dual;
mod rounding;

pub use brute::{brute_force, brute_force_sfvs, BruteForceResult, Problem};
pub use primal_dual::{primal_dual_fvs, verify_certificate, CertificateReport, PrimalDualResult, Raise, RaiseKind};
pub use rounding::{iterative_rounding_pfds, RoundingResult, RoundingStep};
