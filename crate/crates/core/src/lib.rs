//! Index of minimal zero-sum sequences of length four over cyclic groups.
//!
//! A sequence `S = (x_1, ..., x_k)` over `Z_n` has index
//! `ind(S) = min_m (|m x_1|_n + ... + |m x_k|_n) / n`, the minimum taken over
//! units `m`. This crate enumerates minimal zero-sum sequences of length four,
//! searches for multipliers that certify index 1, and verifies whole ranges
//! of moduli.

pub mod certify;
pub mod enumerate;
pub mod error;
pub mod harness;
pub mod modring;
pub mod normalform;
pub mod reduce;
pub mod zseq;

pub use certify::{find_certificate, find_certificate_traced, Certificate, Derivation, Verdict};
pub use enumerate::{iter_min_zero_sum4, iter_orbit_reps, orbit_canonical, OrbitRep};
pub use error::{Error, Result};
pub use harness::{verify_modulus, verify_range, Filter, Mode, VerificationReport, VerifyOptions};
pub use modring::{lpr, Modulus};
pub use normalform::{classify, NormalForm, ReductionTag};
pub use zseq::{index, IndexResult, Sequence};
