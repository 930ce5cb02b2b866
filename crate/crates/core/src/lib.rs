//! Independent checking of completion certificates.
//!
//! A certificate pairs an input (a TRS, or equations together with a
//! completed TRS) with a proof tree. [`check::check`] replays every node
//! and yields a [`cert::Verdict`]; [`cpf`] reads and writes the XML form and
//! [`render`] produces a human-readable proof document.

pub mod build;
pub mod cert;
pub mod check;
pub mod cli;
pub mod cpf;
pub mod orders;
pub mod render;
pub mod term;

pub use cert::{CertificationProblem, ProofNode, Verdict};
pub use check::{check, FuelConfig};
