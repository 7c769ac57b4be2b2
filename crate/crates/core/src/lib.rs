//! # qdiscord
//!
//! Quantumness of two-state qubit ensembles ℰ = {λᵢ, ρᵢ}: the Holevo bound χ,
//! the accessible information I_acc, quantum discord D = χ − I_acc of the
//! classical-quantum state Σ λᵢ|i⟩⟨i| ⊗ ρᵢ, and the geometric discord D_G.
//!
//! Every state is carried as a Bloch vector, so entropies and purities are
//! closed-form functions of vector norms and inner products.
//!
//! - [`qstate`]: Bloch vectors, binary and von Neumann entropy, purity.
//! - [`ensemble`]: ensembles, χ, and the classical-quantum entropy identities.
//! - [`measurement`]: projective measurements and their statistics.
//! - [`discord`]: I_acc and D by in-plane optimization, the Koashi–Winter
//!   closed form for pure pairs, and the stationarity conditions.
//! - [`geodiscord`]: D_G by a 3×3 eigen-solve, its stationarity condition and
//!   branch classification.
//! - [`oracle`]: full-sphere brute force used to cross-check both optimizers.
//! - [`cli`]: the `qdiscord` command-line front end.

#![forbid(unsafe_code)]

pub mod cli;
pub mod discord;
pub mod eigen;
pub mod ensemble;
pub mod error;
pub mod geodiscord;
pub mod measurement;
pub mod optimize;
pub mod oracle;
pub mod qstate;
pub mod sampling;

pub use discord::{
    accessible_information, discord_pure_koashi_winter, quantum_discord, KoashiWinterBreakdown,
};
pub use ensemble::{holevo_chi, QubitEnsemble};
pub use error::{Error, Result};
pub use geodiscord::{geometric_discord, pure_pair_geo_closed_form};
pub use measurement::ProjectiveMeasurement;
pub use optimize::{OptimizationMethod, OptimizationResult};
pub use qstate::{BlochVector, PureStatePair};
