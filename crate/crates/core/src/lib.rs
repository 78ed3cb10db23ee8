//! Local-unitary invariants of bipartite and tripartite mixed quantum states.
//!
//! A density matrix is expanded over tensor products of generalized Gell-Mann
//! matrices. The real coefficient blocks (`S`, `T`, `R`) transform under local
//! unitaries by special-orthogonal rotations, so scalar contractions of those
//! blocks are invariant. This crate evaluates such contractions and packs them
//! into an ordered [`InvariantFingerprint`]. Two states whose fingerprints
//! disagree are certainly not LU-equivalent; agreeing fingerprints prove
//! nothing.

pub mod adjoint;
pub mod bloch;
pub mod compare;
mod error;
pub mod fingerprint;
pub mod generators;
pub mod invariants;
pub mod linalg;
pub mod orbit;
pub mod report;
pub mod states;

pub use adjoint::{
    adjoint_of, conjugate, haar_su, haar_su_from_rng, AdjointRotation, LocalUnitary,
};
pub use bloch::{
    decompose2, decompose3, reconstruct2, reconstruct3, refold, unfold, vec, BlochBipartite,
    BlochTripartite, CorrelationTensor,
};
pub use compare::{compare, Verdict, VerdictStatus, Witness, DEFAULT_TOLERANCE};
pub use error::{Error, Result};
pub use fingerprint::{
    Family, FingerprintMetadata, InvariantFingerprint, InvariantKey, InvariantSettings, Power,
};
pub use generators::{build_basis, expand_coefficient, GeneratorBasis};
pub use invariants::fingerprint;
pub use states::{random_density, read_state, validate, write_state, DensityMatrix, RngSeed};

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;
