//! Exact effective-channel simulation for the five-qubit perfect code and the
//! Steane code under arbitrary, qubit-dependent single-qubit noise.
//!
//! The pipeline is: build a [`CodeSpec`], pick one [`QuantumChannel`] per
//! physical qubit, and call [`effective_channel`] to obtain the logical
//! channel's tomogram, Choi matrix, Kraus form and entanglement fidelity.

pub mod channel;
pub mod cli;
pub mod code;
pub mod effective;
pub mod error;
pub mod experiment;
pub mod oracles;
pub mod tensor;

pub use channel::{
    entanglement_fidelity, make_standard_channel, sample_arbitrary_channel, ChannelSpec,
    QuantumChannel, StandardKind,
};
pub use code::{build_five_qubit_code, build_steane_code, CodeName, CodeSpec};
pub use effective::{
    concatenate, effective_channel, effective_fidelity, ChoiMatrix, NoiseModel, ProcessTomogram,
};
pub use error::{Error, Result};
pub use tensor::ComplexMatrix;
