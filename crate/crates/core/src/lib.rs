// Copyright 2026 The qec-workbench Authors
// SPDX-License-Identifier: Apache-2.0

//! Stabilizer-code toolkit: Pauli algebra, GF(2) linear algebra, code
//! validation and syndromes, dense state-vector oracles, noise channels,
//! fault-tolerance audits and Monte Carlo logical-error estimation.

pub mod bits;
pub mod codes;
pub mod css;
pub mod dense;
pub mod error;
pub mod gadgets;
pub mod gf2;
pub mod montecarlo;
pub mod noise;
pub mod oracle;
pub mod pauli;
pub mod rng;
pub mod suite;
pub mod sweep;

pub use bits::BitVec;
pub use codes::{builtin, load_code, StabilizerCode, Syndrome};
pub use error::{QecError, Result};
pub use gadgets::{CliffordGadget, FaultOutcome, GadgetStyle};
pub use gf2::BinaryMatrix;
pub use montecarlo::{Decoder, RatePoint, TrialResult};
pub use noise::NoiseChannel;
pub use pauli::{Pauli1, PauliOperator};
pub use sweep::{ExperimentConfig, SweepResult};
