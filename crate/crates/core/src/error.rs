// Copyright 2026 The qec-workbench Authors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Errors produced by the workbench core.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum QecError {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    Dimension { expected: usize, actual: usize },

    #[error("unknown {what} `{name}`")]
    Unknown { what: &'static str, name: String },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("CSS construction failed: X-check row {x_row} anticommutes with Z-check row {z_row}")]
    NonOrthogonalChecks { z_row: usize, x_row: usize },

    #[error("transversal verification failed: mismatch norm {0:e}")]
    TransversalMismatch(f64),

    #[error(
        "no finite concatenation level: error rate {epsilon} is not below threshold {threshold}"
    )]
    AboveThreshold { epsilon: f64, threshold: f64 },

    #[error("no isolated fixed point on the grid: {0}")]
    NoFixedPoint(String),

    #[error("too large: {0}")]
    TooLarge(String),
}

pub type Result<T> = std::result::Result<T, QecError>;
