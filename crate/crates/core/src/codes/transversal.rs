// Copyright 2026 The qec-workbench Authors
// SPDX-License-Identifier: Apache-2.0

//! Verification of bitwise gates on the 7-qubit code against its explicit
//! codewords.

use std::collections::BTreeMap;

use serde::Serialize;

use super::StabilizerCode;
use crate::dense::{c, gate_constant, StateVector, C64};
use crate::error::{QecError, Result};
use crate::oracle::{codeword_basis, hadamard_all, RESIDUAL_TOL, STEANE_EVEN, STEANE_ODD};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TransversalGate {
    BitwiseH,
    BitwiseX,
    BitwiseZ,
    TransversalCnot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EncodedGate {
    H,
    X,
    Z,
    #[serde(rename = "CNOT")]
    Cnot,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct LogicalAction {
    pub gate: EncodedGate,
    /// Largest distance between the image of an encoded basis state and the
    /// expected encoded output.
    pub mismatch: f64,
}

/// Applies `gate` bitwise to the encoded basis states and confirms it acts
/// as the corresponding logical gate.
pub fn transversal_gate_image(
    code: &StabilizerCode,
    gate: TransversalGate,
) -> Result<LogicalAction> {
    if code.name != "steane7" || code.n != 7 {
        return Err(QecError::Unsupported(format!(
            "transversal gates are verified for steane7 only, got {}",
            code.name
        )));
    }
    let (zero, one) = codeword_basis("steane7")?;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let bitwise = |name: &str, v: &StateVector| -> StateVector {
        let u = gate_constant(name).expect("known");
        (0..7).fold(v.clone(), |acc, q| acc.apply_1q(q, &u))
    };
    let (encoded, mismatch) = match gate {
        TransversalGate::BitwiseH => {
            let want0 = zero.combine(c(s, 0.0), &one, c(s, 0.0));
            let want1 = zero.combine(c(s, 0.0), &one, c(-s, 0.0));
            let d0 = hadamard_all(&zero).distance(&want0);
            let d1 = hadamard_all(&one).distance(&want1);
            (EncodedGate::H, d0.max(d1))
        }
        TransversalGate::BitwiseX => {
            let d0 = bitwise("X", &zero).distance(&one);
            let d1 = bitwise("X", &one).distance(&zero);
            (EncodedGate::X, d0.max(d1))
        }
        TransversalGate::BitwiseZ => {
            let d0 = bitwise("Z", &zero).distance(&zero);
            let d1 = bitwise("Z", &one).distance(&one.scaled(c(-1.0, 0.0)));
            (EncodedGate::Z, d0.max(d1))
        }
        TransversalGate::TransversalCnot => (EncodedGate::Cnot, cnot_mismatch()),
    };
    if mismatch >= RESIDUAL_TOL {
        return Err(QecError::TransversalMismatch(mismatch));
    }
    Ok(LogicalAction {
        gate: encoded,
        mismatch,
    })
}

type Sparse = BTreeMap<u32, C64>;

fn block_terms(logical: u8) -> Vec<u32> {
    let words = if logical == 0 {
        STEANE_EVEN
    } else {
        STEANE_ODD
    };
    words
        .iter()
        .map(|w| u32::from_str_radix(w, 2).expect("binary"))
        .collect()
}

/// Sparse two-block state `|a⟩_code |b⟩_code`; block `a` occupies the high 7 bits.
fn two_block(a: u8, b: u8) -> Sparse {
    let amp = c(1.0 / 8.0, 0.0);
    let mut out = Sparse::new();
    for u in block_terms(a) {
        for v in block_terms(b) {
            *out.entry((u << 7) | v).or_default() += amp;
        }
    }
    out
}

/// Transversal CNOT from block 1 (controls) onto block 2, on all four encoded
/// basis states. The 14-qubit states stay sparse: 64 terms each.
fn cnot_mismatch() -> f64 {
    let mut worst: f64 = 0.0;
    for a in 0..2u8 {
        for b in 0..2u8 {
            let mut image = Sparse::new();
            for (idx, amp) in two_block(a, b) {
                let (u, v) = (idx >> 7, idx & 0x7f);
                *image.entry((u << 7) | (v ^ u)).or_default() += amp;
            }
            let want = two_block(a, a ^ b);
            let keys: std::collections::BTreeSet<u32> =
                image.keys().chain(want.keys()).copied().collect();
            let dist: f64 = keys
                .iter()
                .map(|k| {
                    let d = image.get(k).copied().unwrap_or_default()
                        - want.get(k).copied().unwrap_or_default();
                    d.norm_sqr()
                })
                .sum::<f64>()
                .sqrt();
            worst = worst.max(dist);
        }
    }
    worst
}
