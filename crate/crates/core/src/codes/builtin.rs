// Copyright 2026 The qec-workbench Authors
// SPDX-License-Identifier: Apache-2.0

use super::StabilizerCode;
use crate::error::{QecError, Result};

pub const BUILTIN_NAMES: [&str; 5] = ["bitflip3", "phaseflip3", "shor9", "steane7", "five_qubit"];

pub fn builtin_names() -> &'static [&'static str] {
    &BUILTIN_NAMES
}

/// Looks up one of the built-in codes by name.
///
/// Generator order follows the usual textbook listing; syndrome bit `i`
/// belongs to generator `i`.
pub fn builtin(name: &str) -> Result<StabilizerCode> {
    let code = match name {
        "bitflip3" => StabilizerCode::from_labels("bitflip3", &["ZZI", "IZZ"], &["XXX"], &["ZII"]),
        "phaseflip3" => {
            StabilizerCode::from_labels("phaseflip3", &["XXI", "IXX"], &["ZZZ"], &["XII"])
        }
        // Only two of the three weight-6 X checks are independent; the third
        // (X4..X9) is the product of the first two.
        "shor9" => StabilizerCode::from_labels(
            "shor9",
            &[
                "ZZIIIIIII",
                "IZZIIIIII",
                "IIIZZIIII",
                "IIIIZZIII",
                "IIIIIIZZI",
                "IIIIIIIZZ",
                "XXXXXXIII",
                "XXXIIIXXX",
            ],
            // |0>,|1> = (|000> ± |111>)^⊗3 / √8: Z1Z4Z7 toggles the block signs.
            &["ZIIZIIZII"],
            &["XXXIIIIII"],
        ),
        "steane7" => StabilizerCode::from_labels(
            "steane7",
            &[
                "IIIZZZZ", "IZZIIZZ", "ZIZIZIZ", "IIIXXXX", "IXXIIXX", "XIXIXIX",
            ],
            &["XXXXXXX"],
            &["ZZZZZZZ"],
        ),
        "five_qubit" => StabilizerCode::from_labels(
            "five_qubit",
            &["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"],
            &["XXXXX"],
            &["ZZZZZ"],
        ),
        other => Err(QecError::Unknown {
            what: "code",
            name: other.to_string(),
        }),
    }?;
    Ok(code)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_name() {
        assert!(matches!(builtin("toric"), Err(QecError::Unknown { .. })));
    }

    #[test]
    fn five_qubit_is_cyclic() {
        let code = builtin("five_qubit").unwrap();
        let labels: Vec<String> = code.generators.iter().map(|g| g.to_string()).collect();
        for (i, l) in labels.iter().enumerate() {
            let base = "XZZXI";
            let shift = i;
            let rotated: String = (0..5)
                .map(|q| base.as_bytes()[(q + 5 - shift) % 5] as char)
                .collect();
            assert_eq!(l, &rotated);
        }
    }

    #[test]
    fn shor_dropped_check_is_in_group() {
        let code = builtin("shor9").unwrap();
        assert!(code.in_stabilizer(&"IIIXXXXXX".parse().unwrap()));
    }
}
