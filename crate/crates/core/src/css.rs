// Copyright 2026 The qec-workbench Authors
// SPDX-License-Identifier: Apache-2.0

//! CSS codes from a pair of classical parity-check matrices.

use crate::bits::BitVec;
use crate::codes::StabilizerCode;
use crate::error::{QecError, Result};
use crate::gf2::{first_non_orthogonal, solve_in_row_space, BinaryMatrix};
use crate::pauli::{Pauli1, PauliOperator};

fn typed(bits: &BitVec, p: Pauli1) -> PauliOperator {
    PauliOperator::from_support(bits.len(), &bits.ones().collect::<Vec<_>>(), p)
}

/// Kernel vectors of `checks` that are independent modulo `span`.
fn logical_candidates(checks: &BinaryMatrix, span: &BinaryMatrix) -> Vec<BitVec> {
    let mut acc: Vec<BitVec> = span
        .independent_rows()
        .iter()
        .map(|&i| span.row(i).clone())
        .collect();
    let mut out = Vec::new();
    for v in checks.kernel_basis().rows() {
        if solve_in_row_space(&acc, v).is_none() {
            acc.push(v.clone());
            out.push(v.clone());
        }
    }
    out
}

/// Builds the CSS code whose Z-type generators are the rows of `h_z` and whose
/// X-type generators are the rows of `h_x`.
///
/// Dependent rows are dropped (earliest rows kept, order preserved). Logical
/// operators are a symplectic completion: X-type from `ker h_z` modulo the X
/// checks, Z-type from `ker h_x` modulo the Z checks, paired so that
/// `X̄_i` anticommutes with `Z̄_j` exactly when `i == j`.
pub fn css_code(name: &str, h_z: &BinaryMatrix, h_x: &BinaryMatrix) -> Result<StabilizerCode> {
    let n = h_z.num_cols().max(h_x.num_cols());
    for m in [h_z, h_x] {
        if m.num_rows() > 0 && m.num_cols() != n {
            return Err(QecError::Dimension {
                expected: n,
                actual: m.num_cols(),
            });
        }
    }
    let h_z = if h_z.num_rows() == 0 {
        BinaryMatrix::zeros(0, n)
    } else {
        h_z.clone()
    };
    let h_x = if h_x.num_rows() == 0 {
        BinaryMatrix::zeros(0, n)
    } else {
        h_x.clone()
    };
    if let Some((z_row, x_row)) = first_non_orthogonal(&h_z, &h_x) {
        return Err(QecError::NonOrthogonalChecks { z_row, x_row });
    }
    let z_rows: Vec<BitVec> = h_z
        .independent_rows()
        .iter()
        .map(|&i| h_z.row(i).clone())
        .collect();
    let x_rows: Vec<BitVec> = h_x
        .independent_rows()
        .iter()
        .map(|&i| h_x.row(i).clone())
        .collect();
    let mut generators: Vec<PauliOperator> = z_rows.iter().map(|r| typed(r, Pauli1::Z)).collect();
    generators.extend(x_rows.iter().map(|r| typed(r, Pauli1::X)));

    let mut lx = logical_candidates(&h_z, &h_x);
    let mut lz = logical_candidates(&h_x, &h_z);
    debug_assert_eq!(lx.len(), lz.len());
    let k = lx.len();
    for i in 0..k {
        let j = (i..k)
            .find(|&j| lx[i].dot(&lz[j]))
            .ok_or_else(|| QecError::Invalid("logical operators cannot be paired".into()))?;
        lz.swap(i, j);
        for j in 0..k {
            if j != i && lx[i].dot(&lz[j]) {
                let pivot = lz[i].clone();
                lz[j].xor_assign(&pivot);
            }
        }
        for l in 0..k {
            if l != i && lx[l].dot(&lz[i]) {
                let pivot = lx[i].clone();
                lx[l].xor_assign(&pivot);
            }
        }
    }
    if n == 0 {
        return Err(QecError::Invalid(
            "CSS code needs at least one column".into(),
        ));
    }
    Ok(StabilizerCode {
        name: name.to_string(),
        n,
        k,
        generators,
        logical_x: lx.iter().map(|v| typed(v, Pauli1::X)).collect(),
        logical_z: lz.iter().map(|v| typed(v, Pauli1::Z)).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::builtin;
    use crate::gf2::{classical_syndrome, hamming_matrix, repetition_checks};
    use proptest::prelude::*;

    #[test]
    fn hamming_pair_gives_steane_span() {
        let h = hamming_matrix();
        let code = css_code("css-hamming", &h, &h).unwrap();
        assert!(code.validate().is_valid(), "{:?}", code.validate());
        assert_eq!((code.n, code.k), (7, 1));
        let steane = builtin("steane7").unwrap();
        assert_eq!(code.symplectic_matrix().rank(), 6);
        for g in &steane.generators {
            assert!(code.in_stabilizer(g));
        }
        for g in &code.generators {
            assert!(steane.in_stabilizer(g));
        }
    }

    #[test]
    fn repetition_checks_give_bitflip() {
        let code = css_code("rep", &repetition_checks(3), &BinaryMatrix::zeros(0, 3)).unwrap();
        let bf = builtin("bitflip3").unwrap();
        assert_eq!(code.generators, bf.generators);
        assert!(code.validate().is_valid());
        assert_eq!(code.k, 1);
    }

    #[test]
    fn non_orthogonal_inputs_fail() {
        let hz = BinaryMatrix::from_str_rows(&["110"]).unwrap();
        let hx = BinaryMatrix::from_str_rows(&["111", "100"]).unwrap();
        assert_eq!(
            css_code("bad", &hz, &hx).unwrap_err(),
            QecError::NonOrthogonalChecks { z_row: 0, x_row: 1 }
        );
    }

    #[test]
    fn dependent_rows_are_dropped_in_order() {
        let hz = BinaryMatrix::from_str_rows(&["1100", "0110", "1010", "0011"]).unwrap();
        let code = css_code("dep", &hz, &BinaryMatrix::zeros(0, 4)).unwrap();
        let labels: Vec<String> = code.generators.iter().map(|g| g.to_string()).collect();
        assert_eq!(labels, ["ZZII", "IZZI", "IIZZ"]);
        assert!(code.validate().is_valid());
    }

    #[test]
    fn phase_sector_syndrome_matches_classical() {
        let h = hamming_matrix();
        let code = css_code("css-hamming", &h, &h).unwrap();
        for q in 0..7 {
            let s = code
                .syndrome(&PauliOperator::single(7, q, Pauli1::Z))
                .unwrap();
            let x_sector = BitVec::from_bools((3..6).map(|i| s.bits().get(i)));
            let mut e = BitVec::zeros(7);
            e.set(q, true);
            assert_eq!(x_sector, classical_syndrome(&h, &e).unwrap());
        }
    }

    fn arb_self_orthogonal() -> impl Strategy<Value = (BinaryMatrix, BinaryMatrix)> {
        // Z checks from random rows; X checks drawn from the kernel of the Z checks.
        (3usize..9, 1usize..4, any::<u64>()).prop_map(|(n, rz, seed)| {
            let mut state = seed | 1;
            let mut next = move || {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                state
            };
            let rows: Vec<BitVec> = (0..rz)
                .map(|_| BitVec::from_bools((0..n).map(|_| next() & 1 == 1)))
                .collect();
            let hz = BinaryMatrix::from_rows(n, rows).unwrap();
            let ker = hz.kernel_basis();
            let picks: Vec<BitVec> = ker
                .rows()
                .iter()
                .filter(|_| next() & 1 == 1)
                .cloned()
                .collect();
            let hx = BinaryMatrix::from_rows(n, picks).unwrap();
            (hz, hx)
        })
    }

    proptest! {
        #[test]
        fn css_output_is_valid((hz, hx) in arb_self_orthogonal()) {
            let code = css_code("rand", &hz, &hx).unwrap();
            let report = code.validate();
            prop_assert!(report.is_valid(), "{:?}", report);
            prop_assert_eq!(code.k, code.n - hz.rank() - hx.rank());
        }
    }
}
