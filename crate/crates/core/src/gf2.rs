// Copyright 2026 The qec-workbench Authors
// SPDX-License-Identifier: Apache-2.0

//! Dense GF(2) matrices and the classical side of the CSS construction.

use std::fmt;

use crate::bits::BitVec;
use crate::error::{QecError, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct BinaryMatrix {
    cols: usize,
    rows: Vec<BitVec>,
}

impl BinaryMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BinaryMatrix {
            cols,
            rows: vec![BitVec::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = BinaryMatrix::zeros(n, n);
        for i in 0..n {
            m.rows[i].set(i, true);
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<BitVec>) -> Result<Self> {
        for r in &rows {
            if r.len() != cols {
                return Err(QecError::Dimension {
                    expected: cols,
                    actual: r.len(),
                });
            }
        }
        Ok(BinaryMatrix { cols, rows })
    }

    /// Parses one row per line of `0`/`1` characters. Blank lines and `#`
    /// comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        let mut cols = None;
        for (line_no, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let row = BitVec::from_str01(line).ok_or_else(|| QecError::Parse {
                position: line_no + 1,
                message: format!("row `{line}` must contain only 0 and 1"),
            })?;
            match cols {
                None => cols = Some(row.len()),
                Some(c) if c != row.len() => {
                    return Err(QecError::Parse {
                        position: line_no + 1,
                        message: format!("row has {} columns, expected {c}", row.len()),
                    })
                }
                _ => {}
            }
            rows.push(row);
        }
        Ok(BinaryMatrix {
            cols: cols.unwrap_or(0),
            rows,
        })
    }

    pub fn from_str_rows(rows: &[&str]) -> Result<Self> {
        Self::parse(&rows.join("\n"))
    }

    #[inline]
    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &BitVec {
        &self.rows[i]
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        self.rows[r].set(c, v)
    }

    pub fn column(&self, c: usize) -> BitVec {
        BitVec::from_bools(self.rows.iter().map(|r| r.get(c)))
    }

    /// Row-reduced echelon form and its pivot columns.
    pub fn rref(&self) -> (BinaryMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == m.rows.len() {
                break;
            }
            let Some(p) = (r..m.rows.len()).find(|&i| m.rows[i].get(c)) else {
                continue;
            };
            m.rows.swap(r, p);
            let pivot = m.rows[r].clone();
            for i in 0..m.rows.len() {
                if i != r && m.rows[i].get(c) {
                    m.rows[i].xor_assign(&pivot);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Rows spanning `{v : M v = 0}`; there are `cols - rank` of them.
    pub fn kernel_basis(&self) -> BinaryMatrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = BitVec::zeros(self.cols);
            v.set(f, true);
            for (i, &pc) in pivots.iter().enumerate() {
                if r.rows[i].get(f) {
                    v.set(pc, true);
                }
            }
            basis.push(v);
        }
        BinaryMatrix {
            cols: self.cols,
            rows: basis,
        }
    }

    /// `M · word` over GF(2).
    pub fn mul_vec(&self, word: &BitVec) -> Result<BitVec> {
        if word.len() != self.cols {
            return Err(QecError::Dimension {
                expected: self.cols,
                actual: word.len(),
            });
        }
        Ok(BitVec::from_bools(self.rows.iter().map(|r| r.dot(word))))
    }

    /// Indices of a maximal independent subset of rows, earliest rows kept.
    pub fn independent_rows(&self) -> Vec<usize> {
        let mut basis: Vec<(usize, BitVec)> = Vec::new();
        let mut keep = Vec::new();
        for (i, row) in self.rows.iter().enumerate() {
            let mut v = row.clone();
            for (lead, b) in &basis {
                if v.get(*lead) {
                    v.xor_assign(b);
                }
            }
            if let Some(lead) = v.first_one() {
                for (_, b) in basis.iter_mut() {
                    if b.get(lead) {
                        b.xor_assign(&v);
                    }
                }
                basis.push((lead, v));
                keep.push(i);
            }
        }
        keep
    }

    /// Every element of the row space, in Gray-code order starting at zero.
    pub fn row_space(&self) -> Vec<BitVec> {
        let indep = self.independent_rows();
        assert!(indep.len() <= 24, "row space too large to enumerate");
        let mut out = Vec::with_capacity(1 << indep.len());
        let mut cur = BitVec::zeros(self.cols);
        out.push(cur.clone());
        for g in 1u64..(1u64 << indep.len()) {
            let bit = g.trailing_zeros() as usize;
            cur.xor_assign(&self.rows[indep[bit]]);
            out.push(cur.clone());
        }
        out
    }
}

impl fmt::Display for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryMatrix {}x{}\n{self}", self.rows.len(), self.cols)
    }
}

/// Solves `x · rows = target` over GF(2); returns the combination indicator
/// over the rows of `rows`, or `None` if `target` is outside the row space.
pub fn solve_in_row_space(rows: &[BitVec], target: &BitVec) -> Option<BitVec> {
    let m = rows.len();
    // (leading column, reduced vector, combination of original rows)
    let mut basis: Vec<(usize, BitVec, BitVec)> = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let mut v = row.clone();
        let mut comb = BitVec::zeros(m);
        comb.set(i, true);
        for (lead, b, bc) in &basis {
            if v.get(*lead) {
                v.xor_assign(b);
                comb.xor_assign(bc);
            }
        }
        if let Some(lead) = v.first_one() {
            basis.push((lead, v, comb));
        }
    }
    let mut t = target.clone();
    let mut comb = BitVec::zeros(m);
    for (lead, b, bc) in &basis {
        if t.get(*lead) {
            t.xor_assign(b);
            comb.xor_assign(bc);
        }
    }
    t.is_zero().then_some(comb)
}

pub fn rank(m: &BinaryMatrix) -> usize {
    m.rank()
}

pub fn kernel_basis(m: &BinaryMatrix) -> BinaryMatrix {
    m.kernel_basis()
}

pub fn classical_syndrome(m: &BinaryMatrix, word: &BitVec) -> Result<BitVec> {
    m.mul_vec(word)
}

/// True iff every row of `c2_gens` is orthogonal to every row of
/// `c1_checks`, i.e. each generator of `C₂` passes the parity checks of `C₁`.
///
/// This is the commutation prerequisite of the CSS construction when
/// `c1_checks` are the Z checks and `c2_gens` the X checks.
pub fn dual_contains(c1_checks: &BinaryMatrix, c2_gens: &BinaryMatrix) -> Result<bool> {
    if c1_checks.num_cols() != c2_gens.num_cols() {
        return Err(QecError::Dimension {
            expected: c1_checks.num_cols(),
            actual: c2_gens.num_cols(),
        });
    }
    Ok(first_non_orthogonal(c1_checks, c2_gens).is_none())
}

/// First `(c1_row, c2_row)` pair with odd overlap.
pub(crate) fn first_non_orthogonal(a: &BinaryMatrix, b: &BinaryMatrix) -> Option<(usize, usize)> {
    for (j, g) in b.rows().iter().enumerate() {
        for (i, c) in a.rows().iter().enumerate() {
            if g.dot(c) {
                return Some((i, j));
            }
        }
    }
    None
}

/// Parity-check matrix of the [7,4] Hamming code; column `i` (1-based) is the
/// binary expansion of `i`, most significant bit in the top row.
pub fn hamming_matrix() -> BinaryMatrix {
    BinaryMatrix::from_str_rows(&["0001111", "0110011", "1010101"]).expect("static matrix")
}

/// Checks of the length-`n` repetition code: rows `e_i + e_{i+1}`.
pub fn repetition_checks(n: usize) -> BinaryMatrix {
    let mut m = BinaryMatrix::zeros(n.saturating_sub(1), n);
    for i in 0..n.saturating_sub(1) {
        m.set(i, i, true);
        m.set(i, i + 1, true);
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&hamming_matrix()), 3);
        assert_eq!(rank(&BinaryMatrix::zeros(3, 5)), 0);
        assert_eq!(rank(&BinaryMatrix::identity(4)), 4);
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_basis(&hamming_matrix());
        assert_eq!(k.num_rows(), 4);
        assert_eq!(k.row_space().len(), 16);
        assert_eq!(kernel_basis(&BinaryMatrix::identity(4)).num_rows(), 0);
        let parity = BinaryMatrix::from_str_rows(&["11"]).unwrap();
        let k = kernel_basis(&parity);
        assert_eq!(k.num_rows(), 1);
        assert_eq!(k.row(0).to_string(), "11");
    }

    #[test]
    fn hamming_syndromes() {
        let h = hamming_matrix();
        for c in h.kernel_basis().row_space() {
            assert!(classical_syndrome(&h, &c).unwrap().is_zero());
        }
        // e_4 (1-based) hits column 4 = (1,0,0) read top to bottom
        let mut e4 = BitVec::zeros(7);
        e4.set(3, true);
        assert_eq!(classical_syndrome(&h, &e4).unwrap().to_string(), "100");
        assert!(classical_syndrome(&h, &BitVec::zeros(7)).unwrap().is_zero());
        assert!(classical_syndrome(&h, &BitVec::zeros(6)).is_err());
    }

    #[test]
    fn single_bit_errors_have_distinct_syndromes() {
        let h = hamming_matrix();
        let mut seen = std::collections::HashSet::new();
        for i in 0..7 {
            let mut e = BitVec::zeros(7);
            e.set(i, true);
            let s = classical_syndrome(&h, &e).unwrap();
            assert!(!s.is_zero());
            assert_eq!(s, h.column(i));
            assert!(seen.insert(s));
        }
    }

    #[test]
    fn duality_examples() {
        let h = hamming_matrix();
        assert!(dual_contains(&h, &h).unwrap());
        // repetition code {000,111}: its generator passes its own checks
        let rep_gen = BinaryMatrix::from_str_rows(&["111"]).unwrap();
        assert!(dual_contains(&repetition_checks(3), &rep_gen).unwrap());
        // parity code generators pass the single check 111
        let parity_gens = BinaryMatrix::from_str_rows(&["110", "011"]).unwrap();
        assert!(dual_contains(&rep_gen, &parity_gens).unwrap());
        let id = BinaryMatrix::identity(3);
        assert!(!dual_contains(&id, &id).unwrap());
        assert!(dual_contains(&h, &BinaryMatrix::identity(3)).is_err());
    }

    #[test]
    fn parse_rejects_ragged_rows() {
        assert!(BinaryMatrix::parse("101\n11").is_err());
        assert!(BinaryMatrix::parse("1a1").is_err());
        let m = BinaryMatrix::parse("# comment\n101\n\n011\n").unwrap();
        assert_eq!((m.num_rows(), m.num_cols()), (2, 3));
        assert_eq!(m.to_string(), "101\n011\n");
    }

    #[test]
    fn solve_finds_combination() {
        let h = hamming_matrix();
        let mut t = h.row(0).clone();
        t.xor_assign(h.row(2));
        let comb = solve_in_row_space(h.rows(), &t).unwrap();
        assert_eq!(comb.to_string(), "101");
        assert!(solve_in_row_space(h.rows(), &BitVec::from_str01("1000000").unwrap()).is_none());
    }

    fn arb_matrix() -> impl Strategy<Value = BinaryMatrix> {
        (1usize..8, 1usize..12).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(any::<bool>(), c), r).prop_map(
                move |rows| {
                    BinaryMatrix::from_rows(c, rows.into_iter().map(BitVec::from_bools).collect())
                        .unwrap()
                },
            )
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in arb_matrix()) {
            let k = m.kernel_basis();
            prop_assert_eq!(m.rank() + k.num_rows(), m.num_cols());
            for v in k.rows() {
                prop_assert!(m.mul_vec(v).unwrap().is_zero());
            }
            prop_assert_eq!(k.rank(), k.num_rows());
        }
    }
}
