// Copyright 2026 The qec-workbench Authors
// SPDX-License-Identifier: Apache-2.0

//! n-qubit Pauli operators in the symplectic binary representation.
//!
//! An operator is stored as `i^phase_exp · X^x Z^z` where `X^x Z^z` is the
//! tensor product of `X^{x_q} Z^{z_q}` over qubits. Qubit `q` therefore carries
//! a Hermitian `Y = i·XZ` when both bits are set, and the text label `Y`
//! contributes one unit of `i` to the stored phase.
//!
//! ```
//! use qec_core::PauliOperator;
//!
//! let x: PauliOperator = "X".parse().unwrap();
//! let z: PauliOperator = "Z".parse().unwrap();
//! assert!(!x.commutes(&z).unwrap());
//! assert_eq!(x.multiply(&z).unwrap().to_string(), "-iY");
//! ```

use std::fmt;
use std::str::FromStr;

use crate::bits::BitVec;
use crate::error::{QecError, Result};

/// Largest supported qubit count.
pub const MAX_QUBITS: usize = 1024;

/// Single-qubit Pauli label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli1 {
    I,
    X,
    Y,
    Z,
}

impl Pauli1 {
    pub const NON_IDENTITY: [Pauli1; 3] = [Pauli1::X, Pauli1::Y, Pauli1::Z];
    pub const ALL: [Pauli1; 4] = [Pauli1::I, Pauli1::X, Pauli1::Y, Pauli1::Z];

    #[inline]
    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli1::I => (false, false),
            Pauli1::X => (true, false),
            Pauli1::Y => (true, true),
            Pauli1::Z => (false, true),
        }
    }

    #[inline]
    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli1::I,
            (true, false) => Pauli1::X,
            (true, true) => Pauli1::Y,
            (false, true) => Pauli1::Z,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli1::I => 'I',
            Pauli1::X => 'X',
            Pauli1::Y => 'Y',
            Pauli1::Z => 'Z',
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    x: BitVec,
    z: BitVec,
    phase: u8,
}

impl PauliOperator {
    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_QUBITS, "at most {MAX_QUBITS} qubits are supported");
        PauliOperator {
            x: BitVec::zeros(n),
            z: BitVec::zeros(n),
            phase: 0,
        }
    }

    /// Hermitian single-qubit Pauli `p` acting on qubit `q` of `n`.
    pub fn single(n: usize, q: usize, p: Pauli1) -> Self {
        let mut op = PauliOperator::identity(n);
        op.set(q, p);
        op
    }

    /// Builds `i^phase_exp · X^x Z^z` directly from the bit vectors.
    pub fn from_bits(x: BitVec, z: BitVec, phase_exp: u8) -> Result<Self> {
        if x.len() != z.len() {
            return Err(QecError::Dimension {
                expected: x.len(),
                actual: z.len(),
            });
        }
        if x.len() > MAX_QUBITS {
            return Err(QecError::TooLarge(format!("{} qubits", x.len())));
        }
        Ok(PauliOperator {
            x,
            z,
            phase: phase_exp % 4,
        })
    }

    /// Hermitian operator with the given X and Z supports (Y where both).
    pub fn hermitian_from_bits(x: BitVec, z: BitVec) -> Result<Self> {
        let y = x.and(&z).count_ones();
        Self::from_bits(x, z, (y % 4) as u8)
    }

    /// Operator with `p` on each listed qubit.
    pub fn from_support(n: usize, qubits: &[usize], p: Pauli1) -> Self {
        let mut op = PauliOperator::identity(n);
        for &q in qubits {
            op.set(q, p);
        }
        op
    }

    #[inline]
    pub fn num_qubits(&self) -> usize {
        self.x.len()
    }

    #[inline]
    pub fn x_bits(&self) -> &BitVec {
        &self.x
    }

    #[inline]
    pub fn z_bits(&self) -> &BitVec {
        &self.z
    }

    /// Exponent `e` in `i^e · X^x Z^z`.
    #[inline]
    pub fn phase_exp(&self) -> u8 {
        self.phase
    }

    /// Phase relative to the Hermitian-letter form: the `s` in `i^s · P₁⊗…⊗Pₙ`.
    pub fn sign_exp(&self) -> u8 {
        let y = (self.x.and(&self.z).count_ones() % 4) as u8;
        (self.phase + 4 - y) % 4
    }

    pub fn get(&self, q: usize) -> Pauli1 {
        Pauli1::from_bits(self.x.get(q), self.z.get(q))
    }

    /// Replaces the factor on qubit `q`, keeping the sign in letter form.
    pub fn set(&mut self, q: usize, p: Pauli1) {
        let sign = self.sign_exp();
        let (x, z) = p.bits();
        self.x.set(q, x);
        self.z.set(q, z);
        let y = (self.x.and(&self.z).count_ones() % 4) as u8;
        self.phase = (sign + y) % 4;
    }

    pub fn weight(&self) -> usize {
        self.x.or(&self.z).count_ones()
    }

    pub fn support(&self) -> Vec<usize> {
        self.x.or(&self.z).ones().collect()
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    pub fn is_hermitian(&self) -> bool {
        self.sign_exp().is_multiple_of(2)
    }

    fn check_dim(&self, other: &PauliOperator) -> Result<()> {
        if self.num_qubits() != other.num_qubits() {
            return Err(QecError::Dimension {
                expected: self.num_qubits(),
                actual: other.num_qubits(),
            });
        }
        Ok(())
    }

    /// Operator product `self · other` with exact phase.
    pub fn multiply(&self, other: &PauliOperator) -> Result<PauliOperator> {
        self.check_dim(other)?;
        // Z^{z1} X^{x2} = (-1)^{z1·x2} X^{x2} Z^{z1}
        let swaps = self.z.and(&other.x).count_ones();
        let phase = (self.phase as usize + other.phase as usize + 2 * swaps) % 4;
        let mut x = self.x.clone();
        x.xor_assign(&other.x);
        let mut z = self.z.clone();
        z.xor_assign(&other.z);
        Ok(PauliOperator {
            x,
            z,
            phase: phase as u8,
        })
    }

    pub fn commutes(&self, other: &PauliOperator) -> Result<bool> {
        self.check_dim(other)?;
        Ok(self.commutes_unchecked(other))
    }

    #[inline]
    pub(crate) fn commutes_unchecked(&self, other: &PauliOperator) -> bool {
        let mut acc = 0u64;
        let (ax, az, bx, bz) = (
            self.x.words(),
            self.z.words(),
            other.x.words(),
            other.z.words(),
        );
        for i in 0..ax.len() {
            acc ^= (ax[i] & bz[i]) ^ (az[i] & bx[i]);
        }
        acc.count_ones().is_multiple_of(2)
    }

    /// `self ⊗ other` on `n_a + n_b` qubits.
    pub fn tensor(&self, other: &PauliOperator) -> PauliOperator {
        PauliOperator {
            x: self.x.concat(&other.x),
            z: self.z.concat(&other.z),
            phase: (self.phase + other.phase) % 4,
        }
    }

    pub fn adjoint(&self) -> PauliOperator {
        let xz = self.x.and(&self.z).count_ones();
        let phase = (4 - self.phase as usize + 2 * xz) % 4;
        PauliOperator {
            x: self.x.clone(),
            z: self.z.clone(),
            phase: phase as u8,
        }
    }

    /// Same support and letters, sign dropped.
    pub fn without_sign(&self) -> PauliOperator {
        let mut p = self.clone();
        p.phase = (self.x.and(&self.z).count_ones() % 4) as u8;
        p
    }

    pub fn eq_up_to_phase(&self, other: &PauliOperator) -> bool {
        self.x == other.x && self.z == other.z
    }

    /// Restriction to `qubits` (in the given order), sign dropped.
    pub fn restrict(&self, qubits: &[usize]) -> PauliOperator {
        let mut out = PauliOperator::identity(qubits.len());
        for (i, &q) in qubits.iter().enumerate() {
            out.set(i, self.get(q));
        }
        out
    }

    /// Canonical letters without sign, used as the lexicographic tie-break key.
    pub fn letters(&self) -> String {
        (0..self.num_qubits())
            .map(|q| self.get(q).as_char())
            .collect()
    }

    /// Symplectic vector `(x | z)` of length `2n`.
    pub fn symplectic(&self) -> BitVec {
        self.x.concat(&self.z)
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.sign_exp() {
            0 => "",
            1 => "+i",
            2 => "-",
            _ => "-i",
        };
        write!(f, "{prefix}{}", self.letters())
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pauli({self})")
    }
}

impl FromStr for PauliOperator {
    type Err = QecError;

    fn from_str(s: &str) -> Result<Self> {
        parse_pauli(s)
    }
}

/// Parses labels such as `XIZ`, `-Y`, `+iXX`. Qubit 0 is the leftmost letter.
pub fn parse_pauli(label: &str) -> Result<PauliOperator> {
    let chars: Vec<char> = label.trim().chars().collect();
    let mut pos = 0;
    let mut sign = 0u8;
    if let Some(&c) = chars.first() {
        match c {
            '+' => pos = 1,
            '-' | '\u{2212}' => {
                sign = 2;
                pos = 1;
            }
            _ => {}
        }
        if pos == 1 && chars.get(1) == Some(&'i') {
            sign += 1;
            pos = 2;
        }
    }
    let letters = &chars[pos..];
    if letters.is_empty() {
        return Err(QecError::Parse {
            position: pos,
            message: "expected at least one Pauli letter".into(),
        });
    }
    if letters.len() > MAX_QUBITS {
        return Err(QecError::TooLarge(format!("{} qubits", letters.len())));
    }
    let mut op = PauliOperator::identity(letters.len());
    for (q, &c) in letters.iter().enumerate() {
        let p = match c {
            'I' => Pauli1::I,
            'X' => Pauli1::X,
            'Y' => Pauli1::Y,
            'Z' => Pauli1::Z,
            other => {
                return Err(QecError::Parse {
                    position: pos + q,
                    message: format!("unexpected character `{other}`"),
                })
            }
        };
        let (x, z) = p.bits();
        op.x.set(q, x);
        op.z.set(q, z);
    }
    let y = (op.x.and(&op.z).count_ones() % 4) as u8;
    op.phase = (sign + y) % 4;
    Ok(op)
}

impl std::ops::Mul for &PauliOperator {
    type Output = PauliOperator;

    /// Panics on mismatched qubit counts; use [`PauliOperator::multiply`] otherwise.
    fn mul(self, rhs: &PauliOperator) -> PauliOperator {
        self.multiply(rhs).expect("qubit count mismatch")
    }
}

/// Iterates over every Hermitian Pauli of exactly weight `w` on `n` qubits.
///
/// Supports are visited in lexicographic order of qubit index tuples and the
/// letters on each support cycle X, Y, Z with the last qubit varying fastest.
pub fn paulis_of_weight(n: usize, w: usize) -> impl Iterator<Item = PauliOperator> {
    Combinations::new(n, w).flat_map(move |support| {
        let total = 3usize.pow(support.len() as u32);
        (0..total).map(move |mut code| {
            let mut op = PauliOperator::identity(n);
            for &q in support.iter().rev() {
                op.set(q, Pauli1::NON_IDENTITY[code % 3]);
                code /= 3;
            }
            op
        })
    })
}

/// Every Hermitian Pauli of weight at most `w`, identity first.
pub fn paulis_up_to_weight(n: usize, w: usize) -> impl Iterator<Item = PauliOperator> {
    (0..=w.min(n)).flat_map(move |k| paulis_of_weight(n, k))
}

/// k-subsets of `0..n` in lexicographic order.
pub(crate) struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    pub(crate) fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            idx: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}
