// Copyright 2026 The qec-workbench Authors
// SPDX-License-Identifier: Apache-2.0

//! Dense state vectors, density matrices and gate constants.
//!
//! Basis index bit `n-1-q` holds qubit `q`, so qubit 0 is the most
//! significant position and `|100⟩` has qubit 0 set.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{QecError, Result};
use crate::pauli::PauliOperator;

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;

/// Largest qubit count for dense state vectors.
pub const MAX_DENSE_QUBITS: usize = 10;
/// Largest qubit count for density matrices.
pub const MAX_DENSITY_QUBITS: usize = 6;

pub const NORM_TOL: f64 = 1e-10;

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[inline]
pub(crate) fn bit_of(n: usize, q: usize) -> usize {
    1 << (n - 1 - q)
}

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: DVector<C64>,
}

impl StateVector {
    /// Normalized state from explicit amplitudes.
    pub fn new(n: usize, amps: Vec<C64>) -> Result<Self> {
        let s = Self::unnormalized(n, amps)?;
        let norm = s.norm();
        if (norm * norm - 1.0).abs() > NORM_TOL {
            return Err(QecError::Invalid(format!(
                "state has squared norm {}, expected 1",
                norm * norm
            )));
        }
        Ok(s)
    }

    pub(crate) fn unnormalized(n: usize, amps: Vec<C64>) -> Result<Self> {
        if n > MAX_DENSE_QUBITS {
            return Err(QecError::TooLarge(format!(
                "{n} qubits exceeds the dense limit of {MAX_DENSE_QUBITS}"
            )));
        }
        if amps.len() != 1 << n {
            return Err(QecError::Dimension {
                expected: 1 << n,
                actual: amps.len(),
            });
        }
        Ok(StateVector {
            n,
            amps: DVector::from_vec(amps),
        })
    }

    pub fn zero(n: usize) -> Self {
        Self::basis(n, 0)
    }

    pub fn basis(n: usize, index: usize) -> Self {
        assert!(n <= MAX_DENSE_QUBITS && index < 1 << n);
        let mut amps = vec![C64::default(); 1 << n];
        amps[index] = c(1.0, 0.0);
        StateVector {
            n,
            amps: DVector::from_vec(amps),
        }
    }

    /// Normalized superposition of labelled basis kets, e.g. `[("01", 1.0), ("10", -1.0)]`.
    pub fn from_kets(terms: &[(&str, C64)]) -> Result<Self> {
        let n = terms
            .first()
            .map(|t| t.0.len())
            .ok_or_else(|| QecError::Invalid("no kets".into()))?;
        let mut amps = vec![C64::default(); 1 << n];
        for (label, amp) in terms {
            if label.len() != n {
                return Err(QecError::Dimension {
                    expected: n,
                    actual: label.len(),
                });
            }
            let idx = usize::from_str_radix(label, 2).map_err(|_| QecError::Parse {
                position: 0,
                message: format!("bad ket label `{label}`"),
            })?;
            amps[idx] += amp;
        }
        let mut s = Self::unnormalized(n, amps)?;
        s.normalize()?;
        Ok(s)
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> C64 {
        self.amps[index]
    }

    pub fn norm(&self) -> f64 {
        self.amps.norm()
    }

    pub fn normalize(&mut self) -> Result<()> {
        let norm = self.norm();
        if norm < 1e-300 {
            return Err(QecError::Invalid("cannot normalize the zero vector".into()));
        }
        self.amps /= c(norm, 0.0);
        Ok(())
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> C64 {
        self.amps.dotc(&other.amps)
    }

    pub fn distance(&self, other: &StateVector) -> f64 {
        (&self.amps - &other.amps).norm()
    }

    pub fn scaled(&self, s: C64) -> StateVector {
        StateVector {
            n: self.n,
            amps: &self.amps * s,
        }
    }

    /// Linear combination `a·self + b·other` without renormalizing.
    pub fn combine(&self, a: C64, other: &StateVector, b: C64) -> StateVector {
        StateVector {
            n: self.n,
            amps: &self.amps * a + &other.amps * b,
        }
    }

    pub fn tensor(&self, other: &StateVector) -> Result<StateVector> {
        let n = self.n + other.n;
        let mut amps = Vec::with_capacity(1 << n);
        for a in self.amps.iter() {
            for b in other.amps.iter() {
                amps.push(a * b);
            }
        }
        Self::unnormalized(n, amps)
    }

    pub fn apply_matrix(&self, m: &CMatrix) -> Result<StateVector> {
        if m.nrows() != self.dim() || m.ncols() != self.dim() {
            return Err(QecError::Dimension {
                expected: self.dim(),
                actual: m.nrows(),
            });
        }
        Ok(StateVector {
            n: self.n,
            amps: m * &self.amps,
        })
    }

    /// Applies a 2×2 matrix to qubit `q`.
    pub fn apply_1q(&self, q: usize, u: &CMatrix) -> StateVector {
        assert!(q < self.n && u.nrows() == 2 && u.ncols() == 2);
        let bit = bit_of(self.n, q);
        let mut out = self.amps.clone();
        for i in 0..self.dim() {
            if i & bit == 0 {
                let (a0, a1) = (self.amps[i], self.amps[i | bit]);
                out[i] = u[(0, 0)] * a0 + u[(0, 1)] * a1;
                out[i | bit] = u[(1, 0)] * a0 + u[(1, 1)] * a1;
            }
        }
        StateVector {
            n: self.n,
            amps: out,
        }
    }

    pub fn apply_cnot(&self, control: usize, target: usize) -> StateVector {
        let (cb, tb) = (bit_of(self.n, control), bit_of(self.n, target));
        let mut out = self.amps.clone();
        for i in 0..self.dim() {
            if i & cb != 0 {
                out[i ^ tb] = self.amps[i];
            }
        }
        StateVector {
            n: self.n,
            amps: out,
        }
    }

    /// Applies `i^e · X^x Z^z` without building its matrix.
    pub fn apply_pauli(&self, p: &PauliOperator) -> Result<StateVector> {
        if p.num_qubits() != self.n {
            return Err(QecError::Dimension {
                expected: self.n,
                actual: p.num_qubits(),
            });
        }
        let (xm, zm) = pauli_masks(p);
        let phase = i_pow(p.phase_exp());
        let mut out = DVector::from_element(self.dim(), C64::default());
        for b in 0..self.dim() {
            let sign = if (zm & b).count_ones() % 2 == 1 {
                -1.0
            } else {
                1.0
            };
            out[b ^ xm] = self.amps[b] * phase * sign;
        }
        Ok(StateVector {
            n: self.n,
            amps: out,
        })
    }
}

pub(crate) fn pauli_masks(p: &PauliOperator) -> (usize, usize) {
    let n = p.num_qubits();
    let mut xm = 0;
    let mut zm = 0;
    for q in p.x_bits().ones() {
        xm |= bit_of(n, q);
    }
    for q in p.z_bits().ones() {
        zm |= bit_of(n, q);
    }
    (xm, zm)
}

#[inline]
pub fn i_pow(e: u8) -> C64 {
    match e % 4 {
        0 => c(1.0, 0.0),
        1 => c(0.0, 1.0),
        2 => c(-1.0, 0.0),
        _ => c(0.0, -1.0),
    }
}

/// Dense matrix of a Pauli operator on at most [`MAX_DENSE_QUBITS`] qubits.
pub fn pauli_to_dense(p: &PauliOperator) -> Result<CMatrix> {
    let n = p.num_qubits();
    if n > MAX_DENSE_QUBITS {
        return Err(QecError::TooLarge(format!("{n} qubits")));
    }
    let x = gate("X");
    let z = gate("Z");
    let mut m = CMatrix::identity(1, 1) * i_pow(p.phase_exp());
    for q in 0..n {
        let mut f = CMatrix::identity(2, 2);
        if p.x_bits().get(q) {
            f = &f * &x;
        }
        if p.z_bits().get(q) {
            f = &f * &z;
        }
        m = m.kronecker(&f);
    }
    Ok(m)
}

pub fn apply_pauli(state: &StateVector, p: &PauliOperator) -> Result<StateVector> {
    state.apply_pauli(p)
}

fn gate(name: &str) -> CMatrix {
    gate_constant(name).expect("known gate")
}

/// Gate matrices: `H`, `PI8` = diag(e^{iπ/8}, e^{-iπ/8}), `PI4` = diag(1, i),
/// `X`, `Y`, `Z`, `I` and `CNOT` (control = first qubit).
pub fn gate_constant(name: &str) -> Result<CMatrix> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let z0 = C64::default();
    let one = c(1.0, 0.0);
    let m = match name {
        "I" => CMatrix::identity(2, 2),
        "H" => CMatrix::from_row_slice(2, 2, &[c(s, 0.0), c(s, 0.0), c(s, 0.0), c(-s, 0.0)]),
        "X" => CMatrix::from_row_slice(2, 2, &[z0, one, one, z0]),
        "Y" => CMatrix::from_row_slice(2, 2, &[z0, c(0.0, -1.0), c(0.0, 1.0), z0]),
        "Z" => CMatrix::from_row_slice(2, 2, &[one, z0, z0, c(-1.0, 0.0)]),
        "PI8" => {
            let a = std::f64::consts::PI / 8.0;
            CMatrix::from_row_slice(
                2,
                2,
                &[C64::from_polar(1.0, a), z0, z0, C64::from_polar(1.0, -a)],
            )
        }
        "PI4" => CMatrix::from_row_slice(2, 2, &[one, z0, z0, c(0.0, 1.0)]),
        "CNOT" => {
            let mut m = CMatrix::zeros(4, 4);
            m[(0, 0)] = one;
            m[(1, 1)] = one;
            m[(2, 3)] = one;
            m[(3, 2)] = one;
            m
        }
        other => {
            return Err(QecError::Unknown {
                what: "gate",
                name: other.to_string(),
            })
        }
    };
    Ok(m)
}

/// Density matrix on at most [`MAX_DENSITY_QUBITS`] qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    n: usize,
    m: CMatrix,
}

pub const TRACE_TOL: f64 = 1e-9;
pub const EIGEN_TOL: f64 = 1e-9;

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(m: CMatrix) -> Result<Self> {
        let rho = Self::unchecked(m)?;
        rho.validate()?;
        Ok(rho)
    }

    pub(crate) fn unchecked(m: CMatrix) -> Result<Self> {
        let dim = m.nrows();
        if m.ncols() != dim || !dim.is_power_of_two() {
            return Err(QecError::Dimension {
                expected: dim.next_power_of_two(),
                actual: m.ncols(),
            });
        }
        let n = dim.trailing_zeros() as usize;
        if n > MAX_DENSITY_QUBITS {
            return Err(QecError::TooLarge(format!("{n}-qubit density matrix")));
        }
        Ok(DensityMatrix { n, m })
    }

    pub fn from_state(s: &StateVector) -> Result<Self> {
        let v = s.amplitudes();
        Self::new(v * v.adjoint())
    }

    pub fn validate(&self) -> Result<()> {
        let herm = self.hermiticity_error();
        if herm > TRACE_TOL {
            return Err(QecError::Invalid(format!(
                "not Hermitian (deviation {herm:e})"
            )));
        }
        let tr = self.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(QecError::Invalid(format!("trace {tr} differs from 1")));
        }
        let lo = self.min_eigenvalue();
        if lo < -EIGEN_TOL {
            return Err(QecError::Invalid(format!("negative eigenvalue {lo:e}")));
        }
        Ok(())
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.m
    }

    pub fn into_matrix(self) -> CMatrix {
        self.m
    }

    pub fn trace(&self) -> C64 {
        self.m.trace()
    }

    pub fn hermiticity_error(&self) -> f64 {
        max_abs(&(&self.m - self.m.adjoint()))
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        let h = (&self.m + self.m.adjoint()) * c(0.5, 0.0);
        h.symmetric_eigenvalues().iter().copied().collect()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues().into_iter().fold(f64::INFINITY, f64::min)
    }
}

/// Largest absolute entry.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}
