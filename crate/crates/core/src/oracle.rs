// Copyright 2026 The qec-workbench Authors
// SPDX-License-Identifier: Apache-2.0

//! Brute-force verifier built on dense linear algebra.
//!
//! Nothing here touches the symplectic machinery beyond the Pauli-to-matrix
//! bridge, so agreement between the two is a genuine cross-check. Codewords
//! are written out from their explicit superpositions instead of being
//! derived from stabilizer generators.

use serde::Serialize;

use crate::dense::{bit_of, c, gate_constant, CMatrix, StateVector, C64, MAX_DENSE_QUBITS};
use crate::error::{QecError, Result};
use crate::pauli::PauliOperator;

pub const RESIDUAL_TOL: f64 = 1e-10;

/// Even-weight codewords of the Hamming code (logical |0⟩ of the 7-qubit code).
pub const STEANE_EVEN: [&str; 8] = [
    "0000000", "0001111", "0110011", "0111100", "1010101", "1011010", "1100110", "1101001",
];
/// Odd-weight codewords (logical |1⟩).
pub const STEANE_ODD: [&str; 8] = [
    "1111111", "1110000", "1001100", "1000011", "0101010", "0100101", "0011001", "0010110",
];

/// The pair `(|0⟩_code, |1⟩_code)` for a built-in code with explicit codewords.
pub fn codeword_basis(code_name: &str) -> Result<(StateVector, StateVector)> {
    let one = c(1.0, 0.0);
    match code_name {
        "bitflip3" => Ok((
            StateVector::from_kets(&[("000", one)])?,
            StateVector::from_kets(&[("111", one)])?,
        )),
        "steane7" => {
            let even: Vec<_> = STEANE_EVEN.iter().map(|s| (*s, one)).collect();
            let odd: Vec<_> = STEANE_ODD.iter().map(|s| (*s, one)).collect();
            Ok((
                StateVector::from_kets(&even)?,
                StateVector::from_kets(&odd)?,
            ))
        }
        "shor9" => {
            let plus = StateVector::from_kets(&[("000", one), ("111", one)])?;
            let minus = StateVector::from_kets(&[("000", one), ("111", -one)])?;
            let cube = |b: &StateVector| b.tensor(b).and_then(|t| t.tensor(b));
            Ok((cube(&plus)?, cube(&minus)?))
        }
        other => Err(QecError::Unknown {
            what: "codeword set",
            name: other.to_string(),
        }),
    }
}

/// `α|0⟩_code + β|1⟩_code`.
pub fn encode_codeword(code_name: &str, alpha: C64, beta: C64) -> Result<StateVector> {
    let norm = alpha.norm_sqr() + beta.norm_sqr();
    if (norm - 1.0).abs() > RESIDUAL_TOL {
        return Err(QecError::Invalid(format!("|α|²+|β|² = {norm}, expected 1")));
    }
    let (zero, one) = codeword_basis(code_name)?;
    Ok(zero.combine(alpha, &one, beta))
}

#[derive(Clone, Debug)]
pub struct QeccConditionResult {
    /// Fitted `c_{αβ}`, the mean of `⟨Ψ_i|E_α†E_β|Ψ_i⟩` over codewords.
    pub c: CMatrix,
    /// Largest `|⟨Ψ_i|E_α†E_β|Ψ_j⟩ − c_{αβ}δ_{ij}|`.
    pub max_violation: f64,
}

/// Evaluates the error-correction conditions directly on dense codewords.
pub fn qecc_condition_matrix(
    codewords: &[StateVector],
    errors: &[PauliOperator],
) -> Result<QeccConditionResult> {
    let images: Vec<Vec<StateVector>> = errors
        .iter()
        .map(|e| codewords.iter().map(|w| w.apply_pauli(e)).collect())
        .collect::<Result<_>>()?;
    let m = errors.len();
    let k = codewords.len();
    let mut cm = CMatrix::zeros(m, m);
    let mut violation: f64 = 0.0;
    for a in 0..m {
        for b in 0..m {
            let block: Vec<Vec<C64>> = (0..k)
                .map(|i| (0..k).map(|j| images[a][i].inner(&images[b][j])).collect())
                .collect();
            let cab = (0..k).map(|i| block[i][i]).sum::<C64>() / c(k as f64, 0.0);
            cm[(a, b)] = cab;
            for (i, row) in block.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    let want = if i == j { cab } else { C64::default() };
                    violation = violation.max((v - want).norm());
                }
            }
        }
    }
    Ok(QeccConditionResult {
        c: cm,
        max_violation: violation,
    })
}

/// Applies `H` to every qubit (fast Walsh–Hadamard transform).
pub fn hadamard_all(state: &StateVector) -> StateVector {
    let mut a: Vec<C64> = state.amplitudes().iter().copied().collect();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut h = 1;
    while h < a.len() {
        for blk in (0..a.len()).step_by(2 * h) {
            for i in blk..blk + h {
                let (u, v) = (a[i], a[i + h]);
                a[i] = (u + v) * s;
                a[i + h] = (u - v) * s;
            }
        }
        h *= 2;
    }
    StateVector::unnormalized(state.num_qubits(), a).expect("same size")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    fn pauli(self) -> CMatrix {
        gate_constant(match self {
            Axis::X => "X",
            Axis::Y => "Y",
            Axis::Z => "Z",
        })
        .expect("known")
    }
}

/// Dense matrix of `S_α = Σ_i σ_α^i` on `n` qubits.
pub fn collective_operator(n: usize, axis: Axis) -> Result<CMatrix> {
    if n > MAX_DENSE_QUBITS {
        return Err(QecError::TooLarge(format!("{n} qubits")));
    }
    let dim = 1 << n;
    let mut m = CMatrix::zeros(dim, dim);
    for col in 0..dim {
        let out = apply_collective(&StateVector::basis(n, col), axis);
        m.set_column(col, out.amplitudes());
    }
    Ok(m)
}

/// `S_α|ψ⟩` computed qubit by qubit.
pub fn apply_collective(state: &StateVector, axis: Axis) -> StateVector {
    let n = state.num_qubits();
    let sigma = axis.pauli();
    let mut acc = state.scaled(C64::default());
    for q in 0..n {
        let term = state.apply_1q(q, &sigma);
        acc = acc.combine(c(1.0, 0.0), &term, c(1.0, 0.0));
    }
    acc
}

#[derive(Clone, Debug, Serialize)]
pub struct AxisCheck {
    pub axis: Axis,
    /// Rayleigh quotient of the first state.
    pub eigenvalue: f64,
    /// `‖S_α|ψ⟩ − c_α|ψ⟩‖` per state.
    pub residuals: Vec<f64>,
    /// Rayleigh quotients of the other states agree with `eigenvalue`.
    pub consistent: bool,
}

impl AxisCheck {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }

    pub fn passes(&self) -> bool {
        self.consistent && self.max_residual() < RESIDUAL_TOL
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DfsReport {
    pub axes: Vec<AxisCheck>,
}

impl DfsReport {
    pub fn passes(&self) -> bool {
        self.axes.iter().all(AxisCheck::passes)
    }

    pub fn axis(&self, a: Axis) -> Option<&AxisCheck> {
        self.axes.iter().find(|c| c.axis == a)
    }
}

/// Checks that every state is a common eigenvector of the collective
/// operators with a shared eigenvalue per axis.
pub fn dfs_check(states: &[StateVector], axes: &[Axis]) -> Result<DfsReport> {
    let first = states
        .first()
        .ok_or_else(|| QecError::Invalid("no states to check".into()))?;
    let n = first.num_qubits();
    if states.iter().any(|s| s.num_qubits() != n) {
        return Err(QecError::Invalid("states differ in qubit count".into()));
    }
    let mut out = Vec::new();
    for &axis in axes {
        let images: Vec<StateVector> = states.iter().map(|s| apply_collective(s, axis)).collect();
        let quotient = |s: &StateVector, img: &StateVector| s.inner(img).re / s.inner(s).re;
        let cval = quotient(first, &images[0]);
        let residuals = states
            .iter()
            .zip(&images)
            .map(|(s, img)| img.combine(c(1.0, 0.0), s, c(-cval, 0.0)).norm())
            .collect();
        let consistent = states
            .iter()
            .zip(&images)
            .all(|(s, img)| (quotient(s, img) - cval).abs() < RESIDUAL_TOL);
        out.push(AxisCheck {
            axis,
            eigenvalue: cval,
            residuals,
            consistent,
        });
    }
    Ok(DfsReport { axes: out })
}

#[derive(Clone, Debug, Serialize)]
pub struct LeakageCheck {
    pub axis: Axis,
    /// Operator norm of `(I − P_V) S_α P_V`.
    pub leakage: f64,
}

/// Leakage of the collective operators out of `span(basis)`.
pub fn subsystem_invariance(basis: &[StateVector], axes: &[Axis]) -> Result<Vec<LeakageCheck>> {
    let first = basis
        .first()
        .ok_or_else(|| QecError::Invalid("empty basis".into()))?;
    let dim = first.dim();
    // Gram–Schmidt into the columns of an isometry B, so P_V = B B†.
    let mut cols: Vec<nalgebra::DVector<C64>> = Vec::new();
    for v in basis {
        let mut w = v.amplitudes().clone();
        for u in &cols {
            let proj = u.dotc(&w);
            w -= u * proj;
        }
        let norm = w.norm();
        if norm > 1e-12 {
            cols.push(w / c(norm, 0.0));
        }
    }
    let b = CMatrix::from_columns(&cols);
    let p = &b * b.adjoint();
    let leak_proj = CMatrix::identity(dim, dim) - p;
    let n = first.num_qubits();
    axes.iter()
        .map(|&axis| {
            let s = collective_operator(n, axis)?;
            let block = &leak_proj * s * &b;
            let leakage = block
                .svd(false, false)
                .singular_values
                .iter()
                .copied()
                .fold(0.0, f64::max);
            Ok(LeakageCheck { axis, leakage })
        })
        .collect()
}

/// Two-qubit singlet and triplet states `(|s⟩, |t₋⟩, |t₀⟩, |t₊⟩)`.
pub fn singlet_triplet() -> (StateVector, [StateVector; 3]) {
    let one = c(1.0, 0.0);
    let s = StateVector::from_kets(&[("01", one), ("10", -one)]).expect("static");
    let tm = StateVector::from_kets(&[("00", one)]).expect("static");
    let t0 = StateVector::from_kets(&[("01", one), ("10", one)]).expect("static");
    let tp = StateVector::from_kets(&[("11", one)]).expect("static");
    (s, [tm, t0, tp])
}

/// The four-qubit code `|s⟩|s⟩` and `(|t₊t₋⟩ − |t₀t₀⟩ + |t₋t₊⟩)/√3`.
pub fn four_qubit_dfs_code() -> (StateVector, StateVector) {
    let (s, [tm, t0, tp]) = singlet_triplet();
    let zero = s.tensor(&s).expect("small");
    let r = 1.0 / 3f64.sqrt();
    let a = tp.tensor(&tm).expect("small");
    let b = t0.tensor(&t0).expect("small");
    let d = tm.tensor(&tp).expect("small");
    let one = a
        .combine(c(r, 0.0), &b, c(-r, 0.0))
        .combine(c(1.0, 0.0), &d, c(r, 0.0));
    (zero, one)
}

/// The two-dimensional subsystems for three qubits: the `|0⟩_code` pair and
/// the `|1⟩_code` pair.
pub fn three_qubit_subsystem() -> ([StateVector; 2], [StateVector; 2]) {
    let one = c(1.0, 0.0);
    let zero_pair = [
        StateVector::from_kets(&[("010", one), ("100", -one)]).expect("static"),
        StateVector::from_kets(&[("011", one), ("101", -one)]).expect("static"),
    ];
    let one_pair = [
        StateVector::from_kets(&[("001", c(-2.0, 0.0)), ("010", one), ("100", one)])
            .expect("static"),
        StateVector::from_kets(&[("110", c(2.0, 0.0)), ("101", -one), ("011", -one)])
            .expect("static"),
    ];
    (zero_pair, one_pair)
}

/// Probability of each Kraus branch when every qubit of `state` independently
/// undergoes `√(1−ε)·I` or `√ε·X`; index = number of flipped qubits.
pub fn bit_flip_branch_probabilities(state: &StateVector, eps: f64) -> Vec<f64> {
    let n = state.num_qubits();
    let mut by_count = vec![0.0; n + 1];
    for mask in 0usize..(1 << n) {
        let mut v = state.clone();
        let mut amp = 1.0;
        for q in 0..n {
            if mask & bit_of(n, q) != 0 {
                v = v.apply_1q(q, &gate_constant("X").expect("known"));
                amp *= eps.sqrt();
            } else {
                amp *= (1.0 - eps).sqrt();
            }
        }
        let branch = v.scaled(c(amp, 0.0));
        by_count[mask.count_ones() as usize] += branch.norm().powi(2);
    }
    by_count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{builtin, BUILTIN_NAMES};
    use crate::pauli::paulis_up_to_weight;

    fn one() -> C64 {
        c(1.0, 0.0)
    }

    #[test]
    fn encode_examples() {
        let s = encode_codeword("bitflip3", one(), C64::default()).unwrap();
        assert!((s.amplitude(0) - one()).norm() < 1e-15);
        let s = encode_codeword("steane7", one(), C64::default()).unwrap();
        let r = 1.0 / 8f64.sqrt();
        for w in STEANE_EVEN {
            let idx = usize::from_str_radix(w, 2).unwrap();
            assert!((s.amplitude(idx) - c(r, 0.0)).norm() < 1e-14);
        }
        let s = encode_codeword("shor9", C64::default(), one()).unwrap();
        let minus = StateVector::from_kets(&[("000", one()), ("111", -one())]).unwrap();
        let want = minus.tensor(&minus).unwrap().tensor(&minus).unwrap();
        assert!(s.distance(&want) < 1e-14);
        assert!(encode_codeword("steane7", one(), one()).is_err());
        assert!(encode_codeword("five_qubit", one(), C64::default()).is_err());
    }

    #[test]
    fn steane_words_are_hamming_codewords() {
        let h = crate::gf2::hamming_matrix();
        for (w, parity) in STEANE_EVEN
            .iter()
            .map(|w| (w, 0))
            .chain(STEANE_ODD.iter().map(|w| (w, 1)))
        {
            let v = crate::bits::BitVec::from_str01(w).unwrap();
            assert!(h.mul_vec(&v).unwrap().is_zero(), "{w}");
            assert_eq!(v.count_ones() % 2, parity);
        }
    }

    #[test]
    fn codeword_pairs_are_orthonormal() {
        for name in ["bitflip3", "steane7", "shor9"] {
            let (a, b) = codeword_basis(name).unwrap();
            assert!(a.inner(&b).norm() < 1e-12);
            assert!((a.norm() - 1.0).abs() < 1e-12);
            assert!((b.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn generators_fix_codewords() {
        for name in BUILTIN_NAMES {
            let Ok((a, b)) = codeword_basis(name) else {
                continue;
            };
            let code = builtin(name).unwrap();
            for g in &code.generators {
                for v in [&a, &b] {
                    assert!(v.apply_pauli(g).unwrap().distance(v) < 1e-10, "{name} {g}");
                }
            }
        }
    }

    #[test]
    fn logical_operators_act_as_labelled() {
        for name in ["bitflip3", "steane7", "shor9"] {
            let code = builtin(name).unwrap();
            let (zero, one_l) = codeword_basis(name).unwrap();
            let lx = &code.logical_x[0];
            let lz = &code.logical_z[0];
            assert!(
                zero.apply_pauli(lx).unwrap().distance(&one_l) < 1e-10,
                "{name} X̄"
            );
            assert!(
                zero.apply_pauli(lz).unwrap().distance(&zero) < 1e-10,
                "{name} Z̄"
            );
            assert!(
                one_l
                    .apply_pauli(lz)
                    .unwrap()
                    .distance(&one_l.scaled(-one()))
                    < 1e-10
            );
        }
    }

    #[test]
    fn qecc_condition_examples() {
        let (a, b) = codeword_basis("shor9").unwrap();
        let errors: Vec<_> = paulis_up_to_weight(9, 1).collect();
        let r = qecc_condition_matrix(&[a, b], &errors).unwrap();
        assert!(r.max_violation < 1e-10);

        let (a, b) = codeword_basis("bitflip3").unwrap();
        let r = qecc_condition_matrix(std::slice::from_ref(&a), &["III".parse().unwrap()]).unwrap();
        assert!((r.c[(0, 0)] - one()).norm() < 1e-15);
        assert_eq!(r.max_violation, 0.0);

        let errs = vec!["III".parse().unwrap(), "ZII".parse().unwrap()];
        let r = qecc_condition_matrix(&[a, b], &errs).unwrap();
        assert!(r.max_violation > 0.5);
    }

    #[test]
    fn hadamard_examples() {
        let plus = hadamard_all(&StateVector::zero(1));
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((plus.amplitude(0) - c(s, 0.0)).norm() < 1e-15);
        assert!((plus.amplitude(1) - c(s, 0.0)).norm() < 1e-15);

        let (z, o) = codeword_basis("steane7").unwrap();
        let want = z.combine(c(s, 0.0), &o, c(s, 0.0));
        assert!(hadamard_all(&z).distance(&want) < 1e-10);

        let block = StateVector::from_kets(&[("000", one()), ("111", one())]).unwrap();
        let want = StateVector::from_kets(&[
            ("000", one()),
            ("110", one()),
            ("101", one()),
            ("011", one()),
        ])
        .unwrap();
        assert!(hadamard_all(&block).distance(&want) < 1e-12);
    }

    #[test]
    fn hadamard_is_involution() {
        let (z, o) = codeword_basis("shor9").unwrap();
        let v = z.combine(c(0.6, 0.0), &o, c(0.0, 0.8));
        assert!(hadamard_all(&hadamard_all(&v)).distance(&v) < 1e-12);
    }

    #[test]
    fn collective_examples() {
        let sz = collective_operator(1, Axis::Z).unwrap();
        assert!((sz[(0, 0)] - one()).norm() < 1e-15 && (sz[(1, 1)] + one()).norm() < 1e-15);
        let (s, _) = singlet_triplet();
        for a in Axis::ALL {
            let img = s.apply_matrix(&collective_operator(2, a).unwrap()).unwrap();
            assert!(img.norm() < 1e-12);
        }
        let img = apply_collective(&StateVector::zero(2), Axis::X);
        assert!((img.amplitude(0b10) - one()).norm() < 1e-15);
        assert!((img.amplitude(0b01) - one()).norm() < 1e-15);
        assert!(collective_operator(11, Axis::X).is_err());
    }

    #[test]
    fn dfs_examples() {
        let (z, o) = four_qubit_dfs_code();
        let r = dfs_check(&[z, o], &Axis::ALL).unwrap();
        assert!(r.passes());
        for a in &r.axes {
            assert!(a.eigenvalue.abs() < 1e-12);
        }
        let (s, _) = singlet_triplet();
        assert!(dfs_check(&[s], &Axis::ALL).unwrap().passes());

        let r = dfs_check(&[StateVector::zero(2)], &[Axis::Z, Axis::X]).unwrap();
        let zc = r.axis(Axis::Z).unwrap();
        assert!(zc.passes());
        assert!((zc.eigenvalue - 2.0).abs() < 1e-12);
        assert!(!r.axis(Axis::X).unwrap().passes());
    }

    #[test]
    fn dfs_rejects_inconsistent_eigenvalues() {
        // |00⟩ and |11⟩ are both S_z eigenstates but with eigenvalues ±2
        let a = StateVector::zero(2);
        let b = StateVector::basis(2, 3);
        let r = dfs_check(&[a, b], &[Axis::Z]).unwrap();
        assert!(!r.passes());
    }

    #[test]
    fn subsystem_examples() {
        let (zero_pair, one_pair) = three_qubit_subsystem();
        for pair in [&zero_pair, &one_pair] {
            for l in subsystem_invariance(pair, &Axis::ALL).unwrap() {
                assert!(l.leakage < 1e-10, "{:?}", l);
            }
        }
        let full: Vec<StateVector> = (0..8).map(|i| StateVector::basis(3, i)).collect();
        for l in subsystem_invariance(&full, &Axis::ALL).unwrap() {
            assert!(l.leakage < 1e-12);
        }
        let l = subsystem_invariance(&[StateVector::zero(3)], &[Axis::X]).unwrap();
        assert!((l[0].leakage - 3f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn bit_flip_discretization() {
        let s = encode_codeword("bitflip3", c(0.6, 0.0), c(0.8, 0.0)).unwrap();
        for eps in [0.01, 0.1] {
            let p = bit_flip_branch_probabilities(&s, eps);
            assert!((p[0] - (1.0 - eps).powi(3)).abs() < 1e-14);
            assert!(p[0] >= 1.0 - 3.0 * eps);
            let two_plus = p[2] + p[3];
            let formula = 3.0 * eps * eps * (1.0 - eps) + eps.powi(3);
            assert!((two_plus - formula).abs() < 1e-14);
            assert!(two_plus <= 3.0 * eps * eps);
        }
        let single = bit_flip_branch_probabilities(&StateVector::zero(1), 0.1);
        assert!((single[0] - 0.9).abs() < 1e-15 && (single[1] - 0.1).abs() < 1e-15);
    }
}
