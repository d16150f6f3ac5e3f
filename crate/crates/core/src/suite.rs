// Copyright 2026 The qec-workbench Authors
// SPDX-License-Identifier: Apache-2.0

//! The dense-oracle verification suite behind `qec oracle verify`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::codes::{builtin, transversal_gate_image, StabilizerCode, TransversalGate};
use crate::dense::{c, StateVector};
use crate::error::{QecError, Result};
use crate::gf2::hamming_matrix;
use crate::noise::{
    compose, gks_matrix, kraus_closed_form_deviation, kraus_set, random_qubit_density,
    semigroup_deviation, NoiseChannel,
};
use crate::oracle::{
    codeword_basis, dfs_check, four_qubit_dfs_code, hadamard_all, qecc_condition_matrix,
    singlet_triplet, subsystem_invariance, three_qubit_subsystem, Axis, RESIDUAL_TOL,
};
use crate::pauli::{paulis_up_to_weight, Pauli1, PauliOperator};
use crate::rng::trial_rng;

pub const CHANNEL_TOL: f64 = 1e-12;

type CheckFn = fn() -> Result<CheckResult>;

pub const CHECK_NAMES: [&str; 9] = [
    "qecc_condition",
    "hadamard_duality",
    "syndrome_hamming",
    "kraus_completeness",
    "semigroup",
    "gks",
    "dfs",
    "subsystem",
    "transversal",
];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub detail: BTreeMap<String, f64>,
}

impl CheckResult {
    fn new(name: impl Into<String>, tolerance: f64, detail: BTreeMap<String, f64>) -> Self {
        let residual = detail.values().copied().fold(0.0, f64::max);
        CheckResult {
            name: name.into(),
            residual,
            tolerance,
            passed: residual < tolerance,
            detail,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

/// Codewords stabilized by every generator, logicals acting as labelled,
/// and the error-correction conditions on the weight-≤1 Pauli basis.
pub fn qecc_check(code: &StabilizerCode) -> Result<CheckResult> {
    let (zero, one) = codeword_basis(&code.name)?;
    let mut d = BTreeMap::new();
    let mut stab: f64 = 0.0;
    for g in &code.generators {
        for w in [&zero, &one] {
            stab = stab.max(w.apply_pauli(g)?.distance(w));
        }
    }
    d.insert("generator_residual".into(), stab);
    let mut logical: f64 = 0.0;
    if let (Some(x), Some(z)) = (code.logical_x.first(), code.logical_z.first()) {
        logical = logical.max(zero.apply_pauli(x)?.distance(&one));
        logical = logical.max(zero.apply_pauli(z)?.distance(&zero));
        logical = logical.max(one.apply_pauli(z)?.distance(&one.scaled(c(-1.0, 0.0))));
    }
    d.insert("logical_residual".into(), logical);
    let errors: Vec<PauliOperator> = paulis_up_to_weight(code.n, 1).collect();
    let q = qecc_condition_matrix(&[zero, one], &errors)?;
    d.insert("condition_violation".into(), q.max_violation);
    Ok(CheckResult::new(
        format!("qecc_condition:{}", code.name),
        RESIDUAL_TOL,
        d,
    ))
}

pub fn hadamard_check() -> Result<CheckResult> {
    let (zero, one) = codeword_basis("steane7")?;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let plus = zero.combine(c(s, 0.0), &one, c(s, 0.0));
    let minus = zero.combine(c(s, 0.0), &one, c(-s, 0.0));
    let mut d = BTreeMap::new();
    d.insert("zero".into(), hadamard_all(&zero).distance(&plus));
    d.insert("one".into(), hadamard_all(&one).distance(&minus));
    Ok(CheckResult::new("hadamard_duality", RESIDUAL_TOL, d))
}

/// Z-sector syndrome of each single bit flip against the Hamming columns.
/// The residual counts mismatched columns plus repeated syndromes.
pub fn syndrome_hamming_check() -> Result<CheckResult> {
    let code = builtin("steane7")?;
    let h = hamming_matrix();
    let mut mismatches = 0usize;
    let mut seen = Vec::new();
    for q in 0..7 {
        let s = code.syndrome(&PauliOperator::single(7, q, Pauli1::X))?;
        let sector: Vec<bool> = (0..3).map(|i| s.0.get(i)).collect();
        let col: Vec<bool> = (0..3).map(|i| h.get(i, q)).collect();
        if sector != col {
            mismatches += 1;
        }
        seen.push(sector);
    }
    seen.sort();
    seen.dedup();
    let mut d = BTreeMap::new();
    d.insert("column_mismatches".into(), mismatches as f64);
    d.insert("repeated_syndromes".into(), (7 - seen.len()) as f64);
    Ok(CheckResult::new("syndrome_hamming", 0.5, d))
}

/// One instance of every channel kind.
pub fn sample_channels() -> Vec<NoiseChannel> {
    vec![
        NoiseChannel::bit_flip(0.13),
        NoiseChannel::phase_flip(0.21),
        NoiseChannel::depolarizing(0.3),
        NoiseChannel::Depolarizing2q { epsilon: 0.17 },
        NoiseChannel::PhaseDamping { gamma: 0.8, t: 1.7 },
        NoiseChannel::DepolarizingMarkov {
            gamma_tilde: 1.3,
            t: 0.45,
        },
        NoiseChannel::AmplitudeDamping {
            big_gamma: 2.2,
            t: 0.6,
        },
    ]
}

pub fn kraus_check() -> Result<CheckResult> {
    let mut d = BTreeMap::new();
    for ch in sample_channels() {
        let name = ch.kind().name();
        d.insert(
            format!("{name}:completeness"),
            kraus_set(&ch)?.completeness_error(),
        );
        d.insert(
            format!("{name}:closed_form"),
            kraus_closed_form_deviation(&ch)?,
        );
    }
    Ok(CheckResult::new("kraus_completeness", CHANNEL_TOL, d))
}

pub const SEMIGROUP_SAMPLES: u64 = 100;
const SEMIGROUP_SEED: u64 = 0x5EED_0001;

/// `ℰ_{t1}∘ℰ_{t2} = ℰ_{t1+t2}` on random states and durations, and on the
/// full operator basis.
pub fn semigroup_check() -> Result<CheckResult> {
    use rand::Rng;
    let mut d = BTreeMap::new();
    let kinds = [
        NoiseChannel::PhaseDamping { gamma: 0.9, t: 0.0 },
        NoiseChannel::DepolarizingMarkov {
            gamma_tilde: 0.6,
            t: 0.0,
        },
        NoiseChannel::AmplitudeDamping {
            big_gamma: 1.4,
            t: 0.0,
        },
    ];
    for ch in kinds {
        let mut worst: f64 = 0.0;
        let mut worst_basis: f64 = 0.0;
        for j in 0..SEMIGROUP_SAMPLES {
            let mut rng = trial_rng(SEMIGROUP_SEED, j);
            let rho = random_qubit_density(&mut rng);
            let t1 = rng.random_range(0.0..3.0);
            let t2 = rng.random_range(0.0..3.0);
            worst = worst.max(semigroup_deviation(&ch, &rho, t1, t2)?);
            worst_basis = worst_basis.max(compose(&ch, t1, t2)?);
        }
        d.insert(format!("{}:states", ch.kind().name()), worst);
        d.insert(format!("{}:basis", ch.kind().name()), worst_basis);
    }
    Ok(CheckResult::new("semigroup", CHANNEL_TOL, d))
}

/// Coefficient matrices against their literal forms; the residual is the
/// largest entrywise difference, so a pass means exact equality.
pub fn gks_check() -> Result<CheckResult> {
    use nalgebra::Matrix3;
    let z = c(0.0, 0.0);
    let (g, gt, bg) = (0.7, 1.9, 2.6);
    let cases = [
        (
            NoiseChannel::PhaseDamping { gamma: g, t: 0.0 },
            Matrix3::new(z, z, z, z, z, z, z, z, c(g / 2.0, 0.0)),
        ),
        (
            NoiseChannel::DepolarizingMarkov {
                gamma_tilde: gt,
                t: 0.0,
            },
            Matrix3::from_diagonal_element(c(gt / 4.0, 0.0)),
        ),
        (
            NoiseChannel::AmplitudeDamping {
                big_gamma: bg,
                t: 0.0,
            },
            Matrix3::new(
                c(1.0, 0.0),
                c(0.0, -1.0),
                z,
                c(0.0, 1.0),
                c(1.0, 0.0),
                z,
                z,
                z,
                z,
            ) * c(bg / 4.0, 0.0),
        ),
    ];
    let mut d = BTreeMap::new();
    for (ch, want) in cases {
        let got = gks_matrix(&ch)?;
        let diff = (got.0 - want).iter().map(|v| v.norm()).fold(0.0, f64::max);
        d.insert(ch.kind().name().to_string(), diff);
        d.insert(
            format!("{}:psd", ch.kind().name()),
            if got.is_psd() { 0.0 } else { 1.0 },
        );
    }
    Ok(CheckResult::new("gks", f64::MIN_POSITIVE, d))
}

pub fn dfs_suite_check() -> Result<CheckResult> {
    let mut d = BTreeMap::new();
    let (singlet, _) = singlet_triplet();
    let (zero, one) = four_qubit_dfs_code();
    for (label, states) in [("singlet", vec![singlet]), ("four_qubit", vec![zero, one])] {
        let r = dfs_check(&states, &Axis::ALL)?;
        for a in &r.axes {
            let v = if a.consistent {
                a.max_residual()
            } else {
                f64::INFINITY
            };
            d.insert(format!("{label}:{:?}", a.axis), v);
        }
    }
    Ok(CheckResult::new("dfs", RESIDUAL_TOL, d))
}

pub fn subsystem_check() -> Result<CheckResult> {
    let (zero_pair, one_pair) = three_qubit_subsystem();
    let mut d = BTreeMap::new();
    for (label, pair) in [("zero", zero_pair), ("one", one_pair)] {
        for l in subsystem_invariance(&pair, &Axis::ALL)? {
            d.insert(format!("{label}:{:?}", l.axis), l.leakage);
        }
    }
    Ok(CheckResult::new("subsystem", RESIDUAL_TOL, d))
}

pub fn transversal_check() -> Result<CheckResult> {
    let code = builtin("steane7")?;
    let mut d = BTreeMap::new();
    for gate in [
        TransversalGate::BitwiseH,
        TransversalGate::BitwiseX,
        TransversalGate::BitwiseZ,
        TransversalGate::TransversalCnot,
    ] {
        let v = match transversal_gate_image(&code, gate) {
            Ok(a) => a.mismatch,
            Err(QecError::TransversalMismatch(m)) => m,
            Err(e) => return Err(e),
        };
        d.insert(format!("{gate:?}"), v);
    }
    Ok(CheckResult::new("transversal", RESIDUAL_TOL, d))
}

/// Runs the selected checks (all when `only` is `None`). The QECC check runs
/// once per code in `codes`.
pub fn verify_suite_with(codes: &[StabilizerCode], only: Option<&[String]>) -> Result<SuiteReport> {
    if let Some(sel) = only {
        for s in sel {
            if !CHECK_NAMES.contains(&s.as_str()) {
                return Err(QecError::Unknown {
                    what: "check",
                    name: s.clone(),
                });
            }
        }
    }
    let wanted = |name: &str| only.is_none_or(|sel| sel.iter().any(|s| s == name));
    let mut checks = Vec::new();
    if wanted("qecc_condition") {
        for code in codes {
            checks.push(qecc_check(code)?);
        }
    }
    let singles: [(&str, CheckFn); 8] = [
        ("hadamard_duality", hadamard_check),
        ("syndrome_hamming", syndrome_hamming_check),
        ("kraus_completeness", kraus_check),
        ("semigroup", semigroup_check),
        ("gks", gks_check),
        ("dfs", dfs_suite_check),
        ("subsystem", subsystem_check),
        ("transversal", transversal_check),
    ];
    for (name, f) in singles {
        if wanted(name) {
            checks.push(f()?);
        }
    }
    Ok(SuiteReport {
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}

/// The full suite on the built-in 9- and 7-qubit codes.
pub fn verify_suite(only: Option<&[String]>) -> Result<SuiteReport> {
    verify_suite_with(&[builtin("shor9")?, builtin("steane7")?], only)
}

/// Codeword states of a built-in code, for callers that want them directly.
pub fn codewords(code: &StabilizerCode) -> Result<[StateVector; 2]> {
    let (a, b) = codeword_basis(&code.name)?;
    Ok([a, b])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_suite_passes() {
        let r = verify_suite(None).unwrap();
        for c in &r.checks {
            assert!(c.passed, "{c:?}");
        }
        assert!(r.passed);
        assert_eq!(r.checks.len(), 10);
    }

    #[test]
    fn wrong_sign_fails_qecc_check() {
        let mut shor = builtin("shor9").unwrap();
        assert_eq!(shor.generators[6].to_string(), "XXXXXXIII");
        shor.generators[6] = "-XXXXXXIII".parse().unwrap();
        let r = verify_suite_with(&[shor], Some(&["qecc_condition".to_string()])).unwrap();
        assert!(!r.passed);
        assert!(r.checks[0].detail["generator_residual"] > 1.0);
    }

    #[test]
    fn empty_selection_is_a_pass() {
        let r = verify_suite(Some(&[])).unwrap();
        assert!(r.passed);
        assert!(r.checks.is_empty());
        assert!(verify_suite(Some(&["nonsense".to_string()])).is_err());
    }
}
