// Copyright 2026 The qec-workbench Authors
// SPDX-License-Identifier: Apache-2.0

//! Syndrome-extraction gadgets and single-fault Pauli-frame audits.
//!
//! Qubits `0..n` are the data block; ancillas (and the cat-state
//! verification qubit) follow. A fault at `position` p is inserted just
//! before step p, so `position = steps.len()` means after the last step.

use std::collections::BTreeSet;
use std::fmt;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bits::BitVec;
use crate::codes::{reduce_with_elements, StabilizerCode};
use crate::error::{QecError, Result};
use crate::pauli::{paulis_of_weight, Pauli1, PauliOperator};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "op", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Step {
    Prep0 { q: usize },
    PrepPlus { q: usize },
    H { q: usize },
    Cnot { control: usize, target: usize },
    MeasZ { q: usize },
    MeasX { q: usize },
}

impl Step {
    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Step::Prep0 { q }
            | Step::PrepPlus { q }
            | Step::H { q }
            | Step::MeasZ { q }
            | Step::MeasX { q } => vec![q],
            Step::Cnot { control, target } => vec![control, target],
        }
    }

    pub fn is_measurement(&self) -> bool {
        matches!(self, Step::MeasZ { .. } | Step::MeasX { .. })
    }

    pub fn is_preparation(&self) -> bool {
        matches!(self, Step::Prep0 { .. } | Step::PrepPlus { .. })
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Step::Prep0 { q } => write!(f, "PREP_0({q})"),
            Step::PrepPlus { q } => write!(f, "PREP_PLUS({q})"),
            Step::H { q } => write!(f, "H({q})"),
            Step::Cnot { control, target } => write!(f, "CNOT({control},{target})"),
            Step::MeasZ { q } => write!(f, "MEAS_Z({q})"),
            Step::MeasX { q } => write!(f, "MEAS_X({q})"),
        }
    }
}

/// Syndrome bit = XOR of the listed measurement flips; the run is rejected
/// when any verification measurement flips.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ClassicalPost {
    pub syndrome_measurements: Vec<usize>,
    pub verification_measurements: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GadgetStyle {
    Bare,
    Cat,
}

impl GadgetStyle {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "bare" => Ok(GadgetStyle::Bare),
            "cat" => Ok(GadgetStyle::Cat),
            other => Err(QecError::Unknown {
                what: "gadget style",
                name: other.to_string(),
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CliffordGadget {
    pub style: GadgetStyle,
    pub num_data: usize,
    pub data_qubits: Vec<usize>,
    pub ancilla_qubits: Vec<usize>,
    pub steps: Vec<Step>,
    pub post: ClassicalPost,
    /// The measured generator, as text.
    pub generator: String,
}

impl CliffordGadget {
    pub fn num_qubits(&self) -> usize {
        self.data_qubits.len() + self.ancilla_qubits.len()
    }

    /// Checks the wiring invariants: ancillas are prepared before any other
    /// touch, and a measurement is the last touch of its qubit.
    pub fn check(&self) -> Result<()> {
        let total = self.num_qubits();
        let mut first: Vec<Option<usize>> = vec![None; total];
        let mut last: Vec<Option<usize>> = vec![None; total];
        for (i, s) in self.steps.iter().enumerate() {
            let qs = s.qubits();
            if let Step::Cnot { control, target } = s {
                if control == target {
                    return Err(QecError::Invalid(format!("step {i}: CNOT on one qubit")));
                }
            }
            for q in qs {
                if q >= total {
                    return Err(QecError::Invalid(format!(
                        "step {i}: qubit {q} out of range"
                    )));
                }
                first[q].get_or_insert(i);
                last[q] = Some(i);
            }
        }
        for (i, s) in self.steps.iter().enumerate() {
            let q = s.qubits()[0];
            if s.is_preparation() && first[q] != Some(i) {
                return Err(QecError::Invalid(format!(
                    "step {i}: {s} is not the first touch"
                )));
            }
            if s.is_measurement() && last[q] != Some(i) {
                return Err(QecError::Invalid(format!(
                    "step {i}: {s} is not the final touch"
                )));
            }
        }
        for &a in &self.ancilla_qubits {
            match first[a].map(|i| self.steps[i]) {
                Some(s) if s.is_preparation() => {}
                _ => return Err(QecError::Invalid(format!("ancilla {a} is never prepared"))),
            }
        }
        for &m in self
            .post
            .syndrome_measurements
            .iter()
            .chain(&self.post.verification_measurements)
        {
            if !self.steps.get(m).is_some_and(Step::is_measurement) {
                return Err(QecError::Invalid(format!(
                    "post rule names non-measurement step {m}"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum GenType {
    Z,
    X,
}

fn generator_type(code: &StabilizerCode, index: usize) -> Result<(GenType, &PauliOperator)> {
    let g = code.generators.get(index).ok_or_else(|| {
        QecError::Invalid(format!(
            "generator index {index} out of range ({} generators)",
            code.generators.len()
        ))
    })?;
    if g.is_identity() {
        return Err(QecError::Unsupported("identity generator".into()));
    }
    if g.x_bits().is_zero() {
        Ok((GenType::Z, g))
    } else if g.z_bits().is_zero() {
        Ok((GenType::X, g))
    } else {
        Err(QecError::Unsupported(format!("mixed-type generator {g}")))
    }
}

/// One ancilla collecting the generator's parity with CNOTs in qubit order.
pub fn bare_syndrome_gadget(
    code: &StabilizerCode,
    generator_index: usize,
) -> Result<CliffordGadget> {
    let (ty, g) = generator_type(code, generator_index)?;
    let n = code.n;
    let a = n;
    let mut steps = Vec::new();
    match ty {
        GenType::Z => {
            steps.push(Step::Prep0 { q: a });
            steps.extend(g.support().into_iter().map(|d| Step::Cnot {
                control: d,
                target: a,
            }));
            steps.push(Step::MeasZ { q: a });
        }
        GenType::X => {
            steps.push(Step::PrepPlus { q: a });
            steps.extend(g.support().into_iter().map(|d| Step::Cnot {
                control: a,
                target: d,
            }));
            steps.push(Step::MeasX { q: a });
        }
    }
    let gadget = CliffordGadget {
        style: GadgetStyle::Bare,
        num_data: n,
        data_qubits: (0..n).collect(),
        ancilla_qubits: vec![a],
        post: ClassicalPost {
            syndrome_measurements: vec![steps.len() - 1],
            verification_measurements: vec![],
        },
        steps,
        generator: g.to_string(),
    };
    gadget.check()?;
    Ok(gadget)
}

/// Cat-state ancilla with one verification qubit comparing the first and
/// last cat qubits; one CNOT per (data, ancilla) pair.
pub fn cat_syndrome_gadget(
    code: &StabilizerCode,
    generator_index: usize,
) -> Result<CliffordGadget> {
    let (ty, g) = generator_type(code, generator_index)?;
    let n = code.n;
    let support = g.support();
    let w = support.len();
    let anc: Vec<usize> = (n..n + w).collect();
    let verify = (w > 1).then_some(n + w);

    let mut steps: Vec<Step> = anc.iter().map(|&q| Step::Prep0 { q }).collect();
    if let Some(v) = verify {
        steps.push(Step::Prep0 { q: v });
    }
    steps.push(Step::H { q: anc[0] });
    for pair in anc.windows(2) {
        steps.push(Step::Cnot {
            control: pair[0],
            target: pair[1],
        });
    }
    let mut verification = Vec::new();
    if let Some(v) = verify {
        steps.push(Step::Cnot {
            control: anc[0],
            target: v,
        });
        steps.push(Step::Cnot {
            control: anc[w - 1],
            target: v,
        });
        steps.push(Step::MeasZ { q: v });
        verification.push(steps.len() - 1);
    }
    let mut syndrome = Vec::with_capacity(w);
    match ty {
        GenType::Z => {
            // cat → even-parity superposition
            steps.extend(anc.iter().map(|&q| Step::H { q }));
            for (&d, &a) in support.iter().zip(&anc) {
                steps.push(Step::Cnot {
                    control: d,
                    target: a,
                });
            }
            for &a in &anc {
                steps.push(Step::MeasZ { q: a });
                syndrome.push(steps.len() - 1);
            }
        }
        GenType::X => {
            for (&d, &a) in support.iter().zip(&anc) {
                steps.push(Step::Cnot {
                    control: a,
                    target: d,
                });
            }
            for &a in &anc {
                steps.push(Step::MeasX { q: a });
                syndrome.push(steps.len() - 1);
            }
        }
    }
    let mut ancillas = anc;
    ancillas.extend(verify);
    let gadget = CliffordGadget {
        style: GadgetStyle::Cat,
        num_data: n,
        data_qubits: (0..n).collect(),
        ancilla_qubits: ancillas,
        steps,
        post: ClassicalPost {
            syndrome_measurements: syndrome,
            verification_measurements: verification,
        },
        generator: g.to_string(),
    };
    gadget.check()?;
    Ok(gadget)
}

pub fn build_gadget(
    code: &StabilizerCode,
    generator_index: usize,
    style: GadgetStyle,
) -> Result<CliffordGadget> {
    match style {
        GadgetStyle::Bare => bare_syndrome_gadget(code, generator_index),
        GadgetStyle::Cat => cat_syndrome_gadget(code, generator_index),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaultOutcome {
    pub position: usize,
    pub injected: PauliOperator,
    pub residual_data_error: PauliOperator,
    pub syndrome_bit_flipped: bool,
    pub rejected: bool,
}

/// Pushes `fault` (an operator on all gadget qubits, inserted before step
/// `position`) through the remaining ideal steps.
pub fn propagate(
    gadget: &CliffordGadget,
    position: usize,
    fault: &PauliOperator,
) -> Result<FaultOutcome> {
    if position > gadget.steps.len() {
        return Err(QecError::Invalid(format!(
            "fault position {position} beyond {} steps",
            gadget.steps.len()
        )));
    }
    let total = gadget.num_qubits();
    if fault.num_qubits() != total {
        return Err(QecError::Dimension {
            expected: total,
            actual: fault.num_qubits(),
        });
    }
    let mut x: Vec<bool> = (0..total).map(|q| fault.x_bits().get(q)).collect();
    let mut z: Vec<bool> = (0..total).map(|q| fault.z_bits().get(q)).collect();
    let mut flips = vec![false; gadget.steps.len()];
    for (i, step) in gadget.steps.iter().enumerate().skip(position) {
        match *step {
            Step::Prep0 { q } | Step::PrepPlus { q } => {
                x[q] = false;
                z[q] = false;
            }
            Step::H { q } => std::mem::swap(&mut x[q], &mut z[q]),
            Step::Cnot { control, target } => {
                x[target] ^= x[control];
                z[control] ^= z[target];
            }
            Step::MeasZ { q } => flips[i] = x[q],
            Step::MeasX { q } => flips[i] = z[q],
        }
    }
    let n = gadget.num_data;
    let xb = BitVec::from_bools(gadget.data_qubits.iter().map(|&q| x[q]));
    let zb = BitVec::from_bools(gadget.data_qubits.iter().map(|&q| z[q]));
    debug_assert_eq!(xb.len(), n);
    let residual = PauliOperator::hermitian_from_bits(xb, zb)?;
    let post = &gadget.post;
    Ok(FaultOutcome {
        position,
        injected: fault.clone(),
        residual_data_error: residual,
        syndrome_bit_flipped: post
            .syndrome_measurements
            .iter()
            .fold(false, |acc, &m| acc ^ flips[m]),
        rejected: post.verification_measurements.iter().any(|&m| flips[m]),
    })
}

/// A candidate single fault.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FaultSite {
    pub position: usize,
    pub fault: String,
}

fn embed(total: usize, qubits: &[usize], local: &PauliOperator) -> PauliOperator {
    let mut p = PauliOperator::identity(total);
    for (i, &q) in qubits.iter().enumerate() {
        p.set(q, local.get(i));
    }
    p
}

/// Every single-fault location: X/Y/Z after each one-qubit step, all 15
/// two-qubit Paulis after each CNOT, X/Y/Z before each measurement, and
/// X/Y/Z on each idle data qubit in every time slice.
pub fn fault_sites(gadget: &CliffordGadget) -> Vec<FaultSite> {
    let total = gadget.num_qubits();
    let mut set = BTreeSet::new();
    let mut add = |position: usize, qubits: &[usize]| {
        for w in 1..=qubits.len() {
            for local in paulis_of_weight(qubits.len(), w) {
                set.insert(FaultSite {
                    position,
                    fault: embed(total, qubits, &local).letters(),
                });
            }
        }
    };
    for (i, step) in gadget.steps.iter().enumerate() {
        let qs = step.qubits();
        if step.is_measurement() {
            add(i, &qs);
        } else {
            add(i + 1, &qs);
        }
        for &d in &gadget.data_qubits {
            if !qs.contains(&d) {
                add(i + 1, &[d]);
            }
        }
    }
    set.into_iter().collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaultRecord {
    pub position: usize,
    pub fault: String,
    pub residual: String,
    pub reduced_residual: String,
    pub reduced_weight: usize,
    pub syndrome_bit_flipped: bool,
    pub rejected: bool,
}

/// Worst accepted fault at one position.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocationReport {
    pub position: usize,
    /// The step the fault precedes, or `"end"`.
    pub before: String,
    pub faults: usize,
    pub rejected: usize,
    pub worst: Option<FaultRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub code: String,
    pub generator: String,
    pub style: GadgetStyle,
    pub faults_checked: usize,
    pub faults_rejected: usize,
    pub max_reduced_weight: usize,
    pub fault_tolerant: bool,
    pub worst: Option<FaultRecord>,
    pub locations: Vec<LocationReport>,
}

/// Audits the given fault list. Only the data block of `code` is reduced
/// modulo the stabilizer; the gadget must have been built for `code`.
pub fn audit_faults(
    gadget: &CliffordGadget,
    code: &StabilizerCode,
    sites: &[FaultSite],
) -> Result<AuditReport> {
    if gadget.num_data != code.n {
        return Err(QecError::Dimension {
            expected: code.n,
            actual: gadget.num_data,
        });
    }
    let elements = code.stabilizer_elements();
    let records: Vec<FaultRecord> = sites
        .par_iter()
        .map(|site| {
            let fault: PauliOperator = site.fault.parse()?;
            let out = propagate(gadget, site.position, &fault)?;
            let reduced = reduce_with_elements(&elements, &out.residual_data_error);
            Ok(FaultRecord {
                position: site.position,
                fault: site.fault.clone(),
                residual: out.residual_data_error.letters(),
                reduced_weight: reduced.weight(),
                reduced_residual: reduced.letters(),
                syndrome_bit_flipped: out.syndrome_bit_flipped,
                rejected: out.rejected,
            })
        })
        .collect::<Result<_>>()?;

    let mut locations: Vec<LocationReport> = Vec::new();
    for r in &records {
        if locations.last().map(|l| l.position) != Some(r.position) {
            locations.push(LocationReport {
                position: r.position,
                before: gadget
                    .steps
                    .get(r.position)
                    .map_or_else(|| "end".to_string(), |s| s.to_string()),
                faults: 0,
                rejected: 0,
                worst: None,
            });
        }
        let loc = locations.last_mut().expect("pushed above");
        loc.faults += 1;
        if r.rejected {
            loc.rejected += 1;
        } else if loc
            .worst
            .as_ref()
            .is_none_or(|w| r.reduced_weight > w.reduced_weight)
        {
            loc.worst = Some(r.clone());
        }
    }
    let worst = locations
        .iter()
        .filter_map(|l| l.worst.as_ref())
        .fold(None::<&FaultRecord>, |best, r| match best {
            Some(b) if b.reduced_weight >= r.reduced_weight => Some(b),
            _ => Some(r),
        })
        .cloned();
    let max_reduced_weight = worst.as_ref().map_or(0, |w| w.reduced_weight);
    Ok(AuditReport {
        code: code.name.clone(),
        generator: gadget.generator.clone(),
        style: gadget.style,
        faults_checked: records.len(),
        faults_rejected: records.iter().filter(|r| r.rejected).count(),
        max_reduced_weight,
        fault_tolerant: max_reduced_weight <= 1,
        worst,
        locations,
    })
}

/// Exhaustive single-fault audit over [`fault_sites`].
pub fn ft_audit(gadget: &CliffordGadget, code: &StabilizerCode) -> Result<AuditReport> {
    audit_faults(gadget, code, &fault_sites(gadget))
}

/// Result of the repeat-until-agreement rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepeatOutcome {
    pub syndrome: BitVec,
    pub attempts: usize,
    pub cap_hit: bool,
}

pub const REPEAT_CAP: usize = 100;

/// Measures the syndrome in rounds of two noisy draws and accepts the first
/// round whose draws agree. Each bit of each draw flips with probability `q`.
/// After [`REPEAT_CAP`] draws the last draw is returned with `cap_hit` set.
pub fn repeat_twice<R: Rng + ?Sized>(
    mut syndrome_sampler: impl FnMut(&mut R) -> BitVec,
    q: f64,
    rng: &mut R,
) -> Result<RepeatOutcome> {
    if !(0.0..=1.0).contains(&q) {
        return Err(QecError::Invalid(format!(
            "flip probability {q} outside [0, 1]"
        )));
    }
    let mut draw = |rng: &mut R| {
        let mut s = syndrome_sampler(rng);
        for i in 0..s.len() {
            if rng.random::<f64>() < q {
                s.flip(i);
            }
        }
        s
    };
    let mut attempts = 0;
    loop {
        let first = draw(rng);
        let second = draw(rng);
        attempts += 2;
        if first == second {
            return Ok(RepeatOutcome {
                syndrome: first,
                attempts,
                cap_hit: false,
            });
        }
        if attempts >= REPEAT_CAP {
            return Ok(RepeatOutcome {
                syndrome: second,
                attempts,
                cap_hit: true,
            });
        }
    }
}

/// Probability that the uncapped rule accepts a wrong `m`-bit syndrome.
pub fn repeat_twice_error_probability(m: usize, q: f64) -> f64 {
    let agree = ((1.0 - q).powi(2) + q * q).powi(m as i32);
    let right = (1.0 - q).powi(2 * m as i32);
    (agree - right) / agree
}

/// Expected number of draws of the uncapped rule.
pub fn repeat_twice_expected_attempts(m: usize, q: f64) -> f64 {
    2.0 / ((1.0 - q).powi(2) + q * q).powi(m as i32)
}

/// Embeds a data-block error into the gadget's full register.
pub fn on_data(gadget: &CliffordGadget, e: &PauliOperator) -> Result<PauliOperator> {
    if e.num_qubits() != gadget.num_data {
        return Err(QecError::Dimension {
            expected: gadget.num_data,
            actual: e.num_qubits(),
        });
    }
    Ok(embed(gadget.num_qubits(), &gadget.data_qubits, e))
}

/// Convenience for single-qubit faults.
pub fn single_fault(gadget: &CliffordGadget, qubit: usize, p: Pauli1) -> PauliOperator {
    PauliOperator::single(gadget.num_qubits(), qubit, p)
}
