// Copyright 2026 The qec-workbench Authors
// SPDX-License-Identifier: Apache-2.0

//! Stabilizer codes: validation, syndromes, the stabilizer error-correction
//! conditions and brute-force distance.

mod builtin;
mod format;
mod transversal;

use std::fmt;

use serde::Serialize;

pub use builtin::{builtin, builtin_names, BUILTIN_NAMES};
pub use transversal::{transversal_gate_image, EncodedGate, LogicalAction, TransversalGate};

use crate::bits::BitVec;
use crate::error::{QecError, Result};
use crate::gf2::{solve_in_row_space, BinaryMatrix};
use crate::pauli::{paulis_of_weight, PauliOperator};

/// An `[[n, k]]` stabilizer code with a pinned choice of logical operators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerCode {
    pub name: String,
    pub n: usize,
    pub k: usize,
    pub generators: Vec<PauliOperator>,
    pub logical_x: Vec<PauliOperator>,
    pub logical_z: Vec<PauliOperator>,
}

/// Bit `i` is set iff the error anticommutes with generator `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Syndrome(pub BitVec);

impl Syndrome {
    pub fn bits(&self) -> &BitVec {
        &self.0
    }

    pub fn is_trivial(&self) -> bool {
        self.0.is_zero()
    }

    pub fn xor(&self, other: &Syndrome) -> Syndrome {
        let mut b = self.0.clone();
        b.xor_assign(&other.0);
        Syndrome(b)
    }
}

impl fmt::Display for Syndrome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ValidationIssue {
    QubitCount {
        item: String,
        expected: usize,
        actual: usize,
    },
    GeneratorCount {
        expected: usize,
        actual: usize,
    },
    LogicalCount {
        expected: usize,
        x: usize,
        z: usize,
    },
    NonHermitian {
        item: String,
    },
    AnticommutingGenerators {
        first: usize,
        second: usize,
    },
    RankDeficient {
        rank: usize,
        expected: usize,
    },
    MinusIdentityInGroup,
    LogicalAnticommutesWithGenerator {
        logical: String,
        generator: usize,
    },
    LogicalPairing {
        x: usize,
        z: usize,
        commute: bool,
    },
    LogicalXPair {
        first: usize,
        second: usize,
    },
    LogicalZPair {
        first: usize,
        second: usize,
    },
    LogicalInStabilizer {
        logical: String,
    },
}

impl fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ValidationIssue::*;
        match self {
            QubitCount {
                item,
                expected,
                actual,
            } => write!(f, "{item} acts on {actual} qubits, expected {expected}"),
            GeneratorCount { expected, actual } => {
                write!(f, "{actual} generators, expected n-k = {expected}")
            }
            LogicalCount { expected, x, z } => {
                write!(
                    f,
                    "{x} logical X and {z} logical Z operators, expected {expected} each"
                )
            }
            NonHermitian { item } => write!(f, "{item} is not Hermitian"),
            AnticommutingGenerators { first, second } => {
                write!(f, "generators {first} and {second} anticommute")
            }
            RankDeficient { rank, expected } => {
                write!(f, "generators have GF(2) rank {rank}, expected {expected}")
            }
            MinusIdentityInGroup => write!(f, "stabilizer group contains -I"),
            LogicalAnticommutesWithGenerator { logical, generator } => {
                write!(f, "{logical} anticommutes with generator {generator}")
            }
            LogicalPairing { x, z, commute } => {
                if *commute {
                    write!(f, "logical X[{x}] commutes with logical Z[{z}]")
                } else {
                    write!(f, "logical X[{x}] anticommutes with logical Z[{z}]")
                }
            }
            LogicalXPair { first, second } => {
                write!(f, "logical X[{first}] and X[{second}] anticommute")
            }
            LogicalZPair { first, second } => {
                write!(f, "logical Z[{first}] and Z[{second}] anticommute")
            }
            LogicalInStabilizer { logical } => write!(f, "{logical} lies in the stabilizer"),
        }
    }
}

/// Every violated code invariant; empty means the code is valid.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub issues: Vec<ValidationIssue>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }
}

/// Classification of `E_α† E_β` against the stabilizer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairClass {
    /// Anticommutes with some generator.
    Detected,
    /// Element of the stabilizer group (phase included).
    InStabilizer,
    /// Commutes with every generator but is not in the stabilizer.
    Undetectable,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairVerdict {
    pub alpha: usize,
    pub beta: usize,
    pub class: PairClass,
}

#[derive(Clone, Debug, Serialize)]
pub struct QeccCheckReport {
    pub pairs: Vec<PairVerdict>,
}

impl QeccCheckReport {
    pub fn passes(&self) -> bool {
        self.violations().next().is_none()
    }

    pub fn violations(&self) -> impl Iterator<Item = &PairVerdict> {
        self.pairs
            .iter()
            .filter(|p| p.class == PairClass::Undetectable)
    }

    pub fn count(&self, class: PairClass) -> usize {
        self.pairs.iter().filter(|p| p.class == class).count()
    }
}

/// Result of a capped distance search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Distance {
    Exact(usize),
    GreaterThan(usize),
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Exact(d) => write!(f, "{d}"),
            Distance::GreaterThan(w) => write!(f, ">{w}"),
        }
    }
}

impl StabilizerCode {
    pub fn new(
        name: impl Into<String>,
        generators: Vec<PauliOperator>,
        logical_x: Vec<PauliOperator>,
        logical_z: Vec<PauliOperator>,
    ) -> Result<Self> {
        let n = generators
            .first()
            .or(logical_x.first())
            .map(|g| g.num_qubits())
            .ok_or_else(|| QecError::Invalid("code needs at least one operator".into()))?;
        if generators.len() > n {
            return Err(QecError::Invalid(format!(
                "{} generators on {n} qubits",
                generators.len()
            )));
        }
        Ok(StabilizerCode {
            name: name.into(),
            n,
            k: n - generators.len(),
            generators,
            logical_x,
            logical_z,
        })
    }

    /// Parses generator and logical labels, e.g. `["ZZI", "IZZ"]`.
    pub fn from_labels(name: &str, gens: &[&str], lx: &[&str], lz: &[&str]) -> Result<Self> {
        let parse =
            |v: &[&str]| -> Result<Vec<PauliOperator>> { v.iter().map(|s| s.parse()).collect() };
        Self::new(name, parse(gens)?, parse(lx)?, parse(lz)?)
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    fn check_error(&self, e: &PauliOperator) -> Result<()> {
        if e.num_qubits() != self.n {
            return Err(QecError::Dimension {
                expected: self.n,
                actual: e.num_qubits(),
            });
        }
        Ok(())
    }

    pub fn validate(&self) -> ValidationReport {
        use ValidationIssue::*;
        let mut issues = Vec::new();
        let all = self
            .generators
            .iter()
            .enumerate()
            .map(|(i, g)| (format!("generator {i}"), g))
            .chain(
                self.logical_x
                    .iter()
                    .enumerate()
                    .map(|(i, g)| (format!("logical X[{i}]"), g)),
            )
            .chain(
                self.logical_z
                    .iter()
                    .enumerate()
                    .map(|(i, g)| (format!("logical Z[{i}]"), g)),
            );
        let mut bad_size = false;
        for (item, op) in all {
            if op.num_qubits() != self.n {
                issues.push(QubitCount {
                    item,
                    expected: self.n,
                    actual: op.num_qubits(),
                });
                bad_size = true;
            } else if !op.is_hermitian() {
                issues.push(NonHermitian { item });
            }
        }
        if bad_size {
            return ValidationReport { issues };
        }
        if self.generators.len() + self.k != self.n {
            issues.push(GeneratorCount {
                expected: self.n - self.k,
                actual: self.generators.len(),
            });
        }
        for i in 0..self.generators.len() {
            for j in i + 1..self.generators.len() {
                if !self.generators[i].commutes_unchecked(&self.generators[j]) {
                    issues.push(AnticommutingGenerators {
                        first: i,
                        second: j,
                    });
                }
            }
        }
        let rank = self.symplectic_matrix().rank();
        if rank != self.generators.len() {
            issues.push(RankDeficient {
                rank,
                expected: self.generators.len(),
            });
        } else if !issues
            .iter()
            .any(|i| matches!(i, AnticommutingGenerators { .. }))
            && self.generators.len() <= 20
            && self
                .stabilizer_elements()
                .iter()
                .any(|s| s.is_identity() && s.phase_exp() != 0)
        {
            issues.push(MinusIdentityInGroup);
        }
        if self.logical_x.len() != self.k || self.logical_z.len() != self.k {
            issues.push(LogicalCount {
                expected: self.k,
                x: self.logical_x.len(),
                z: self.logical_z.len(),
            });
        }
        for (label, ops) in [("X", &self.logical_x), ("Z", &self.logical_z)] {
            for (li, l) in ops.iter().enumerate() {
                for (gi, g) in self.generators.iter().enumerate() {
                    if !l.commutes_unchecked(g) {
                        issues.push(LogicalAnticommutesWithGenerator {
                            logical: format!("logical {label}[{li}]"),
                            generator: gi,
                        });
                    }
                }
                if self.in_stabilizer_span(l) {
                    issues.push(LogicalInStabilizer {
                        logical: format!("logical {label}[{li}]"),
                    });
                }
            }
        }
        for (i, lx) in self.logical_x.iter().enumerate() {
            for (j, lz) in self.logical_z.iter().enumerate() {
                let commute = lx.commutes_unchecked(lz);
                if (i == j) == commute {
                    issues.push(LogicalPairing {
                        x: i,
                        z: j,
                        commute,
                    });
                }
            }
        }
        for i in 0..self.logical_x.len() {
            for j in i + 1..self.logical_x.len() {
                if !self.logical_x[i].commutes_unchecked(&self.logical_x[j]) {
                    issues.push(LogicalXPair {
                        first: i,
                        second: j,
                    });
                }
            }
        }
        for i in 0..self.logical_z.len() {
            for j in i + 1..self.logical_z.len() {
                if !self.logical_z[i].commutes_unchecked(&self.logical_z[j]) {
                    issues.push(LogicalZPair {
                        first: i,
                        second: j,
                    });
                }
            }
        }
        ValidationReport { issues }
    }

    /// Generators as rows `(x | z)` of a `(n-k) × 2n` binary matrix.
    pub fn symplectic_matrix(&self) -> BinaryMatrix {
        BinaryMatrix::from_rows(
            2 * self.n,
            self.generators.iter().map(|g| g.symplectic()).collect(),
        )
        .expect("generators share n")
    }

    pub fn syndrome(&self, error: &PauliOperator) -> Result<Syndrome> {
        self.check_error(error)?;
        Ok(Syndrome(BitVec::from_bools(
            self.generators.iter().map(|g| !g.commutes_unchecked(error)),
        )))
    }

    /// True iff the operator equals a product of generators up to phase.
    pub fn in_stabilizer_span(&self, p: &PauliOperator) -> bool {
        solve_in_row_space(self.symplectic_matrix().rows(), &p.symplectic()).is_some()
    }

    /// The stabilizer element with the same support as `p`, if any.
    pub fn stabilizer_element_matching(&self, p: &PauliOperator) -> Option<PauliOperator> {
        let comb = solve_in_row_space(self.symplectic_matrix().rows(), &p.symplectic())?;
        let mut prod = PauliOperator::identity(self.n);
        for i in comb.ones() {
            prod = &prod * &self.generators[i];
        }
        Some(prod)
    }

    /// Membership in the stabilizer group, phase included.
    pub fn in_stabilizer(&self, p: &PauliOperator) -> bool {
        self.stabilizer_element_matching(p).is_some_and(|s| s == *p)
    }

    pub fn in_normalizer(&self, p: &PauliOperator) -> bool {
        self.generators.iter().all(|g| g.commutes_unchecked(p))
    }

    /// All `2^(n-k)` stabilizer group elements with phases, Gray-code order.
    pub fn stabilizer_elements(&self) -> Vec<PauliOperator> {
        let m = self.generators.len();
        assert!(m <= 24, "stabilizer group too large to enumerate");
        let mut out = Vec::with_capacity(1 << m);
        let mut cur = PauliOperator::identity(self.n);
        // Generators commute, so toggling factors in Gray order multiplies in place.
        out.push(cur.clone());
        for g in 1u64..(1u64 << m) {
            let bit = g.trailing_zeros() as usize;
            cur = &cur * &self.generators[bit];
            out.push(cur.clone());
        }
        out
    }

    /// Classifies `E_α† E_β` for every ordered pair of `errors`.
    pub fn stabilizer_qecc_check(&self, errors: &[PauliOperator]) -> Result<QeccCheckReport> {
        for e in errors {
            self.check_error(e)?;
        }
        let sym = self.symplectic_matrix();
        let mut pairs = Vec::with_capacity(errors.len() * errors.len());
        for (a, ea) in errors.iter().enumerate() {
            let ea_dag = ea.adjoint();
            for (b, eb) in errors.iter().enumerate() {
                let prod = &ea_dag * eb;
                let class = if !self.in_normalizer(&prod) {
                    PairClass::Detected
                } else {
                    match solve_in_row_space(sym.rows(), &prod.symplectic()) {
                        Some(comb) => {
                            let mut s = PauliOperator::identity(self.n);
                            for i in comb.ones() {
                                s = &s * &self.generators[i];
                            }
                            if s == prod {
                                PairClass::InStabilizer
                            } else {
                                PairClass::Undetectable
                            }
                        }
                        None => PairClass::Undetectable,
                    }
                };
                pairs.push(PairVerdict {
                    alpha: a,
                    beta: b,
                    class,
                });
            }
        }
        Ok(QeccCheckReport { pairs })
    }

    /// Minimum weight of a normalizer element outside the stabilizer, searched
    /// exhaustively up to `max_weight`.
    pub fn distance(&self, max_weight: usize) -> Distance {
        let sym = self.symplectic_matrix();
        for w in 1..=max_weight.min(self.n) {
            let found = paulis_of_weight(self.n, w).any(|p| {
                self.in_normalizer(&p) && solve_in_row_space(sym.rows(), &p.symplectic()).is_none()
            });
            if found {
                return Distance::Exact(w);
            }
        }
        Distance::GreaterThan(max_weight)
    }

    /// Canonical minimum-weight representative of `p`'s coset modulo the
    /// stabilizer, ignoring phase. Ties break on the letter string.
    pub fn reduce_modulo_stabilizer(&self, p: &PauliOperator) -> PauliOperator {
        let elems = self.stabilizer_elements();
        reduce_with_elements(&elems, p)
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        format::parse_code(text)
    }

    pub fn to_text(&self) -> String {
        format::write_code(self)
    }
}

/// Minimum-weight coset representative over a precomputed group listing.
pub fn reduce_with_elements(elements: &[PauliOperator], p: &PauliOperator) -> PauliOperator {
    let mut best: Option<(usize, String, PauliOperator)> = None;
    for s in elements {
        let q = (p * s).without_sign();
        let w = q.weight();
        let better = match &best {
            None => true,
            Some((bw, bl, _)) => w < *bw || (w == *bw && q.letters() < *bl),
        };
        if better {
            best = Some((w, q.letters(), q));
        }
    }
    best.map(|b| b.2).unwrap_or_else(|| p.without_sign())
}

/// A built-in code by name, otherwise a code file at that path.
pub fn load_code(name_or_path: &str) -> Result<StabilizerCode> {
    if BUILTIN_NAMES.contains(&name_or_path) {
        return builtin(name_or_path);
    }
    let text = std::fs::read_to_string(name_or_path).map_err(|e| QecError::Unknown {
        what: "code",
        name: format!("{name_or_path} ({e})"),
    })?;
    StabilizerCode::parse_text(&text)
}

pub fn syndrome(code: &StabilizerCode, error: &PauliOperator) -> Result<Syndrome> {
    code.syndrome(error)
}

pub fn validate_code(code: &StabilizerCode) -> ValidationReport {
    code.validate()
}
