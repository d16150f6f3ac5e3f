// Copyright 2026 The qec-workbench Authors
// SPDX-License-Identifier: Apache-2.0

//! Noise channels: i.i.d. Pauli sampling, closed-form qubit channels, Kraus
//! representations and Lindblad (GKS) coefficient matrices.

use nalgebra::Matrix3;
use rand::Rng;
use serde::Serialize;

use crate::dense::{c, gate_constant, max_abs, CMatrix, DensityMatrix, C64};
use crate::error::{QecError, Result};
use crate::pauli::{Pauli1, PauliOperator};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ChannelKind {
    BitFlip,
    PhaseFlip,
    #[serde(rename = "depolarizing_1q")]
    Depolarizing1q,
    #[serde(rename = "depolarizing_2q")]
    Depolarizing2q,
    PhaseDamping,
    DepolarizingMarkov,
    AmplitudeDamping,
}

impl ChannelKind {
    pub fn name(self) -> &'static str {
        match self {
            ChannelKind::BitFlip => "bit_flip",
            ChannelKind::PhaseFlip => "phase_flip",
            ChannelKind::Depolarizing1q => "depolarizing_1q",
            ChannelKind::Depolarizing2q => "depolarizing_2q",
            ChannelKind::PhaseDamping => "phase_damping",
            ChannelKind::DepolarizingMarkov => "depolarizing_markov",
            ChannelKind::AmplitudeDamping => "amplitude_damping",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "bit_flip" => ChannelKind::BitFlip,
            "phase_flip" => ChannelKind::PhaseFlip,
            "depolarizing_1q" | "depolarizing" => ChannelKind::Depolarizing1q,
            "depolarizing_2q" => ChannelKind::Depolarizing2q,
            "phase_damping" => ChannelKind::PhaseDamping,
            "depolarizing_markov" => ChannelKind::DepolarizingMarkov,
            "amplitude_damping" => ChannelKind::AmplitudeDamping,
            other => {
                return Err(QecError::Unknown {
                    what: "channel kind",
                    name: other.to_string(),
                })
            }
        })
    }
}

/// A noise process with its parameters.
///
/// Pauli kinds carry an error rate; the Markovian kinds carry a decay
/// constant (1/time) and a duration.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NoiseChannel {
    BitFlip {
        epsilon: f64,
    },
    PhaseFlip {
        epsilon: f64,
    },
    #[serde(rename = "depolarizing_1q")]
    Depolarizing1q {
        epsilon: f64,
    },
    #[serde(rename = "depolarizing_2q")]
    Depolarizing2q {
        epsilon: f64,
    },
    PhaseDamping {
        gamma: f64,
        t: f64,
    },
    DepolarizingMarkov {
        gamma_tilde: f64,
        t: f64,
    },
    AmplitudeDamping {
        big_gamma: f64,
        t: f64,
    },
}

impl NoiseChannel {
    pub fn bit_flip(epsilon: f64) -> Self {
        NoiseChannel::BitFlip { epsilon }
    }

    pub fn phase_flip(epsilon: f64) -> Self {
        NoiseChannel::PhaseFlip { epsilon }
    }

    pub fn depolarizing(epsilon: f64) -> Self {
        NoiseChannel::Depolarizing1q { epsilon }
    }

    pub fn kind(&self) -> ChannelKind {
        match self {
            NoiseChannel::BitFlip { .. } => ChannelKind::BitFlip,
            NoiseChannel::PhaseFlip { .. } => ChannelKind::PhaseFlip,
            NoiseChannel::Depolarizing1q { .. } => ChannelKind::Depolarizing1q,
            NoiseChannel::Depolarizing2q { .. } => ChannelKind::Depolarizing2q,
            NoiseChannel::PhaseDamping { .. } => ChannelKind::PhaseDamping,
            NoiseChannel::DepolarizingMarkov { .. } => ChannelKind::DepolarizingMarkov,
            NoiseChannel::AmplitudeDamping { .. } => ChannelKind::AmplitudeDamping,
        }
    }

    /// Builds a channel from config-style keys: `epsilon`, `gamma`,
    /// `gamma_tilde`, `big_gamma`, `t`.
    pub fn from_params(kind: &str, get: impl Fn(&str) -> Option<f64>) -> Result<Self> {
        let need = |key: &str| {
            get(key).ok_or_else(|| QecError::Invalid(format!("channel `{kind}` needs `{key}`")))
        };
        let ch = match ChannelKind::parse(kind)? {
            ChannelKind::BitFlip => NoiseChannel::BitFlip {
                epsilon: need("epsilon")?,
            },
            ChannelKind::PhaseFlip => NoiseChannel::PhaseFlip {
                epsilon: need("epsilon")?,
            },
            ChannelKind::Depolarizing1q => NoiseChannel::Depolarizing1q {
                epsilon: need("epsilon")?,
            },
            ChannelKind::Depolarizing2q => NoiseChannel::Depolarizing2q {
                epsilon: need("epsilon")?,
            },
            ChannelKind::PhaseDamping => NoiseChannel::PhaseDamping {
                gamma: need("gamma")?,
                t: need("t")?,
            },
            ChannelKind::DepolarizingMarkov => NoiseChannel::DepolarizingMarkov {
                gamma_tilde: need("gamma_tilde")?,
                t: need("t")?,
            },
            ChannelKind::AmplitudeDamping => NoiseChannel::AmplitudeDamping {
                big_gamma: need("big_gamma")?,
                t: need("t")?,
            },
        };
        ch.validate()?;
        Ok(ch)
    }

    pub fn validate(&self) -> Result<()> {
        let prob = |p: f64| {
            if (0.0..=1.0).contains(&p) {
                Ok(())
            } else {
                Err(QecError::Invalid(format!("probability {p} outside [0, 1]")))
            }
        };
        let rate = |g: f64, t: f64| {
            if g >= 0.0 && t >= 0.0 && g.is_finite() && t.is_finite() {
                Ok(())
            } else {
                Err(QecError::Invalid(format!(
                    "decay constant {g} and duration {t} must be finite and non-negative"
                )))
            }
        };
        match *self {
            NoiseChannel::BitFlip { epsilon }
            | NoiseChannel::PhaseFlip { epsilon }
            | NoiseChannel::Depolarizing1q { epsilon }
            | NoiseChannel::Depolarizing2q { epsilon } => prob(epsilon),
            NoiseChannel::PhaseDamping { gamma, t } => rate(gamma, t),
            NoiseChannel::DepolarizingMarkov { gamma_tilde, t } => rate(gamma_tilde, t),
            NoiseChannel::AmplitudeDamping { big_gamma, t } => rate(big_gamma, t),
        }
    }

    /// Same process with a different error rate (Pauli kinds only).
    pub fn with_epsilon(&self, eps: f64) -> Result<Self> {
        Ok(match self {
            NoiseChannel::BitFlip { .. } => NoiseChannel::BitFlip { epsilon: eps },
            NoiseChannel::PhaseFlip { .. } => NoiseChannel::PhaseFlip { epsilon: eps },
            NoiseChannel::Depolarizing1q { .. } => NoiseChannel::Depolarizing1q { epsilon: eps },
            NoiseChannel::Depolarizing2q { .. } => NoiseChannel::Depolarizing2q { epsilon: eps },
            other => {
                return Err(QecError::Unsupported(format!(
                    "{} has no error rate",
                    other.kind().name()
                )))
            }
        })
    }

    /// Same process over a different duration (Markovian kinds only).
    pub fn with_time(&self, t: f64) -> Result<Self> {
        Ok(match *self {
            NoiseChannel::PhaseDamping { gamma, .. } => NoiseChannel::PhaseDamping { gamma, t },
            NoiseChannel::DepolarizingMarkov { gamma_tilde, .. } => {
                NoiseChannel::DepolarizingMarkov { gamma_tilde, t }
            }
            NoiseChannel::AmplitudeDamping { big_gamma, .. } => {
                NoiseChannel::AmplitudeDamping { big_gamma, t }
            }
            other => {
                return Err(QecError::Unsupported(format!(
                    "{} is not time-parameterized",
                    other.kind().name()
                )))
            }
        })
    }

    pub fn epsilon(&self) -> Option<f64> {
        match *self {
            NoiseChannel::BitFlip { epsilon }
            | NoiseChannel::PhaseFlip { epsilon }
            | NoiseChannel::Depolarizing1q { epsilon }
            | NoiseChannel::Depolarizing2q { epsilon } => Some(epsilon),
            _ => None,
        }
    }

    /// `[P(I), P(X), P(Y), P(Z)]` for the single-qubit Pauli kinds.
    pub fn pauli_probabilities(&self) -> Option<[f64; 4]> {
        match *self {
            NoiseChannel::BitFlip { epsilon } => Some([1.0 - epsilon, epsilon, 0.0, 0.0]),
            NoiseChannel::PhaseFlip { epsilon } => Some([1.0 - epsilon, 0.0, 0.0, epsilon]),
            NoiseChannel::Depolarizing1q { epsilon } => {
                let e = epsilon / 3.0;
                Some([1.0 - epsilon, e, e, e])
            }
            _ => None,
        }
    }

    pub fn arity(&self) -> usize {
        if let NoiseChannel::Depolarizing2q { .. } = self {
            2
        } else {
            1
        }
    }
}

/// Error rate of a samplable single-qubit Pauli channel.
pub(crate) fn sampling_rate(channel: &NoiseChannel) -> Result<f64> {
    match channel {
        NoiseChannel::BitFlip { epsilon }
        | NoiseChannel::PhaseFlip { epsilon }
        | NoiseChannel::Depolarizing1q { epsilon } => Ok(*epsilon),
        other => Err(QecError::Unsupported(format!(
            "cannot sample Pauli errors from {}",
            other.kind().name()
        ))),
    }
}

/// Maps one uniform draw `u ∈ [0, 1)` to a Pauli letter.
#[inline]
pub(crate) fn letter_from_uniform(channel: &NoiseChannel, eps: f64, u: f64) -> Pauli1 {
    if u >= eps {
        return Pauli1::I;
    }
    match channel {
        NoiseChannel::BitFlip { .. } => Pauli1::X,
        NoiseChannel::PhaseFlip { .. } => Pauli1::Z,
        _ => Pauli1::NON_IDENTITY[((u / eps * 3.0) as usize).min(2)],
    }
}

/// Draws one error under the independent model: every qubit independently
/// suffers the channel's Pauli distribution, one uniform draw per qubit in
/// qubit order.
pub fn sample_pauli_error<R: Rng + ?Sized>(
    n: usize,
    channel: &NoiseChannel,
    rng: &mut R,
) -> Result<PauliOperator> {
    let eps = sampling_rate(channel)?;
    let mut e = PauliOperator::identity(n);
    for q in 0..n {
        let p = letter_from_uniform(channel, eps, rng.random());
        if p != Pauli1::I {
            e.set(q, p);
        }
    }
    Ok(e)
}

/// Operators `M_μ` of an operator-sum representation.
#[derive(Clone, Debug)]
pub struct KrausSet {
    pub operators: Vec<CMatrix>,
}

impl KrausSet {
    pub fn dim(&self) -> usize {
        self.operators.first().map_or(0, |m| m.nrows())
    }

    /// `max |Σ M†M − I|`.
    pub fn completeness_error(&self) -> f64 {
        let d = self.dim();
        let sum = self
            .operators
            .iter()
            .fold(CMatrix::zeros(d, d), |acc, m| acc + m.adjoint() * m);
        max_abs(&(sum - CMatrix::identity(d, d)))
    }

    /// `ρ ↦ Σ M ρ M†`.
    pub fn apply(&self, rho: &CMatrix) -> CMatrix {
        let d = self.dim();
        self.operators
            .iter()
            .fold(CMatrix::zeros(d, d), |acc, m| acc + m * rho * m.adjoint())
    }
}

fn scaled(name: &str, s: f64) -> CMatrix {
    gate_constant(name).expect("known gate") * c(s, 0.0)
}

/// Kraus operators whose induced map reproduces the channel's closed form.
///
/// Phase damping uses `√((1+λ)/2)·I, √((1−λ)/2)·Z` with `λ = e^{−γt}`;
/// amplitude damping uses `diag(1, √λ)` and `√(1−λ)|0⟩⟨1|` with `λ = e^{−Γt}`.
pub fn kraus_set(channel: &NoiseChannel) -> Result<KrausSet> {
    channel.validate()?;
    let ops = match *channel {
        NoiseChannel::BitFlip { epsilon } => vec![
            scaled("I", (1.0 - epsilon).sqrt()),
            scaled("X", epsilon.sqrt()),
        ],
        NoiseChannel::PhaseFlip { epsilon } => vec![
            scaled("I", (1.0 - epsilon).sqrt()),
            scaled("Z", epsilon.sqrt()),
        ],
        NoiseChannel::Depolarizing1q { epsilon } => {
            if epsilon == 0.0 {
                vec![scaled("I", 1.0)]
            } else {
                let e = (epsilon / 3.0).sqrt();
                vec![
                    scaled("I", (1.0 - epsilon).sqrt()),
                    scaled("X", e),
                    scaled("Y", e),
                    scaled("Z", e),
                ]
            }
        }
        NoiseChannel::Depolarizing2q { epsilon } => {
            let names = ["I", "X", "Y", "Z"];
            let mut v = Vec::with_capacity(16);
            for a in names {
                for b in names {
                    let w = if a == "I" && b == "I" {
                        1.0 - epsilon
                    } else {
                        epsilon / 15.0
                    };
                    let m = gate_constant(a)
                        .expect("known")
                        .kronecker(&gate_constant(b).expect("known"));
                    v.push(m * c(w.sqrt(), 0.0));
                }
            }
            v
        }
        NoiseChannel::PhaseDamping { gamma, t } => {
            let l = (-gamma * t).exp();
            vec![
                scaled("I", ((1.0 + l) / 2.0).sqrt()),
                scaled("Z", ((1.0 - l) / 2.0).sqrt()),
            ]
        }
        NoiseChannel::DepolarizingMarkov { gamma_tilde, t } => {
            let l = (-gamma_tilde * t).exp();
            let e = ((1.0 - l) / 4.0).sqrt();
            vec![
                scaled("I", ((1.0 + 3.0 * l) / 4.0).sqrt()),
                scaled("X", e),
                scaled("Y", e),
                scaled("Z", e),
            ]
        }
        NoiseChannel::AmplitudeDamping { big_gamma, t } => {
            let l = (-big_gamma * t).exp();
            let mut m0 = CMatrix::zeros(2, 2);
            m0[(0, 0)] = c(1.0, 0.0);
            m0[(1, 1)] = c(l.sqrt(), 0.0);
            let mut m1 = CMatrix::zeros(2, 2);
            m1[(0, 1)] = c((1.0 - l).sqrt(), 0.0);
            vec![m0, m1]
        }
    };
    Ok(KrausSet { operators: ops })
}

/// Closed-form action on an arbitrary operator (linear in `rho`).
pub(crate) fn act_linear(channel: &NoiseChannel, rho: &CMatrix) -> CMatrix {
    let d = rho.nrows();
    let tr = rho.trace();
    match *channel {
        NoiseChannel::BitFlip { epsilon } => {
            let mut flipped = CMatrix::zeros(2, 2);
            for i in 0..2 {
                for j in 0..2 {
                    flipped[(i, j)] = rho[(1 - i, 1 - j)];
                }
            }
            rho * c(1.0 - epsilon, 0.0) + flipped * c(epsilon, 0.0)
        }
        NoiseChannel::PhaseFlip { epsilon } => {
            let mut out = rho.clone();
            out[(0, 1)] *= 1.0 - 2.0 * epsilon;
            out[(1, 0)] *= 1.0 - 2.0 * epsilon;
            out
        }
        // Σ_{P≠I} PρP = 2·tr(ρ)·I − ρ on one qubit
        NoiseChannel::Depolarizing1q { epsilon } => {
            rho * c(1.0 - 4.0 * epsilon / 3.0, 0.0)
                + CMatrix::identity(d, d) * (tr * (2.0 * epsilon / 3.0))
        }
        // Σ_{P≠I} PρP = 4·tr(ρ)·I − ρ on two qubits
        NoiseChannel::Depolarizing2q { epsilon } => {
            rho * c(1.0 - 16.0 * epsilon / 15.0, 0.0)
                + CMatrix::identity(d, d) * (tr * (4.0 * epsilon / 15.0))
        }
        NoiseChannel::PhaseDamping { gamma, t } => {
            let l = (-gamma * t).exp();
            let mut out = rho.clone();
            out[(0, 1)] *= l;
            out[(1, 0)] *= l;
            out
        }
        NoiseChannel::DepolarizingMarkov { gamma_tilde, t } => {
            let l = (-gamma_tilde * t).exp();
            let diff = rho[(0, 0)] - rho[(1, 1)];
            let mut out = CMatrix::zeros(2, 2);
            out[(0, 0)] = (tr + diff * l) / 2.0;
            out[(1, 1)] = (tr - diff * l) / 2.0;
            out[(0, 1)] = rho[(0, 1)] * l;
            out[(1, 0)] = rho[(1, 0)] * l;
            out
        }
        NoiseChannel::AmplitudeDamping { big_gamma, t } => {
            let l = (-big_gamma * t).exp();
            let h = (-big_gamma * t / 2.0).exp();
            let mut out = CMatrix::zeros(2, 2);
            out[(0, 0)] = rho[(0, 0)] + rho[(1, 1)] * (1.0 - l);
            out[(1, 1)] = rho[(1, 1)] * l;
            out[(0, 1)] = rho[(0, 1)] * h;
            out[(1, 0)] = rho[(1, 0)] * h;
            out
        }
    }
}

/// Applies the channel's closed-form action to a validated density matrix.
pub fn apply_channel(rho: &DensityMatrix, channel: &NoiseChannel) -> Result<DensityMatrix> {
    channel.validate()?;
    if rho.num_qubits() != channel.arity() {
        return Err(QecError::Dimension {
            expected: channel.arity(),
            actual: rho.num_qubits(),
        });
    }
    rho.validate()?;
    DensityMatrix::unchecked(act_linear(channel, rho.matrix()))
}

/// Matrix units `|i⟩⟨j|` spanning all operators of dimension `d`.
pub(crate) fn matrix_units(d: usize) -> Vec<CMatrix> {
    let mut out = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            let mut m = CMatrix::zeros(d, d);
            m[(i, j)] = c(1.0, 0.0);
            out.push(m);
        }
    }
    out
}

/// Largest entrywise gap between the Kraus-induced map and the closed form
/// over a full operator basis.
pub fn kraus_closed_form_deviation(channel: &NoiseChannel) -> Result<f64> {
    let k = kraus_set(channel)?;
    Ok(matrix_units(k.dim())
        .iter()
        .map(|e| max_abs(&(k.apply(e) - act_linear(channel, e))))
        .fold(0.0, f64::max))
}

/// `max ‖ℰ_{t1}∘ℰ_{t2}(E) − ℰ_{t1+t2}(E)‖` over the matrix-unit basis.
pub fn compose(channel: &NoiseChannel, t1: f64, t2: f64) -> Result<f64> {
    let (a, b, ab) = (
        channel.with_time(t1)?,
        channel.with_time(t2)?,
        channel.with_time(t1 + t2)?,
    );
    for ch in [&a, &b] {
        ch.validate()?;
    }
    Ok(matrix_units(2)
        .iter()
        .map(|e| max_abs(&(act_linear(&a, &act_linear(&b, e)) - act_linear(&ab, e))))
        .fold(0.0, f64::max))
}

/// Semigroup deviation on a specific state.
pub fn semigroup_deviation(
    channel: &NoiseChannel,
    rho: &DensityMatrix,
    t1: f64,
    t2: f64,
) -> Result<f64> {
    let first = apply_channel(rho, &channel.with_time(t2)?)?;
    let both = apply_channel(&first, &channel.with_time(t1)?)?;
    let direct = apply_channel(rho, &channel.with_time(t1 + t2)?)?;
    Ok(max_abs(&(both.matrix() - direct.matrix())))
}

/// A random full-rank qubit state `AA†/tr(AA†)` with entries of `A` uniform
/// in the unit square.
pub fn random_qubit_density<R: Rng + ?Sized>(rng: &mut R) -> DensityMatrix {
    let a = CMatrix::from_fn(2, 2, |_, _| {
        c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    });
    let m = &a * a.adjoint();
    let tr = m.trace();
    DensityMatrix::new(m / tr).expect("AA† is a valid state")
}

/// Lindblad coefficients `a_{αβ}` in the basis `{σx, σy, σz}/√2`.
#[derive(Clone, Debug, PartialEq)]
pub struct GksMatrix(pub Matrix3<C64>);

impl GksMatrix {
    pub fn hermiticity_error(&self) -> f64 {
        (self.0 - self.0.adjoint())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        let h = (self.0 + self.0.adjoint()) * c(0.5, 0.0);
        h.symmetric_eigenvalues().iter().copied().collect()
    }

    pub fn is_psd(&self) -> bool {
        self.hermiticity_error() < 1e-12 && self.eigenvalues().iter().all(|&e| e >= -1e-12)
    }
}

pub fn gks_matrix(channel: &NoiseChannel) -> Result<GksMatrix> {
    let z = C64::default();
    let m = match *channel {
        NoiseChannel::PhaseDamping { gamma, .. } => {
            Matrix3::new(z, z, z, z, z, z, z, z, c(gamma / 2.0, 0.0))
        }
        NoiseChannel::DepolarizingMarkov { gamma_tilde, .. } => {
            Matrix3::from_diagonal_element(c(gamma_tilde / 4.0, 0.0))
        }
        NoiseChannel::AmplitudeDamping { big_gamma, .. } => {
            let g = big_gamma / 4.0;
            Matrix3::new(c(g, 0.0), c(0.0, -g), z, c(0.0, g), c(g, 0.0), z, z, z, z)
        }
        other => {
            return Err(QecError::Unsupported(format!(
                "{} has no Lindblad generator here",
                other.kind().name()
            )))
        }
    };
    Ok(GksMatrix(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::StateVector;
    use crate::rng::trial_rng;

    fn rho_from(entries: [[C64; 2]; 2]) -> DensityMatrix {
        DensityMatrix::new(CMatrix::from_row_slice(
            2,
            2,
            &[entries[0][0], entries[0][1], entries[1][0], entries[1][1]],
        ))
        .unwrap()
    }

    fn sample_rho() -> DensityMatrix {
        rho_from([[c(0.7, 0.0), c(0.2, -0.1)], [c(0.2, 0.1), c(0.3, 0.0)]])
    }

    #[test]
    fn sampling_edge_rates() {
        let mut rng = trial_rng(1, 0);
        for _ in 0..100 {
            let e = sample_pauli_error(5, &NoiseChannel::depolarizing(0.0), &mut rng).unwrap();
            assert!(e.is_identity());
        }
        let e = sample_pauli_error(3, &NoiseChannel::bit_flip(1.0), &mut rng).unwrap();
        assert_eq!(e.to_string(), "XXX");
        let e = sample_pauli_error(3, &NoiseChannel::phase_flip(1.0), &mut rng).unwrap();
        assert_eq!(e.to_string(), "ZZZ");
        let pd = NoiseChannel::PhaseDamping { gamma: 1.0, t: 1.0 };
        assert!(sample_pauli_error(3, &pd, &mut rng).is_err());
    }

    #[test]
    fn depolarizing_frequencies() {
        let eps = 0.1;
        let draws = 1_000_000u64;
        let mut rng = trial_rng(2024, 0);
        let mut counts = [0u64; 4];
        let ch = NoiseChannel::depolarizing(eps);
        for _ in 0..draws {
            let e = sample_pauli_error(1, &ch, &mut rng).unwrap();
            counts[e.get(0) as usize] += 1;
        }
        let px = counts[1] as f64 / draws as f64;
        let sigma = ((eps / 3.0) * (1.0 - eps / 3.0) / draws as f64).sqrt();
        assert!((px - eps / 3.0).abs() < 3.0 * sigma, "P(X) = {px}");
        // chi-square with 3 degrees of freedom; 16.27 is the p = 0.001 cut
        let expected = [1.0 - eps, eps / 3.0, eps / 3.0, eps / 3.0];
        let chi2: f64 = counts
            .iter()
            .zip(expected)
            .map(|(&o, p)| {
                let e = p * draws as f64;
                (o as f64 - e).powi(2) / e
            })
            .sum();
        assert!(chi2 < 16.27, "chi2 = {chi2}");
    }

    #[test]
    fn kraus_sets_are_complete_and_match_closed_forms() {
        let channels = [
            NoiseChannel::bit_flip(0.2),
            NoiseChannel::phase_flip(0.3),
            NoiseChannel::depolarizing(0.25),
            NoiseChannel::Depolarizing2q { epsilon: 0.15 },
            NoiseChannel::PhaseDamping { gamma: 0.7, t: 1.3 },
            NoiseChannel::DepolarizingMarkov {
                gamma_tilde: 0.4,
                t: 2.0,
            },
            NoiseChannel::AmplitudeDamping {
                big_gamma: 1.1,
                t: 0.9,
            },
        ];
        for ch in channels {
            let k = kraus_set(&ch).unwrap();
            assert!(k.completeness_error() < 1e-12, "{ch:?}");
            assert!(kraus_closed_form_deviation(&ch).unwrap() < 1e-12, "{ch:?}");
        }
        assert_eq!(
            kraus_set(&NoiseChannel::Depolarizing2q { epsilon: 0.1 })
                .unwrap()
                .operators
                .len(),
            16
        );
    }

    #[test]
    fn zero_rate_depolarizing_is_identity() {
        let k = kraus_set(&NoiseChannel::depolarizing(0.0)).unwrap();
        assert_eq!(k.operators.len(), 1);
        assert!(max_abs(&(&k.operators[0] - CMatrix::identity(2, 2))) < 1e-15);
    }

    #[test]
    fn phase_damping_action() {
        let (g, t) = (0.5, 2.0);
        let rho = sample_rho();
        let out = apply_channel(&rho, &NoiseChannel::PhaseDamping { gamma: g, t }).unwrap();
        let l = (-g * t).exp();
        assert!((out.matrix()[(0, 1)] - rho.matrix()[(0, 1)] * l).norm() < 1e-15);
        assert_eq!(out.matrix()[(0, 0)], rho.matrix()[(0, 0)]);
        let limit =
            apply_channel(&rho, &NoiseChannel::PhaseDamping { gamma: 1.0, t: 1e4 }).unwrap();
        assert!(limit.matrix()[(0, 1)].norm() < 1e-300);
        assert_eq!(limit.matrix()[(1, 1)], rho.matrix()[(1, 1)]);
    }

    #[test]
    fn amplitude_damping_action() {
        let rho = sample_rho();
        let (g, t) = (1.0, 0.7);
        let out = apply_channel(&rho, &NoiseChannel::AmplitudeDamping { big_gamma: g, t }).unwrap();
        let l = (-g * t).exp();
        let m = rho.matrix();
        assert!((out.matrix()[(1, 1)] - m[(1, 1)] * l).norm() < 1e-15);
        assert!((out.matrix()[(0, 0)] - (m[(0, 0)] + m[(1, 1)] * (1.0 - l))).norm() < 1e-15);
        assert!((out.matrix()[(0, 1)] - m[(0, 1)] * (-g * t / 2.0).exp()).norm() < 1e-15);

        let ground = DensityMatrix::from_state(&StateVector::zero(1)).unwrap();
        for (g, t) in [(0.1, 1.0), (5.0, 3.0), (0.0, 0.0)] {
            let out = apply_channel(&ground, &NoiseChannel::AmplitudeDamping { big_gamma: g, t })
                .unwrap();
            assert!(max_abs(&(out.matrix() - ground.matrix())) < 1e-15);
        }
    }

    #[test]
    fn depolarizing_markov_at_ln2() {
        let ground = DensityMatrix::from_state(&StateVector::zero(1)).unwrap();
        let ch = NoiseChannel::DepolarizingMarkov {
            gamma_tilde: 1.0,
            t: std::f64::consts::LN_2,
        };
        let out = apply_channel(&ground, &ch).unwrap();
        assert!((out.matrix()[(0, 0)] - c(0.75, 0.0)).norm() < 1e-15);
        assert!((out.matrix()[(1, 1)] - c(0.25, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn apply_channel_rejects_bad_inputs() {
        let rho = sample_rho();
        assert!(apply_channel(&rho, &NoiseChannel::Depolarizing2q { epsilon: 0.1 }).is_err());
        let bad = DensityMatrix::unchecked(CMatrix::identity(2, 2)).unwrap();
        assert!(apply_channel(&bad, &NoiseChannel::bit_flip(0.1)).is_err());
        assert!(apply_channel(&rho, &NoiseChannel::bit_flip(1.5)).is_err());
    }

    #[test]
    fn gks_examples() {
        let pd = gks_matrix(&NoiseChannel::PhaseDamping { gamma: 2.0, t: 0.0 }).unwrap();
        assert_eq!(
            pd.0,
            Matrix3::from_diagonal(&nalgebra::Vector3::new(
                c(0.0, 0.0),
                c(0.0, 0.0),
                c(1.0, 0.0)
            ))
        );
        let dep = gks_matrix(&NoiseChannel::DepolarizingMarkov {
            gamma_tilde: 4.0,
            t: 0.0,
        })
        .unwrap();
        assert_eq!(dep.0, Matrix3::identity());
        let ad = gks_matrix(&NoiseChannel::AmplitudeDamping {
            big_gamma: 4.0,
            t: 0.0,
        })
        .unwrap();
        let want = Matrix3::new(
            c(1.0, 0.0),
            c(0.0, -1.0),
            c(0.0, 0.0),
            c(0.0, 1.0),
            c(1.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
        );
        assert_eq!(ad.0, want);
        for m in [pd, dep, ad] {
            assert!(m.is_psd());
        }
        assert!(gks_matrix(&NoiseChannel::bit_flip(0.1)).is_err());
    }

    #[test]
    fn semigroup_examples() {
        let pd = NoiseChannel::PhaseDamping { gamma: 0.3, t: 0.0 };
        assert!(compose(&pd, 1.0, 1.0).unwrap() < 1e-12);
        let ad = NoiseChannel::AmplitudeDamping {
            big_gamma: 1.0,
            t: 0.0,
        };
        assert!(compose(&ad, 0.5, 1.5).unwrap() < 1e-12);
        let dep = NoiseChannel::DepolarizingMarkov {
            gamma_tilde: 0.8,
            t: 0.0,
        };
        assert!(compose(&dep, 0.25, 3.0).unwrap() < 1e-12);
        // ℰ₀ is the identity map
        for ch in [pd, ad, dep] {
            let id = ch.with_time(0.0).unwrap();
            for e in matrix_units(2) {
                assert!(max_abs(&(act_linear(&id, &e) - &e)) < 1e-15);
            }
        }
        assert!(compose(&NoiseChannel::bit_flip(0.1), 1.0, 1.0).is_err());
    }

    #[test]
    fn from_params_reads_config_keys() {
        let ch = NoiseChannel::from_params("amplitude_damping", |k| match k {
            "big_gamma" => Some(2.0),
            "t" => Some(0.5),
            _ => None,
        })
        .unwrap();
        assert_eq!(
            ch,
            NoiseChannel::AmplitudeDamping {
                big_gamma: 2.0,
                t: 0.5
            }
        );
        assert!(NoiseChannel::from_params("bit_flip", |_| None).is_err());
        assert!(NoiseChannel::from_params("bit_flip", |_| Some(2.0)).is_err());
        assert!(NoiseChannel::from_params("spin_boson", |_| Some(0.1)).is_err());
    }
}
