// Copyright 2026 The qec-workbench Authors
// SPDX-License-Identifier: Apache-2.0

//! Logical error rates under the independent (code-capacity) error model:
//! lookup-table decoding, Monte Carlo estimation, exact enumeration, and
//! concatenation recursions with their thresholds.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bits::BitVec;
use crate::codes::{StabilizerCode, Syndrome};
use crate::error::{QecError, Result};
use crate::gadgets::repeat_twice;
use crate::gf2::rank;
use crate::noise::{letter_from_uniform, sampling_rate, NoiseChannel};
use crate::pauli::{paulis_of_weight, Pauli1, PauliOperator};
use crate::rng::trial_rng;

/// Largest syndrome length the lookup table accepts.
pub const MAX_TABLE_BITS: usize = 24;
/// Largest block the mask-based kernels handle.
pub const MAX_MASK_QUBITS: usize = 64;
/// Largest block `exact_logical_rate` enumerates.
pub const MAX_EXACT_QUBITS: usize = 9;

#[inline]
fn symplectic_odd(ax: u64, az: u64, bx: u64, bz: u64) -> bool {
    ((ax & bz) ^ (az & bx)).count_ones() & 1 == 1
}

fn to_masks(p: &PauliOperator) -> (u64, u64) {
    (p.x_bits().to_u64(), p.z_bits().to_u64())
}

fn from_masks(n: usize, x: u64, z: u64) -> PauliOperator {
    PauliOperator::hermitian_from_bits(BitVec::from_u64(n, x), BitVec::from_u64(n, z))
        .expect("equal lengths")
}

/// Syndrome-indexed table of minimum-weight corrections.
#[derive(Clone, Debug)]
pub struct Decoder {
    n: usize,
    num_bits: usize,
    x_masks: Vec<u64>,
    z_masks: Vec<u64>,
    table: Vec<(u64, u64)>,
    reachable: Vec<bool>,
    logicals: Vec<(u64, u64)>,
}

/// Builds the lookup decoder. Ties between equal-weight corrections go to
/// the lexicographically smallest letter string; syndromes no Pauli
/// produces map to the identity and are flagged unreachable.
pub fn build_decoder(code: &StabilizerCode) -> Result<Decoder> {
    let n = code.n;
    let r = code.generators.len();
    if r > MAX_TABLE_BITS {
        return Err(QecError::TooLarge(format!(
            "{r} syndrome bits exceed the {MAX_TABLE_BITS}-bit lookup table"
        )));
    }
    if n > MAX_MASK_QUBITS {
        return Err(QecError::TooLarge(format!(
            "{n} qubits exceed {MAX_MASK_QUBITS}"
        )));
    }
    let mut x_masks = vec![0u64; n];
    let mut z_masks = vec![0u64; n];
    for (i, g) in code.generators.iter().enumerate() {
        for q in 0..n {
            if g.z_bits().get(q) {
                x_masks[q] |= 1 << i;
            }
            if g.x_bits().get(q) {
                z_masks[q] |= 1 << i;
            }
        }
    }
    let reachable_count = 1usize << rank(&code.symplectic_matrix());
    let size = 1usize << r;
    let mut table = vec![(0u64, 0u64); size];
    let mut reachable = vec![false; size];
    let mut filled = 0usize;
    let syn = |x: u64, z: u64| -> usize {
        let mut s = 0u64;
        for q in 0..n {
            if x >> q & 1 == 1 {
                s ^= x_masks[q];
            }
            if z >> q & 1 == 1 {
                s ^= z_masks[q];
            }
        }
        s as usize
    };
    for w in 0..=n {
        if filled == reachable_count {
            break;
        }
        let mut best: Vec<Option<String>> = vec![None; size];
        for p in paulis_of_weight(n, w) {
            let (x, z) = to_masks(&p);
            let s = syn(x, z);
            if reachable[s] {
                continue;
            }
            let letters = p.letters();
            if best[s].as_ref().is_none_or(|b| letters < *b) {
                best[s] = Some(letters);
                table[s] = (x, z);
            }
        }
        for (s, b) in best.iter().enumerate() {
            if b.is_some() {
                reachable[s] = true;
                filled += 1;
            }
        }
    }
    let logicals = code
        .logical_x
        .iter()
        .chain(&code.logical_z)
        .map(to_masks)
        .collect();
    Ok(Decoder {
        n,
        num_bits: r,
        x_masks,
        z_masks,
        table,
        reachable,
        logicals,
    })
}

impl Decoder {
    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn num_syndrome_bits(&self) -> usize {
        self.num_bits
    }

    #[inline]
    fn syndrome_index(&self, x: u64, z: u64) -> usize {
        let mut s = 0u64;
        let (mut xs, mut zs) = (x, z);
        while xs != 0 {
            let q = xs.trailing_zeros() as usize;
            s ^= self.x_masks[q];
            xs &= xs - 1;
        }
        while zs != 0 {
            let q = zs.trailing_zeros() as usize;
            s ^= self.z_masks[q];
            zs &= zs - 1;
        }
        s as usize
    }

    fn check_syndrome(&self, s: &Syndrome) -> Result<usize> {
        if s.0.len() != self.num_bits {
            return Err(QecError::Dimension {
                expected: self.num_bits,
                actual: s.0.len(),
            });
        }
        Ok(s.0.to_u64() as usize)
    }

    /// The correction for `s`.
    pub fn decode(&self, s: &Syndrome) -> Result<PauliOperator> {
        let (x, z) = self.table[self.check_syndrome(s)?];
        Ok(from_masks(self.n, x, z))
    }

    /// False for syndromes that no Pauli error produces.
    pub fn is_reachable(&self, s: &Syndrome) -> Result<bool> {
        Ok(self.reachable[self.check_syndrome(s)?])
    }

    pub fn unreachable_count(&self) -> usize {
        self.reachable.iter().filter(|r| !**r).count()
    }

    /// Whether residual `(x, z)` acts nontrivially on the logical qubits.
    #[inline]
    fn logical_flip(&self, x: u64, z: u64) -> bool {
        self.logicals
            .iter()
            .any(|&(lx, lz)| symplectic_odd(x, z, lx, lz))
    }

    #[inline]
    fn fails(&self, ex: u64, ez: u64) -> bool {
        let (cx, cz) = self.table[self.syndrome_index(ex, ez)];
        let (rx, rz) = (ex ^ cx, ez ^ cz);
        debug_assert_eq!(self.syndrome_index(rx, rz), 0);
        self.logical_flip(rx, rz)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialResult {
    pub sampled_error: PauliOperator,
    pub syndrome: Syndrome,
    pub correction: PauliOperator,
    pub logical_failure: bool,
}

#[inline]
fn sample_masks<R: Rng + ?Sized>(
    n: usize,
    channel: &NoiseChannel,
    eps: f64,
    rng: &mut R,
) -> (u64, u64) {
    let (mut x, mut z) = (0u64, 0u64);
    for q in 0..n {
        let (bx, bz) = letter_from_uniform(channel, eps, rng.random()).bits();
        x |= (bx as u64) << q;
        z |= (bz as u64) << q;
    }
    (x, z)
}

fn check_code(code: &StabilizerCode, decoder: &Decoder) -> Result<()> {
    if code.n != decoder.n || code.generators.len() != decoder.num_bits {
        return Err(QecError::Invalid(format!(
            "decoder was not built for {}",
            code.name
        )));
    }
    Ok(())
}

/// Decodes a given error with the ideal syndrome.
pub fn run_forced(
    code: &StabilizerCode,
    decoder: &Decoder,
    error: &PauliOperator,
) -> Result<TrialResult> {
    check_code(code, decoder)?;
    if error.num_qubits() != code.n {
        return Err(QecError::Dimension {
            expected: code.n,
            actual: error.num_qubits(),
        });
    }
    let syndrome = code.syndrome(error)?;
    let correction = decoder.decode(&syndrome)?;
    let residual = error.multiply(&correction)?;
    if !code.in_normalizer(&residual) {
        return Err(QecError::Invalid(format!(
            "residual {residual} left the normalizer"
        )));
    }
    let (rx, rz) = to_masks(&residual);
    Ok(TrialResult {
        sampled_error: error.clone(),
        syndrome,
        correction,
        logical_failure: decoder.logical_flip(rx, rz),
    })
}

/// Samples an error, decodes it, and reports whether the residual is a
/// nontrivial logical operator.
pub fn run_trial<R: Rng + ?Sized>(
    code: &StabilizerCode,
    decoder: &Decoder,
    channel: &NoiseChannel,
    rng: &mut R,
) -> Result<TrialResult> {
    let eps = sampling_rate(channel)?;
    let (x, z) = sample_masks(code.n, channel, eps, rng);
    run_forced(code, decoder, &from_masks(code.n, x, z))
}

/// As [`run_trial`], but the syndrome is measured with per-bit flip
/// probability `q` and accepted by the repeat-twice rule. A residual outside
/// the stabilizer group counts as a failure.
pub fn run_trial_noisy_syndrome<R: Rng + ?Sized>(
    code: &StabilizerCode,
    decoder: &Decoder,
    channel: &NoiseChannel,
    q: f64,
    rng: &mut R,
) -> Result<TrialResult> {
    check_code(code, decoder)?;
    let eps = sampling_rate(channel)?;
    let (x, z) = sample_masks(code.n, channel, eps, rng);
    let error = from_masks(code.n, x, z);
    let truth = code.syndrome(&error)?;
    let accepted = repeat_twice(|_| truth.0.clone(), q, rng)?;
    let syndrome = Syndrome(accepted.syndrome);
    let correction = decoder.decode(&syndrome)?;
    let (cx, cz) = to_masks(&correction);
    let (rx, rz) = (x ^ cx, z ^ cz);
    Ok(TrialResult {
        sampled_error: error,
        syndrome,
        correction,
        logical_failure: decoder.syndrome_index(rx, rz) != 0 || decoder.logical_flip(rx, rz),
    })
}

/// One point of a logical-error-rate estimate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RatePoint {
    pub epsilon: f64,
    pub trials: u64,
    pub failures: u64,
    pub estimate: f64,
    pub stderr: f64,
    pub seed: u64,
}

impl RatePoint {
    pub fn new(epsilon: f64, trials: u64, failures: u64, seed: u64) -> Self {
        let p = failures as f64 / trials as f64;
        RatePoint {
            epsilon,
            trials,
            failures,
            estimate: p,
            stderr: (p * (1.0 - p) / trials as f64).sqrt(),
            seed,
        }
    }

    /// `|estimate − value|` in standard errors; infinite when the estimate
    /// has zero spread but misses.
    pub fn sigmas_from(&self, value: f64) -> f64 {
        let d = (self.estimate - value).abs();
        if d == 0.0 {
            0.0
        } else {
            d / self.stderr
        }
    }
}

/// Counts trial indices in `0..trials` for which `fail` holds. With
/// `workers == 0` the global pool is used. The count never depends on the
/// pool size.
pub fn count_failures(
    trials: u64,
    workers: usize,
    fail: impl Fn(u64) -> bool + Sync + Send,
) -> Result<u64> {
    let run = || (0..trials).into_par_iter().filter(|&j| fail(j)).count() as u64;
    if workers == 0 {
        return Ok(run());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| QecError::Invalid(format!("thread pool: {e}")))?;
    Ok(pool.install(run))
}

/// Monte Carlo estimate with a prebuilt decoder.
pub fn logical_error_rate_with(
    decoder: &Decoder,
    channel: &NoiseChannel,
    trials: u64,
    master_seed: u64,
    workers: usize,
) -> Result<RatePoint> {
    if trials == 0 {
        return Err(QecError::Invalid("trials must be at least 1".into()));
    }
    channel.validate()?;
    let eps = sampling_rate(channel)?;
    let n = decoder.n;
    let failures = count_failures(trials, workers, |j| {
        let mut rng = trial_rng(master_seed, j);
        let (x, z) = sample_masks(n, channel, eps, &mut rng);
        decoder.fails(x, z)
    })?;
    Ok(RatePoint::new(eps, trials, failures, master_seed))
}

/// Monte Carlo estimate of the logical failure probability. Trial `j` uses
/// the stream `(master_seed, j)`, so the result is identical for every
/// worker count.
pub fn logical_error_rate(
    code: &StabilizerCode,
    channel: &NoiseChannel,
    trials: u64,
    master_seed: u64,
    workers: usize,
) -> Result<RatePoint> {
    let decoder = build_decoder(code)?;
    logical_error_rate_with(&decoder, channel, trials, master_seed, workers)
}

/// Exact failure probability summed over all `4^n` error patterns.
pub fn exact_logical_rate(code: &StabilizerCode, channel: &NoiseChannel) -> Result<f64> {
    let n = code.n;
    if n > MAX_EXACT_QUBITS {
        return Err(QecError::TooLarge(format!(
            "exact enumeration limited to {MAX_EXACT_QUBITS} qubits, code has {n}"
        )));
    }
    channel.validate()?;
    let probs = channel.pauli_probabilities().ok_or_else(|| {
        QecError::Unsupported(format!(
            "{} is not a single-qubit Pauli channel",
            channel.kind().name()
        ))
    })?;
    let decoder = build_decoder(code)?;
    let letters = [Pauli1::I, Pauli1::X, Pauli1::Y, Pauli1::Z];
    let live: Vec<usize> = (0..4).filter(|&i| probs[i] > 0.0).collect();
    let total = live.len().pow(n as u32);
    let mut failed = 0.0;
    let mut digits = vec![0usize; n];
    for _ in 0..total {
        let (mut x, mut z, mut p) = (0u64, 0u64, 1.0);
        for (q, &d) in digits.iter().enumerate() {
            let li = live[d];
            let (bx, bz) = letters[li].bits();
            x |= (bx as u64) << q;
            z |= (bz as u64) << q;
            p *= probs[li];
        }
        if decoder.fails(x, z) {
            failed += p;
        }
        for d in digits.iter_mut() {
            *d += 1;
            if *d < live.len() {
                break;
            }
            *d = 0;
        }
    }
    Ok(failed)
}

/// Level map of a concatenated code.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "map", rename_all = "snake_case")]
pub enum LevelMap {
    /// `3p²(1−p) + p³`, majority vote over three blocks.
    Repetition,
    /// `c·p²`.
    Quadratic { c: f64 },
}

impl LevelMap {
    pub fn apply(&self, p: f64) -> f64 {
        match *self {
            LevelMap::Repetition => 3.0 * p * p * (1.0 - p) + p * p * p,
            LevelMap::Quadratic { c } => c * p * p,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConcatRecursion {
    /// `p_0, …, p_k`.
    pub levels: Vec<f64>,
    /// `(c·p_0)^{2^j}/c` for the quadratic map.
    pub closed_form: Option<Vec<f64>>,
    /// Largest `|iterate − closed form| / max(1, |closed form|)`.
    pub closed_form_deviation: Option<f64>,
}

pub const CLOSED_FORM_TOL: f64 = 1e-12;

/// Iterates the level map `levels` times from `p0`.
pub fn concat_recursion(p0: f64, levels: u32, map: LevelMap) -> Result<ConcatRecursion> {
    if !(0.0..=1.0).contains(&p0) {
        return Err(QecError::Invalid(format!("p0 = {p0} outside [0, 1]")));
    }
    if let LevelMap::Quadratic { c } = map {
        if !(c > 0.0 && c.is_finite()) {
            return Err(QecError::Invalid(format!("c = {c} must be positive")));
        }
    }
    let mut seq = Vec::with_capacity(levels as usize + 1);
    seq.push(p0);
    for _ in 0..levels {
        let last = *seq.last().expect("non-empty");
        seq.push(map.apply(last));
    }
    let closed = match map {
        LevelMap::Quadratic { c } => Some(
            (0..=levels)
                .map(|j| (c * p0).powf(2f64.powi(j as i32)) / c)
                .collect::<Vec<_>>(),
        ),
        LevelMap::Repetition => None,
    };
    let deviation = closed.as_ref().map(|cf| {
        seq.iter()
            .zip(cf)
            .map(|(a, b)| {
                if a == b {
                    0.0
                } else {
                    (a - b).abs() / b.abs().max(1.0)
                }
            })
            .fold(0.0, f64::max)
    });
    Ok(ConcatRecursion {
        levels: seq,
        closed_form: closed,
        closed_form_deviation: deviation,
    })
}

pub const MAX_CONCAT_LEVELS: u32 = 4;

/// Majority vote of three bits, applied level by level until one remains.
fn majority_decode(bits: &mut [bool]) -> bool {
    let mut len = bits.len();
    while len > 1 {
        for i in 0..len / 3 {
            let s = bits[3 * i] as u8 + bits[3 * i + 1] as u8 + bits[3 * i + 2] as u8;
            bits[i] = s >= 2;
        }
        len /= 3;
    }
    bits[0]
}

/// Samples i.i.d. flips on `3^k` bits and decodes by recursive majority.
pub fn simulate_concatenated_repetition(
    levels: u32,
    epsilon: f64,
    trials: u64,
    master_seed: u64,
    workers: usize,
) -> Result<RatePoint> {
    if levels > MAX_CONCAT_LEVELS {
        return Err(QecError::TooLarge(format!(
            "at most {MAX_CONCAT_LEVELS} levels, got {levels}"
        )));
    }
    if !(0.0..=1.0).contains(&epsilon) {
        return Err(QecError::Invalid(format!(
            "epsilon = {epsilon} outside [0, 1]"
        )));
    }
    if trials == 0 {
        return Err(QecError::Invalid("trials must be at least 1".into()));
    }
    let m = 3usize.pow(levels);
    let failures = count_failures(trials, workers, |j| {
        let mut rng = trial_rng(master_seed, j);
        let mut bits = [false; 81];
        for b in bits.iter_mut().take(m) {
            *b = rng.random::<f64>() < epsilon;
        }
        majority_decode(&mut bits[..m])
    })?;
    Ok(RatePoint::new(epsilon, trials, failures, master_seed))
}

/// Gate count `N·G^k` of the `k`-level simulation.
pub fn overhead(levels: u32, gates_per_level: u64, original_gates: u64) -> Result<u128> {
    if gates_per_level == 0 || original_gates == 0 {
        return Err(QecError::Invalid("gate counts must be positive".into()));
    }
    (gates_per_level as u128)
        .checked_pow(levels)
        .and_then(|g| g.checked_mul(original_gates as u128))
        .ok_or_else(|| {
            QecError::TooLarge(format!(
                "{original_gates}·{gates_per_level}^{levels} overflows"
            ))
        })
}

/// Fewest levels `k` with `2^k ≥ log(N·ε_th/p) / log(ε_th/ε)`, i.e. the
/// concatenation depth that pushes the whole computation's failure
/// probability below `p`.
pub fn min_levels(epsilon: f64, epsilon_th: f64, p: f64, original_gates: u64) -> Result<u32> {
    if !(epsilon > 0.0 && epsilon_th > 0.0 && p > 0.0 && original_gates > 0) {
        return Err(QecError::Invalid(
            "rates and gate count must be positive".into(),
        ));
    }
    if epsilon >= epsilon_th {
        return Err(QecError::AboveThreshold {
            epsilon,
            threshold: epsilon_th,
        });
    }
    let ratio = (original_gates as f64 * epsilon_th / p).ln() / (epsilon_th / epsilon).ln();
    let mut k = 0u32;
    while 2f64.powi(k as i32) < ratio * (1.0 - 1e-12) {
        k += 1;
    }
    Ok(k)
}

pub const THRESHOLD_TOL: f64 = 1e-10;

/// `i/1000` for `i = 1..=999`.
pub fn default_threshold_grid() -> Vec<f64> {
    (1..1000).map(|i| i as f64 / 1000.0).collect()
}

/// Fixed point `f(p) = p` bracketed by the first sign change of `f(p) − p`
/// on `grid`, refined by bisection to [`THRESHOLD_TOL`].
pub fn threshold_scan(f: impl Fn(f64) -> f64, grid: &[f64]) -> Result<f64> {
    let g = |p: f64| f(p) - p;
    let values: Vec<f64> = grid.iter().map(|&p| g(p)).collect();
    if values.iter().all(|v| v.abs() < 1e-14) {
        return Err(QecError::NoFixedPoint(
            "f(p) = p on the whole grid; no isolated fixed point".into(),
        ));
    }
    for i in 0..grid.len() {
        if values[i] == 0.0 && grid[i] > 0.0 {
            return Ok(grid[i]);
        }
        if i + 1 < grid.len() && values[i] * values[i + 1] < 0.0 {
            let (mut lo, mut hi) = (grid[i], grid[i + 1]);
            let lo_sign = values[i].signum();
            while hi - lo > THRESHOLD_TOL {
                let mid = 0.5 * (lo + hi);
                let v = g(mid);
                if v == 0.0 {
                    return Ok(mid);
                }
                if v.signum() == lo_sign {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            return Ok(0.5 * (lo + hi));
        }
    }
    Err(QecError::NoFixedPoint(
        "no sign change of f(p) − p on the grid".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::builtin;
    use crate::pauli::paulis_up_to_weight;

    #[test]
    fn bitflip_decoder_examples() {
        let code = builtin("bitflip3").unwrap();
        let d = build_decoder(&code).unwrap();
        let s = Syndrome(BitVec::from_str01("10").unwrap());
        assert_eq!(d.decode(&s).unwrap().to_string(), "XII");
        let zero = Syndrome(BitVec::zeros(2));
        assert!(d.decode(&zero).unwrap().is_identity());
        assert_eq!(d.unreachable_count(), 0);
    }

    #[test]
    fn steane_decoder_inverts_single_errors() {
        let code = builtin("steane7").unwrap();
        let d = build_decoder(&code).unwrap();
        for e in paulis_of_weight(7, 1) {
            let s = code.syndrome(&e).unwrap();
            assert!(d.decode(&s).unwrap().eq_up_to_phase(&e), "{e}");
        }
    }

    #[test]
    fn decoder_entries_are_minimal_and_consistent() {
        for name in ["bitflip3", "phaseflip3", "five_qubit", "steane7", "shor9"] {
            let code = builtin(name).unwrap();
            let d = build_decoder(&code).unwrap();
            let mut min_weight = vec![usize::MAX; 1 << code.generators.len()];
            for e in paulis_up_to_weight(code.n, 3) {
                let s = code.syndrome(&e).unwrap().0.to_u64() as usize;
                min_weight[s] = min_weight[s].min(e.weight());
            }
            for (s, &w) in min_weight.iter().enumerate() {
                let syn = Syndrome(BitVec::from_u64(code.generators.len(), s as u64));
                let c = d.decode(&syn).unwrap();
                assert_eq!(code.syndrome(&c).unwrap(), syn, "{name}");
                if w != usize::MAX {
                    assert_eq!(c.weight(), w, "{name} syndrome {s}");
                }
            }
        }
    }

    #[test]
    fn tie_break_is_lexicographic() {
        // Z on any qubit of a shor9 triple shares a syndrome; the smallest
        // letter string puts the Z on the rightmost qubit
        let code = builtin("shor9").unwrap();
        let d = build_decoder(&code).unwrap();
        let e: PauliOperator = "ZIIIIIIII".parse().unwrap();
        let c = d.decode(&code.syndrome(&e).unwrap()).unwrap();
        assert_eq!(c.to_string(), "IIZIIIIII");
    }

    #[test]
    fn forced_errors() {
        let code = builtin("bitflip3").unwrap();
        let d = build_decoder(&code).unwrap();
        let r = run_forced(&code, &d, &"XXI".parse().unwrap()).unwrap();
        assert_eq!(r.correction.to_string(), "IIX");
        assert!(r.logical_failure);
        let r = run_forced(&code, &d, &"IXI".parse().unwrap()).unwrap();
        assert!(!r.logical_failure);

        let shor = builtin("shor9").unwrap();
        let d = build_decoder(&shor).unwrap();
        for e in paulis_up_to_weight(9, 1) {
            assert!(!run_forced(&shor, &d, &e).unwrap().logical_failure, "{e}");
        }
    }

    #[test]
    fn trial_sampling_matches_sample_pauli_error() {
        use crate::noise::sample_pauli_error;
        let code = builtin("steane7").unwrap();
        let d = build_decoder(&code).unwrap();
        let ch = NoiseChannel::depolarizing(0.3);
        for j in 0..50 {
            let a = run_trial(&code, &d, &ch, &mut trial_rng(9, j)).unwrap();
            let b = sample_pauli_error(7, &ch, &mut trial_rng(9, j)).unwrap();
            assert_eq!(a.sampled_error, b);
        }
    }

    #[test]
    fn zero_noise_never_fails() {
        let code = builtin("steane7").unwrap();
        let r = logical_error_rate(&code, &NoiseChannel::depolarizing(0.0), 10_000, 1, 0).unwrap();
        assert_eq!(r.failures, 0);
        assert_eq!(r.estimate, 0.0);
        assert_eq!(
            exact_logical_rate(&code, &NoiseChannel::depolarizing(0.0)).unwrap(),
            0.0
        );
    }

    #[test]
    fn bitflip_exact_rate_formula() {
        let code = builtin("bitflip3").unwrap();
        for eps in [0.0, 0.01, 0.2, 0.5, 0.9, 1.0] {
            let exact = exact_logical_rate(&code, &NoiseChannel::bit_flip(eps)).unwrap();
            let formula = 3.0 * eps * eps * (1.0 - eps) + eps.powi(3);
            assert!((exact - formula).abs() < 1e-12, "eps {eps}");
        }
    }

    #[test]
    fn exact_rate_limits() {
        let code = builtin("bitflip3").unwrap();
        let pd = NoiseChannel::PhaseDamping { gamma: 1.0, t: 1.0 };
        assert!(exact_logical_rate(&code, &pd).is_err());
        assert!(logical_error_rate(&code, &pd, 10, 1, 1).is_err());
        assert!(logical_error_rate(&code, &NoiseChannel::bit_flip(0.1), 0, 1, 1).is_err());
    }

    #[test]
    fn steane_monte_carlo_matches_exact() {
        let code = builtin("steane7").unwrap();
        let ch = NoiseChannel::depolarizing(0.01);
        let exact = exact_logical_rate(&code, &ch).unwrap();
        let mc = logical_error_rate(&code, &ch, 1_000_000, 2026, 0).unwrap();
        assert!(mc.sigmas_from(exact) < 3.0, "mc {mc:?} exact {exact}");
    }

    #[test]
    fn worker_count_does_not_change_counts() {
        let code = builtin("five_qubit").unwrap();
        let ch = NoiseChannel::depolarizing(0.1);
        let a = logical_error_rate(&code, &ch, 20_000, 77, 1).unwrap();
        let b = logical_error_rate(&code, &ch, 20_000, 77, 8).unwrap();
        let c = logical_error_rate(&code, &ch, 20_000, 77, 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
    }

    #[test]
    fn noisy_syndrome_trials() {
        let code = builtin("steane7").unwrap();
        let d = build_decoder(&code).unwrap();
        let ch = NoiseChannel::depolarizing(0.0);
        let mut rng = trial_rng(3, 0);
        for _ in 0..100 {
            let r = run_trial_noisy_syndrome(&code, &d, &ch, 0.0, &mut rng).unwrap();
            assert!(!r.logical_failure);
        }
        let fails = (0..2000)
            .filter(|_| {
                run_trial_noisy_syndrome(&code, &d, &ch, 0.2, &mut rng)
                    .unwrap()
                    .logical_failure
            })
            .count();
        assert!(fails > 0);
    }

    #[test]
    fn recursion_examples() {
        let r = concat_recursion(0.4, 6, LevelMap::Repetition).unwrap();
        assert!(r.levels.windows(2).all(|w| w[1] < w[0]));
        let r = concat_recursion(0.5, 5, LevelMap::Repetition).unwrap();
        assert!(r.levels.iter().all(|&p| p == 0.5));

        let r = concat_recursion(0.005, 3, LevelMap::Quadratic { c: 100.0 }).unwrap();
        let want = 0.5f64.powi(8) / 100.0;
        assert!((r.levels[3] - want).abs() < 1e-15);
        assert!(r.closed_form_deviation.unwrap() < CLOSED_FORM_TOL);
        assert!(concat_recursion(1.5, 1, LevelMap::Repetition).is_err());
        assert!(concat_recursion(0.1, 1, LevelMap::Quadratic { c: 0.0 }).is_err());
    }

    #[test]
    fn concatenated_simulation_small_cases() {
        let r = simulate_concatenated_repetition(2, 0.0, 1000, 1, 0).unwrap();
        assert_eq!(r.failures, 0);
        let r = simulate_concatenated_repetition(0, 1.0, 1000, 1, 0).unwrap();
        assert_eq!(r.failures, 1000);
        let eps = 0.2;
        let r = simulate_concatenated_repetition(1, eps, 200_000, 5, 0).unwrap();
        let want = LevelMap::Repetition.apply(eps);
        assert!(r.sigmas_from(want) < 4.0);
        assert!(simulate_concatenated_repetition(5, 0.1, 10, 1, 0).is_err());
    }

    #[test]
    fn majority_of_nine() {
        let mut bits = [true, true, false, false, false, false, true, false, true];
        // blocks vote 1, 0, 1
        assert!(majority_decode(&mut bits));
    }

    #[test]
    fn overhead_and_levels() {
        assert_eq!(overhead(0, 7, 1000).unwrap(), 1000);
        assert_eq!(overhead(3, 10, 5).unwrap(), 5000);
        assert!(overhead(200, 1000, 1).is_err());
        let th = 1e-3;
        let eps = th / 2.0;
        // N·ε_th/p = 2^8 when p/N = ε_th/2^8
        let n = 1u64 << 20;
        let p = n as f64 * th / 256.0;
        assert_eq!(min_levels(eps, th, p, n).unwrap(), 3);
        assert!(matches!(
            min_levels(2e-3, th, p, n),
            Err(QecError::AboveThreshold { .. })
        ));
    }

    #[test]
    fn thresholds() {
        let grid = default_threshold_grid();
        let rep = threshold_scan(|p| LevelMap::Repetition.apply(p), &grid).unwrap();
        assert!((rep - 0.5).abs() < 1e-9);
        let quad = threshold_scan(|p| 36.0 * p * p, &grid).unwrap();
        assert!((quad - 1.0 / 36.0).abs() < 1e-9);
        assert!(matches!(
            threshold_scan(|p| p, &grid),
            Err(QecError::NoFixedPoint(_))
        ));
        assert!(threshold_scan(|p| p * p, &[0.5, 0.6]).is_err());
    }
}
