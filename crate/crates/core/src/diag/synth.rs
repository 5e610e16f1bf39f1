use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use super::{DyadicPhase, GateCounts, PhaseSpec};
use crate::sim::{qubit_mask, Gate};
use crate::{Error, Result};

/// A gate list realizing a [`PhaseSpec`].
///
/// The gates themselves act trivially on `|0…0⟩`, so the phase of index 0
/// is carried separately as `global_phase`; [`SynthesisResult::to_gates`]
/// expands it into gates when the full diagonal is needed.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthesisResult {
    pub num_qubits: usize,
    pub level: u32,
    pub gates: Vec<Gate>,
    pub global_phase: DyadicPhase,
    pub counts: GateCounts,
}

impl SynthesisResult {
    fn new(num_qubits: usize, level: u32, gates: Vec<Gate>, global_phase: DyadicPhase) -> Self {
        let counts = GateCounts::from_gates(&gates);
        Self {
            num_qubits,
            level,
            gates,
            global_phase,
            counts,
        }
    }

    /// The synthesized gates followed by the global-phase gadget on qubit
    /// 0, if any. Needs at least one qubit when the global phase is nonzero.
    pub fn to_gates(&self) -> Vec<Gate> {
        let mut out = self.gates.clone();
        if self.num_qubits > 0 {
            out.extend(global_phase_gates(self.global_phase, 0));
        }
        out
    }
}

/// Multiplies the whole state by `e^{iφ}` using only `X` and `Z^(l)` on one
/// qubit: `Z^(l)` phases `|1⟩`, its X-conjugate phases `|0⟩`.
pub fn global_phase_gates(phase: DyadicPhase, qubit: usize) -> Vec<Gate> {
    let levels = binary_levels(phase.numerator(), phase.level());
    if levels.is_empty() {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(2 * levels.len() + 2);
    for _ in 0..2 {
        out.extend(levels.iter().map(|&l| Gate::czp(l, vec![qubit])));
        out.push(Gate::PauliX { target: qubit });
    }
    out
}

/// Levels `l` with `2π·p/2^m = Σ 2π/2^l`, read off the binary expansion of
/// `p`, coarsest first.
fn binary_levels(numerator: u64, level: u32) -> Vec<i32> {
    (0..level)
        .rev()
        .filter(|b| numerator >> b & 1 == 1)
        .map(|b| (level - b) as i32)
        .collect()
}

/// Qubits set in basis pattern `index` on `n` qubits, ascending.
fn pattern_qubits(index: usize, n: usize) -> Vec<usize> {
    (0..n).filter(|&q| index & qubit_mask(q, n) != 0).collect()
}

/// Level-by-level peeling synthesis.
///
/// For each level `l = m, …, 1` and each nonzero basis pattern in order of
/// increasing Hamming weight, if the pattern's current phase is an odd
/// multiple of `2π/2^l`, `C^kZ^(l)` on that pattern's qubits cancels the odd
/// part (touching only supersets, which come later). The emitted gates are
/// the inverses `C^kZ^(−l)`; at `l = 1` both signs coincide and `+1` is
/// emitted.
pub fn peel_synthesize(spec: &PhaseSpec) -> SynthesisResult {
    let n = spec.num_qubits();
    let m = spec.level();
    let modulus_mask = (1u64 << m) - 1;
    let p0 = spec.numerators()[0];
    let mut phases: Vec<u64> = spec
        .numerators()
        .iter()
        .map(|&p| p.wrapping_sub(p0) & modulus_mask)
        .collect();

    let mut order: Vec<usize> = (1..phases.len()).collect();
    order.sort_by_key(|&i| (i.count_ones(), i));

    let full = phases.len() - 1;
    let mut gates = Vec::new();
    for l in (1..=m).rev() {
        let shift = m - l;
        let unit = 1u64 << shift;
        for &i in &order {
            if phases[i] >> shift & 1 == 0 {
                continue;
            }
            // Add `unit` on every superset of pattern i.
            let free = full & !i;
            let mut sub = free;
            loop {
                let s = i | sub;
                phases[s] = (phases[s] + unit) & modulus_mask;
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & free;
            }
            let level = if l == 1 { 1 } else { -(l as i32) };
            gates.push(Gate::czp(level, pattern_qubits(i, n)));
        }
    }
    debug_assert!(phases.iter().all(|&p| p == 0));

    SynthesisResult::new(
        n,
        m,
        gates,
        DyadicPhase::new(p0, m).expect("valid numerator"),
    )
}

/// Per-entry synthesis for sparse tables: for each supported index, X gates
/// on its zero bits, a fully controlled phase split into `C^nZ^(l)` factors
/// by the binary expansion of the numerator, then the same X gates again.
pub fn sparse_synthesize(spec: &PhaseSpec, support: &[usize]) -> Result<SynthesisResult> {
    let n = spec.num_qubits();
    let m = spec.level();
    let mut covered = vec![false; spec.len()];
    for &i in support {
        if i >= spec.len() {
            return Err(Error::InconsistentSupport(alloc::format!(
                "index {i} out of range for {n} qubits"
            )));
        }
        if covered[i] {
            return Err(Error::InconsistentSupport(alloc::format!(
                "index {i} listed twice"
            )));
        }
        covered[i] = true;
    }
    if let Some(i) = (0..spec.len()).find(|&i| !covered[i] && spec.numerators()[i] != 0) {
        return Err(Error::InconsistentSupport(alloc::format!(
            "index {i} has a nonzero phase but is not in the support"
        )));
    }
    if n == 0 {
        return Err(Error::InconsistentSupport(
            "sparse synthesis needs at least one qubit".to_string(),
        ));
    }

    let all: Vec<usize> = (0..n).collect();
    let mut gates = Vec::new();
    for &i in support {
        let p = spec.numerators()[i];
        if p == 0 {
            continue;
        }
        let flips: Vec<Gate> = (0..n)
            .filter(|&q| i & qubit_mask(q, n) == 0)
            .map(|q| Gate::PauliX { target: q })
            .collect();
        gates.extend(flips.iter().cloned());
        gates.extend(
            binary_levels(p, m)
                .into_iter()
                .map(|l| Gate::czp(l, all.clone())),
        );
        gates.extend(flips);
    }
    Ok(SynthesisResult::new(n, m, gates, DyadicPhase::zero(m)))
}

/// Integer-exact phase table of a synthesis result, global phase included.
pub fn reconstruct(result: &SynthesisResult, num_qubits: usize) -> Result<Vec<DyadicPhase>> {
    let mut numerators = reconstruct_gates(&result.gates, num_qubits, result.level)?;
    let level = result.level;
    let g = result.global_phase.refine(level)?.numerator();
    let mask = (1u64 << level) - 1;
    for p in numerators.iter_mut() {
        *p = (*p + g) & mask;
    }
    numerators
        .into_iter()
        .map(|p| DyadicPhase::new(p, level))
        .collect()
}

/// Phase numerators (on the level-`level` grid) of the diagonal operator a
/// sequence of `X` and `C^kZ^(l)` gates composes to. Fails if the sequence
/// contains any other gate, a level finer than `level`, or leaves a net
/// bit flip.
pub fn reconstruct_gates(gates: &[Gate], num_qubits: usize, level: u32) -> Result<Vec<u64>> {
    if level == 0 || level > super::MAX_LEVEL {
        return Err(Error::InvalidLevel(level));
    }
    let modulus_mask = (1u64 << level) - 1;
    let mut numerators = vec![0u64; 1 << num_qubits];
    // Input basis state i sits at i ^ flip when a gate is reached.
    let mut flip = 0usize;
    for g in gates {
        g.validate(num_qubits)?;
        match g {
            Gate::PauliX { target } => flip ^= qubit_mask(*target, num_qubits),
            Gate::ControlledZPow { level: l, qubits } => {
                let abs = l.unsigned_abs();
                if abs > level {
                    return Err(Error::InvalidLevel(abs));
                }
                let unit = 1u64 << (level - abs);
                let delta = if *l > 0 {
                    unit
                } else {
                    unit.wrapping_neg() & modulus_mask
                };
                let mask = qubits
                    .iter()
                    .fold(0, |acc, &q| acc | qubit_mask(q, num_qubits));
                for (i, p) in numerators.iter_mut().enumerate() {
                    if (i ^ flip) & mask == mask {
                        *p = (*p + delta) & modulus_mask;
                    }
                }
            }
            _ => return Err(Error::NotDiagonal),
        }
    }
    if flip != 0 {
        return Err(Error::NotDiagonal);
    }
    Ok(numerators)
}
