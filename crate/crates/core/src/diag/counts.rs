use alloc::collections::BTreeMap;
use alloc::format;

use serde::ser::{Serialize, SerializeMap, Serializer};

use super::SynthesisResult;
use crate::sim::Gate;

/// Gate tallies. `C^kZ^(l)` gates are keyed by arity `k` and signed level
/// `l`; everything else by gate name.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GateCounts {
    pub controlled_z: BTreeMap<(usize, i32), usize>,
    pub other: BTreeMap<&'static str, usize>,
}

impl GateCounts {
    pub fn from_gates<'a>(gates: impl IntoIterator<Item = &'a Gate>) -> Self {
        let mut counts = Self::default();
        for g in gates {
            counts.add(g);
        }
        counts
    }

    pub fn add(&mut self, gate: &Gate) {
        let name = match gate {
            Gate::ControlledZPow { level, qubits } => {
                *self.controlled_z.entry((qubits.len(), *level)).or_default() += 1;
                return;
            }
            Gate::Hadamard { .. } => "H",
            Gate::PauliX { .. } => "X",
            Gate::RotationY { .. } => "RY",
            Gate::DiagonalOracle { .. } => "DIAG",
            Gate::Qft { .. } => "QFT",
            Gate::Swap { .. } => "SWAP",
        };
        *self.other.entry(name).or_default() += 1;
    }

    pub fn merge(&mut self, other: &GateCounts) {
        for (k, v) in &other.controlled_z {
            *self.controlled_z.entry(*k).or_default() += v;
        }
        for (k, v) in &other.other {
            *self.other.entry(k).or_default() += v;
        }
    }

    pub fn total(&self) -> usize {
        self.controlled_z.values().sum::<usize>() + self.other.values().sum::<usize>()
    }

    pub fn controlled_z_total(&self) -> usize {
        self.controlled_z.values().sum()
    }

    pub fn pauli_x(&self) -> usize {
        self.other.get("X").copied().unwrap_or(0)
    }

    /// Count of `C^kZ^(l)` gates with the given arity, any level.
    pub fn with_arity(&self, arity: usize) -> usize {
        self.controlled_z
            .iter()
            .filter(|((k, _), _)| *k == arity)
            .map(|(_, v)| v)
            .sum()
    }
}

impl Serialize for GateCounts {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map =
            serializer.serialize_map(Some(self.controlled_z.len() + self.other.len() + 1))?;
        for ((k, l), v) in &self.controlled_z {
            map.serialize_entry(&format!("C{k}Z({l})"), v)?;
        }
        for (name, v) in &self.other {
            map.serialize_entry(name, v)?;
        }
        map.serialize_entry("total", &self.total())?;
        map.end()
    }
}

impl core::fmt::Display for GateCounts {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let mut first = true;
        for ((k, l), v) in &self.controlled_z {
            if !first {
                f.write_str(";")?;
            }
            first = false;
            write!(f, "C{k}Z({l})={v}")?;
        }
        for (name, v) in &self.other {
            if !first {
                f.write_str(";")?;
            }
            first = false;
            write!(f, "{name}={v}")?;
        }
        if !first {
            f.write_str(";")?;
        }
        write!(f, "total={}", self.total())
    }
}

pub fn count_gates(result: &SynthesisResult) -> &GateCounts {
    &result.counts
}
