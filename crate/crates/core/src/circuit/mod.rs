//! Gate set, circuit container and cost metrics.
//!
//! Qubit `q` of an `n`-qubit register is the `q`-th symbol of a ket string read
//! left to right, so it carries significance `2^(n-1-q)` in the basis index.

mod decompose;
mod gate;
mod qasm;

pub use decompose::decompose_to_basis;
pub use gate::{Gate, GateKind};
pub use qasm::{emit_text, parse_text};

use crate::error::{Error, Result};

/// Gate granularity at which a [`CostReport`] is measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Granularity {
    /// Gates as built.
    Logical,
    /// After [`decompose_to_basis`]: single-qubit gates and CNOT only.
    TwoQubitBasis,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CostReport {
    pub depth: usize,
    pub size: usize,
    pub ancilla: usize,
    pub granularity: Granularity,
}

impl CostReport {
    pub fn with_ancilla(mut self, ancilla: usize) -> Self {
        self.ancilla = ancilla;
        self
    }
}

/// An ordered gate list on a fixed register.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    num_qubits: usize,
    gates: Vec<Gate>,
    label: String,
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Circuit {
        Circuit {
            num_qubits,
            gates: Vec::new(),
            label: String::new(),
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Circuit {
        self.label = label.into();
        self
    }

    pub fn from_gates(num_qubits: usize, gates: Vec<Gate>) -> Result<Circuit> {
        let mut c = Circuit::new(num_qubits);
        for g in gates {
            c.try_push(g)?;
        }
        Ok(c)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn try_push(&mut self, gate: Gate) -> Result<()> {
        if gate.max_qubit() >= self.num_qubits {
            return Err(Error::QubitOutOfRange {
                qubit: gate.max_qubit(),
                num_qubits: self.num_qubits,
            });
        }
        self.gates.push(gate);
        Ok(())
    }

    /// Appends a gate. Panics if it addresses a qubit outside the register.
    pub fn push(&mut self, gate: Gate) {
        if let Err(e) = self.try_push(gate) {
            panic!("{e}");
        }
    }

    pub fn extend<I: IntoIterator<Item = Gate>>(&mut self, gates: I) {
        for g in gates {
            self.push(g);
        }
    }

    /// Appends `sub` with its qubit `q` relabelled to `map[q]`.
    pub fn append_mapped(&mut self, sub: &Circuit, map: &[usize]) {
        assert!(
            map.len() >= sub.num_qubits,
            "qubit map covers {} of {} qubits",
            map.len(),
            sub.num_qubits
        );
        for g in &sub.gates {
            self.push(g.remapped(map));
        }
    }

    /// Gates of `self` followed by gates of `other`.
    pub fn compose(&self, other: &Circuit) -> Result<Circuit> {
        if self.num_qubits != other.num_qubits {
            return Err(Error::QubitCountMismatch {
                left: self.num_qubits,
                right: other.num_qubits,
            });
        }
        let mut gates = self.gates.clone();
        gates.extend_from_slice(&other.gates);
        Ok(Circuit {
            num_qubits: self.num_qubits,
            gates,
            label: self.label.clone(),
        })
    }

    pub fn inverse(&self) -> Circuit {
        Circuit {
            num_qubits: self.num_qubits,
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
            label: self.label.clone(),
        }
    }

    /// Depth under greedy layering: each gate lands one layer after the
    /// latest layer touching any of its qubits.
    pub fn depth(&self) -> usize {
        let mut last = vec![0usize; self.num_qubits];
        let mut depth = 0;
        for g in &self.gates {
            let layer = g.qubits().map(|q| last[q]).max().unwrap_or(0) + 1;
            for q in g.qubits() {
                last[q] = layer;
            }
            depth = depth.max(layer);
        }
        depth
    }

    pub fn count_kind(&self, pred: impl Fn(GateKind) -> bool) -> usize {
        self.gates.iter().filter(|g| pred(g.kind())).count()
    }

    pub fn cost(&self, granularity: Granularity) -> CostReport {
        let (depth, size) = match granularity {
            Granularity::Logical => (self.depth(), self.len()),
            Granularity::TwoQubitBasis => {
                let d = decompose_to_basis(self);
                (d.depth(), d.len())
            }
        };
        CostReport {
            depth,
            size,
            ancilla: 0,
            granularity,
        }
    }
}
