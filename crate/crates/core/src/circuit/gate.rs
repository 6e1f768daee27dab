use std::fmt;

use crate::error::{Error, Result};

/// Gate kinds. Angles are radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GateKind {
    X,
    H,
    Ry(f64),
    /// `diag(1, e^{iλ})`, written `u1` in QASM.
    Phase(f64),
    Cnot,
    CPhase(f64),
    Cry(f64),
    Ccry(f64),
    Toffoli,
    /// X on the target, conditioned on every control being |1⟩.
    Mcx,
}

impl GateKind {
    pub fn name(&self) -> &'static str {
        match self {
            GateKind::X => "x",
            GateKind::H => "h",
            GateKind::Ry(_) => "ry",
            GateKind::Phase(_) => "u1",
            GateKind::Cnot => "cx",
            GateKind::CPhase(_) => "cu1",
            GateKind::Cry(_) => "cry",
            GateKind::Ccry(_) => "ccry",
            GateKind::Toffoli => "ccx",
            GateKind::Mcx => "mcx",
        }
    }

    pub fn angle(&self) -> Option<f64> {
        match *self {
            GateKind::Ry(a)
            | GateKind::Phase(a)
            | GateKind::CPhase(a)
            | GateKind::Cry(a)
            | GateKind::Ccry(a) => Some(a),
            _ => None,
        }
    }

    /// Required control count, `None` for [`GateKind::Mcx`].
    fn arity(&self) -> Option<usize> {
        match self {
            GateKind::X | GateKind::H | GateKind::Ry(_) | GateKind::Phase(_) => Some(0),
            GateKind::Cnot | GateKind::CPhase(_) | GateKind::Cry(_) => Some(1),
            GateKind::Ccry(_) | GateKind::Toffoli => Some(2),
            GateKind::Mcx => None,
        }
    }

    fn inverse(&self) -> GateKind {
        match *self {
            GateKind::Ry(a) => GateKind::Ry(-a),
            GateKind::Phase(a) => GateKind::Phase(-a),
            GateKind::CPhase(a) => GateKind::CPhase(-a),
            GateKind::Cry(a) => GateKind::Cry(-a),
            GateKind::Ccry(a) => GateKind::Ccry(-a),
            k => k,
        }
    }
}

/// One primitive operation: a single-qubit action on `target`, conditioned on
/// all `controls` being |1⟩.
#[derive(Debug, Clone, PartialEq)]
pub struct Gate {
    kind: GateKind,
    controls: Vec<usize>,
    target: usize,
}

impl Gate {
    pub fn new(kind: GateKind, controls: Vec<usize>, target: usize) -> Result<Gate> {
        if let Some(expected) = kind.arity() {
            if controls.len() != expected {
                return Err(Error::Arity {
                    kind: kind.name(),
                    expected,
                    got: controls.len(),
                });
            }
        }
        if let Some(a) = kind.angle() {
            if !a.is_finite() {
                return Err(Error::NonFiniteAngle(a));
            }
        }
        for (i, &c) in controls.iter().enumerate() {
            if c == target || controls[..i].contains(&c) {
                return Err(Error::DuplicateQubit(c));
            }
        }
        Ok(Gate {
            kind,
            controls,
            target,
        })
    }

    fn fixed(kind: GateKind, controls: Vec<usize>, target: usize) -> Gate {
        Gate::new(kind, controls, target).unwrap_or_else(|e| panic!("invalid gate: {e}"))
    }

    pub fn x(q: usize) -> Gate {
        Gate::fixed(GateKind::X, vec![], q)
    }

    pub fn h(q: usize) -> Gate {
        Gate::fixed(GateKind::H, vec![], q)
    }

    pub fn ry(q: usize, theta: f64) -> Gate {
        Gate::fixed(GateKind::Ry(theta), vec![], q)
    }

    pub fn phase(q: usize, lambda: f64) -> Gate {
        Gate::fixed(GateKind::Phase(lambda), vec![], q)
    }

    pub fn cnot(control: usize, target: usize) -> Gate {
        Gate::fixed(GateKind::Cnot, vec![control], target)
    }

    pub fn cphase(control: usize, target: usize, lambda: f64) -> Gate {
        Gate::fixed(GateKind::CPhase(lambda), vec![control], target)
    }

    pub fn cry(control: usize, target: usize, theta: f64) -> Gate {
        Gate::fixed(GateKind::Cry(theta), vec![control], target)
    }

    pub fn ccry(c0: usize, c1: usize, target: usize, theta: f64) -> Gate {
        Gate::fixed(GateKind::Ccry(theta), vec![c0, c1], target)
    }

    pub fn toffoli(c0: usize, c1: usize, target: usize) -> Gate {
        Gate::fixed(GateKind::Toffoli, vec![c0, c1], target)
    }

    /// Multi-controlled X, narrowed to X / CNOT / Toffoli for 0, 1, 2 controls.
    pub fn mcx(controls: &[usize], target: usize) -> Gate {
        match *controls {
            [] => Gate::x(target),
            [c] => Gate::cnot(c, target),
            [a, b] => Gate::toffoli(a, b, target),
            _ => Gate::fixed(GateKind::Mcx, controls.to_vec(), target),
        }
    }

    pub fn kind(&self) -> GateKind {
        self.kind
    }

    pub fn controls(&self) -> &[usize] {
        &self.controls
    }

    pub fn target(&self) -> usize {
        self.target
    }

    /// Controls followed by the target.
    pub fn qubits(&self) -> impl Iterator<Item = usize> + '_ {
        self.controls.iter().copied().chain(std::iter::once(self.target))
    }

    pub fn max_qubit(&self) -> usize {
        self.qubits().max().unwrap_or(0)
    }

    pub fn inverse(&self) -> Gate {
        Gate {
            kind: self.kind.inverse(),
            controls: self.controls.clone(),
            target: self.target,
        }
    }

    /// Relabels qubits through `map` (`q -> map[q]`).
    pub fn remapped(&self, map: &[usize]) -> Gate {
        Gate {
            kind: self.kind,
            controls: self.controls.iter().map(|&c| map[c]).collect(),
            target: map[self.target],
        }
    }

    /// True for gates the two-qubit basis accepts as-is.
    pub fn is_basis(&self) -> bool {
        matches!(
            self.kind,
            GateKind::X | GateKind::H | GateKind::Ry(_) | GateKind::Phase(_) | GateKind::Cnot
        )
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind.name())?;
        if let Some(a) = self.kind.angle() {
            write!(f, "({a})")?;
        }
        let mut first = true;
        for q in self.qubits() {
            write!(f, "{}q[{q}]", if first { " " } else { "," })?;
            first = false;
        }
        write!(f, ";")
    }
}
