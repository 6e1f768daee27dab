//! Dense statevector simulator.

use std::io::Write;

use num_complex::Complex64;

use crate::circuit::{Circuit, Gate, GateKind};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Statevector {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

/// 2x2 action on the target, in the (|0⟩, |1⟩) basis.
enum Action {
    Flip,
    Phase(Complex64),
    Matrix([[Complex64; 2]; 2]),
}

fn ry_matrix(theta: f64) -> [[Complex64; 2]; 2] {
    let (s, c) = (theta / 2.0).sin_cos();
    [
        [Complex64::new(c, 0.0), Complex64::new(-s, 0.0)],
        [Complex64::new(s, 0.0), Complex64::new(c, 0.0)],
    ]
}

impl Statevector {
    /// The computational basis state with integer label `index`.
    pub fn basis(num_qubits: usize, index: usize) -> Statevector {
        assert!(index < 1 << num_qubits, "basis index out of range");
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << num_qubits];
        amps[index] = Complex64::new(1.0, 0.0);
        Statevector { num_qubits, amps }
    }

    pub fn zero(num_qubits: usize) -> Statevector {
        Statevector::basis(num_qubits, 0)
    }

    /// Wraps raw amplitudes; the length must be a power of two.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Statevector> {
        let len = amps.len();
        if !len.is_power_of_two() {
            return Err(Error::WidthTooSmall {
                width: len,
                needed: len.next_power_of_two(),
            });
        }
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Statevector {
            num_qubits: len.trailing_zeros() as usize,
            amps,
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    pub fn probability(&self, index: usize) -> f64 {
        self.amps[index].norm_sqr()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    fn bit(&self, q: usize) -> usize {
        1 << (self.num_qubits - 1 - q)
    }

    pub fn apply(&mut self, gate: &Gate) -> Result<()> {
        if gate.max_qubit() >= self.num_qubits {
            return Err(Error::QubitOutOfRange {
                qubit: gate.max_qubit(),
                num_qubits: self.num_qubits,
            });
        }
        let action = match gate.kind() {
            GateKind::X | GateKind::Cnot | GateKind::Toffoli | GateKind::Mcx => Action::Flip,
            GateKind::H => {
                let r = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
                Action::Matrix([[r, r], [r, -r]])
            }
            GateKind::Phase(l) | GateKind::CPhase(l) => Action::Phase(Complex64::from_polar(1.0, l)),
            GateKind::Ry(t) | GateKind::Cry(t) | GateKind::Ccry(t) => Action::Matrix(ry_matrix(t)),
        };
        let cmask = gate.controls().iter().fold(0, |m, &c| m | self.bit(c));
        let tbit = self.bit(gate.target());
        for i in 0..self.amps.len() {
            if i & tbit != 0 || i & cmask != cmask {
                continue;
            }
            let j = i | tbit;
            match &action {
                Action::Flip => self.amps.swap(i, j),
                Action::Phase(p) => self.amps[j] *= p,
                Action::Matrix(m) => {
                    let (a0, a1) = (self.amps[i], self.amps[j]);
                    self.amps[i] = m[0][0] * a0 + m[0][1] * a1;
                    self.amps[j] = m[1][0] * a0 + m[1][1] * a1;
                }
            }
        }
        Ok(())
    }

    pub fn run(&mut self, circuit: &Circuit) -> Result<()> {
        if circuit.num_qubits() != self.num_qubits {
            return Err(Error::QubitCountMismatch {
                left: self.num_qubits,
                right: circuit.num_qubits(),
            });
        }
        for g in circuit.gates() {
            self.apply(g)?;
        }
        Ok(())
    }

    /// Consuming form of [`Statevector::run`].
    pub fn evolved(mut self, circuit: &Circuit) -> Result<Statevector> {
        self.run(circuit)?;
        Ok(self)
    }

    pub fn inner(&self, other: &Statevector) -> Result<Complex64> {
        if self.num_qubits != other.num_qubits {
            return Err(Error::QubitCountMismatch {
                left: self.num_qubits,
                right: other.num_qubits,
            });
        }
        Ok(self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum())
    }

    /// `|⟨a|b⟩|`.
    pub fn fidelity(&self, other: &Statevector) -> Result<f64> {
        Ok(self.inner(other)?.norm().min(1.0))
    }

    /// Writes `index,real,imag` rows, skipping exact zeros when `sparse`.
    pub fn write_csv<W: Write>(&self, mut w: W, sparse: bool) -> Result<()> {
        writeln!(w, "index,real,imag")?;
        for (i, a) in self.amps.iter().enumerate() {
            if sparse && a.norm_sqr() == 0.0 {
                continue;
            }
            writeln!(w, "{i},{},{}", a.re, a.im)?;
        }
        Ok(())
    }
}

/// Parses a ket string such as `"0110"` into a basis state.
pub fn ket(bits: &str) -> Statevector {
    let idx = usize::from_str_radix(bits, 2).expect("ket must be a binary string");
    Statevector::basis(bits.len(), idx)
}
