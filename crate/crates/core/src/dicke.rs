//! Dicke-state unitaries and binomial amplitude preparation.
//!
//! `RY(θ)` on every qubit gives `Σ_k √f(k,p) |D_k⟩`; the inverse Dicke
//! unitary folds each `|D_k⟩` into the staircase level `k`, after which any of
//! the converters can re-encode the `N + 1` levels.

use crate::circuit::{Circuit, Gate};
use crate::converters::{emit_ub, emit_uo, ub_ancilla, EvenMethod};
use crate::encodings::{binomial, EncodingKind};
use crate::error::{Error, Result};

/// Output encoding of the binomial pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Target {
    Edick,
    OneHot,
    Binary,
}

impl Target {
    pub fn encoding(self) -> EncodingKind {
        match self {
            Target::Edick => EncodingKind::Edick,
            Target::OneHot => EncodingKind::OneHot,
            Target::Binary => EncodingKind::Binary,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinomialSpec {
    /// Number of trials; the Dicke stage runs on this many qubits.
    pub n: usize,
    pub p: f64,
    /// `2·arcsin(√p)`.
    pub theta: f64,
    pub target: Target,
    /// Only used for [`Target::Binary`].
    pub method: EvenMethod,
}

impl BinomialSpec {
    pub fn new(n: usize, p: f64, target: Target, method: EvenMethod) -> Result<BinomialSpec> {
        if n < 2 {
            return Err(Error::InvalidLevels(n, "binomial pipeline needs N >= 2"));
        }
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidProbability(p));
        }
        Ok(BinomialSpec {
            n,
            p,
            theta: 2.0 * p.sqrt().asin(),
            target,
            method,
        })
    }

    /// Spec from the rotation angle, `θ ∈ [0, π]`.
    pub fn from_theta(n: usize, theta: f64, target: Target, method: EvenMethod) -> Result<BinomialSpec> {
        if !(0.0..=std::f64::consts::PI).contains(&theta) {
            return Err(Error::AngleOutOfRange(theta));
        }
        let p = (theta / 2.0).sin().powi(2).clamp(0.0, 1.0);
        let spec = BinomialSpec::new(n, p, target, method)?;
        Ok(BinomialSpec { theta, ..spec })
    }

    /// `C(N,k) p^k (1-p)^(N-k)`.
    pub fn pmf(&self, k: usize) -> f64 {
        binomial(self.n, k) * self.p.powi(k as i32) * (1.0 - self.p).powi((self.n - k) as i32)
    }
}

/// Register layout of a built pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BinomialPlan {
    /// `N + 1` outcome levels.
    pub levels: usize,
    pub target: Target,
    pub total_qubits: usize,
    /// Qubits beyond the `N` of the Dicke stage.
    pub ancilla: usize,
}

impl BinomialPlan {
    /// Basis index holding outcome `k` at the end of the pipeline.
    pub fn level_index(&self, k: usize) -> Result<usize> {
        if k >= self.levels {
            return Err(Error::LevelOutOfRange {
                level: k,
                limit: self.levels,
            });
        }
        Ok(match self.target {
            Target::Edick => (1 << k) - 1,
            Target::OneHot => 1 << k,
            Target::Binary => k,
        })
    }
}

/// `SCS_{n,k}` on `k + 1` qubits, acting on staircase states right-aligned.
pub fn build_scs(n: usize, k: usize) -> Result<Circuit> {
    if k < 1 || k >= n {
        return Err(Error::LevelOutOfRange { level: k, limit: n });
    }
    let mut c = Circuit::new(k + 1).with_label(format!("scs n={n} k={k}"));
    let angle = |l: usize| 2.0 * (l as f64 / n as f64).sqrt().acos();

    c.push(Gate::cnot(k - 1, k));
    c.push(Gate::cry(k, k - 1, angle(1)));
    c.push(Gate::cnot(k - 1, k));
    for l in 2..=k {
        c.push(Gate::cnot(k - l, k));
        c.push(Gate::ccry(k, k - l + 1, k - l, angle(l)));
        c.push(Gate::cnot(k - l, k));
    }
    Ok(c)
}

/// `U_{N,N-1}`: maps `|0^{N-k} 1^k⟩` to the Dicke state `|D_k^N⟩` for all `k`.
pub fn build_dicke_unitary(n: usize) -> Result<Circuit> {
    if n < 2 {
        return Err(Error::InvalidLevels(n, "Dicke unitary needs N >= 2"));
    }
    let mut c = Circuit::new(n).with_label(format!("dicke N={n}"));
    for l in (2..=n).rev() {
        let scs = build_scs(l, l - 1)?;
        let qubits: Vec<usize> = (0..l).collect();
        c.append_mapped(&scs, &qubits);
    }
    Ok(c)
}

/// Prepares `Σ_k √f(k,p) |level k⟩` in the encoding named by `spec.target`.
pub fn build_binomial_pipeline(spec: &BinomialSpec) -> Result<(Circuit, BinomialPlan)> {
    let n = spec.n;
    let anc = match spec.target {
        Target::Edick => 0,
        Target::OneHot => 1,
        Target::Binary => ub_ancilla(n + 1, spec.method),
    };
    let total = n + anc;
    // the Dicke stage sits on the rightmost N qubits, except for one-hot where
    // the extra |1⟩ qubit is appended on the right
    let offset = if spec.target == Target::Binary { anc } else { 0 };
    let stage: Vec<usize> = (offset..offset + n).collect();
    let mut c =
        Circuit::new(total).with_label(format!("binomial N={n} p={} target={:?}", spec.p, spec.target));

    if spec.target == Target::OneHot {
        c.push(Gate::x(n));
    }
    for &q in &stage {
        c.push(Gate::ry(q, spec.theta));
    }
    c.append_mapped(&build_dicke_unitary(n)?.inverse(), &stage);

    match spec.target {
        Target::Edick => {}
        Target::OneHot => {
            let all: Vec<usize> = (0..total).collect();
            emit_uo(&all, &mut c);
        }
        Target::Binary => {
            let pool: Vec<usize> = (0..anc).collect();
            emit_ub(&mut c, n + 1, spec.method, &stage, &pool);
        }
    }
    let plan = BinomialPlan {
        levels: n + 1,
        target: spec.target,
        total_qubits: total,
        ancilla: anc,
    };
    Ok((c, plan))
}

/// `N·sin²(θ)/4`, equal to `Np(1-p)`.
pub fn variance_of(spec: &BinomialSpec) -> f64 {
    spec.n as f64 * spec.theta.sin().powi(2) / 4.0
}

/// Variance of a distribution given as probabilities of outcomes `0, 1, ...`.
pub fn distribution_variance(probs: &[f64]) -> f64 {
    let mean: f64 = probs.iter().enumerate().map(|(k, p)| k as f64 * p).sum();
    probs
        .iter()
        .enumerate()
        .map(|(k, p)| (k as f64 - mean).powi(2) * p)
        .sum()
}
