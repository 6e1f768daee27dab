use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::converters::{build_converter, ConverterPlan, Direction, EvenMethod};
use crate::encodings::AmplitudeVector;
use crate::error::Result;
use crate::statevector::Statevector;

/// Fidelity a converter must reach on every check.
pub const VERIFY_THRESHOLD: f64 = 1.0 - 1e-9;

/// Which check produced the worst fidelity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyCase {
    /// A single basis level.
    Level(usize),
    /// A seeded random amplitude vector; `dominant` is its largest-weight level.
    Random { trial: usize, dominant: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub plan: ConverterPlan,
    pub checks: usize,
    pub worst_fidelity: f64,
    pub worst_case: VerifyCase,
    /// Largest probability found off the expected level positions.
    pub max_stray_mass: f64,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.worst_fidelity >= VERIFY_THRESHOLD
    }
}

fn place(plan: &ConverterPlan, alphas: &[Complex64], output: bool) -> Result<Statevector> {
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << plan.total_qubits];
    for (i, &a) in alphas.iter().enumerate() {
        let idx = if output {
            plan.output_index(i)?
        } else {
            plan.input_index(i)?
        };
        amps[idx] = a;
    }
    Statevector::from_amplitudes(amps)
}

fn stray(plan: &ConverterPlan, s: &Statevector) -> Result<f64> {
    let mut on = 0.0;
    for i in 0..plan.levels {
        on += s.probability(plan.output_index(i)?);
    }
    Ok((s.norm_sqr() - on).max(0.0))
}

/// Runs the converter on every basis level and on `trials` random vectors
/// drawn from a ChaCha8 stream seeded with `seed`.
pub fn verify_converter(
    direction: Direction,
    n: usize,
    method: EvenMethod,
    trials: usize,
    seed: u64,
) -> Result<VerifyReport> {
    let (circuit, plan) = build_converter(direction, n, method)?;
    let mut report = VerifyReport {
        plan,
        checks: 0,
        worst_fidelity: 1.0,
        worst_case: VerifyCase::Level(0),
        max_stray_mass: 0.0,
    };
    let mut record = |fid: f64, stray_mass: f64, case: VerifyCase| {
        report.checks += 1;
        report.max_stray_mass = report.max_stray_mass.max(stray_mass);
        if fid < report.worst_fidelity {
            report.worst_fidelity = fid;
            report.worst_case = case;
        }
    };

    for i in 0..n {
        let mut alphas = vec![Complex64::new(0.0, 0.0); n];
        alphas[i] = Complex64::new(1.0, 0.0);
        let out = place(&plan, &alphas, false)?.evolved(&circuit)?;
        let expect = place(&plan, &alphas, true)?;
        record(out.fidelity(&expect)?, stray(&plan, &out)?, VerifyCase::Level(i));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..trials {
        let v = AmplitudeVector::random(n, &mut rng)?;
        let out = place(&plan, v.alphas(), false)?.evolved(&circuit)?;
        let expect = place(&plan, v.alphas(), true)?;
        let dominant = v
            .alphas()
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.norm_sqr().total_cmp(&b.1.norm_sqr()))
            .map_or(0, |(i, _)| i);
        record(
            out.fidelity(&expect)?,
            stray(&plan, &out)?,
            VerifyCase::Random { trial, dominant },
        );
    }
    Ok(report)
}
