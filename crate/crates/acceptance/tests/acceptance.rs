//! Acceptance criteria, one line each. Exits non-zero if any criterion fails.

use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use qenc::analysis::{
    fit_scaling, pow2_plus1, predicted_uo_depth, run_sweep, uo_size_bound, uo_size_recurrence, ScalingModel,
    SweepMethod,
};
use qenc::circuit::Granularity;
use qenc::converters::{
    build_adder, build_binary_to_onehot, build_cnot_stair, build_onehot_to_binary, build_ub, build_uo,
    ub_ancilla, EvenMethod,
};
use qenc::dicke::{
    build_binomial_pipeline, build_dicke_unitary, distribution_variance, variance_of, BinomialSpec, Target,
};
use qenc::encodings::{binomial, build_state, AmplitudeVector, EncodingKind};
use qenc::statevector::{ket, Statevector};

const STRAY_TOL: f64 = 1e-9;
const FIDELITY_TOL: f64 = 1e-9;
const ADDER_TOL: f64 = 1e-9;
const DICKE_TOL: f64 = 1e-9;
const PMF_TOL: f64 = 1e-9;
const VARIANCE_TOL: f64 = 1e-9;
const FIT_RESIDUAL: f64 = 0.35;
const CORRECTNESS_BUDGET: Duration = Duration::from_secs(60);
const ROUND_TRIP_SEED: u64 = 2024;
const ROUND_TRIP_VECTORS: usize = 20;
/// Depth and size fits use the two-qubit basis, the analogue of transpiled counts.
const FIT_GRANULARITY: Granularity = Granularity::TwoQubitBasis;
const FIT_KS: std::ops::RangeInclusive<usize> = 2..=10;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn padded(bits: &str, width: usize) -> Statevector {
    ket(&format!("{}{bits}", "0".repeat(width - bits.len())))
}

fn converter_correctness() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();

    let ub_jobs: Vec<(EvenMethod, usize)> = EvenMethod::ALL
        .iter()
        .flat_map(|&m| (2..=14).map(move |n| (m, n)))
        .collect();
    let worst_ub = ub_jobs
        .par_iter()
        .map(|&(method, n)| {
            let (c, plan) = build_ub(n, method).unwrap();
            (0..n)
                .map(|i| {
                    let out = Statevector::basis(plan.total_qubits, (1 << i) - 1)
                        .evolved(&c)
                        .unwrap();
                    (out.norm_sqr() - out.probability(i)).max(0.0)
                })
                .fold(0.0, f64::max)
        })
        .reduce(|| 0.0, f64::max);
    if worst_ub >= STRAY_TOL {
        failures.push(format!("U_B stray {worst_ub:e}"));
    }

    let worst_uo = (2..=14usize)
        .into_par_iter()
        .map(|n| {
            let uo = build_uo(n).unwrap();
            (0..n)
                .map(|i| {
                    let input = ((1 << i) - 1) << 1 | 1;
                    let out = Statevector::basis(n, input).evolved(&uo).unwrap();
                    (out.norm_sqr() - out.probability(1 << i)).max(0.0)
                })
                .fold(0.0, f64::max)
        })
        .reduce(|| 0.0, f64::max);
    if worst_uo >= STRAY_TOL {
        failures.push(format!("U_O stray {worst_uo:e}"));
    }

    // golden rows: U_O^(4), U_O^(5) traces and U_B^(7) end states
    let uo4 = build_uo(4).unwrap();
    let uo5 = build_uo(5).unwrap();
    let golden_uo = [
        (&uo4, "0111", "0100"),
        (&uo4, "0011", "0010"),
        (&uo4, "0001", "0001"),
        (&uo4, "1111", "1000"),
        (&uo5, "11111", "10000"),
    ];
    for (c, input, output) in golden_uo {
        if ket(input).evolved(c).unwrap() != ket(output) {
            failures.push(format!("U_O golden {input} -> {output}"));
        }
    }
    for method in EvenMethod::ALL {
        let (c, plan) = build_ub(7, method).unwrap();
        let w = plan.total_qubits;
        for (input, output) in [("000111", "000011"), ("111111", "000110")] {
            let out = padded(input, w).evolved(&c).unwrap();
            if out.fidelity(&padded(output, w)).unwrap() < 1.0 - STRAY_TOL {
                failures.push(format!("U_B^(7) {method} golden {input} -> {output}"));
            }
        }
    }

    let elapsed = start.elapsed();
    if elapsed >= CORRECTNESS_BUDGET {
        failures.push(format!("took {:.1} s", elapsed.as_secs_f64()));
    }
    let detail =
        format!(
        "N=2..14, 3 methods; worst U_B stray {worst_ub:.1e}, worst U_O stray {worst_uo:.1e}, golden rows {}",
        if failures.is_empty() { "match".to_string() } else { failures.join("; ") }
    );
    outcome(failures.is_empty(), detail)
}

fn onehot_binary_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(ROUND_TRIP_SEED);
    let mut worst = 1.0f64;
    let mut worst_at = (0, EvenMethod::Recursion);
    for n in 3..=12 {
        let vectors: Vec<AmplitudeVector> = (0..ROUND_TRIP_VECTORS)
            .map(|_| AmplitudeVector::random(n, &mut rng).unwrap())
            .collect();
        for method in EvenMethod::ALL {
            let (fwd, plan) = build_onehot_to_binary(n, method).unwrap();
            let (back, _) = build_binary_to_onehot(n, method).unwrap();
            for v in &vectors {
                let input = build_state(EncodingKind::OneHot, v, plan.total_qubits).unwrap();
                let out = input.clone().evolved(&fwd).unwrap().evolved(&back).unwrap();
                let f = out.fidelity(&input).unwrap();
                if f < worst {
                    worst = f;
                    worst_at = (n, method);
                }
            }
        }
    }
    outcome(
        worst >= 1.0 - FIDELITY_TOL,
        format!(
            "N=3..12, {ROUND_TRIP_VECTORS} vectors x 3 methods; worst fidelity {worst:.15} (N={}, {})",
            worst_at.0, worst_at.1
        ),
    )
}

fn depth_formula() -> Outcome {
    let mut depth_miss = Vec::new();
    let mut recurrence_miss = Vec::new();
    let mut bound_miss = Vec::new();
    for n in 2..=64 {
        let uo = build_uo(n).unwrap();
        let depth = uo.cost(Granularity::Logical).depth;
        if depth != predicted_uo_depth(n) {
            depth_miss.push(format!("{n}:{depth}/{}", predicted_uo_depth(n)));
        }
        if uo.len() != uo_size_recurrence(n) {
            recurrence_miss.push(n);
        }
        if uo.len() as f64 >= uo_size_bound(n) {
            bound_miss.push(format!("{n}:{}/{:.2}", uo.len(), uo_size_bound(n)));
        }
    }
    let show = |v: &[String]| -> String {
        let head: Vec<&str> = v.iter().take(4).map(String::as_str).collect();
        format!("{} misses (e.g. {})", v.len(), head.join(" "))
    };
    let detail = format!(
        "N=2..64; depth == 2*ceil(log2 N)-1: {}; size recurrence: {} misses; size < 1+N+log2 N: {}",
        if depth_miss.is_empty() {
            "all".to_string()
        } else {
            show(&depth_miss)
        },
        recurrence_miss.len(),
        if bound_miss.is_empty() {
            "all".to_string()
        } else {
            show(&bound_miss)
        },
    );
    outcome(
        depth_miss.is_empty() && recurrence_miss.is_empty() && bound_miss.is_empty(),
        detail,
    )
}

fn baseline_comparison() -> Outcome {
    let mut problems = Vec::new();
    for n in 3..=12 {
        let stair = build_cnot_stair(n).unwrap().cost(Granularity::Logical);
        let uo = build_uo(n).unwrap().cost(Granularity::Logical);
        if stair.depth != 2 * n - 3 {
            problems.push(format!("stair depth N={n}: {}", stair.depth));
        }
        if stair.size != n * (n - 1) / 2 || stair.size as f64 > 0.5 * (n * n) as f64 {
            problems.push(format!("stair size N={n}: {}", stair.size));
        }
        if n >= 4 && uo.depth >= stair.depth {
            problems.push(format!("uo depth N={n}: {} vs {}", uo.depth, stair.depth));
        }
    }
    let detail = if problems.is_empty() {
        "N=3..12; stair depth 2N-3, size N(N-1)/2 <= N^2/2, U_O shallower for N>=4".to_string()
    } else {
        problems.join("; ")
    };
    outcome(problems.is_empty(), detail)
}

/// Worst amplitude error against `|j⟩ -> |j + d mod 2^n⟩`, global phase from column 0.
fn shift_error(n: usize, d: usize) -> f64 {
    let c = build_adder(n, d as i64);
    let m = 1usize << n;
    let mut phase: Option<Complex64> = None;
    let mut worst = 0.0f64;
    for j in 0..m {
        let out = Statevector::basis(n, j).evolved(&c).unwrap();
        let k = (j + d) % m;
        let p = *phase.get_or_insert(out.amplitude(k));
        for (x, a) in out.amplitudes().iter().enumerate() {
            let expect = if x == k { p } else { Complex64::new(0.0, 0.0) };
            worst = worst.max((a - expect).norm());
        }
    }
    worst
}

fn adder() -> Outcome {
    let jobs: Vec<(usize, usize)> = (1..=6)
        .flat_map(|n| (0..1usize << n).map(move |d| (n, d)))
        .collect();
    let worst = jobs
        .par_iter()
        .map(|&(n, d)| shift_error(n, d))
        .reduce(|| 0.0, f64::max);
    outcome(
        worst < ADDER_TOL,
        format!("n=1..6, all d; worst amplitude error {worst:.1e}"),
    )
}

fn dicke_binomial() -> Outcome {
    let mut worst_dicke = 0.0f64;
    for n in 2..=10 {
        let u = build_dicke_unitary(n).unwrap();
        for k in 0..=n {
            let out = Statevector::basis(n, (1 << k) - 1).evolved(&u).unwrap();
            let amp = 1.0 / binomial(n, k).sqrt();
            for x in 0..1usize << n {
                let expect = if x.count_ones() as usize == k { amp } else { 0.0 };
                worst_dicke = worst_dicke.max((out.amplitude(x) - expect).norm());
            }
        }
    }

    let jobs: Vec<(usize, f64, Target)> = (2..=10)
        .flat_map(|n| {
            [0.1, 0.3, 0.5, 0.7, 0.9]
                .into_iter()
                .flat_map(move |p| [Target::Edick, Target::OneHot, Target::Binary].map(|t| (n, p, t)))
        })
        .collect();
    let (worst_pmf, worst_var) = jobs
        .par_iter()
        .map(|&(n, p, target)| {
            let spec = BinomialSpec::new(n, p, target, EvenMethod::ExpandToPow2).unwrap();
            let (c, plan) = build_binomial_pipeline(&spec).unwrap();
            let out = Statevector::zero(plan.total_qubits).evolved(&c).unwrap();
            let probs: Vec<f64> = (0..=n)
                .map(|k| out.probability(plan.level_index(k).unwrap()))
                .collect();
            let pmf = probs
                .iter()
                .enumerate()
                .map(|(k, q)| (q - spec.pmf(k)).abs())
                .fold(0.0, f64::max);
            let var = (distribution_variance(&probs) - variance_of(&spec)).abs();
            (pmf, var)
        })
        .reduce(|| (0.0, 0.0), |a, b| (a.0.max(b.0), a.1.max(b.1)));

    outcome(
        worst_dicke < DICKE_TOL && worst_pmf < PMF_TOL && worst_var < VARIANCE_TOL,
        format!(
            "N<=10; Dicke amplitude error {worst_dicke:.1e}, pmf error {worst_pmf:.1e}, variance error {worst_var:.1e}"
        ),
    )
}

fn scaling_trends() -> Outcome {
    let ns = pow2_plus1(FIT_KS);
    let methods: Vec<SweepMethod> = EvenMethod::ALL.into_iter().map(SweepMethod::Ub).collect();
    let rows = run_sweep(&ns, &methods, false).unwrap();
    let mut parts = Vec::new();
    let mut pass = true;
    for m in &methods {
        let mine: Vec<_> = rows.iter().filter(|r| r.method == *m).collect();
        let depth: Vec<(usize, f64)> = mine
            .iter()
            .map(|r| (r.n, r.depth(FIT_GRANULARITY) as f64))
            .collect();
        let size: Vec<(usize, f64)> = mine
            .iter()
            .map(|r| (r.n, r.size(FIT_GRANULARITY) as f64))
            .collect();
        let d = fit_scaling(&depth, ScalingModel::LogSquared).unwrap();
        let s = fit_scaling(&size, ScalingModel::Linear).unwrap();
        pass &= d.max_relative_residual < FIT_RESIDUAL && s.max_relative_residual < FIT_RESIDUAL;
        parts.push(format!(
            "{m}: depth {:.2}*log2(N)^2 res {:.3}, size {:.2}*N res {:.3}",
            d.coefficient, d.max_relative_residual, s.coefficient, s.max_relative_residual
        ));
    }
    let recursion_ok = (2..=1025).all(|n| ub_ancilla(n, EvenMethod::Recursion) == 0);
    let pow2_ok = (2..=1025).all(|n| ub_ancilla(n, EvenMethod::ExpandToPow2) < n);
    pass &= recursion_ok && pow2_ok;
    parts.push(format!(
        "ancilla N=2..1025: recursion zero {recursion_ok}, expand-pow2 <= N-1 {pow2_ok}"
    ));
    outcome(
        pass,
        format!("N=2^k+1, k=2..10, basis gates; {}", parts.join("; ")),
    )
}

/// The `qenc` binary cargo builds next to this test's `deps/` directory.
fn qenc_binary() -> Option<PathBuf> {
    let exe = std::env::current_exe().ok()?;
    let profile_dir = exe.parent()?.parent()?;
    let path = profile_dir.join(format!("qenc{}", std::env::consts::EXE_SUFFIX));
    path.is_file().then_some(path)
}

fn run_cli(bin: &Path, args: &[&str]) -> Option<Vec<u8>> {
    let out = Command::new(bin).args(args).output().ok()?;
    out.status.success().then_some(out.stdout)
}

fn determinism() -> Outcome {
    let verify = [
        "verify",
        "--direction",
        "onehot-to-binary",
        "--n",
        "9",
        "--method",
        "expand-n-plus-1",
        "--trials",
        "20",
        "--seed",
        "42",
    ];
    let sweep = ["sweep", "--n-min", "2", "--n-max", "40"];
    let Some(bin) = qenc_binary() else {
        return outcome(false, "qenc binary not found; run `cargo build -p qenc` first");
    };
    let twice = |args: &[&str]| {
        let a = run_cli(&bin, args);
        a.is_some() && a == run_cli(&bin, args)
    };
    let same_verify = twice(&verify);
    let same_sweep = twice(&sweep);
    outcome(
        same_verify && same_sweep,
        format!("repeated verify identical {same_verify}, repeated sweep identical {same_sweep}"),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("converter correctness", converter_correctness),
        ("one-hot/binary round trip", onehot_binary_round_trip),
        ("U_O depth and size formulas", depth_formula),
        ("CNOT stair baseline", baseline_comparison),
        ("adder", adder),
        ("Dicke and binomial", dicke_binomial),
        ("scaling trends", scaling_trends),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = check();
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        let secs = start.elapsed().as_secs_f64();
        println!(
            "criterion {} {name}: {verdict}: {} [{secs:.1} s]",
            i + 1,
            o.detail
        );
        failed += usize::from(!o.pass);
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
