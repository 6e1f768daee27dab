use std::f64::consts::PI;

use crate::circuit::{Circuit, Gate};

/// Constant adder `|j⟩ -> |(j + d) mod 2^n⟩` on `n` qubits (qubit 0 most
/// significant): QFT, one phase per qubit, inverse QFT.
///
/// `d` is reduced modulo `2^n`; `d ≡ 0` yields an empty circuit.
pub fn build_adder(n: usize, d: i64) -> Circuit {
    assert!(n >= 1, "adder needs at least one qubit");
    assert!(n < 63, "adder width {n} too large");
    let modulus = 1i64 << n;
    let d = d.rem_euclid(modulus);
    let mut c = Circuit::new(n).with_label(format!("adder n={n} d={d}"));
    if d == 0 {
        return c;
    }

    let qft = qft_no_swap(n);
    c.extend(qft.gates().iter().cloned());
    // after the swap-free QFT, qubit j carries e^{2πi x 2^j / 2^n} on |1⟩
    for j in 0..n {
        let turns = (d << j) & (modulus - 1);
        if turns != 0 {
            c.push(Gate::phase(j, 2.0 * PI * turns as f64 / modulus as f64));
        }
    }
    c.extend(qft.inverse().gates().iter().cloned());
    c
}

fn qft_no_swap(n: usize) -> Circuit {
    let mut c = Circuit::new(n);
    for j in 0..n {
        c.push(Gate::h(j));
        for l in j + 1..n {
            c.push(Gate::cphase(l, j, PI / (1u64 << (l - j)) as f64));
        }
    }
    c
}
