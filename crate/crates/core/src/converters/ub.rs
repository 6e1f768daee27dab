//! Staircase to binary: `U_B^{(N)}`.
//!
//! Every builder here works on a list of physical qubits holding the
//! staircase input (`N - 1` of them, left to right) plus a pool of qubits in
//! |0⟩ it may borrow. On exit the pool is back in |0⟩ and the binary value of
//! the level sits on the rightmost `⌈log2 N⌉` staircase qubits, the rest zero.

use crate::circuit::{Circuit, Gate};
use crate::converters::adder::build_adder;
use crate::converters::{ConverterPlan, Direction, EvenMethod};
use crate::encodings::ceil_log2;
use crate::error::{Error, Result};

fn is_pow2_plus1(n: usize) -> bool {
    n >= 2 && (n - 1).is_power_of_two()
}

/// The larger level count `n` is replaced by, if any.
fn expansion(n: usize, method: EvenMethod) -> Option<usize> {
    if n <= 3 {
        return None;
    }
    match method {
        EvenMethod::Recursion => None,
        EvenMethod::ExpandToNPlus1 => n.is_multiple_of(2).then_some(n + 1),
        EvenMethod::ExpandToPow2 => (!is_pow2_plus1(n)).then(|| (n - 1).next_power_of_two() + 1),
    }
}

/// Zero-initialised qubits `U_B^{(n)}` needs beyond its `n - 1` inputs.
pub fn ub_ancilla(n: usize, method: EvenMethod) -> usize {
    if n <= 3 {
        return 0;
    }
    if let Some(m) = expansion(n, method) {
        return m - n + ub_ancilla(m, method);
    }
    if n.is_multiple_of(2) {
        ub_ancilla(n - 1, method)
    } else {
        // both halves run side by side, each on its own pool
        2 * ub_ancilla((n - 1) / 2 + 1, method)
    }
}

/// Builds `U_B^{(n)}` on `ancilla + n - 1` qubits, ancillas leftmost.
pub fn build_ub(n: usize, method: EvenMethod) -> Result<(Circuit, ConverterPlan)> {
    if n < 2 {
        return Err(Error::InvalidLevels(n, "U_B needs N >= 2"));
    }
    let anc = ub_ancilla(n, method);
    let total = anc + n - 1;
    let qubits: Vec<usize> = (0..total).collect();
    let (pool, edick) = qubits.split_at(anc);
    let mut c = Circuit::new(total).with_label(format!("ub N={n} method={method}"));
    emit_ub(&mut c, n, method, edick, pool);
    let plan = ConverterPlan {
        levels: n,
        method: Some(method),
        total_qubits: total,
        ancilla: anc,
        direction: Direction::EdickToBinary,
    };
    Ok((c, plan))
}

/// `U_B^{(n)}` for even `n` through the XOR-and-flip step on top of
/// `U_B^{(n-1)}`. Ancilla-free.
pub fn build_recursion_step(n: usize) -> Result<Circuit> {
    if !n.is_multiple_of(2) || n < 4 {
        return Err(Error::InvalidLevels(n, "recursion step needs even N >= 4"));
    }
    let qubits: Vec<usize> = (0..n - 1).collect();
    let mut c = Circuit::new(n - 1).with_label(format!("ub-recursion N={n}"));
    emit_recursion_step(&mut c, n, EvenMethod::Recursion, &qubits, &[]);
    Ok(c)
}

pub(crate) fn emit_ub(c: &mut Circuit, n: usize, method: EvenMethod, e: &[usize], pool: &[usize]) {
    debug_assert_eq!(e.len(), n - 1);
    debug_assert!(pool.len() >= ub_ancilla(n, method));
    match n {
        2 => {}
        3 => c.push(Gate::cnot(e[0], e[1])),
        _ => {
            if let Some(m) = expansion(n, method) {
                let extra = m - n;
                let wide: Vec<usize> = pool[..extra].iter().chain(e).copied().collect();
                emit_ub(c, m, method, &wide, &pool[extra..]);
            } else if n.is_multiple_of(2) {
                emit_recursion_step(c, n, method, e, pool);
            } else {
                emit_divide(c, n, method, e, pool);
            }
        }
    }
}

/// Even `n`: convert the lower `n - 1` levels on `e[1..]`, then move the top
/// level (flagged by `e[0]`) from `b_{n-2}` to `b_{n-1}` and clear the flag.
fn emit_recursion_step(c: &mut Circuit, n: usize, method: EvenMethod, e: &[usize], pool: &[usize]) {
    emit_ub(c, n - 1, method, &e[1..], pool);
    let width = ceil_log2(n);
    // qubit holding significance 2^r of the binary register
    let bit = |r: usize| e[n - 2 - r];
    let flag = e[0];
    let xor = (n - 1) ^ (n - 2);
    for r in 0..width {
        if xor >> r & 1 == 1 {
            c.push(Gate::cnot(flag, bit(r)));
        }
    }
    let top = n - 1;
    let zeros: Vec<usize> = (0..width).filter(|r| top >> r & 1 == 0).map(bit).collect();
    let controls: Vec<usize> = (0..width).rev().map(bit).collect();
    c.extend(zeros.iter().map(|&q| Gate::x(q)));
    c.push(Gate::mcx(&controls, flag));
    c.extend(zeros.iter().map(|&q| Gate::x(q)));
}

/// Odd `n ≥ 5`: split the `2h` staircase qubits into halves, convert each with
/// `U_B^{(h+1)}`, then merge the halves' binary values.
fn emit_divide(c: &mut Circuit, n: usize, method: EvenMethod, e: &[usize], pool: &[usize]) {
    let h = (n - 1) / 2;
    let (first, second) = e.split_at(h);
    let sub = h + 1;
    let a = ub_ancilla(sub, method);
    emit_ub(c, sub, method, first, &pool[..a]);
    emit_ub(c, sub, method, second, &pool[a..2 * a]);

    let m = ceil_log2(h);
    let d = (1usize << m) - h;
    assert!(d < 1 << m);
    let f_bit = |r: usize| first[h - 1 - r];
    let s_bit = |r: usize| second[h - 1 - r];

    // Lower levels now read j in the second half, upper levels read h there
    // and j - h in the first half. Shifting by d turns h into 2^m.
    let adder_qubits = &second[h - m - 1..];
    let adder = (d > 0).then(|| build_adder(m + 1, d as i64));
    if let Some(add) = &adder {
        c.append_mapped(add, adder_qubits);
    }
    for r in 0..m {
        c.push(Gate::cnot(f_bit(r), s_bit(r)));
    }
    for r in 0..m {
        c.push(Gate::toffoli(s_bit(m), s_bit(r), f_bit(r)));
    }
    match &adder {
        Some(add) => c.append_mapped(&add.inverse(), adder_qubits),
        None => {
            // h = 2^m: the top level left 2^m in both halves; fold it into 2^(m+1)
            let carry = e[2 * h - 2 - m];
            c.push(Gate::cnot(f_bit(m), carry));
            c.push(Gate::cnot(carry, f_bit(m)));
            c.push(Gate::cnot(carry, s_bit(m)));
        }
    }
}
