use std::f64::consts::{FRAC_PI_4, PI};

use super::{Circuit, Gate, GateKind};

#[derive(Clone, Copy, PartialEq, Eq)]
pub(crate) enum Lowering {
    /// Single-qubit gates and CNOT.
    Basis,
    /// The gate set the text format accepts: adds `cu1` and `ccx`.
    Text,
}

impl Lowering {
    fn accepts(self, g: &Gate) -> bool {
        match self {
            Lowering::Basis => g.is_basis(),
            Lowering::Text => g.is_basis() || matches!(g.kind(), GateKind::CPhase(_) | GateKind::Toffoli),
        }
    }
}

/// Rewrites `c` into single-qubit gates and CNOT with the same unitary.
///
/// Toffoli uses the 6-CNOT network, CPhase and CRY their 2-CNOT forms, CCRY
/// the controlled-square-root construction. MCX borrows idle qubits of the
/// register as dirty ancillas when there are any, and falls back to a
/// multi-controlled phase recursion when there are none.
pub fn decompose_to_basis(c: &Circuit) -> Circuit {
    lower(c, Lowering::Basis)
}

pub(crate) fn lower(c: &Circuit, level: Lowering) -> Circuit {
    let mut out = Vec::with_capacity(c.len());
    for g in c.gates() {
        lower_gate(g, c.num_qubits(), level, &mut out);
    }
    let mut lowered = Circuit::new(c.num_qubits()).with_label(c.label());
    lowered.extend(out);
    lowered
}

fn lower_gate(g: &Gate, n: usize, level: Lowering, out: &mut Vec<Gate>) {
    if level.accepts(g) {
        out.push(g.clone());
        return;
    }
    for sub in expand(g, n) {
        lower_gate(&sub, n, level, out);
    }
}

/// One rewriting step; the result may still need lowering.
fn expand(g: &Gate, n: usize) -> Vec<Gate> {
    let t = g.target();
    let ctl = g.controls();
    match g.kind() {
        GateKind::CPhase(l) => {
            let c = ctl[0];
            vec![
                Gate::phase(c, l / 2.0),
                Gate::cnot(c, t),
                Gate::phase(t, -l / 2.0),
                Gate::cnot(c, t),
                Gate::phase(t, l / 2.0),
            ]
        }
        GateKind::Cry(th) => {
            let c = ctl[0];
            vec![
                Gate::ry(t, th / 2.0),
                Gate::cnot(c, t),
                Gate::ry(t, -th / 2.0),
                Gate::cnot(c, t),
            ]
        }
        GateKind::Ccry(th) => {
            let (a, b) = (ctl[0], ctl[1]);
            vec![
                Gate::cry(b, t, th / 2.0),
                Gate::cnot(a, b),
                Gate::cry(b, t, -th / 2.0),
                Gate::cnot(a, b),
                Gate::cry(a, t, th / 2.0),
            ]
        }
        GateKind::Toffoli => toffoli_network(ctl[0], ctl[1], t),
        GateKind::Mcx => {
            let free: Vec<usize> = (0..n).filter(|q| *q != t && !ctl.contains(q)).collect();
            let mut out = Vec::new();
            mcx_network(ctl, t, &free, &mut out);
            out
        }
        _ => vec![g.clone()],
    }
}

fn toffoli_network(a: usize, b: usize, c: usize) -> Vec<Gate> {
    let t = FRAC_PI_4;
    vec![
        Gate::h(c),
        Gate::cnot(b, c),
        Gate::phase(c, -t),
        Gate::cnot(a, c),
        Gate::phase(c, t),
        Gate::cnot(b, c),
        Gate::phase(c, -t),
        Gate::cnot(a, c),
        Gate::phase(b, t),
        Gate::phase(c, t),
        Gate::h(c),
        Gate::cnot(a, b),
        Gate::phase(a, t),
        Gate::phase(b, -t),
        Gate::cnot(a, b),
    ]
}

/// Multi-controlled X out of Toffoli, CNOT and (without any idle qubit)
/// controlled phases. `free` qubits may be in any state and are restored.
pub(crate) fn mcx_network(controls: &[usize], target: usize, free: &[usize], out: &mut Vec<Gate>) {
    let k = controls.len();
    if k <= 2 {
        out.push(Gate::mcx(controls, target));
    } else if free.len() >= k - 2 {
        v_chain(controls, target, &free[..k - 2], out);
    } else if let Some((&anc, rest)) = free.split_first() {
        // Split the controls in two halves joined through one borrowed qubit;
        // each half runs as a V-chain over the other half's qubits.
        let (a, b) = controls.split_at(k.div_ceil(2));
        let free_a: Vec<usize> = b
            .iter()
            .copied()
            .chain(std::iter::once(target))
            .chain(rest.iter().copied())
            .collect();
        let ctl_b: Vec<usize> = b.iter().copied().chain(std::iter::once(anc)).collect();
        let free_b: Vec<usize> = a.iter().copied().chain(rest.iter().copied()).collect();
        for _ in 0..2 {
            mcx_network(a, anc, &free_a, out);
            mcx_network(&ctl_b, target, &free_b, out);
        }
    } else {
        out.push(Gate::h(target));
        mc_phase(controls, target, PI, out);
        out.push(Gate::h(target));
    }
}

/// Toffoli ladder over `k - 2` dirty ancillas, `4(k - 2)` Toffolis.
fn v_chain(controls: &[usize], target: usize, anc: &[usize], out: &mut Vec<Gate>) {
    let k = controls.len();
    debug_assert_eq!(anc.len(), k - 2);
    // rung j (1..k-2): Toffoli(controls[j+1], anc[j-1] -> anc[j]), top rung targets `target`
    let down = |out: &mut Vec<Gate>| {
        for j in (1..k - 2).rev() {
            out.push(Gate::toffoli(controls[j + 1], anc[j - 1], anc[j]));
        }
    };
    let up = |out: &mut Vec<Gate>| {
        for j in 1..k - 2 {
            out.push(Gate::toffoli(controls[j + 1], anc[j - 1], anc[j]));
        }
    };
    let top = Gate::toffoli(controls[k - 1], anc[k - 3], target);
    let base = Gate::toffoli(controls[0], controls[1], anc[0]);

    out.push(top.clone());
    down(out);
    out.push(base.clone());
    up(out);
    out.push(top);
    down(out);
    out.push(base);
    up(out);
}

/// Phase `e^{iλ}` on the all-ones pattern of `controls ∪ {target}`, with no
/// idle qubits available.
fn mc_phase(controls: &[usize], target: usize, lambda: f64, out: &mut Vec<Gate>) {
    match controls {
        [] => out.push(Gate::phase(target, lambda)),
        [c] => out.push(Gate::cphase(*c, target, lambda)),
        [rest @ .., last] => {
            let last = *last;
            out.push(Gate::cphase(last, target, lambda / 2.0));
            mcx_network(rest, last, &[target], out);
            out.push(Gate::cphase(last, target, -lambda / 2.0));
            mcx_network(rest, last, &[target], out);
            mc_phase(rest, target, lambda / 2.0, out);
        }
    }
}
