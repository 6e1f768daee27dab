//! OpenQASM 2.0 subset: one `q` register and the gates
//! `x, h, ry, u1, cx, cu1, ccx`. Other gates are lowered before emission.

use std::fmt::Write;

use super::decompose::{lower, Lowering};
use super::{Circuit, Gate, GateKind};
use crate::error::{Error, Result};

const LABEL_PREFIX: &str = "// label: ";

pub fn emit_text(c: &Circuit) -> String {
    let lowered = lower(c, Lowering::Text);
    let mut s = String::new();
    s.push_str("OPENQASM 2.0;\n");
    s.push_str("include \"qelib1.inc\";\n");
    if !c.label().is_empty() {
        let _ = writeln!(s, "{LABEL_PREFIX}{}", c.label().replace('\n', " "));
    }
    let _ = writeln!(s, "qreg q[{}];", c.num_qubits());
    for g in lowered.gates() {
        let _ = writeln!(s, "{g}");
    }
    s
}

pub fn parse_text(text: &str) -> Result<Circuit> {
    let mut circuit: Option<Circuit> = None;
    let mut label = String::new();
    let mut saw_header = false;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let err = |msg: String| Error::Parse { line: line_no, msg };
        let line = raw.trim();
        if let Some(l) = line.strip_prefix(LABEL_PREFIX) {
            label = l.to_string();
            continue;
        }
        let line = match line.find("//") {
            Some(p) => line[..p].trim(),
            None => line,
        };
        if line.is_empty() {
            continue;
        }
        let stmt = line
            .strip_suffix(';')
            .ok_or_else(|| err("missing ';'".into()))?
            .trim();

        if !saw_header {
            if stmt != "OPENQASM 2.0" {
                return Err(err(format!("expected 'OPENQASM 2.0;', found '{line}'")));
            }
            saw_header = true;
            continue;
        }
        if stmt.starts_with("include") {
            continue;
        }
        if let Some(rest) = stmt.strip_prefix("qreg") {
            if circuit.is_some() {
                return Err(err("only one register is supported".into()));
            }
            let n = parse_operand(rest.trim(), "q")
                .ok_or_else(|| err(format!("bad register declaration '{stmt}'")))?;
            circuit = Some(Circuit::new(n));
            continue;
        }

        let c = circuit
            .as_mut()
            .ok_or_else(|| err("gate before qreg declaration".into()))?;
        let gate = parse_gate(stmt).map_err(err)?;
        c.try_push(gate).map_err(|e| err(e.to_string()))?;
    }

    let c = circuit.ok_or(Error::Parse {
        line: text.lines().count(),
        msg: "no qreg declaration".into(),
    })?;
    Ok(c.with_label(label))
}

/// Parses `q[7]` style operands.
fn parse_operand(s: &str, reg: &str) -> Option<usize> {
    let inner = s.strip_prefix(reg)?.trim().strip_prefix('[')?.strip_suffix(']')?;
    inner.trim().parse().ok()
}

fn parse_gate(stmt: &str) -> std::result::Result<Gate, String> {
    // operands never contain ')', so a parameter list ends at the first one
    let split = match stmt.find(')') {
        Some(close) => close + 1,
        None => stmt
            .find(char::is_whitespace)
            .ok_or_else(|| format!("cannot parse '{stmt}'"))?,
    };
    let (head, args) = (stmt[..split].trim(), stmt[split..].trim());
    let (name, angle) = match head.split_once('(') {
        Some((name, rest)) => {
            let a = rest
                .strip_suffix(')')
                .ok_or_else(|| format!("unterminated parameter in '{head}'"))?;
            let v: f64 = a.trim().parse().map_err(|_| format!("bad angle '{a}'"))?;
            (name, Some(v))
        }
        None => (head, None),
    };
    let qubits = args
        .split(',')
        .map(|a| parse_operand(a.trim(), "q").ok_or_else(|| format!("bad operand '{a}'")))
        .collect::<std::result::Result<Vec<_>, _>>()?;

    let need_angle = |a: Option<f64>| a.ok_or_else(|| format!("'{name}' needs an angle"));
    let kind = match name {
        "x" => GateKind::X,
        "h" => GateKind::H,
        "cx" => GateKind::Cnot,
        "ccx" => GateKind::Toffoli,
        "ry" => GateKind::Ry(need_angle(angle)?),
        "u1" => GateKind::Phase(need_angle(angle)?),
        "cu1" => GateKind::CPhase(need_angle(angle)?),
        other => return Err(format!("unsupported gate '{other}'")),
    };
    if angle.is_some() && kind.angle().is_none() {
        return Err(format!("'{name}' takes no angle"));
    }
    let (&target, controls) = qubits
        .split_last()
        .ok_or_else(|| format!("'{name}' without operands"))?;
    Gate::new(kind, controls.to_vec(), target).map_err(|e| e.to_string())
}
