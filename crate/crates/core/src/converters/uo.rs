use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};

/// Staircase ⊗ |1⟩ to one-hot on `n` qubits, logarithmic depth.
///
/// Level `i` enters as `i + 1` ones right-aligned and leaves as the single
/// leftmost of those ones.
pub fn build_uo(n: usize) -> Result<Circuit> {
    if n < 2 {
        return Err(Error::InvalidLevels(n, "U_O needs N >= 2"));
    }
    let qubits: Vec<usize> = (0..n).collect();
    let mut c = Circuit::new(n).with_label(format!("uo N={n}"));
    emit_uo(&qubits, &mut c);
    Ok(c)
}

pub(crate) fn emit_uo(q: &[usize], c: &mut Circuit) {
    let n = q.len();
    match n {
        0 | 1 => {}
        2 => c.push(Gate::cnot(q[0], q[1])),
        _ if n.is_multiple_of(2) => {
            // pairs (2t, 2t+1): a full pair becomes |10⟩, a lone right half stays |01⟩
            for t in 0..n / 2 {
                c.push(Gate::cnot(q[2 * t], q[2 * t + 1]));
            }
            let lefts: Vec<usize> = q.iter().step_by(2).copied().collect();
            emit_uo(&lefts, c);
            for t in 0..n / 2 - 1 {
                c.push(Gate::cnot(q[2 * t + 1], q[2 * t + 2]));
            }
        }
        _ => {
            emit_uo(&q[1..], c);
            c.push(Gate::cnot(q[0], q[1]));
        }
    }
}

/// Quadratic-size baseline with the same contract as [`build_uo`]:
/// `CNOT(a -> b)` for every `a < b`, row by row. Depth `2N - 3`.
pub fn build_cnot_stair(n: usize) -> Result<Circuit> {
    if n < 2 {
        return Err(Error::InvalidLevels(n, "CNOT stair needs N >= 2"));
    }
    let mut c = Circuit::new(n).with_label(format!("cnot-stair N={n}"));
    for a in 0..n {
        for b in a + 1..n {
            c.push(Gate::cnot(a, b));
        }
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statevector::{ket, Statevector};

    fn run(c: &Circuit, bits: &str) -> Statevector {
        ket(bits).evolved(c).unwrap()
    }

    #[test]
    fn four_level_trace() {
        let uo = build_uo(4).unwrap();
        assert_eq!(run(&uo, "0001"), ket("0001"));
        assert_eq!(run(&uo, "0011"), ket("0010"));
        assert_eq!(run(&uo, "0111"), ket("0100"));
        assert_eq!(run(&uo, "1111"), ket("1000"));
    }

    #[test]
    fn four_level_layers() {
        // {0->1, 2->3}, {0->2}, {1->2}
        let uo = build_uo(4).unwrap();
        assert_eq!(
            uo.gates(),
            &[
                Gate::cnot(0, 1),
                Gate::cnot(2, 3),
                Gate::cnot(0, 2),
                Gate::cnot(1, 2)
            ]
        );
        assert_eq!(uo.depth(), 3);
    }

    #[test]
    fn five_level_top() {
        let uo = build_uo(5).unwrap();
        assert_eq!(run(&uo, "11111"), ket("10000"));
        assert_eq!(run(&uo, "00111"), ket("00100"));
    }

    #[test]
    fn two_levels_is_cnot() {
        let uo = build_uo(2).unwrap();
        assert_eq!(uo.gates(), &[Gate::cnot(0, 1)]);
        assert_eq!(build_cnot_stair(2).unwrap().gates(), uo.gates());
    }

    #[test]
    fn inverse_of_four_level() {
        let inv = build_uo(4).unwrap().inverse();
        assert_eq!(run(&inv, "0001"), ket("0001"));
        assert_eq!(run(&inv, "1000"), ket("1111"));
    }

    #[test]
    fn stair_matches_uo_on_every_level() {
        for n in 2..=12 {
            let uo = build_uo(n).unwrap();
            let stair = build_cnot_stair(n).unwrap();
            for j in 1..=n {
                let input = Statevector::basis(n, (1 << j) - 1);
                let expect = Statevector::basis(n, 1 << (j - 1));
                assert_eq!(input.clone().evolved(&uo).unwrap(), expect, "uo n={n} j={j}");
                assert_eq!(input.evolved(&stair).unwrap(), expect, "stair n={n} j={j}");
            }
        }
    }

    #[test]
    fn stair_cost() {
        for n in 3..=10 {
            let s = build_cnot_stair(n).unwrap();
            assert_eq!(s.depth(), 2 * n - 3);
            assert_eq!(s.len(), n * (n - 1) / 2);
        }
    }

    #[test]
    fn rejects_small_n() {
        assert!(build_uo(1).is_err());
        assert!(build_cnot_stair(0).is_err());
    }
}
