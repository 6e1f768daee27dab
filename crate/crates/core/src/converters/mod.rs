//! Converters between the one-hot, staircase and binary encodings.

mod adder;
mod ub;
mod uo;
mod verify;

use std::fmt;
use std::str::FromStr;

pub use adder::build_adder;
pub use ub::{build_recursion_step, build_ub, ub_ancilla};
pub use uo::{build_cnot_stair, build_uo};
pub use verify::{verify_converter, VerifyCase, VerifyReport, VERIFY_THRESHOLD};

pub(crate) use ub::emit_ub;
pub(crate) use uo::emit_uo;

use crate::circuit::Circuit;
use crate::encodings::{ceil_log2, min_width, EncodingKind};
use crate::error::{Error, Result};

/// How `U_B` handles level counts its divide step cannot take directly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EvenMethod {
    /// Even `N` from `U_B^{(N-1)}` plus an XOR layer and one MCX. No ancilla.
    Recursion,
    /// Even `N` runs as `U_B^{(N+1)}` with one extra |0⟩ qubit.
    ExpandToNPlus1,
    /// Any `N` runs as `U_B^{(2^k+1)}` for the least `2^k + 1 ≥ N`.
    ExpandToPow2,
}

impl EvenMethod {
    pub const ALL: [EvenMethod; 3] = [
        EvenMethod::Recursion,
        EvenMethod::ExpandToNPlus1,
        EvenMethod::ExpandToPow2,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            EvenMethod::Recursion => "recursion",
            EvenMethod::ExpandToNPlus1 => "expand-n-plus-1",
            EvenMethod::ExpandToPow2 => "expand-pow2",
        }
    }
}

impl fmt::Display for EvenMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EvenMethod {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        EvenMethod::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| format!("unknown method `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    EdickToOneHot,
    EdickToBinary,
    OneHotToBinary,
    BinaryToOneHot,
}

impl Direction {
    pub const ALL: [Direction; 4] = [
        Direction::EdickToOneHot,
        Direction::EdickToBinary,
        Direction::OneHotToBinary,
        Direction::BinaryToOneHot,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Direction::EdickToOneHot => "edick-to-onehot",
            Direction::EdickToBinary => "edick-to-binary",
            Direction::OneHotToBinary => "onehot-to-binary",
            Direction::BinaryToOneHot => "binary-to-onehot",
        }
    }

    pub fn input(self) -> EncodingKind {
        match self {
            Direction::EdickToOneHot | Direction::EdickToBinary => EncodingKind::Edick,
            Direction::OneHotToBinary => EncodingKind::OneHot,
            Direction::BinaryToOneHot => EncodingKind::Binary,
        }
    }

    pub fn output(self) -> EncodingKind {
        match self {
            Direction::EdickToOneHot | Direction::BinaryToOneHot => EncodingKind::OneHot,
            Direction::EdickToBinary | Direction::OneHotToBinary => EncodingKind::Binary,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Direction {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Direction::ALL
            .into_iter()
            .find(|d| d.as_str() == s)
            .ok_or_else(|| format!("unknown direction `{s}`"))
    }
}

/// Register layout of a built converter.
///
/// `ancilla` counts every qubit beyond what the input encoding strictly needs,
/// so the `|1⟩` flag qubit of the one-hot side counts as ancilla when the
/// input is staircase or binary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConverterPlan {
    pub levels: usize,
    /// `None` for converters with no `U_B` stage.
    pub method: Option<EvenMethod>,
    pub total_qubits: usize,
    pub ancilla: usize,
    pub direction: Direction,
}

impl ConverterPlan {
    /// Basis index on the full register that carries level `i` on input.
    pub fn input_index(&self, i: usize) -> Result<usize> {
        self.check_level(i)?;
        Ok(match self.direction {
            Direction::EdickToOneHot => ((1 << i) - 1) << 1 | 1,
            Direction::EdickToBinary => (1 << i) - 1,
            Direction::OneHotToBinary => 1 << i,
            Direction::BinaryToOneHot => i << 1 | 1,
        })
    }

    /// Basis index on the full register that carries level `i` on output.
    pub fn output_index(&self, i: usize) -> Result<usize> {
        self.check_level(i)?;
        Ok(match self.direction {
            Direction::EdickToOneHot | Direction::BinaryToOneHot => 1 << i,
            Direction::EdickToBinary => i,
            Direction::OneHotToBinary => i << 1 | 1,
        })
    }

    fn check_level(&self, i: usize) -> Result<()> {
        if i >= self.levels {
            return Err(Error::LevelOutOfRange {
                level: i,
                limit: self.levels,
            });
        }
        Ok(())
    }

    /// Width of the binary register, `⌈log2 N⌉` but at least one qubit.
    pub fn binary_width(&self) -> usize {
        ceil_log2(self.levels).max(1)
    }
}

/// Staircase (with an appended |1⟩) to one-hot: `U_O^{(N)}` on `N` qubits.
pub fn build_edick_to_onehot(n: usize) -> Result<(Circuit, ConverterPlan)> {
    let c = build_uo(n)?;
    let plan = ConverterPlan {
        levels: n,
        method: None,
        total_qubits: n,
        ancilla: 1,
        direction: Direction::EdickToOneHot,
    };
    Ok((c, plan))
}

/// One-hot to binary: `U_O^{-1}` on the rightmost `N` qubits, then `U_B` on
/// everything but the last qubit, which ends in |1⟩.
pub fn build_onehot_to_binary(n: usize, method: EvenMethod) -> Result<(Circuit, ConverterPlan)> {
    let (ub, ub_plan) = build_ub(n, method)?;
    let anc = ub_plan.ancilla;
    let total = anc + n;
    let mut c = Circuit::new(total).with_label(format!("onehot-to-binary N={n} method={method}"));
    let onehot: Vec<usize> = (anc..total).collect();
    let front: Vec<usize> = (0..total - 1).collect();
    c.append_mapped(&build_uo(n)?.inverse(), &onehot);
    c.append_mapped(&ub, &front);
    let plan = ConverterPlan {
        levels: n,
        method: Some(method),
        total_qubits: total,
        ancilla: anc,
        direction: Direction::OneHotToBinary,
    };
    Ok((c, plan))
}

/// Binary (with a trailing |1⟩) to one-hot: the inverse of
/// [`build_onehot_to_binary`].
pub fn build_binary_to_onehot(n: usize, method: EvenMethod) -> Result<(Circuit, ConverterPlan)> {
    let (forward, plan) = build_onehot_to_binary(n, method)?;
    let c = forward
        .inverse()
        .with_label(format!("binary-to-onehot N={n} method={method}"));
    let needed = min_width(EncodingKind::Binary, n);
    let plan = ConverterPlan {
        ancilla: plan.total_qubits - needed,
        direction: Direction::BinaryToOneHot,
        ..plan
    };
    Ok((c, plan))
}

/// Builds the converter for `direction`. `method` is ignored for
/// [`Direction::EdickToOneHot`].
pub fn build_converter(
    direction: Direction,
    n: usize,
    method: EvenMethod,
) -> Result<(Circuit, ConverterPlan)> {
    match direction {
        Direction::EdickToOneHot => build_edick_to_onehot(n),
        Direction::EdickToBinary => build_ub(n, method),
        Direction::OneHotToBinary => build_onehot_to_binary(n, method),
        Direction::BinaryToOneHot => build_binary_to_onehot(n, method),
    }
}
