//! Builders lowering every GFSPX component to the circuit IR.

mod adder;
mod f1;
mod f2;
mod pbox;
mod rotation;
mod round;
mod sbox;

pub use adder::{build_adder16, build_adder_mod2n, emit_adder};
pub use f1::{build_f1, build_f1_inv, emit_f1, emit_f1_inv};
pub use f2::{build_f2, build_f2_inv, emit_f2, emit_f2_inv};
pub use pbox::{build_pbox, build_pbox_inv, emit_pbox, emit_pbox_inv};
pub use rotation::{build_rotation, emit_rotation, RotationStrategy};
pub use round::{
    build_gfspx, build_gfspx_inv, build_key_update, build_round, cipher_circuit,
    emit_branch_exchange, emit_gfspx, emit_key_update, emit_round, CipherQubits, CIPHER_LAYOUT,
    CIPHER_WIDTH,
};
pub use sbox::{build_sbox, build_sbox_inv, emit_sbox, emit_sbox_inv};

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::circuit::{CircuitError, GateHistogram, Register};
use crate::published::published;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SynthError {
    #[error("expected width {expected}, found {found}")]
    WidthMismatch { expected: usize, found: usize },
    #[error("rotation by {amount} is invalid on width {width}")]
    BadRotation { amount: usize, width: usize },
    #[error("round index {0} out of range")]
    RoundOutOfRange(usize),
    #[error("unknown component {0:?}")]
    UnknownComponent(String),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}

/// Components addressable by name from the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Component {
    Sbox,
    SboxInv,
    Pbox,
    PboxInv,
    Adder,
    F1,
    F1Inv,
    F2,
    F2Inv,
    KeyUpdate(usize),
    Round(usize),
    Gfspx,
    GfspxInv,
    Oracle(usize),
}

impl FromStr for Component {
    type Err = SynthError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || SynthError::UnknownComponent(s.to_string());
        let index = |v: &str, lo: usize| {
            v.parse::<usize>()
                .ok()
                .filter(|i| (lo..crate::cipher::ROUNDS).contains(i))
        };
        Ok(match s {
            "sbox" => Component::Sbox,
            "sbox-inv" => Component::SboxInv,
            "pbox" => Component::Pbox,
            "pbox-inv" => Component::PboxInv,
            "adder" => Component::Adder,
            "f1" => Component::F1,
            "f1-inv" => Component::F1Inv,
            "f2" => Component::F2,
            "f2-inv" => Component::F2Inv,
            "gfspx" => Component::Gfspx,
            "gfspx-inv" => Component::GfspxInv,
            _ => match s.split_once(':') {
                Some(("keyupdate", i)) => Component::KeyUpdate(index(i, 1).ok_or_else(unknown)?),
                Some(("round", i)) => Component::Round(index(i, 0).ok_or_else(unknown)?),
                Some(("oracle", "r=2")) => Component::Oracle(2),
                Some(("oracle", "r=3")) => Component::Oracle(3),
                _ => return Err(unknown()),
            },
        })
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Component::Sbox => f.write_str("sbox"),
            Component::SboxInv => f.write_str("sbox-inv"),
            Component::Pbox => f.write_str("pbox"),
            Component::PboxInv => f.write_str("pbox-inv"),
            Component::Adder => f.write_str("adder"),
            Component::F1 => f.write_str("f1"),
            Component::F1Inv => f.write_str("f1-inv"),
            Component::F2 => f.write_str("f2"),
            Component::F2Inv => f.write_str("f2-inv"),
            Component::KeyUpdate(i) => write!(f, "keyupdate:{i}"),
            Component::Round(i) => write!(f, "round:{i}"),
            Component::Gfspx => f.write_str("gfspx"),
            Component::GfspxInv => f.write_str("gfspx-inv"),
            Component::Oracle(r) => write!(f, "oracle:r={r}"),
        }
    }
}

impl Component {
    /// Every cipher-level component, in table order.
    pub fn table_rows() -> Vec<Component> {
        let mut v = vec![
            Component::Sbox,
            Component::SboxInv,
            Component::Pbox,
            Component::PboxInv,
            Component::KeyUpdate(1),
            Component::Adder,
            Component::F1,
            Component::F1Inv,
            Component::F2,
            Component::F2Inv,
            Component::Round(0),
            Component::Round(1),
        ];
        v.push(Component::Gfspx);
        v
    }

    /// Builds everything except the oracle, which needs known pairs.
    pub fn build(&self) -> Result<crate::circuit::Circuit, SynthError> {
        let r16 = |n: &str| Register {
            name: n.into(),
            offset: 0,
            width: 16,
        };
        Ok(match self {
            Component::Sbox => build_sbox(),
            Component::SboxInv => build_sbox_inv(),
            Component::Pbox => build_pbox(),
            Component::PboxInv => build_pbox_inv(),
            Component::Adder => build_adder16(),
            Component::F1 => build_f1(&r16("X"), &r16("ANC"))?,
            Component::F1Inv => build_f1_inv(&r16("X"), &r16("ANC"))?,
            Component::F2 => build_f2(),
            Component::F2Inv => build_f2_inv(),
            Component::KeyUpdate(i) => build_key_update(*i)?,
            Component::Round(i) => build_round(*i)?,
            Component::Gfspx => build_gfspx(),
            Component::GfspxInv => build_gfspx_inv(),
            Component::Oracle(_) => {
                return Err(SynthError::UnknownComponent(format!("{self} needs pairs")))
            }
        })
    }
}

/// Published per-component gate counts and depth.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SynthBudget {
    pub component: String,
    pub histogram: GateHistogram,
    pub depth: u64,
}

impl SynthBudget {
    pub fn for_component(c: Component) -> Option<SynthBudget> {
        let row = published().component(&c.to_string())?;
        Some(SynthBudget {
            component: c.to_string(),
            histogram: GateHistogram::nct_swap(row.not, row.cnot, row.ccnot, row.swap),
            depth: row.depth,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn component_names_round_trip() {
        for name in [
            "sbox",
            "sbox-inv",
            "pbox",
            "pbox-inv",
            "adder",
            "f1",
            "f1-inv",
            "f2",
            "f2-inv",
            "keyupdate:7",
            "round:0",
            "round:19",
            "gfspx",
            "gfspx-inv",
            "oracle:r=2",
            "oracle:r=3",
        ] {
            assert_eq!(name.parse::<Component>().unwrap().to_string(), name);
        }
        for bad in ["keyupdate:0", "round:20", "oracle:r=4", "sbox2", "round:x"] {
            assert!(bad.parse::<Component>().is_err(), "{bad}");
        }
    }

    #[test]
    fn composite_budgets_add_up() {
        let b = |c| SynthBudget::for_component(c).unwrap().histogram;
        let f1 = b(Component::F1);
        let round0 = &(&(&f1 * 4) + &b(Component::F2)) + &GateHistogram::nct_swap(0, 64, 0, 0);
        assert_eq!(round0, b(Component::Round(0)));
        assert_eq!(
            b(Component::Round(0)) + b(Component::KeyUpdate(5)),
            b(Component::Round(5))
        );
        let full = b(Component::Round(0))
            + (1..20)
                .map(|i| b(Component::Round(i)))
                .sum::<GateHistogram>()
            + GateHistogram::nct_swap(0, 0, 0, 19 * 32);
        assert_eq!(full, b(Component::Gfspx));
    }
}
