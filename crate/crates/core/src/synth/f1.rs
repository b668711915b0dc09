//! `ANC <- F1(X)` on a clean 16-qubit ancilla:
//! copy X, rotate the copy by 5, add X into it, then XOR in X <<< 1.

use std::sync::OnceLock;

use super::adder::emit_adder;
use super::rotation::{emit_rotation, RotationStrategy};
use super::SynthError;
use crate::cipher::{F1_ADD_ROTATION, F1_XOR_ROTATION};
use crate::circuit::{Circuit, Register};

/// Head of the rotation's star walk; keeps F1 at depth 81 under paper-mode weights.
const WALK_START: usize = 1;

fn emit_f1_gates(
    c: &mut Circuit,
    x: &[usize],
    anc: &[usize],
    carry: usize,
) -> Result<(), SynthError> {
    for j in 0..16 {
        c.cx(x[j], anc[j]);
    }
    emit_rotation(
        c,
        anc,
        F1_ADD_ROTATION as usize,
        RotationStrategy::CycleWalk { start: WALK_START },
    )?;
    emit_adder(c, x, anc, carry)?;
    for j in 0..16 {
        c.cx(x[j], anc[(j + F1_XOR_ROTATION as usize) % 16]);
    }
    Ok(())
}

fn f1_circuit() -> &'static Circuit {
    static F1: OnceLock<Circuit> = OnceLock::new();
    F1.get_or_init(|| {
        let mut c = Circuit::new(&[("X", 16), ("ANC", 16), ("CARRY", 1)]).expect("static layout");
        let x: Vec<usize> = (0..16).collect();
        let anc: Vec<usize> = (16..32).collect();
        emit_f1_gates(&mut c, &x, &anc, 32).expect("16-bit operands");
        c
    })
}

fn f1_inv_circuit() -> &'static Circuit {
    static F1_INV: OnceLock<Circuit> = OnceLock::new();
    F1_INV.get_or_init(|| f1_circuit().inverse())
}

fn check(x: &[usize], anc: &[usize]) -> Result<Vec<usize>, SynthError> {
    if x.len() != 16 || anc.len() != 16 {
        return Err(SynthError::WidthMismatch {
            expected: 16,
            found: if x.len() != 16 { x.len() } else { anc.len() },
        });
    }
    Ok(x.iter().chain(anc).copied().collect())
}

pub fn emit_f1(
    c: &mut Circuit,
    x: &[usize],
    anc: &[usize],
    carry: usize,
) -> Result<(), SynthError> {
    let mut map = check(x, anc)?;
    map.push(carry);
    c.extend_mapped(f1_circuit(), &map)?;
    Ok(())
}

pub fn emit_f1_inv(
    c: &mut Circuit,
    x: &[usize],
    anc: &[usize],
    carry: usize,
) -> Result<(), SynthError> {
    let mut map = check(x, anc)?;
    map.push(carry);
    c.extend_mapped(f1_inv_circuit(), &map)?;
    Ok(())
}

/// Standalone F1 over registers named after `x_reg` and `anc_reg`, plus a
/// `CARRY` qubit for the adder.
pub fn build_f1(x_reg: &Register, anc_reg: &Register) -> Result<Circuit, SynthError> {
    if x_reg.width != 16 || anc_reg.width != 16 {
        return Err(SynthError::WidthMismatch {
            expected: 16,
            found: x_reg.width.max(anc_reg.width),
        });
    }
    let c = f1_circuit().clone();
    let host = Circuit::new(&[
        (x_reg.name.as_str(), 16),
        (anc_reg.name.as_str(), 16),
        ("CARRY", 1),
    ])?;
    Ok(c.remap(
        &[
            ("X", &x_reg.name),
            ("ANC", &anc_reg.name),
            ("CARRY", "CARRY"),
        ],
        &host,
    )?)
}

pub fn build_f1_inv(x_reg: &Register, anc_reg: &Register) -> Result<Circuit, SynthError> {
    Ok(build_f1(x_reg, anc_reg)?.inverse())
}

#[cfg(test)]
fn default_f1() -> Circuit {
    f1_circuit().clone()
}
