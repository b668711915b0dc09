//! In-place `D1 ‖ U0 <- F2(D1 ‖ U0, key1)`: 32 key CNOTs, eight S-boxes,
//! then the bit permutation.

use super::pbox::{emit_pbox, emit_pbox_inv};
use super::sbox::{emit_sbox, emit_sbox_inv};
use super::SynthError;
use crate::circuit::Circuit;

/// Word layout: bits 0..15 on `u0`, bits 16..31 on `d1`.
fn word(d1: &[usize], u0: &[usize], key1: &[usize]) -> Result<Vec<usize>, SynthError> {
    for (len, want) in [(d1.len(), 16), (u0.len(), 16), (key1.len(), 32)] {
        if len != want {
            return Err(SynthError::WidthMismatch {
                expected: want,
                found: len,
            });
        }
    }
    Ok(u0.iter().chain(d1).copied().collect())
}

fn nibble(w: &[usize], n: usize) -> [usize; 4] {
    [w[4 * n], w[4 * n + 1], w[4 * n + 2], w[4 * n + 3]]
}

pub fn emit_f2(
    c: &mut Circuit,
    d1: &[usize],
    u0: &[usize],
    key1: &[usize],
) -> Result<(), SynthError> {
    let w = word(d1, u0, key1)?;
    for m in (16..32).chain(0..16) {
        c.cx(key1[m], w[m]);
    }
    for n in 0..8 {
        emit_sbox(c, nibble(&w, n));
    }
    emit_pbox(c, &w);
    Ok(())
}

pub fn emit_f2_inv(
    c: &mut Circuit,
    d1: &[usize],
    u0: &[usize],
    key1: &[usize],
) -> Result<(), SynthError> {
    let w = word(d1, u0, key1)?;
    emit_pbox_inv(c, &w);
    for n in 0..8 {
        emit_sbox_inv(c, nibble(&w, n));
    }
    for m in (16..32).chain(0..16) {
        c.cx(key1[m], w[m]);
    }
    Ok(())
}

fn standalone(inverse: bool) -> Circuit {
    let mut c = Circuit::new(&[("D1", 16), ("U0", 16), ("KEY1", 32)]).expect("static layout");
    let d1: Vec<usize> = (0..16).collect();
    let u0: Vec<usize> = (16..32).collect();
    let k: Vec<usize> = (32..64).collect();
    if inverse {
        emit_f2_inv(&mut c, &d1, &u0, &k).expect("static widths");
    } else {
        emit_f2(&mut c, &d1, &u0, &k).expect("static widths");
    }
    c
}

pub fn build_f2() -> Circuit {
    standalone(false)
}

pub fn build_f2_inv() -> Circuit {
    standalone(true)
}
