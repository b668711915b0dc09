//! In-place 4-bit S-box circuits. Qubit 0 carries the nibble's LSB.

use crate::circuit::{Circuit, Gate};

/// `(kind, qubits)` with the target last; SWAPs list both wires.
type Step = (char, &'static [usize]);

const FORWARD: [Step; 13] = [
    ('c', &[2, 1]),
    ('t', &[1, 2, 3]),
    ('t', &[1, 3, 2]),
    ('t', &[0, 2, 1]),
    ('c', &[1, 2]),
    ('c', &[3, 0]),
    ('c', &[3, 2]),
    ('c', &[0, 1]),
    ('n', &[1]),
    ('t', &[1, 2, 3]),
    ('n', &[3]),
    ('s', &[1, 3]),
    ('s', &[2, 1]),
];

const INVERSE: [Step; 14] = [
    ('c', &[0, 2]),
    ('t', &[1, 3, 2]),
    ('c', &[2, 3]),
    ('n', &[2]),
    ('c', &[3, 1]),
    ('t', &[1, 2, 3]),
    ('c', &[2, 0]),
    ('c', &[0, 3]),
    ('t', &[0, 3, 1]),
    ('t', &[1, 3, 0]),
    ('c', &[1, 3]),
    ('s', &[0, 3]),
    ('s', &[1, 2]),
    ('s', &[1, 0]),
];

fn emit(c: &mut Circuit, q: [usize; 4], steps: &[Step]) {
    for (kind, w) in steps {
        let gate = match kind {
            'n' => Gate::Not { target: q[w[0]] },
            'c' => Gate::Cnot {
                control: q[w[0]],
                target: q[w[1]],
            },
            't' => Gate::Ccnot {
                controls: [q[w[0]], q[w[1]]],
                target: q[w[2]],
            },
            's' => Gate::Swap {
                a: q[w[0]],
                b: q[w[1]],
            },
            _ => unreachable!("step table uses n/c/t/s"),
        };
        c.push(gate);
    }
}

pub fn emit_sbox(c: &mut Circuit, q: [usize; 4]) {
    emit(c, q, &FORWARD);
}

/// Eleven NCT gates plus three SWAPs: (1 NOT, 6 CNOT, 4 CCNOT, 3 SWAP).
pub fn emit_sbox_inv(c: &mut Circuit, q: [usize; 4]) {
    emit(c, q, &INVERSE);
}

pub fn build_sbox() -> Circuit {
    let mut c = Circuit::new(&[("X", 4)]).expect("static layout");
    emit_sbox(&mut c, [0, 1, 2, 3]);
    c
}

pub fn build_sbox_inv() -> Circuit {
    let mut c = Circuit::new(&[("X", 4)]).expect("static layout");
    emit_sbox_inv(&mut c, [0, 1, 2, 3]);
    c
}
