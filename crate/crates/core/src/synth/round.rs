//! Key update, round and whole-cipher circuits on the standard 209-qubit
//! layout.

use super::f1::{emit_f1, emit_f1_inv};
use super::f2::emit_f2;
use super::rotation::{emit_rotation, RotationStrategy};
use super::sbox::emit_sbox;
use super::SynthError;
use crate::cipher::{round_constant, KEY_ROTATION, ROUNDS};
use crate::circuit::Circuit;

/// Register layout of one cipher instance; 209 qubits.
pub const CIPHER_LAYOUT: [(&str, usize); 7] = [
    ("D0", 16),
    ("D1", 16),
    ("U0", 16),
    ("U1", 16),
    ("ANC", 16),
    ("CARRY", 1),
    ("KEY", 128),
];

pub const CIPHER_WIDTH: usize = 209;

/// Qubit indices of one cipher instance inside some host circuit.
#[derive(Debug, Clone)]
pub struct CipherQubits {
    pub d0: Vec<usize>,
    pub d1: Vec<usize>,
    pub u0: Vec<usize>,
    pub u1: Vec<usize>,
    pub anc: Vec<usize>,
    pub carry: usize,
    pub key: Vec<usize>,
}

impl CipherQubits {
    /// Resolves registers named `D0{suffix}`, `D1{suffix}`, ...
    pub fn resolve(c: &Circuit, suffix: &str) -> Result<Self, SynthError> {
        let q = |name: &str| c.qubits_of(&format!("{name}{suffix}"));
        Ok(Self {
            d0: q("D0")?,
            d1: q("D1")?,
            u0: q("U0")?,
            u1: q("U1")?,
            anc: q("ANC")?,
            carry: q("CARRY")?[0],
            key: q("KEY")?,
        })
    }

    /// Ciphertext qubits, block bit `j` (LSB first) at index `j`.
    pub fn block(&self) -> Vec<usize> {
        self.u1
            .iter()
            .chain(&self.u0)
            .chain(&self.d1)
            .chain(&self.d0)
            .copied()
            .collect()
    }
}

pub fn cipher_circuit() -> Circuit {
    Circuit::new(&CIPHER_LAYOUT).expect("static layout")
}

fn check_round(i: usize, first: usize) -> Result<(), SynthError> {
    if i < first || i >= ROUNDS {
        return Err(SynthError::RoundOutOfRange(i));
    }
    Ok(())
}

/// `K^{i-1} -> K^i` on a 128-qubit key register (bit j on `key[j]`).
pub fn emit_key_update(c: &mut Circuit, key: &[usize], i: usize) -> Result<(), SynthError> {
    check_round(i, 1)?;
    if key.len() != 128 {
        return Err(SynthError::WidthMismatch {
            expected: 128,
            found: key.len(),
        });
    }
    emit_rotation(c, key, KEY_ROTATION as usize, RotationStrategy::Layered)?;
    emit_sbox(c, [key[124], key[125], key[126], key[127]]);
    emit_sbox(c, [key[120], key[121], key[122], key[123]]);
    let rc = round_constant(i);
    for b in 0..5 {
        if (rc >> b) & 1 == 1 {
            c.not(key[10 + b]);
        }
    }
    Ok(())
}

pub fn build_key_update(i: usize) -> Result<Circuit, SynthError> {
    let mut c = Circuit::new(&[("KEY", 128)])?;
    emit_key_update(&mut c, &(0..128).collect::<Vec<_>>(), i)?;
    Ok(c)
}

/// One round without the trailing branch exchange. Leaves
/// `D0 = U0'`, `D1 = U1'`, `U0 = D0'`, `U1 = D1'`.
pub fn emit_round(c: &mut Circuit, q: &CipherQubits, i: usize) -> Result<(), SynthError> {
    check_round(i, 0)?;
    if i >= 1 {
        emit_key_update(c, &q.key, i)?;
    }
    for (x, out) in [(&q.u0, &q.u1), (&q.d1, &q.d0)] {
        emit_f1(c, x, &q.anc, q.carry)?;
        for (&a, &o) in q.anc.iter().zip(out.iter()) {
            c.cx(a, o);
        }
        emit_f1_inv(c, x, &q.anc, q.carry)?;
    }
    for j in 0..16 {
        c.cx(q.key[112 + j], q.d0[j]);
    }
    for j in 0..16 {
        c.cx(q.key[64 + j], q.u1[j]);
    }
    emit_f2(c, &q.d1, &q.u0, &q.key[80..112])?;
    Ok(())
}

pub fn emit_branch_exchange(c: &mut Circuit, q: &CipherQubits) {
    for j in 0..16 {
        c.swap(q.d0[j], q.u0[j]);
    }
    for j in 0..16 {
        c.swap(q.d1[j], q.u1[j]);
    }
}

pub fn emit_gfspx(c: &mut Circuit, q: &CipherQubits) -> Result<(), SynthError> {
    for i in 0..ROUNDS {
        emit_round(c, q, i)?;
        if i + 1 < ROUNDS {
            emit_branch_exchange(c, q);
        }
    }
    Ok(())
}

pub fn build_round(i: usize) -> Result<Circuit, SynthError> {
    let mut c = cipher_circuit();
    let q = CipherQubits::resolve(&c, "")?;
    emit_round(&mut c, &q, i)?;
    Ok(c)
}

pub fn build_gfspx() -> Circuit {
    let mut c = cipher_circuit();
    let q = CipherQubits::resolve(&c, "").expect("static layout");
    emit_gfspx(&mut c, &q).expect("round indices in range");
    c
}

pub fn build_gfspx_inv() -> Circuit {
    build_gfspx().inverse()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cipher::{key_states, key_update, round, CipherState, RoundSubkeys};
    use crate::circuit::GateHistogram;
    use crate::resources::{depth, DepthModel};
    use crate::sim::{simulate, BasisState};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn load(c: &Circuit, block: u64, key: u128) -> BasisState {
        let mut s = BasisState::zeros(c.width());
        let st = CipherState::from_block(block);
        for (name, v) in [("D0", st.d0), ("D1", st.d1), ("U0", st.u0), ("U1", st.u1)] {
            s.write(c.register(name).unwrap(), v as u128).unwrap();
        }
        s.write(c.register("KEY").unwrap(), key).unwrap();
        s
    }

    fn data(c: &Circuit, s: &BasisState) -> CipherState {
        let r = |n: &str| s.read(c.register(n).unwrap()).unwrap() as u16;
        CipherState {
            d0: r("D0"),
            d1: r("D1"),
            u0: r("U0"),
            u1: r("U1"),
        }
    }

    #[test]
    fn key_update_rows() {
        let mut rc_nots = 0;
        for i in 1..ROUNDS {
            let h = build_key_update(i).unwrap().histogram();
            let rc = round_constant(i).count_ones() as u64;
            assert_eq!(h, GateHistogram::nct_swap(4 + rc, 10, 8, 131));
            rc_nots += h.not - 4;
        }
        assert_eq!(rc_nots, 40);
        assert_eq!(build_key_update(1).unwrap().histogram().not, 5);
        assert!(build_key_update(0).is_err());
        assert!(build_key_update(20).is_err());
    }

    #[test]
    fn key_update_matches_schedule() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for i in 1..ROUNDS {
            let c = build_key_update(i).unwrap();
            let reg = c.register("KEY").unwrap().clone();
            for _ in 0..60 {
                let k: u128 = rng.gen();
                let mut s = BasisState::zeros(128);
                s.write(&reg, k).unwrap();
                let out = simulate(&c, &s).unwrap().read(&reg).unwrap();
                assert_eq!(out, key_update(k, i).unwrap());
            }
        }
    }

    #[test]
    fn round_rows() {
        assert_eq!(
            build_round(0).unwrap().histogram(),
            GateHistogram::nct_swap(120, 556, 148, 100)
        );
        for i in 1..ROUNDS {
            let rc = round_constant(i).count_ones() as u64;
            assert_eq!(
                build_round(i).unwrap().histogram(),
                GateHistogram::nct_swap(124 + rc, 566, 156, 231)
            );
        }
    }

    #[test]
    fn round_matches_classical_last_round_wiring() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let c = build_round(0).unwrap();
        for _ in 0..300 {
            let (p, k): (u64, u128) = (rng.gen(), rng.gen());
            let out = simulate(&c, &load(&c, p, k)).unwrap();
            let want = round(CipherState::from_block(p), RoundSubkeys::extract(k), true);
            assert_eq!(data(&c, &out), want);
            assert_eq!(out.read(c.register("ANC").unwrap()).unwrap(), 0);
            assert_eq!(out.read(c.register("KEY").unwrap()).unwrap(), k);
        }
    }

    #[test]
    fn full_cipher_histogram_and_width() {
        let c = build_gfspx();
        assert_eq!(c.width(), CIPHER_WIDTH);
        let h = c.histogram();
        assert_eq!(h, GateHistogram::nct_swap(2516, 11310, 3112, 5097));
        assert_eq!(h.total(), 22_035);
        let parts: GateHistogram = (0..ROUNDS)
            .map(|i| build_round(i).unwrap().histogram())
            .sum();
        assert_eq!(parts + GateHistogram::nct_swap(0, 0, 0, 19 * 32), h);
    }

    #[test]
    fn full_cipher_encrypts() {
        let c = build_gfspx();
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for _ in 0..200 {
            let (p, k): (u64, u128) = (rng.gen(), rng.gen());
            let out = simulate(&c, &load(&c, p, k)).unwrap();
            assert_eq!(data(&c, &out).to_block(), crate::cipher::encrypt(p, k));
            assert_eq!(
                out.read(c.register("KEY").unwrap()).unwrap(),
                key_states(k)[ROUNDS - 1]
            );
        }
    }

    #[test]
    fn depths() {
        let m = DepthModel::paper();
        let r0 = depth(&build_round(0).unwrap(), &m);
        let r1 = depth(&build_round(1).unwrap(), &m);
        let full = depth(&build_gfspx(), &m);
        assert_eq!((r0, r1), (378, 378));
        assert!(
            (full as f64 - 7617.0).abs() <= 0.02 * 7617.0,
            "full depth {full}"
        );
    }
}
