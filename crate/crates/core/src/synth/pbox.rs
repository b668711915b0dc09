//! SWAP network for the 32-bit bit permutation. Besides the fixed points 0
//! and 31 the permutation splits into six 5-cycles; each is walked from a
//! head in the high half, four SWAPs deep.

use super::rotation::walk_cycle;
use crate::cipher::{PERM, PERM_INV};
use crate::circuit::Circuit;

fn cycles(table: &[u8; 32]) -> Vec<Vec<usize>> {
    let mut seen = [false; 32];
    let mut out = Vec::new();
    for i in 0..32 {
        if seen[i] || table[i] as usize == i {
            continue;
        }
        let mut cyc = vec![i];
        seen[i] = true;
        let mut p = table[i] as usize;
        while p != i {
            seen[p] = true;
            cyc.push(p);
            p = table[p] as usize;
        }
        let head = cyc.iter().position(|&p| p >= 16).unwrap_or(0);
        cyc.rotate_left(head);
        out.push(cyc);
    }
    out
}

fn emit(c: &mut Circuit, w: &[usize], table: &[u8; 32]) {
    assert_eq!(w.len(), 32, "bit permutation acts on 32 qubits");
    for cyc in cycles(table) {
        let qs: Vec<usize> = cyc.iter().map(|&p| w[p]).collect();
        walk_cycle(c, &qs);
    }
}

pub fn emit_pbox(c: &mut Circuit, w: &[usize]) {
    emit(c, w, &PERM);
}

pub fn emit_pbox_inv(c: &mut Circuit, w: &[usize]) {
    emit(c, w, &PERM_INV);
}

pub fn build_pbox() -> Circuit {
    let mut c = Circuit::new(&[("W", 32)]).expect("static layout");
    emit_pbox(&mut c, &(0..32).collect::<Vec<_>>());
    c
}

pub fn build_pbox_inv() -> Circuit {
    let mut c = Circuit::new(&[("W", 32)]).expect("static layout");
    emit_pbox_inv(&mut c, &(0..32).collect::<Vec<_>>());
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cipher::{pbox, pbox_inv};
    use crate::resources::{depth, DepthModel};
    use crate::sim::{simulate, BasisState};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn run(c: &Circuit, x: u32) -> u32 {
        let r = c.register("W").unwrap().clone();
        let mut s = BasisState::zeros(32);
        s.write(&r, x as u128).unwrap();
        simulate(c, &s).unwrap().read(&r).unwrap() as u32
    }

    #[test]
    fn six_five_cycles() {
        let cs = cycles(&PERM);
        assert_eq!(cs.len(), 6);
        assert!(cs.iter().all(|c| c.len() == 5 && c[0] >= 16));
    }

    #[test]
    fn matches_classical_permutation() {
        let (p, pi) = (build_pbox(), build_pbox_inv());
        assert_eq!(p.histogram().swap, 24);
        assert_eq!(pi.histogram().swap, 24);
        assert_eq!(depth(&p, &DepthModel::paper()), 12);
        assert_eq!(depth(&pi, &DepthModel::paper()), 12);
        for i in 0..32 {
            assert_eq!(run(&p, 1 << i), pbox(1 << i));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..1000 {
            let x: u32 = rng.gen();
            assert_eq!(run(&p, x), pbox(x));
            assert_eq!(run(&pi, x), pbox_inv(x));
        }
    }
}
