//! Basis-state simulation. Every gate in the IR permutes computational
//! basis states, so a bit vector is a complete description of the state.

use rayon::prelude::*;
use thiserror::Error;

use crate::circuit::{Circuit, CircuitError, Gate, Register};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimError {
    #[error("state width {state} does not match circuit width {circuit}")]
    WidthMismatch { state: usize, circuit: usize },
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error(
        "register {name:?} is {width} bits wide; values wider than 128 bits are not supported"
    )]
    RegisterTooWide { name: String, width: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasisState {
    width: usize,
    words: Vec<u64>,
}

impl BasisState {
    pub fn zeros(width: usize) -> Self {
        Self {
            width,
            words: vec![0; width.div_ceil(64)],
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn get(&self, q: usize) -> bool {
        debug_assert!(q < self.width);
        (self.words[q >> 6] >> (q & 63)) & 1 == 1
    }

    #[inline]
    pub fn flip(&mut self, q: usize) {
        debug_assert!(q < self.width);
        self.words[q >> 6] ^= 1 << (q & 63);
    }

    pub fn set(&mut self, q: usize, v: bool) {
        if self.get(q) != v {
            self.flip(q);
        }
    }

    /// Writes the low `reg.width` bits of `value`, bit j onto qubit offset+j.
    pub fn write(&mut self, reg: &Register, value: u128) -> Result<(), SimError> {
        check_width(reg)?;
        for j in 0..reg.width {
            self.set(reg.offset + j, (value >> j) & 1 == 1);
        }
        Ok(())
    }

    pub fn read(&self, reg: &Register) -> Result<u128, SimError> {
        check_width(reg)?;
        Ok((0..reg.width).fold(0u128, |acc, j| {
            acc | (self.get(reg.offset + j) as u128) << j
        }))
    }

    pub fn xor(&self, other: &BasisState) -> BasisState {
        assert_eq!(self.width, other.width);
        BasisState {
            width: self.width,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a ^ b)
                .collect(),
        }
    }

    pub fn random(width: usize, rng: &mut impl rand::Rng) -> Self {
        let mut s = BasisState {
            width,
            words: (0..width.div_ceil(64)).map(|_| rng.gen()).collect(),
        };
        if !width.is_multiple_of(64) {
            *s.words.last_mut().expect("width > 0") &= (1u64 << (width % 64)) - 1;
        }
        s
    }
}

fn check_width(reg: &Register) -> Result<(), SimError> {
    if reg.width > 128 {
        return Err(SimError::RegisterTooWide {
            name: reg.name.clone(),
            width: reg.width,
        });
    }
    Ok(())
}

#[inline]
fn apply(s: &mut BasisState, g: &Gate) {
    match g {
        Gate::Not { target } => s.flip(*target),
        Gate::Cnot { control, target } => {
            if s.get(*control) {
                s.flip(*target)
            }
        }
        Gate::Ccnot {
            controls: [a, b],
            target,
        } => {
            if s.get(*a) && s.get(*b) {
                s.flip(*target)
            }
        }
        Gate::Swap { a, b } => {
            if s.get(*a) != s.get(*b) {
                s.flip(*a);
                s.flip(*b);
            }
        }
        Gate::Mcx { controls, target } => {
            if controls.iter().all(|&c| s.get(c)) {
                s.flip(*target)
            }
        }
    }
}

pub fn simulate_in_place(c: &Circuit, state: &mut BasisState) -> Result<(), SimError> {
    if state.width != c.width() {
        return Err(SimError::WidthMismatch {
            state: state.width,
            circuit: c.width(),
        });
    }
    c.gates().iter().for_each(|g| apply(state, g));
    Ok(())
}

pub fn simulate(c: &Circuit, input: &BasisState) -> Result<BasisState, SimError> {
    let mut s = input.clone();
    simulate_in_place(c, &mut s)?;
    Ok(s)
}

/// Outcome of comparing one register against expected bits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegisterCheck {
    pub register: String,
    pub expected: u128,
    pub found: u128,
    /// Bit positions within the register that differ.
    pub mismatches: Vec<usize>,
}

impl RegisterCheck {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

pub fn check_register(
    state: &BasisState,
    c: &Circuit,
    name: &str,
    expected: u128,
) -> Result<RegisterCheck, SimError> {
    let reg = c.register(name)?;
    let found = state.read(reg)?;
    let diff = found ^ expected;
    Ok(RegisterCheck {
        register: name.to_string(),
        expected,
        found,
        mismatches: (0..reg.width).filter(|j| (diff >> j) & 1 == 1).collect(),
    })
}

/// 64 basis states packed one lane per bit: `lanes[q]` bit `l` is qubit `q`
/// of state `l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitSliced {
    pub lanes: Vec<u64>,
}

impl BitSliced {
    pub fn pack(states: &[BasisState], width: usize) -> Self {
        assert!(states.len() <= 64);
        let mut lanes = vec![0u64; width];
        for (l, s) in states.iter().enumerate() {
            for (q, lane) in lanes.iter_mut().enumerate() {
                *lane |= (s.get(q) as u64) << l;
            }
        }
        BitSliced { lanes }
    }

    pub fn unpack(&self, count: usize) -> Vec<BasisState> {
        (0..count)
            .map(|l| {
                let mut s = BasisState::zeros(self.lanes.len());
                for (q, lane) in self.lanes.iter().enumerate() {
                    if (lane >> l) & 1 == 1 {
                        s.flip(q);
                    }
                }
                s
            })
            .collect()
    }

    pub fn run(&mut self, c: &Circuit) {
        let x = &mut self.lanes;
        for g in c.gates() {
            match g {
                Gate::Not { target } => x[*target] = !x[*target],
                Gate::Cnot { control, target } => x[*target] ^= x[*control],
                Gate::Ccnot {
                    controls: [a, b],
                    target,
                } => x[*target] ^= x[*a] & x[*b],
                Gate::Swap { a, b } => x.swap(*a, *b),
                Gate::Mcx { controls, target } => {
                    x[*target] ^= controls.iter().fold(u64::MAX, |acc, &q| acc & x[q]);
                }
            }
        }
    }
}

/// Simulates every input, 64 at a time, across the rayon pool. Output order
/// matches input order.
pub fn simulate_batch(c: &Circuit, inputs: &[BasisState]) -> Result<Vec<BasisState>, SimError> {
    if let Some(bad) = inputs.iter().find(|s| s.width != c.width()) {
        return Err(SimError::WidthMismatch {
            state: bad.width,
            circuit: c.width(),
        });
    }
    Ok(inputs
        .par_chunks(64)
        .flat_map_iter(|chunk| {
            let mut b = BitSliced::pack(chunk, c.width());
            b.run(c);
            b.unpack(chunk.len())
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn toy() -> Circuit {
        let mut c = Circuit::new(&[("A", 70), ("P", 1)]).unwrap();
        c.not(3);
        c.cx(3, 65);
        c.ccx(65, 1, 2);
        c.swap(0, 69);
        c
    }

    #[test]
    fn empty_circuit_is_identity() {
        let c = Circuit::new(&[("A", 5)]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let s = BasisState::random(5, &mut rng);
        assert_eq!(simulate(&c, &s).unwrap(), s);
    }

    #[test]
    fn width_mismatch() {
        let c = Circuit::new(&[("A", 5)]).unwrap();
        assert!(matches!(
            simulate(&c, &BasisState::zeros(4)),
            Err(SimError::WidthMismatch { .. })
        ));
    }

    #[test]
    fn wide_mcx() {
        let mut c = Circuit::new(&[("C", 192), ("P", 1)]).unwrap();
        c.push(Gate::Mcx {
            controls: (0..192).collect(),
            target: 192,
        });
        let mut s = BasisState::zeros(193);
        (0..192).for_each(|q| s.flip(q));
        assert!(simulate(&c, &s).unwrap().get(192));
        s.flip(77);
        assert!(!simulate(&c, &s).unwrap().get(192));
    }

    #[test]
    fn check_register_locates_corruption() {
        let c = Circuit::new(&[("A", 8), ("B", 8)]).unwrap();
        let mut s = BasisState::zeros(16);
        let b = c.register("B").unwrap().clone();
        s.write(&b, 0xA5).unwrap();
        assert!(check_register(&s, &c, "B", 0xA5).unwrap().passed());
        s.flip(b.qubit(6));
        let r = check_register(&s, &c, "B", 0xA5).unwrap();
        assert_eq!(r.mismatches, vec![6]);
        assert!(check_register(&s, &c, "Z", 0).is_err());
    }

    #[test]
    fn batch_matches_single() {
        let c = toy();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let inputs: Vec<_> = (0..200).map(|_| BasisState::random(71, &mut rng)).collect();
        let batch = simulate_batch(&c, &inputs).unwrap();
        for (i, s) in inputs.iter().enumerate() {
            assert_eq!(batch[i], simulate(&c, s).unwrap());
        }
    }
}
