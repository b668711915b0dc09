//! Circuit-vs-classical equivalence suites. Every case compares the whole
//! output state, so ancilla cleanliness and operand preservation are checked
//! along with the computed register.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::cipher::{
    decrypt, encrypt, f1, f2, f2_inv, key_states, key_update, pbox, pbox_inv, round, sbox,
    sbox_inv, CipherState, RoundSubkeys, ROUNDS,
};
use crate::circuit::Circuit;
use crate::grover::{build_oracle, oracle_input, GroverError, OracleSpec};
use crate::sim::{simulate_batch, BasisState, SimError};
use crate::synth::{Component, SynthError};

/// Suite seed used when neither a flag nor `GFSPX_SEED` provides one.
pub const DEFAULT_SEED: u64 = 0x6F5A_2024;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Synth(#[from] SynthError),
    #[error(transparent)]
    Grover(#[from] GroverError),
    #[error(transparent)]
    Sim(#[from] SimError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub component: String,
    pub seed: u64,
    pub cases: usize,
    pub passed: usize,
    pub failed: usize,
    /// First few failing cases, described.
    pub failures: Vec<String>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

struct Suite {
    circuit: Circuit,
    cases: Vec<(BasisState, BasisState)>,
}

fn load(c: &Circuit, values: &[(&str, u128)]) -> BasisState {
    let mut s = BasisState::zeros(c.width());
    for (name, v) in values {
        s.write(c.register(name).expect("builder register"), *v)
            .expect("value fits");
    }
    s
}

fn block_regs(block: u64) -> [(&'static str, u128); 4] {
    let st = CipherState::from_block(block);
    [
        ("D0", st.d0 as u128),
        ("D1", st.d1 as u128),
        ("U0", st.u0 as u128),
        ("U1", st.u1 as u128),
    ]
}

fn with_key(block: u64, key: u128) -> Vec<(&'static str, u128)> {
    let mut v = block_regs(block).to_vec();
    v.push(("KEY", key));
    v
}

fn suite(comp: Component, samples: usize, rng: &mut ChaCha8Rng) -> Result<Suite, VerifyError> {
    let circuit = match comp {
        Component::Oracle(r) => {
            let key: u128 = rng.gen();
            let spec = OracleSpec::planted(r, key, rng)?;
            let c = build_oracle(&spec)?;
            let phase = c.register("PHASE").expect("oracle layout").offset;
            let mut cases = Vec::with_capacity(samples + 1);
            let hit = oracle_input(&spec, &c, key)?;
            let mut flipped = hit.clone();
            flipped.flip(phase);
            cases.push((hit, flipped));
            for _ in 0..samples {
                let mut wrong: u128 = rng.gen();
                if wrong == key {
                    wrong ^= 1;
                }
                let s = oracle_input(&spec, &c, wrong)?;
                cases.push((s.clone(), s));
            }
            return Ok(Suite { circuit: c, cases });
        }
        _ => comp.build()?,
    };
    let c = &circuit;
    let mut cases = Vec::new();
    let mut add = |input: &[(&str, u128)], output: &[(&str, u128)]| {
        cases.push((load(c, input), load(c, output)))
    };
    match comp {
        Component::Sbox | Component::SboxInv => {
            for x in 0..16u8 {
                let y = if comp == Component::Sbox {
                    sbox(x)
                } else {
                    sbox_inv(x)
                }
                .expect("nibble");
                add(&[("X", x as u128)], &[("X", y as u128)]);
            }
        }
        Component::Pbox | Component::PboxInv => {
            let words = (0..32)
                .map(|b| 1u32 << b)
                .chain((0..samples).map(|_| rng.gen()));
            for x in words.collect::<Vec<_>>() {
                let y = if comp == Component::Pbox {
                    pbox(x)
                } else {
                    pbox_inv(x)
                };
                add(&[("W", x as u128)], &[("W", y as u128)]);
            }
        }
        Component::Adder => {
            for _ in 0..samples {
                let (a, b): (u16, u16) = (rng.gen(), rng.gen());
                add(
                    &[("A", a as u128), ("B", b as u128)],
                    &[("A", a as u128), ("B", a.wrapping_add(b) as u128)],
                );
            }
        }
        Component::F1 | Component::F1Inv => {
            for _ in 0..samples {
                let x: u16 = rng.gen();
                let computed = [("X", x as u128), ("ANC", f1(x) as u128)];
                let clean = [("X", x as u128)];
                if comp == Component::F1 {
                    add(&clean, &computed);
                } else {
                    add(&computed, &clean);
                }
            }
        }
        Component::F2 | Component::F2Inv => {
            for _ in 0..samples {
                let (x, k): (u32, u32) = (rng.gen(), rng.gen());
                let y = if comp == Component::F2 {
                    f2(x, k)
                } else {
                    f2_inv(x, k)
                };
                let regs = |w: u32| {
                    [
                        ("D1", (w >> 16) as u128),
                        ("U0", (w & 0xFFFF) as u128),
                        ("KEY1", k as u128),
                    ]
                };
                add(&regs(x), &regs(y));
            }
        }
        Component::KeyUpdate(i) => {
            for _ in 0..samples {
                let k: u128 = rng.gen();
                add(
                    &[("KEY", k)],
                    &[("KEY", key_update(k, i).expect("round in range"))],
                );
            }
        }
        Component::Round(i) => {
            for _ in 0..samples {
                let (p, k): (u64, u128) = (rng.gen(), rng.gen());
                let next = if i == 0 {
                    k
                } else {
                    key_update(k, i).expect("round in range")
                };
                let out = round(
                    CipherState::from_block(p),
                    RoundSubkeys::extract(next),
                    true,
                )
                .to_block();
                add(&with_key(p, k), &with_key(out, next));
            }
        }
        Component::Gfspx | Component::GfspxInv => {
            for _ in 0..samples {
                let (p, k): (u64, u128) = (rng.gen(), rng.gen());
                let last = key_states(k)[ROUNDS - 1];
                if comp == Component::Gfspx {
                    add(&with_key(p, k), &with_key(encrypt(p, k), last));
                } else {
                    add(&with_key(p, last), &with_key(decrypt(p, k), k));
                }
            }
        }
        Component::Oracle(_) => unreachable!("handled above"),
    }
    Ok(Suite { circuit, cases })
}

/// Runs the equivalence suite for `comp`. Exhaustive components (S-boxes)
/// ignore `samples`; the P-layer adds its 32 single-bit probes; the oracle
/// uses the planted key plus `samples` wrong keys.
pub fn verify_component(
    comp: Component,
    samples: usize,
    seed: u64,
) -> Result<VerifyReport, VerifyError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let Suite { circuit, cases } = suite(comp, samples, &mut rng)?;
    let inputs: Vec<BasisState> = cases.iter().map(|(i, _)| i.clone()).collect();
    let outputs = simulate_batch(&circuit, &inputs)?;
    let mut failures = Vec::new();
    let mut failed = 0;
    for (k, ((_, want), got)) in cases.iter().zip(&outputs).enumerate() {
        if want != got {
            failed += 1;
            if failures.len() < 8 {
                let bad: Vec<&str> = circuit
                    .registers()
                    .iter()
                    .filter(|r| want.read(r).ok() != got.read(r).ok())
                    .map(|r| r.name.as_str())
                    .collect();
                failures.push(format!("case {k}: mismatch in {}", bad.join(", ")));
            }
        }
    }
    Ok(VerifyReport {
        component: comp.to_string(),
        seed,
        cases: cases.len(),
        passed: cases.len() - failed,
        failed,
        failures,
    })
}
