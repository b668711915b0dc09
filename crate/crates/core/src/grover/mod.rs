//! Grover key-search oracle with inner parallelization, and the attack-cost
//! arithmetic built on top of it.

mod estimate;

pub use estimate::{
    attack_estimate, iterations, maxdepth_table, render_scientific, required_pairs, spurious_log2,
    AttackEstimate, Comparison, EstimateOptions, Sci, MAXDEPTH_BOUNDS, PI_OVER_4_FIXED,
};

use rand::Rng;
use thiserror::Error;

use crate::cipher::encrypt;
use crate::circuit::{Circuit, Gate};
use crate::sim::BasisState;
use crate::synth::{emit_gfspx, CipherQubits, SynthError, CIPHER_LAYOUT, CIPHER_WIDTH};

pub const KEY_BITS: usize = 128;
pub const BLOCK_BITS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroverError {
    #[error("r must be 2 or 3, got {0}")]
    UnsupportedR(usize),
    #[error("expected {expected} plaintext-ciphertext pairs, got {found}")]
    PairCount { expected: usize, found: usize },
    #[error(transparent)]
    Synth(#[from] SynthError),
}

/// Oracle configuration: `r` known `(plaintext, ciphertext)` pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleSpec {
    pub r: usize,
    pub pairs: Vec<(u64, u64)>,
    pub key_bits: usize,
    pub block_bits: usize,
}

impl OracleSpec {
    pub fn new(r: usize, pairs: Vec<(u64, u64)>) -> Result<Self, GroverError> {
        if !(2..=3).contains(&r) {
            return Err(GroverError::UnsupportedR(r));
        }
        if pairs.len() != r {
            return Err(GroverError::PairCount {
                expected: r,
                found: pairs.len(),
            });
        }
        Ok(Self {
            r,
            pairs,
            key_bits: KEY_BITS,
            block_bits: BLOCK_BITS,
        })
    }

    /// Random plaintexts encrypted under `key`.
    pub fn planted(r: usize, key: u128, rng: &mut impl Rng) -> Result<Self, GroverError> {
        let pairs = (0..r)
            .map(|_| {
                let p: u64 = rng.gen();
                (p, encrypt(p, key))
            })
            .collect();
        Self::new(r, pairs)
    }
}

fn suffix(k: usize) -> String {
    format!("_{k}")
}

/// Empty circuit with `r` cipher instances (`D0_1`, ..., `KEY_r`) and a
/// trailing `PHASE` qubit.
pub fn oracle_layout(r: usize) -> Circuit {
    let mut layout: Vec<(String, usize)> = Vec::with_capacity(7 * r + 1);
    for k in 1..=r {
        layout.extend(
            CIPHER_LAYOUT
                .iter()
                .map(|(n, w)| (format!("{n}{}", suffix(k)), *w)),
        );
    }
    layout.push(("PHASE".into(), 1));
    Circuit::new(&layout).expect("distinct names, nonzero widths")
}

pub fn build_oracle(spec: &OracleSpec) -> Result<Circuit, GroverError> {
    let spec = OracleSpec::new(spec.r, spec.pairs.clone())?;
    let mut fwd = oracle_layout(spec.r);
    let inst: Vec<CipherQubits> = (1..=spec.r)
        .map(|k| CipherQubits::resolve(&fwd, &suffix(k)))
        .collect::<Result<_, _>>()?;
    for q in &inst[1..] {
        for j in 0..KEY_BITS {
            fwd.cx(inst[0].key[j], q.key[j]);
        }
    }
    for q in &inst {
        emit_gfspx(&mut fwd, q)?;
    }
    for (q, (_, ct)) in inst.iter().zip(&spec.pairs) {
        for (j, &qb) in q.block().iter().enumerate() {
            if (ct >> j) & 1 == 0 {
                fwd.not(qb);
            }
        }
    }
    let mut oracle = fwd.clone();
    let controls: Vec<usize> = inst.iter().flat_map(|q| q.block()).collect();
    let phase = oracle.register("PHASE").map_err(SynthError::from)?.offset;
    oracle.push(Gate::Mcx {
        controls,
        target: phase,
    });
    oracle.extend(&fwd.inverse()).map_err(SynthError::from)?;
    Ok(oracle)
}

/// Basis state the oracle expects: plaintext `k` in instance `k`'s data
/// registers and the candidate key in `KEY_1`.
pub fn oracle_input(spec: &OracleSpec, c: &Circuit, key: u128) -> Result<BasisState, GroverError> {
    let mut s = BasisState::zeros(c.width());
    for (k, (pt, _)) in spec.pairs.iter().enumerate() {
        let q = CipherQubits::resolve(c, &suffix(k + 1))?;
        for (j, &qb) in q.block().iter().enumerate() {
            s.set(qb, (pt >> j) & 1 == 1);
        }
    }
    let kr = c.register("KEY_1").map_err(SynthError::from)?;
    s.write(kr, key).expect("128-bit register");
    Ok(s)
}

pub fn oracle_width(r: usize) -> usize {
    r * CIPHER_WIDTH + 1
}
