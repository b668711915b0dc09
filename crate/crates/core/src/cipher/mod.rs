//! Bit-exact GFSPX-64/128: a 4-branch generalized Feistel structure whose
//! round mixes an ARX function (`f1`) with a 32-bit SPN function (`f2`).
//!
//! Bit numbering is LSB-first throughout the crate: bit `j` of a word has
//! weight `2^j`, and the permutation table below is indexed the same way.
//! The 64-bit block is `D0 ‖ D1 ‖ U0 ‖ U1` from the most significant end.

mod vectors;

pub use vectors::{parse_vectors, write_vectors, TestVector};

use thiserror::Error;

pub const ROUNDS: usize = 20;
pub const KEY_ROTATION: u32 = 113;

/// Rotation amounts inside `f1`: `(X ⊞ (X ⋘ 5)) ⊕ (X ⋘ 1)`.
pub const F1_ADD_ROTATION: u32 = 5;
pub const F1_XOR_ROTATION: u32 = 1;

pub const SBOX: [u8; 16] = [
    0xC, 0x5, 0x6, 0xB, 0x9, 0x0, 0xA, 0xD, 0x3, 0xE, 0xF, 0x8, 0x4, 0x7, 0x1, 0x2,
];

pub const SBOX_INV: [u8; 16] = invert_nibble_table(&SBOX);

/// `PERM[i]` is the output position of input bit `i`.
pub const PERM: [u8; 32] = [
    0, 8, 16, 24, 1, 9, 17, 25, 2, 10, 18, 26, 3, 11, 19, 27, 4, 12, 20, 28, 5, 13, 21, 29, 6, 14,
    22, 30, 7, 15, 23, 31,
];

pub const PERM_INV: [u8; 32] = invert_perm(&PERM);

const fn invert_nibble_table(t: &[u8; 16]) -> [u8; 16] {
    let mut inv = [0u8; 16];
    let mut i = 0;
    while i < 16 {
        inv[t[i] as usize] = i as u8;
        i += 1;
    }
    inv
}

const fn invert_perm(p: &[u8; 32]) -> [u8; 32] {
    let mut inv = [0u8; 32];
    let mut i = 0;
    while i < 32 {
        inv[p[i] as usize] = i as u8;
        i += 1;
    }
    inv
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CipherError {
    #[error("nibble out of range: {0:#x}")]
    NibbleOutOfRange(u32),
    #[error("rotation amount {amount} is not below width {width}")]
    RotationOutOfRange { amount: u32, width: u32 },
    #[error("unsupported rotation width {0}")]
    BadWidth(u32),
    #[error("round index {0} outside 1..=19")]
    RoundOutOfRange(usize),
}

/// The four 16-bit branches of the data state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct CipherState {
    pub d0: u16,
    pub d1: u16,
    pub u0: u16,
    pub u1: u16,
}

impl CipherState {
    pub fn from_block(block: u64) -> Self {
        Self {
            d0: (block >> 48) as u16,
            d1: (block >> 32) as u16,
            u0: (block >> 16) as u16,
            u1: block as u16,
        }
    }

    pub fn to_block(self) -> u64 {
        (self.d0 as u64) << 48 | (self.d1 as u64) << 32 | (self.u0 as u64) << 16 | self.u1 as u64
    }
}

/// Round subkeys sliced out of the 128-bit key register.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct RoundSubkeys {
    pub key0: u16,
    pub key1: u32,
    pub key2: u16,
}

impl RoundSubkeys {
    pub fn extract(k: u128) -> Self {
        Self {
            key0: (k >> 112) as u16,
            key1: (k >> 80) as u32,
            key2: (k >> 64) as u16,
        }
    }
}

/// 128-bit key register together with the round it belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct KeyState {
    pub k: u128,
    pub round_index: usize,
}

impl KeyState {
    pub fn new(master: u128) -> Self {
        Self {
            k: master,
            round_index: 0,
        }
    }

    pub fn subkeys(&self) -> RoundSubkeys {
        RoundSubkeys::extract(self.k)
    }

    /// K^{i-1} -> K^i. Panics past the last round.
    pub fn advance(self) -> Self {
        let next = self.round_index + 1;
        assert!(next < ROUNDS, "key schedule has only {ROUNDS} states");
        Self {
            k: key_update(self.k, next).expect("round index checked above"),
            round_index: next,
        }
    }

    /// K^i -> K^{i-1}. Panics at round 0.
    pub fn retreat(self) -> Self {
        assert!(self.round_index > 0, "cannot step before the master key");
        Self {
            k: key_update_inv(self.k, self.round_index).expect("round index is in 1..=19"),
            round_index: self.round_index - 1,
        }
    }
}

pub fn sbox(x: u8) -> Result<u8, CipherError> {
    SBOX.get(x as usize)
        .copied()
        .ok_or(CipherError::NibbleOutOfRange(x as u32))
}

pub fn sbox_inv(y: u8) -> Result<u8, CipherError> {
    SBOX_INV
        .get(y as usize)
        .copied()
        .ok_or(CipherError::NibbleOutOfRange(y as u32))
}

pub fn pbox(x: u32) -> u32 {
    permute_bits(x, &PERM)
}

pub fn pbox_inv(x: u32) -> u32 {
    permute_bits(x, &PERM_INV)
}

fn permute_bits(x: u32, table: &[u8; 32]) -> u32 {
    table
        .iter()
        .enumerate()
        .fold(0, |acc, (i, &p)| acc | ((x >> i) & 1) << p)
}

/// Left rotation of the low `width` bits of `x`.
pub fn rotl(x: u128, t: u32, width: u32) -> Result<u128, CipherError> {
    if width == 0 || width > 128 {
        return Err(CipherError::BadWidth(width));
    }
    if t >= width {
        return Err(CipherError::RotationOutOfRange { amount: t, width });
    }
    let mask = if width == 128 {
        u128::MAX
    } else {
        (1u128 << width) - 1
    };
    let x = x & mask;
    if t == 0 {
        return Ok(x);
    }
    Ok(((x << t) | (x >> (width - t))) & mask)
}

pub fn f1(x: u16) -> u16 {
    x.wrapping_add(x.rotate_left(F1_ADD_ROTATION)) ^ x.rotate_left(F1_XOR_ROTATION)
}

fn sbox_layer(x: u32, table: &[u8; 16]) -> u32 {
    (0..8).fold(0, |acc, n| {
        let nib = (x >> (4 * n)) & 0xF;
        acc | (table[nib as usize] as u32) << (4 * n)
    })
}

pub fn f2(x: u32, key1: u32) -> u32 {
    pbox(sbox_layer(x ^ key1, &SBOX))
}

pub fn f2_inv(y: u32, key1: u32) -> u32 {
    sbox_layer(pbox_inv(y), &SBOX_INV) ^ key1
}

/// Round-counter value XORed into key bits 14..10 at update `round`.
pub fn round_constant(round: usize) -> u32 {
    (round as u32) & 0x1F
}

const MID_MASK: u128 = ((1u128 << 120) - 1) & !((1u128 << 15) - 1);
const LOW_MASK: u128 = (1u128 << 10) - 1;

/// One key-register update, producing K^round from K^{round-1}.
pub fn key_update(prev: u128, round: usize) -> Result<u128, CipherError> {
    if !(1..ROUNDS).contains(&round) {
        return Err(CipherError::RoundOutOfRange(round));
    }
    let t0 = prev.rotate_left(KEY_ROTATION);
    let t1 = SBOX[(t0 >> 124) as usize & 0xF] as u128;
    let t2 = SBOX[(t0 >> 120) as usize & 0xF] as u128;
    let t3 = ((t0 >> 10) as u32 & 0x1F) ^ round_constant(round);
    Ok(t1 << 124 | t2 << 120 | (t0 & MID_MASK) | (t3 as u128) << 10 | (t0 & LOW_MASK))
}

pub fn key_update_inv(next: u128, round: usize) -> Result<u128, CipherError> {
    if !(1..ROUNDS).contains(&round) {
        return Err(CipherError::RoundOutOfRange(round));
    }
    let t3 = ((next >> 10) as u32 & 0x1F) ^ round_constant(round);
    let t1 = SBOX_INV[(next >> 124) as usize & 0xF] as u128;
    let t2 = SBOX_INV[(next >> 120) as usize & 0xF] as u128;
    let t0 = t1 << 124 | t2 << 120 | (next & MID_MASK) | (t3 as u128) << 10 | (next & LOW_MASK);
    Ok(t0.rotate_right(KEY_ROTATION))
}

/// The 20 key-register states K^0..K^19.
pub fn key_states(master: u128) -> [u128; ROUNDS] {
    let mut out = [0u128; ROUNDS];
    out[0] = master;
    for i in 1..ROUNDS {
        out[i] = key_update(out[i - 1], i).expect("1..20 is in range");
    }
    out
}

pub fn key_schedule(master: u128) -> [RoundSubkeys; ROUNDS] {
    key_states(master).map(RoundSubkeys::extract)
}

/// One round. Except in the last round the branches are exchanged so the
/// result reads `(D0', D1', U0', U1')`; the last round leaves every branch
/// in the position it was computed in.
pub fn round(s: CipherState, k: RoundSubkeys, is_last: bool) -> CipherState {
    let new_d1 = s.u1 ^ f1(s.u0) ^ k.key2;
    let new_u0 = s.d0 ^ f1(s.d1) ^ k.key0;
    let w = f2((s.d1 as u32) << 16 | s.u0 as u32, k.key1);
    let (new_u1, new_d0) = ((w >> 16) as u16, w as u16);
    if is_last {
        CipherState {
            d0: new_u0,
            d1: new_u1,
            u0: new_d0,
            u1: new_d1,
        }
    } else {
        CipherState {
            d0: new_d0,
            d1: new_d1,
            u0: new_u0,
            u1: new_u1,
        }
    }
}

pub fn inverse_round(s: CipherState, k: RoundSubkeys, is_last: bool) -> CipherState {
    let (new_d0, new_d1, new_u0, new_u1) = if is_last {
        (s.u0, s.u1, s.d0, s.d1)
    } else {
        (s.d0, s.d1, s.u0, s.u1)
    };
    let x = f2_inv((new_u1 as u32) << 16 | new_d0 as u32, k.key1);
    let (d1, u0) = ((x >> 16) as u16, x as u16);
    CipherState {
        d0: new_u0 ^ f1(d1) ^ k.key0,
        d1,
        u0,
        u1: new_d1 ^ f1(u0) ^ k.key2,
    }
}

pub fn encrypt(plaintext: u64, master: u128) -> u64 {
    let keys = key_schedule(master);
    let mut s = CipherState::from_block(plaintext);
    for (i, k) in keys.iter().enumerate() {
        s = round(s, *k, i == ROUNDS - 1);
    }
    s.to_block()
}

pub fn decrypt(ciphertext: u64, master: u128) -> u64 {
    let keys = key_schedule(master);
    let mut s = CipherState::from_block(ciphertext);
    for (i, k) in keys.iter().enumerate().rev() {
        s = inverse_round(s, *k, i == ROUNDS - 1);
    }
    s.to_block()
}
