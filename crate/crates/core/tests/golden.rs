//! Frozen vector fixtures, pinned by the bit-array implementation in
//! `dual/`.

mod dual;

use gfspx::cipher::{decrypt, encrypt, parse_vectors, write_vectors, TestVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dual::{encrypt_bits, f1_bits, from_bits, next_key, p_layer, to_bits};

const FIXTURE: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/data/golden_vectors.txt");

#[test]
fn dual_implementations_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x601d);
    for n in 0..10_000 {
        let (p, k): (u64, u128) = (rng.gen(), rng.gen());
        assert_eq!(
            encrypt_bits(p, k),
            encrypt(p, k),
            "vector {n}: p={p:016x} k={k:032x}"
        );
    }
    for (p, k) in [(0, 0), (u64::MAX, u128::MAX), (1, 0), (0, 1)] {
        assert_eq!(encrypt_bits(p, k), encrypt(p, k));
    }
}

#[test]
fn bit_level_primitives() {
    assert_eq!(from_bits(&f1_bits(&to_bits(0x0001, 16))), 0x0023);
    assert_eq!(from_bits(&f1_bits(&to_bits(0xFFFF, 16))), 0x0001);
    let probe = p_layer(&to_bits(1 << 1, 32));
    assert_eq!(from_bits(&probe), 1 << 8);
    let k1 = next_key(&to_bits(0, 128), 1);
    assert_eq!(from_bits(&k1), 0xCC << 120 | 1 << 10);
}

fn fixture_vectors() -> Vec<TestVector> {
    let mut v = vec![
        TestVector::from_key_plaintext(0, 0),
        TestVector::from_key_plaintext(u128::MAX, u64::MAX),
        TestVector::from_key_plaintext(
            0x0011_2233_4455_6677_8899_aabb_ccdd_eeff,
            0x0123_4567_89ab_cdef,
        ),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(0x6f1d);
    v.extend((0..61).map(|_| TestVector::from_key_plaintext(rng.gen(), rng.gen())));
    v
}

#[test]
fn frozen_fixtures_reproduce() {
    let fresh = fixture_vectors();
    for t in &fresh {
        assert_eq!(encrypt_bits(t.plaintext, t.key), t.ciphertext);
    }
    if std::env::var_os("GFSPX_REGEN_GOLDEN").is_some() {
        std::fs::write(FIXTURE, write_vectors(&fresh)).unwrap();
    }
    let text = std::fs::read_to_string(FIXTURE).expect("fixture file present");
    let frozen = parse_vectors(&text).unwrap();
    assert_eq!(frozen, fresh);
    for t in &frozen {
        assert_eq!(encrypt(t.plaintext, t.key), t.ciphertext);
        assert_eq!(decrypt(t.ciphertext, t.key), t.plaintext);
    }
}
