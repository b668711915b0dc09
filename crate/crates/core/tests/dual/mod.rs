//! Second, independently written GFSPX implementation working on bit arrays
//! (index j = weight 2^j). Shared by the golden-vector and acceptance tests.
#![allow(dead_code)]

pub type Bits = Vec<u8>;

pub fn to_bits(v: u128, n: usize) -> Bits {
    (0..n).map(|j| ((v >> j) & 1) as u8).collect()
}

pub fn from_bits(b: &[u8]) -> u128 {
    b.iter().enumerate().map(|(j, &x)| (x as u128) << j).sum()
}

// (X <<< t)[j] = X[j - t mod n]
fn rol(x: &[u8], t: usize) -> Bits {
    let n = x.len();
    (0..n).map(|j| x[(j + n - t) % n]).collect()
}

fn xor(a: &[u8], b: &[u8]) -> Bits {
    a.iter().zip(b).map(|(x, y)| x ^ y).collect()
}

fn add(a: &[u8], b: &[u8]) -> Bits {
    let mut carry = 0;
    a.iter()
        .zip(b)
        .map(|(&x, &y)| {
            let s = x ^ y ^ carry;
            carry = (x & y) | (x & carry) | (y & carry);
            s
        })
        .collect()
}

fn sub_nibble(x: &[u8]) -> Bits {
    // PRESENT S-box, x: 0..F -> C 5 6 B 9 0 A D 3 E F 8 4 7 1 2
    const S: [u8; 16] = [12, 5, 6, 11, 9, 0, 10, 13, 3, 14, 15, 8, 4, 7, 1, 2];
    let v = x[0] | x[1] << 1 | x[2] << 2 | x[3] << 3;
    to_bits(S[v as usize] as u128, 4)
}

pub fn p_layer(x: &[u8]) -> Bits {
    // four columns of (i, P(i)) pairs, i = 0..7, 8..15, 16..23, 24..31
    const P: [usize; 32] = [
        0, 8, 16, 24, 1, 9, 17, 25, //
        2, 10, 18, 26, 3, 11, 19, 27, //
        4, 12, 20, 28, 5, 13, 21, 29, //
        6, 14, 22, 30, 7, 15, 23, 31,
    ];
    let mut y = vec![0; 32];
    for i in 0..32 {
        y[P[i]] = x[i];
    }
    y
}

pub fn f1_bits(x: &[u8]) -> Bits {
    xor(&add(x, &rol(x, 5)), &rol(x, 1))
}

fn f2_bits(x: &[u8], k: &[u8]) -> Bits {
    let t = xor(x, k);
    let s: Bits = t.chunks(4).flat_map(sub_nibble).collect();
    p_layer(&s)
}

pub fn next_key(k: &[u8], i: usize) -> Bits {
    let t0 = rol(k, 113);
    let mut out = t0.clone();
    out[124..128].copy_from_slice(&sub_nibble(&t0[124..128]));
    out[120..124].copy_from_slice(&sub_nibble(&t0[120..124]));
    for b in 0..5 {
        out[10 + b] ^= ((i >> b) & 1) as u8;
    }
    out
}

pub fn encrypt_bits(p: u64, key: u128) -> u64 {
    let blk = to_bits(p as u128, 64);
    // slices by block bit index: D0 = [63:48], D1 = [47:32], U0 = [31:16], U1 = [15:0]
    let (mut d0, mut d1, mut u0, mut u1) = (
        blk[48..64].to_vec(),
        blk[32..48].to_vec(),
        blk[16..32].to_vec(),
        blk[0..16].to_vec(),
    );
    let mut k = to_bits(key, 128);
    for i in 0..20 {
        if i > 0 {
            k = next_key(&k, i);
        }
        let (key0, key1, key2) = (&k[112..128], &k[80..112], &k[64..80]);
        let nd1 = xor(&xor(&f1_bits(&u0), &u1), key2);
        let nu0 = xor(&xor(&f1_bits(&d1), &d0), key0);
        let w_in: Bits = u0.iter().chain(&d1).copied().collect();
        let w = f2_bits(&w_in, key1);
        let (nu1, nd0) = (w[16..32].to_vec(), w[0..16].to_vec());
        if i < 19 {
            (d0, d1, u0, u1) = (nd0, nd1, nu0, nu1);
        } else {
            // no exchange after the last round: every branch stays in the
            // register it was computed into
            (d0, d1, u0, u1) = (nu0, nu1, nd0, nd1);
        }
    }
    let out: Bits = u1
        .iter()
        .chain(&u0)
        .chain(&d1)
        .chain(&d0)
        .copied()
        .collect();
    from_bits(&out) as u64
}
