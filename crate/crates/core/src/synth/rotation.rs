//! SWAP networks for cyclic rotations. Rotating left by `t` moves the
//! content of bit `j` to bit `(j + t) mod n`.

use super::SynthError;
use crate::circuit::{Circuit, Register};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RotationStrategy {
    /// Block swaps, each one parallel layer, then a two-layer reflection.
    #[default]
    Layered,
    /// Star walk around each cycle; every SWAP shares the cycle's first
    /// qubit, `start + k` for the k-th cycle.
    CycleWalk { start: usize },
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Star walk over one cycle: content of `cycle[k]` ends at `cycle[k+1]`.
pub(crate) fn walk_cycle(c: &mut Circuit, cycle: &[usize]) {
    for &q in &cycle[1..] {
        c.swap(cycle[0], q);
    }
}

fn cycle_walk(c: &mut Circuit, qs: &[usize], t: usize, start: usize) {
    let n = qs.len();
    for k in 0..gcd(n, t) {
        let head = (start + k) % n;
        let mut cycle = vec![head];
        let mut p = (head + t) % n;
        while p != head {
            cycle.push(p);
            p = (p + t) % n;
        }
        let mapped: Vec<usize> = cycle.iter().map(|&p| qs[p]).collect();
        walk_cycle(c, &mapped);
    }
}

/// `[A | B] -> [B | A]` on `seg` where `A` is the first `a` entries.
fn reflect(c: &mut Circuit, seg: &[usize], a: usize) {
    let m = seg.len();
    let b = m - a;
    for i in 0..m / 2 {
        c.swap(seg[i], seg[m - 1 - i]);
    }
    for i in 0..b / 2 {
        c.swap(seg[i], seg[b - 1 - i]);
    }
    for i in 0..a / 2 {
        c.swap(seg[b + i], seg[m - 1 - i]);
    }
}

fn layered(c: &mut Circuit, qs: &[usize], t: usize) {
    // Positions hold the list [A | B] with |A| = n - t; the target is [B | A].
    let mut seg: Vec<usize> = qs.to_vec();
    let (mut a, mut b) = (qs.len() - t, t);
    while a > 0 && b > 0 {
        if a == b {
            for i in 0..a {
                c.swap(seg[i], seg[a + i]);
            }
            return;
        }
        let flipped = if a < b {
            // [A | B1 | B2] -> [B2 | B1 | A]; solve [B2 | B1] next.
            for i in 0..a {
                c.swap(seg[i], seg[a + b - a + i]);
            }
            seg.truncate(a + b - a);
            b -= a;
            b < a
        } else {
            // [A1 | A2 | B] -> [B | A2 | A1]; solve [A2 | A1] next.
            for i in 0..b {
                c.swap(seg[i], seg[a + i]);
            }
            seg.drain(..b);
            a -= b;
            a < b
        };
        if flipped {
            break;
        }
    }
    if a == 0 || b == 0 {
        return;
    }
    if gcd(a, b) == 1 {
        reflect(c, &seg, a);
    } else {
        let qs = seg.clone();
        cycle_walk(c, &qs, b, 0);
    }
}

/// Emits a left rotation by `t` of the bits held on `qs` (LSB first).
pub fn emit_rotation(
    c: &mut Circuit,
    qs: &[usize],
    t: usize,
    strategy: RotationStrategy,
) -> Result<(), SynthError> {
    let n = qs.len();
    if t == 0 || t >= n {
        return Err(SynthError::BadRotation {
            amount: t,
            width: n,
        });
    }
    match strategy {
        RotationStrategy::Layered => layered(c, qs, t),
        RotationStrategy::CycleWalk { start } => cycle_walk(c, qs, t, start % n),
    }
    Ok(())
}

/// Standalone rotation circuit over a single register named like `reg`.
pub fn build_rotation(
    reg: &Register,
    t: usize,
    strategy: RotationStrategy,
) -> Result<Circuit, SynthError> {
    let mut c = Circuit::new(&[(reg.name.as_str(), reg.width)])?;
    let qs: Vec<usize> = (0..reg.width).collect();
    emit_rotation(&mut c, &qs, t, strategy)?;
    Ok(c)
}
