//! In-place modular adder `b <- (a + b) mod 2^n` in the ripple-carry style
//! of Cuccaro et al., with the final carry dropped. One ancilla `x` seeds
//! the carry chain and is returned to zero.

use super::SynthError;
use crate::circuit::{Circuit, Register};
use crate::resources::ADDER_INTERIOR;

/// Emits the adder onto `a`, `b` (LSB first) and carry ancilla `x`, tagging
/// the whole range as adder-interior. For `n >= 4` the counts are
/// `2n-6` NOT, `5n-7` CNOT and `2n-3` Toffoli.
pub fn emit_adder(c: &mut Circuit, a: &[usize], b: &[usize], x: usize) -> Result<(), SynthError> {
    let n = a.len();
    if b.len() != n || n == 0 {
        return Err(SynthError::WidthMismatch {
            expected: n,
            found: b.len(),
        });
    }
    let start = c.len();
    match n {
        1 => c.cx(a[0], b[0]),
        2 => {
            c.cx(a[1], b[1]);
            c.ccx(a[0], b[0], b[1]);
            c.cx(a[0], b[0]);
        }
        3 => {
            c.cx(a[2], b[2]);
            c.ccx(a[0], b[0], x);
            c.ccx(a[1], b[1], b[2]);
            c.cx(a[1], b[1]);
            c.ccx(x, b[1], b[2]);
            c.cx(x, b[1]);
            c.ccx(a[0], b[0], x);
            c.cx(a[0], b[0]);
        }
        _ => ripple(c, a, b, x),
    }
    c.annotate(start..c.len(), ADDER_INTERIOR)?;
    Ok(())
}

fn ripple(c: &mut Circuit, a: &[usize], b: &[usize], x: usize) {
    let n = a.len();
    for i in 1..n - 1 {
        c.cx(a[i], b[i]);
    }
    c.cx(a[1], x);
    c.ccx(a[0], b[0], x);
    c.cx(a[2], a[1]);
    c.ccx(x, b[1], a[1]);
    if n >= 5 {
        c.cx(a[3], a[2]);
    }
    for i in 2..n - 2 {
        c.ccx(a[i - 1], b[i], a[i]);
        if i + 2 <= n - 2 {
            c.cx(a[i + 2], a[i + 1]);
        }
    }
    c.cx(a[n - 2], b[n - 1]);
    c.ccx(a[n - 3], b[n - 2], b[n - 1]);
    for &q in &b[1..n - 2] {
        c.not(q);
    }
    c.cx(x, b[1]);
    for i in 2..n - 1 {
        c.cx(a[i - 1], b[i]);
    }
    for i in (1..n - 2).rev() {
        if i == 1 {
            c.ccx(x, b[1], a[1]);
        } else {
            c.ccx(a[i - 1], b[i], a[i]);
        }
        if i + 2 <= n - 2 {
            c.cx(a[i + 2], a[i + 1]);
        }
        if i + 4 <= n {
            c.not(b[i + 1]);
        }
    }
    c.ccx(a[0], b[0], x);
    c.cx(a[2], a[1]);
    c.not(b[1]);
    c.cx(a[1], x);
    for i in 0..n {
        c.cx(a[i], b[i]);
    }
}

/// Standalone adder over registers named after `a_reg`, `b_reg`, plus a
/// one-qubit `CARRY` ancilla.
pub fn build_adder_mod2n(a_reg: &Register, b_reg: &Register) -> Result<Circuit, SynthError> {
    if a_reg.width != b_reg.width {
        return Err(SynthError::WidthMismatch {
            expected: a_reg.width,
            found: b_reg.width,
        });
    }
    let n = a_reg.width;
    let mut c = Circuit::new(&[
        (a_reg.name.as_str(), n),
        (b_reg.name.as_str(), n),
        ("CARRY", 1),
    ])?;
    let a: Vec<usize> = (0..n).collect();
    let b: Vec<usize> = (n..2 * n).collect();
    emit_adder(&mut c, &a, &b, 2 * n)?;
    Ok(c)
}

pub fn build_adder16() -> Circuit {
    let r = |name: &str| Register {
        name: name.into(),
        offset: 0,
        width: 16,
    };
    build_adder_mod2n(&r("A"), &r("B")).expect("equal widths")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::GateHistogram;
    use crate::resources::{depth, DepthModel};
    use crate::sim::{simulate, BasisState};

    /// Textbook MAJ/UMA ripple adder with a carry-out qubit.
    fn cuccaro_with_carry_out(n: usize) -> Circuit {
        let mut c = Circuit::new(&[("A", n), ("B", n), ("CIN", 1), ("COUT", 1)]).unwrap();
        let a = |i: usize| i;
        let b = |i: usize| n + i;
        let (cin, cout) = (2 * n, 2 * n + 1);
        let carry = |i: usize| if i == 0 { cin } else { a(i - 1) };
        for i in 0..n {
            c.cx(a(i), b(i));
            c.cx(a(i), carry(i));
            c.ccx(carry(i), b(i), a(i));
        }
        c.cx(a(n - 1), cout);
        for i in (0..n).rev() {
            c.ccx(carry(i), b(i), a(i));
            c.cx(a(i), carry(i));
            c.cx(carry(i), b(i));
        }
        c
    }

    fn run(c: &Circuit, regs: &[(&str, u128)]) -> BasisState {
        let mut s = BasisState::zeros(c.width());
        for (name, v) in regs {
            s.write(c.register(name).unwrap(), *v).unwrap();
        }
        simulate(c, &s).unwrap()
    }

    fn read(c: &Circuit, s: &BasisState, name: &str) -> u128 {
        s.read(c.register(name).unwrap()).unwrap()
    }

    #[test]
    fn reference_adder_is_right() {
        for n in 1..=5 {
            let c = cuccaro_with_carry_out(n);
            for a in 0..1u128 << n {
                for b in 0..1u128 << n {
                    let s = run(&c, &[("A", a), ("B", b)]);
                    let sum = a + b;
                    assert_eq!(read(&c, &s, "B"), sum & ((1 << n) - 1));
                    assert_eq!(read(&c, &s, "COUT"), sum >> n);
                    assert_eq!((read(&c, &s, "A"), read(&c, &s, "CIN")), (a, 0));
                }
            }
        }
    }

    #[test]
    fn exhaustive_small_widths_agree_with_reference() {
        for n in 1..=7 {
            let r = |name: &str| Register {
                name: name.into(),
                offset: 0,
                width: n,
            };
            let c = build_adder_mod2n(&r("A"), &r("B")).unwrap();
            let reference = cuccaro_with_carry_out(n);
            for a in 0..1u128 << n {
                for b in 0..1u128 << n {
                    let s = run(&c, &[("A", a), ("B", b)]);
                    let want = read(&reference, &run(&reference, &[("A", a), ("B", b)]), "B");
                    assert_eq!(read(&c, &s, "B"), want, "n={n} a={a} b={b}");
                    assert_eq!(read(&c, &s, "B"), (a + b) % (1 << n));
                    assert_eq!((read(&c, &s, "A"), read(&c, &s, "CARRY")), (a, 0));
                }
            }
        }
    }

    #[test]
    fn counts_follow_closed_forms() {
        for n in 4..=32u64 {
            let r = |name: &str| Register {
                name: name.into(),
                offset: 0,
                width: n as usize,
            };
            let c = build_adder_mod2n(&r("A"), &r("B")).unwrap();
            assert_eq!(
                c.histogram(),
                GateHistogram::nct_swap(2 * n - 6, 5 * n - 7, 2 * n - 3, 0)
            );
            assert_eq!(depth(&c, &DepthModel::paper()), 2 * n + 2, "n={n}");
        }
    }

    #[test]
    fn sixteen_bit_adder() {
        let c = build_adder16();
        assert_eq!(c.histogram(), GateHistogram::nct_swap(26, 73, 29, 0));
        assert_eq!(depth(&c, &DepthModel::paper()), 34);
        for x in [0u128, 1, 0x8000, 0xFFFF, 0x1234] {
            let s = run(&c, &[("A", 0), ("B", x)]);
            assert_eq!((read(&c, &s, "A"), read(&c, &s, "B")), (0, x));
        }
    }

    #[test]
    fn width_mismatch() {
        let a = Register {
            name: "A".into(),
            offset: 0,
            width: 4,
        };
        let b = Register {
            name: "B".into(),
            offset: 0,
            width: 5,
        };
        assert!(build_adder_mod2n(&a, &b).is_err());
    }
}
