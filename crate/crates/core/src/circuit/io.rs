//! JSON and OpenQASM 2.0 subset serialization. Both formats carry the
//! register layout and annotations, so import(export(c)) == c.
//!
//! The QASM listing uses one flat `qreg q[W]`. Registers, annotations and
//! multi-controlled NOTs travel in `// @` pragma comments:
//!
//! ```text
//! // @register KEY 81 128
//! // @mcx q[0],q[1],q[2],q[7];      (last operand is the target)
//! // @annotate 12 40 adder-interior
//! ```

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{Annotation, Circuit, CircuitError, Gate, GateKind, Register};

#[derive(Serialize, Deserialize)]
struct GateRecord {
    kind: GateKind,
    controls: Vec<usize>,
    targets: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct CircuitDoc {
    width: usize,
    registers: Vec<Register>,
    gates: Vec<GateRecord>,
    #[serde(default)]
    annotations: Vec<Annotation>,
}

pub fn to_json(c: &Circuit) -> String {
    let doc = CircuitDoc {
        width: c.width(),
        registers: c.registers().to_vec(),
        gates: c
            .gates()
            .iter()
            .map(|g| GateRecord {
                kind: g.kind(),
                controls: g.controls().to_vec(),
                targets: g.targets(),
            })
            .collect(),
        annotations: c.annotations().to_vec(),
    };
    serde_json::to_string(&doc).expect("circuit documents always serialize")
}

pub fn from_json(text: &str) -> Result<Circuit, CircuitError> {
    let parse_err = |msg: String| CircuitError::Parse { line: 0, msg };
    let doc: CircuitDoc = serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))?;
    let gates = doc
        .gates
        .iter()
        .map(|r| Gate::from_parts(r.kind, &r.controls, &r.targets))
        .collect::<Result<Vec<_>, _>>()
        .map_err(parse_err)?;
    let c = Circuit::from_raw(doc.registers, gates, doc.annotations)?;
    if c.width() != doc.width {
        return Err(CircuitError::LayoutMismatch);
    }
    Ok(c)
}

fn operands(qs: &[usize]) -> String {
    qs.iter()
        .map(|q| format!("q[{q}]"))
        .collect::<Vec<_>>()
        .join(",")
}

pub fn to_qasm(c: &Circuit) -> String {
    let mut s = String::from("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
    for r in c.registers() {
        let _ = writeln!(s, "// @register {} {} {}", r.name, r.offset, r.width);
    }
    let _ = writeln!(s, "qreg q[{}];", c.width());
    for g in c.gates() {
        let line = match g {
            Gate::Not { target } => format!("x {};", operands(&[*target])),
            Gate::Cnot { control, target } => format!("cx {};", operands(&[*control, *target])),
            Gate::Ccnot { controls, target } => {
                format!("ccx {};", operands(&[controls[0], controls[1], *target]))
            }
            Gate::Swap { a, b } => format!("swap {};", operands(&[*a, *b])),
            Gate::Mcx { controls, target } => {
                let mut qs = controls.clone();
                qs.push(*target);
                format!("// @mcx {};", operands(&qs))
            }
        };
        s.push_str(&line);
        s.push('\n');
    }
    for a in c.annotations() {
        let _ = writeln!(s, "// @annotate {} {} {}", a.start, a.end, a.tag);
    }
    s
}

fn parse_operands(text: &str, line: usize) -> Result<Vec<usize>, CircuitError> {
    let err = |msg: String| CircuitError::Parse { line, msg };
    let body = text
        .trim()
        .strip_suffix(';')
        .ok_or_else(|| err("missing ';'".into()))?;
    body.split(',')
        .map(|op| {
            let op = op.trim();
            op.strip_prefix("q[")
                .and_then(|r| r.strip_suffix(']'))
                .and_then(|n| n.parse().ok())
                .ok_or_else(|| err(format!("bad operand {op:?}")))
        })
        .collect()
}

pub fn from_qasm(text: &str) -> Result<Circuit, CircuitError> {
    let mut registers = Vec::new();
    let mut gates = Vec::new();
    let mut annotations = Vec::new();
    let mut declared = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let err = |msg: String| CircuitError::Parse { line, msg };
        let l = raw.trim();
        if l.is_empty() || l.starts_with("OPENQASM") || l.starts_with("include") {
            continue;
        }
        if let Some(p) = l.strip_prefix("// @") {
            let (word, rest) = p
                .split_once(' ')
                .ok_or_else(|| err("empty pragma".into()))?;
            match word {
                "register" => {
                    let f: Vec<&str> = rest.split_whitespace().collect();
                    let [name, offset, width] = f[..] else {
                        return Err(err("register pragma needs name offset width".into()));
                    };
                    let num = |s: &str| s.parse::<usize>().map_err(|e| err(e.to_string()));
                    registers.push(Register {
                        name: name.to_string(),
                        offset: num(offset)?,
                        width: num(width)?,
                    });
                }
                "mcx" => {
                    let mut qs = parse_operands(rest, line)?;
                    let target = qs.pop().ok_or_else(|| err("mcx without operands".into()))?;
                    gates.push(Gate::Mcx {
                        controls: qs,
                        target,
                    });
                }
                "annotate" => {
                    let mut f = rest.splitn(3, ' ');
                    let mut num = || {
                        f.next()
                            .and_then(|s| s.parse::<usize>().ok())
                            .ok_or_else(|| err("annotate pragma needs start end tag".into()))
                    };
                    let (start, end) = (num()?, num()?);
                    let tag = f
                        .next()
                        .ok_or_else(|| err("annotation without tag".into()))?;
                    annotations.push(Annotation {
                        start,
                        end,
                        tag: tag.to_string(),
                    });
                }
                other => return Err(err(format!("unknown pragma {other:?}"))),
            }
            continue;
        }
        if l.starts_with("//") {
            continue;
        }
        if let Some(rest) = l.strip_prefix("qreg q[") {
            let w = rest
                .strip_suffix("];")
                .and_then(|n| n.parse::<usize>().ok());
            declared = Some(w.ok_or_else(|| err("bad qreg".into()))?);
            continue;
        }
        let (op, args) = l
            .split_once(' ')
            .ok_or_else(|| err(format!("unrecognized statement {l:?}")))?;
        let qs = parse_operands(args, line)?;
        let kind = match op {
            "x" => GateKind::Not,
            "cx" => GateKind::Cnot,
            "ccx" => GateKind::Ccnot,
            "swap" => GateKind::Swap,
            other => return Err(err(format!("unsupported gate {other:?}"))),
        };
        let (controls, targets) = match kind {
            GateKind::Swap => (&qs[..0], &qs[..]),
            _ if qs.is_empty() => return Err(err("gate without operands".into())),
            _ => (&qs[..qs.len() - 1], &qs[qs.len() - 1..]),
        };
        gates.push(Gate::from_parts(kind, controls, targets).map_err(err)?);
    }
    if registers.is_empty() {
        let w = declared.ok_or(CircuitError::EmptyLayout)?;
        registers.push(Register {
            name: "q".into(),
            offset: 0,
            width: w,
        });
    }
    let c = Circuit::from_raw(registers, gates, annotations)?;
    if declared.is_some_and(|w| w != c.width()) {
        return Err(CircuitError::LayoutMismatch);
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Circuit {
        let mut c = Circuit::new(&[("A", 3), ("B", 2)]).unwrap();
        c.not(4);
        c.cx(0, 3);
        c.ccx(1, 2, 0);
        c.swap(3, 4);
        c.push(Gate::Mcx {
            controls: vec![0, 1, 2, 3],
            target: 4,
        });
        c.annotate(1..3, "adder-interior").unwrap();
        c
    }

    #[test]
    fn json_round_trip() {
        let c = sample();
        assert_eq!(from_json(&to_json(&c)).unwrap(), c);
    }

    #[test]
    fn qasm_round_trip() {
        let c = sample();
        let text = to_qasm(&c);
        assert!(text.contains("ccx q[1],q[2],q[0];"));
        assert!(text.contains("// @mcx q[0],q[1],q[2],q[3],q[4];"));
        assert_eq!(from_qasm(&text).unwrap(), c);
    }

    #[test]
    fn qasm_rejects_bad_input() {
        assert!(from_qasm("qreg q[2];\nh q[0];\n").is_err());
        assert!(from_qasm("qreg q[2];\ncx q[0],q[0];\n").is_err());
        assert!(from_qasm("qreg q[2];\nx q[2];\n").is_err());
        assert!(from_qasm("qreg q[2];\nx q[1]\n").is_err());
    }

    #[test]
    fn json_rejects_invalid_gate() {
        let bad = r#"{"width":2,"registers":[{"name":"A","offset":0,"width":2}],
            "gates":[{"kind":"cnot","controls":[0],"targets":[5]}]}"#;
        assert!(matches!(
            from_json(bad),
            Err(CircuitError::OutOfRange { .. })
        ));
    }
}
