//! Reversible-circuit IR: NCT, SWAP and multi-controlled NOT gates over a
//! flat qubit index space carved into named registers.

mod histogram;
mod io;

pub use histogram::GateHistogram;
pub use io::{from_json, from_qasm, to_json, to_qasm};

use std::collections::HashMap;
use std::ops::Range;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircuitError {
    #[error("empty register layout")]
    EmptyLayout,
    #[error("duplicate register name {0:?}")]
    DuplicateRegister(String),
    #[error("register {0:?} has zero width")]
    ZeroWidth(String),
    #[error("qubit {index} out of range for width {width}")]
    OutOfRange { index: usize, width: usize },
    #[error("qubit {0} used twice in one gate")]
    RepeatedQubit(usize),
    #[error("multi-controlled NOT needs at least 3 controls, got {0}")]
    TooFewControls(usize),
    #[error("register layouts differ")]
    LayoutMismatch,
    #[error("unknown register {0:?}")]
    UnknownRegister(String),
    #[error("register {name:?}: width {found} does not match {expected}")]
    WidthMismatch {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("annotation range {start}..{end} exceeds {len} gates")]
    BadAnnotation {
        start: usize,
        end: usize,
        len: usize,
    },
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Gate {
    Not { target: usize },
    Cnot { control: usize, target: usize },
    Ccnot { controls: [usize; 2], target: usize },
    Swap { a: usize, b: usize },
    Mcx { controls: Vec<usize>, target: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GateKind {
    Not,
    Cnot,
    Ccnot,
    Swap,
    Mcx,
}

impl Gate {
    pub fn kind(&self) -> GateKind {
        match self {
            Gate::Not { .. } => GateKind::Not,
            Gate::Cnot { .. } => GateKind::Cnot,
            Gate::Ccnot { .. } => GateKind::Ccnot,
            Gate::Swap { .. } => GateKind::Swap,
            Gate::Mcx { .. } => GateKind::Mcx,
        }
    }

    pub fn controls(&self) -> &[usize] {
        match self {
            Gate::Not { .. } | Gate::Swap { .. } => &[],
            Gate::Cnot { control, .. } => std::slice::from_ref(control),
            Gate::Ccnot { controls, .. } => controls,
            Gate::Mcx { controls, .. } => controls,
        }
    }

    pub fn targets(&self) -> Vec<usize> {
        match self {
            Gate::Swap { a, b } => vec![*a, *b],
            Gate::Not { target }
            | Gate::Cnot { target, .. }
            | Gate::Ccnot { target, .. }
            | Gate::Mcx { target, .. } => vec![*target],
        }
    }

    /// Every qubit the gate touches, controls first.
    pub fn qubits(&self) -> Vec<usize> {
        let mut q = self.controls().to_vec();
        q.extend(self.targets());
        q
    }

    /// Rebuilds a gate from its kind and index lists; the inverse of
    /// `kind`/`controls`/`targets`.
    pub fn from_parts(
        kind: GateKind,
        controls: &[usize],
        targets: &[usize],
    ) -> Result<Gate, String> {
        let shape = (controls.len(), targets.len());
        Ok(match (kind, shape) {
            (GateKind::Not, (0, 1)) => Gate::Not { target: targets[0] },
            (GateKind::Cnot, (1, 1)) => Gate::Cnot {
                control: controls[0],
                target: targets[0],
            },
            (GateKind::Ccnot, (2, 1)) => Gate::Ccnot {
                controls: [controls[0], controls[1]],
                target: targets[0],
            },
            (GateKind::Swap, (0, 2)) => Gate::Swap {
                a: targets[0],
                b: targets[1],
            },
            (GateKind::Mcx, (_, 1)) => Gate::Mcx {
                controls: controls.to_vec(),
                target: targets[0],
            },
            _ => {
                return Err(format!(
                    "{kind:?} cannot take {} controls and {} targets",
                    shape.0, shape.1
                ))
            }
        })
    }

    pub fn validate(&self, width: usize) -> Result<(), CircuitError> {
        if let Gate::Mcx { controls, .. } = self {
            if controls.len() < 3 {
                return Err(CircuitError::TooFewControls(controls.len()));
            }
        }
        let qs = self.qubits();
        for (i, &q) in qs.iter().enumerate() {
            if q >= width {
                return Err(CircuitError::OutOfRange { index: q, width });
            }
            if qs[..i].contains(&q) {
                return Err(CircuitError::RepeatedQubit(q));
            }
        }
        Ok(())
    }

    pub fn map_qubits(&self, f: impl Fn(usize) -> usize) -> Gate {
        match self {
            Gate::Not { target } => Gate::Not { target: f(*target) },
            Gate::Cnot { control, target } => Gate::Cnot {
                control: f(*control),
                target: f(*target),
            },
            Gate::Ccnot { controls, target } => Gate::Ccnot {
                controls: controls.map(&f),
                target: f(*target),
            },
            Gate::Swap { a, b } => Gate::Swap { a: f(*a), b: f(*b) },
            Gate::Mcx { controls, target } => Gate::Mcx {
                controls: controls.iter().map(|&c| f(c)).collect(),
                target: f(*target),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Register {
    pub name: String,
    pub offset: usize,
    pub width: usize,
}

impl Register {
    pub fn qubit(&self, j: usize) -> usize {
        assert!(
            j < self.width,
            "bit {j} outside register {} of width {}",
            self.name,
            self.width
        );
        self.offset + j
    }

    pub fn range(&self) -> Range<usize> {
        self.offset..self.offset + self.width
    }
}

/// Tag covering gates `start..end`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Annotation {
    pub start: usize,
    pub end: usize,
    pub tag: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    width: usize,
    registers: Vec<Register>,
    gates: Vec<Gate>,
    annotations: Vec<Annotation>,
}

impl Circuit {
    /// Registers are laid out contiguously in declaration order.
    pub fn new<S: AsRef<str>>(layout: &[(S, usize)]) -> Result<Self, CircuitError> {
        if layout.is_empty() {
            return Err(CircuitError::EmptyLayout);
        }
        let mut registers: Vec<Register> = Vec::with_capacity(layout.len());
        let mut offset = 0;
        for (name, width) in layout {
            let name = name.as_ref();
            if registers.iter().any(|r| r.name == name) {
                return Err(CircuitError::DuplicateRegister(name.to_string()));
            }
            if *width == 0 {
                return Err(CircuitError::ZeroWidth(name.to_string()));
            }
            registers.push(Register {
                name: name.to_string(),
                offset,
                width: *width,
            });
            offset += width;
        }
        Ok(Self {
            width: offset,
            registers,
            gates: Vec::new(),
            annotations: Vec::new(),
        })
    }

    /// Empty circuit sharing `other`'s register layout.
    pub fn with_layout_of(other: &Circuit) -> Self {
        Self {
            width: other.width,
            registers: other.registers.clone(),
            gates: Vec::new(),
            annotations: Vec::new(),
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn registers(&self) -> &[Register] {
        &self.registers
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn annotations(&self) -> &[Annotation] {
        &self.annotations
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn register(&self, name: &str) -> Result<&Register, CircuitError> {
        self.registers
            .iter()
            .find(|r| r.name == name)
            .ok_or_else(|| CircuitError::UnknownRegister(name.to_string()))
    }

    /// Qubit indices of a register, LSB first.
    pub fn qubits_of(&self, name: &str) -> Result<Vec<usize>, CircuitError> {
        Ok(self.register(name)?.range().collect())
    }

    pub fn append(&mut self, gate: Gate) -> Result<(), CircuitError> {
        gate.validate(self.width)?;
        self.gates.push(gate);
        Ok(())
    }

    pub(crate) fn push(&mut self, gate: Gate) {
        if let Err(e) = gate.validate(self.width) {
            panic!("builder emitted invalid gate {gate:?}: {e}");
        }
        self.gates.push(gate);
    }

    pub(crate) fn not(&mut self, target: usize) {
        self.push(Gate::Not { target });
    }

    pub(crate) fn cx(&mut self, control: usize, target: usize) {
        self.push(Gate::Cnot { control, target });
    }

    pub(crate) fn ccx(&mut self, c0: usize, c1: usize, target: usize) {
        self.push(Gate::Ccnot {
            controls: [c0, c1],
            target,
        });
    }

    pub(crate) fn swap(&mut self, a: usize, b: usize) {
        self.push(Gate::Swap { a, b });
    }

    pub fn annotate(&mut self, range: Range<usize>, tag: &str) -> Result<(), CircuitError> {
        if range.start > range.end || range.end > self.gates.len() {
            return Err(CircuitError::BadAnnotation {
                start: range.start,
                end: range.end,
                len: self.gates.len(),
            });
        }
        if range.start < range.end {
            self.annotations.push(Annotation {
                start: range.start,
                end: range.end,
                tag: tag.to_string(),
            });
        }
        Ok(())
    }

    /// Per-gate flag: does any annotation with `tag` cover gate `i`?
    pub fn tag_mask(&self, tag: &str) -> Vec<bool> {
        let mut mask = vec![false; self.gates.len()];
        for a in self.annotations.iter().filter(|a| a.tag == tag) {
            mask[a.start..a.end].iter_mut().for_each(|m| *m = true);
        }
        mask
    }

    /// Appends `other`'s gates with qubit `i` of `other` sent to `map[i]`.
    pub fn extend_mapped(&mut self, other: &Circuit, map: &[usize]) -> Result<(), CircuitError> {
        if map.len() != other.width {
            return Err(CircuitError::WidthMismatch {
                name: "<map>".into(),
                expected: other.width,
                found: map.len(),
            });
        }
        let base = self.gates.len();
        let mut mapped = Vec::with_capacity(other.gates.len());
        for g in &other.gates {
            let g = g.map_qubits(|q| map[q]);
            g.validate(self.width)?;
            mapped.push(g);
        }
        self.gates.extend(mapped);
        self.annotations
            .extend(other.annotations.iter().map(|a| Annotation {
                start: a.start + base,
                end: a.end + base,
                tag: a.tag.clone(),
            }));
        Ok(())
    }

    /// Appends a circuit with the same layout.
    pub fn extend(&mut self, other: &Circuit) -> Result<(), CircuitError> {
        if self.width != other.width || self.registers != other.registers {
            return Err(CircuitError::LayoutMismatch);
        }
        let identity: Vec<usize> = (0..self.width).collect();
        self.extend_mapped(other, &identity)
    }

    pub fn compose(a: &Circuit, b: &Circuit) -> Result<Circuit, CircuitError> {
        let mut out = a.clone();
        out.extend(b)?;
        Ok(out)
    }

    pub fn inverse(&self) -> Circuit {
        let n = self.gates.len();
        Circuit {
            width: self.width,
            registers: self.registers.clone(),
            gates: self.gates.iter().rev().cloned().collect(),
            annotations: self
                .annotations
                .iter()
                .rev()
                .map(|a| Annotation {
                    start: n - a.end,
                    end: n - a.start,
                    tag: a.tag.clone(),
                })
                .collect(),
        }
    }

    /// Translates `self` onto `host`'s layout. `embedding` sends each of
    /// `self`'s register names to a host register of equal width; the
    /// result carries the host layout and only the translated gates.
    pub fn remap(
        &self,
        embedding: &[(&str, &str)],
        host: &Circuit,
    ) -> Result<Circuit, CircuitError> {
        let table: HashMap<&str, &str> = embedding.iter().copied().collect();
        let mut map = vec![usize::MAX; self.width];
        for r in &self.registers {
            let target = table
                .get(r.name.as_str())
                .ok_or_else(|| CircuitError::UnknownRegister(r.name.clone()))?;
            let h = host.register(target)?;
            if h.width != r.width {
                return Err(CircuitError::WidthMismatch {
                    name: r.name.clone(),
                    expected: r.width,
                    found: h.width,
                });
            }
            for j in 0..r.width {
                map[r.offset + j] = h.offset + j;
            }
        }
        let mut out = Circuit::with_layout_of(host);
        out.extend_mapped(self, &map)?;
        Ok(out)
    }

    pub fn histogram(&self) -> GateHistogram {
        self.gates.iter().collect()
    }

    /// Re-checks every structural invariant.
    pub fn validate(&self) -> Result<(), CircuitError> {
        let mut expected = 0;
        for r in &self.registers {
            if r.offset != expected || r.width == 0 {
                return Err(CircuitError::LayoutMismatch);
            }
            expected += r.width;
        }
        if expected != self.width {
            return Err(CircuitError::LayoutMismatch);
        }
        for g in &self.gates {
            g.validate(self.width)?;
        }
        for a in &self.annotations {
            if a.start >= a.end || a.end > self.gates.len() {
                return Err(CircuitError::BadAnnotation {
                    start: a.start,
                    end: a.end,
                    len: self.gates.len(),
                });
            }
        }
        Ok(())
    }

    pub(crate) fn from_raw(
        registers: Vec<Register>,
        gates: Vec<Gate>,
        annotations: Vec<Annotation>,
    ) -> Result<Circuit, CircuitError> {
        let width = registers.iter().map(|r| r.width).sum();
        let c = Circuit {
            width,
            registers,
            gates,
            annotations,
        };
        c.validate()?;
        Ok(c)
    }
}
