use std::collections::BTreeMap;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul};

use serde::{Deserialize, Serialize};

use super::Gate;

/// Per-kind gate counts. `mcx` maps control arity to count.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GateHistogram {
    pub not: u64,
    pub cnot: u64,
    pub ccnot: u64,
    pub swap: u64,
    #[serde(default)]
    pub mcx: BTreeMap<usize, u64>,
}

impl GateHistogram {
    pub const fn nct_swap(not: u64, cnot: u64, ccnot: u64, swap: u64) -> Self {
        Self {
            not,
            cnot,
            ccnot,
            swap,
            mcx: BTreeMap::new(),
        }
    }

    pub fn mcx_total(&self) -> u64 {
        self.mcx.values().sum()
    }

    pub fn total(&self) -> u64 {
        self.not + self.cnot + self.ccnot + self.swap + self.mcx_total()
    }

    pub fn record(&mut self, gate: &Gate) {
        match gate {
            Gate::Not { .. } => self.not += 1,
            Gate::Cnot { .. } => self.cnot += 1,
            Gate::Ccnot { .. } => self.ccnot += 1,
            Gate::Swap { .. } => self.swap += 1,
            Gate::Mcx { controls, .. } => *self.mcx.entry(controls.len()).or_insert(0) += 1,
        }
    }
}

impl<'a> FromIterator<&'a Gate> for GateHistogram {
    fn from_iter<I: IntoIterator<Item = &'a Gate>>(iter: I) -> Self {
        let mut h = GateHistogram::default();
        iter.into_iter().for_each(|g| h.record(g));
        h
    }
}

impl AddAssign<&GateHistogram> for GateHistogram {
    fn add_assign(&mut self, rhs: &GateHistogram) {
        self.not += rhs.not;
        self.cnot += rhs.cnot;
        self.ccnot += rhs.ccnot;
        self.swap += rhs.swap;
        for (t, n) in &rhs.mcx {
            *self.mcx.entry(*t).or_insert(0) += n;
        }
    }
}

impl Add for GateHistogram {
    type Output = GateHistogram;
    fn add(mut self, rhs: GateHistogram) -> GateHistogram {
        self += &rhs;
        self
    }
}

impl Add<&GateHistogram> for &GateHistogram {
    type Output = GateHistogram;
    fn add(self, rhs: &GateHistogram) -> GateHistogram {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Mul<u64> for &GateHistogram {
    type Output = GateHistogram;
    fn mul(self, k: u64) -> GateHistogram {
        GateHistogram {
            not: self.not * k,
            cnot: self.cnot * k,
            ccnot: self.ccnot * k,
            swap: self.swap * k,
            mcx: self.mcx.iter().map(|(t, n)| (*t, n * k)).collect(),
        }
    }
}

impl Sum for GateHistogram {
    fn sum<I: Iterator<Item = GateHistogram>>(iter: I) -> Self {
        iter.fold(GateHistogram::default(), |acc, h| acc + h)
    }
}

impl fmt::Display for GateHistogram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "NOT {} / CNOT {} / CCNOT {} / SWAP {}",
            self.not, self.cnot, self.ccnot, self.swap
        )?;
        for (t, n) in &self.mcx {
            write!(f, " / MCX(t={t}) {n}")?;
        }
        Ok(())
    }
}
