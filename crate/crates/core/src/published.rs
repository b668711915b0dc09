//! Published reference figures, shipped as `data/published.json` and used
//! only for side-by-side comparison in reports.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::cipher::round_constant;

const RAW: &str = include_str!("../data/published.json");

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Scientific {
    pub m: f64,
    pub e: i32,
}

impl Scientific {
    pub fn log2(&self) -> f64 {
        self.m.log2() + self.e as f64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComponentRow {
    pub name: String,
    pub label: String,
    pub not: u64,
    pub cnot: u64,
    pub ccnot: u64,
    pub swap: u64,
    pub total: u64,
    pub cost: u64,
    pub cost_swap: u64,
    pub depth: u64,
    #[serde(default)]
    pub plus_rc: bool,
    #[serde(default)]
    pub qubits: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleRow {
    pub r: usize,
    pub qubits: usize,
    pub not: u64,
    pub cnot: u64,
    pub ccnot: u64,
    pub total: u64,
    pub cost: u64,
    pub cost_swap: u64,
    pub depth: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AttackRow {
    pub r: usize,
    pub swap_decomposed: bool,
    pub gate_cost: u64,
    #[serde(default)]
    pub t_gates: Option<Scientific>,
    pub gates: Scientific,
    #[serde(default)]
    pub full_depth: Option<Scientific>,
    pub total_cost: Scientific,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaxDepthRow {
    pub r: usize,
    pub log2_cost: u32,
    pub d40: i64,
    pub d64: i64,
    pub d96: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OtherCipherRow {
    pub cipher: String,
    pub qubits: usize,
    pub not: u64,
    pub cnot: u64,
    pub ccnot: u64,
    pub total: u64,
    pub depth: u64,
    pub cost: u64,
    pub r: usize,
    pub gate_cost: u64,
    pub gates: Scientific,
    pub full_depth: Scientific,
    pub total_cost: Scientific,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Published {
    pub version: u32,
    pub components: Vec<ComponentRow>,
    pub oracle: Vec<OracleRow>,
    pub attack: Vec<AttackRow>,
    pub maxdepth: Vec<MaxDepthRow>,
    pub other_ciphers: Vec<OtherCipherRow>,
}

pub fn published() -> &'static Published {
    static DATA: OnceLock<Published> = OnceLock::new();
    DATA.get_or_init(|| serde_json::from_str(RAW).expect("bundled published.json is well formed"))
}

impl Published {
    /// Published row for a CLI component name, with the round-counter NOTs
    /// folded in for `keyupdate:<i>` and `round:<i>`.
    pub fn component(&self, name: &str) -> Option<ComponentRow> {
        let (key, round) = match name.split_once(':') {
            Some(("keyupdate", i)) => ("keyupdate", i.parse::<usize>().ok()),
            Some(("round", "0")) => ("round0", None),
            Some(("round", i)) => ("round", i.parse::<usize>().ok()),
            Some(_) => return None,
            None => (name, None),
        };
        let mut row = self.components.iter().find(|c| c.name == key)?.clone();
        if row.plus_rc {
            let rc = round_constant(round?).count_ones() as u64;
            row.not += rc;
            row.total += rc;
            row.cost += rc;
            row.cost_swap += rc;
            row.plus_rc = false;
        }
        Some(row)
    }

    pub fn oracle(&self, r: usize) -> Option<&OracleRow> {
        self.oracle.iter().find(|o| o.r == r)
    }

    pub fn attack(&self, r: usize, swap_decomposed: bool) -> Option<&AttackRow> {
        self.attack
            .iter()
            .find(|a| a.r == r && a.swap_decomposed == swap_decomposed)
    }

    pub fn maxdepth(&self, r: usize) -> Option<&MaxDepthRow> {
        self.maxdepth.iter().find(|m| m.r == r)
    }
}

/// Signed relative deviation in percent, `(ours - published) / published`.
/// Equal values give 0 even when both are zero; a nonzero value against a
/// published zero gives an infinite deviation.
pub fn deviation_pct(ours: f64, published: f64) -> f64 {
    if ours == published {
        return 0.0;
    }
    (ours - published) / published * 100.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deviation_edges() {
        assert_eq!(deviation_pct(0.0, 0.0), 0.0);
        assert!((deviation_pct(110.0, 100.0) - 10.0).abs() < 1e-12);
        assert!(deviation_pct(1.0, 0.0).is_infinite());
    }

    #[test]
    fn loads_and_folds_round_constants() {
        let p = published();
        assert_eq!(p.component("gfspx").unwrap().total, 22_035);
        let k1 = p.component("keyupdate:1").unwrap();
        assert_eq!((k1.not, k1.total), (5, 154));
        assert_eq!(p.component("round:3").unwrap().not, 126);
        assert_eq!(p.component("round:0").unwrap().not, 120);
        assert!(p.component("keyupdate").is_none());
        assert_eq!(p.oracle(3).unwrap().qubits, 628);
        assert_eq!(p.maxdepth(2).unwrap().d40, 118);
    }

    #[test]
    fn published_rows_are_self_consistent() {
        for c in &published().components {
            assert_eq!(c.not + c.cnot + c.ccnot + c.swap, c.total, "{}", c.name);
            assert_eq!(c.not + c.cnot + 6 * c.ccnot, c.cost, "{}", c.name);
            assert_eq!(c.cost + 3 * c.swap, c.cost_swap, "{}", c.name);
        }
    }
}
