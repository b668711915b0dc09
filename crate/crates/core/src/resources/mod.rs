//! Gate accounting: cost, T-count and ASAP depth under configurable
//! per-kind weights.

mod table;

pub use crate::circuit::GateHistogram;
pub use table::{render, ReportFormat, ReportRow};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circuit::{Circuit, Gate};

/// Annotation tag whose Toffolis the paper-mode depth prices at 1.
pub const ADDER_INTERIOR: &str = "adder-interior";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResourceError {
    #[error("T-count formula 32t-84 needs t >= 5, got an MCX with t = {0}")]
    McxTooSmall(usize),
    #[error("unknown {what} {value:?}")]
    UnknownMode { what: &'static str, value: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum SwapMode {
    #[default]
    Excluded,
    ThreeCnot,
}

impl FromStr for SwapMode {
    type Err = ResourceError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "excluded" => Ok(SwapMode::Excluded),
            "three-cnot" | "three_cnot" => Ok(SwapMode::ThreeCnot),
            _ => Err(ResourceError::UnknownMode {
                what: "swap mode",
                value: s.into(),
            }),
        }
    }
}

impl fmt::Display for SwapMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SwapMode::Excluded => "excluded",
            SwapMode::ThreeCnot => "three-cnot",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CostModel {
    pub not_w: u64,
    pub cnot_w: u64,
    pub ccnot_w: u64,
    pub swap_mode: SwapMode,
}

impl Default for CostModel {
    fn default() -> Self {
        Self {
            not_w: 1,
            cnot_w: 1,
            ccnot_w: 6,
            swap_mode: SwapMode::Excluded,
        }
    }
}

impl CostModel {
    pub fn with_swaps(swap_mode: SwapMode) -> Self {
        Self {
            swap_mode,
            ..Self::default()
        }
    }
}

/// MCX gates are not priced here; see `t_count`.
pub fn cost(h: &GateHistogram, m: &CostModel) -> u64 {
    let swap = match m.swap_mode {
        SwapMode::Excluded => 0,
        SwapMode::ThreeCnot => 3 * m.cnot_w * h.swap,
    };
    m.not_w * h.not + m.cnot_w * h.cnot + m.ccnot_w * h.ccnot + swap
}

pub fn t_count(h: &GateHistogram) -> Result<u64, ResourceError> {
    let mut t = 7 * h.ccnot;
    for (&arity, &n) in &h.mcx {
        t += mcx_t_count(arity)? * n;
    }
    Ok(t)
}

pub fn mcx_t_count(t: usize) -> Result<u64, ResourceError> {
    if t < 5 {
        return Err(ResourceError::McxTooSmall(t));
    }
    Ok(32 * t as u64 - 84)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum DepthMode {
    /// NOT 1, CNOT 1, SWAP 3, CCNOT 7, adder-interior CCNOT 1.
    #[default]
    Paper,
    Uniform1,
    /// Paper weights with every CCNOT at 7.
    Uniform7,
}

impl FromStr for DepthMode {
    type Err = ResourceError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "paper" => Ok(DepthMode::Paper),
            "uniform1" => Ok(DepthMode::Uniform1),
            "uniform7" => Ok(DepthMode::Uniform7),
            _ => Err(ResourceError::UnknownMode {
                what: "depth mode",
                value: s.into(),
            }),
        }
    }
}

impl fmt::Display for DepthMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DepthMode::Paper => "paper",
            DepthMode::Uniform1 => "uniform1",
            DepthMode::Uniform7 => "uniform7",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepthModel {
    pub mode: DepthMode,
    pub not_w: u64,
    pub cnot_w: u64,
    pub ccnot_w: u64,
    pub swap_w: u64,
    pub adder_interior_ccnot_w: Option<u64>,
    /// MCX weight is `ccnot_w * ceil(log2 t) + mcx_constant`.
    pub mcx_constant: u64,
}

impl DepthModel {
    pub fn paper() -> Self {
        Self {
            mode: DepthMode::Paper,
            not_w: 1,
            cnot_w: 1,
            ccnot_w: 7,
            swap_w: 3,
            adder_interior_ccnot_w: Some(1),
            mcx_constant: 0,
        }
    }

    pub fn uniform1() -> Self {
        Self {
            mode: DepthMode::Uniform1,
            not_w: 1,
            cnot_w: 1,
            ccnot_w: 1,
            swap_w: 1,
            adder_interior_ccnot_w: None,
            mcx_constant: 0,
        }
    }

    pub fn uniform7() -> Self {
        Self {
            mode: DepthMode::Uniform7,
            adder_interior_ccnot_w: None,
            ..Self::paper()
        }
    }

    pub fn for_mode(mode: DepthMode) -> Self {
        match mode {
            DepthMode::Paper => Self::paper(),
            DepthMode::Uniform1 => Self::uniform1(),
            DepthMode::Uniform7 => Self::uniform7(),
        }
    }

    pub fn mcx_weight(&self, t: usize) -> u64 {
        let log = usize::BITS - (t.max(1) - 1).leading_zeros();
        self.ccnot_w * log as u64 + self.mcx_constant
    }

    fn weight(&self, g: &Gate, interior: bool) -> u64 {
        match g {
            Gate::Not { .. } => self.not_w,
            Gate::Cnot { .. } => self.cnot_w,
            Gate::Ccnot { .. } => match self.adder_interior_ccnot_w {
                Some(w) if interior => w,
                _ => self.ccnot_w,
            },
            Gate::Swap { .. } => self.swap_w,
            Gate::Mcx { controls, .. } => self.mcx_weight(controls.len()),
        }
    }

    pub fn describe(&self) -> String {
        let interior = match self.adder_interior_ccnot_w {
            Some(w) => format!(", adder-interior CCNOT={w}"),
            None => String::new(),
        };
        format!(
            "{}: NOT={} CNOT={} CCNOT={} SWAP={}{}, MCX(t)={}*ceil(log2 t)+{}",
            self.mode,
            self.not_w,
            self.cnot_w,
            self.ccnot_w,
            self.swap_w,
            interior,
            self.ccnot_w,
            self.mcx_constant
        )
    }
}

impl Default for DepthModel {
    fn default() -> Self {
        Self::paper()
    }
}

/// ASAP schedule: each gate starts once every qubit it touches is free.
pub fn depth(c: &Circuit, m: &DepthModel) -> u64 {
    schedule(c, m)
        .into_iter()
        .map(|(_, end)| end)
        .max()
        .unwrap_or(0)
}

/// `(start, end)` of every gate under the ASAP schedule.
pub fn schedule(c: &Circuit, m: &DepthModel) -> Vec<(u64, u64)> {
    let interior = c.tag_mask(ADDER_INTERIOR);
    let mut free = vec![0u64; c.width()];
    c.gates()
        .iter()
        .zip(interior)
        .map(|(g, inside)| {
            let qs = g.qubits();
            let start = qs.iter().map(|&q| free[q]).max().unwrap_or(0);
            let end = start + m.weight(g, inside);
            qs.iter().for_each(|&q| free[q] = end);
            (start, end)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResourceReport {
    pub component: String,
    pub qubits: usize,
    pub histogram: GateHistogram,
    pub total_gates: u64,
    pub cost_excl_swap: u64,
    pub cost_incl_swap: u64,
    pub depth: u64,
    pub depth_mode: DepthMode,
    /// `None` when the circuit holds an MCX outside the formula's range.
    pub t_count: Option<u64>,
}

pub fn report(
    component: &str,
    c: &Circuit,
    cost_model: &CostModel,
    depth_model: &DepthModel,
) -> ResourceReport {
    let h = c.histogram();
    let excl = CostModel {
        swap_mode: SwapMode::Excluded,
        ..*cost_model
    };
    let incl = CostModel {
        swap_mode: SwapMode::ThreeCnot,
        ..*cost_model
    };
    ResourceReport {
        component: component.to_string(),
        qubits: c.width(),
        total_gates: h.total(),
        cost_excl_swap: cost(&h, &excl),
        cost_incl_swap: cost(&h, &incl),
        depth: depth(c, depth_model),
        depth_mode: depth_model.mode,
        t_count: t_count(&h).ok(),
        histogram: h,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cost_of_cipher_totals() {
        let h = GateHistogram::nct_swap(2516, 11310, 3112, 5097);
        assert_eq!(cost(&h, &CostModel::default()), 32_498);
        assert_eq!(
            cost(&h, &CostModel::with_swaps(SwapMode::ThreeCnot)),
            47_789
        );
        assert_eq!(cost(&GateHistogram::default(), &CostModel::default()), 0);
    }

    #[test]
    fn t_counts() {
        let mut h = GateHistogram::default();
        h.mcx.insert(192, 1);
        assert_eq!(t_count(&h).unwrap(), 6_060);
        assert_eq!(t_count(&GateHistogram::nct_swap(0, 0, 1, 0)).unwrap(), 7);
        assert_eq!(t_count(&GateHistogram::default()).unwrap(), 0);
        h.mcx.insert(4, 1);
        assert_eq!(t_count(&h), Err(ResourceError::McxTooSmall(4)));
    }

    #[test]
    fn depth_basics() {
        let mut c = Circuit::new(&[("A", 4)]).unwrap();
        assert_eq!(depth(&c, &DepthModel::paper()), 0);
        c.not(0);
        assert_eq!(depth(&c, &DepthModel::paper()), 1);
        c.not(1);
        assert_eq!(depth(&c, &DepthModel::paper()), 1);
        c.ccx(0, 1, 2);
        assert_eq!(depth(&c, &DepthModel::paper()), 8);
        assert_eq!(depth(&c, &DepthModel::uniform1()), 2);
        c.annotate(2..3, ADDER_INTERIOR).unwrap();
        assert_eq!(depth(&c, &DepthModel::paper()), 2);
        assert_eq!(depth(&c, &DepthModel::uniform7()), 8);
        // qubit 0 is busy until the CCNOT ends at 2
        c.swap(3, 0);
        assert_eq!(depth(&c, &DepthModel::paper()), 5);
    }

    #[test]
    fn mcx_weights() {
        let m = DepthModel::paper();
        assert_eq!(m.mcx_weight(192), 56);
        assert_eq!(m.mcx_weight(128), 49);
        assert_eq!(m.mcx_weight(3), 14);
    }

    #[test]
    fn modes_parse() {
        for m in [DepthMode::Paper, DepthMode::Uniform1, DepthMode::Uniform7] {
            assert_eq!(m.to_string().parse::<DepthMode>().unwrap(), m);
        }
        assert!("fast".parse::<DepthMode>().is_err());
        assert_eq!(
            "three-cnot".parse::<SwapMode>().unwrap(),
            SwapMode::ThreeCnot
        );
    }
}
