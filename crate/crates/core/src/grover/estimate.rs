//! Attack-cost arithmetic. Everything is an exact integer; only the final
//! mantissa rendering goes through `f64`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::{build_oracle, GroverError, OracleSpec};
use crate::published::{deviation_pct, published, Scientific};
use crate::resources::{self, mcx_t_count, CostModel, DepthModel, ResourceReport};

/// `floor(pi/4 * 2^64)`.
pub const PI_OVER_4_FIXED: u64 = 0xC90F_DAA2_2168_C234;

/// NIST MAXDEPTH bounds, as powers of two.
pub const MAXDEPTH_BOUNDS: [u32; 3] = [40, 64, 96];

/// Grover iterations for one marked key among `2^k`:
/// `floor(P * floor(2^(k/2 + 64)) / 2^128)` with `P = PI_OVER_4_FIXED`.
pub fn iterations(k: u32) -> BigUint {
    let root = (BigUint::one() << (k as usize + 128)).sqrt();
    (root * PI_OVER_4_FIXED) >> 128usize
}

/// Smallest `r` with `r > k / n`.
pub fn required_pairs(k: u64, n: u64) -> u64 {
    k / n + 1
}

/// log2 of the expected number of wrong keys consistent with `r` pairs.
pub fn spurious_log2(k: i64, n: i64, r: i64) -> i64 {
    k - r * n
}

/// `floor(log2(cost)) - d` for each MAXDEPTH bound `2^d`.
pub fn maxdepth_table(total_cost: &BigUint) -> [i64; 3] {
    assert!(!total_cost.is_zero(), "cost must be positive");
    let lg = total_cost.bits() as i64 - 1;
    MAXDEPTH_BOUNDS.map(|d| lg - d as i64)
}

/// `m * 2^e` with `m` in `[1, 2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sci {
    pub m: f64,
    pub e: i64,
}

impl Sci {
    pub fn log2(&self) -> f64 {
        self.m.log2() + self.e as f64
    }

    pub fn as_f64(&self) -> f64 {
        self.m * 2f64.powi(self.e as i32)
    }

    /// Relative difference from a published figure, in percent.
    pub fn deviation_from(&self, p: &Scientific) -> f64 {
        (2f64.powf(self.log2() - p.log2()) - 1.0) * 100.0
    }
}

impl fmt::Display for Sci {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.2} x 2^{}", self.m, self.e)
    }
}

pub fn render_scientific(x: &BigUint) -> Sci {
    if x.is_zero() {
        return Sci { m: 0.0, e: 0 };
    }
    let e = x.bits() as i64 - 1;
    let shift = (e - 62).max(0) as usize;
    let top = (x >> shift).to_u64().expect("at most 63 bits remain");
    Sci {
        m: top as f64 / 2f64.powi((e - shift as i64) as i32),
        e,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EstimateOptions {
    /// Clifford gates charged per Toffoli.
    pub toffoli_clifford: u64,
    /// SWAP weight in the native #GATES figure; the decomposed figure uses 3.
    pub swap_weight: u64,
    /// Flat per-iteration gate surcharge for the diffusion operator.
    pub diffusion_gates: u64,
    pub depth_model: DepthModel,
}

impl Default for EstimateOptions {
    fn default() -> Self {
        Self {
            toffoli_clifford: 8,
            swap_weight: 1,
            diffusion_gates: 0,
            depth_model: DepthModel::paper(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Comparison {
    pub quantity: String,
    pub ours: f64,
    pub published: f64,
    pub deviation_pct: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct AttackEstimate {
    pub r: usize,
    pub oracle: ResourceReport,
    #[serde(serialize_with = "decimal")]
    pub iterations: BigUint,
    pub t_per_iteration: u64,
    pub mcx_clifford_per_iteration: u64,
    pub clifford_per_iteration: u64,
    pub clifford_per_iteration_swap: u64,
    #[serde(serialize_with = "decimal")]
    pub t_gates: BigUint,
    /// The "#GATES" column.
    #[serde(serialize_with = "decimal")]
    pub total_gates: BigUint,
    #[serde(serialize_with = "decimal")]
    pub total_gates_swap: BigUint,
    #[serde(serialize_with = "decimal")]
    pub full_depth: BigUint,
    #[serde(serialize_with = "decimal")]
    pub total_cost: BigUint,
    #[serde(serialize_with = "decimal")]
    pub total_cost_swap: BigUint,
    pub maxdepth: [i64; 3],
    pub formulas: Vec<String>,
}

fn decimal<S: serde::Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_str_radix(10))
}

pub fn attack_estimate(
    spec: &OracleSpec,
    opts: &EstimateOptions,
) -> Result<AttackEstimate, GroverError> {
    let oracle = build_oracle(spec)?;
    let report = resources::report(
        &format!("oracle:r={}", spec.r),
        &oracle,
        &CostModel::default(),
        &opts.depth_model,
    );
    let h = &report.histogram;
    let mut mcx_t = 0;
    for (&t, &n) in &h.mcx {
        mcx_t += mcx_t_count(t).map_err(|_| GroverError::UnsupportedR(spec.r))? * n;
    }
    let t_per = 7 * h.ccnot + mcx_t;
    let mcx_clifford = (8 * mcx_t).div_ceil(7);
    let base =
        h.not + h.cnot + opts.toffoli_clifford * h.ccnot + mcx_clifford + opts.diffusion_gates;
    let clifford = base + opts.swap_weight * h.swap;
    let clifford_swap = base + 3 * h.swap;
    let it = iterations(spec.key_bits as u32);
    let full_depth = &it * report.depth;
    let total_gates = &it * clifford;
    let total_gates_swap = &it * clifford_swap;
    let total_cost = &total_gates * &full_depth;
    let total_cost_swap = &total_gates_swap * &full_depth;
    let formulas = vec![
        format!("iterations = floor(pi/4 * 2^{}) [pi/4 as 64-bit fixed point, truncated]", spec.key_bits / 2),
        format!("T per iteration = 7*CCNOT + sum(32t-84) = 7*{} + {} = {}", h.ccnot, mcx_t, t_per),
        format!("MCX Clifford = ceil(8 * {mcx_t} / 7) = {mcx_clifford}"),
        format!(
            "#GATES per iteration = NOT + CNOT + {}*CCNOT + {}*SWAP + MCX Clifford = {} + {} + {} + {} + {} = {}",
            opts.toffoli_clifford,
            opts.swap_weight,
            h.not,
            h.cnot,
            opts.toffoli_clifford * h.ccnot,
            opts.swap_weight * h.swap,
            mcx_clifford,
            clifford
        ),
        format!("#GATES (SWAP as 3 CNOT) per iteration = {clifford_swap}"),
        format!("full depth = oracle depth * iterations = {} * iterations", report.depth),
        "total cost = #GATES * full depth".to_string(),
    ];
    Ok(AttackEstimate {
        r: spec.r,
        maxdepth: maxdepth_table(&total_cost),
        oracle: report,
        t_gates: &it * t_per,
        iterations: it,
        t_per_iteration: t_per,
        mcx_clifford_per_iteration: mcx_clifford,
        clifford_per_iteration: clifford,
        clifford_per_iteration_swap: clifford_swap,
        total_gates,
        total_gates_swap,
        full_depth,
        total_cost,
        total_cost_swap,
        formulas,
    })
}

impl AttackEstimate {
    /// Signed deviations from the published oracle and attack rows.
    pub fn compare_with_published(&self) -> Vec<Comparison> {
        let p = published();
        let mut out = Vec::new();
        let mut push = |q: &str, ours: f64, theirs: f64| {
            out.push(Comparison {
                quantity: q.to_string(),
                ours,
                published: theirs,
                deviation_pct: deviation_pct(ours, theirs),
            })
        };
        let h = &self.oracle.histogram;
        if let Some(o) = p.oracle(self.r) {
            push("qubits", self.oracle.qubits as f64, o.qubits as f64);
            push("NOT", h.not as f64, o.not as f64);
            push("CNOT", h.cnot as f64, o.cnot as f64);
            push("CCNOT", h.ccnot as f64, o.ccnot as f64);
            push("TOTAL", self.oracle.total_gates as f64, o.total as f64);
            push("COST", self.oracle.cost_excl_swap as f64, o.cost as f64);
            push(
                "COST(SWAP)",
                self.oracle.cost_incl_swap as f64,
                o.cost_swap as f64,
            );
            push("DEPTH", self.oracle.depth as f64, o.depth as f64);
        }
        let mut sci = |q: &str, ours: &BigUint, theirs: Option<&Scientific>| {
            if let Some(t) = theirs {
                let s = render_scientific(ours);
                out.push(Comparison {
                    quantity: q.to_string(),
                    ours: s.as_f64(),
                    published: t.m * 2f64.powi(t.e),
                    deviation_pct: s.deviation_from(t),
                });
            }
        };
        if let Some(a) = p.attack(self.r, false) {
            sci("T-gates", &self.t_gates, a.t_gates.as_ref());
            sci("#GATES", &self.total_gates, Some(&a.gates));
            sci("FULL DEPTH", &self.full_depth, a.full_depth.as_ref());
            sci("TOTAL COST", &self.total_cost, Some(&a.total_cost));
        }
        if let Some(a) = p.attack(self.r, true) {
            sci("#GATES (SWAP)", &self.total_gates_swap, Some(&a.gates));
            sci(
                "TOTAL COST (SWAP)",
                &self.total_cost_swap,
                Some(&a.total_cost),
            );
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn iteration_counts() {
        assert_eq!(iterations(0), BigUint::zero());
        assert_eq!(iterations(2), BigUint::one());
        assert_eq!(iterations(128), BigUint::from(PI_OVER_4_FIXED));
        let s = render_scientific(&iterations(128));
        assert_eq!(s.e, 63);
        assert!((s.m - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
        // floor(pi/4 * 2^5) = floor(25.13)
        assert_eq!(iterations(10), BigUint::from(25u32));
    }

    #[test]
    fn fixed_point_pi() {
        let approx = PI_OVER_4_FIXED as f64 / 2f64.powi(64);
        assert!((approx - std::f64::consts::FRAC_PI_4).abs() < 1e-15);
    }

    #[test]
    fn pairs_and_spurious() {
        assert_eq!(required_pairs(128, 64), 3);
        assert_eq!(required_pairs(64, 64), 2);
        assert_eq!(required_pairs(128, 128), 2);
        assert_eq!(spurious_log2(128, 64, 3), -64);
        assert_eq!(spurious_log2(128, 64, 2), 0);
        assert_eq!(spurious_log2(128, 64, 1), 64);
    }

    #[test]
    fn maxdepth_rows() {
        let two = |e: usize| BigUint::one() << e;
        assert_eq!(maxdepth_table(&two(159)), [119, 95, 63]);
        assert_eq!(maxdepth_table(&two(158)), [118, 94, 62]);
        assert_eq!(maxdepth_table(&two(96)), [56, 32, 0]);
    }

    #[test]
    fn scientific_rendering() {
        let x = BigUint::from(3u32) << 100usize;
        assert_eq!(render_scientific(&x), Sci { m: 1.5, e: 101 });
        assert_eq!(render_scientific(&BigUint::one()), Sci { m: 1.0, e: 0 });
        assert_eq!(format!("{}", Sci { m: 1.4647, e: 77 }), "1.46 x 2^77");
    }
}
