use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use gfspx::cipher::parse_vectors;
use gfspx::cipher::{decrypt, encrypt};
use gfspx::circuit::Circuit;
use gfspx::circuit::{to_json, to_qasm};
use gfspx::grover::{
    attack_estimate, build_oracle, render_scientific, required_pairs, spurious_log2,
    AttackEstimate, EstimateOptions, OracleSpec, BLOCK_BITS, KEY_BITS, MAXDEPTH_BOUNDS,
};
use gfspx::published::{published, ComponentRow};
use gfspx::resources::{render, ReportFormat, ReportRow};
use gfspx::resources::{report, CostModel, DepthMode, DepthModel, SwapMode};
use gfspx::synth::Component;
use gfspx::verify::{verify_component, DEFAULT_SEED};

/// GFSPX-64/128 cipher, reversible circuits and Grover cost estimates.
///
/// Hex values are MSB-first: the key is 32 hex digits, blocks are 16.
#[derive(Parser)]
#[command(name = "gfspx", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Encrypt one block.
    Encrypt(CryptArgs),
    /// Decrypt one block.
    Decrypt(CryptArgs),
    /// Build a component circuit, print its histogram and optionally export it.
    Synth(SynthArgs),
    /// Check a circuit against the classical cipher, or check a vector file.
    Verify(VerifyArgs),
    /// Resource table for one or more components.
    Report(ReportArgs),
    /// Grover oracle resources and attack-cost estimate.
    Grover(GroverArgs),
}

#[derive(Args)]
struct CryptArgs {
    /// 128-bit key, 32 hex digits, MSB first.
    key: String,
    /// 64-bit block, 16 hex digits, MSB first.
    block: String,
}

#[derive(Args)]
struct SeedArg {
    /// Seed for randomized suites and planted keys.
    #[arg(long, env = "GFSPX_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Args)]
struct SynthArgs {
    /// sbox, sbox-inv, pbox, pbox-inv, adder, f1, f1-inv, f2, f2-inv,
    /// keyupdate:<i>, round:<i>, gfspx, gfspx-inv, oracle:r=<2|3>
    component: String,
    /// Write the circuit in this format (json or qasm).
    #[arg(long, value_parser = ["json", "qasm"])]
    export: Option<String>,
    /// Output path for --export; stdout when absent.
    #[arg(long, short)]
    output: Option<PathBuf>,
    #[command(flatten)]
    seed: SeedArg,
}

#[derive(Args)]
struct VerifyArgs {
    /// Component to check; defaults to gfspx.
    component: Option<String>,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    /// Check a vector file (`key plaintext ciphertext` per line) instead.
    #[arg(long, conflicts_with = "component")]
    check: Option<PathBuf>,
    #[arg(long, default_value = "text")]
    format: ReportFormat,
    #[command(flatten)]
    seed: SeedArg,
}

#[derive(Args)]
struct ModelArgs {
    #[arg(long, default_value = "paper")]
    depth_mode: DepthMode,
    /// How SWAPs enter the headline cost: excluded or three-cnot.
    #[arg(long, default_value = "excluded")]
    swap_mode: SwapMode,
    #[arg(long, default_value = "text")]
    format: ReportFormat,
    /// Append published values and signed deviations.
    #[arg(long)]
    compare_paper: bool,
}

#[derive(Args)]
struct ReportArgs {
    /// Components to report; defaults to the full component table.
    components: Vec<String>,
    #[command(flatten)]
    model: ModelArgs,
    #[command(flatten)]
    seed: SeedArg,
}

#[derive(Args)]
struct GroverArgs {
    /// Number of known plaintext-ciphertext pairs.
    #[arg(long, default_value_t = 3)]
    r: usize,
    /// File of `plaintext ciphertext` lines (16 hex digits each); a random
    /// planted key is used when absent.
    #[arg(long)]
    pairs: Option<PathBuf>,
    /// Print the MAXDEPTH exponents.
    #[arg(long)]
    maxdepth: bool,
    #[command(flatten)]
    model: ModelArgs,
    #[command(flatten)]
    seed: SeedArg,
}

enum Failure {
    Usage(String),
    Verify(String),
}

type Outcome = Result<String, Failure>;

fn usage<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Usage(e.to_string())
}

fn parse_hex<T>(
    s: &str,
    digits: usize,
    what: &str,
    parse: fn(&str, u32) -> Result<T, std::num::ParseIntError>,
) -> Result<T, Failure> {
    let s = s.strip_prefix("0x").unwrap_or(s);
    if s.len() != digits || !s.bytes().all(|b| b.is_ascii_hexdigit()) {
        return Err(Failure::Usage(format!(
            "{what} must be {digits} hex digits, got {s:?}"
        )));
    }
    parse(s, 16).map_err(usage)
}

fn crypt(a: &CryptArgs, forward: bool) -> Outcome {
    let key = parse_hex(&a.key, 32, "key", u128::from_str_radix)?;
    let block = parse_hex(&a.block, 16, "block", u64::from_str_radix)?;
    let out = if forward {
        encrypt(block, key)
    } else {
        decrypt(block, key)
    };
    Ok(format!("{out:016x}\n"))
}

fn component_circuit(name: &str, seed: u64) -> Result<Circuit, Failure> {
    let comp: Component = name.parse().map_err(usage)?;
    match comp {
        Component::Oracle(r) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let key = rand::Rng::gen(&mut rng);
            let spec = OracleSpec::planted(r, key, &mut rng).map_err(usage)?;
            build_oracle(&spec).map_err(usage)
        }
        _ => comp.build().map_err(usage),
    }
}

fn synth(a: &SynthArgs) -> Outcome {
    let c = component_circuit(&a.component, a.seed.seed)?;
    let h = c.histogram();
    let mut out = format!("{}: qubits {} {h}\n", a.component, c.width());
    if let Some(fmt) = &a.export {
        let text = if fmt == "json" {
            to_json(&c)
        } else {
            to_qasm(&c)
        };
        match &a.output {
            Some(p) => {
                fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?
            }
            None => out.push_str(&text),
        }
    }
    Ok(out)
}

fn verify(a: &VerifyArgs) -> Outcome {
    let fmt = a.format;
    if let Some(path) = &a.check {
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        let vectors = parse_vectors(&text).map_err(usage)?;
        let bad: Vec<usize> = vectors
            .iter()
            .enumerate()
            .filter(|(_, v)| {
                encrypt(v.plaintext, v.key) != v.ciphertext
                    || decrypt(v.ciphertext, v.key) != v.plaintext
            })
            .map(|(i, _)| i)
            .collect();
        let doc = json!({
            "kind": "check",
            "file": path.display().to_string(),
            "cases": vectors.len(),
            "passed": vectors.len() - bad.len(),
            "failed": bad.len(),
            "failures": bad.iter().take(8).map(|i| format!("record {}", i + 1)).collect::<Vec<_>>(),
        });
        let text = match fmt {
            ReportFormat::Json => serde_json::to_string_pretty(&doc).expect("json") + "\n",
            ReportFormat::Csv => format!(
                "file,cases,passed,failed\n{},{},{},{}\n",
                path.display(),
                vectors.len(),
                vectors.len() - bad.len(),
                bad.len()
            ),
            ReportFormat::Text => format!(
                "{}: {} vectors, {} passed, {} failed\n",
                path.display(),
                vectors.len(),
                vectors.len() - bad.len(),
                bad.len()
            ),
        };
        return if bad.is_empty() {
            Ok(text)
        } else {
            Err(Failure::Verify(text))
        };
    }
    let name = a.component.as_deref().unwrap_or("gfspx");
    let comp: Component = name.parse().map_err(usage)?;
    let r = verify_component(comp, a.samples, a.seed.seed).map_err(usage)?;
    let text = match fmt {
        ReportFormat::Json => {
            let mut v = serde_json::to_value(&r).expect("json");
            v["kind"] = json!("verify");
            serde_json::to_string_pretty(&v).expect("json") + "\n"
        }
        ReportFormat::Csv => format!(
            "component,seed,cases,passed,failed\n{},{},{},{},{}\n",
            r.component, r.seed, r.cases, r.passed, r.failed
        ),
        ReportFormat::Text => {
            let mut s = format!(
                "{}: {} cases, {} passed, {} failed (seed {})\n",
                r.component, r.cases, r.passed, r.failed, r.seed
            );
            for f in &r.failures {
                let _ = writeln!(s, "  {f}");
            }
            s
        }
    };
    if r.ok() {
        Ok(text)
    } else {
        Err(Failure::Verify(text))
    }
}

fn models(m: &ModelArgs) -> (CostModel, DepthModel) {
    (
        CostModel {
            swap_mode: m.swap_mode,
            ..CostModel::default()
        },
        DepthModel::for_mode(m.depth_mode),
    )
}

fn report_cmd(a: &ReportArgs) -> Outcome {
    let (cost, depth) = models(&a.model);
    let names: Vec<String> = if a.components.is_empty() {
        Component::table_rows()
            .iter()
            .map(|c| c.to_string())
            .collect()
    } else {
        a.components.clone()
    };
    let mut rows = Vec::new();
    for name in &names {
        let c = component_circuit(name, a.seed.seed)?;
        let published: Option<ComponentRow> = if a.model.compare_paper {
            published().component(name)
        } else {
            None
        };
        rows.push(ReportRow {
            report: report(name, &c, &cost, &depth),
            published,
        });
    }
    Ok(render(&rows, &cost, &depth, a.model.format))
}

fn read_pairs(path: &PathBuf) -> Result<Vec<(u64, u64)>, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let mut pairs = Vec::new();
    for line in text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
    {
        let f: Vec<&str> = line.split_whitespace().collect();
        if f.len() != 2 {
            return Err(Failure::Usage(format!(
                "pairs line {line:?}: expected `plaintext ciphertext`"
            )));
        }
        pairs.push((
            parse_hex(f[0], 16, "plaintext", u64::from_str_radix)?,
            parse_hex(f[1], 16, "ciphertext", u64::from_str_radix)?,
        ));
    }
    Ok(pairs)
}

fn grover_text(e: &AttackEstimate, a: &GroverArgs, seed: Option<u64>) -> String {
    let o = &e.oracle;
    let h = &o.histogram;
    let mut s = String::new();
    let _ = writeln!(
        s,
        "Grover oracle, r = {}{}",
        e.r,
        seed.map(|v| format!(" (planted key, seed {v})"))
            .unwrap_or_default()
    );
    let _ = writeln!(
        s,
        "  qubits {}  NOT {}  CNOT {}  CCNOT {}  SWAP {}  MCX {}  TOTAL {}  COST {}  COST(SWAP) {}  DEPTH {}",
        o.qubits, h.not, h.cnot, h.ccnot, h.swap, h.mcx_total(), o.total_gates, o.cost_excl_swap, o.cost_incl_swap, o.depth
    );
    let sci = |x| render_scientific(x).to_string();
    let _ = writeln!(s, "attack estimate");
    let _ = writeln!(s, "  iterations         {}", sci(&e.iterations));
    let _ = writeln!(s, "  T-gates            {}", sci(&e.t_gates));
    let _ = writeln!(s, "  #GATES             {}", sci(&e.total_gates));
    let _ = writeln!(s, "  #GATES (SWAP=3)    {}", sci(&e.total_gates_swap));
    let _ = writeln!(s, "  full depth         {}", sci(&e.full_depth));
    let _ = writeln!(s, "  total cost         {}", sci(&e.total_cost));
    let _ = writeln!(s, "  total cost (SWAP)  {}", sci(&e.total_cost_swap));
    let _ = writeln!(
        s,
        "  pairs needed {} for k={KEY_BITS}, n={BLOCK_BITS}; expected spurious keys 2^{}",
        required_pairs(KEY_BITS as u64, BLOCK_BITS as u64),
        spurious_log2(KEY_BITS as i64, BLOCK_BITS as i64, e.r as i64)
    );
    let _ = writeln!(s, "formulas");
    for f in &e.formulas {
        let _ = writeln!(s, "  {f}");
    }
    let _ = writeln!(s, "depth: {}", a.model_depth().describe());
    if a.maxdepth {
        let _ = writeln!(s, "MAXDEPTH (log2 of cost / bound)");
        for (d, v) in MAXDEPTH_BOUNDS.iter().zip(e.maxdepth) {
            let _ = writeln!(s, "  2^{d}: 2^{v}");
        }
    }
    if a.model.compare_paper {
        let _ = writeln!(s, "published comparison (signed deviation)");
        for c in e.compare_with_published() {
            let _ = writeln!(
                s,
                "  {:<18} ours {:>14} published {:>14} {:+.2}%",
                c.quantity,
                num(c.ours),
                num(c.published),
                c.deviation_pct
            );
        }
        if a.maxdepth {
            if let Some(m) = published().maxdepth(e.r) {
                let _ = writeln!(
                    s,
                    "  MAXDEPTH published 2^{}/2^{}/2^{}",
                    m.d40, m.d64, m.d96
                );
            }
        }
        let _ = writeln!(s, "other ciphers (published, for context)");
        for o in &published().other_ciphers {
            let _ = writeln!(
                s,
                "  {:<17} r={} qubits {:>3} depth {:>5} total cost {:.2} x 2^{}",
                o.cipher, o.r, o.qubits, o.depth, o.total_cost.m, o.total_cost.e
            );
        }
    }
    s
}

fn num(x: f64) -> String {
    if x.abs() < 1e12 {
        format!("{x:.0}")
    } else {
        let e = x.log2().floor();
        format!("{:.2} x 2^{e}", x / e.exp2())
    }
}

impl GroverArgs {
    fn model_depth(&self) -> DepthModel {
        DepthModel::for_mode(self.model.depth_mode)
    }
}

fn grover(a: &GroverArgs) -> Outcome {
    let (spec, seed) = match &a.pairs {
        Some(p) => (OracleSpec::new(a.r, read_pairs(p)?).map_err(usage)?, None),
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(a.seed.seed);
            let key = rand::Rng::gen(&mut rng);
            (
                OracleSpec::planted(a.r, key, &mut rng).map_err(usage)?,
                Some(a.seed.seed),
            )
        }
    };
    let opts = EstimateOptions {
        depth_model: a.model_depth(),
        ..EstimateOptions::default()
    };
    let e = attack_estimate(&spec, &opts).map_err(usage)?;
    Ok(match a.model.format {
        ReportFormat::Text => grover_text(&e, a, seed),
        ReportFormat::Json => {
            let mut doc = json!({
                "kind": "grover",
                "seed": seed,
                "pairs": spec.pairs.iter().map(|(p, c)| json!([format!("{p:016x}"), format!("{c:016x}")])).collect::<Vec<_>>(),
                "depth_convention": a.model_depth().describe(),
                "estimate": e,
                "scientific": {
                    "iterations": render_scientific(&e.iterations),
                    "t_gates": render_scientific(&e.t_gates),
                    "total_gates": render_scientific(&e.total_gates),
                    "total_gates_swap": render_scientific(&e.total_gates_swap),
                    "full_depth": render_scientific(&e.full_depth),
                    "total_cost": render_scientific(&e.total_cost),
                    "total_cost_swap": render_scientific(&e.total_cost_swap),
                },
            });
            if a.model.compare_paper {
                doc["comparison"] = json!(e.compare_with_published());
                doc["other_ciphers"] = json!(published().other_ciphers);
            }
            serde_json::to_string_pretty(&doc).expect("json") + "\n"
        }
        ReportFormat::Csv => {
            let mut s = String::from("quantity,value,mantissa,exponent\n");
            for (q, v) in [
                ("iterations", &e.iterations),
                ("t_gates", &e.t_gates),
                ("total_gates", &e.total_gates),
                ("total_gates_swap", &e.total_gates_swap),
                ("full_depth", &e.full_depth),
                ("total_cost", &e.total_cost),
                ("total_cost_swap", &e.total_cost_swap),
            ] {
                let sc = render_scientific(v);
                let _ = writeln!(s, "{q},{v},{:.4},{}", sc.m, sc.e);
            }
            for (d, v) in MAXDEPTH_BOUNDS.iter().zip(e.maxdepth) {
                let _ = writeln!(s, "maxdepth_{d},{v},,");
            }
            s
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.cmd {
        Cmd::Encrypt(a) => crypt(a, true),
        Cmd::Decrypt(a) => crypt(a, false),
        Cmd::Synth(a) => synth(a),
        Cmd::Verify(a) => verify(a),
        Cmd::Report(a) => report_cmd(a),
        Cmd::Grover(a) => grover(a),
    };
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Verify(out)) => {
            print!("{out}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
