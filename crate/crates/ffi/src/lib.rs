//! C ABI over the gfspx toolkit.
//!
//! Every function returns a [`GfspxStatus`]; on anything but `GFSPX_OK` a
//! message is available from [`gfspx_last_error`] on the same thread.
//! Circuits are opaque handles released with [`gfspx_circuit_free`].
//! 128-bit keys cross the boundary as `(hi, lo)` 64-bit halves.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gfspx::circuit::{to_json, to_qasm, Circuit};
use gfspx::grover::{build_oracle, OracleSpec};
use gfspx::resources::{depth, DepthModel};
use gfspx::sim::{simulate, BasisState};
use gfspx::synth::Component;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GfspxStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    UnknownComponent = 3,
    Simulation = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GfspxDepthMode {
    Paper = 0,
    Uniform1 = 1,
    Uniform7 = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GfspxFormat {
    Json = 0,
    Qasm = 1,
}

/// Gate counts; `mcx` sums multi-controlled gates of every arity.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GfspxHistogram {
    pub not_gates: u64,
    pub cnot: u64,
    pub ccnot: u64,
    pub swap: u64,
    pub mcx: u64,
}

/// Opaque circuit handle.
pub struct GfspxCircuit {
    inner: Circuit,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

type Result<T> = std::result::Result<T, (GfspxStatus, String)>;

fn guard(f: impl FnOnce() -> Result<()>) -> GfspxStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => GfspxStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal panic: {msg}"));
            GfspxStatus::Panic
        }
    }
}

fn null(what: &str) -> (GfspxStatus, String) {
    (GfspxStatus::NullPointer, format!("{what} is null"))
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn handle<'a>(c: *const GfspxCircuit) -> Result<&'a Circuit> {
    c.as_ref().map(|c| &c.inner).ok_or_else(|| null("circuit"))
}

fn key(hi: u64, lo: u64) -> u128 {
    (hi as u128) << 64 | lo as u128
}

/// Message for the last failed call on this thread, or NULL. The pointer
/// stays valid until the next gfspx call on the same thread.
#[no_mangle]
pub extern "C" fn gfspx_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version, static storage.
#[no_mangle]
pub extern "C" fn gfspx_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `ciphertext` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gfspx_encrypt(
    plaintext: u64,
    key_hi: u64,
    key_lo: u64,
    ciphertext: *mut u64,
) -> GfspxStatus {
    guard(|| {
        *out(ciphertext, "ciphertext")? = gfspx::cipher::encrypt(plaintext, key(key_hi, key_lo));
        Ok(())
    })
}

/// # Safety
/// `plaintext` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gfspx_decrypt(
    ciphertext: u64,
    key_hi: u64,
    key_lo: u64,
    plaintext: *mut u64,
) -> GfspxStatus {
    guard(|| {
        *out(plaintext, "plaintext")? = gfspx::cipher::decrypt(ciphertext, key(key_hi, key_lo));
        Ok(())
    })
}

fn boxed(c: Circuit) -> *mut GfspxCircuit {
    Box::into_raw(Box::new(GfspxCircuit { inner: c }))
}

/// Builds a named component ("sbox", "f2-inv", "round:3", "gfspx", ...).
/// Oracles need pairs; use [`gfspx_oracle_build`].
///
/// # Safety
/// `name` must be a NUL-terminated string; `circuit` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gfspx_circuit_build(
    name: *const c_char,
    circuit: *mut *mut GfspxCircuit,
) -> GfspxStatus {
    guard(|| {
        let slot = out(circuit, "circuit")?;
        *slot = ptr::null_mut();
        if name.is_null() {
            return Err(null("name"));
        }
        let name = CStr::from_ptr(name)
            .to_str()
            .map_err(|e| (GfspxStatus::InvalidArgument, e.to_string()))?;
        let comp: Component = name.parse().map_err(|e: gfspx::synth::SynthError| {
            (GfspxStatus::UnknownComponent, e.to_string())
        })?;
        let c = comp
            .build()
            .map_err(|e| (GfspxStatus::UnknownComponent, e.to_string()))?;
        *slot = boxed(c);
        Ok(())
    })
}

/// Grover oracle over `r` known pairs (`r` is 2 or 3).
///
/// # Safety
/// `plaintexts` and `ciphertexts` must each hold `r` values; `circuit`
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gfspx_oracle_build(
    r: usize,
    plaintexts: *const u64,
    ciphertexts: *const u64,
    circuit: *mut *mut GfspxCircuit,
) -> GfspxStatus {
    guard(|| {
        let slot = out(circuit, "circuit")?;
        *slot = ptr::null_mut();
        if plaintexts.is_null() || ciphertexts.is_null() {
            return Err(null("pair array"));
        }
        if !(2..=3).contains(&r) {
            return Err((
                GfspxStatus::InvalidArgument,
                format!("r must be 2 or 3, got {r}"),
            ));
        }
        let p = std::slice::from_raw_parts(plaintexts, r);
        let c = std::slice::from_raw_parts(ciphertexts, r);
        let spec = OracleSpec::new(r, p.iter().copied().zip(c.iter().copied()).collect())
            .map_err(|e| (GfspxStatus::InvalidArgument, e.to_string()))?;
        let oracle =
            build_oracle(&spec).map_err(|e| (GfspxStatus::InvalidArgument, e.to_string()))?;
        *slot = boxed(oracle);
        Ok(())
    })
}

/// Releases a handle. NULL is ignored.
///
/// # Safety
/// `circuit` must come from a gfspx builder and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn gfspx_circuit_free(circuit: *mut GfspxCircuit) {
    if !circuit.is_null() {
        drop(Box::from_raw(circuit));
    }
}

/// # Safety
/// `circuit` must be a live handle; `width` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gfspx_circuit_width(
    circuit: *const GfspxCircuit,
    width: *mut usize,
) -> GfspxStatus {
    guard(|| {
        *out(width, "width")? = handle(circuit)?.width();
        Ok(())
    })
}

/// # Safety
/// `circuit` must be a live handle; `histogram` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gfspx_circuit_histogram(
    circuit: *const GfspxCircuit,
    histogram: *mut GfspxHistogram,
) -> GfspxStatus {
    guard(|| {
        let h = handle(circuit)?.histogram();
        *out(histogram, "histogram")? = GfspxHistogram {
            not_gates: h.not,
            cnot: h.cnot,
            ccnot: h.ccnot,
            swap: h.swap,
            mcx: h.mcx_total(),
        };
        Ok(())
    })
}

/// ASAP depth under the chosen weighting.
///
/// # Safety
/// `circuit` must be a live handle; `depth_out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gfspx_circuit_depth(
    circuit: *const GfspxCircuit,
    mode: GfspxDepthMode,
    depth_out: *mut u64,
) -> GfspxStatus {
    guard(|| {
        let model = match mode {
            GfspxDepthMode::Paper => DepthModel::paper(),
            GfspxDepthMode::Uniform1 => DepthModel::uniform1(),
            GfspxDepthMode::Uniform7 => DepthModel::uniform7(),
        };
        *out(depth_out, "depth")? = depth(handle(circuit)?, &model);
        Ok(())
    })
}

/// Runs one basis state through the circuit. Both buffers hold one byte per
/// qubit (0 or nonzero), qubit 0 first; `len` must equal the width.
///
/// # Safety
/// `input` and `output` must be valid for `len` bytes and may alias.
#[no_mangle]
pub unsafe extern "C" fn gfspx_circuit_simulate(
    circuit: *const GfspxCircuit,
    input: *const u8,
    output: *mut u8,
    len: usize,
) -> GfspxStatus {
    guard(|| {
        let c = handle(circuit)?;
        if input.is_null() || output.is_null() {
            return Err(null("state buffer"));
        }
        if len != c.width() {
            return Err((
                GfspxStatus::InvalidArgument,
                format!("buffer holds {len} qubits, circuit has {}", c.width()),
            ));
        }
        let mut s = BasisState::zeros(len);
        for (q, &b) in std::slice::from_raw_parts(input, len).iter().enumerate() {
            s.set(q, b != 0);
        }
        let r = simulate(c, &s).map_err(|e| (GfspxStatus::Simulation, e.to_string()))?;
        let dst = std::slice::from_raw_parts_mut(output, len);
        for (q, b) in dst.iter_mut().enumerate() {
            *b = r.get(q) as u8;
        }
        Ok(())
    })
}

/// Serializes the circuit. The string is owned by the caller and must be
/// released with [`gfspx_string_free`].
///
/// # Safety
/// `circuit` must be a live handle; `text` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gfspx_circuit_export(
    circuit: *const GfspxCircuit,
    format: GfspxFormat,
    text: *mut *mut c_char,
) -> GfspxStatus {
    guard(|| {
        let slot = out(text, "text")?;
        *slot = ptr::null_mut();
        let c = handle(circuit)?;
        let s = match format {
            GfspxFormat::Json => to_json(c),
            GfspxFormat::Qasm => to_qasm(c),
        };
        *slot = CString::new(s).expect("exports contain no NUL").into_raw();
        Ok(())
    })
}

/// # Safety
/// `text` must come from [`gfspx_circuit_export`]; NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn gfspx_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(CString::from_raw(text));
    }
}
