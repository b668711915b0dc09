//! Test-vector files: one `key plaintext ciphertext` record per line,
//! lowercase hex of 32, 16 and 16 digits, LF-terminated.

use std::fmt::Write as _;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TestVector {
    pub key: u128,
    pub plaintext: u64,
    pub ciphertext: u64,
}

impl TestVector {
    pub fn from_key_plaintext(key: u128, plaintext: u64) -> Self {
        Self {
            key,
            plaintext,
            ciphertext: super::encrypt(plaintext, key),
        }
    }
}

fn hex_field<T>(
    field: &str,
    digits: usize,
    line: usize,
    parse: fn(&str, u32) -> Result<T, std::num::ParseIntError>,
) -> Result<T, String> {
    if field.len() != digits
        || !field
            .bytes()
            .all(|b| b.is_ascii_digit() || (b'a'..=b'f').contains(&b))
    {
        return Err(format!(
            "line {line}: expected {digits} lowercase hex digits, got {field:?}"
        ));
    }
    parse(field, 16).map_err(|e| format!("line {line}: {e}"))
}

/// Blank lines and lines starting with `#` are skipped.
pub fn parse_vectors(text: &str) -> Result<Vec<TestVector>, String> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(' ').collect();
        if fields.len() != 3 {
            return Err(format!(
                "line {}: expected 3 fields, got {}",
                i + 1,
                fields.len()
            ));
        }
        out.push(TestVector {
            key: hex_field(fields[0], 32, i + 1, u128::from_str_radix)?,
            plaintext: hex_field(fields[1], 16, i + 1, u64::from_str_radix)?,
            ciphertext: hex_field(fields[2], 16, i + 1, u64::from_str_radix)?,
        });
    }
    Ok(out)
}

pub fn write_vectors(vectors: &[TestVector]) -> String {
    let mut s = String::with_capacity(vectors.len() * 67);
    for v in vectors {
        let _ = writeln!(
            s,
            "{:032x} {:016x} {:016x}",
            v.key, v.plaintext, v.ciphertext
        );
    }
    s
}
