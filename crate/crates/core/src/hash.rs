use alloc::string::String;
use core::fmt::Write;

use sha2::{Digest, Sha256};

/// Hex digest over a sequence of string parts.
///
/// Parts are length-prefixed so that `["ab", "c"]` and `["a", "bc"]` hash
/// differently. Only the first `bytes` bytes of the SHA-256 output are kept.
pub(crate) fn digest_hex(parts: &[&str], bytes: usize) -> String {
    let mut hasher = Sha256::new();
    for part in parts {
        hasher.update((part.len() as u64).to_be_bytes());
        hasher.update(part.as_bytes());
    }
    let out = hasher.finalize();
    let mut hex = String::with_capacity(bytes * 2);
    for byte in out.iter().take(bytes) {
        let _ = write!(hex, "{byte:02x}");
    }
    hex
}
