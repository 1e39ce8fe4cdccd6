//! Library backing the `cherednik` command-line tool: configuration
//! resolution, JSON/CSV/table rendering, the pinned verification table of
//! character claims, and the orthogonal-series conjecture runner.
//!
//! All randomness flows from one base seed through [`derived_seed`], so
//! every output is byte-identical across runs with the same arguments.

pub mod claims;
pub mod commands;
pub mod config;
pub mod conjecture;
pub mod output;

/// Version tag carried by every JSON document.
pub const SCHEMA: &str = "cherednik-lab/1";

/// SplitMix64 finalizer; decorrelates nearby seed inputs.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// FNV-1a hash of a label.
pub fn fnv1a(s: &str) -> u64 {
    let mut h = 0xcbf2_9ce4_8422_2325u64;
    for b in s.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01B3);
    }
    h
}

/// Per-task seed: independent streams for each labeled task under one
/// base seed, stable across runs and thread schedules.
pub fn derived_seed(base: u64, label: &str) -> u64 {
    splitmix64(base ^ fnv1a(label))
}
