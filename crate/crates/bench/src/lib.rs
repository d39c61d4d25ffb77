//! Fixed workloads shared by the criterion benches.

use hilbaut_core::Params;

/// Radicands with long continued-fraction periods or huge minimal solutions.
pub const PELL_RADICANDS: &[u64] = &[61, 181, 661, 1_000_099, 9_999_991];

/// `(d, N)` pairs with several solution classes.
pub const GENERALIZED: &[(u64, i64)] = &[(7, 9), (152, 9), (61, -3), (1_009, -15), (4_097, 8_191)];

/// Instances covering each classification outcome and every movable-cone case.
pub fn instances() -> Vec<Params> {
    [(3, 1), (3, 13), (3, 19), (4, 19), (5, 37), (6, 34), (7, 200), (11, 1_001)]
        .into_iter()
        .map(|(n, t)| Params::new(n, t).expect("valid instance"))
        .collect()
}
