//! `X^2 - c^2 Y^2 = m` with a square radicand has finitely many solutions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

use super::{floor_sqrt, require_nonzero};
use crate::error::{domain, Result};

/// All `(X, Y)` with `X >= 0`, `Y >= 0` and `X^2 - c^2 Y^2 = m`, sorted by
/// `X`. Uses `m = (X - cY)(X + cY)`.
pub fn square_radicand_solutions(c: &BigInt, m: &BigInt) -> Result<Vec<(BigInt, BigInt)>> {
    require_nonzero(m)?;
    if !c.is_positive() {
        return domain(format!("root must be positive, got {c}"));
    }
    let abs_m = m.abs();
    let two_c = c * 2;
    let mut out = Vec::new();
    let mut e = BigInt::from(1);
    let top = floor_sqrt(&abs_m);
    while e <= top {
        if abs_m.is_multiple_of(&e) {
            let other = &abs_m / &e;
            // a = X - cY <= b = X + cY and a + b >= 0.
            let (a, b) = if m.is_positive() {
                (e.clone(), other)
            } else {
                (-e.clone(), other)
            };
            let sum = &a + &b;
            let diff = &b - &a;
            if sum.is_even() && diff.is_multiple_of(&two_c) {
                out.push((sum / 2, diff / &two_c));
            }
        }
        e += 1;
    }
    out.sort();
    out.dedup();
    Ok(out)
}
