//! Exact integer square roots.

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, Signed, Zero};

use crate::error::{domain, Result};

/// `floor(sqrt(m))` for `m >= 0`.
pub fn isqrt(m: &BigInt) -> Result<BigInt> {
    if m.is_negative() {
        return domain(format!("square root of negative integer {m}"));
    }
    Ok(floor_sqrt(m))
}

// Newton estimate, then nudged so that r^2 <= m < (r+1)^2 holds exactly.
pub(crate) fn floor_sqrt(m: &BigInt) -> BigInt {
    debug_assert!(!m.is_negative());
    if m.is_zero() {
        return BigInt::zero();
    }
    let mut r = m.sqrt();
    while &r * &r > *m {
        r -= 1;
    }
    loop {
        let next = &r + 1;
        if &next * &next <= *m {
            r = next;
        } else {
            break;
        }
    }
    r
}

/// `ceil(sqrt(m))` for `m >= 0`.
pub(crate) fn ceil_sqrt(m: &BigInt) -> BigInt {
    let r = floor_sqrt(m);
    if &r * &r == *m {
        r
    } else {
        r + BigInt::one()
    }
}

/// Returns the exact root when `m` is a perfect square.
pub fn is_perfect_square(m: &BigInt) -> Result<Option<BigInt>> {
    if m.is_negative() {
        return domain(format!("perfect-square test on negative integer {m}"));
    }
    Ok(exact_sqrt(m))
}

pub(crate) fn exact_sqrt(m: &BigInt) -> Option<BigInt> {
    if m.is_negative() {
        return None;
    }
    // Squares mod 16 lie in {0, 1, 4, 9}.
    let low = m.iter_u32_digits().next().unwrap_or(0) & 15;
    if !matches!(low, 0 | 1 | 4 | 9) {
        return None;
    }
    let r = floor_sqrt(m);
    (&r * &r == *m).then_some(r)
}

/// Exact square root for `u128`, used by the fast scanning paths.
pub(crate) fn exact_sqrt_u128(v: u128) -> Option<u128> {
    if !matches!(v & 15, 0 | 1 | 4 | 9) {
        return None;
    }
    let r = if v < 1 << 100 {
        // The float estimate is within a few units; correct it exactly.
        let mut r = (v as f64).sqrt() as u128;
        while r * r > v {
            r -= 1;
        }
        while (r + 1) * (r + 1) <= v {
            r += 1;
        }
        r
    } else {
        v.sqrt()
    };
    (r * r == v).then_some(r)
}

const SIEVE_MODULI: [u64; 7] = [64, 63, 65, 11, 17, 19, 23];
// 64 * 63 * 65: the first three moduli are cycled through a precomputed wheel.
const WHEEL: u64 = 262_080;

struct QrFilter {
    m: u64,
    a: u64,
    b: u64,
    squares: Vec<bool>,
}

impl QrFilter {
    fn new(m: u64, a: u128, b: u128) -> Self {
        let mut squares = vec![false; m as usize];
        for r in 0..m {
            squares[(r * r % m) as usize] = true;
        }
        Self {
            m,
            a: (a % m as u128) as u64,
            b: (b % m as u128) as u64,
            squares,
        }
    }

    fn admits(&self, y: u64) -> bool {
        let r = y % self.m;
        self.squares[((self.a * r % self.m * r + self.b) % self.m) as usize]
    }
}

/// Visits, in ascending order, every `y` in `lo..=hi` for which `a*y^2 + b`
/// is a perfect square, passing `(y, root)`. The visitor returns `true` to
/// stop early. Returns `None` when `a*hi^2 + b` overflows `u128`, otherwise
/// whether the visitor stopped the scan.
pub(crate) fn scan_square_values(
    a: u128,
    b: u128,
    lo: u64,
    hi: u64,
    mut visit: impl FnMut(u64, u128) -> bool,
) -> Option<bool> {
    let hi128 = hi as u128;
    a.checked_mul(hi128.checked_mul(hi128)?)?.checked_add(b)?;
    if lo > hi {
        return Some(false);
    }
    let filters: Vec<QrFilter> = SIEVE_MODULI.iter().map(|&m| QrFilter::new(m, a, b)).collect();
    let mut test = |y: u64, from: usize| -> bool {
        if !filters[from..].iter().all(|f| f.admits(y)) {
            return false;
        }
        let y = y as u128;
        match exact_sqrt_u128(a * y * y + b) {
            Some(root) => visit(y as u64, root),
            None => false,
        }
    };
    if hi - lo < 4 * WHEEL {
        return Some((lo..=hi).any(|y| test(y, 0)));
    }
    let spokes: Vec<u64> = (0..WHEEL)
        .filter(|&r| filters[..3].iter().all(|f| f.admits(r)))
        .collect();
    let mut base = lo - lo % WHEEL;
    while base <= hi {
        for &r in &spokes {
            let y = base + r;
            if y < lo {
                continue;
            }
            if y > hi {
                return Some(false);
            }
            if test(y, 3) {
                return Some(true);
            }
        }
        base += WHEEL;
    }
    Some(false)
}
