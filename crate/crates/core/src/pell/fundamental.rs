//! Fundamental solutions of `X^2 - dY^2 = N`, one per equivalence class.
//!
//! Two solutions are equivalent when one is obtained from the other by
//! composing with a solution (including `(-1, 0)`) of `X^2 - dY^2 = 1`. The
//! fundamental solution of a class has the smallest non-negative `Y`; when
//! `(X, Y)` and `(-X, Y)` tie, the one with `X > 0` wins.
//!
//! The main path is the Lagrange-Matthews-Mollin reduction (a PQa run per
//! square root of `d` modulo `N / f^2`), whose cost does not depend on the
//! size of the fundamental unit. [`fundamental_solutions_by_scan`] walks the
//! classical bounded interval instead and is kept as an independent route.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::cf::{check_radicand, cf_sqrt, minimal_from_expansion, negative_from_expansion};
use super::{exact_sqrt, floor_sqrt, require_nonzero, PellSolution};
use crate::error::{domain, Result};

/// One representative per equivalence class, together with the resolvent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FundamentalSet {
    d: BigInt,
    n_rhs: BigInt,
    fundamentals: Vec<PellSolution>,
    resolvent: PellSolution,
}

impl FundamentalSet {
    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn n_rhs(&self) -> &BigInt {
        &self.n_rhs
    }

    /// Sorted by `(Y, X)`.
    pub fn fundamentals(&self) -> &[PellSolution] {
        &self.fundamentals
    }

    /// Minimal solution of `X^2 - dY^2 = 1`.
    pub fn resolvent(&self) -> &PellSolution {
        &self.resolvent
    }

    pub fn is_empty(&self) -> bool {
        self.fundamentals.is_empty()
    }
}

/// Whether two solutions of the same equation lie in the same class.
///
/// `(x' + y' sqrt d) / (x + y sqrt d)` must be integral, i.e. `N` divides
/// both `x x' - d y y'` and `x y' - x' y`.
pub fn same_class(a: &PellSolution, b: &PellSolution) -> bool {
    if a.d() != b.d() || a.n_rhs() != b.n_rhs() {
        return false;
    }
    let n = a.n_rhs();
    let d = a.d();
    let re = a.x() * b.x() - d * a.y() * b.y();
    let im = a.x() * b.y() - b.x() * a.y();
    re.is_multiple_of(n) && im.is_multiple_of(n)
}

/// Moves `sol` to the fundamental representative of its class.
pub(crate) fn canonical_representative(sol: &PellSolution, unit: &PellSolution) -> PellSolution {
    let mut cur = if sol.surd_is_positive() {
        sol.clone()
    } else {
        sol.neg()
    };
    // |y| is unimodal along the orbit, so greedy descent reaches the minimum.
    loop {
        let back = cur.compose_inverse(unit);
        if back.y().abs() < cur.y().abs() {
            cur = back;
            continue;
        }
        let fwd = cur.compose(unit);
        if fwd.y().abs() < cur.y().abs() {
            cur = fwd;
            continue;
        }
        break;
    }
    let min_y = cur.y().abs();
    let mut ties = vec![cur.clone()];
    for nb in [cur.compose_inverse(unit), cur.compose(unit)] {
        if nb.y().abs() == min_y {
            ties.push(nb);
        }
    }
    ties.into_iter()
        .map(|s| {
            if s.y().is_negative() || (s.y().is_zero() && s.x().is_negative()) {
                s.neg()
            } else {
                s
            }
        })
        .max_by(|a, b| a.x().cmp(b.x()))
        .expect("at least one candidate")
}

fn finalize(
    d: &BigInt,
    n_rhs: &BigInt,
    unit: PellSolution,
    candidates: impl IntoIterator<Item = PellSolution>,
) -> FundamentalSet {
    let mut fundamentals: Vec<PellSolution> = Vec::new();
    for c in candidates {
        let c = canonical_representative(&c, &unit);
        if !fundamentals.iter().any(|f| same_class(f, &c)) {
            fundamentals.push(c);
        }
    }
    fundamentals.sort_by(|a, b| (a.y(), a.x()).cmp(&(b.y(), b.x())));
    FundamentalSet {
        d: d.clone(),
        n_rhs: n_rhs.clone(),
        fundamentals,
        resolvent: unit,
    }
}

/// Fundamental solutions of `X^2 - dY^2 = n_rhs` for non-square `d >= 2`.
pub fn fundamental_solutions(d: &BigInt, n_rhs: &BigInt) -> Result<FundamentalSet> {
    require_nonzero(n_rhs)?;
    let cf = cf_sqrt(d)?;
    let unit = minimal_from_expansion(&cf);
    let negative_unit = negative_from_expansion(&cf);
    let root = cf.integer_part().clone();

    let abs_n = n_rhs.abs();
    let mut candidates = Vec::new();
    let mut f = BigInt::one();
    while &f * &f <= abs_n {
        let f2 = &f * &f;
        if n_rhs.is_multiple_of(&f2) {
            let m = n_rhs / &f2;
            for (r, s) in lmm_primitive(d, &root, &m, negative_unit.as_ref()) {
                candidates.push(PellSolution::checked(
                    &f * r,
                    &f * s,
                    d.clone(),
                    n_rhs.clone(),
                ));
            }
        }
        f += 1;
    }
    Ok(finalize(d, n_rhs, unit, candidates))
}

/// Primitive solutions of `X^2 - dY^2 = m`, at least one per class.
fn lmm_primitive(
    d: &BigInt,
    root: &BigInt,
    m: &BigInt,
    negative_unit: Option<&PellSolution>,
) -> Vec<(BigInt, BigInt)> {
    let abs_m = m.abs();
    let mut out = Vec::new();
    // z ranges over (-|m|/2, |m|/2] with z^2 = d (mod |m|).
    let d_mod = d.mod_floor(&abs_m);
    let lo = -((&abs_m - 1u32) / 2u32);
    let hi = &abs_m / 2u32;
    let mut z = lo;
    while z <= hi {
        if (&z * &z).mod_floor(&abs_m) == d_mod {
            if let Some((r, s)) = pqa_unit_step(d, root, &z, &abs_m) {
                let val = &r * &r - d * &s * &s;
                if &val == m {
                    out.push((r, s));
                } else if val == -m {
                    if let Some(neg) = negative_unit {
                        let (t, u) = (neg.x(), neg.y());
                        out.push((&r * t + &s * u * d, &r * u + &s * t));
                    }
                }
            }
        }
        z += 1;
    }
    out
}

// floor((p + sqrt d) / q) for irrational sqrt d with floor `root`.
fn surd_quotient(p: &BigInt, q: &BigInt, root: &BigInt) -> BigInt {
    let num: BigInt = p + root;
    if q.is_positive() {
        num.div_floor(q)
    } else {
        let floor: BigInt = num.div_floor(&-q);
        -(floor + 1u32)
    }
}

/// Runs PQa from `(P0, Q0) = (z, q0)` until the first `i >= 1` with
/// `Q_i = +-1`, returning `(G_{i-1}, B_{i-1})`. `None` if the expansion
/// cycles first.
fn pqa_unit_step(d: &BigInt, root: &BigInt, z: &BigInt, q0: &BigInt) -> Option<(BigInt, BigInt)> {
    let mut p = z.clone();
    let mut q = q0.clone();
    let (mut b_prev, mut b_cur) = (BigInt::one(), BigInt::zero());
    let (mut g_prev, mut g_cur) = (-z.clone(), q0.clone());
    let mut seen: HashSet<(BigInt, BigInt)> = HashSet::new();
    seen.insert((p.clone(), q.clone()));
    loop {
        let a = surd_quotient(&p, &q, root);
        let b_next = &a * &b_cur + &b_prev;
        let g_next = &a * &g_cur + &g_prev;
        b_prev = std::mem::replace(&mut b_cur, b_next);
        g_prev = std::mem::replace(&mut g_cur, g_next);
        let p_next = &a * &q - &p;
        let q_next = (d - &p_next * &p_next) / &q;
        p = p_next;
        q = q_next;
        if q.abs().is_one() {
            return Some((g_cur, b_cur));
        }
        if !seen.insert((p.clone(), q.clone())) {
            return None;
        }
    }
}

/// Upper end of the `Y` interval containing a fundamental solution of every
/// class: `sqrt(N (z-1) / 2d)` for `N > 0`, `sqrt(|N| (z+1) / 2d)` for
/// `N < 0`, where `(z, w)` is the resolvent.
pub fn fundamental_scan_bound(d: &BigInt, n_rhs: &BigInt, resolvent: &PellSolution) -> BigInt {
    let z = resolvent.x();
    let num = if n_rhs.is_positive() {
        n_rhs * (z - 1)
    } else {
        n_rhs.abs() * (z + 1)
    };
    floor_sqrt(&(num / (d * 2)))
}

/// Fundamental solutions by walking `Y = 0..=bound` and testing whether
/// `N + dY^2` is a square. Refuses to run when the bound exceeds `max_y`.
pub fn fundamental_solutions_by_scan(
    d: &BigInt,
    n_rhs: &BigInt,
    max_y: u64,
) -> Result<FundamentalSet> {
    require_nonzero(n_rhs)?;
    check_radicand(d)?;
    let cf = cf_sqrt(d)?;
    let unit = minimal_from_expansion(&cf);
    let bound = fundamental_scan_bound(d, n_rhs, &unit);
    if bound > BigInt::from(max_y) {
        return domain(format!(
            "scan bound {bound} for X^2 - {d}Y^2 = {n_rhs} exceeds limit {max_y}"
        ));
    }
    let mut found: Vec<PellSolution> = Vec::new();
    let mut y = BigInt::zero();
    while y <= bound {
        if let Some(x) = exact_sqrt(&(n_rhs + d * &y * &y)) {
            let mut options = vec![PellSolution::checked(x.clone(), y.clone(), d.clone(), n_rhs.clone())];
            if x.is_positive() {
                options.push(PellSolution::checked(-x, y.clone(), d.clone(), n_rhs.clone()));
            }
            for s in options {
                if !found.iter().any(|f| same_class(f, &s)) {
                    found.push(s);
                }
            }
        }
        y += 1;
    }
    found.sort_by(|a, b| (a.y(), a.x()).cmp(&(b.y(), b.x())));
    Ok(FundamentalSet {
        d: d.clone(),
        n_rhs: n_rhs.clone(),
        fundamentals: found,
        resolvent: unit,
    })
}
