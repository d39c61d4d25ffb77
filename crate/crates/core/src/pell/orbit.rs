//! Walking the positive solutions of each class, with and without a
//! congruence filter on `X`.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::cf::check_radicand;
use super::fundamental::{fundamental_solutions, FundamentalSet};
use super::square::square_radicand_solutions;
use super::{exact_sqrt, require_nonzero, PellSolution, TwoCoeffSolution};
use crate::error::{domain, Error, Result};

/// Overrides the per-class iteration cap of [`congruent_search`].
pub const ORBIT_CAP_ENV: &str = "HILBAUT_MAX_ORBIT_ITERS";

fn env_cap() -> Option<u64> {
    static CAP: OnceLock<Option<u64>> = OnceLock::new();
    *CAP.get_or_init(|| std::env::var(ORBIT_CAP_ENV).ok()?.trim().parse().ok())
}

/// First positive solution (`x > 0`, `y > 0`) in the class of `f`.
///
/// Along `g * u^k` with `g` the positive-surd member, positivity is monotone
/// in `k`, so the walk terminates.
fn first_positive(f: &PellSolution, unit: &PellSolution) -> PellSolution {
    let mut cur = if f.surd_is_positive() { f.clone() } else { f.neg() };
    if cur.is_positive() {
        loop {
            let back = cur.compose_inverse(unit);
            if !back.is_positive() {
                return cur;
            }
            cur = back;
        }
    }
    while !cur.is_positive() {
        cur = cur.compose(unit);
    }
    cur
}

struct ByXY(PellSolution, usize);

impl PartialEq for ByXY {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for ByXY {}

impl PartialOrd for ByXY {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ByXY {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.0.x(), self.0.y()).cmp(&(other.0.x(), other.0.y()))
    }
}

/// The first `limit` positive solutions over all classes, by increasing `X`.
pub fn generate_solutions(set: &FundamentalSet, limit: usize) -> Vec<PellSolution> {
    let unit = set.resolvent();
    let mut heap: BinaryHeap<Reverse<ByXY>> = set
        .fundamentals()
        .iter()
        .enumerate()
        .map(|(i, f)| Reverse(ByXY(first_positive(f, unit), i)))
        .collect();
    let mut out = Vec::with_capacity(limit);
    while out.len() < limit {
        let Some(Reverse(ByXY(sol, i))) = heap.pop() else {
            break;
        };
        heap.push(Reverse(ByXY(sol.compose(unit), i)));
        out.push(sol);
    }
    out
}

/// Result of a congruence-filtered search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceOutcome {
    /// Minimal positive solution with `X = +-c (mod M)` among the classes
    /// whose orbit was fully explored.
    pub solution: Option<PellSolution>,
    /// Some class hit the iteration cap before its orbit closed.
    pub cap_hit: bool,
}

/// Searches each class for the first positive solution with
/// `X = +-residue (mod modulus)`.
///
/// Residues `(X mod M, Y mod M)` evolve by an invertible linear map, so each
/// class orbit is purely periodic and a full period is at most `M^2` steps.
/// `cap` (or [`ORBIT_CAP_ENV`]) lowers that bound.
pub fn congruent_search(
    d: &BigInt,
    n_rhs: &BigInt,
    modulus: &BigInt,
    residue: &BigInt,
    cap: Option<u64>,
) -> Result<CongruenceOutcome> {
    require_nonzero(n_rhs)?;
    if !modulus.is_positive() {
        return domain(format!("modulus must be positive, got {modulus}"));
    }
    if residue.is_negative() || residue >= modulus {
        return domain(format!("residue {residue} outside [0, {modulus})"));
    }
    let set = fundamental_solutions(d, n_rhs)?;
    let unit = set.resolvent();
    let m = modulus;
    let neg_res = (-residue).mod_floor(m);
    let full_period = (m * m).to_u64().unwrap_or(u64::MAX);
    let cap = cap.or_else(env_cap).unwrap_or(full_period);

    let (uz, uw) = (unit.x().mod_floor(m), unit.y().mod_floor(m));
    let dm = d.mod_floor(m);
    let step = |x: &BigInt, y: &BigInt| {
        (
            (&uz * x + &dm * &uw * y).mod_floor(m),
            (&uw * x + &uz * y).mod_floor(m),
        )
    };

    let mut best: Option<PellSolution> = None;
    let mut cap_hit = false;
    for f in set.fundamentals() {
        let start = first_positive(f, unit);
        let origin = (start.x().mod_floor(m), start.y().mod_floor(m));
        let mut state = origin.clone();
        let mut found = None;
        let mut closed = false;
        for k in 0..cap {
            if state.0 == *residue || state.0 == neg_res {
                found = Some(k);
                break;
            }
            state = step(&state.0, &state.1);
            if state == origin {
                closed = true;
                break;
            }
        }
        match found {
            Some(k) => {
                let mut sol = start;
                for _ in 0..k {
                    sol = sol.compose(unit);
                }
                if best.as_ref().map_or(true, |b| sol.x() < b.x()) {
                    best = Some(sol);
                }
            }
            None if !closed => cap_hit = true,
            None => {}
        }
    }
    Ok(CongruenceOutcome {
        solution: best,
        cap_hit,
    })
}

/// The positive solution of `X^2 - dY^2 = n_rhs` with minimal `X` among
/// those with `X = +-residue (mod modulus)`. Absent when no class yields one
/// within the iteration cap.
pub fn minimal_congruent_solution(
    d: &BigInt,
    n_rhs: &BigInt,
    modulus: &BigInt,
    residue: &BigInt,
) -> Result<Option<PellSolution>> {
    let out = congruent_search(d, n_rhs, modulus, residue, None)?;
    if out.cap_hit {
        return Ok(None);
    }
    Ok(out.solution)
}

fn check_two_coeff(s: &BigInt, q: &BigInt, n_rhs: &BigInt) -> Result<()> {
    require_nonzero(n_rhs)?;
    if !s.is_positive() || !q.is_positive() {
        return domain(format!("coefficients must be positive, got s={s}, q={q}"));
    }
    Ok(())
}

/// Minimal positive solution of `sX^2 - qY^2 = n_rhs` for non-square `sq`,
/// via `U = sX` in `U^2 - (sq)Y^2 = s*n_rhs`.
///
/// Returns [`Error::OrbitCapExceeded`] when the congruence search could not
/// certify minimality.
pub fn solve_two_coeff(s: &BigInt, q: &BigInt, n_rhs: &BigInt) -> Result<Option<TwoCoeffSolution>> {
    check_two_coeff(s, q, n_rhs)?;
    let d = s * q;
    check_radicand(&d)?;
    let out = congruent_search(&d, &(s * n_rhs), s, &BigInt::zero(), None)?;
    if out.cap_hit {
        return Err(Error::OrbitCapExceeded {
            modulus: s.to_u64().unwrap_or(u64::MAX),
            cap: env_cap().unwrap_or_else(|| (s * s).to_u64().unwrap_or(u64::MAX)),
        });
    }
    Ok(out.solution.map(|sol| {
        TwoCoeffSolution::checked(
            sol.x() / s,
            sol.y().clone(),
            s.clone(),
            q.clone(),
            n_rhs.clone(),
        )
    }))
}

/// Like [`solve_two_coeff`], but also handles square `sq` (finitely many
/// solutions, found by factoring).
pub(crate) fn two_coeff_any(s: &BigInt, q: &BigInt, n_rhs: &BigInt) -> Result<Option<TwoCoeffSolution>> {
    check_two_coeff(s, q, n_rhs)?;
    let d = s * q;
    let Some(c) = exact_sqrt(&d) else {
        return solve_two_coeff(s, q, n_rhs);
    };
    let best = square_radicand_solutions(&c, &(s * n_rhs))?
        .into_iter()
        .filter(|(u, y)| u.is_positive() && y.is_positive() && u.is_multiple_of(s))
        .min_by(|a, b| a.0.cmp(&b.0));
    Ok(best.map(|(u, y)| {
        TwoCoeffSolution::checked(&u / s, y, s.clone(), q.clone(), n_rhs.clone())
    }))
}
