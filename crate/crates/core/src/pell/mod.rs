//! Exact solvers for Pell and generalized Pell equations.
//!
//! Everything here works over unbounded integers: fundamental units of
//! `X^2 - dY^2 = 1` grow exponentially in `sqrt(d)`, so any fixed-width
//! shortcut would eventually corrupt results.

mod arith;
mod cf;
mod fundamental;
mod orbit;
mod square;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use arith::{is_perfect_square, isqrt};
pub use cf::{cf_sqrt, pell_minimal, pell_minimal_negative, Convergents, SurdExpansion};
pub use fundamental::{
    fundamental_scan_bound, fundamental_solutions, fundamental_solutions_by_scan, same_class,
    FundamentalSet,
};
pub use orbit::{
    congruent_search, generate_solutions, minimal_congruent_solution, solve_two_coeff,
    CongruenceOutcome, ORBIT_CAP_ENV,
};
pub use square::square_radicand_solutions;

pub(crate) use arith::{ceil_sqrt, exact_sqrt, floor_sqrt, scan_square_values};
pub(crate) use orbit::two_coeff_any;

/// A solution `(x, y)` of `x^2 - d*y^2 = n_rhs`.
///
/// Values can only be built through checked constructors, so the equation
/// always holds.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSolution", into = "RawSolution")]
pub struct PellSolution {
    x: BigInt,
    y: BigInt,
    d: BigInt,
    n_rhs: BigInt,
}

impl PellSolution {
    pub fn new(x: BigInt, y: BigInt, d: BigInt, n_rhs: BigInt) -> Result<Self> {
        if &x * &x - &d * &y * &y != n_rhs {
            return Err(Error::Domain(format!(
                "({x}, {y}) does not solve X^2 - {d}Y^2 = {n_rhs}"
            )));
        }
        Ok(Self { x, y, d, n_rhs })
    }

    /// Internal constructor for values produced by the solvers themselves.
    pub(crate) fn checked(x: BigInt, y: BigInt, d: BigInt, n_rhs: BigInt) -> Self {
        assert!(
            &x * &x - &d * &y * &y == n_rhs,
            "solver produced ({x}, {y}) which does not solve X^2 - {d}Y^2 = {n_rhs}"
        );
        Self { x, y, d, n_rhs }
    }

    pub fn x(&self) -> &BigInt {
        &self.x
    }

    pub fn y(&self) -> &BigInt {
        &self.y
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn n_rhs(&self) -> &BigInt {
        &self.n_rhs
    }

    pub fn is_positive(&self) -> bool {
        self.x.is_positive() && self.y.is_positive()
    }

    pub fn neg(&self) -> Self {
        Self {
            x: -&self.x,
            y: -&self.y,
            d: self.d.clone(),
            n_rhs: self.n_rhs.clone(),
        }
    }

    /// Composition with a unit `(z, w)` of `X^2 - dY^2 = 1`:
    /// `(zx + dwy, wx + zy)`.
    pub fn compose(&self, unit: &PellSolution) -> Self {
        debug_assert_eq!(unit.d, self.d);
        debug_assert!(unit.n_rhs == BigInt::from(1));
        let (z, w) = (&unit.x, &unit.y);
        Self::checked(
            z * &self.x + &self.d * w * &self.y,
            w * &self.x + z * &self.y,
            self.d.clone(),
            self.n_rhs.clone(),
        )
    }

    /// Composition with the inverse unit `(z, -w)`.
    pub fn compose_inverse(&self, unit: &PellSolution) -> Self {
        let (z, w) = (&unit.x, &unit.y);
        Self::checked(
            z * &self.x - &self.d * w * &self.y,
            z * &self.y - w * &self.x,
            self.d.clone(),
            self.n_rhs.clone(),
        )
    }

    /// Sign of `x + y*sqrt(d)`, decided exactly. Only meaningful for
    /// `n_rhs != 0`, where the quantity is never zero.
    pub(crate) fn surd_is_positive(&self) -> bool {
        let (xs, ys) = (self.x.sign(), self.y.sign());
        use num_bigint::Sign::*;
        match (xs, ys) {
            (Plus | NoSign, Plus | NoSign) => true,
            (Minus | NoSign, Minus | NoSign) => false,
            // Opposite signs: |x| vs |y|sqrt(d) is decided by the sign of N.
            _ => {
                if self.n_rhs.is_positive() {
                    xs == Plus
                } else {
                    ys == Plus
                }
            }
        }
    }
}

/// A solution of `s*x^2 - q*y^2 = n_rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawTwoCoeff", into = "RawTwoCoeff")]
pub struct TwoCoeffSolution {
    x: BigInt,
    y: BigInt,
    s: BigInt,
    q: BigInt,
    n_rhs: BigInt,
}

impl TwoCoeffSolution {
    pub fn new(x: BigInt, y: BigInt, s: BigInt, q: BigInt, n_rhs: BigInt) -> Result<Self> {
        if &s * &x * &x - &q * &y * &y != n_rhs {
            return Err(Error::Domain(format!(
                "({x}, {y}) does not solve {s}X^2 - {q}Y^2 = {n_rhs}"
            )));
        }
        Ok(Self { x, y, s, q, n_rhs })
    }

    pub(crate) fn checked(x: BigInt, y: BigInt, s: BigInt, q: BigInt, n_rhs: BigInt) -> Self {
        assert!(
            &s * &x * &x - &q * &y * &y == n_rhs,
            "solver produced ({x}, {y}) which does not solve {s}X^2 - {q}Y^2 = {n_rhs}"
        );
        Self { x, y, s, q, n_rhs }
    }

    pub fn x(&self) -> &BigInt {
        &self.x
    }

    pub fn y(&self) -> &BigInt {
        &self.y
    }

    pub fn s(&self) -> &BigInt {
        &self.s
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn n_rhs(&self) -> &BigInt {
        &self.n_rhs
    }
}

impl From<PellSolution> for TwoCoeffSolution {
    fn from(p: PellSolution) -> Self {
        Self {
            x: p.x,
            y: p.y,
            s: BigInt::from(1),
            q: p.d,
            n_rhs: p.n_rhs,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct RawSolution {
    #[serde(with = "crate::bigstr")]
    x: BigInt,
    #[serde(with = "crate::bigstr")]
    y: BigInt,
    #[serde(with = "crate::bigstr")]
    d: BigInt,
    #[serde(rename = "n", with = "crate::bigstr")]
    n_rhs: BigInt,
}

impl TryFrom<RawSolution> for PellSolution {
    type Error = Error;

    fn try_from(r: RawSolution) -> Result<Self> {
        PellSolution::new(r.x, r.y, r.d, r.n_rhs)
    }
}

impl From<PellSolution> for RawSolution {
    fn from(p: PellSolution) -> Self {
        RawSolution {
            x: p.x,
            y: p.y,
            d: p.d,
            n_rhs: p.n_rhs,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct RawTwoCoeff {
    #[serde(with = "crate::bigstr")]
    x: BigInt,
    #[serde(with = "crate::bigstr")]
    y: BigInt,
    #[serde(with = "crate::bigstr")]
    s: BigInt,
    #[serde(with = "crate::bigstr")]
    q: BigInt,
    #[serde(rename = "n", with = "crate::bigstr")]
    n_rhs: BigInt,
}

impl TryFrom<RawTwoCoeff> for TwoCoeffSolution {
    type Error = Error;

    fn try_from(r: RawTwoCoeff) -> Result<Self> {
        TwoCoeffSolution::new(r.x, r.y, r.s, r.q, r.n_rhs)
    }
}

impl From<TwoCoeffSolution> for RawTwoCoeff {
    fn from(p: TwoCoeffSolution) -> Self {
        RawTwoCoeff {
            x: p.x,
            y: p.y,
            s: p.s,
            q: p.q,
            n_rhs: p.n_rhs,
        }
    }
}

pub(crate) fn require_nonzero(n_rhs: &BigInt) -> Result<()> {
    if n_rhs.is_zero() {
        return Err(Error::Domain("right-hand side must be non-zero".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn construction_checks_equation() {
        assert!(PellSolution::new(big(3), big(2), big(2), big(1)).is_ok());
        assert!(PellSolution::new(big(3), big(1), big(2), big(1)).is_err());
        assert!(TwoCoeffSolution::new(big(3), big(1), big(2), big(19), big(-1)).is_ok());
        assert!(TwoCoeffSolution::new(big(3), big(2), big(2), big(19), big(-1)).is_err());
    }

    #[test]
    fn surd_sign() {
        let s = |x: i64, y: i64, d: i64| PellSolution::checked(big(x), big(y), big(d), big(x * x - d * y * y));
        assert!(s(3, 2, 2).surd_is_positive());
        assert!(!s(-3, -2, 2).surd_is_positive());
        assert!(s(3, -2, 2).surd_is_positive()); // N = 1 > 0, x > 0
        assert!(!s(-3, 2, 2).surd_is_positive());
        assert!(s(-1, 1, 2).surd_is_positive()); // N = -1 < 0, y > 0
        assert!(!s(1, -1, 2).surd_is_positive());
    }

    #[test]
    fn json_roundtrip_and_validation() {
        let s = PellSolution::new(big(111), big(9), big(152), big(9)).unwrap();
        let js = serde_json::to_string(&s).unwrap();
        assert_eq!(js, r#"{"x":"111","y":"9","d":"152","n":"9"}"#);
        let back: PellSolution = serde_json::from_str(&js).unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<PellSolution>(r#"{"x":"112","y":"9","d":"152","n":"9"}"#).is_err());
    }
}
