//! The rank-2 Néron-Severi lattice of `S^[n]` in the basis `{h, -delta}`,
//! its Beauville-Bogomolov-Fujiki form, and the dictionary between Mukai
//! vectors and solutions of the wall equation.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{contract, domain, Result};
use crate::pell::PellSolution;

/// A K3 surface of degree `2t` and the number of points `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Params {
    n: u64,
    t: u64,
}

impl Params {
    pub fn new(n: u64, t: u64) -> Result<Self> {
        if n < 2 {
            return domain(format!("n must be at least 2, got {n}"));
        }
        if t < 1 {
            return domain(format!("t must be at least 1, got {t}"));
        }
        Ok(Self { n, t })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn n_big(&self) -> BigInt {
        BigInt::from(self.n)
    }

    pub fn t_big(&self) -> BigInt {
        BigInt::from(self.t)
    }

    /// `n - 1`, so that `delta^2 = -2(n-1)`.
    pub fn nm1(&self) -> BigInt {
        BigInt::from(self.n - 1)
    }

    /// `2(n-1)`, the modulus of every congruence condition on walls.
    pub fn two_nm1(&self) -> BigInt {
        BigInt::from(2 * (self.n - 1))
    }

    /// `t(n-1)`, the radicand of the movable-cone Pell equation.
    pub fn t_nm1(&self) -> BigInt {
        self.t_big() * self.nm1()
    }

    /// Radicand `4t(n-1)` of the wall equation.
    pub fn wall_radicand(&self) -> BigInt {
        self.t_nm1() * 4u32
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}, t={}", self.n, self.t)
    }
}

/// The class `x*h - y*delta`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "RawClass", into = "RawClass")]
pub struct NSClass {
    pub x: BigInt,
    pub y: BigInt,
}

impl NSClass {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>) -> Self {
        Self {
            x: x.into(),
            y: y.into(),
        }
    }

    pub fn h() -> Self {
        Self::new(1, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn is_primitive(&self) -> bool {
        self.x.gcd(&self.y).is_one()
    }

    /// Divides out `gcd(x, y)`; the zero class is returned unchanged.
    pub fn primitive(&self) -> Self {
        let g = self.x.gcd(&self.y);
        if g.is_zero() {
            return self.clone();
        }
        Self {
            x: &self.x / &g,
            y: &self.y / &g,
        }
    }

    /// Compares `y/x` of two classes with `x > 0` by cross-multiplication.
    pub fn cmp_slope(&self, other: &Self) -> Ordering {
        debug_assert!(self.x.is_positive() && other.x.is_positive());
        (&self.y * &other.x).cmp(&(&other.y * &self.x))
    }

    /// Whether the slope lies strictly between `low` and `high`.
    pub fn strictly_between(&self, low: &Self, high: &Self) -> bool {
        self.cmp_slope(low) == Ordering::Greater && self.cmp_slope(high) == Ordering::Less
    }
}

impl fmt::Display for NSClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}h - {}delta", self.x, self.y)
    }
}

#[derive(Serialize, Deserialize)]
struct RawClass {
    #[serde(with = "crate::bigstr")]
    h: BigInt,
    #[serde(with = "crate::bigstr")]
    delta: BigInt,
}

impl From<RawClass> for NSClass {
    fn from(r: RawClass) -> Self {
        Self { x: r.h, y: -r.delta }
    }
}

impl From<NSClass> for RawClass {
    fn from(c: NSClass) -> Self {
        Self { h: c.x, delta: -c.y }
    }
}

/// `(r, d_h H, s)` in the algebraic Mukai lattice of `S`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MukaiVector {
    #[serde(with = "crate::bigstr")]
    pub r: BigInt,
    #[serde(rename = "dH", with = "crate::bigstr")]
    pub d_h: BigInt,
    #[serde(with = "crate::bigstr")]
    pub s: BigInt,
}

impl MukaiVector {
    pub fn new(r: impl Into<BigInt>, d_h: impl Into<BigInt>, s: impl Into<BigInt>) -> Self {
        Self {
            r: r.into(),
            d_h: d_h.into(),
            s: s.into(),
        }
    }

    /// `2t d_h^2 - 2rs`.
    pub fn square(&self, p: &Params) -> BigInt {
        p.t_big() * &self.d_h * &self.d_h * 2u32 - &self.r * &self.s * 2u32
    }

    /// Pairing with `v = (1, 0, 1 - n)`: `-s - r(1 - n)`.
    pub fn pairing_with_v(&self, p: &Params) -> BigInt {
        &self.r * p.nm1() - &self.s
    }
}

/// `2t x^2 - 2(n-1) y^2`.
pub fn bbf_square(c: &NSClass, p: &Params) -> BigInt {
    bbf_pairing(c, c, p)
}

/// The bilinear form `2t x x' - 2(n-1) y y'`.
pub fn bbf_pairing(a: &NSClass, b: &NSClass, p: &Params) -> BigInt {
    (p.t_big() * &a.x * &b.x - p.nm1() * &a.y * &b.y) * 2u32
}

/// Divisibility of `x*h - y*delta` in `H^2(S^[n], Z)`: `gcd(x, 2(n-1)y)`.
pub fn divisibility(c: &NSClass, p: &Params) -> Result<BigInt> {
    if c.is_zero() {
        return domain("divisibility of the zero class");
    }
    Ok(c.x.gcd(&(p.two_nm1() * &c.y)))
}

/// Mukai vectors `a` with `a^2 = 2 rho` and `(v, a) = alpha` attached to a
/// solution of `X^2 - 4t(n-1)Y^2 = alpha^2 - 4 rho (n-1)` with `X >= 0`.
pub fn mukai_from_pell(
    p: &Params,
    rho: &BigInt,
    alpha: &BigInt,
    sol: &PellSolution,
) -> Result<Vec<MukaiVector>> {
    let rhs = alpha * alpha - rho * p.nm1() * 4u32;
    if sol.d() != &p.wall_radicand() || sol.n_rhs() != &rhs {
        return domain(format!(
            "({}, {}) does not solve X^2 - {}Y^2 = {rhs}",
            sol.x(),
            sol.y(),
            p.wall_radicand()
        ));
    }
    if sol.x().is_negative() {
        return domain("mukai_from_pell needs X >= 0");
    }
    let (x, y) = (sol.x(), sol.y());
    let m = p.two_nm1();
    let mut out = Vec::new();
    let plus = x + alpha;
    let minus = x - alpha;
    if plus.is_multiple_of(&m) {
        out.push(MukaiVector::new(&plus / &m, -y, &minus / 2u32));
    }
    if minus.is_multiple_of(&m) {
        out.push(MukaiVector::new(-(&minus / &m), y.clone(), -(&plus / 2u32)));
    }
    let two_rho = rho * 2u32;
    for a in &out {
        if a.square(p) != two_rho || &a.pairing_with_v(p) != alpha {
            return contract(format!(
                "Mukai vector ({}, {}, {}) misses a^2 = {two_rho} or (v,a) = {alpha}",
                a.r, a.d_h, a.s
            ));
        }
    }
    Ok(out)
}

/// The primitive class on the ray through `X h - 2tY delta`.
///
/// `Y = 0` is accepted and yields `h`, the Hilbert-Chow boundary ray.
pub fn wall_ray_from_solution(sol: &PellSolution, p: &Params) -> Result<NSClass> {
    if !sol.x().is_positive() || sol.y().is_negative() {
        return domain(format!(
            "wall ray needs X > 0 and Y >= 0, got ({}, {})",
            sol.x(),
            sol.y()
        ));
    }
    Ok(NSClass::new(sol.x().clone(), p.t_big() * sol.y() * 2u32).primitive())
}
