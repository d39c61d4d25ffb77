//! Classification of `Aut(S^[n])` for a K3 surface of Picard rank one.
//!
//! Besides the shortcuts for `t = 1` and `2 <= t <= 2n-3`, the automorphism
//! group is `{id}` unless four arithmetic conditions hold, in which case it
//! is generated by a non-natural involution whose action on `NS` is computed
//! here together with its invariant class.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cones::{cone_data, ConeData, ConeDescription, FloppingWall, MovableWitness};
use crate::error::{contract, domain, Error, Result};
use crate::lattice::{bbf_pairing, bbf_square, divisibility, NSClass, Params};
use crate::pell::{is_perfect_square, two_coeff_any, TwoCoeffSolution};

/// Which equation of condition (iv) is solvable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Branch {
    /// `(n-1)X^2 - tY^2 = -1`; invariant class of square 2.
    #[serde(rename = "first")]
    FirstEquation,
    /// `X^2 - t(n-1)Y^2 = -1`; invariant class of square `2(n-1)`.
    #[serde(rename = "second")]
    SecondEquation,
    #[serde(rename = "none")]
    Neither,
}

/// A classification settled without evaluating the four conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Shortcut {
    #[serde(rename = "t_equals_1")]
    TEquals1,
    /// `2 <= t <= 2n - 3`: always trivial.
    #[serde(rename = "small_degree")]
    SmallDegree,
}

/// Whether full evaluation re-derives every invariant of the result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Fast,
    Verify,
}

/// One condition with the datum that decides it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Condition<W> {
    pub holds: bool,
    pub witness: Option<W>,
}

impl<W> Condition<W> {
    fn holds_unless(witness: Option<W>) -> Self {
        Self {
            holds: witness.is_none(),
            witness,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionReport {
    /// `t(n-1)` is not a square; the witness is its root.
    pub cond_i: Condition<BigInt>,
    /// `(n-1)X^2 - tY^2 = 1` has no solution; vacuous for `n = 2`.
    pub cond_ii: Condition<TwoCoeffSolution>,
    /// No flopping wall inside the movable cone.
    pub cond_iii: Condition<FloppingWall>,
    /// The solvable `-1` equation and its minimal positive solution `(a, b)`.
    pub cond_iv: Branch,
    pub iv_witness: Option<TwoCoeffSolution>,
}

impl ConditionReport {
    pub fn all_hold(&self) -> bool {
        self.cond_i.holds && self.cond_ii.holds && self.cond_iii.holds && self.cond_iv != Branch::Neither
    }
}

/// A 2x2 integer matrix acting on columns `(x, y)` of classes `x*h - y*delta`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matrix2(#[serde(with = "matrix_str")] pub [[BigInt; 2]; 2]);

impl Matrix2 {
    pub fn identity() -> Self {
        Self([[BigInt::one(), BigInt::zero()], [BigInt::zero(), BigInt::one()]])
    }

    pub fn apply(&self, c: &NSClass) -> NSClass {
        let m = &self.0;
        NSClass::new(&m[0][0] * &c.x + &m[0][1] * &c.y, &m[1][0] * &c.x + &m[1][1] * &c.y)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = (&self.0, &other.0);
        let e = |i: usize, j: usize| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
        Self([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    }

    pub fn det(&self) -> BigInt {
        let m = &self.0;
        &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]
    }
}

impl fmt::Display for Matrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = &self.0;
        write!(f, "[[{}, {}], [{}, {}]]", m[0][0], m[0][1], m[1][0], m[1][1])
    }
}

mod matrix_str {
    use num_bigint::BigInt;
    use serde::{de::Error as _, Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(m: &[[BigInt; 2]; 2], s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = m.iter().map(|r| r.iter().map(|v| v.to_string()).collect()).collect();
        rows.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<[[BigInt; 2]; 2], D::Error> {
        let rows = <[[String; 2]; 2]>::deserialize(d)?;
        let parse = |v: &String| v.parse::<BigInt>().map_err(|e| D::Error::custom(format!("{v:?}: {e}")));
        Ok([
            [parse(&rows[0][0])?, parse(&rows[0][1])?],
            [parse(&rows[1][0])?, parse(&rows[1][1])?],
        ])
    }
}

/// The action of the non-natural involution on `NS(S^[n])`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvolutionData {
    /// `[[z, -(n-1)w], [tw, -z]]`.
    pub matrix: Matrix2,
    /// Primitive generator of the invariant sublattice.
    pub nu: NSClass,
    pub nu_square: BigInt,
    pub nu_divisibility: BigInt,
    pub z: BigInt,
    pub w: BigInt,
    pub branch: Branch,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AutVariant {
    Trivial,
    NaturalInvolutionOnly,
    NonNaturalInvolution(Box<InvolutionData>),
}

impl AutVariant {
    pub fn involution(&self) -> Option<&InvolutionData> {
        match self {
            AutVariant::NonNaturalInvolution(d) => Some(d),
            _ => None,
        }
    }

    /// The label used in reports.
    pub fn label(&self) -> &'static str {
        match self {
            AutVariant::Trivial => "trivial",
            AutVariant::NaturalInvolutionOnly => "natural_involution",
            AutVariant::NonNaturalInvolution(_) => "non_natural_involution",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutResult {
    pub variant: AutVariant,
    pub shortcut: Option<Shortcut>,
}

/// Classification together with the data it was derived from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evaluation {
    pub params: Params,
    pub result: AutResult,
    /// Absent when a shortcut decided the result in fast mode, and for `t = 1`.
    pub conditions: Option<ConditionReport>,
    pub cones: ConeData,
}

pub fn classify(p: &Params) -> Result<AutResult> {
    Ok(evaluate(p, Mode::Fast)?.result)
}

pub fn classify_with(p: &Params, mode: Mode) -> Result<AutResult> {
    Ok(evaluate(p, mode)?.result)
}

/// Classifies `p`, keeping cones and conditions for reporting.
pub fn evaluate(p: &Params, mode: Mode) -> Result<Evaluation> {
    let cones = cone_data(p)?;
    if p.t() == 1 {
        return Ok(Evaluation {
            params: *p,
            result: AutResult {
                variant: AutVariant::NaturalInvolutionOnly,
                shortcut: Some(Shortcut::TEquals1),
            },
            conditions: None,
            cones,
        });
    }
    let in_range = p.t() <= 2 * p.n() - 3;
    if in_range && mode == Mode::Fast {
        return Ok(Evaluation {
            params: *p,
            result: AutResult {
                variant: AutVariant::Trivial,
                shortcut: Some(Shortcut::SmallDegree),
            },
            conditions: None,
            cones,
        });
    }
    let conditions = conditions_from(p, &cones)?;
    let variant = if conditions.all_hold() {
        let witness = conditions.iv_witness.as_ref().expect("branch has a witness");
        let data = build_involution(p, conditions.cond_iv, witness, &cones)?;
        if mode == Mode::Verify {
            verify_involution(p, &data, &cones)?;
        }
        AutVariant::NonNaturalInvolution(Box::new(data))
    } else {
        AutVariant::Trivial
    };
    if in_range {
        if variant != AutVariant::Trivial {
            return contract(format!("{p}: full evaluation finds an involution inside 2 <= t <= 2n-3"));
        }
        return Ok(Evaluation {
            params: *p,
            result: AutResult {
                variant,
                shortcut: Some(Shortcut::SmallDegree),
            },
            conditions: Some(conditions),
            cones,
        });
    }
    Ok(Evaluation {
        params: *p,
        result: AutResult {
            variant,
            shortcut: None,
        },
        conditions: Some(conditions),
        cones,
    })
}

/// Evaluates conditions (i)-(iv) for `t >= 2`.
pub fn check_conditions(p: &Params) -> Result<ConditionReport> {
    let cones = cone_data(p)?;
    conditions_from(p, &cones)
}

fn conditions_from(p: &Params, cones: &ConeData) -> Result<ConditionReport> {
    if p.t() < 2 {
        return domain(format!("conditions are stated for t >= 2, got {p}"));
    }
    let one = BigInt::one();
    let minus_one = -BigInt::one();
    let nm1 = p.nm1();
    let t = p.t_big();

    let cond_i = Condition::holds_unless(is_perfect_square(&p.t_nm1())?);
    let cond_ii = if p.n() == 2 {
        Condition::holds_unless(None)
    } else {
        Condition::holds_unless(two_coeff_any(&nm1, &t, &one)?)
    };
    let cond_iii = Condition::holds_unless(cones.walls.first().cloned());

    let first = two_coeff_any(&nm1, &t, &minus_one)?;
    let second = if p.n() == 2 {
        None
    } else {
        two_coeff_any(&one, &p.t_nm1(), &minus_one)?
    };
    let (cond_iv, iv_witness) = match (first, second) {
        (Some(_), Some(_)) => {
            return contract(format!("{p}: both -1 equations of condition (iv) are solvable"));
        }
        (Some(a), None) => (Branch::FirstEquation, Some(a)),
        (None, Some(b)) => (Branch::SecondEquation, Some(b)),
        (None, None) => (Branch::Neither, None),
    };
    Ok(ConditionReport {
        cond_i,
        cond_ii,
        cond_iii,
        cond_iv,
        iv_witness,
    })
}

/// `(z, w)` forced by a condition-(iv) witness `(a, b)`.
fn unit_from_witness(p: &Params, branch: Branch, a: &BigInt, b: &BigInt) -> Result<(BigInt, BigInt)> {
    let w = a * b * 2u32;
    match branch {
        Branch::FirstEquation => Ok((p.nm1() * a * a * 2u32 + 1u32, w)),
        Branch::SecondEquation => Ok((a * a * 2u32 + 1u32, w)),
        Branch::Neither => domain("no invariant class without a condition (iv) branch"),
    }
}

/// The invariant class built from a condition-(iv) witness `(a, b)`, with
/// its square and divisibility.
pub fn invariant_generator(
    p: &Params,
    branch: Branch,
    witness: &TwoCoeffSolution,
) -> Result<(NSClass, BigInt, BigInt)> {
    let (a, b) = (witness.x(), witness.y());
    let minus_one = -BigInt::one();
    let (nu, square, div) = match branch {
        Branch::FirstEquation => {
            if witness.s() != &p.nm1() || witness.q() != &p.t_big() || witness.n_rhs() != &minus_one {
                return domain("witness does not solve (n-1)X^2 - tY^2 = -1");
            }
            (NSClass::new(b.clone(), a.clone()), BigInt::from(2), None)
        }
        Branch::SecondEquation => {
            let normalized = witness.s().is_one() && witness.q() == &p.t_nm1();
            if !normalized || witness.n_rhs() != &minus_one {
                return domain("witness does not solve X^2 - t(n-1)Y^2 = -1");
            }
            (NSClass::new(p.nm1() * b, a.clone()), p.two_nm1(), Some(p.nm1()))
        }
        Branch::Neither => return domain("no invariant class without a condition (iv) branch"),
    };
    if !a.is_positive() || !b.is_positive() {
        return contract(format!("witness ({a}, {b}) is not positive"));
    }
    if !nu.is_primitive() {
        return contract(format!("invariant class {nu} is not primitive"));
    }
    if bbf_square(&nu, p) != square {
        return contract(format!("invariant class {nu} has square {} not {square}", bbf_square(&nu, p)));
    }
    let divi = divisibility(&nu, p)?;
    if let Some(expected) = div {
        if divi != expected {
            return contract(format!("invariant class {nu} has divisibility {divi} not {expected}"));
        }
    }
    let (z, w) = unit_from_witness(p, branch, a, b)?;
    if !is_ample(p, &nu, &z, &w) {
        return contract(format!("invariant class {nu} is not ample"));
    }
    Ok((nu, square, divi))
}

// x*h - y*delta is ample iff y > 0 and z*y < t*w*x.
fn is_ample(p: &Params, c: &NSClass, z: &BigInt, w: &BigInt) -> bool {
    c.y.is_positive() && z * &c.y < p.t_big() * w * &c.x
}

/// `-1` when `z = 1 (mod 2(n-1))`, `+1` when `z = -1 (mod 2(n-1))`; for
/// `n = 2` both hold and the answer is `-1`.
pub fn discriminant_action(z: &BigInt, p: &Params) -> Result<i8> {
    let m = p.two_nm1();
    let r = z.mod_floor(&m);
    if r == BigInt::one().mod_floor(&m) {
        Ok(-1)
    } else if r == (-BigInt::one()).mod_floor(&m) {
        Ok(1)
    } else {
        contract(format!("{z} is not +-1 modulo {m}"))
    }
}

/// Whether `x^2 = -1 (mod m)` is solvable.
pub fn minus_one_qr(m: u64) -> bool {
    assert!(m >= 1, "modulus must be positive");
    (0..m).any(|x| (x as u128 * x as u128 + 1) % m as u128 == 0)
}

fn build_involution(
    p: &Params,
    branch: Branch,
    witness: &TwoCoeffSolution,
    cones: &ConeData,
) -> Result<InvolutionData> {
    let (nu, nu_square, nu_divisibility) = invariant_generator(p, branch, witness)?;
    let (z, w) = unit_from_witness(p, branch, witness.x(), witness.y())?;
    let t = p.t_big();
    let nm1 = p.nm1();
    let matrix = Matrix2([[z.clone(), -(&nm1 * &w)], [&t * &w, -z.clone()]]);
    if matrix.apply(&nu) != nu {
        return contract(format!("{p}: matrix {matrix} does not fix {nu}"));
    }
    // The movable cone must come from the same unit.
    let expected_ray = NSClass::new(z.clone(), &t * &w).primitive();
    if cones.movable.cone.ray_high() != &expected_ray {
        return contract(format!(
            "{p}: movable ray {} differs from ({z}, tw) = {expected_ray}",
            cones.movable.cone.ray_high()
        ));
    }
    if let MovableWitness::CongruentPell(unit) = &cones.movable.witness {
        if unit.x() != &z || unit.y() != &w {
            return contract(format!("{p}: movable unit ({}, {}) differs from ({z}, {w})", unit.x(), unit.y()));
        }
    }
    Ok(InvolutionData {
        matrix,
        nu,
        nu_square,
        nu_divisibility,
        z,
        w,
        branch,
    })
}

/// Re-derives every invariant of an involution; the first failure is
/// reported as a contract violation.
pub fn verify_involution(p: &Params, d: &InvolutionData, cones: &ConeData) -> Result<()> {
    let fail = |what: &str| -> Result<()> { contract(format!("{p}: {what}")) };
    let (z, w) = (&d.z, &d.w);
    let (t, nm1, m2) = (p.t_big(), p.nm1(), p.two_nm1());
    let m = &d.matrix;

    if z * z - p.t_nm1() * w * w != BigInt::one() {
        return fail("(z, w) does not solve X^2 - t(n-1)Y^2 = 1");
    }
    if m.mul(m) != Matrix2::identity() {
        return fail("matrix is not an involution");
    }
    if m.det() != -BigInt::one() {
        return fail("determinant is not -1");
    }
    let basis = [NSClass::new(1, 0), NSClass::new(0, 1)];
    for a in &basis {
        for b in &basis {
            if bbf_pairing(&m.apply(a), &m.apply(b), p) != bbf_pairing(a, b, p) {
                return fail("matrix is not an isometry");
            }
        }
    }
    if m.apply(&d.nu) != d.nu {
        return fail("matrix does not fix nu");
    }
    let mu = NSClass::new(&nm1 * &d.nu.y, &t * &d.nu.x);
    if !bbf_pairing(&mu, &d.nu, p).is_zero() {
        return fail("complement class is not orthogonal to nu");
    }
    let minus_mu = NSClass::new(-&mu.x, -&mu.y);
    if m.apply(&mu) != minus_mu {
        return fail("matrix is not -1 on the complement of nu");
    }
    if !w.is_even() || !w.is_positive() {
        return fail("w is not positive and even");
    }
    let sign = discriminant_action(z, p)?;
    if (sign == -1) != (d.nu_square == BigInt::from(2)) {
        return fail("discriminant action and invariant square disagree");
    }
    if p.n() >= 3 {
        let r = z.mod_floor(&m2);
        let want = match d.branch {
            Branch::FirstEquation => BigInt::one(),
            Branch::SecondEquation => (-BigInt::one()).mod_floor(&m2),
            Branch::Neither => return fail("involution without a branch"),
        };
        if r != want {
            return fail("z has the wrong residue for its branch");
        }
    }
    // Shape [[A, (n-1)beta], [-t beta, -A]] with A > 0 and beta < 0 even.
    let beta = -w.clone();
    let (a_ent, b_ent, c_ent, d_ent) = (&m.0[0][0], &m.0[0][1], &m.0[1][0], &m.0[1][1]);
    if !a_ent.is_positive()
        || *b_ent != &nm1 * &beta
        || *c_ent != -(&t * &beta)
        || *d_ent != -a_ent.clone()
        || !beta.is_negative()
        || !beta.is_even()
        || a_ent * a_ent - p.t_nm1() * &beta * &beta != BigInt::one()
    {
        return fail("matrix does not have the involution shape");
    }
    let mov = &cones.movable.cone;
    if mov.ray_high() != &NSClass::new(z.clone(), &t * w).primitive() {
        return fail("movable ray is not (z, tw)");
    }
    if cones.nef != *mov || !cones.walls.is_empty() {
        return fail("nef cone differs from the movable cone");
    }
    if !cones.nef.contains_strictly(&d.nu) {
        return fail("nu is not ample");
    }
    let sample = NSClass::new(p.n() + 2, 1);
    if !cones.nef.contains_strictly(&sample) || !cones.nef.contains_strictly(&m.apply(&sample)) {
        return fail("sample ample class is not mapped into the ample cone");
    }
    Ok(())
}

/// Outcome of classifying `t = (n-1)k^2 + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyCheck {
    pub n: u64,
    pub k: u64,
    pub t: u64,
    pub result: AutResult,
    /// `k >= (n+3)/2`, where a square-2 involution is guaranteed.
    pub expected: bool,
    /// Present when `expected`: the result has square 2 and
    /// `(z, w) = (2k^2(n-1)+1, 2k)`.
    pub passed: Option<bool>,
}

pub fn family_check(n: u64, k: u64, mode: Mode) -> Result<FamilyCheck> {
    if k < 1 {
        return domain("k must be at least 1");
    }
    let t = (n - 1)
        .checked_mul(k * k)
        .and_then(|v| v.checked_add(1))
        .ok_or_else(|| Error::Domain(format!("t overflows for n={n}, k={k}")))?;
    let p = Params::new(n, t)?;
    let result = classify_with(&p, mode)?;
    let expected = 2 * k >= n + 3;
    let passed = expected.then(|| match result.variant.involution() {
        Some(d) => {
            let z = BigInt::from(2 * k * k) * p.nm1() + 1u32;
            let w = BigInt::from(2 * k);
            d.nu_square == BigInt::from(2) && d.z == z && d.w == w
        }
        None => false,
    });
    Ok(FamilyCheck {
        n,
        k,
        t,
        result,
        expected,
        passed,
    })
}

/// Convenience accessor for the movable and nef cones of an evaluation.
impl Evaluation {
    pub fn mov(&self) -> &ConeDescription {
        &self.cones.movable.cone
    }

    pub fn nef(&self) -> &ConeDescription {
        &self.cones.nef
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64, t: u64) -> Params {
        Params::new(n, t).unwrap()
    }

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn classify_examples() {
        let r = classify(&p(3, 2)).unwrap();
        assert_eq!(r.variant, AutVariant::Trivial);
        assert_eq!(r.shortcut, Some(Shortcut::SmallDegree));

        let r = classify(&p(4, 1)).unwrap();
        assert_eq!(r.variant, AutVariant::NaturalInvolutionOnly);
        assert_eq!(r.shortcut, Some(Shortcut::TEquals1));

        let r = classify_with(&p(3, 19), Mode::Verify).unwrap();
        let d = r.variant.involution().expect("involution");
        assert_eq!(d.matrix, Matrix2([[big(37), big(-12)], [big(114), big(-37)]]));
        assert_eq!(d.nu, NSClass::new(1, 3));
        assert_eq!(d.nu_square, big(2));
        assert_eq!(r.shortcut, None);
    }

    #[test]
    fn condition_examples() {
        let c = check_conditions(&p(3, 13)).unwrap();
        assert!(c.cond_i.holds && c.cond_ii.holds && c.cond_iii.holds);
        assert_eq!(c.cond_iv, Branch::SecondEquation);
        let w = c.iv_witness.unwrap();
        assert_eq!((w.x(), w.y()), (&big(5), &big(1)));

        let c = check_conditions(&p(5, 4)).unwrap();
        assert!(!c.cond_i.holds);
        assert_eq!(c.cond_i.witness, Some(big(4)));

        let c = check_conditions(&p(3, 7)).unwrap();
        assert!(!c.cond_ii.holds);
        let w = c.cond_ii.witness.unwrap();
        assert_eq!((w.x(), w.y()), (&big(2), &big(1)));

        assert!(check_conditions(&p(3, 1)).is_err());
    }

    #[test]
    fn generator_examples() {
        let w = TwoCoeffSolution::new(big(3), big(1), big(2), big(19), big(-1)).unwrap();
        let (nu, sq, div) = invariant_generator(&p(3, 19), Branch::FirstEquation, &w).unwrap();
        assert_eq!((nu, sq, div), (NSClass::new(1, 3), big(2), big(1)));

        let w = TwoCoeffSolution::new(big(5), big(1), big(1), big(26), big(-1)).unwrap();
        let (nu, sq, div) = invariant_generator(&p(3, 13), Branch::SecondEquation, &w).unwrap();
        assert_eq!((nu, sq, div), (NSClass::new(2, 5), big(4), big(2)));

        let w = TwoCoeffSolution::new(big(1), big(1), big(1), big(2), big(-1)).unwrap();
        let (nu, sq, _) = invariant_generator(&p(2, 2), Branch::FirstEquation, &w).unwrap();
        assert_eq!((nu, sq), (NSClass::new(1, 1), big(2)));

        assert!(invariant_generator(&p(3, 19), Branch::Neither, &w).is_err());
        // Right branch, wrong equation.
        assert!(invariant_generator(&p(3, 13), Branch::FirstEquation, &w).is_err());
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(discriminant_action(&big(37), &p(3, 19)).unwrap(), -1);
        assert_eq!(discriminant_action(&big(51), &p(3, 13)).unwrap(), 1);
        assert_eq!(discriminant_action(&big(1), &p(2, 2)).unwrap(), -1);
        assert!(matches!(discriminant_action(&big(3), &p(4, 2)), Err(Error::ContractViolation(_))));
    }

    #[test]
    fn minus_one_qr_examples() {
        assert!(minus_one_qr(1));
        assert!(minus_one_qr(2));
        assert!(minus_one_qr(10));
        assert!(!minus_one_qr(3));
        assert!(minus_one_qr(5) && minus_one_qr(13) && !minus_one_qr(4) && !minus_one_qr(7));
    }

    #[test]
    fn family_examples() {
        let f = family_check(3, 3, Mode::Verify).unwrap();
        assert_eq!(f.t, 19);
        assert_eq!(f.passed, Some(true));
        let f = family_check(6, 5, Mode::Verify).unwrap();
        assert_eq!(f.t, 126);
        assert_eq!(f.passed, Some(true));
        let f = family_check(2, 1, Mode::Fast).unwrap();
        assert_eq!(f.t, 2);
        assert!(!f.expected);
        assert!(f.result.variant.involution().is_some());
    }

    #[test]
    fn matrix_json() {
        let m = Matrix2([[big(37), big(-12)], [big(114), big(-37)]]);
        let js = serde_json::to_string(&m).unwrap();
        assert_eq!(js, r#"[["37","-12"],["114","-37"]]"#);
        assert_eq!(serde_json::from_str::<Matrix2>(&js).unwrap(), m);
    }
}
