//! The movable cone, flopping walls and nef cone of `S^[n]`, all described
//! in the slope coordinate `y/x` of classes `x*h - y*delta`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{wall_ray_from_solution, NSClass, Params};
use crate::pell::{
    congruent_search, exact_sqrt, is_perfect_square, scan_square_values, solve_two_coeff,
    square_radicand_solutions, PellSolution, TwoCoeffSolution,
};

/// Which of the three descriptions of the movable cone applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseTag {
    /// `t(n-1)` is a perfect square.
    #[serde(rename = "square")]
    SquareCase,
    /// `(n-1)X^2 - tY^2 = 1` is solvable.
    #[serde(rename = "two_coeff")]
    TwoCoeffCase,
    /// Neither; the ray comes from `X^2 - t(n-1)Y^2 = 1`.
    #[serde(rename = "congruent_pell")]
    CongruentPellCase,
}

/// A two-dimensional cone `<ray_low, ray_high>` with `ray_low = h`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawCone", into = "RawCone")]
pub struct ConeDescription {
    ray_low: NSClass,
    ray_high: NSClass,
    case_tag: CaseTag,
}

impl ConeDescription {
    fn new(ray_high: NSClass, case_tag: CaseTag) -> Self {
        Self {
            ray_low: NSClass::h(),
            ray_high: ray_high.primitive(),
            case_tag,
        }
    }

    pub fn ray_low(&self) -> &NSClass {
        &self.ray_low
    }

    pub fn ray_high(&self) -> &NSClass {
        &self.ray_high
    }

    pub fn case_tag(&self) -> CaseTag {
        self.case_tag
    }

    /// Whether `c` lies strictly inside the cone.
    pub fn contains_strictly(&self, c: &NSClass) -> bool {
        c.x.is_positive() && c.strictly_between(&self.ray_low, &self.ray_high)
    }
}

#[derive(Serialize, Deserialize)]
struct RawCone {
    case: CaseTag,
    rays: [NSClass; 2],
}

impl TryFrom<RawCone> for ConeDescription {
    type Error = Error;

    fn try_from(r: RawCone) -> Result<Self> {
        let [low, high] = r.rays;
        if low != NSClass::h() || !high.x.is_positive() || !high.y.is_positive() {
            return Err(Error::Domain(format!("not a cone <h, ray> with positive ray: {low}, {high}")));
        }
        Ok(Self {
            ray_low: low,
            ray_high: high,
            case_tag: r.case,
        })
    }
}

impl From<ConeDescription> for RawCone {
    fn from(c: ConeDescription) -> Self {
        RawCone {
            case: c.case_tag,
            rays: [c.ray_low, c.ray_high],
        }
    }
}

/// The arithmetic datum that pins down the movable cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MovableWitness {
    /// `t(n-1) = c^2`.
    Square(BigInt),
    /// Minimal positive solution of `(n-1)X^2 - tY^2 = 1`.
    TwoCoeff(TwoCoeffSolution),
    /// Minimal solution `(z, w)` of `X^2 - t(n-1)Y^2 = 1` with
    /// `z = +-1 (mod n-1)`.
    CongruentPell(PellSolution),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MovableCone {
    pub cone: ConeDescription,
    pub witness: MovableWitness,
}

/// Minimal `(z, w)` solving `X^2 - t(n-1)Y^2 = 1` with `z = +-1 (mod n-1)`,
/// or `None` when `t(n-1)` is a square.
pub fn congruent_unit(p: &Params) -> Result<Option<PellSolution>> {
    let d = p.t_nm1();
    if d < BigInt::from(2) || exact_sqrt(&d).is_some() {
        return Ok(None);
    }
    let m = p.nm1();
    let residue = BigInt::from(1).mod_floor(&m);
    let out = congruent_search(&d, &BigInt::from(1), &m, &residue, None)?;
    if out.cap_hit {
        return Err(cap_error(&m));
    }
    match out.solution {
        Some(sol) => Ok(Some(sol)),
        // Unreachable: some power of the resolvent is the identity mod n-1.
        None => Err(Error::ContractViolation(format!(
            "no solution of X^2 - {d}Y^2 = 1 with X = +-1 (mod {m})"
        ))),
    }
}

fn cap_error(m: &BigInt) -> Error {
    Error::OrbitCapExceeded {
        modulus: m.to_u64().unwrap_or(u64::MAX),
        cap: m.to_u64().and_then(|v| v.checked_mul(v)).unwrap_or(u64::MAX),
    }
}

/// The movable cone with its witness.
pub fn movable_cone_detail(p: &Params) -> Result<MovableCone> {
    let nm1 = p.nm1();
    let t = p.t_big();
    if let Some(c) = is_perfect_square(&p.t_nm1())? {
        return Ok(MovableCone {
            cone: ConeDescription::new(NSClass::new(nm1, c.clone()), CaseTag::SquareCase),
            witness: MovableWitness::Square(c),
        });
    }
    if let Some(sol) = solve_two_coeff(&nm1, &t, &BigInt::from(1))? {
        let ray = NSClass::new(&nm1 * sol.x(), &t * sol.y());
        return Ok(MovableCone {
            cone: ConeDescription::new(ray, CaseTag::TwoCoeffCase),
            witness: MovableWitness::TwoCoeff(sol),
        });
    }
    let unit = congruent_unit(p)?.expect("t(n-1) is not a square here");
    let ray = NSClass::new(unit.x().clone(), &t * unit.y());
    Ok(MovableCone {
        cone: ConeDescription::new(ray, CaseTag::CongruentPellCase),
        witness: MovableWitness::CongruentPell(unit),
    })
}

pub fn movable_cone(p: &Params) -> Result<ConeDescription> {
    Ok(movable_cone_detail(p)?.cone)
}

/// Pairs `(rho, alpha)` of Mukai square `2 rho` and pairing `alpha` with `v`
/// that can define a flopping wall, in lexicographic order.
pub fn wall_candidates(p: &Params) -> Vec<(i64, i64)> {
    let top = (p.n() - 1) as i64;
    let mut out: Vec<(i64, i64)> = (1..=top).map(|a| (-1, a)).collect();
    out.extend((3..=top).map(|a| (0, a)));
    let mut rho = 1i64;
    while 4 * rho < top {
        let root = crate::pell::ceil_sqrt(&BigInt::from(4 * rho * top));
        let from = (4 * rho + 1).max(root.to_i64().expect("small"));
        out.extend((from..=top).map(|a| (rho, a)));
        rho += 1;
    }
    out
}

/// A wall of the chamber decomposition strictly inside the movable cone.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FloppingWall {
    pub rho: i64,
    pub alpha: i64,
    pub witness: PellSolution,
    pub ray: NSClass,
}

/// `alpha^2 - 4 rho (n-1)`, the right-hand side of the wall equation.
pub fn wall_rhs(p: &Params, rho: i64, alpha: i64) -> BigInt {
    BigInt::from(alpha) * alpha - BigInt::from(rho) * p.nm1() * 4u32
}

/// Minimal positive solution of `X^2 - 4t(n-1)Y^2 = m` with
/// `X = +-alpha (mod 2(n-1))`, for `m > 0`.
pub fn minimal_wall_solution(p: &Params, alpha: i64, m: &BigInt) -> Result<Option<PellSolution>> {
    let d = p.wall_radicand();
    let modulus = p.two_nm1();
    let residue = BigInt::from(alpha).mod_floor(&modulus);
    let neg = (-&residue).mod_floor(&modulus);
    if let Some(root) = exact_sqrt(&d) {
        let best = square_radicand_solutions(&root, m)?
            .into_iter()
            .filter(|(x, y)| {
                let r = x.mod_floor(&modulus);
                x.is_positive() && y.is_positive() && (r == residue || r == neg)
            })
            .min();
        return Ok(best.map(|(x, y)| PellSolution::checked(x, y, d.clone(), m.clone())));
    }
    let out = congruent_search(&d, m, &modulus, &residue, None)?;
    if out.cap_hit {
        return Err(cap_error(&modulus));
    }
    Ok(out.solution)
}

/// Flopping walls strictly inside the movable cone, deduplicated by ray and
/// sorted by slope.
pub fn flopping_walls(p: &Params) -> Result<Vec<FloppingWall>> {
    let mov = movable_cone(p)?;
    flopping_walls_in(p, &mov)
}

fn flopping_walls_in(p: &Params, mov: &ConeDescription) -> Result<Vec<FloppingWall>> {
    let mut walls: Vec<FloppingWall> = Vec::new();
    for (rho, alpha) in wall_candidates(p) {
        let m = wall_rhs(p, rho, alpha);
        if !m.is_positive() {
            continue;
        }
        let Some(sol) = minimal_wall_solution(p, alpha, &m)? else {
            continue;
        };
        let ray = wall_ray_from_solution(&sol, p)?;
        if mov.contains_strictly(&ray) && !walls.iter().any(|w| w.ray == ray) {
            walls.push(FloppingWall {
                rho,
                alpha,
                witness: sol,
                ray,
            });
        }
    }
    walls.sort_by(|a, b| a.ray.cmp_slope(&b.ray));
    Ok(walls)
}

/// The nef cone: the movable cone cut at its lowest flopping wall. The case
/// tag is inherited from the movable cone.
pub fn nef_cone(p: &Params) -> Result<ConeDescription> {
    let mov = movable_cone(p)?;
    let walls = flopping_walls_in(p, &mov)?;
    Ok(nef_from(mov, &walls))
}

pub(crate) fn nef_from(mov: ConeDescription, walls: &[FloppingWall]) -> ConeDescription {
    match walls.first() {
        Some(w) => ConeDescription::new(w.ray.clone(), mov.case_tag),
        None => mov,
    }
}

/// Movable cone, walls and nef cone in one pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeData {
    pub movable: MovableCone,
    pub walls: Vec<FloppingWall>,
    pub nef: ConeDescription,
}

pub fn cone_data(p: &Params) -> Result<ConeData> {
    let movable = movable_cone_detail(p)?;
    let walls = flopping_walls_in(p, &movable.cone)?;
    let nef = nef_from(movable.cone.clone(), &walls);
    Ok(ConeData {
        movable,
        walls,
        nef,
    })
}

/// A square `X^2 = 4t(n-1)Y^2 + m` found by the bounded scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanHit {
    pub rho: i64,
    pub alpha: i64,
    pub x: BigInt,
    pub y: BigInt,
}

/// Direct evaluation of the wall condition against the threshold `(z, w)`:
/// for each candidate, looks for `1 <= Y <= sqrt((z-1) m / (8t(n-1)))` with
/// `4t(n-1)Y^2 + m` the square of some `X = +-alpha (mod 2(n-1))`.
///
/// Returns the first hit, or `None` when no candidate produces a wall below
/// the threshold. Fails with a domain error if a bound exceeds `max_y`.
pub fn condition_iii_by_scan(p: &Params, z: &BigInt, max_y: u64) -> Result<Option<ScanHit>> {
    let d = p.wall_radicand();
    let modulus = p.two_nm1();
    let eight_tn = p.t_nm1() * 8u32;
    let (d128, mod128) = (
        d.to_u128().expect("small radicand"),
        modulus.to_u128().expect("small modulus"),
    );
    for (rho, alpha) in wall_candidates(p) {
        let m = wall_rhs(p, rho, alpha);
        if !m.is_positive() {
            continue;
        }
        let bound = crate::pell::isqrt(&((z - 1u32) * &m / &eight_tn))?;
        if bound > BigInt::from(max_y) {
            return Err(Error::Domain(format!(
                "scan bound {bound} for ({rho}, {alpha}) exceeds limit {max_y}"
            )));
        }
        let bound = bound.to_u64().expect("checked against max_y");
        let m128 = m.to_u128().expect("small rhs");
        let a = (alpha as u128) % mod128;
        let neg_a = (mod128 - a) % mod128;
        let mut hit = None;
        let scanned = scan_square_values(d128, m128, 1, bound, |y, x| {
            let r = x % mod128;
            if r == a || r == neg_a {
                hit = Some((x, y));
                true
            } else {
                false
            }
        });
        if scanned.is_none() {
            return Err(Error::Domain(format!(
                "scan for ({rho}, {alpha}) overflows 128-bit arithmetic"
            )));
        }
        if let Some((x, y)) = hit {
            return Ok(Some(ScanHit {
                rho,
                alpha,
                x: BigInt::from(x),
                y: BigInt::from(y),
            }));
        }
    }
    Ok(None)
}

/// Whether the minimal congruent wall solution of each candidate has slope
/// `Y/X >= w/(2z)`; returns the first candidate that violates it.
pub fn condition_iii_by_pell(p: &Params, unit: &PellSolution) -> Result<Option<FloppingWall>> {
    let (z, w) = (unit.x(), unit.y());
    for (rho, alpha) in wall_candidates(p) {
        let m = wall_rhs(p, rho, alpha);
        if !m.is_positive() {
            continue;
        }
        let Some(sol) = minimal_wall_solution(p, alpha, &m)? else {
            continue;
        };
        // Y/X < w/(2z)  <=>  2zY < wX.
        if (z * sol.y() * 2u32) < (w * sol.x()) {
            let ray = wall_ray_from_solution(&sol, p)?;
            return Ok(Some(FloppingWall {
                rho,
                alpha,
                witness: sol,
                ray,
            }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64, t: u64) -> Params {
        Params::new(n, t).unwrap()
    }

    #[test]
    fn movable_examples() {
        let c = movable_cone(&p(5, 4)).unwrap();
        assert_eq!(c.case_tag(), CaseTag::SquareCase);
        assert_eq!(c.ray_high(), &NSClass::new(1, 1));

        let c = movable_cone(&p(3, 7)).unwrap();
        assert_eq!(c.case_tag(), CaseTag::TwoCoeffCase);
        assert_eq!(c.ray_high(), &NSClass::new(4, 7));

        let c = movable_cone_detail(&p(3, 19)).unwrap();
        assert_eq!(c.cone.case_tag(), CaseTag::CongruentPellCase);
        assert_eq!(c.cone.ray_high(), &NSClass::new(37, 114));
        match c.witness {
            MovableWitness::CongruentPell(u) => assert_eq!((u.x(), u.y()), (&BigInt::from(37), &BigInt::from(6))),
            other => panic!("unexpected witness {other:?}"),
        }
    }

    #[test]
    fn n_two_is_always_two_coeff_or_square() {
        for t in 1..=200 {
            let c = movable_cone(&p(2, t)).unwrap();
            assert_ne!(c.case_tag(), CaseTag::CongruentPellCase, "t={t}");
        }
    }

    #[test]
    fn candidate_examples() {
        assert_eq!(wall_candidates(&p(2, 1)), vec![(-1, 1)]);
        assert_eq!(wall_candidates(&p(3, 1)), vec![(-1, 1), (-1, 2)]);
        assert_eq!(
            wall_candidates(&p(6, 1)),
            vec![(-1, 1), (-1, 2), (-1, 3), (-1, 4), (-1, 5), (0, 3), (0, 4), (0, 5), (1, 5)]
        );
    }

    #[test]
    fn candidates_have_non_negative_rhs() {
        for n in 2..=60 {
            let pp = p(n, 1);
            for (rho, alpha) in wall_candidates(&pp) {
                assert!(!wall_rhs(&pp, rho, alpha).is_negative(), "n={n} ({rho},{alpha})");
            }
        }
    }

    #[test]
    fn wall_examples() {
        assert!(flopping_walls(&p(3, 19)).unwrap().is_empty());
        assert!(flopping_walls(&p(2, 2)).unwrap().is_empty());
        let walls = flopping_walls(&p(3, 2)).unwrap();
        assert!(!walls.is_empty());
        let mov = movable_cone(&p(3, 2)).unwrap();
        for w in &walls {
            assert!(mov.contains_strictly(&w.ray));
        }
    }

    #[test]
    fn nef_examples() {
        let pp = p(3, 19);
        assert_eq!(nef_cone(&pp).unwrap(), movable_cone(&pp).unwrap());
        let pp = p(2, 2);
        assert_eq!(nef_cone(&pp).unwrap(), movable_cone(&pp).unwrap());
        let pp = p(5, 4);
        let nef = nef_cone(&pp).unwrap();
        assert_eq!(nef.ray_low(), &NSClass::h());
        assert_ne!(nef.ray_high().cmp_slope(&NSClass::new(1, 1)), std::cmp::Ordering::Greater);
    }

    #[test]
    fn json_shape() {
        let c = movable_cone(&p(3, 19)).unwrap();
        let js = serde_json::to_string(&c).unwrap();
        assert_eq!(
            js,
            r#"{"case":"congruent_pell","rays":[{"h":"1","delta":"0"},{"h":"37","delta":"-114"}]}"#
        );
        assert_eq!(serde_json::from_str::<ConeDescription>(&js).unwrap(), c);
    }

    #[test]
    fn remark_scan_agrees_on_small_cases() {
        let pp = p(2, 5);
        let unit = congruent_unit(&pp).unwrap().unwrap();
        let by_scan = condition_iii_by_scan(&pp, unit.x(), 1 << 30).unwrap();
        let by_pell = condition_iii_by_pell(&pp, &unit).unwrap();
        assert_eq!(by_scan.is_some(), by_pell.is_some());
    }
}
