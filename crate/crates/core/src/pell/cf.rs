//! Periodic continued fractions of quadratic surds and the classical Pell
//! equations `X^2 - dY^2 = +-1`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::arith::floor_sqrt;
use super::PellSolution;
use crate::error::{domain, Error, Result};

/// The continued fraction `sqrt(d) = [a0; period_terms...]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurdExpansion {
    d: BigInt,
    integer_part: BigInt,
    period_terms: Vec<BigInt>,
}

impl SurdExpansion {
    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn integer_part(&self) -> &BigInt {
        &self.integer_part
    }

    pub fn period_terms(&self) -> &[BigInt] {
        &self.period_terms
    }

    pub fn period(&self) -> usize {
        self.period_terms.len()
    }

    /// Partial quotients `a0, a1, a2, ...` (infinite).
    pub fn partial_quotients(&self) -> impl Iterator<Item = &BigInt> + '_ {
        std::iter::once(&self.integer_part).chain(self.period_terms.iter().cycle())
    }

    /// Convergents `(p_k, q_k)` of the expansion (infinite).
    pub fn convergents(&self) -> Convergents<'_> {
        Convergents {
            terms: Box::new(self.partial_quotients()),
            prev: (BigInt::zero(), BigInt::one()),
            cur: (BigInt::one(), BigInt::zero()),
        }
    }
}

pub struct Convergents<'a> {
    terms: Box<dyn Iterator<Item = &'a BigInt> + 'a>,
    // (p_{k-2}, q_{k-2}) and (p_{k-1}, q_{k-1})
    prev: (BigInt, BigInt),
    cur: (BigInt, BigInt),
}

impl Iterator for Convergents<'_> {
    type Item = (BigInt, BigInt);

    fn next(&mut self) -> Option<Self::Item> {
        let a = self.terms.next()?;
        let p = a * &self.cur.0 + &self.prev.0;
        let q = a * &self.cur.1 + &self.prev.1;
        let next = (p, q);
        self.prev = std::mem::replace(&mut self.cur, next.clone());
        Some(next)
    }
}

pub(crate) fn check_radicand(d: &BigInt) -> Result<BigInt> {
    if *d < BigInt::from(2) {
        return domain(format!("radicand must be at least 2, got {d}"));
    }
    let root = floor_sqrt(d);
    if &root * &root == *d {
        return Err(Error::PerfectSquare {
            value: d.clone(),
            root,
        });
    }
    Ok(root)
}

/// Expands `sqrt(d)` with the standard `(m, q, a)` recurrence; the period
/// ends at the first partial quotient equal to `2 * a0`.
pub fn cf_sqrt(d: &BigInt) -> Result<SurdExpansion> {
    let a0 = check_radicand(d)?;
    let two_a0 = &a0 * 2;
    let mut m = BigInt::zero();
    let mut q = BigInt::one();
    let mut a = a0.clone();
    let mut period_terms = Vec::new();
    loop {
        m = &q * &a - &m;
        q = (d - &m * &m) / &q;
        a = (&a0 + &m) / &q;
        let done = a == two_a0;
        period_terms.push(a.clone());
        if done {
            break;
        }
    }
    Ok(SurdExpansion {
        d: d.clone(),
        integer_part: a0,
        period_terms,
    })
}

/// The positive solution of `X^2 - dY^2 = 1` with minimal `X`.
pub fn pell_minimal(d: &BigInt) -> Result<PellSolution> {
    let cf = cf_sqrt(d)?;
    Ok(minimal_from_expansion(&cf))
}

pub(crate) fn minimal_from_expansion(cf: &SurdExpansion) -> PellSolution {
    let r = cf.period();
    let index = if r % 2 == 0 { r - 1 } else { 2 * r - 1 };
    let (x, y) = cf
        .convergents()
        .nth(index)
        .expect("convergent sequence is infinite");
    PellSolution::checked(x, y, cf.d.clone(), BigInt::one())
}

/// The positive solution of `X^2 - dY^2 = -1` with minimal `X`, if the
/// equation is solvable. Solvable exactly when the period is odd.
pub fn pell_minimal_negative(d: &BigInt) -> Result<Option<PellSolution>> {
    let cf = cf_sqrt(d)?;
    Ok(negative_from_expansion(&cf))
}

pub(crate) fn negative_from_expansion(cf: &SurdExpansion) -> Option<PellSolution> {
    let r = cf.period();
    if r % 2 == 0 {
        return None;
    }
    let (x, y) = cf
        .convergents()
        .nth(r - 1)
        .expect("convergent sequence is infinite");
    Some(PellSolution::checked(x, y, cf.d.clone(), -BigInt::one()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;
    use num_traits::Signed;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn terms(v: &[i64]) -> Vec<BigInt> {
        v.iter().copied().map(big).collect()
    }

    #[test]
    fn expansion_examples() {
        let e = cf_sqrt(&big(2)).unwrap();
        assert_eq!(e.integer_part(), &big(1));
        assert_eq!(e.period_terms(), terms(&[2]).as_slice());

        let e = cf_sqrt(&big(38)).unwrap();
        assert_eq!(e.integer_part(), &big(6));
        assert_eq!(e.period_terms(), terms(&[6, 12]).as_slice());

        let e = cf_sqrt(&big(26)).unwrap();
        assert_eq!(e.integer_part(), &big(5));
        assert_eq!(e.period_terms(), terms(&[10]).as_slice());
    }

    #[test]
    fn expansion_rejects_bad_radicands() {
        assert!(matches!(cf_sqrt(&big(16)), Err(Error::PerfectSquare { .. })));
        assert!(matches!(cf_sqrt(&big(1)), Err(Error::Domain(_))));
        assert!(matches!(cf_sqrt(&big(-5)), Err(Error::Domain(_))));
    }

    #[test]
    fn sqrt2_convergents_approach_root() {
        let e = cf_sqrt(&big(2)).unwrap();
        let conv: Vec<_> = e.convergents().take(5).collect();
        assert_eq!(
            conv,
            vec![
                (big(1), big(1)),
                (big(3), big(2)),
                (big(7), big(5)),
                (big(17), big(12)),
                (big(41), big(29))
            ]
        );
        // |p^2 - 2 q^2| = 1 along the way
        for (p, q) in conv {
            let v = &p * &p - big(2) * &q * &q;
            assert!(v == big(1) || v == big(-1));
        }
    }

    #[test]
    fn minimal_solutions() {
        let s = pell_minimal(&big(2)).unwrap();
        assert_eq!((s.x().clone(), s.y().clone()), (big(3), big(2)));
        let s = pell_minimal(&big(26)).unwrap();
        assert_eq!((s.x().clone(), s.y().clone()), (big(51), big(10)));
        let s = pell_minimal(&big(38)).unwrap();
        assert_eq!((s.x().clone(), s.y().clone()), (big(37), big(6)));
        assert!(pell_minimal(&big(16)).is_err());
    }

    #[test]
    fn negative_pell() {
        let s = pell_minimal_negative(&big(26)).unwrap().unwrap();
        assert_eq!((s.x().clone(), s.y().clone()), (big(5), big(1)));
        let s = pell_minimal_negative(&big(2)).unwrap().unwrap();
        assert_eq!((s.x().clone(), s.y().clone()), (big(1), big(1)));
        assert!(pell_minimal_negative(&big(3)).unwrap().is_none());
    }

    #[test]
    fn palindromic_period_invariant() {
        for d in 2i64..400 {
            let e = match cf_sqrt(&big(d)) {
                Ok(e) => e,
                Err(Error::PerfectSquare { .. }) => continue,
                Err(e) => panic!("{e}"),
            };
            let p = e.period_terms();
            assert_eq!(p.last().unwrap(), &(e.integer_part() * 2), "d={d}");
            let body = &p[..p.len() - 1];
            assert!(body.iter().eq(body.iter().rev()), "d={d}");
        }
    }

    // Ascending-Y search is exhaustive up to this bound. d = 109, 157, 181
    // and 193 have minimal Y beyond it (181 needs Y ~ 1.8e17).
    const BRUTE_Y: u64 = 1 << 31;

    #[test]
    fn agrees_with_ascending_brute_force() {
        for d in 2u64..=200 {
            let r = (d as f64).sqrt() as u64;
            if r * r == d || (r + 1) * (r + 1) == d {
                continue;
            }
            let fast = pell_minimal(&big(d as i64)).unwrap();
            let mut brute = None;
            super::super::arith::scan_square_values(d as u128, 1, 1, BRUTE_Y, |y, x| {
                brute = Some((BigInt::from(x), BigInt::from(y)));
                true
            })
            .unwrap();
            match brute {
                Some((x, y)) => assert_eq!((fast.x(), fast.y()), (&x, &y), "d={d}"),
                None => assert!(fast.y() > &BigInt::from(BRUTE_Y), "d={d}"),
            }
        }
    }

    // Bhaskara's cyclic method, independent of continued fractions.
    fn chakravala(d: i64) -> (BigInt, BigInt) {
        let d = big(d);
        let root = crate::pell::floor_sqrt(&d);
        let nearest = |m: &BigInt| (m * m - &d).abs();
        let m0 = if nearest(&(&root + 1)) < nearest(&root) { &root + 1 } else { root.clone() };
        let (mut a, mut b, mut k) = (m0.clone(), big(1), &m0 * &m0 - &d);
        while k != big(1) {
            let ak = k.abs();
            // m = -a / b (mod |k|), chosen near sqrt(d).
            let inv = {
                let g = b.extended_gcd(&ak);
                g.x.mod_floor(&ak)
            };
            let r = (-&a * inv).mod_floor(&ak);
            let below = &root - (&root - &r).mod_floor(&ak);
            let mut best: Option<BigInt> = None;
            for m in [below.clone(), &below + &ak] {
                if m.is_positive() && best.as_ref().map_or(true, |b| nearest(&m) < nearest(b)) {
                    best = Some(m);
                }
            }
            let m = best.unwrap();
            let a2 = (&a * &m + &d * &b) / &ak;
            let b2 = (&a + &b * &m) / &ak;
            k = (&m * &m - &d) / &k;
            a = a2;
            b = b2.abs();
            a = a.abs();
        }
        (a, b)
    }

    #[test]
    fn agrees_with_chakravala() {
        for d in 2i64..=400 {
            let r = (d as f64).sqrt() as i64;
            if r * r == d {
                continue;
            }
            let fast = pell_minimal(&big(d)).unwrap();
            let (x, y) = chakravala(d);
            assert_eq!((fast.x(), fast.y()), (&x, &y), "d={d}");
        }
    }
}
