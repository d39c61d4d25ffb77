use hilbaut_core::aut::{discriminant_action, evaluate, Mode};
use hilbaut_core::cones::{flopping_walls, movable_cone, nef_cone, wall_candidates, wall_rhs};
use hilbaut_core::lattice::{bbf_square, divisibility, mukai_from_pell, NSClass, Params};
use hilbaut_core::pell::{
    fundamental_solutions, fundamental_solutions_by_scan, generate_solutions,
    minimal_congruent_solution, pell_minimal, same_class, PellSolution,
};
use hilbaut_core::report::{analyze, Analysis};
use num_bigint::BigInt;
use num_traits::Signed;
use proptest::prelude::*;

fn non_square() -> impl Strategy<Value = i64> {
    (2i64..400).prop_filter("non-square", |d| {
        let r = (*d as f64).sqrt() as i64;
        r * r != *d
    })
}

fn rhs() -> impl Strategy<Value = i64> {
    (-300i64..=300).prop_filter("non-zero", |n| *n != 0)
}

fn params() -> impl Strategy<Value = Params> {
    (2u64..=12, 1u64..=200).prop_map(|(n, t)| Params::new(n, t).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn generated_solutions_solve_and_are_ordered(d in non_square(), n in rhs()) {
        let set = fundamental_solutions(&BigInt::from(d), &BigInt::from(n)).unwrap();
        let sols = generate_solutions(&set, 6);
        for s in &sols {
            prop_assert!(s.is_positive());
            prop_assert_eq!(s.x() * s.x() - s.d() * s.y() * s.y(), BigInt::from(n));
        }
        for pair in sols.windows(2) {
            let (a, b) = (&pair[0], &pair[1]);
            prop_assert!(a.x() < b.x());
            // Y/X strictly increases for N > 0 and strictly decreases for N < 0.
            let lhs = a.y() * b.x();
            let rhs = b.y() * a.x();
            if n > 0 { prop_assert!(lhs < rhs); } else { prop_assert!(lhs > rhs); }
        }
    }

    #[test]
    fn trivial_congruence_gives_head(d in non_square(), n in rhs()) {
        let (dd, nn) = (BigInt::from(d), BigInt::from(n));
        let set = fundamental_solutions(&dd, &nn).unwrap();
        let head = generate_solutions(&set, 1).into_iter().next();
        let cong = minimal_congruent_solution(&dd, &nn, &BigInt::from(1), &BigInt::from(0)).unwrap();
        prop_assert_eq!(cong, head);
    }

    #[test]
    fn congruent_solution_is_minimal(d in 2i64..60, n in rhs(), m in 2i64..12, c in 0i64..12) {
        let r = (d as f64).sqrt() as i64;
        prop_assume!(r * r != d && c < m);
        let (dd, nn) = (BigInt::from(d), BigInt::from(n));
        let got = minimal_congruent_solution(&dd, &nn, &BigInt::from(m), &BigInt::from(c)).unwrap();
        let set = fundamental_solutions(&dd, &nn).unwrap();
        // Every positive solution below the answer fails the congruence.
        let hits = |s: &PellSolution| {
            let x = s.x() % m;
            x == BigInt::from(c) || x == BigInt::from((m - c) % m)
        };
        for s in generate_solutions(&set, 40) {
            if let Some(g) = &got {
                if s.x() >= g.x() { break; }
            }
            prop_assert!(!hits(&s), "missed {:?}", s);
        }
        if let Some(g) = &got {
            prop_assert!(hits(g) && g.is_positive());
        }
    }

    #[test]
    fn two_routes_to_fundamentals_agree(d in 2i64..80, n in rhs()) {
        let r = (d as f64).sqrt() as i64;
        prop_assume!(r * r != d);
        let (dd, nn) = (BigInt::from(d), BigInt::from(n));
        let lmm = fundamental_solutions(&dd, &nn).unwrap();
        if let Ok(scan) = fundamental_solutions_by_scan(&dd, &nn, 1 << 22) {
            prop_assert_eq!(lmm.fundamentals(), scan.fundamentals());
        }
        for (i, a) in lmm.fundamentals().iter().enumerate() {
            for b in &lmm.fundamentals()[i + 1..] {
                prop_assert!(!same_class(a, b));
            }
        }
    }

    #[test]
    fn pell_minimal_is_a_unit(d in non_square()) {
        let u = pell_minimal(&BigInt::from(d)).unwrap();
        prop_assert!(u.is_positive());
        prop_assert_eq!(u.x() * u.x() - u.d() * u.y() * u.y(), BigInt::from(1));
    }

    #[test]
    fn divisibility_divides_square(p in params(), x in -500i64..500, y in -500i64..500) {
        prop_assume!(x != 0 || y != 0);
        let c = NSClass::new(x, y).primitive();
        let div = divisibility(&c, &p).unwrap();
        prop_assert!((bbf_square(&c, &p) % div) == BigInt::from(0));
    }

    #[test]
    fn mukai_vectors_have_stated_pairings(p in params()) {
        for (rho, alpha) in wall_candidates(&p) {
            let m = wall_rhs(&p, rho, alpha);
            if !m.is_positive() || p.t_nm1() < BigInt::from(2) {
                continue;
            }
            let Ok(set) = fundamental_solutions(&p.wall_radicand(), &m) else { continue };
            for s in generate_solutions(&set, 3) {
                for a in mukai_from_pell(&p, &BigInt::from(rho), &BigInt::from(alpha), &s).unwrap() {
                    prop_assert_eq!(a.square(&p), BigInt::from(2 * rho));
                    prop_assert_eq!(a.pairing_with_v(&p), BigInt::from(alpha));
                }
            }
        }
    }

    #[test]
    fn nef_inside_movable(p in params()) {
        let mov = movable_cone(&p).unwrap();
        let nef = nef_cone(&p).unwrap();
        prop_assert!(nef.ray_high().cmp_slope(mov.ray_high()).is_le());
        for w in flopping_walls(&p).unwrap() {
            prop_assert!(mov.contains_strictly(&w.ray));
            prop_assert!(w.ray.cmp_slope(nef.ray_high()).is_ge());
        }
    }

    #[test]
    fn involutions_are_consistent(p in params()) {
        let e = evaluate(&p, Mode::Verify).unwrap();
        if let Some(d) = e.result.variant.involution() {
            let sign = discriminant_action(&d.z, &p).unwrap();
            prop_assert_eq!(sign == -1, d.nu_square == BigInt::from(2));
            prop_assert_eq!(e.nef(), e.mov());
            prop_assert!(p.t() >= 2 * p.n() - 2);
        }
        prop_assert_eq!(p.t() == 1, e.result.variant == hilbaut_core::aut::AutVariant::NaturalInvolutionOnly);
    }

    #[test]
    fn reports_roundtrip_through_json(p in params()) {
        let a = analyze(&p, Mode::Fast).unwrap();
        let js = serde_json::to_string(&a).unwrap();
        let back: Analysis = serde_json::from_str(&js).unwrap();
        prop_assert_eq!(back, a);
    }
}
