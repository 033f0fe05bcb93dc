//! Randomized property suite for the exact-arithmetic core: oracle
//! equivalence for the shift-factor realization, the Pochhammer recursion,
//! and round-trips through the rational linear solver, the adjugate, and
//! exact polynomial division.

use num_traits::{One, Zero};
use proptest::prelude::*;

use mvsf::exactnum::pochhammer;
use mvsf::hyper::{build_via_pochhammer_quotients, shift_factor_consistency, HypergeomSpec};
use mvsf::polyalg::{solve_exact, SolveOutcome};
use mvsf::{Poly, PolyMatrix, Rat, RatMatrix};

fn rational() -> impl Strategy<Value = Rat> {
    (-30i64..=30, 1i64..=9).prop_map(|(p, q)| Rat::new(p.into(), q.into()))
}

fn positive_rational() -> impl Strategy<Value = Rat> {
    (1i64..=40, 1i64..=9).prop_map(|(p, q)| Rat::new(p.into(), q.into()))
}

fn poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(rational(), 1..=max_deg + 1).prop_map(Poly::from_coeffs)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn shift_factor_matches_pochhammer_quotient(
        s in positive_rational(),
        degree in 0usize..10,
    ) {
        prop_assert!(shift_factor_consistency(&s, degree));
    }

    #[test]
    fn series_agrees_with_pochhammer_oracle(
        d in 0u8..7,
        a in positive_rational(),
        c in positive_rational(),
        s in positive_rational(),
        use_shift in any::<bool>(),
    ) {
        let shifts = if use_shift { vec![s] } else { vec![] };
        let spec = HypergeomSpec::new(
            vec![Rat::from_integer((-(d as i64)).into()), a],
            vec![c],
            shifts,
        ).unwrap();
        prop_assert_eq!(spec.build_terminating(), build_via_pochhammer_quotients(&spec));
    }

    #[test]
    fn pochhammer_recursion(a in rational(), j in 0usize..25) {
        let step = Rat::from_integer((j as i64).into());
        prop_assert_eq!(pochhammer(&a, j + 1), pochhammer(&a, j) * (&a + step));
    }

    #[test]
    fn pochhammer_split(a in rational(), j in 0usize..12, k in 0usize..12) {
        // (a)_{j+k} = (a)_j (a+j)_k
        let shifted = &a + Rat::from_integer((j as i64).into());
        prop_assert_eq!(pochhammer(&a, j + k), pochhammer(&a, j) * pochhammer(&shifted, k));
    }

    #[test]
    fn solver_round_trip(
        k in 1usize..=4,
        seed in prop::collection::vec(rational(), 32),
    ) {
        let entries: Vec<Rat> = seed[..k * k].to_vec();
        let x: Vec<Rat> = seed[k * k..k * k + k].to_vec();
        let m = RatMatrix::new(k, k, entries).unwrap();
        let b: Vec<Rat> = (0..k)
            .map(|r| (0..k).map(|c| m.at(r, c) * &x[c]).sum())
            .collect();
        match solve_exact(&m, &b).unwrap() {
            SolveOutcome::Unique(y) => {
                // the solver's answer must reproduce b (and equal x when unique)
                let back: Vec<Rat> = (0..k)
                    .map(|r| (0..k).map(|c| m.at(r, c) * &y[c]).sum())
                    .collect();
                prop_assert_eq!(&back, &b);
                prop_assert_eq!(y, x);
            }
            SolveOutcome::Inconsistent { .. } => {
                // b lies in the column space by construction
                prop_assert!(false, "consistent system reported inconsistent");
            }
            SolveOutcome::Underdetermined { .. } => {
                // singular matrix; nothing more to check
            }
        }
    }

    #[test]
    fn adjugate_det_identity(
        size in 1usize..=3,
        seed in prop::collection::vec(poly(2), 9),
    ) {
        let m = PolyMatrix::new(size, size, seed[..size * size].to_vec()).unwrap();
        let (adj, det) = m.adjugate_det().unwrap();
        let mut det_i = PolyMatrix::zeros(size, size);
        for d in 0..size {
            *det_i.at_mut(d, d) = det.clone();
        }
        prop_assert_eq!(m.mul(&adj).unwrap(), det_i.clone());
        prop_assert_eq!(adj.mul(&m).unwrap(), det_i);
    }

    #[test]
    fn exact_division_round_trip(p in poly(5), q in poly(4)) {
        prop_assume!(!q.is_zero());
        let prod = &p * &q;
        prop_assert_eq!(prod.exact_div(&q).unwrap(), p);
    }

    #[test]
    fn exact_division_detects_remainder(p in poly(4), q in poly(3), r in rational()) {
        prop_assume!(!q.is_zero());
        prop_assume!(q.degree().unwrap_or(0) >= 1);
        prop_assume!(!r.is_zero());
        // (p*q + r) / q leaves the nonzero constant remainder r
        let noisy = &(&p * &q) + &Poly::constant(r);
        prop_assert!(noisy.exact_div(&q).is_err());
    }

    #[test]
    fn format_parse_round_trip(r in rational()) {
        let text = mvsf::exactnum::format_rat(&r);
        prop_assert_eq!(mvsf::exactnum::parse_rat(&text).unwrap(), r);
    }
}

#[test]
fn pochhammer_base_cases() {
    let a = Rat::new(7.into(), 3.into());
    assert!(pochhammer(&a, 0).is_one());
    assert_eq!(pochhammer(&a, 1), a);
    assert!(pochhammer(&Rat::zero(), 3).is_zero());
}
