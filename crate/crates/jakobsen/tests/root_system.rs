use std::collections::HashSet;

use jakobsen::rational::{frac, q, Q};
use jakobsen::root_system::{pairing, weyl_reflect};
use jakobsen::{Error, Family, Labels, RootSystem, Vector};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn family() -> impl Strategy<Value = Family> {
    prop_oneof![
        (1usize..=5, 1usize..=5).prop_map(|(p, q)| Family::Su { p, q }),
        (2usize..=6).prop_map(|n| Family::Sp { n }),
        (2usize..=6).prop_map(|n| Family::SoStar { n }),
        (1usize..=5).prop_map(|n| Family::SoOdd { n }),
        (3usize..=6).prop_map(|n| Family::SoEven { n }),
        Just(Family::E6),
        Just(Family::E7),
    ]
}

fn all_families() -> Vec<Family> {
    let mut out = Vec::new();
    for p in 1..=6 {
        for q in 1..=6 {
            out.push(Family::Su { p, q });
        }
    }
    for n in 2..=8 {
        out.push(Family::Sp { n });
        out.push(Family::SoStar { n });
    }
    for n in 1..=6 {
        out.push(Family::SoOdd { n });
    }
    for n in 3..=6 {
        out.push(Family::SoEven { n });
    }
    out.push(Family::E6);
    out.push(Family::E7);
    out
}

/// |Δ_n⁺| from the coordinate patterns: e_i - e_j across the p|q split,
/// e_i + e_j (i ≤ j) for sp, e_i + e_j (i < j) for so*, and the 2n-1 or
/// 2n-2 roots containing e_1 for so(m,2).
fn expected_noncompact(f: Family) -> usize {
    match f {
        Family::Su { p, q } => p * q,
        Family::Sp { n } => n * (n + 1) / 2,
        Family::SoStar { n } => n * (n - 1) / 2,
        Family::SoOdd { n } => 2 * n - 1,
        Family::SoEven { n } => 2 * n - 2,
        Family::E6 => 16,
        Family::E7 => 27,
    }
}

fn expected_positive(f: Family) -> usize {
    match f {
        Family::Su { p, q } => (p + q) * (p + q - 1) / 2,
        Family::Sp { n } | Family::SoOdd { n } => n * n,
        Family::SoStar { n } | Family::SoEven { n } => n * (n - 1),
        Family::E6 => 36,
        Family::E7 => 63,
    }
}

#[test]
fn root_counts() {
    for f in all_families() {
        let rs = RootSystem::build(f).unwrap();
        assert_eq!(rs.noncompact.len(), expected_noncompact(f), "{f}");
        assert_eq!(rs.positive.len(), expected_positive(f), "{f}");
        assert_eq!(rs.compact_simple.len() + 1, rs.rank, "{f}");
    }
}

#[test]
fn su58_and_sp10() {
    let rs = RootSystem::build(Family::Su { p: 5, q: 8 }).unwrap();
    assert_eq!(rs.rank, 12);
    assert_eq!(rs.noncompact.len(), 40);
    // p copies of q/n and q copies of -p/n
    let mut eps = vec![frac(8, 13); 5];
    eps.extend(vec![frac(-5, 13); 8]);
    assert_eq!(rs.epsilon, Vector(eps));

    let rs = RootSystem::build(Family::Sp { n: 10 }).unwrap();
    let mut g = Vector::zero(10);
    g.0[0] = q(2);
    assert_eq!(rs.gamma_r, g);
    assert_eq!(rs.noncompact.len(), 55);
}

#[test]
fn e7_split_rank_roots_present() {
    let rs = RootSystem::build(Family::E7).unwrap();
    let e = |i: usize| Vector::unit(8, i - 1);
    for r in [&e(6) - &e(5), &e(6) + &e(5), &e(8) - &e(7)] {
        assert!(rs.noncompact_index(&r).is_some(), "{r}");
    }
}

#[test]
fn epsilon_fixtures() {
    // sp(n): ε = (1, ..., 1); so*(2n): ε = (1/2, ..., 1/2); e7 as printed.
    let rs = RootSystem::build(Family::Sp { n: 4 }).unwrap();
    assert_eq!(rs.epsilon, Vector(vec![q(1); 4]));
    let rs = RootSystem::build(Family::SoStar { n: 8 }).unwrap();
    assert_eq!(rs.epsilon, Vector(vec![frac(1, 2); 8]));
    let rs = RootSystem::build(Family::E7).unwrap();
    let want = Vector(vec![q(0), q(0), q(0), q(0), q(0), q(1), frac(-1, 2), frac(1, 2)]);
    assert_eq!(rs.epsilon, want);
}

#[test]
fn e6_printed_epsilon_does_not_pair_to_one() {
    let rs = RootSystem::build(Family::E6).unwrap();
    let printed = Vector(vec![q(0), q(0), q(0), q(0), q(0), frac(-2, 3), frac(-2, 3), frac(-2, 3)]);
    assert_eq!(printed.dot(&rs.gamma_r), frac(1, 3));
    assert_eq!(pairing(&rs.epsilon, &rs.gamma_r).unwrap(), q(1));
    assert_eq!(rs.epsilon, Vector(vec![q(0), q(0), q(0), q(0), q(0), frac(-2, 3), frac(-2, 3), frac(2, 3)]));
}

#[test]
fn pairing_examples() {
    let rs = RootSystem::build(Family::Sp { n: 3 }).unwrap();
    let e = |i: usize| Vector::unit(3, i - 1);
    let two_e1 = e(1).scale(&q(2));
    let d = &e(1) - &e(2);
    assert_eq!(pairing(&two_e1, &d).unwrap(), q(2));
    assert_eq!(pairing(&d, &two_e1).unwrap(), q(1));
    assert_eq!(pairing(&rs.gamma_r, &rs.gamma_r).unwrap(), q(2));
    assert_eq!(pairing(&d, &Vector::zero(3)), Err(Error::DegenerateRoot));
}

#[test]
fn reflection_examples() {
    let rs = RootSystem::build(Family::Su { p: 2, q: 2 }).unwrap();
    let w = Vector::from_ints(&[3, -1, 5, 7]);
    let a = Vector::from_ints(&[1, -1, 0, 0]);
    assert_eq!(weyl_reflect(&w, &a), Vector::from_ints(&[-1, 3, 5, 7]));
    assert_eq!(weyl_reflect(&a, &a), -&a);
    let ht = rs.height(&rs.gamma_r);
    assert_eq!(pairing(&rs.rho, &rs.gamma_r).unwrap(), q(ht));
    assert_eq!(
        weyl_reflect(&rs.rho, &rs.gamma_r),
        &rs.rho - &rs.gamma_r.scale(&q(ht))
    );
}

#[test]
fn resolve_weight_examples() {
    let rs = RootSystem::build(Family::Sp { n: 10 }).unwrap();
    let labels: Labels = [(5, 2)].into_iter().collect();
    let l0 = rs.resolve_weight(&labels).unwrap();
    for (k, m) in &rs.compact_simple {
        let want = if *k == 5 { q(2) } else { q(0) };
        assert_eq!(pairing(&l0, m).unwrap(), want);
    }
    assert!(pairing(&l0, &rs.gamma_r).unwrap().is_zero());

    let rs = RootSystem::build(Family::Su { p: 2, q: 2 }).unwrap();
    assert!(rs.resolve_weight(&Labels::new()).unwrap().is_zero());
    let l0 = rs.resolve_weight(&[(2, 3)].into_iter().collect()).unwrap();
    assert!(pairing(&l0, &rs.gamma_r).unwrap().is_zero());
    assert!(l0.0.iter().fold(Q::zero(), |a, b| a + b).is_zero());
    assert_eq!(rs.resolve_weight(&[(7, 1)].into_iter().collect()), Err(Error::UnknownLabel(7)));
}

#[test]
fn invalid_parameters() {
    for f in [
        Family::Su { p: 0, q: 3 },
        Family::Sp { n: 1 },
        Family::SoStar { n: 1 },
        Family::SoOdd { n: 0 },
        Family::SoEven { n: 2 },
    ] {
        assert!(matches!(RootSystem::build(f), Err(Error::InvalidParameters { .. })), "{f}");
    }
}

#[test]
fn structural_invariants() {
    for f in all_families() {
        let rs = RootSystem::build(f).unwrap();
        let c_beta = |a: &Vector| rs.coefficients(a)[0].clone();
        for a in &rs.noncompact {
            assert!(c_beta(a).is_one(), "{f} {a}");
            // α = γ_r - Σ μ
            let diff = rs.coefficients(&(&rs.gamma_r - a));
            assert!(diff[0].is_zero() && diff.iter().all(|c| *c >= Q::zero()), "{f} {a}");
            for b in &rs.noncompact {
                assert!(a.dot(b) >= Q::zero(), "{f} {a} {b}");
            }
        }
        for a in &rs.compact_positive {
            assert!(c_beta(a).is_zero(), "{f} {a}");
        }
        assert!(rs.noncompact.contains(&rs.gamma_r));
        let two_rho = Vector::sum(rs.dim, &rs.positive);
        assert_eq!(rs.rho.scale(&q(2)), two_rho, "{f}");
        for (_, m) in &rs.compact_simple {
            assert!(pairing(&rs.epsilon, m).unwrap().is_zero());
        }
        assert!(pairing(&rs.epsilon, &rs.gamma_r).unwrap().is_one());
        let lens: HashSet<Q> = rs.positive.iter().map(Vector::norm2).collect();
        if f.is_simply_laced() {
            assert_eq!(lens, HashSet::from([q(2)]), "{f}");
        }
        if matches!(f, Family::E6 | Family::E7) {
            for a in &rs.positive {
                assert!(a.0.iter().all(|x| (x * q(2)).is_integer()));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pairing_is_linear(f in family(), i in 0usize..64, j in 0usize..64, k in 0usize..64, a in -5i64..=5, b in -5i64..=5) {
        let rs = RootSystem::build(f).unwrap();
        let n = rs.positive.len();
        let (x, y, r) = (&rs.positive[i % n], &rs.positive[j % n], &rs.noncompact[k % rs.noncompact.len()]);
        let lhs = pairing(&(&x.scale(&q(a)) + &y.scale(&q(b))), r).unwrap();
        let rhs = q(a) * pairing(x, r).unwrap() + q(b) * pairing(y, r).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn reflections_are_involutions_preserving_roots(f in family(), i in 0usize..64) {
        let rs = RootSystem::build(f).unwrap();
        let a = &rs.positive[i % rs.positive.len()];
        for r in &rs.positive {
            let s = weyl_reflect(r, a);
            prop_assert!(rs.is_root(&s));
            prop_assert_eq!(&weyl_reflect(&s, a), r);
        }
        let w = &rs.rho + &rs.epsilon;
        prop_assert_eq!(weyl_reflect(&weyl_reflect(&w, a), a), w);
    }

    /// <Λ0 + λε, α> = <Λ0, α> + λ (γ_r, γ_r)/(α, α) on Δ_n⁺.
    #[test]
    fn lambda_decomposition(f in family(), num in -40i64..40, den in 1i64..7, labels in proptest::collection::vec(0u64..4, 7)) {
        let rs = RootSystem::build(f).unwrap();
        let l: Labels = rs.compact_labels().into_iter().zip(labels).collect();
        let l0 = rs.resolve_weight(&l).unwrap();
        let lam = frac(num, den);
        let w = &l0 + &rs.epsilon.scale(&lam);
        for a in &rs.noncompact {
            let want = pairing(&l0, a).unwrap() + &lam * rs.gamma_r.norm2() / a.norm2();
            prop_assert_eq!(pairing(&w, a).unwrap(), want);
        }
    }
}
