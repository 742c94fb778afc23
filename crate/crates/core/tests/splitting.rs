use frobw_core::oracle::{naive_b_dimension, OracleConfig};
use frobw_core::splitting::{
    b_dimension, fano_report, fedder_is_fsplit, free_rank, m_threshold, membership_check, profile,
    profiles, Level, Limits, Method, ProfileOptions, Strategy, Threshold,
};
use frobw_core::{Error, GradedHypersurface, Monomial, PolynomialFp, PrimeField};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn cubic(p: u64) -> GradedHypersurface {
    GradedHypersurface::diagonal(p, 4, 3).unwrap()
}

fn quadric(p: u64, d: usize) -> GradedHypersurface {
    GradedHypersurface::diagonal(p, d + 2, 2).unwrap()
}

fn poly(p: u64, terms: &[(i64, [u32; 4])]) -> PolynomialFp {
    let f = PrimeField::new(p).unwrap();
    PolynomialFp::from_terms(
        f,
        4,
        terms
            .iter()
            .map(|(c, e)| (Monomial::new(e), u64::from(f.reduce_i128(*c as i128)))),
    )
}

#[test]
fn cubic_b_values() {
    let r = cubic(5);
    assert_eq!(b_dimension(&r, 1, 0).unwrap(), 1);
    assert_eq!(b_dimension(&r, 1, 2).unwrap(), 6);
    assert!(b_dimension(&r, 1, 2).unwrap() <= 9);
    assert_eq!(b_dimension(&quadric(3, 2), 1, 2).unwrap(), 9);
}

#[test]
fn cubic_memberships() {
    let m = |p, f: PolynomialFp| membership_check(&cubic(p), 1, &f).unwrap().member;
    assert!(m(5, poly(5, &[(1, [2, 0, 0, 0])])));
    assert!(!m(5, poly(5, &[(1, [1, 0, 0, 0])])));
    assert!(m(7, poly(7, &[(1, [1, 1, 1, 0])])));
    assert!(m(11, poly(11, &[(1, [2, 0, 3, 0]), (-1, [2, 0, 0, 3])])));
    let f31 = poly(
        31,
        &[
            (1, [1, 1, 12, 1]),
            (-10, [1, 1, 9, 4]),
            (15, [1, 1, 6, 7]),
            (-4, [1, 1, 3, 10]),
            (12, [1, 1, 0, 13]),
        ],
    );
    assert_eq!(f31.homogeneous_degree(), Some(15));
    assert!(m(31, f31));
}

#[test]
fn membership_agrees_with_b_at_threshold() {
    // x0^2 ∈ I_1 at p = 5 while b_1(2) = 6 < dim R_2 = 10.
    let r = cubic(5);
    assert!(r.dim_r(2).unwrap() > b_dimension(&r, 1, 2).unwrap());
    let zero = PolynomialFp::zero(r.field(), 4);
    assert!(membership_check(&r, 1, &zero).unwrap().member);
}

#[test]
fn elliptic_cone_fedder() {
    let cone = |p| GradedHypersurface::diagonal(p, 3, 3).unwrap();
    assert!(!fedder_is_fsplit(&cone(5), 1).unwrap());
    assert!(fedder_is_fsplit(&cone(7), 1).unwrap());
    assert_eq!(b_dimension(&cone(5), 1, 0).unwrap(), 0);
    assert_eq!(m_threshold(&cone(5), 1).unwrap_err(), Error::NotFSplit { e: 1 });
    let prof = profile(&cone(7), 1, None, ProfileOptions::default()).unwrap();
    assert_eq!(prof.b, vec![1]);
    assert_eq!(prof.threshold, Threshold::Degree(0));
}

#[test]
fn quadric_thresholds() {
    for d in [2, 3] {
        for p in [3u64, 5] {
            for e in [1u32, 2] {
                let m = m_threshold(&quadric(p, d), e).unwrap();
                assert_eq!(m, p.pow(e) - 1, "Q_{d} p={p} e={e}");
            }
        }
    }
}

#[test]
fn cubic_thresholds() {
    assert_eq!(m_threshold(&cubic(5), 1).unwrap(), 1);
    assert_eq!(m_threshold(&cubic(7), 1).unwrap(), 2);
    assert_eq!(m_threshold(&cubic(5), 2).unwrap(), 9);
}

#[test]
fn free_ranks() {
    assert_eq!(free_rank(&quadric(3, 2), 1).unwrap(), 19);
    assert_eq!(free_rank(&cubic(5), 1).unwrap(), 16);
    assert_eq!(free_rank(&cubic(7), 1).unwrap(), 45);
    let cone = GradedHypersurface::diagonal(5, 3, 3).unwrap();
    assert!(matches!(free_rank(&cone, 1), Err(Error::NonFano { coindex: 0 })));
    let conic = GradedHypersurface::diagonal(5, 3, 2).unwrap();
    assert!(free_rank(&conic, 1).is_ok());
}

#[test]
fn quadric_profile_values() {
    let prof = profile(&quadric(3, 2), 1, None, ProfileOptions::default()).unwrap();
    assert_eq!(prof.b, vec![1, 4, 9, 4, 1]);
    assert_eq!(prof.threshold, Threshold::Degree(2));
    assert_eq!(prof.alpha_e, Some(q(2, 3)));
    assert_eq!(prof.free_rank, Some(19));
    assert_eq!(prof.s_raw, Some(q(19, 27)));
    assert!(prof.duality_ok && prof.fedder_consistent);
}

#[test]
fn cubic_profiles_frozen() {
    let profs = profiles(&cubic(5), 1, 2, ProfileOptions::default()).unwrap();
    assert_eq!(profs[0].b, vec![1, 4, 6, 4, 1]);
    assert_eq!(
        profs[1].b,
        vec![
            1, 4, 10, 19, 31, 46, 64, 85, 109, 136, 162, 183, 191, 183, 162, 136, 109, 85, 64, 46,
            31, 19, 10, 4, 1
        ]
    );
    assert_eq!(profs[1].free_rank, Some(1891));
    assert_eq!(profs[1].s_raw, Some(q(1891, 15625)));
    assert_eq!(profs[1].alpha_upper, Some(q(10, 24)));
    assert_eq!(profs[1].monotone_ok, Some(true));
    assert_eq!(profs[1].method, Method::TensorStrings);
    let p7 = profile(&cubic(7), 1, None, ProfileOptions::default()).unwrap();
    assert_eq!(p7.b, vec![1, 4, 10, 15, 10, 4, 1]);
}

#[test]
fn strategies_agree() {
    let cases = [(quadric(3, 2), 2), (quadric(5, 2), 1), (cubic(5), 1), (cubic(7), 1), (quadric(3, 3), 2)];
    for (ring, e) in cases {
        let direct = profile(
            &ring,
            e,
            None,
            ProfileOptions {
                strategy: Strategy::DirectRank,
                limits: Limits::default(),
            },
        )
        .unwrap();
        let strings = profile(
            &ring,
            e,
            None,
            ProfileOptions {
                strategy: Strategy::TensorStrings,
                limits: Limits::default(),
            },
        )
        .unwrap();
        assert_eq!(direct.method, Method::DirectRank);
        assert_eq!(strings.method, Method::TensorStrings);
        assert_eq!(direct.b, strings.b);
    }
}

#[test]
fn non_diagonal_rings_agree_with_oracle() {
    let f = PrimeField::new(3).unwrap();
    // x0*x1 + x2^2 + x2*x3 and x0^2 + x1*x2 + x0*x3 - x3^2
    let rings = [
        vec![([1, 1, 0, 0], 1), ([0, 0, 2, 0], 1), ([0, 0, 1, 1], 1)],
        vec![([2, 0, 0, 0], 1), ([0, 1, 1, 0], 1), ([1, 0, 0, 1], 1), ([0, 0, 0, 2], 2)],
    ];
    let cfg = OracleConfig::default();
    for terms in rings {
        let g = PolynomialFp::from_terms(f, 4, terms.iter().map(|(e, c)| (Monomial::new(e), *c)));
        let ring = GradedHypersurface::with_default_names(g).unwrap();
        for e in [1, 2] {
            let level = Level::new(&ring, e, Strategy::Auto, Limits::default()).unwrap();
            let top = ring.pivot_degree(level.q()).unwrap();
            for m in 0..=top {
                assert_eq!(level.b(m).unwrap(), naive_b_dimension(&ring, e, m, &cfg).unwrap());
            }
        }
    }
}

#[test]
fn oracle_equivalence_level_one() {
    let cfg = OracleConfig::default();
    for ring in [quadric(3, 2), cubic(5), cubic(7), quadric(5, 2)] {
        let top = ring.pivot_degree(ring.p()).unwrap();
        for m in 0..=top {
            assert_eq!(b_dimension(&ring, 1, m).unwrap(), naive_b_dimension(&ring, 1, m, &cfg).unwrap());
        }
    }
}

#[test]
fn fano_report_cubic() {
    let rep = fano_report(&cubic(5), 2, ProfileOptions::default()).unwrap();
    assert_eq!(rep.coindex, 1);
    assert_eq!(rep.volume, q(3, 1));
    assert_eq!(rep.bound, q(3, 24));
    assert_eq!(rep.levels[1].alpha_upper, q(10, 24));
    assert!(rep.levels[1].certifies_below_half);
    assert_eq!(rep.best_upper(), Some(&q(5, 12)));
    let err = fano_report(&GradedHypersurface::diagonal(5, 4, 4).unwrap(), 1, ProfileOptions::default());
    assert_eq!(err.unwrap_err().to_string(), "non-Fano: v−δ = 0");
}

#[test]
fn fano_report_quadric_normalised() {
    let rep = fano_report(&quadric(3, 2), 2, ProfileOptions::default()).unwrap();
    assert_eq!(rep.coindex, 2);
    assert_eq!(rep.volume, q(8, 1));
    assert_eq!(rep.bound, q(1, 3));
    assert_eq!(rep.levels[0].alpha_estimate, q(1, 3));
    assert_eq!(rep.levels[1].alpha_estimate, q(4, 9));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn duality_and_monotonicity_on_random_quadrics(
        coeffs in proptest::collection::vec(1u32..5, 4),
        p in prop_oneof![Just(3u64), Just(5u64)],
    ) {
        let f = PrimeField::new(p).unwrap();
        let terms = (0..4).map(|i| {
            let mut e = [0u32; 4];
            e[i] = 2;
            (Monomial::new(&e), u64::from(coeffs[i]) % p)
        });
        let g = PolynomialFp::from_terms(f, 4, terms);
        prop_assume!(g.num_terms() == 4);
        let ring = GradedHypersurface::with_default_names(g).unwrap();
        let profs = profiles(&ring, 1, 2, ProfileOptions::default()).unwrap();
        for prof in &profs {
            prop_assert!(prof.duality_ok);
            prop_assert!(prof.scan_monotone_ok);
            prop_assert_eq!(prof.threshold, Threshold::Degree(prof.q - 1));
        }
        prop_assert_eq!(profs[1].monotone_ok, Some(true));
    }

    #[test]
    fn b_bounded_by_dim_r(m in 0u64..8, p in prop_oneof![Just(5u64), Just(7u64), Just(11u64)]) {
        let ring = cubic(p);
        let b = b_dimension(&ring, 1, m).unwrap();
        prop_assert!(b <= ring.dim_r(m).unwrap());
        if let Some(top) = ring.pivot_degree(p) {
            if m <= top {
                prop_assert_eq!(b, b_dimension(&ring, 1, top - m).unwrap());
            }
        }
    }
}
