//! The α-invariant of simplicial toric Fano varieties.
//!
//! For a complete simplicial fan with primitive rays `v_i`, the anticanonical
//! polytope is `P = {u : ⟨u, v_i⟩ ≥ −1}`. After dilating to `rP` with degree
//! one generation, `α = r · min_{u ∈ rP ∩ M} min_{c_i > 0} 1/c_i` where
//! `c_i = ⟨u, v_i⟩ + r`. All arithmetic is exact.

mod alpha;
pub mod corpus;
mod fan;
mod linalg;
mod polytope;

pub use alpha::{toric_alpha, toric_alpha_capped, ToricAlphaReport, DEFAULT_LATTICE_CAP};
pub use fan::{FanData, COMPLETENESS_SEED};
pub use polytope::{anticanonical_volume, polar_and_dilate, RationalPolytope};

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use proptest::prelude::*;

    use super::corpus::{named_fan, named_fans, projective_space, random_fano_fans};
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn qv(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| q(x, 1)).collect()
    }

    #[test]
    fn p2_polytope() {
        let (poly, r) = polar_and_dilate(&projective_space(2)).unwrap();
        assert_eq!(r, 1);
        let mut vs = poly.vertices.clone();
        vs.sort();
        let mut want = vec![qv(&[-1, -1]), qv(&[2, -1]), qv(&[-1, 2])];
        want.sort();
        assert_eq!(vs, want);
    }

    #[test]
    fn p2_alpha() {
        let rep = toric_alpha(&projective_space(2)).unwrap();
        assert_eq!(rep.alpha, q(1, 3));
        assert_eq!(rep.volume, q(9, 1));
        assert_eq!(rep.witness_c.iter().max(), Some(&3));
        assert!(rep.witness_is_vertex);
        assert!(rep.dilation_stable());
    }

    #[test]
    fn p1xp1_alpha_and_bound() {
        let fan = named_fan("p1xp1").unwrap();
        let (poly, r) = polar_and_dilate(&fan).unwrap();
        assert_eq!(r, 1);
        assert!(poly.vertices.iter().all(|w| w.iter().all(|x| x == &q(1, 1) || x == &q(-1, 1))));
        let rep = toric_alpha(&fan).unwrap();
        assert_eq!(rep.alpha, q(1, 2));
        assert_eq!(rep.volume, q(8, 1));
        assert_eq!(rep.bound, q(1, 3));
        assert_eq!(rep.lattice_points, 9);
    }

    #[test]
    fn p1_alpha() {
        let rep = toric_alpha(&projective_space(1)).unwrap();
        assert_eq!(rep.alpha, q(1, 2));
        assert_eq!(rep.volume, q(2, 1));
        assert_eq!(rep.r, 1);
        assert_eq!(rep.witness_u, vec![-1]);
        assert_eq!(rep.witness_c, vec![0, 2]);
    }

    #[test]
    fn named_volumes() {
        let want = [
            ("P(1,1,2)", 8, q(1, 4)),
            ("dP7", 7, q(1, 3)),
            ("dP6", 6, q(1, 2)),
            ("P3", 64, q(1, 4)),
            ("P1xP1xP1", 48, q(1, 2)),
            ("P2xP1", 54, q(1, 3)),
        ];
        for (name, vol, alpha) in want {
            let rep = toric_alpha(&named_fan(name).unwrap()).unwrap();
            assert_eq!(rep.volume, q(vol, 1), "{name}");
            assert_eq!(rep.alpha, alpha, "{name}");
        }
    }

    #[test]
    fn surface_volume_matches_fan_triangulation() {
        for fan in named_fans()
            .into_iter()
            .map(|(_, f)| f)
            .chain(random_fano_fans(7, 12))
            .filter(|f| f.dim() == 2)
        {
            let (poly, _) = polar_and_dilate(&fan).unwrap();
            assert_eq!(
                anticanonical_volume(&fan).unwrap(),
                polytope::polygon_normalized_area(&fan, &poly)
            );
        }
    }

    #[test]
    fn non_fano_rejected() {
        // Hirzebruch surface F_3 is not Fano.
        let fan = corpus::polygon_fan(vec![vec![1, 0], vec![0, 1], vec![-1, 3], vec![0, -1]]).unwrap();
        let err = toric_alpha(&fan).unwrap_err();
        assert!(err.to_string().contains("not Fano"), "{err}");
    }

    #[test]
    fn random_corpus_is_valid() {
        let fans = random_fano_fans(1, 12);
        assert_eq!(fans.len(), 12);
        for fan in fans {
            let rep = toric_alpha(&fan).unwrap();
            assert!(rep.alpha <= q(1, 2));
            assert!(rep.dilation_stable());
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn unimodular_invariance(idx in 0usize..9, seed in any::<u64>()) {
            let (_, fan) = named_fans().swap_remove(idx);
            let base = toric_alpha(&fan).unwrap();
            let d = fan.dim();
            let a = {
                use rand::{Rng, SeedableRng};
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
                let mut a: Vec<Vec<i64>> = (0..d).map(|i| (0..d).map(|j| i64::from(i == j)).collect()).collect();
                for _ in 0..3 * d {
                    let (i, j) = (rng.gen_range(0..d), rng.gen_range(0..d));
                    if i != j {
                        let s = if rng.gen_bool(0.5) { 1 } else { -1 };
                        for k in 0..d { a[i][k] += s * a[j][k]; }
                    }
                }
                a
            };
            let moved = toric_alpha(&fan.transformed(&a).unwrap()).unwrap();
            prop_assert_eq!(base.alpha, moved.alpha);
            prop_assert_eq!(base.volume, moved.volume);
        }
    }
}
