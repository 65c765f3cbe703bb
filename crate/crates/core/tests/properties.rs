use proptest::prelude::*;
use quatlie_core::bracket::{bracket, commutator};
use quatlie_core::linalg::{mj_embed, mj_extract, QuatMatrix};
use quatlie_core::relations::GenTag;
use quatlie_core::rho::{rho_apply, FreeWord};
use quatlie_core::roots::{cartan_matrix, positive_roots, TypeLabel};
use quatlie_core::scalars::{format_rational, parse_rational, ratio, Quaternion, Rational};

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=12).prop_map(|(n, d)| ratio(n, d))
}

fn quaternion() -> impl Strategy<Value = Quaternion> {
    [rational(), rational(), rational(), rational()].prop_map(Quaternion::from_coords)
}

fn matrix(n: usize) -> impl Strategy<Value = QuatMatrix> {
    proptest::collection::vec(quaternion(), n * n)
        .prop_map(move |v| QuatMatrix::from_rows(v.chunks(n).map(<[_]>::to_vec).collect()).unwrap())
}

fn norm2(q: &Quaternion) -> Rational {
    q.coords().iter().map(|c| c * c).sum()
}

fn type_and_rank() -> impl Strategy<Value = (TypeLabel, usize)> {
    prop_oneof![
        (1usize..=6).prop_map(|l| (TypeLabel::A, l)),
        (2usize..=6).prop_map(|l| (TypeLabel::B, l)),
        (2usize..=6).prop_map(|l| (TypeLabel::C, l)),
        (3usize..=6).prop_map(|l| (TypeLabel::D, l)),
    ]
}

proptest! {
    #[test]
    fn rational_text_round_trip(q in rational()) {
        prop_assert_eq!(parse_rational(&format_rational(&q)).unwrap(), q);
    }

    #[test]
    fn quaternion_norm_is_multiplicative(x in quaternion(), y in quaternion()) {
        prop_assert_eq!(norm2(&(&x * &y)), norm2(&x) * norm2(&y));
    }

    #[test]
    fn quaternion_product_is_associative(x in quaternion(), y in quaternion(), z in quaternion()) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
    }

    #[test]
    fn sigma_and_tau_are_automorphisms(x in quaternion(), y in quaternion()) {
        prop_assert_eq!((&x * &y).sigma(), &x.sigma() * &y.sigma());
        prop_assert_eq!((&x * &y).tau(), &x.tau() * &y.tau());
        prop_assert_eq!(x.sigma().tau(), x.tau().sigma());
    }

    #[test]
    fn mj_is_a_faithful_homomorphism(x in matrix(2), y in matrix(2)) {
        prop_assert_eq!(mj_embed(&(&x * &y)), &mj_embed(&x) * &mj_embed(&y));
        prop_assert_eq!(mj_extract(&mj_embed(&x)), x);
    }

    #[test]
    fn bracket_is_antisymmetric_and_satisfies_jacobi(x in matrix(2), y in matrix(2), z in matrix(2)) {
        prop_assert_eq!(bracket(&x, &y).unwrap(), -&bracket(&y, &x).unwrap());
        let j = &(&commutator(&x, &commutator(&y, &z)) + &commutator(&y, &commutator(&z, &x)))
            + &commutator(&z, &commutator(&x, &y));
        prop_assert!(j.is_zero());
    }

    #[test]
    fn positive_root_count((t, l) in type_and_rank()) {
        let roots = positive_roots(&cartan_matrix(t, l).unwrap()).unwrap();
        prop_assert_eq!(roots.len(), t.positive_root_count(l));
        prop_assert!(roots.windows(2).all(|w| w[0].height() <= w[1].height()));
    }

    #[test]
    fn rho_respects_length_grading_and_parity(
        (t, l) in type_and_rank(),
        raw in proptest::collection::vec(0usize..6, 0..4),
        j_flag in any::<bool>(),
        gen in 0usize..6,
        index in 0usize..6,
    ) {
        let cm = cartan_matrix(t, l).unwrap();
        let word = FreeWord::new(j_flag, raw.into_iter().map(|i| i % l).collect());
        let tag = GenTag::ALL[gen];
        let out = rho_apply(tag, index % l, &word, &cm, 4).unwrap();
        let expected_len = match tag.plain() {
            GenTag::F => word.len() + 1,
            GenTag::H => word.len(),
            _ => word.len().saturating_sub(1),
        };
        for w in out.keys() {
            prop_assert_eq!(w.len(), expected_len);
            prop_assert_eq!(w.j_flag, word.j_flag ^ tag.is_j());
        }
    }
}
