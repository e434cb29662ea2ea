use focs_core::canonical::{build_s, build_s_inv, build_sip, focs_basis, real_canonical, sign_characteristic};
use focs_core::generator::{generate_pair, random_invertible, random_recipe};
use focs_core::spectral::{char_poly, jordan_structure};
use focs_core::verify::{is_flipped_orthogonal, is_gamma_cs, is_h_selfadjoint};
use focs_core::{Block, BlockLayout, ExactMatrix, Rational, Scalar};
use num_traits::Zero;
use proptest::prelude::*;

/// Determinant by cofactor expansion along the first row.
fn cofactor_det(m: &[Vec<Scalar>]) -> Scalar {
    let n = m.len();
    if n == 0 {
        return Scalar::from_int(1);
    }
    let mut total = Scalar::zero();
    for (c, entry) in m[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<Scalar>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|&(k, _)| k != c).map(|(_, x)| x.clone()).collect()).collect();
        let term = entry * &cofactor_det(&minor);
        if c % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn rows(m: &ExactMatrix) -> Vec<Vec<Scalar>> {
    (0..m.rows()).map(|r| m.row(r).to_vec()).collect()
}

fn small_matrix(max: usize) -> impl Strategy<Value = ExactMatrix> {
    (1..=max).prop_flat_map(|n| {
        proptest::collection::vec(-4i64..=4, n * n).prop_map(move |v| {
            ExactMatrix::new(n, n, v.into_iter().map(Scalar::from_int).collect()).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn char_poly_matches_cofactor_determinant(a in small_matrix(5), x in -3i64..=3) {
        let x = Scalar::from_int(x);
        let shifted = ExactMatrix::identity(a.rows()).scale(&x).try_sub(&a).unwrap();
        prop_assert_eq!(char_poly(&a).unwrap().eval(&x), cofactor_det(&rows(&shifted)));
    }

    #[test]
    fn generated_pairs_round_trip(seed in any::<u64>()) {
        let recipe = random_recipe(seed, 6).unwrap();
        let pair = generate_pair(&recipe).unwrap();
        prop_assert!(is_h_selfadjoint(&pair.a, &pair.h).unwrap().passed());
        prop_assert_eq!(jordan_structure(&pair.a).unwrap(), recipe.spec.clone());
        let real = real_canonical(&pair.a, &pair.h).unwrap();
        prop_assert_eq!(&real.signs, &recipe.signs);
        prop_assert!(real.basis.is_real());
        let r = &real.basis;
        prop_assert_eq!(pair.a.matmul(r).unwrap(), r.matmul(&real.j).unwrap());
        prop_assert_eq!(r.transpose().matmul(&pair.h).unwrap().matmul(r).unwrap(), real.p.clone());

        let focs = focs_basis(&pair.a, &pair.h).unwrap();
        let n = &focs.basis;
        prop_assert_eq!(pair.a.matmul(n).unwrap(), n.matmul(&focs.j).unwrap());
        prop_assert!(is_flipped_orthogonal(n, &pair.h, &focs.layout, &focs.signs.signs()).unwrap().passed());
        prop_assert!(is_gamma_cs(n, &focs.layout, &Scalar::i()).unwrap().passed());
    }

    #[test]
    fn sign_characteristic_is_affiliation_invariant(seed in any::<u64>(), t_seed in any::<u64>()) {
        let pair = generate_pair(&random_recipe(seed, 5).unwrap()).unwrap();
        let t = random_invertible(t_seed, pair.a.rows(), 2).unwrap();
        let moved_a = t.inverse().unwrap().matmul(&pair.a).unwrap().matmul(&t).unwrap();
        let moved_h = t.transpose().matmul(&pair.h).unwrap().matmul(&t).unwrap();
        prop_assert!(is_h_selfadjoint(&moved_a, &moved_h).unwrap().passed());
        prop_assert_eq!(
            sign_characteristic(&moved_a, &moved_h).unwrap(),
            sign_characteristic(&pair.a, &pair.h).unwrap()
        );
    }

    #[test]
    fn selfadjointness_is_affiliation_invariant(a in small_matrix(4), t_seed in any::<u64>()) {
        let n = a.rows();
        let h = build_sip(&[n], &[1]).unwrap();
        let t = random_invertible(t_seed, n, 2).unwrap();
        let moved_a = t.inverse().unwrap().matmul(&a).unwrap().matmul(&t).unwrap();
        let moved_h = t.conj_transpose().matmul(&h).unwrap().matmul(&t).unwrap();
        prop_assert_eq!(
            is_h_selfadjoint(&a, &h).unwrap().passed(),
            is_h_selfadjoint(&moved_a, &moved_h).unwrap().passed()
        );
    }

    #[test]
    fn s_identities_for_arbitrary_pairs(
        sizes in proptest::collection::vec(1usize..=3, 1..=3),
        sigma in -5i64..=5,
        tau in 1i64..=5,
        den in 1i64..=4,
    ) {
        let layout = BlockLayout::new(
            sizes.iter().map(|&size| Block::Pair {
                sigma: Rational::new(sigma.into(), den.into()),
                tau: Rational::new(tau.into(), den.into()),
                size,
            }).collect(),
        );
        let s = build_s(&layout);
        let n = layout.dimension();
        prop_assert_eq!(s.matmul(&build_s_inv(&layout)).unwrap(), ExactMatrix::identity(n));
        prop_assert_eq!(layout.real_jordan().matmul(&s).unwrap(), s.matmul(&layout.complex_jordan()).unwrap());
        let p = build_sip(&layout.widths(), &vec![1; sizes.len()]).unwrap();
        prop_assert_eq!(s.conj_transpose().matmul(&p).unwrap().matmul(&s).unwrap(), p);
    }
}

#[test]
fn cofactor_oracle_on_the_worked_example() {
    let a = focs_core::corpus::worked_example().a;
    let x = Scalar::from_int(2);
    let shifted = ExactMatrix::identity(4).scale(&x).try_sub(&a).unwrap();
    // x^4 + 2x^2 + 1 at x = 2
    assert_eq!(cofactor_det(&rows(&shifted)), Scalar::from_int(25));
    assert_eq!(char_poly(&a).unwrap().eval(&x), Scalar::from_int(25));
}
