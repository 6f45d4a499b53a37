mod common;

use common::{all_mask, blade_in, mv, sig};
use gab_core::Multivector;
use proptest::prelude::*;

fn dim() -> impl Strategy<Value = usize> {
    2usize..=4
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_is_associative((a, b, c) in dim().prop_flat_map(|n| (mv(n), mv(n), mv(n)))) {
        prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
    }

    #[test]
    fn fast_product_matches_gram_expansion((a, b) in dim().prop_flat_map(|n| (mv(n), mv(n)))) {
        prop_assert_eq!(a.geometric_product(&b).unwrap(), a.oracle_product(&b).unwrap());
        prop_assert_eq!(a.left_contraction(&b).unwrap(), a.left_contraction_oracle(&b).unwrap());
    }

    #[test]
    fn reverse_is_an_anti_automorphism((a, b) in dim().prop_flat_map(|n| (mv(n), mv(n)))) {
        prop_assert_eq!((&a * &b).reverse(), b.reverse() * a.reverse());
    }

    #[test]
    fn product_is_bilinear((a, b, c, k) in dim().prop_flat_map(|n| (mv(n), mv(n), mv(n), -5i32..=5))) {
        let k = f64::from(k);
        prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
        prop_assert_eq!((&a * k) * &b, (&a * &b) * k);
    }

    #[test]
    fn contraction_duality(
        (a, b, c) in (2usize..=4, 0usize..=2, 0usize..=2)
            .prop_flat_map(|(n, ga, gb)| (
                blade_in(n, ga, all_mask(n)),
                blade_in(n, gb, all_mask(n)),
                mv(n),
            ))
    ) {
        prop_assert_eq!(&a | (&b | &c), (&a ^ &b) | &c);
    }

    #[test]
    fn outer_product_of_vectors_is_antisymmetric_part(
        (x, y) in dim().prop_flat_map(|n| (common::vector(n), common::vector(n)))
    ) {
        let sym = (&x * &y) - (&y * &x);
        prop_assert_eq!((&x ^ &y) * 2.0, sym);
        prop_assert_eq!(&x ^ &y, -(&y ^ &x));
        prop_assert_eq!((&x | &y).scalar_part() * 2.0, ((&x * &y) + (&y * &x)).scalar_part());
    }
}

#[test]
fn generators_anticommute_where_orthogonal() {
    for n in 2..=6 {
        let s = sig(n);
        for i in 0..s.dim() {
            for j in 0..s.dim() {
                let (x, y) = (Multivector::generator(&s, i), Multivector::generator(&s, j));
                let anti = &x * &y + &y * &x;
                let expected = Multivector::scalar(&s, 2.0 * f64::from(s.gram(i, j)));
                assert_eq!(anti, expected, "n={n} i={i} j={j}");
            }
        }
    }
}
