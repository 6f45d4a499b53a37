mod common;

use common::{blade_in, cga0_mask, mv, mv0, sig, vector};
use gab_core::pga::{self, pga_dual, pga_sign, sharp};
use gab_core::{cga, Multivector};
use proptest::prelude::*;

fn dim() -> impl Strategy<Value = usize> {
    2usize..=5
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn sharp_is_an_involutive_automorphism((a, b) in dim().prop_flat_map(|n| (mv(n), mv(n)))) {
        prop_assert_eq!(sharp(&sharp(&a)), a.clone());
        prop_assert_eq!(sharp(&(&a * &b)), sharp(&a) * sharp(&b));
        prop_assert_eq!(sharp(&(&a ^ &b)), sharp(&a) ^ sharp(&b));
        prop_assert_eq!(sharp(&(&a | &b)), sharp(&a) | sharp(&b));
    }

    #[test]
    fn sharp_swaps_the_projective_copies(a in dim().prop_flat_map(mv0)) {
        let image = sharp(&a);
        prop_assert!(pga::is_in_cga_inf(&image));
        prop_assert_eq!(image.len(), a.len());
    }

    #[test]
    fn sharp_preserves_the_quadratic_form((x, y) in dim().prop_flat_map(|n| (vector(n), vector(n)))) {
        prop_assert_eq!((sharp(&x) * sharp(&y)).scalar_part(), (&x * &y).scalar_part());
    }

    #[test]
    fn dual_definitions_agree(a in dim().prop_flat_map(mv0)) {
        let s = a.signature().clone();
        let i = pga::pga_pseudoscalar(&s).unwrap();
        prop_assert_eq!(sharp(&(&a | &sharp(&i))), sharp(&a) | &i);

        let dual = pga_dual(&a).unwrap();
        let (through_inf, through_origin) = pga::pga_dual_via_cga(&a).unwrap();
        prop_assert_eq!(&dual, &through_inf);
        prop_assert_eq!(&dual, &through_origin);
        prop_assert_eq!(&dual, &pga::coordinate_dual(&a).unwrap());
    }

    #[test]
    fn dual_of_wedge_is_contraction_of_dual(
        (a, b) in (dim(), 0usize..=3, 0usize..=3).prop_flat_map(|(n, g1, g2)| {
            let (lo, hi) = (g1.min(g2).min(n + 1), g1.max(g2).min(n + 1));
            (blade_in(n, lo, cga0_mask(n)), blade_in(n, hi, cga0_mask(n)))
        })
    ) {
        prop_assert_eq!(pga_dual(&(&a ^ &b)).unwrap(), sharp(&a) | pga_dual(&b).unwrap());
    }

    #[test]
    fn double_dual_is_a_constant_sign(a in dim().prop_flat_map(mv0)) {
        let s = a.signature().clone();
        let sign = pga::double_dual_sign(&s).unwrap();
        prop_assert!(sign == 1.0 || sign == -1.0);
        prop_assert_eq!(pga_dual(&pga_dual(&a).unwrap()).unwrap(), a.scale(sign));
        prop_assert_eq!(pga::pga_undual(&pga_dual(&a).unwrap()).unwrap(), a);
    }

    #[test]
    fn points_correspond(p in dim().prop_flat_map(|n| common::mv_where(n, |s, b| {
        b.grade() == 1 && b.0 & s.euclidean_blade().0 != 0
    }))) {
        let n = p.signature().n();
        let point = pga::pga_point(&p).unwrap().into_value();
        let flat = cga::flat_point(&cga::up(&p).unwrap()).unwrap().into_value();
        prop_assert_eq!(sharp(&point), cga::cga_dual(&flat).unwrap().scale(pga_sign(n)));
        let origin = cga::origin(p.signature());
        prop_assert_eq!(pga_dual(&point).unwrap(), &origin + &p);
    }

    #[test]
    fn regressive_product_is_dual_to_outer((a, b) in dim().prop_flat_map(|n| (mv0(n), mv0(n)))) {
        let joined = pga::regressive(&a, &b).unwrap();
        let via_duals = pga_dual(&a).unwrap() ^ pga_dual(&b).unwrap();
        prop_assert_eq!(pga_dual(&joined).unwrap(), via_duals);
    }
}

#[test]
fn point_identity_at_n3() {
    let s = sig(3);
    for coords in [[1.0, -2.0, 3.0], [0.0, 0.0, 0.0], [-5.0, 4.0, 0.5]] {
        let p = Multivector::euclidean_vector(&s, &coords);
        let point = pga::pga_point(&p).unwrap().into_value();
        let expected = pga::euclidean_pseudoscalar(&s) - pga::euclidean_dual(&p) * cga::infinity(&s);
        assert_eq!(sharp(&point), expected);
    }
}

#[test]
fn pseudoscalar_pairing_sign() {
    for n in 2..=6 {
        let s = sig(n);
        let i = pga::pga_pseudoscalar(&s).unwrap();
        let pairing = (&i | &sharp(&i)).scalar_part();
        let expected = if (n * (n + 1) / 2) % 2 == 0 { 1.0 } else { -1.0 };
        assert_eq!(pairing, expected, "n={n}");
        assert_eq!(pga_sign(n), expected);
    }
}
