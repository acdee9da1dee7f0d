//! Randomized invariants over small inputs.

use mac_core::affine::character::{affine_character, affine_weyl_invariant, finite_weyl_invariant};
use mac_core::affine::extract::rational_theta;
use mac_core::affine::kernel::affine_eigenvalue;
use mac_core::affine::trace::affine_trace_psi;
use mac_core::affine::AffineWeightChar;
use mac_core::chars::WeightChar;
use mac_core::macdonald::apply_macdonald_symmetric;
use mac_core::symfun::monomial_symmetric;
use mac_core::uq::trace_psi;
use mac_exact::{LaurentPoly, Scalar};
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Scalar> {
    (2i64..9, 1i64..5)
        .prop_filter("z ≠ 1", |(a, b)| a != b)
        .prop_map(|(a, b)| Scalar::ratio(a, b))
}

const WEIGHTS_N3: [[i64; 3]; 6] = [[1, 0, 0], [1, 1, 0], [2, 0, 0], [1, 0, -1], [2, 1, 0], [0, 0, -1]];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn macdonald_operators_commute_n3(terms in prop::collection::vec((0usize..6, -4i64..5), 1..3)) {
        let mut f = LaurentPoly::zero(3);
        for (i, c) in terms {
            f = f.add(&monomial_symmetric(&WEIGHTS_N3[i]).scale(&Scalar::from_i64(c)));
        }
        let a = apply_macdonald_symmetric(3, 1, &apply_macdonald_symmetric(3, 2, &f).unwrap()).unwrap();
        let b = apply_macdonald_symmetric(3, 2, &apply_macdonald_symmetric(3, 1, &f).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn affine_eigenvalue_is_finite_weyl_symmetric(z in small_rational(), r in 0usize..2) {
        let th = rational_theta(z).unwrap();
        let t0 = WeightChar::tau0(2);
        let swapped = th.fin.mul(&t0).permute(&[1, 0]).mul(&t0.inv());
        let w = AffineWeightChar::new(swapped, th.eps.clone(), th.delta.clone());
        prop_assert_eq!(affine_eigenvalue(r, &th, 2).unwrap(), affine_eigenvalue(r, &w, 2).unwrap());
    }

    #[test]
    fn affine_characters_are_invariant(n in 2usize..4, r in 0usize..3, d in 0u32..3) {
        prop_assume!(r < n);
        let ch = affine_character(n, r, d).unwrap();
        prop_assert!(finite_weyl_invariant(&ch));
        prop_assert!(affine_weyl_invariant(&ch).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn affine_trace_restricts_to_the_finite_trace(z in small_rational()) {
        let th = rational_theta(z).unwrap();
        let psi = affine_trace_psi(&th, 2).unwrap();
        let fin = trace_psi(&th.fin, 2).unwrap();
        for m in 0..=2u32 {
            prop_assert_eq!(psi.coeffs.coeff(&[0, m]), fin.coeffs.coeff(&[m]));
        }
    }
}
