use mac_exact::{var, LaurentPoly, Poly, Scalar, Series};
use proptest::prelude::*;

fn small_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((-3i64..=3, 0u32..3, 0u32..3, 0u32..2), 0..4).prop_map(|ts| {
        let mut p = Poly::zero();
        for (c, a, b, z) in ts {
            let m = Poly::var(var::QH)
                .pow(a)
                .mul(&Poly::var(var::TH).pow(b))
                .mul(&Poly::var(var::Z1).pow(z));
            p = p.add(&m.mul(&Poly::from_i64(c)));
        }
        p
    })
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (small_poly(), small_poly()).prop_map(|(n, d)| {
        let d = if d.is_zero() { Poly::one() } else { d };
        Scalar::from_frac(n, d).unwrap()
    })
}

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-2i32..=2, -2i32..=2, -3i64..=3), 0..5).prop_map(|ts| {
        let mut p = LaurentPoly::zero(2);
        for (a, b, c) in ts {
            p.add_term(vec![a, b], &Scalar::from_i64(c));
        }
        p
    })
}

fn series(h: u32) -> impl Strategy<Value = Series> {
    prop::collection::vec((0u32..=3, 0u32..=3, scalar()), 0..6).prop_map(move |ts| {
        let mut s = Series::zero(2, h);
        for (a, b, c) in ts {
            s.add_term(vec![a, b], &c);
        }
        s
    })
}

fn brute_convolution(a: &Series, b: &Series, h: u32) -> Series {
    let mut r = Series::zero(2, h);
    for i in 0..=h {
        for j in 0..=h - i {
            let mut acc = Scalar::zero();
            for i1 in 0..=i {
                for j1 in 0..=j {
                    acc = acc.add(&a.coeff(&[i1, j1]).mul(&b.coeff(&[i - i1, j - j1])));
                }
            }
            r.set(vec![i, j], acc);
        }
    }
    r
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        if !b.is_zero() {
            prop_assert_eq!(a.div(&b).unwrap().mul(&b), a.clone());
        }
    }

    #[test]
    fn scalar_normal_form_idempotent(a in scalar()) {
        let again = Scalar::from_frac(a.num().clone(), a.den().clone()).unwrap();
        prop_assert_eq!(&again, &a);
        prop_assert!(a.den().lc().signum() > 0);
        let back: Scalar = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn laurent_ring_axioms(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        if !b.is_zero() {
            let prod = a.mul(&b);
            prop_assert_eq!(prod.exact_div(&b).unwrap(), a.clone());
        }
        let js = serde_json::to_string(&a).unwrap();
        let back: LaurentPoly = serde_json::from_str(&js).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn series_ring_axioms(a in series(3), b in series(3), c in series(3)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b), brute_convolution(&a, &b, 3));
    }

    #[test]
    fn series_inverse(a in series(4), c0 in scalar()) {
        prop_assume!(!c0.is_zero());
        let mut s = a.clone();
        s.set(vec![0, 0], c0);
        let inv = s.inverse(4).unwrap();
        prop_assert_eq!(s.mul(&inv), Series::one(2, 4));
    }
}

#[test]
fn series_json_roundtrip() {
    let mut s = Series::zero(2, 3);
    s.add_term(vec![1, 0], &"qh/(th - 1)".parse().unwrap());
    s.add_term(vec![0, 2], &Scalar::from_i64(-4));
    let js = serde_json::to_string(&s).unwrap();
    let back: Series = serde_json::from_str(&js).unwrap();
    assert_eq!(back, s);
    assert_eq!(serde_json::to_string(&back).unwrap(), js);
}

#[test]
fn concurrent_read_only_use() {
    let a: Scalar = "(qh^3 - th)/(qh + th)".parse().unwrap();
    let handles: Vec<_> = (0..4)
        .map(|k| {
            let a = a.clone();
            std::thread::spawn(move || a.powi(k + 1).unwrap().mul(&a.powi(-(k + 1)).unwrap()))
        })
        .collect();
    for h in handles {
        assert!(h.join().unwrap().is_one());
    }
}
